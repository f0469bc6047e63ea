#pragma once

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "awfs/cell_complex.hpp"

namespace awfs {

inline constexpr int kDefaultCap = 32;

/// Identity of a cell of the free complex: a lifting square of the generator
/// ∂Δ^dim -> Δ^dim against the current stage map, glued at `stage`.
struct KCellKey {
  int stage = 0;
  int dim = 0;
  std::string target;                 // dim-simplex of the codomain
  std::vector<std::string> boundary;  // facet images d_0..d_dim of the lift (empty for dim 0)

  friend auto operator<=>(const KCellKey&, const KCellKey&) = default;
  friend bool operator==(const KCellKey&, const KCellKey&) = default;

  /// "stage|dim|target|f0,f1,..."
  std::string encode() const;
};

struct K1Step {
  Stratum stratum;
  SimplicialMap next;          // body -> codomain of e
  std::vector<KCellKey> keys;  // per cell of `stratum`
};

/// One gluing step against e: X -> B: a cell for every k-simplex b of B and every
/// u: ∂Δ^k -> X with e ∘ u = ∂b. With a filtration (whose top is X), only lifts
/// that do not factor through the second-to-last stage are kept, and cells are
/// keyed by the last stage index.
K1Step k1_step(const SimplicialMap& e, const Filtration* filtration = nullptr);

struct FactorResult {
  SimplicialMap input;                    // f: A -> B
  CellComplex kf;                         // base A
  SimplicialMap ef;                       // body(kf) -> B
  std::vector<SimplicialMap> stage_maps;  // E_n f: X_n -> B, n = 0..height
  std::map<KCellKey, std::string> cell_of_key;
  std::unordered_map<std::string, KCellKey> key_of_cell;

  std::vector<std::size_t> stage_counts() const;
  /// Id of the cell with this key, if any.
  const std::string* find(const KCellKey& key) const;
};

/// The free cell complex on f (improper cells omitted). Throws CapExceeded if
/// more than `cap` strata are needed.
FactorResult free_complex(const SimplicialMap& f, int cap = kDefaultCap);

/// The morphism c -> Kf corresponding to the square (g, h): U(c) -> f.
CellComplexMorphism transpose(const CellComplex& c, const ArrowSquare& square, const FactorResult& fr);

/// Reads a cell structure on f off a map alpha: B -> body(Kf) with Ef ∘ alpha = 1.
/// f must be an identifier inclusion. Each simplex outside the image of f becomes
/// a cell at the stage of the Kf cell it is sent to.
CellComplex decode_coalgebra(const SimplicialMap& alpha, const FactorResult& fr);

/// Result of an identity check between two composites.
struct LawCheck {
  std::string name;
  bool ran = false;
  bool passed = false;
  std::optional<std::pair<SimplicialMap, SimplicialMap>> witness;  // (lhs, rhs) on failure
};

struct LawReport {
  SimplicialMap input;
  std::vector<LawCheck> checks;
  std::optional<std::string> error;  // set when the budget ran out

  bool all_passed() const;
};

/// Free factorizations with memoisation, plus the structure maps of the awfs.
/// The cache makes an instance unsuitable for concurrent use; create one per thread.
class FreeFactorization {
 public:
  explicit FreeFactorization(int cap = kDefaultCap) : cap_(cap) {}

  int cap() const noexcept { return cap_; }
  const FactorResult& factor(const SimplicialMap& f);

  /// Middle map M(a, b): body(Kf) -> body(Kg) of a square (a, b): f -> g.
  SimplicialMap middle_map(const ArrowSquare& square);
  /// η_f = (UKf, 1_B): f -> Ef.
  ArrowSquare monad_unit(const SimplicialMap& f);
  /// μ_f: body(K(Ef)) -> body(Kf).
  SimplicialMap monad_mult(const SimplicialMap& f);
  /// δ_f: body(Kf) -> body(K(UKf)).
  SimplicialMap comonad_comult(const SimplicialMap& f);

  CellComplexMorphism transpose(const CellComplex& c, const ArrowSquare& square);
  /// Transpose of the identity square on U(c).
  CellComplexMorphism unit(const CellComplex& c);
  /// Body part of unit(c): body(c) -> body(K(U c)).
  SimplicialMap coalgebra_structure(const CellComplex& c);

  /// Structure for g ∘ f from alpha (for f: A -> B) and beta (for g: B -> C).
  SimplicialMap composite_left_map(const SimplicialMap& f, const SimplicialMap& alpha, const SimplicialMap& g,
                                   const SimplicialMap& beta);
  struct Pushforward {
    PushoutResult pushout;  // of f and g; from_y = g_* f: C -> P
    SimplicialMap structure;
  };
  /// Structure on the pushout g_* f of f: A -> B along g: A -> C.
  Pushforward pushforward_left_map(const SimplicialMap& f, const SimplicialMap& alpha, const SimplicialMap& g);

  /// The nine identities, naturality over `squares` (each a square f -> g).
  LawReport check_laws(const SimplicialMap& f, const std::vector<ArrowSquare>& squares);

 private:
  int cap_;
  std::vector<std::unique_ptr<FactorResult>> cache_;
};

/// Convenience wrapper with a fresh cache.
LawReport check_awfs_laws(const SimplicialMap& f, int cap = kDefaultCap, const std::vector<ArrowSquare>& squares = {});

/// Names of the checks in a report, in order.
const std::vector<std::string>& law_names();

}  // namespace awfs
