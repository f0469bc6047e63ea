#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "awfs/colimits.hpp"
#include "awfs/strata.hpp"

namespace awfs {

/// A base complex followed by strata, each glued onto the body of the previous
/// one. Not required to be proper; this is the input of `normalize`.
struct StrataSequence {
  DeltaComplex base;
  std::vector<Stratum> strata;

  /// Throws InputError unless each stratum sits on the body of the previous one.
  void validate_connected() const;
  const DeltaComplex& body() const { return strata.empty() ? base : strata.back().body(); }
};

/// A relative cell complex: a connected, proper sequence of nonempty strata.
///
/// Stage n of the filtration is the boundary of stratum n; the body is the last
/// stage. Only nonempty strata are stored; the empty tail is implicit.
class CellComplex {
 public:
  /// The trivial complex on the empty complex.
  CellComplex();
  /// Trailing empty strata are dropped. Throws InputError when the sequence is
  /// not connected, has an empty stratum below a nonempty one, or is improper.
  CellComplex(DeltaComplex base, std::vector<Stratum> strata);

  static CellComplex trivial(const DeltaComplex& x) { return CellComplex(x, {}); }

  const DeltaComplex& base() const noexcept;
  const DeltaComplex& body() const noexcept;
  int height() const noexcept;
  std::span<const Stratum> strata() const noexcept;
  /// Stratum n, or the empty stratum on the body when n >= height.
  Stratum stratum(int n) const;
  /// Stages X_0 ⊆ ... ⊆ X_height.
  const Filtration& filtration() const noexcept;
  /// Stage at which a body simplex first appears (0 for the base).
  int birth(std::string_view id) const;
  /// Stratum index of a cell, or nullopt for an unknown id.
  std::optional<std::pair<int, std::size_t>> find_cell(std::string_view id) const;
  std::size_t cell_count() const noexcept;

  StrataSequence sequence() const;

  friend bool operator==(const CellComplex& a, const CellComplex& b);

 private:
  struct Data;
  std::shared_ptr<const Data> data_;
};

/// The inclusion base -> body.
SimplicialMap u_of_complex(const CellComplex& c);

/// Stagewise strata morphisms satisfying the coherence condition.
class CellComplexMorphism {
 public:
  /// cell_maps[n][i]: index in stratum n of `cod` of the image of cell i of stratum n
  /// of `dom` (missing trailing entries mean empty strata).
  CellComplexMorphism(CellComplex dom, CellComplex cod, SimplicialMap base_map,
                      std::vector<std::vector<std::uint32_t>> cell_maps);

  /// Cell assignment by id; each cell must land in the stratum of the same index.
  static CellComplexMorphism from_ids(CellComplex dom, CellComplex cod, SimplicialMap base_map,
                                      const IdAssignment& cells);
  static CellComplexMorphism identity(const CellComplex& c);

  const CellComplex& dom() const noexcept { return dom_; }
  const CellComplex& cod() const noexcept { return cod_; }
  const SimplicialMap& base_map() const noexcept { return stages_.empty() ? base_ : stages_.front().boundary_map(); }
  /// One strata morphism per stage, for max(height(dom), height(cod)) stages.
  const std::vector<StrataMorphism>& stages() const noexcept { return stages_; }
  const SimplicialMap& body_map() const noexcept { return body_; }
  /// Id-level cell assignment.
  IdAssignment cell_assignment() const;

  friend bool operator==(const CellComplexMorphism& a, const CellComplexMorphism& b) {
    return a.dom_ == b.dom_ && a.cod_ == b.cod_ && a.base_ == b.base_ && a.stages_ == b.stages_;
  }

 private:
  CellComplex dom_;
  CellComplex cod_;
  SimplicialMap base_;
  std::vector<StrataMorphism> stages_;
  SimplicialMap body_;
};

/// second ∘ first.
CellComplexMorphism compose(const CellComplexMorphism& second, const CellComplexMorphism& first);

/// The square (base map, body map) from U(dom) to U(cod).
ArrowSquare u_of_morphism(const CellComplexMorphism& m);

/// Every stage bijective on simplices and cells.
bool is_isomorphism(const CellComplexMorphism& m);

struct NormalizeResult {
  CellComplex complex;
  /// Stage of each cell before and after, by cell id.
  std::vector<std::pair<std::string, std::pair<int, int>>> moves;
};

/// Moves every cell down to the stage of its attaching map; same cells, same
/// underlying map, proper output.
NormalizeResult normalize(const StrataSequence& seq);

/// b ∗ a: the cells of a followed by those of b, normalized. Requires b.base() == a.body().
CellComplex compose_complexes(const CellComplex& a, const CellComplex& b);

/// ψ ∗ φ : b ∗ a -> b' ∗ a'. Requires ψ.base_map() == φ.body_map().
CellComplexMorphism horizontal_compose(const CellComplexMorphism& psi, const CellComplexMorphism& phi);

struct ComplexPushforward {
  CellComplex complex;
  CellComplexMorphism morphism;  // c -> pushforward, each stage a pushout square
};

/// Stagewise pushforward along g: base -> Z.
ComplexPushforward pushforward_complex(const CellComplex& c, const SimplicialMap& g);

struct CellDiagram {
  struct Arrow {
    std::size_t src = 0;
    std::size_t dst = 0;
    CellComplexMorphism morphism;
  };
  std::vector<CellComplex> objects;
  std::vector<Arrow> arrows;
};

struct CellCocone {
  CellComplex apex;
  std::vector<CellComplexMorphism> legs;
};

/// Stagewise colimit, named as `strata_colimit`.
CellCocone cellcx_colimit(const CellDiagram& diagram);
CellCocone cellcx_coproduct(std::span<const CellComplex> parts);

struct CellQuotient {
  CellComplex apex;
  CellComplexMorphism quotient;
};

/// Coequaliser of parallel f, g, named by least codomain ids.
CellQuotient cellcx_coequaliser(const CellComplexMorphism& f, const CellComplexMorphism& g);

struct CellSubobject {
  CellComplex apex;
  CellComplexMorphism inclusion;
};

/// Stagewise equaliser: the subcomplex on which f and g agree.
CellSubobject cellcx_equaliser(const CellComplexMorphism& f, const CellComplexMorphism& g);

}  // namespace awfs
