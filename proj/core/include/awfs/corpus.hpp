#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "awfs/cell_complex.hpp"

// Named fixtures and seeded random generators of complexes, maps, strata and
// cell complexes, shared by the tests, benchmarks and the command-line tool.
namespace awfs::corpus {

/// Seeded generator; only the raw mt19937_64 stream is used, so sequences are
/// identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform-ish in [0, n); n must be positive.
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  /// Uniform-ish in [lo, hi].
  int between(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::size_t>(hi - lo + 1))); }
  bool chance(int percent) { return below(100) < static_cast<std::size_t>(percent); }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

struct Fixture {
  std::string name;
  SimplicialMap map;
};

/// ∅ -> Δ⁰, ∂Δ¹ -> Δ¹, Δ⁰ ⊔ Δ⁰ -> Δ⁰, ∂Δ² -> Δ², and the identity of Δ¹.
std::vector<Fixture> fixtures();
/// Throws InputError for an unknown name.
SimplicialMap fixture(const std::string& name);

struct ComplexShape {
  int max_dim = 2;
  int min_vertices = 1;
  int max_vertices = 4;
  int max_per_dim = 4;  // simplices per dimension above 0
};

/// A random complex with ids "<prefix><n>".
DeltaComplex random_complex(Rng& rng, const ComplexShape& shape, const std::string& prefix = "x");

/// A uniformly chosen-by-backtracking map dom -> cod, if one exists.
std::optional<SimplicialMap> random_map(Rng& rng, const DeltaComplex& dom, const DeltaComplex& cod);

/// x with `count` extra simplices of dimension <= max_dim glued on at random (ids "<prefix><n>").
DeltaComplex random_supercomplex(Rng& rng, const DeltaComplex& x, int count, int max_dim, const std::string& prefix);

/// A random map out of x: a chain of endomorphisms, vertex identifications and extensions.
SimplicialMap random_map_from(Rng& rng, const DeltaComplex& x);

/// A random map into some small complex with dimensions up to `max_dim`.
SimplicialMap random_arrow(Rng& rng, int max_dim);

/// A stratum on `boundary` with up to `cells` cells of dimension <= max_dim.
Stratum random_stratum(Rng& rng, const DeltaComplex& boundary, int cells, int max_dim, const std::string& prefix);

struct CellShape {
  ComplexShape base{1, 0, 3, 2};
  int max_cell_dim = 2;
  int max_cells = 6;
  int max_strata = 3;
};

/// A connected sequence of strata, usually improper.
StrataSequence random_sequence(Rng& rng, const CellShape& shape);
CellComplex random_cell_complex(Rng& rng, const CellShape& shape);

/// Random morphism search (boundary map, then cells); nullopt if none was found.
std::optional<StrataMorphism> random_strata_morphism(Rng& rng, const Stratum& dom, const Stratum& cod,
                                                     int attempts = 20);
std::optional<CellComplexMorphism> random_cell_morphism(Rng& rng, const CellComplex& dom, const CellComplex& cod,
                                                        int attempts = 20);

/// A morphism out of `dom` of a randomly chosen kind: pushforward, merge of two
/// parallel cells, coproduct leg, search into a coproduct, or a composite.
StrataMorphism random_strata_arrow(Rng& rng, const Stratum& dom);
CellComplexMorphism random_cell_arrow(Rng& rng, const CellComplex& dom);

/// The fold map x ⊔ x -> x.
StrataMorphism strata_codiagonal(const Stratum& st);
CellComplexMorphism cell_codiagonal(const CellComplex& c);

/// All squares f -> g (over every g in `targets`), sorted, then `count` drawn at random.
std::vector<ArrowSquare> random_squares(Rng& rng, const SimplicialMap& f, std::span<const SimplicialMap> targets,
                                        std::size_t count);

}  // namespace awfs::corpus
