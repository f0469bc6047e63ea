#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "awfs/simplicial_map.hpp"

namespace awfs {

/// A k-cell: the generator ∂Δ^k -> Δ^k attached along `attach`.
struct Cell {
  std::string id;
  int dim = 0;
  SimplicialMap attach;  // ∂Δ^dim -> boundary of the owning stratum

  friend bool operator==(const Cell&, const Cell&) = default;
};

/// A boundary complex together with cells attached to it simultaneously.
///
/// Cells are kept sorted by id. The body (boundary plus one fresh simplex per
/// cell, named by the cell id) is built on construction.
class Stratum {
 public:
  /// Throws InputError for mismatched attaching maps, duplicate cell ids, or
  /// cell ids already used by the boundary.
  explicit Stratum(DeltaComplex boundary = {}, std::vector<Cell> cells = {});

  const DeltaComplex& boundary() const noexcept;
  std::span<const Cell> cells() const noexcept;
  std::size_t size() const noexcept { return cells().size(); }
  bool empty() const noexcept { return cells().empty(); }
  const Cell& cell(std::size_t i) const { return cells()[i]; }
  std::optional<std::size_t> find(std::string_view id) const;

  const DeltaComplex& body() const noexcept;
  /// Index (in dimension cell(i).dim of the body) of the simplex glued for cell i.
  std::uint32_t glued_index(std::size_t i) const;
  /// Index in the body of a boundary simplex.
  std::uint32_t body_index(int k, std::uint32_t boundary_index) const;

  friend bool operator==(const Stratum& a, const Stratum& b);

 private:
  struct Data;
  std::shared_ptr<const Data> data_;
};

struct StratumBody {
  DeltaComplex complex;
  SimplicialMap inclusion;                    // boundary -> body
  std::vector<SimplicialMap> characteristic;  // per cell: Δ^k -> body
};

StratumBody body(const Stratum& st);

/// The inclusion of the boundary into the body.
SimplicialMap u_of_stratum(const Stratum& st);

/// A boundary map together with a dimension-preserving cell assignment
/// compatible with the attaching maps.
class StrataMorphism {
 public:
  /// cell_map[i] is the index in `cod` of the image of cell i of `dom`.
  StrataMorphism(Stratum dom, Stratum cod, SimplicialMap f, std::vector<std::uint32_t> cell_map);

  static StrataMorphism from_ids(Stratum dom, Stratum cod, SimplicialMap f, const IdAssignment& cells);
  static StrataMorphism identity(const Stratum& st);

  const Stratum& dom() const noexcept { return dom_; }
  const Stratum& cod() const noexcept { return cod_; }
  const SimplicialMap& boundary_map() const noexcept { return f_; }
  const std::vector<std::uint32_t>& cell_map() const noexcept { return cells_; }
  /// The induced map of bodies.
  const SimplicialMap& body_map() const noexcept { return body_; }

  friend bool operator==(const StrataMorphism& a, const StrataMorphism& b) {
    return a.dom_ == b.dom_ && a.cod_ == b.cod_ && a.f_ == b.f_ && a.cells_ == b.cells_;
  }

 private:
  Stratum dom_;
  Stratum cod_;
  SimplicialMap f_;
  std::vector<std::uint32_t> cells_;
  SimplicialMap body_;
};

/// second ∘ first.
StrataMorphism compose(const StrataMorphism& second, const StrataMorphism& first);

/// The square (f, body map) from U(dom) to U(cod).
ArrowSquare u_of_strata_morphism(const StrataMorphism& m);

bool is_isomorphism(const StrataMorphism& m);

struct StratumPushforward {
  Stratum stratum;
  StrataMorphism morphism;  // (g, p): st -> pushforward
};

/// Transport of st along g: boundary -> Z. Cell ids are kept unless they clash
/// with simplices of Z (or each other), in which case primes are appended.
StratumPushforward pushforward_stratum(const Stratum& st, const SimplicialMap& g);

struct StrataDiagram {
  struct Arrow {
    std::size_t src = 0;
    std::size_t dst = 0;
    StrataMorphism morphism;
  };
  std::vector<Stratum> objects;
  std::vector<Arrow> arrows;
};

struct StrataCocone {
  Stratum apex;
  std::vector<StrataMorphism> legs;
};

/// Colimit: boundaries and cell sets are glued separately; simplices and cells
/// are named by the least tagged member (see `colimit`).
StrataCocone strata_colimit(const StrataDiagram& diagram);

StrataCocone strata_coproduct(std::span<const Stratum> parts);

struct StrataQuotient {
  Stratum apex;
  StrataMorphism quotient;
};

/// Coequaliser of parallel f, g; classes are named by their least id in the codomain.
StrataQuotient strata_coequaliser(const StrataMorphism& f, const StrataMorphism& g);

struct StrataSubobject {
  Stratum apex;
  StrataMorphism inclusion;
};

/// The part of the domain where f and g agree, on boundary simplices and cells alike.
StrataSubobject strata_equaliser(const StrataMorphism& f, const StrataMorphism& g);

}  // namespace awfs
