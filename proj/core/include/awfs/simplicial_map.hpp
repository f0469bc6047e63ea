#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "awfs/delta_complex.hpp"

namespace awfs {

/// Per-dimension image indices: assign[k][i] is the index of the image of the i-th k-simplex.
using Assignment = std::vector<std::vector<std::uint32_t>>;

/// Id-level description of a map, used at the boundaries (JSON, hand-written fixtures).
using IdAssignment = std::unordered_map<std::string, std::string>;

/// Dimension-preserving, face-commuting map between delta complexes.
class SimplicialMap {
 public:
  /// Validates totality, ranges and face commutation.
  SimplicialMap(DeltaComplex dom, DeltaComplex cod, Assignment assign);

  static SimplicialMap from_ids(DeltaComplex dom, DeltaComplex cod, const IdAssignment& assign);
  static SimplicialMap identity(const DeltaComplex& x);
  /// Inclusion of `sub` into `super` by identifier.
  static SimplicialMap inclusion(const DeltaComplex& sub, const DeltaComplex& super);
  static SimplicialMap from_empty(const DeltaComplex& cod);

  const DeltaComplex& dom() const noexcept { return dom_; }
  const DeltaComplex& cod() const noexcept { return cod_; }
  const Assignment& assignment() const noexcept { return *assign_; }

  std::uint32_t at(int k, std::uint32_t i) const { return (*assign_)[static_cast<std::size_t>(k)][i]; }
  SimplexRef at(SimplexRef r) const { return {r.dim, at(r.dim, r.index)}; }
  /// Image of a dom simplex, by id. Throws InputError for an unknown id.
  const std::string& image(std::string_view id) const;

  bool injective() const;
  bool surjective() const;
  bool bijective() const { return injective() && surjective(); }

  /// Same id assignment with a different (compatible) codomain.
  SimplicialMap with_codomain(const DeltaComplex& cod) const;
  /// Restriction to a subcomplex of the domain (by id).
  SimplicialMap restrict_to(const DeltaComplex& sub) const;

  IdAssignment id_assignment() const;

  friend bool operator==(const SimplicialMap& a, const SimplicialMap& b);

 private:
  SimplicialMap(DeltaComplex dom, DeltaComplex cod, std::shared_ptr<const Assignment> assign)
      : dom_(std::move(dom)), cod_(std::move(cod)), assign_(std::move(assign)) {}
  friend SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f);

  DeltaComplex dom_;
  DeltaComplex cod_;
  std::shared_ptr<const Assignment> assign_;
};

/// g ∘ f. Throws InputError when f.cod() != g.dom().
SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f);

/// A commutative square
///
///     P --top--> X
///     |left      |right
///     Y --bottom-> Z
///
/// i.e. a morphism left -> right in the arrow category.
struct ArrowSquare {
  SimplicialMap top;
  SimplicialMap bottom;
  SimplicialMap left;
  SimplicialMap right;

  bool commutes() const;
  /// Throws InputError unless the four maps line up and commute.
  void validate() const;

  friend bool operator==(const ArrowSquare&, const ArrowSquare&) = default;
};

/// Composite of arrow-category morphisms: (second ∘ first), requires first.right == second.left.
ArrowSquare compose(const ArrowSquare& second, const ArrowSquare& first);

ArrowSquare identity_square(const SimplicialMap& f);

/// The map Δ^k -> x picking out the k-simplex `simplex`.
SimplicialMap characteristic_map(const DeltaComplex& x, SimplexRef simplex);

/// The boundary ∂Δ^k -> x of a k-simplex of x.
SimplicialMap boundary_of(const DeltaComplex& x, SimplexRef simplex);

/// Images of the facets d_0(top), ..., d_k(top) under u: ∂Δ^k -> X (empty for k = 0).
std::vector<std::uint32_t> facet_images(const SimplicialMap& u, int k);

/// The map ∂Δ^k -> x determined by the images of its facets (k >= 1) or the empty map (k = 0).
SimplicialMap boundary_from_facets(const DeltaComplex& x, int k, std::span<const std::uint32_t> facets);

}  // namespace awfs
