#pragma once

#include <functional>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "awfs/simplicial_map.hpp"

namespace awfs {

/// Side conditions for enumerate_homs.
struct HomConstraint {
  /// (along, equals): require h ∘ along == equals, with along: P -> dom and equals: P -> cod.
  std::optional<std::pair<SimplicialMap, SimplicialMap>> pre;
  /// (over, equals): require over ∘ h == equals, with over: cod -> Q and equals: dom -> Q.
  std::optional<std::pair<SimplicialMap, SimplicialMap>> post;
};

/// Backtracking search for simplicial maps into a fixed codomain.
///
/// The codomain is indexed once (simplices by face tuple, and by fibre of `over`
/// when given), so repeated searches with different domains or targets are cheap.
/// Domain simplices are visited vertex by vertex, each higher simplex as soon as
/// its faces are placed, so inconsistent partial maps are cut early.
class HomSearch {
 public:
  explicit HomSearch(DeltaComplex cod, std::optional<SimplicialMap> over = std::nullopt);

  const DeltaComplex& cod() const noexcept { return cod_; }

  /// Calls `visit` with each assignment dom -> cod that satisfies the constraints;
  /// return false from `visit` to stop.
  ///   fixed:       optional per-dimension required images (UINT32_MAX = free)
  ///   over_equals: required value of over ∘ h (only when `over` was given)
  void for_each(const DeltaComplex& dom, const Assignment* fixed, const SimplicialMap* over_equals,
                const std::function<bool(const Assignment&)>& visit) const;

 private:
  struct FaceKeyHash {
    std::size_t operator()(const std::vector<std::uint32_t>& key) const noexcept;
  };
  using FaceIndex = std::unordered_map<std::vector<std::uint32_t>, std::vector<std::uint32_t>, FaceKeyHash>;

  DeltaComplex cod_;
  std::optional<SimplicialMap> over_;
  std::vector<FaceIndex> by_faces_;                           // per dim >= 1
  std::vector<std::vector<std::vector<std::uint32_t>>> fibre_;  // [dim][over-image] -> simplices
};

/// All maps dom -> cod satisfying `constraint`, sorted lexicographically by image ids.
std::vector<SimplicialMap> enumerate_homs(const DeltaComplex& dom, const DeltaComplex& cod,
                                          const HomConstraint& constraint = {});

/// An isomorphism a -> b if one exists.
std::optional<SimplicialMap> find_isomorphism(const DeltaComplex& a, const DeltaComplex& b);

}  // namespace awfs
