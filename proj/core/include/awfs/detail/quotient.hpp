#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "awfs/colimits.hpp"

namespace awfs::detail {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::uint8_t> rank_;
};

struct Member {
  std::size_t object = 0;
  SimplexRef ref;
};

/// Numbering of the simplices of a family of complexes, as used by `quotient`.
class NodeTable {
 public:
  explicit NodeTable(std::span<const DeltaComplex> objects);

  std::size_t node(std::size_t object, int dim, std::uint32_t index) const {
    return offsets_[object][static_cast<std::size_t>(dim)] + index;
  }
  std::size_t size() const noexcept { return total_; }

 private:
  std::vector<std::vector<std::size_t>> offsets_;
  std::size_t total_ = 0;
};

/// Names one class per entry; classes are listed by dimension, members sorted
/// by (object, index). Returned names must be distinct.
using ClassNamer = std::function<std::vector<std::string>(std::span<const DeltaComplex>,
                                                          const std::vector<std::vector<Member>>&)>;

/// Quotient of the disjoint union of `objects` by the equivalence in `sets`
/// (built over the numbering of `table`), with apex ids chosen by `namer`.
ComplexCocone quotient(std::span<const DeltaComplex> objects, const NodeTable& table, DisjointSets& sets,
                       const ClassNamer& namer);

/// Relates every simplex of an arrow's source to its image.
void relate_arrow(const NodeTable& table, DisjointSets& sets, std::size_t src, std::size_t dst,
                  const SimplicialMap& map);

/// Namer used by general colimits: least tagged member id.
std::vector<std::string> least_tagged_names(std::span<const DeltaComplex> objects,
                                            const std::vector<std::vector<Member>>& classes);

/// Namer preferring the least id among members from `object`; classes without
/// such a member fall back to the least tagged id.
ClassNamer preferred_object_names(std::size_t object);

}  // namespace awfs::detail
