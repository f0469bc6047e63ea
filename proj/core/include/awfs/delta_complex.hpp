#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace awfs {

/// Position of a simplex inside a DeltaComplex. Indices within a dimension
/// follow the lexicographic order of the simplex ids.
struct SimplexRef {
  int dim = 0;
  std::uint32_t index = 0;

  friend auto operator<=>(const SimplexRef&, const SimplexRef&) = default;
};

struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const noexcept { return std::hash<std::string_view>{}(s); }
};

/// A finite truncated semisimplicial set.
///
/// Simplices carry opaque string ids, unique across all dimensions. A k-simplex
/// (k >= 1) has k+1 faces; entry i is the face d_i. Values are immutable and
/// share their storage, so copies are cheap.
class DeltaComplex {
 public:
  DeltaComplex();

  /// -1 for the empty complex.
  int max_dim() const noexcept;
  bool empty() const noexcept { return max_dim() < 0; }
  std::size_t size(int k) const noexcept;
  std::size_t total_size() const noexcept;

  std::span<const std::string> ids(int k) const noexcept;
  const std::string& id(int k, std::uint32_t i) const;
  const std::string& id(SimplexRef r) const { return id(r.dim, r.index); }

  /// Face indices (into dimension k-1) of the i-th k-simplex.
  std::span<const std::uint32_t> faces(int k, std::uint32_t i) const;
  std::uint32_t face(int k, std::uint32_t i, int j) const { return faces(k, i)[static_cast<std::size_t>(j)]; }
  std::vector<std::string> face_ids(int k, std::uint32_t i) const;

  std::optional<SimplexRef> find(std::string_view id) const;
  bool contains(std::string_view id) const { return find(id).has_value(); }

  bool same_instance(const DeltaComplex& other) const noexcept { return data_ == other.data_; }

  friend bool operator==(const DeltaComplex& a, const DeltaComplex& b);

 private:
  friend class DeltaComplexBuilder;
  struct Data;
  explicit DeltaComplex(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

  std::shared_ptr<const Data> data_;
};

/// Collects simplices by id and produces a validated DeltaComplex.
class DeltaComplexBuilder {
 public:
  DeltaComplexBuilder() = default;
  /// Starts from every simplex of `start`.
  explicit DeltaComplexBuilder(const DeltaComplex& start);

  /// Throws InputError on a duplicate id or a wrong number of faces.
  DeltaComplexBuilder& add(int dim, std::string id, std::vector<std::string> faces = {});
  bool contains(std::string_view id) const { return seen_.find(id) != seen_.end(); }

  /// Resolves faces and checks the simplicial identities.
  DeltaComplex build() const;

 private:
  std::vector<std::vector<std::pair<std::string, std::vector<std::string>>>> entries_;
  std::unordered_set<std::string, StringHash, std::equal_to<>> seen_;
};

/// Appends primes to `candidate` until `taken` rejects it.
template <typename Taken>
std::string fresh_id(std::string candidate, Taken&& taken) {
  while (taken(candidate)) candidate.push_back('\'');
  return candidate;
}

/// Canonical name of the simplex of Δ^k spanned by `vertices` (sorted): "0", "02", "013".
std::string simplex_name(std::span<const int> vertices, int k);

/// Δ^k: the m-simplices are the (m+1)-subsets of {0,...,k}; d_i deletes the i-th smallest vertex.
DeltaComplex standard_simplex(int k);

/// Δ^k without its top simplex. Empty for k = 0.
DeltaComplex boundary_complex(int k);

/// Name of the top simplex of Δ^k.
std::string top_simplex_name(int k);

/// Name of the face d_i of the top simplex of Δ^k.
std::string facet_name(int k, int i);

/// True when every simplex of `sub` exists in `super` with the same faces.
bool is_subcomplex(const DeltaComplex& sub, const DeltaComplex& super);

/// The subcomplex of `x` on the simplices selected by `keep` (must be closed under faces).
DeltaComplex subcomplex(const DeltaComplex& x, const std::vector<std::vector<bool>>& keep);

}  // namespace awfs
