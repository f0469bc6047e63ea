#include "awfs/delta_complex.hpp"

#include <algorithm>
#include <numeric>

#include "awfs/error.hpp"

namespace awfs {

struct DeltaComplex::Data {
  std::vector<std::vector<std::string>> ids;
  // faces[k] holds (k+1) entries per k-simplex, flattened.
  std::vector<std::vector<std::uint32_t>> faces;
  std::unordered_map<std::string, SimplexRef, StringHash, std::equal_to<>> index;
};

DeltaComplex::DeltaComplex() {
  static const auto empty = std::make_shared<const Data>();
  data_ = empty;
}

int DeltaComplex::max_dim() const noexcept { return static_cast<int>(data_->ids.size()) - 1; }

std::size_t DeltaComplex::size(int k) const noexcept {
  if (k < 0 || k > max_dim()) return 0;
  return data_->ids[static_cast<std::size_t>(k)].size();
}

std::size_t DeltaComplex::total_size() const noexcept { return data_->index.size(); }

std::span<const std::string> DeltaComplex::ids(int k) const noexcept {
  if (k < 0 || k > max_dim()) return {};
  return data_->ids[static_cast<std::size_t>(k)];
}

const std::string& DeltaComplex::id(int k, std::uint32_t i) const {
  return data_->ids.at(static_cast<std::size_t>(k)).at(i);
}

std::span<const std::uint32_t> DeltaComplex::faces(int k, std::uint32_t i) const {
  if (k <= 0) return {};
  const auto& f = data_->faces[static_cast<std::size_t>(k)];
  return std::span<const std::uint32_t>(f).subspan(static_cast<std::size_t>(i) * static_cast<std::size_t>(k + 1),
                                                   static_cast<std::size_t>(k + 1));
}

std::vector<std::string> DeltaComplex::face_ids(int k, std::uint32_t i) const {
  std::vector<std::string> out;
  for (auto f : faces(k, i)) out.push_back(id(k - 1, f));
  return out;
}

std::optional<SimplexRef> DeltaComplex::find(std::string_view id) const {
  auto it = data_->index.find(id);
  if (it == data_->index.end()) return std::nullopt;
  return it->second;
}

bool operator==(const DeltaComplex& a, const DeltaComplex& b) {
  if (a.data_ == b.data_) return true;
  return a.data_->ids == b.data_->ids && a.data_->faces == b.data_->faces;
}

DeltaComplexBuilder::DeltaComplexBuilder(const DeltaComplex& start) {
  for (int k = 0; k <= start.max_dim(); ++k) {
    for (std::uint32_t i = 0; i < start.size(k); ++i) add(k, start.id(k, i), start.face_ids(k, i));
  }
}

DeltaComplexBuilder& DeltaComplexBuilder::add(int dim, std::string id, std::vector<std::string> faces) {
  if (dim < 0) throw InputError("negative simplex dimension for '" + id + "'");
  if (faces.size() != (dim == 0 ? 0U : static_cast<std::size_t>(dim + 1))) {
    throw InputError("simplex '" + id + "' of dimension " + std::to_string(dim) + " has " +
                     std::to_string(faces.size()) + " faces");
  }
  if (!seen_.insert(id).second) throw InputError("duplicate simplex id '" + id + "'");
  if (entries_.size() <= static_cast<std::size_t>(dim)) entries_.resize(static_cast<std::size_t>(dim) + 1);
  entries_[static_cast<std::size_t>(dim)].emplace_back(std::move(id), std::move(faces));
  return *this;
}

DeltaComplex DeltaComplexBuilder::build() const {
  auto data = std::make_shared<DeltaComplex::Data>();
  std::size_t top = entries_.size();
  while (top > 0 && entries_[top - 1].empty()) --top;
  data->ids.resize(top);
  data->faces.resize(top);

  std::vector<std::vector<std::size_t>> order(top);
  for (std::size_t k = 0; k < top; ++k) {
    const auto& level = entries_[k];
    order[k].resize(level.size());
    std::iota(order[k].begin(), order[k].end(), std::size_t{0});
    std::sort(order[k].begin(), order[k].end(),
              [&](std::size_t a, std::size_t b) { return level[a].first < level[b].first; });
    auto& ids = data->ids[k];
    ids.reserve(level.size());
    for (std::size_t pos = 0; pos < order[k].size(); ++pos) {
      ids.push_back(level[order[k][pos]].first);
      data->index.emplace(ids.back(), SimplexRef{static_cast<int>(k), static_cast<std::uint32_t>(pos)});
    }
  }
  for (std::size_t k = 1; k < top; ++k) {
    const auto& level = entries_[k];
    auto& faces = data->faces[k];
    faces.reserve(level.size() * (k + 1));
    for (auto src : order[k]) {
      for (const auto& f : level[src].second) {
        auto it = data->index.find(f);
        if (it == data->index.end() || it->second.dim != static_cast<int>(k) - 1) {
          throw InputError("face '" + f + "' of simplex '" + level[src].first + "' is not a " +
                           std::to_string(k - 1) + "-simplex");
        }
        faces.push_back(it->second.index);
      }
    }
  }
  // Simplicial identities: d_i d_j = d_{j-1} d_i for i < j.
  for (std::size_t k = 2; k < top; ++k) {
    const auto& faces = data->faces[k];
    const auto& lower = data->faces[k - 1];
    for (std::size_t x = 0; x < data->ids[k].size(); ++x) {
      auto fx = [&](std::size_t j) { return faces[x * (k + 1) + j]; };
      auto fy = [&](std::uint32_t y, std::size_t j) { return lower[static_cast<std::size_t>(y) * k + j]; };
      for (std::size_t j = 1; j <= k; ++j) {
        for (std::size_t i = 0; i < j; ++i) {
          if (fy(fx(j), i) != fy(fx(i), j - 1)) {
            throw InputError("simplicial identity d" + std::to_string(i) + "d" + std::to_string(j) + " = d" +
                             std::to_string(j - 1) + "d" + std::to_string(i) + " fails at '" + data->ids[k][x] +
                             "'");
          }
        }
      }
    }
  }
  return DeltaComplex(std::move(data));
}

std::string simplex_name(std::span<const int> vertices, int k) {
  std::string out;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (k > 9 && i > 0) out.push_back(',');
    out += std::to_string(vertices[i]);
  }
  return out;
}

namespace {

DeltaComplex simplex_complex(int k, bool with_top) {
  if (k < 0) throw InputError("simplex dimension must be non-negative");
  DeltaComplexBuilder builder;
  const int n = k + 1;
  // Enumerate subsets by size so faces are added first.
  for (int m = 1; m <= n; ++m) {
    if (m == n && !with_top) break;
    std::vector<int> pick(static_cast<std::size_t>(m));
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
      std::vector<std::string> faces;
      if (m > 1) {
        for (int i = 0; i < m; ++i) {
          std::vector<int> face;
          for (int j = 0; j < m; ++j) {
            if (j != i) face.push_back(pick[static_cast<std::size_t>(j)]);
          }
          faces.push_back(simplex_name(face, k));
        }
      }
      builder.add(m - 1, simplex_name(pick, k), std::move(faces));
      int pos = m - 1;
      while (pos >= 0 && pick[static_cast<std::size_t>(pos)] == n - m + pos) --pos;
      if (pos < 0) break;
      ++pick[static_cast<std::size_t>(pos)];
      for (int j = pos + 1; j < m; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j) - 1] + 1;
    }
  }
  return builder.build();
}

}  // namespace

DeltaComplex standard_simplex(int k) { return simplex_complex(k, true); }

DeltaComplex boundary_complex(int k) {
  // The shapes are requested constantly; small ones are built once.
  static const std::vector<DeltaComplex> cache = [] {
    std::vector<DeltaComplex> out;
    for (int k = 0; k <= 6; ++k) out.push_back(simplex_complex(k, false));
    return out;
  }();
  if (k >= 0 && static_cast<std::size_t>(k) < cache.size()) return cache[static_cast<std::size_t>(k)];
  return simplex_complex(k, false);
}

std::string top_simplex_name(int k) {
  std::vector<int> all(static_cast<std::size_t>(k + 1));
  std::iota(all.begin(), all.end(), 0);
  return simplex_name(all, k);
}

std::string facet_name(int k, int i) {
  std::vector<int> face;
  for (int v = 0; v <= k; ++v) {
    if (v != i) face.push_back(v);
  }
  return simplex_name(face, k);
}

bool is_subcomplex(const DeltaComplex& sub, const DeltaComplex& super) {
  for (int k = 0; k <= sub.max_dim(); ++k) {
    for (std::uint32_t i = 0; i < sub.size(k); ++i) {
      auto r = super.find(sub.id(k, i));
      if (!r || r->dim != k) return false;
      if (sub.face_ids(k, i) != super.face_ids(k, r->index)) return false;
    }
  }
  return true;
}

DeltaComplex subcomplex(const DeltaComplex& x, const std::vector<std::vector<bool>>& keep) {
  DeltaComplexBuilder builder;
  for (int k = 0; k <= x.max_dim(); ++k) {
    for (std::uint32_t i = 0; i < x.size(k); ++i) {
      if (keep[static_cast<std::size_t>(k)][i]) builder.add(k, x.id(k, i), x.face_ids(k, i));
    }
  }
  return builder.build();
}

}  // namespace awfs
