#include "awfs/hom_search.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>

#include "awfs/error.hpp"

namespace awfs {

namespace {
constexpr std::uint32_t kFree = UINT32_MAX;
}

std::size_t HomSearch::FaceKeyHash::operator()(const std::vector<std::uint32_t>& key) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (auto v : key) {
    h ^= v;
    h *= 0x100000001b3ULL;
  }
  return h;
}

HomSearch::HomSearch(DeltaComplex cod, std::optional<SimplicialMap> over)
    : cod_(std::move(cod)), over_(std::move(over)) {
  if (over_ && !(over_->dom() == cod_)) throw InputError("constraint map does not start at the codomain");
  const auto top = static_cast<std::size_t>(cod_.max_dim() + 1);
  by_faces_.resize(top);
  for (int k = 1; k <= cod_.max_dim(); ++k) {
    auto& index = by_faces_[static_cast<std::size_t>(k)];
    for (std::uint32_t i = 0; i < cod_.size(k); ++i) {
      auto f = cod_.faces(k, i);
      index[std::vector<std::uint32_t>(f.begin(), f.end())].push_back(i);
    }
  }
  if (over_) {
    fibre_.resize(top);
    for (int k = 0; k <= cod_.max_dim(); ++k) {
      auto& fib = fibre_[static_cast<std::size_t>(k)];
      fib.resize(over_->cod().size(k));
      for (std::uint32_t i = 0; i < cod_.size(k); ++i) fib[over_->at(k, i)].push_back(i);
    }
  }
}

void HomSearch::for_each(const DeltaComplex& dom, const Assignment* fixed, const SimplicialMap* over_equals,
                         const std::function<bool(const Assignment&)>& visit) const {
  if (over_equals != nullptr) {
    if (!over_) throw InputError("target values given without a constraint map");
    if (!(over_equals->dom() == dom) || !(over_equals->cod() == over_->cod())) {
      throw InputError("constraint target has the wrong endpoints");
    }
  }
  const int top = dom.max_dim();
  Assignment current(static_cast<std::size_t>(top + 1));
  for (int k = 0; k <= top; ++k) current[static_cast<std::size_t>(k)].assign(dom.size(k), kFree);
  if (top > cod_.max_dim()) {
    // Higher simplices have nowhere to go.
    for (int k = cod_.max_dim() + 1; k <= top; ++k) {
      if (dom.size(k) > 0) return;
    }
  }

  // Placement order: each vertex, then everything whose faces are placed.
  std::vector<SimplexRef> order;
  {
    std::vector<std::vector<bool>> placed(static_cast<std::size_t>(top + 1));
    for (int k = 0; k <= top; ++k) placed[static_cast<std::size_t>(k)].assign(dom.size(k), false);
    auto sweep = [&] {
      for (int k = 1; k <= top; ++k) {
        for (std::uint32_t i = 0; i < dom.size(k); ++i) {
          if (placed[static_cast<std::size_t>(k)][i]) continue;
          auto f = dom.faces(k, i);
          if (std::all_of(f.begin(), f.end(), [&](auto j) { return placed[static_cast<std::size_t>(k) - 1][j]; })) {
            placed[static_cast<std::size_t>(k)][i] = true;
            order.push_back({k, i});
          }
        }
      }
    };
    for (std::uint32_t v = 0; v < dom.size(0); ++v) {
      placed[0][v] = true;
      order.push_back({0, v});
      sweep();
    }
  }

  std::vector<std::uint32_t> key;
  bool stop = false;
  auto accepts = [&](SimplexRef x, std::uint32_t y) {
    if (fixed != nullptr) {
      auto want = (*fixed)[static_cast<std::size_t>(x.dim)][x.index];
      if (want != kFree && want != y) return false;
    }
    if (over_equals != nullptr && over_->at(x.dim, y) != over_equals->at(x.dim, x.index)) return false;
    return true;
  };

  std::function<void(std::size_t)> step = [&](std::size_t pos) {
    if (stop) return;
    if (pos == order.size()) {
      if (!visit(current)) stop = true;
      return;
    }
    const auto x = order[pos];
    auto& slot = current[static_cast<std::size_t>(x.dim)][x.index];
    auto attempt = [&](std::uint32_t y) {
      if (!accepts(x, y)) return;
      slot = y;
      step(pos + 1);
      slot = kFree;
    };
    if (x.dim == 0) {
      if (fixed != nullptr && (*fixed)[0][x.index] != kFree) {
        auto y = (*fixed)[0][x.index];
        if (y < cod_.size(0)) attempt(y);
      } else if (over_equals != nullptr) {
        const auto& fib = fibre_[0];
        auto target = over_equals->at(0, x.index);
        if (target < fib.size()) {
          for (auto y : fib[target]) {
            attempt(y);
            if (stop) return;
          }
        }
      } else {
        for (std::uint32_t y = 0; y < cod_.size(0) && !stop; ++y) attempt(y);
      }
      return;
    }
    key.clear();
    for (auto f : dom.faces(x.dim, x.index)) key.push_back(current[static_cast<std::size_t>(x.dim) - 1][f]);
    const auto& index = by_faces_[static_cast<std::size_t>(x.dim)];
    auto it = index.find(key);
    if (it == index.end()) return;
    // `key` is reused deeper in the recursion; iterate over a stable list.
    for (auto y : it->second) {
      attempt(y);
      if (stop) return;
    }
  };
  step(0);
}

std::vector<SimplicialMap> enumerate_homs(const DeltaComplex& dom, const DeltaComplex& cod,
                                          const HomConstraint& constraint) {
  Assignment fixed;
  const Assignment* fixed_ptr = nullptr;
  if (constraint.pre) {
    const auto& [along, equals] = *constraint.pre;
    if (!(along.cod() == dom) || !(equals.cod() == cod) || !(along.dom() == equals.dom())) {
      throw InputError("pre-constraint maps have incompatible endpoints");
    }
    fixed.resize(static_cast<std::size_t>(dom.max_dim() + 1));
    for (int k = 0; k <= dom.max_dim(); ++k) fixed[static_cast<std::size_t>(k)].assign(dom.size(k), kFree);
    const auto& p = along.dom();
    for (int k = 0; k <= p.max_dim(); ++k) {
      for (std::uint32_t i = 0; i < p.size(k); ++i) {
        auto& slot = fixed[static_cast<std::size_t>(k)][along.at(k, i)];
        auto want = equals.at(k, i);
        if (slot != kFree && slot != want) return {};
        slot = want;
      }
    }
    fixed_ptr = &fixed;
  }
  std::optional<SimplicialMap> over;
  const SimplicialMap* over_equals = nullptr;
  if (constraint.post) {
    over = constraint.post->first;
    over_equals = &constraint.post->second;
  }
  HomSearch search(cod, over);
  std::vector<Assignment> found;
  search.for_each(dom, fixed_ptr, over_equals, [&](const Assignment& a) {
    found.push_back(a);
    return true;
  });
  std::sort(found.begin(), found.end());
  std::vector<SimplicialMap> out;
  out.reserve(found.size());
  for (auto& a : found) out.emplace_back(dom, cod, std::move(a));
  return out;
}

namespace {

using Colours = std::vector<std::vector<std::uint64_t>>;  // [dim][index]

// Colour refinement run on both complexes at once, so colours are comparable.
// A simplex's colour encodes its own previous colour, the colours of its faces
// in order, and the sorted (position, colour) list of its cofaces.
std::pair<Colours, Colours> refine(const DeltaComplex& a, const DeltaComplex& b) {
  const int top = a.max_dim();
  auto cofaces = [top](const DeltaComplex& x) {
    std::vector<std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>>> out(
        static_cast<std::size_t>(top + 1));
    for (int k = 0; k <= top; ++k) out[static_cast<std::size_t>(k)].resize(x.size(k));
    for (int k = 1; k <= top; ++k) {
      for (std::uint32_t i = 0; i < x.size(k); ++i) {
        auto f = x.faces(k, i);
        for (std::uint32_t j = 0; j < f.size(); ++j) out[static_cast<std::size_t>(k - 1)][f[j]].emplace_back(j, i);
      }
    }
    return out;
  };
  const auto co_a = cofaces(a);
  const auto co_b = cofaces(b);
  auto init = [top](const DeltaComplex& x) {
    Colours c(static_cast<std::size_t>(top + 1));
    for (int k = 0; k <= top; ++k) c[static_cast<std::size_t>(k)].assign(x.size(k), static_cast<std::uint64_t>(k));
    return c;
  };
  std::pair<Colours, Colours> colours{init(a), init(b)};
  std::size_t classes = 0;
  for (;;) {
    std::map<std::vector<std::uint64_t>, std::uint64_t> ids;
    auto step = [&](const DeltaComplex& x, const auto& co, const Colours& old) {
      Colours next(old.size());
      for (int k = 0; k <= top; ++k) {
        const auto ku = static_cast<std::size_t>(k);
        for (std::uint32_t i = 0; i < x.size(k); ++i) {
          std::vector<std::uint64_t> sig{old[ku][i]};
          if (k > 0) {
            for (auto f : x.faces(k, i)) sig.push_back(old[ku - 1][f]);
          }
          std::vector<std::uint64_t> up;
          for (auto [pos, c] : co[ku][i]) up.push_back((static_cast<std::uint64_t>(pos) << 48) | old[ku + 1][c]);
          std::sort(up.begin(), up.end());
          sig.push_back(up.size());
          sig.insert(sig.end(), up.begin(), up.end());
          next[ku].push_back(ids.emplace(std::move(sig), ids.size()).first->second);
        }
      }
      return next;
    };
    auto next_a = step(a, co_a, colours.first);
    auto next_b = step(b, co_b, colours.second);
    colours = {std::move(next_a), std::move(next_b)};
    if (ids.size() == classes) break;
    classes = ids.size();
  }
  return colours;
}

}  // namespace

std::optional<SimplicialMap> find_isomorphism(const DeltaComplex& a, const DeltaComplex& b) {
  if (a.max_dim() != b.max_dim()) return std::nullopt;
  for (int k = 0; k <= a.max_dim(); ++k) {
    if (a.size(k) != b.size(k)) return std::nullopt;
  }
  const int top = a.max_dim();
  const auto [ca, cb] = refine(a, b);
  for (int k = 0; k <= top; ++k) {
    auto x = ca[static_cast<std::size_t>(k)];
    auto y = cb[static_cast<std::size_t>(k)];
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    if (x != y) return std::nullopt;
  }

  Assignment h(static_cast<std::size_t>(top + 1));
  std::vector<std::vector<bool>> used(static_cast<std::size_t>(top + 1));
  for (int k = 0; k <= top; ++k) {
    h[static_cast<std::size_t>(k)].assign(a.size(k), kFree);
    used[static_cast<std::size_t>(k)].assign(b.size(k), false);
  }
  std::vector<std::pair<int, std::uint32_t>> trail;
  // Sends a simplex and, recursively, its faces; false on a clash.
  std::function<bool(int, std::uint32_t, std::uint32_t)> place = [&](int k, std::uint32_t s, std::uint32_t t) {
    const auto ku = static_cast<std::size_t>(k);
    if (h[ku][s] != kFree) return h[ku][s] == t;
    if (used[ku][t] || ca[ku][s] != cb[ku][t]) return false;
    h[ku][s] = t;
    used[ku][t] = true;
    trail.emplace_back(k, s);
    if (k == 0) return true;
    auto fs = a.faces(k, s);
    auto ft = b.faces(k, t);
    for (std::size_t j = 0; j < fs.size(); ++j) {
      if (!place(k - 1, fs[j], ft[j])) return false;
    }
    return true;
  };
  auto undo = [&](std::size_t mark) {
    while (trail.size() > mark) {
      auto [k, s] = trail.back();
      trail.pop_back();
      const auto ku = static_cast<std::size_t>(k);
      used[ku][h[ku][s]] = false;
      h[ku][s] = kFree;
    }
  };
  // Highest dimension first, so most simplices are forced as faces.
  std::vector<std::pair<int, std::uint32_t>> order;
  for (int k = top; k >= 0; --k) {
    for (std::uint32_t i = 0; i < a.size(k); ++i) order.emplace_back(k, i);
  }
  std::function<bool(std::size_t)> extend = [&](std::size_t pos) {
    while (pos < order.size() && h[static_cast<std::size_t>(order[pos].first)][order[pos].second] != kFree) ++pos;
    if (pos == order.size()) return true;
    auto [k, s] = order[pos];
    const auto ku = static_cast<std::size_t>(k);
    for (std::uint32_t t = 0; t < b.size(k); ++t) {
      if (used[ku][t] || ca[ku][s] != cb[ku][t]) continue;
      const auto mark = trail.size();
      if (place(k, s, t) && extend(pos + 1)) return true;
      undo(mark);
    }
    return false;
  };
  if (!extend(0)) return std::nullopt;
  return SimplicialMap(a, b, std::move(h));
}

}  // namespace awfs
