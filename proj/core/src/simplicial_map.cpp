#include "awfs/simplicial_map.hpp"

#include <algorithm>
#include <numeric>

#include "awfs/error.hpp"

namespace awfs {

namespace {

void check_assignment(const DeltaComplex& dom, const DeltaComplex& cod, const Assignment& assign) {
  if (assign.size() != static_cast<std::size_t>(dom.max_dim() + 1)) {
    throw InputError("assignment covers " + std::to_string(assign.size()) + " dimensions, domain has " +
                     std::to_string(dom.max_dim() + 1));
  }
  for (int k = 0; k <= dom.max_dim(); ++k) {
    const auto& level = assign[static_cast<std::size_t>(k)];
    if (level.size() != dom.size(k)) throw InputError("assignment is not total in dimension " + std::to_string(k));
    for (std::uint32_t i = 0; i < level.size(); ++i) {
      if (level[i] >= cod.size(k)) {
        throw InputError("image of '" + dom.id(k, i) + "' is not a " + std::to_string(k) + "-simplex of the codomain");
      }
      if (k == 0) continue;
      auto df = dom.faces(k, i);
      auto cf = cod.faces(k, level[i]);
      for (std::size_t j = 0; j < df.size(); ++j) {
        if (assign[static_cast<std::size_t>(k) - 1][df[j]] != cf[j]) {
          throw InputError("map does not commute with face d" + std::to_string(j) + " at '" + dom.id(k, i) + "'");
        }
      }
    }
  }
}

}  // namespace

SimplicialMap::SimplicialMap(DeltaComplex dom, DeltaComplex cod, Assignment assign)
    : dom_(std::move(dom)), cod_(std::move(cod)) {
  check_assignment(dom_, cod_, assign);
  assign_ = std::make_shared<const Assignment>(std::move(assign));
}

SimplicialMap SimplicialMap::from_ids(DeltaComplex dom, DeltaComplex cod, const IdAssignment& assign) {
  Assignment out(static_cast<std::size_t>(dom.max_dim() + 1));
  for (int k = 0; k <= dom.max_dim(); ++k) {
    auto& level = out[static_cast<std::size_t>(k)];
    level.reserve(dom.size(k));
    for (const auto& id : dom.ids(k)) {
      auto it = assign.find(id);
      if (it == assign.end()) throw InputError("map leaves '" + id + "' unassigned");
      auto r = cod.find(it->second);
      if (!r || r->dim != k) {
        throw InputError("'" + id + "' is sent to '" + it->second + "', not a " + std::to_string(k) +
                         "-simplex of the codomain");
      }
      level.push_back(r->index);
    }
  }
  return SimplicialMap(std::move(dom), std::move(cod), std::move(out));
}

SimplicialMap SimplicialMap::identity(const DeltaComplex& x) {
  Assignment out(static_cast<std::size_t>(x.max_dim() + 1));
  for (int k = 0; k <= x.max_dim(); ++k) {
    auto& level = out[static_cast<std::size_t>(k)];
    level.resize(x.size(k));
    std::iota(level.begin(), level.end(), std::uint32_t{0});
  }
  return SimplicialMap(x, x, std::make_shared<const Assignment>(std::move(out)));
}

SimplicialMap SimplicialMap::inclusion(const DeltaComplex& sub, const DeltaComplex& super) {
  if (sub.same_instance(super)) return identity(sub);
  Assignment out(static_cast<std::size_t>(sub.max_dim() + 1));
  for (int k = 0; k <= sub.max_dim(); ++k) {
    auto& level = out[static_cast<std::size_t>(k)];
    for (const auto& id : sub.ids(k)) {
      auto r = super.find(id);
      if (!r || r->dim != k) throw InputError("'" + id + "' is missing from the enclosing complex");
      level.push_back(r->index);
    }
  }
  return SimplicialMap(sub, super, std::move(out));
}

SimplicialMap SimplicialMap::from_empty(const DeltaComplex& cod) {
  return SimplicialMap(DeltaComplex(), cod, std::make_shared<const Assignment>());
}

const std::string& SimplicialMap::image(std::string_view id) const {
  auto r = dom_.find(id);
  if (!r) throw InputError("'" + std::string(id) + "' is not in the domain");
  return cod_.id(r->dim, at(r->dim, r->index));
}

bool SimplicialMap::injective() const {
  for (int k = 0; k <= dom_.max_dim(); ++k) {
    std::vector<bool> hit(cod_.size(k), false);
    for (auto v : (*assign_)[static_cast<std::size_t>(k)]) {
      if (hit[v]) return false;
      hit[v] = true;
    }
  }
  return true;
}

bool SimplicialMap::surjective() const {
  for (int k = 0; k <= cod_.max_dim(); ++k) {
    if (k > dom_.max_dim()) return cod_.size(k) == 0;
    std::vector<bool> hit(cod_.size(k), false);
    for (auto v : (*assign_)[static_cast<std::size_t>(k)]) hit[v] = true;
    if (std::find(hit.begin(), hit.end(), false) != hit.end()) return false;
  }
  return true;
}

SimplicialMap SimplicialMap::with_codomain(const DeltaComplex& cod) const {
  if (cod.same_instance(cod_)) return *this;
  Assignment out(assign_->size());
  for (int k = 0; k <= dom_.max_dim(); ++k) {
    for (auto v : (*assign_)[static_cast<std::size_t>(k)]) {
      auto r = cod.find(cod_.id(k, v));
      if (!r || r->dim != k) throw InputError("'" + cod_.id(k, v) + "' is missing from the new codomain");
      out[static_cast<std::size_t>(k)].push_back(r->index);
    }
  }
  return SimplicialMap(dom_, cod, std::move(out));
}

SimplicialMap SimplicialMap::restrict_to(const DeltaComplex& sub) const {
  return compose(*this, inclusion(sub, dom_));
}

IdAssignment SimplicialMap::id_assignment() const {
  IdAssignment out;
  for (int k = 0; k <= dom_.max_dim(); ++k) {
    for (std::uint32_t i = 0; i < dom_.size(k); ++i) out.emplace(dom_.id(k, i), cod_.id(k, at(k, i)));
  }
  return out;
}

bool operator==(const SimplicialMap& a, const SimplicialMap& b) {
  return a.dom_ == b.dom_ && a.cod_ == b.cod_ && (a.assign_ == b.assign_ || *a.assign_ == *b.assign_);
}

SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f) {
  if (!(f.cod() == g.dom())) throw InputError("cannot compose: codomain and domain differ");
  Assignment out(f.assign_->size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    const auto& inner = (*f.assign_)[k];
    const auto& outer = (*g.assign_)[k];
    out[k].reserve(inner.size());
    for (auto v : inner) out[k].push_back(outer[v]);
  }
  return SimplicialMap(f.dom(), g.cod(), std::make_shared<const Assignment>(std::move(out)));
}

bool ArrowSquare::commutes() const {
  return top.dom() == left.dom() && top.cod() == right.dom() && left.cod() == bottom.dom() &&
         bottom.cod() == right.cod() && compose(right, top) == compose(bottom, left);
}

void ArrowSquare::validate() const {
  if (!(top.dom() == left.dom()) || !(top.cod() == right.dom()) || !(left.cod() == bottom.dom()) ||
      !(bottom.cod() == right.cod())) {
    throw InputError("square edges do not line up");
  }
  if (!(compose(right, top) == compose(bottom, left))) throw InputError("square does not commute");
}

ArrowSquare compose(const ArrowSquare& second, const ArrowSquare& first) {
  if (!(first.right == second.left)) throw InputError("cannot compose squares: middle arrows differ");
  return ArrowSquare{compose(second.top, first.top), compose(second.bottom, first.bottom), first.left, second.right};
}

ArrowSquare identity_square(const SimplicialMap& f) {
  return ArrowSquare{SimplicialMap::identity(f.dom()), SimplicialMap::identity(f.cod()), f, f};
}

SimplicialMap characteristic_map(const DeltaComplex& x, SimplexRef simplex) {
  const int k = simplex.dim;
  const auto delta = standard_simplex(k);
  Assignment out(static_cast<std::size_t>(k + 1));
  for (int m = 0; m <= k; ++m) out[static_cast<std::size_t>(m)].resize(delta.size(m));
  // Walk down from the top: a face of a mapped simplex maps to the matching face.
  out[static_cast<std::size_t>(k)][0] = simplex.index;
  for (int m = k; m >= 1; --m) {
    for (std::uint32_t i = 0; i < delta.size(m); ++i) {
      auto img = out[static_cast<std::size_t>(m)][i];
      auto df = delta.faces(m, i);
      auto xf = x.faces(m, img);
      for (std::size_t j = 0; j < df.size(); ++j) out[static_cast<std::size_t>(m) - 1][df[j]] = xf[j];
    }
  }
  return SimplicialMap(delta, x, std::move(out));
}

SimplicialMap boundary_of(const DeltaComplex& x, SimplexRef simplex) {
  const int k = simplex.dim;
  if (k == 0) return SimplicialMap::from_empty(x);
  std::vector<std::uint32_t> facets(x.faces(k, simplex.index).begin(), x.faces(k, simplex.index).end());
  return boundary_from_facets(x, k, facets);
}

std::vector<std::uint32_t> facet_images(const SimplicialMap& u, int k) {
  std::vector<std::uint32_t> out;
  if (k == 0) return out;
  const auto& dom = u.dom();
  for (int i = 0; i <= k; ++i) {
    auto r = dom.find(facet_name(k, i));
    if (!r) throw InputError("map is not defined on a boundary of dimension " + std::to_string(k));
    out.push_back(u.at(k - 1, r->index));
  }
  return out;
}

SimplicialMap boundary_from_facets(const DeltaComplex& x, int k, std::span<const std::uint32_t> facets) {
  const auto shape = boundary_complex(k);
  if (k == 0) return SimplicialMap::from_empty(x);
  if (facets.size() != static_cast<std::size_t>(k + 1)) throw InputError("wrong number of facet images");
  const std::uint32_t unset = UINT32_MAX;
  Assignment out(static_cast<std::size_t>(k));
  for (int m = 0; m < k; ++m) out[static_cast<std::size_t>(m)].assign(shape.size(m), unset);
  for (int i = 0; i <= k; ++i) {
    auto r = shape.find(facet_name(k, i));
    out[static_cast<std::size_t>(k) - 1][r->index] = facets[static_cast<std::size_t>(i)];
  }
  for (int m = k - 1; m >= 1; --m) {
    for (std::uint32_t i = 0; i < shape.size(m); ++i) {
      auto img = out[static_cast<std::size_t>(m)][i];
      auto df = shape.faces(m, i);
      auto xf = x.faces(m, img);
      for (std::size_t j = 0; j < df.size(); ++j) {
        auto& slot = out[static_cast<std::size_t>(m) - 1][df[j]];
        if (slot != unset && slot != xf[j]) throw InputError("facet images do not agree on shared faces");
        slot = xf[j];
      }
    }
  }
  return SimplicialMap(shape, x, std::move(out));
}

}  // namespace awfs
