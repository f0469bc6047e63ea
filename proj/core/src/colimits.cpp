#include "awfs/colimits.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

#include "awfs/detail/quotient.hpp"
#include "awfs/error.hpp"

namespace awfs {

namespace detail {

NodeTable::NodeTable(std::span<const DeltaComplex> objects) {
  offsets_.resize(objects.size());
  for (std::size_t o = 0; o < objects.size(); ++o) {
    for (int k = 0; k <= objects[o].max_dim(); ++k) {
      offsets_[o].push_back(total_);
      total_ += objects[o].size(k);
    }
  }
}

void relate_arrow(const NodeTable& table, DisjointSets& sets, std::size_t src, std::size_t dst,
                  const SimplicialMap& map) {
  const auto& dom = map.dom();
  for (int k = 0; k <= dom.max_dim(); ++k) {
    for (std::uint32_t i = 0; i < dom.size(k); ++i) sets.unite(table.node(src, k, i), table.node(dst, k, map.at(k, i)));
  }
}

ComplexCocone quotient(std::span<const DeltaComplex> objects, const NodeTable& table, DisjointSets& sets,
                       const ClassNamer& namer) {
  int top = -1;
  for (const auto& o : objects) top = std::max(top, o.max_dim());

  // Classes per dimension, in order of first appearance (object, index).
  std::vector<std::vector<std::vector<Member>>> classes(static_cast<std::size_t>(top + 1));
  std::vector<std::size_t> class_of(table.size());
  for (int k = 0; k <= top; ++k) {
    std::map<std::size_t, std::size_t> slot;
    auto& level = classes[static_cast<std::size_t>(k)];
    for (std::size_t o = 0; o < objects.size(); ++o) {
      for (std::uint32_t i = 0; i < objects[o].size(k); ++i) {
        auto node = table.node(o, k, i);
        auto root = sets.find(node);
        auto [it, inserted] = slot.emplace(root, level.size());
        if (inserted) level.emplace_back();
        level[it->second].push_back({o, {k, i}});
        class_of[node] = it->second;
      }
    }
  }

  std::vector<std::vector<Member>> flat;
  for (const auto& level : classes) flat.insert(flat.end(), level.begin(), level.end());
  auto names = namer(objects, flat);
  if (names.size() != flat.size()) throw InvariantViolation("class namer returned the wrong number of names");

  std::vector<std::vector<std::string>> name_of(classes.size());
  {
    std::size_t pos = 0;
    for (std::size_t k = 0; k < classes.size(); ++k) {
      for (std::size_t c = 0; c < classes[k].size(); ++c) name_of[k].push_back(names[pos++]);
    }
  }

  DeltaComplexBuilder builder;
  for (int k = 0; k <= top; ++k) {
    const auto& level = classes[static_cast<std::size_t>(k)];
    for (std::size_t c = 0; c < level.size(); ++c) {
      std::vector<std::string> faces;
      const auto& rep = level[c].front();
      if (k > 0) {
        for (auto f : objects[rep.object].faces(k, rep.ref.index)) {
          faces.push_back(name_of[static_cast<std::size_t>(k) - 1][class_of[table.node(rep.object, k - 1, f)]]);
        }
        // Every member must induce the same faces.
        for (const auto& m : level[c]) {
          auto mf = objects[m.object].faces(k, m.ref.index);
          for (std::size_t j = 0; j < mf.size(); ++j) {
            if (name_of[static_cast<std::size_t>(k) - 1][class_of[table.node(m.object, k - 1, mf[j])]] != faces[j]) {
              throw InvariantViolation("quotient relation is not compatible with faces");
            }
          }
        }
      }
      builder.add(k, name_of[static_cast<std::size_t>(k)][c], std::move(faces));
    }
  }
  ComplexCocone out{builder.build(), {}};
  for (std::size_t o = 0; o < objects.size(); ++o) {
    Assignment assign(static_cast<std::size_t>(objects[o].max_dim() + 1));
    for (int k = 0; k <= objects[o].max_dim(); ++k) {
      for (std::uint32_t i = 0; i < objects[o].size(k); ++i) {
        const auto& name = name_of[static_cast<std::size_t>(k)][class_of[table.node(o, k, i)]];
        assign[static_cast<std::size_t>(k)].push_back(out.apex.find(name)->index);
      }
    }
    out.legs.emplace_back(objects[o], out.apex, std::move(assign));
  }
  return out;
}

std::vector<std::string> least_tagged_names(std::span<const DeltaComplex> objects,
                                            const std::vector<std::vector<Member>>& classes) {
  std::vector<std::string> out;
  out.reserve(classes.size());
  for (const auto& c : classes) {
    std::string best;
    for (const auto& m : c) {
      auto t = tagged_id(m.object, objects[m.object].id(m.ref));
      if (best.empty() || t < best) best = std::move(t);
    }
    out.push_back(std::move(best));
  }
  return out;
}

ClassNamer preferred_object_names(std::size_t object) {
  return [object](std::span<const DeltaComplex> objects, const std::vector<std::vector<Member>>& classes) {
    auto out = least_tagged_names(objects, classes);
    for (std::size_t c = 0; c < classes.size(); ++c) {
      std::string best;
      for (const auto& m : classes[c]) {
        if (m.object != object) continue;
        const auto& id = objects[m.object].id(m.ref);
        if (best.empty() || id < best) best = id;
      }
      if (!best.empty()) out[c] = std::move(best);
    }
    return out;
  };
}

}  // namespace detail

std::string tagged_id(std::size_t part, const std::string& id) { return std::to_string(part) + ":" + id; }

ComplexCocone colimit(const ComplexDiagram& diagram) {
  detail::NodeTable table(diagram.objects);
  detail::DisjointSets sets(table.size());
  for (const auto& a : diagram.arrows) {
    if (a.src >= diagram.objects.size() || a.dst >= diagram.objects.size()) throw InputError("arrow endpoint out of range");
    if (!(a.map.dom() == diagram.objects[a.src]) || !(a.map.cod() == diagram.objects[a.dst])) {
      throw InputError("arrow map does not match its endpoints");
    }
    detail::relate_arrow(table, sets, a.src, a.dst, a.map);
  }
  return detail::quotient(diagram.objects, table, sets, detail::least_tagged_names);
}

SimplicialMap mediating_map(const ComplexCocone& colimit, const std::vector<SimplicialMap>& legs) {
  if (legs.size() != colimit.legs.size()) throw InputError("cocone has the wrong number of legs");
  if (legs.empty()) throw InputError("cannot infer the target of an empty cocone");
  const auto& target = legs.front().cod();
  const auto& apex = colimit.apex;
  const std::uint32_t unset = UINT32_MAX;
  Assignment assign(static_cast<std::size_t>(apex.max_dim() + 1));
  for (int k = 0; k <= apex.max_dim(); ++k) assign[static_cast<std::size_t>(k)].assign(apex.size(k), unset);
  for (std::size_t o = 0; o < legs.size(); ++o) {
    const auto& from = colimit.legs[o];
    const auto& to = legs[o];
    if (!(to.dom() == from.dom()) || !(to.cod() == target)) throw InputError("cocone leg has the wrong endpoints");
    for (int k = 0; k <= from.dom().max_dim(); ++k) {
      for (std::uint32_t i = 0; i < from.dom().size(k); ++i) {
        auto& slot = assign[static_cast<std::size_t>(k)][from.at(k, i)];
        auto want = to.at(k, i);
        if (slot != unset && slot != want) throw InputError("cocone legs disagree on '" + from.dom().id(k, i) + "'");
        slot = want;
      }
    }
  }
  for (const auto& level : assign) {
    if (std::find(level.begin(), level.end(), unset) != level.end()) {
      throw InvariantViolation("colimit legs are not jointly surjective");
    }
  }
  return SimplicialMap(apex, target, std::move(assign));
}

SimplicialMap pushout_mediating(const PushoutResult& p, const SimplicialMap& x, const SimplicialMap& y) {
  return mediating_map(ComplexCocone{p.apex, {p.from_x, p.from_y}}, {x, y});
}

ComplexCocone coproduct(std::span<const DeltaComplex> parts) {
  ComplexDiagram d;
  d.objects.assign(parts.begin(), parts.end());
  return colimit(d);
}

PushoutResult pushout(const SimplicialMap& f, const SimplicialMap& g) {
  if (!(f.dom() == g.dom())) throw InputError("pushout legs must share a domain");
  std::vector<DeltaComplex> objects{f.cod(), g.cod()};
  detail::NodeTable table(objects);
  detail::DisjointSets sets(table.size());
  const auto& a = f.dom();
  for (int k = 0; k <= a.max_dim(); ++k) {
    for (std::uint32_t i = 0; i < a.size(k); ++i) sets.unite(table.node(0, k, f.at(k, i)), table.node(1, k, g.at(k, i)));
  }
  auto namer = [](std::span<const DeltaComplex> objs, const std::vector<std::vector<detail::Member>>& classes) {
    const auto& y = objs[1];
    std::vector<std::string> out(classes.size());
    std::unordered_set<std::string> used;
    for (std::size_t c = 0; c < classes.size(); ++c) {
      for (const auto& m : classes[c]) {
        if (m.object == 1 && (out[c].empty() || y.id(m.ref) < out[c])) out[c] = y.id(m.ref);
      }
      if (!out[c].empty()) used.insert(out[c]);
    }
    for (std::size_t c = 0; c < classes.size(); ++c) {
      if (!out[c].empty()) continue;
      const auto& m = classes[c].front();
      out[c] = fresh_id(objs[0].id(m.ref), [&](const std::string& s) { return used.count(s) > 0; });
      used.insert(out[c]);
    }
    return out;
  };
  auto cocone = detail::quotient(objects, table, sets, namer);
  return {cocone.apex, cocone.legs[0], cocone.legs[1]};
}

QuotientResult coequaliser(const SimplicialMap& f, const SimplicialMap& g) {
  if (!(f.dom() == g.dom()) || !(f.cod() == g.cod())) throw InputError("coequaliser needs parallel maps");
  std::vector<DeltaComplex> objects{f.cod()};
  detail::NodeTable table(objects);
  detail::DisjointSets sets(table.size());
  const auto& x = f.dom();
  for (int k = 0; k <= x.max_dim(); ++k) {
    for (std::uint32_t i = 0; i < x.size(k); ++i) sets.unite(table.node(0, k, f.at(k, i)), table.node(0, k, g.at(k, i)));
  }
  auto namer = [](std::span<const DeltaComplex> objs, const std::vector<std::vector<detail::Member>>& classes) {
    std::vector<std::string> out;
    for (const auto& c : classes) {
      std::string best;
      for (const auto& m : c) {
        if (best.empty() || objs[0].id(m.ref) < best) best = objs[0].id(m.ref);
      }
      out.push_back(best);
    }
    return out;
  };
  auto cocone = detail::quotient(objects, table, sets, namer);
  return {cocone.apex, cocone.legs[0]};
}

SubobjectResult equaliser(const SimplicialMap& f, const SimplicialMap& g) {
  if (!(f.dom() == g.dom()) || !(f.cod() == g.cod())) throw InputError("equaliser needs parallel maps");
  const auto& x = f.dom();
  std::vector<std::vector<bool>> keep(static_cast<std::size_t>(x.max_dim() + 1));
  for (int k = 0; k <= x.max_dim(); ++k) {
    for (std::uint32_t i = 0; i < x.size(k); ++i) keep[static_cast<std::size_t>(k)].push_back(f.at(k, i) == g.at(k, i));
  }
  auto e = subcomplex(x, keep);
  return {e, SimplicialMap::inclusion(e, x)};
}

PullbackResult pullback(const SimplicialMap& x, const SimplicialMap& y) {
  if (!(x.cod() == y.cod())) throw InputError("pullback needs a cospan");
  const auto& xs = x.dom();
  const auto& ys = y.dom();
  const int top = std::min(xs.max_dim(), ys.max_dim());
  // pairs[k] lists (x index, y index) with equal image.
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> pairs(static_cast<std::size_t>(top + 1));
  for (int k = 0; k <= top; ++k) {
    std::multimap<std::uint32_t, std::uint32_t> by_image;
    for (std::uint32_t j = 0; j < ys.size(k); ++j) by_image.emplace(y.at(k, j), j);
    for (std::uint32_t i = 0; i < xs.size(k); ++i) {
      auto [lo, hi] = by_image.equal_range(x.at(k, i));
      for (auto it = lo; it != hi; ++it) pairs[static_cast<std::size_t>(k)].emplace_back(i, it->second);
    }
  }
  std::unordered_set<std::string> used;
  std::vector<std::map<std::pair<std::uint32_t, std::uint32_t>, std::string>> names(pairs.size());
  DeltaComplexBuilder builder;
  for (int k = 0; k <= top; ++k) {
    for (auto [i, j] : pairs[static_cast<std::size_t>(k)]) {
      auto name = fresh_id(xs.id(k, i) + "*" + ys.id(k, j), [&](const std::string& s) { return used.count(s) > 0; });
      used.insert(name);
      std::vector<std::string> faces;
      if (k > 0) {
        auto fx = xs.faces(k, i);
        auto fy = ys.faces(k, j);
        for (std::size_t t = 0; t < fx.size(); ++t) faces.push_back(names[static_cast<std::size_t>(k) - 1].at({fx[t], fy[t]}));
      }
      names[static_cast<std::size_t>(k)].emplace(std::pair{i, j}, name);
      builder.add(k, name, std::move(faces));
    }
  }
  auto apex = builder.build();
  IdAssignment to_x;
  IdAssignment to_y;
  for (int k = 0; k <= top; ++k) {
    for (const auto& [ij, name] : names[static_cast<std::size_t>(k)]) {
      to_x.emplace(name, xs.id(k, ij.first));
      to_y.emplace(name, ys.id(k, ij.second));
    }
  }
  return {apex, SimplicialMap::from_ids(apex, xs, to_x), SimplicialMap::from_ids(apex, ys, to_y)};
}

bool is_pullback(const ArrowSquare& square) {
  square.validate();
  // Cospan right: X -> Z <- Y: bottom; the corner maps by (top, left).
  auto pb = pullback(square.right, square.bottom);
  const auto& corner = square.top.dom();
  const int top = std::max(corner.max_dim(), pb.apex.max_dim());
  for (int k = 0; k <= top; ++k) {
    if (corner.size(k) != pb.apex.size(k)) return false;
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> apex_of;
    for (std::uint32_t p = 0; p < pb.apex.size(k); ++p) apex_of.emplace(std::pair{pb.to_x.at(k, p), pb.to_y.at(k, p)}, p);
    std::vector<bool> hit(pb.apex.size(k), false);
    for (std::uint32_t c = 0; c < corner.size(k); ++c) {
      auto it = apex_of.find({square.top.at(k, c), square.left.at(k, c)});
      if (it == apex_of.end() || hit[it->second]) return false;
      hit[it->second] = true;
    }
  }
  return true;
}

void Filtration::validate() const {
  if (stages.empty()) throw InputError("a filtration needs at least one stage");
  for (std::size_t n = 0; n + 1 < stages.size(); ++n) {
    if (!is_subcomplex(stages[n], stages[n + 1])) {
      throw InputError("filtration stage " + std::to_string(n) + " is not contained in the next");
    }
  }
}

int mec(const SimplicialMap& u, const Filtration& filtration) {
  if (filtration.stages.empty() || !(u.cod() == filtration.top())) {
    throw InputError("map does not land in the top stage of the filtration");
  }
  const auto& cod = u.cod();
  std::vector<const std::string*> image;
  for (int k = 0; k <= u.dom().max_dim(); ++k) {
    for (auto v : u.assignment()[static_cast<std::size_t>(k)]) image.push_back(&cod.id(k, v));
  }
  for (std::size_t n = 0; n < filtration.stages.size(); ++n) {
    const auto& stage = filtration.stages[n];
    if (std::all_of(image.begin(), image.end(), [&](const std::string* id) { return stage.contains(*id); })) {
      return static_cast<int>(n);
    }
  }
  throw InvariantViolation("image escapes the top stage of the filtration");
}

}  // namespace awfs
