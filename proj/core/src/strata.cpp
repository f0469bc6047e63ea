#include "awfs/strata.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "awfs/colimits.hpp"
#include "awfs/detail/strata_glue.hpp"
#include "awfs/error.hpp"

namespace awfs {

struct Stratum::Data {
  DeltaComplex boundary;
  std::vector<Cell> cells;
  std::unordered_map<std::string, std::size_t, StringHash, std::equal_to<>> index;
  DeltaComplex body;
  std::vector<std::uint32_t> glued;                     // per cell
  std::vector<std::vector<std::uint32_t>> from_boundary;  // [k][boundary index] -> body index
};

Stratum::Stratum(DeltaComplex boundary, std::vector<Cell> cells) {
  auto data = std::make_shared<Data>();
  data->boundary = std::move(boundary);
  std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) { return a.id < b.id; });
  std::optional<DeltaComplexBuilder> builder;
  if (!cells.empty()) builder.emplace(data->boundary);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& c = cells[i];
    if (c.dim < 0) throw InputError("cell '" + c.id + "' has negative dimension");
    if (!(c.attach.dom() == boundary_complex(c.dim))) {
      throw InputError("attaching map of cell '" + c.id + "' does not start at the boundary of Δ^" +
                       std::to_string(c.dim));
    }
    if (!(c.attach.cod() == data->boundary)) {
      throw InputError("attaching map of cell '" + c.id + "' does not land in the stratum boundary");
    }
    if (data->boundary.contains(c.id)) throw InputError("cell id '" + c.id + "' is already a boundary simplex");
    if (!data->index.emplace(c.id, i).second) throw InputError("duplicate cell id '" + c.id + "'");
    std::vector<std::string> faces;
    for (auto f : facet_images(c.attach, c.dim)) faces.push_back(data->boundary.id(c.dim - 1, f));
    builder->add(c.dim, c.id, std::move(faces));
  }
  data->cells = std::move(cells);
  data->body = builder ? builder->build() : data->boundary;
  for (const auto& c : data->cells) data->glued.push_back(data->body.find(c.id)->index);
  data->from_boundary.resize(static_cast<std::size_t>(data->boundary.max_dim() + 1));
  for (int k = 0; k <= data->boundary.max_dim(); ++k) {
    for (const auto& id : data->boundary.ids(k)) {
      data->from_boundary[static_cast<std::size_t>(k)].push_back(data->body.find(id)->index);
    }
  }
  data_ = std::move(data);
}

const DeltaComplex& Stratum::boundary() const noexcept { return data_->boundary; }
std::span<const Cell> Stratum::cells() const noexcept { return data_->cells; }
const DeltaComplex& Stratum::body() const noexcept { return data_->body; }

std::optional<std::size_t> Stratum::find(std::string_view id) const {
  auto it = data_->index.find(id);
  if (it == data_->index.end()) return std::nullopt;
  return it->second;
}

std::uint32_t Stratum::glued_index(std::size_t i) const { return data_->glued.at(i); }

std::uint32_t Stratum::body_index(int k, std::uint32_t boundary_index) const {
  return data_->from_boundary.at(static_cast<std::size_t>(k)).at(boundary_index);
}

bool operator==(const Stratum& a, const Stratum& b) {
  return a.data_ == b.data_ || (a.data_->boundary == b.data_->boundary && a.data_->cells == b.data_->cells);
}

StratumBody body(const Stratum& st) {
  StratumBody out{st.body(), u_of_stratum(st), {}};
  for (std::size_t i = 0; i < st.size(); ++i) {
    out.characteristic.push_back(characteristic_map(st.body(), {st.cell(i).dim, st.glued_index(i)}));
  }
  return out;
}

SimplicialMap u_of_stratum(const Stratum& st) {
  const auto& x = st.boundary();
  Assignment assign(static_cast<std::size_t>(x.max_dim() + 1));
  for (int k = 0; k <= x.max_dim(); ++k) {
    for (std::uint32_t i = 0; i < x.size(k); ++i) assign[static_cast<std::size_t>(k)].push_back(st.body_index(k, i));
  }
  return SimplicialMap(x, st.body(), std::move(assign));
}

namespace {

SimplicialMap induced_body_map(const Stratum& dom, const Stratum& cod, const SimplicialMap& f,
                               const std::vector<std::uint32_t>& cells) {
  const auto& body = dom.body();
  const std::uint32_t unset = UINT32_MAX;
  Assignment assign(static_cast<std::size_t>(body.max_dim() + 1));
  for (int k = 0; k <= body.max_dim(); ++k) assign[static_cast<std::size_t>(k)].assign(body.size(k), unset);
  for (int k = 0; k <= dom.boundary().max_dim(); ++k) {
    for (std::uint32_t i = 0; i < dom.boundary().size(k); ++i) {
      assign[static_cast<std::size_t>(k)][dom.body_index(k, i)] = cod.body_index(k, f.at(k, i));
    }
  }
  for (std::size_t i = 0; i < dom.size(); ++i) {
    assign[static_cast<std::size_t>(dom.cell(i).dim)][dom.glued_index(i)] = cod.glued_index(cells[i]);
  }
  return SimplicialMap(body, cod.body(), std::move(assign));
}

}  // namespace

StrataMorphism::StrataMorphism(Stratum dom, Stratum cod, SimplicialMap f, std::vector<std::uint32_t> cell_map)
    : dom_(std::move(dom)), cod_(std::move(cod)), f_(std::move(f)), cells_(std::move(cell_map)), body_(f_) {
  if (!(f_.dom() == dom_.boundary()) || !(f_.cod() == cod_.boundary())) {
    throw InputError("boundary map of a strata morphism has the wrong endpoints");
  }
  if (cells_.size() != dom_.size()) throw InputError("cell assignment is not total");
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    const auto& s = dom_.cell(i);
    if (cells_[i] >= cod_.size()) throw InputError("cell '" + s.id + "' is sent outside the codomain");
    const auto& t = cod_.cell(cells_[i]);
    if (s.dim != t.dim) throw InputError("cell '" + s.id + "' is sent to '" + t.id + "' of another dimension");
    if (!(compose(f_, s.attach) == t.attach)) {
      throw InputError("cell '" + s.id + "' is sent to '" + t.id + "' whose attaching map differs");
    }
  }
  body_ = induced_body_map(dom_, cod_, f_, cells_);
}

StrataMorphism StrataMorphism::from_ids(Stratum dom, Stratum cod, SimplicialMap f, const IdAssignment& cells) {
  std::vector<std::uint32_t> map;
  for (const auto& c : dom.cells()) {
    auto it = cells.find(c.id);
    if (it == cells.end()) throw InputError("cell '" + c.id + "' is unassigned");
    auto j = cod.find(it->second);
    if (!j) throw InputError("cell '" + c.id + "' is sent to unknown cell '" + it->second + "'");
    map.push_back(static_cast<std::uint32_t>(*j));
  }
  return StrataMorphism(std::move(dom), std::move(cod), std::move(f), std::move(map));
}

StrataMorphism StrataMorphism::identity(const Stratum& st) {
  std::vector<std::uint32_t> map(st.size());
  for (std::size_t i = 0; i < map.size(); ++i) map[i] = static_cast<std::uint32_t>(i);
  return StrataMorphism(st, st, SimplicialMap::identity(st.boundary()), std::move(map));
}

StrataMorphism compose(const StrataMorphism& second, const StrataMorphism& first) {
  if (!(first.cod() == second.dom())) throw InputError("cannot compose strata morphisms: middle strata differ");
  std::vector<std::uint32_t> map;
  for (auto c : first.cell_map()) map.push_back(second.cell_map()[c]);
  return StrataMorphism(first.dom(), second.cod(), compose(second.boundary_map(), first.boundary_map()),
                        std::move(map));
}

ArrowSquare u_of_strata_morphism(const StrataMorphism& m) {
  return ArrowSquare{m.boundary_map(), m.body_map(), u_of_stratum(m.dom()), u_of_stratum(m.cod())};
}

bool is_isomorphism(const StrataMorphism& m) {
  if (!m.boundary_map().bijective() || m.dom().size() != m.cod().size()) return false;
  std::vector<bool> hit(m.cod().size(), false);
  for (auto c : m.cell_map()) {
    if (hit[c]) return false;
    hit[c] = true;
  }
  return true;
}

StratumPushforward pushforward_stratum(const Stratum& st, const SimplicialMap& g) {
  if (!(g.dom() == st.boundary())) throw InputError("pushforward map does not start at the stratum boundary");
  const auto& z = g.cod();
  std::unordered_set<std::string> used;
  std::vector<Cell> cells;
  IdAssignment rename;
  for (const auto& c : st.cells()) {
    auto id = fresh_id(c.id, [&](const std::string& s) { return z.contains(s) || used.count(s) > 0; });
    used.insert(id);
    rename.emplace(c.id, id);
    cells.push_back({id, c.dim, compose(g, c.attach)});
  }
  Stratum out(z, std::move(cells));
  auto m = StrataMorphism::from_ids(st, out, g, rename);
  return {out, m};
}

namespace detail {

// Boundaries are glued by `quotient`, cells by a second union-find.
StrataCocone glue_strata(const StrataDiagram& diagram, const detail::ClassNamer& namer,
                         std::optional<std::size_t> preferred) {
  const auto& objects = diagram.objects;
  for (const auto& a : diagram.arrows) {
    if (a.src >= objects.size() || a.dst >= objects.size()) throw InputError("arrow endpoint out of range");
    if (!(a.morphism.dom() == objects[a.src]) || !(a.morphism.cod() == objects[a.dst])) {
      throw InputError("arrow morphism does not match its endpoints");
    }
  }
  std::vector<DeltaComplex> boundaries;
  for (const auto& o : objects) boundaries.push_back(o.boundary());
  detail::NodeTable table(boundaries);
  detail::DisjointSets sets(table.size());
  for (const auto& a : diagram.arrows) detail::relate_arrow(table, sets, a.src, a.dst, a.morphism.boundary_map());
  auto cocone = detail::quotient(boundaries, table, sets, namer);

  std::vector<std::size_t> offset;
  std::size_t total = 0;
  for (const auto& o : objects) {
    offset.push_back(total);
    total += o.size();
  }
  detail::DisjointSets cell_sets(total);
  for (const auto& a : diagram.arrows) {
    const auto& map = a.morphism.cell_map();
    for (std::size_t i = 0; i < map.size(); ++i) cell_sets.unite(offset[a.src] + i, offset[a.dst] + map[i]);
  }
  std::unordered_map<std::size_t, std::size_t> class_of_root;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> classes;  // (object, cell)
  for (std::size_t o = 0; o < objects.size(); ++o) {
    for (std::size_t i = 0; i < objects[o].size(); ++i) {
      auto [it, inserted] = class_of_root.emplace(cell_sets.find(offset[o] + i), classes.size());
      if (inserted) classes.emplace_back();
      classes[it->second].emplace_back(o, i);
    }
  }
  std::vector<Cell> cells;
  std::vector<std::string> class_name;
  for (const auto& cls : classes) {
    std::string name;
    bool from_preferred = false;
    for (auto [o, i] : cls) {
      const auto& id = objects[o].cell(i).id;
      if (preferred && o == *preferred) {
        if (!from_preferred || id < name) name = id;
        from_preferred = true;
      } else if (!from_preferred) {
        auto t = tagged_id(o, id);
        if (name.empty() || t < name) name = std::move(t);
      }
    }
    auto [o, i] = cls.front();
    const auto& rep = objects[o].cell(i);
    auto attach = compose(cocone.legs[o], rep.attach);
    for (auto [o2, i2] : cls) {
      if (!(compose(cocone.legs[o2], objects[o2].cell(i2).attach) == attach)) {
        throw InvariantViolation("cells identified by the colimit have different attaching maps");
      }
    }
    class_name.push_back(name);
    cells.push_back({std::move(name), rep.dim, std::move(attach)});
  }
  Stratum apex(cocone.apex, std::move(cells));
  StrataCocone out{apex, {}};
  for (std::size_t o = 0; o < objects.size(); ++o) {
    std::vector<std::uint32_t> map;
    for (std::size_t i = 0; i < objects[o].size(); ++i) {
      const auto& name = class_name[class_of_root.at(cell_sets.find(offset[o] + i))];
      map.push_back(static_cast<std::uint32_t>(*apex.find(name)));
    }
    out.legs.emplace_back(objects[o], apex, cocone.legs[o], std::move(map));
  }
  return out;
}

}  // namespace detail

StrataCocone strata_colimit(const StrataDiagram& diagram) {
  return detail::glue_strata(diagram, detail::least_tagged_names, std::nullopt);
}

StrataCocone strata_coproduct(std::span<const Stratum> parts) {
  StrataDiagram d;
  d.objects.assign(parts.begin(), parts.end());
  return strata_colimit(d);
}

StrataQuotient strata_coequaliser(const StrataMorphism& f, const StrataMorphism& g) {
  if (!(f.dom() == g.dom()) || !(f.cod() == g.cod())) throw InputError("coequaliser needs parallel morphisms");
  StrataDiagram d;
  d.objects = {f.dom(), f.cod()};
  d.arrows.push_back({0, 1, f});
  d.arrows.push_back({0, 1, g});
  auto cocone = detail::glue_strata(d, detail::preferred_object_names(1), 1);
  return {cocone.apex, cocone.legs[1]};
}

StrataSubobject strata_equaliser(const StrataMorphism& f, const StrataMorphism& g) {
  if (!(f.dom() == g.dom()) || !(f.cod() == g.cod())) throw InputError("equaliser needs parallel morphisms");
  auto eq = equaliser(f.boundary_map(), g.boundary_map());
  std::vector<Cell> cells;
  std::vector<std::string> kept;
  const auto& dom = f.dom();
  for (std::size_t i = 0; i < dom.size(); ++i) {
    if (f.cell_map()[i] != g.cell_map()[i]) continue;
    const auto& c = dom.cell(i);
    cells.push_back({c.id, c.dim, c.attach.with_codomain(eq.apex)});
    kept.push_back(c.id);
  }
  Stratum apex(eq.apex, std::move(cells));
  IdAssignment ids;
  for (const auto& id : kept) ids.emplace(id, id);
  return {apex, StrataMorphism::from_ids(apex, dom, eq.inclusion, ids)};
}

}  // namespace awfs
