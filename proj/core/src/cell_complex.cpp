#include "awfs/cell_complex.hpp"

#include <algorithm>
#include <unordered_map>

#include "awfs/detail/strata_glue.hpp"
#include "awfs/error.hpp"

namespace awfs {

void StrataSequence::validate_connected() const {
  const DeltaComplex* below = &base;
  for (std::size_t n = 0; n < strata.size(); ++n) {
    if (!(strata[n].boundary() == *below)) {
      throw InputError("stratum " + std::to_string(n) + " is not attached to the body of the stage below");
    }
    below = &strata[n].body();
  }
}

struct CellComplex::Data {
  DeltaComplex base;
  std::vector<Stratum> strata;
  Filtration filtration;
  std::unordered_map<std::string, int, StringHash, std::equal_to<>> birth;
  std::unordered_map<std::string, std::pair<int, std::size_t>, StringHash, std::equal_to<>> cells;
};

namespace {

// Largest birth stage among the simplices hit by `attach`.
int attach_stage(const SimplicialMap& attach,
                 const std::unordered_map<std::string, int, StringHash, std::equal_to<>>& birth) {
  int stage = 0;
  const auto& cod = attach.cod();
  for (int k = 0; k <= attach.dom().max_dim(); ++k) {
    for (auto v : attach.assignment()[static_cast<std::size_t>(k)]) stage = std::max(stage, birth.at(cod.id(k, v)));
  }
  return stage;
}

}  // namespace

CellComplex::CellComplex() : CellComplex(DeltaComplex(), {}) {}

CellComplex::CellComplex(DeltaComplex base, std::vector<Stratum> strata) {
  auto data = std::make_shared<Data>();
  StrataSequence seq{std::move(base), std::move(strata)};
  seq.validate_connected();
  while (!seq.strata.empty() && seq.strata.back().empty()) seq.strata.pop_back();
  data->base = std::move(seq.base);
  data->strata = std::move(seq.strata);
  data->filtration.stages.push_back(data->base);
  for (int k = 0; k <= data->base.max_dim(); ++k) {
    for (const auto& id : data->base.ids(k)) data->birth.emplace(id, 0);
  }
  for (std::size_t n = 0; n < data->strata.size(); ++n) {
    const auto& st = data->strata[n];
    if (st.empty()) throw InputError("empty stratum " + std::to_string(n) + " below a nonempty one");
    for (std::size_t i = 0; i < st.size(); ++i) {
      const auto& c = st.cell(i);
      int stage = attach_stage(c.attach, data->birth);
      if (stage != static_cast<int>(n)) {
        throw InputError("cell '" + c.id + "' in stratum " + std::to_string(n) + " attaches within stage " +
                         std::to_string(stage) + " (improper)");
      }
      data->cells.emplace(c.id, std::pair{static_cast<int>(n), i});
    }
    for (const auto& c : st.cells()) data->birth.emplace(c.id, static_cast<int>(n) + 1);
    data->filtration.stages.push_back(st.body());
  }
  data_ = std::move(data);
}

const DeltaComplex& CellComplex::base() const noexcept { return data_->base; }
const DeltaComplex& CellComplex::body() const noexcept { return data_->filtration.top(); }
int CellComplex::height() const noexcept { return static_cast<int>(data_->strata.size()); }
std::span<const Stratum> CellComplex::strata() const noexcept { return data_->strata; }
const Filtration& CellComplex::filtration() const noexcept { return data_->filtration; }
std::size_t CellComplex::cell_count() const noexcept { return data_->cells.size(); }

Stratum CellComplex::stratum(int n) const {
  if (n < 0) throw InputError("negative stratum index");
  if (n < height()) return data_->strata[static_cast<std::size_t>(n)];
  return Stratum(body());
}

int CellComplex::birth(std::string_view id) const {
  auto it = data_->birth.find(id);
  if (it == data_->birth.end()) throw InputError("'" + std::string(id) + "' is not a simplex of the body");
  return it->second;
}

std::optional<std::pair<int, std::size_t>> CellComplex::find_cell(std::string_view id) const {
  auto it = data_->cells.find(id);
  if (it == data_->cells.end()) return std::nullopt;
  return it->second;
}

StrataSequence CellComplex::sequence() const { return {data_->base, data_->strata}; }

bool operator==(const CellComplex& a, const CellComplex& b) {
  return a.data_ == b.data_ || (a.data_->base == b.data_->base && a.data_->strata == b.data_->strata);
}

SimplicialMap u_of_complex(const CellComplex& c) { return SimplicialMap::inclusion(c.base(), c.body()); }

CellComplexMorphism::CellComplexMorphism(CellComplex dom, CellComplex cod, SimplicialMap base_map,
                                         std::vector<std::vector<std::uint32_t>> cell_maps)
    : dom_(std::move(dom)), cod_(std::move(cod)), base_(std::move(base_map)), body_(base_) {
  if (!(base_.dom() == dom_.base()) || !(base_.cod() == cod_.base())) {
    throw InputError("base map of a cell complex morphism has the wrong endpoints");
  }
  const int stages = std::max(dom_.height(), cod_.height());
  if (cell_maps.size() > static_cast<std::size_t>(stages)) throw InputError("cell assignment has too many stages");
  cell_maps.resize(static_cast<std::size_t>(stages));
  SimplicialMap f = base_;
  for (int n = 0; n < stages; ++n) {
    StrataMorphism m(dom_.stratum(n), cod_.stratum(n), f, std::move(cell_maps[static_cast<std::size_t>(n)]));
    f = m.body_map();
    stages_.push_back(std::move(m));
  }
  body_ = f;
}

CellComplexMorphism CellComplexMorphism::from_ids(CellComplex dom, CellComplex cod, SimplicialMap base_map,
                                                  const IdAssignment& cells) {
  std::vector<std::vector<std::uint32_t>> maps(static_cast<std::size_t>(dom.height()));
  for (int n = 0; n < dom.height(); ++n) {
    for (const auto& c : dom.strata()[static_cast<std::size_t>(n)].cells()) {
      auto it = cells.find(c.id);
      if (it == cells.end()) throw InputError("cell '" + c.id + "' is unassigned");
      auto target = cod.find_cell(it->second);
      if (!target) throw InputError("cell '" + c.id + "' is sent to unknown cell '" + it->second + "'");
      if (target->first != n) {
        throw InputError("cell '" + c.id + "' of stratum " + std::to_string(n) + " is sent to stratum " +
                         std::to_string(target->first));
      }
      maps[static_cast<std::size_t>(n)].push_back(static_cast<std::uint32_t>(target->second));
    }
  }
  return CellComplexMorphism(std::move(dom), std::move(cod), std::move(base_map), std::move(maps));
}

CellComplexMorphism CellComplexMorphism::identity(const CellComplex& c) {
  std::vector<std::vector<std::uint32_t>> maps;
  for (const auto& st : c.strata()) {
    std::vector<std::uint32_t> m(st.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = static_cast<std::uint32_t>(i);
    maps.push_back(std::move(m));
  }
  return CellComplexMorphism(c, c, SimplicialMap::identity(c.base()), std::move(maps));
}

IdAssignment CellComplexMorphism::cell_assignment() const {
  IdAssignment out;
  for (const auto& m : stages_) {
    for (std::size_t i = 0; i < m.dom().size(); ++i) out.emplace(m.dom().cell(i).id, m.cod().cell(m.cell_map()[i]).id);
  }
  return out;
}

CellComplexMorphism compose(const CellComplexMorphism& second, const CellComplexMorphism& first) {
  if (!(first.cod() == second.dom())) throw InputError("cannot compose cell complex morphisms: middle complexes differ");
  std::vector<std::vector<std::uint32_t>> maps;
  for (int n = 0; n < first.dom().height(); ++n) {
    std::vector<std::uint32_t> m;
    for (auto c : first.stages()[static_cast<std::size_t>(n)].cell_map()) {
      m.push_back(second.stages()[static_cast<std::size_t>(n)].cell_map()[c]);
    }
    maps.push_back(std::move(m));
  }
  return CellComplexMorphism(first.dom(), second.cod(), compose(second.base_map(), first.base_map()), std::move(maps));
}

ArrowSquare u_of_morphism(const CellComplexMorphism& m) {
  return ArrowSquare{m.base_map(), m.body_map(), u_of_complex(m.dom()), u_of_complex(m.cod())};
}

bool is_isomorphism(const CellComplexMorphism& m) {
  if (m.stages().empty()) return m.base_map().bijective();
  return std::all_of(m.stages().begin(), m.stages().end(), [](const StrataMorphism& s) { return is_isomorphism(s); });
}

NormalizeResult normalize(const StrataSequence& seq) {
  seq.validate_connected();
  std::unordered_map<std::string, int, StringHash, std::equal_to<>> birth;
  for (int k = 0; k <= seq.base.max_dim(); ++k) {
    for (const auto& id : seq.base.ids(k)) birth.emplace(id, 0);
  }
  NormalizeResult out;
  std::vector<std::vector<const Cell*>> by_stage;
  for (std::size_t n = 0; n < seq.strata.size(); ++n) {
    for (const auto& c : seq.strata[n].cells()) {
      int stage = attach_stage(c.attach, birth);
      birth.emplace(c.id, stage + 1);
      if (by_stage.size() <= static_cast<std::size_t>(stage)) by_stage.resize(static_cast<std::size_t>(stage) + 1);
      by_stage[static_cast<std::size_t>(stage)].push_back(&c);
      out.moves.push_back({c.id, {static_cast<int>(n), stage}});
    }
  }
  std::vector<Stratum> strata;
  DeltaComplex current = seq.base;
  for (const auto& cells : by_stage) {
    std::vector<Cell> moved;
    for (const auto* c : cells) moved.push_back({c->id, c->dim, c->attach.with_codomain(current)});
    strata.emplace_back(current, std::move(moved));
    current = strata.back().body();
  }
  std::sort(out.moves.begin(), out.moves.end());
  out.complex = CellComplex(seq.base, std::move(strata));
  return out;
}

CellComplex compose_complexes(const CellComplex& a, const CellComplex& b) {
  if (!(b.base() == a.body())) throw InputError("cannot compose cell complexes: base of the second is not the body of the first");
  StrataSequence seq = a.sequence();
  for (const auto& st : b.strata()) seq.strata.push_back(st);
  return normalize(seq).complex;
}

CellComplexMorphism horizontal_compose(const CellComplexMorphism& psi, const CellComplexMorphism& phi) {
  if (!(psi.base_map() == phi.body_map())) throw InputError("horizontal composition needs psi's base map to be phi's body map");
  auto dom = compose_complexes(phi.dom(), psi.dom());
  auto cod = compose_complexes(phi.cod(), psi.cod());
  auto cells = phi.cell_assignment();
  for (auto& [k, v] : psi.cell_assignment()) cells.emplace(k, v);
  try {
    return CellComplexMorphism::from_ids(dom, cod, phi.base_map(), cells);
  } catch (const InputError& e) {
    throw InvariantViolation(std::string("horizontal composite is not a morphism: ") + e.what());
  }
}

ComplexPushforward pushforward_complex(const CellComplex& c, const SimplicialMap& g) {
  if (!(g.dom() == c.base())) throw InputError("pushforward map does not start at the base");
  std::vector<Stratum> strata;
  std::vector<std::vector<std::uint32_t>> maps;
  SimplicialMap current = g;
  for (const auto& st : c.strata()) {
    auto pf = pushforward_stratum(st, current);
    maps.push_back(pf.morphism.cell_map());
    current = pf.morphism.body_map();
    strata.push_back(std::move(pf.stratum));
  }
  std::optional<CellComplex> out;
  try {
    out.emplace(g.cod(), std::move(strata));
  } catch (const InputError& e) {
    throw InvariantViolation(std::string("pushforward is not a cell complex: ") + e.what());
  }
  CellComplexMorphism m(c, *out, g, std::move(maps));
  return {*out, m};
}

namespace {

// Stage n of m, padded with empty strata beyond the stored stages.
StrataMorphism stage_of(const CellComplexMorphism& m, int n) {
  if (static_cast<std::size_t>(n) < m.stages().size()) return m.stages()[static_cast<std::size_t>(n)];
  return StrataMorphism(m.dom().stratum(n), m.cod().stratum(n), m.body_map(), {});
}

CellCocone glue_complexes(const CellDiagram& diagram, const detail::ClassNamer& namer,
                          std::optional<std::size_t> preferred) {
  const auto& objects = diagram.objects;
  for (const auto& a : diagram.arrows) {
    if (a.src >= objects.size() || a.dst >= objects.size()) throw InputError("arrow endpoint out of range");
    if (!(a.morphism.dom() == objects[a.src]) || !(a.morphism.cod() == objects[a.dst])) {
      throw InputError("arrow morphism does not match its endpoints");
    }
  }
  int stages = 0;
  for (const auto& o : objects) stages = std::max(stages, o.height());

  std::optional<DeltaComplex> base;
  std::vector<SimplicialMap> base_legs;
  std::vector<Stratum> strata;
  std::vector<std::vector<std::vector<std::uint32_t>>> cell_maps(objects.size());
  for (int n = 0; n < std::max(stages, 1); ++n) {
    StrataDiagram d;
    for (const auto& o : objects) d.objects.push_back(o.stratum(n));
    for (const auto& a : diagram.arrows) d.arrows.push_back({a.src, a.dst, stage_of(a.morphism, n)});
    auto cocone = detail::glue_strata(d, namer, preferred);
    if (n == 0) {
      base = cocone.apex.boundary();
      for (const auto& leg : cocone.legs) base_legs.push_back(leg.boundary_map());
    } else if (!(cocone.apex.boundary() == strata.back().body())) {
      throw InvariantViolation("stagewise colimit is not connected");
    }
    if (n < stages) {
      strata.push_back(cocone.apex);
      for (std::size_t o = 0; o < objects.size(); ++o) {
        if (n < objects[o].height()) cell_maps[o].push_back(cocone.legs[o].cell_map());
      }
    }
  }
  std::optional<CellComplex> apex;
  try {
    apex.emplace(*base, std::move(strata));
  } catch (const InputError& e) {
    throw InvariantViolation(std::string("colimit is not a cell complex: ") + e.what());
  }
  CellCocone out{*apex, {}};
  for (std::size_t o = 0; o < objects.size(); ++o) {
    out.legs.emplace_back(objects[o], *apex, base_legs[o].with_codomain(apex->base()), std::move(cell_maps[o]));
  }
  return out;
}

}  // namespace

CellCocone cellcx_colimit(const CellDiagram& diagram) {
  return glue_complexes(diagram, detail::least_tagged_names, std::nullopt);
}

CellCocone cellcx_coproduct(std::span<const CellComplex> parts) {
  CellDiagram d;
  d.objects.assign(parts.begin(), parts.end());
  return cellcx_colimit(d);
}

CellQuotient cellcx_coequaliser(const CellComplexMorphism& f, const CellComplexMorphism& g) {
  if (!(f.dom() == g.dom()) || !(f.cod() == g.cod())) throw InputError("coequaliser needs parallel morphisms");
  CellDiagram d;
  d.objects = {f.dom(), f.cod()};
  d.arrows.push_back({0, 1, f});
  d.arrows.push_back({0, 1, g});
  auto cocone = glue_complexes(d, detail::preferred_object_names(1), 1);
  return {cocone.apex, cocone.legs[1]};
}

CellSubobject cellcx_equaliser(const CellComplexMorphism& f, const CellComplexMorphism& g) {
  if (!(f.dom() == g.dom()) || !(f.cod() == g.cod())) throw InputError("equaliser needs parallel morphisms");
  const auto& dom = f.dom();
  std::vector<Stratum> strata;
  std::optional<SubobjectResult> base;
  IdAssignment cells;
  for (int n = 0; n < std::max(dom.height(), 1); ++n) {
    auto eq = strata_equaliser(stage_of(f, n), stage_of(g, n));
    if (n == 0) {
      base = SubobjectResult{eq.apex.boundary(), eq.inclusion.boundary_map()};
    } else if (!(eq.apex.boundary() == strata.back().body())) {
      throw InvariantViolation("stagewise equaliser is not connected");
    }
    if (n < dom.height()) {
      for (const auto& c : eq.apex.cells()) cells.emplace(c.id, c.id);
      strata.push_back(eq.apex);
    }
  }
  std::optional<CellComplex> apex;
  try {
    apex.emplace(base->apex, std::move(strata));
  } catch (const InputError& e) {
    throw InvariantViolation(std::string("equaliser is not a cell complex: ") + e.what());
  }
  return {*apex, CellComplexMorphism::from_ids(*apex, dom, base->inclusion, cells)};
}

}  // namespace awfs
