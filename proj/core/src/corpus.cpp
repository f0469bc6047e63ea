#include "awfs/corpus.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "awfs/colimits.hpp"
#include "awfs/error.hpp"
#include "awfs/hom_search.hpp"

namespace awfs::corpus {

std::vector<Fixture> fixtures() {
  const auto point = standard_simplex(0);
  const auto two_points = coproduct(std::vector<DeltaComplex>{point, point}).apex;
  return {
      {"empty_to_point", SimplicialMap::from_empty(point)},
      {"boundary_1", SimplicialMap::inclusion(boundary_complex(1), standard_simplex(1))},
      {"fold", SimplicialMap::from_ids(two_points, point, {{"0:0", "0"}, {"1:0", "0"}})},
      {"boundary_2", SimplicialMap::inclusion(boundary_complex(2), standard_simplex(2))},
      {"identity_1", SimplicialMap::identity(standard_simplex(1))},
  };
}

SimplicialMap fixture(const std::string& name) {
  for (auto& f : fixtures()) {
    if (f.name == name) return f.map;
  }
  throw InputError("unknown fixture '" + name + "'");
}

std::optional<SimplicialMap> random_map(Rng& rng, const DeltaComplex& dom, const DeltaComplex& cod) {
  std::vector<SimplexRef> order;
  for (int k = 0; k <= dom.max_dim(); ++k) {
    for (std::uint32_t i = 0; i < dom.size(k); ++i) order.push_back({k, i});
  }
  if (dom.max_dim() > cod.max_dim()) {
    for (int k = cod.max_dim() + 1; k <= dom.max_dim(); ++k) {
      if (dom.size(k) > 0) return std::nullopt;
    }
  }
  Assignment assign(static_cast<std::size_t>(dom.max_dim() + 1));
  for (int k = 0; k <= dom.max_dim(); ++k) assign[static_cast<std::size_t>(k)].assign(dom.size(k), 0);
  std::size_t budget = 200000;
  std::function<bool(std::size_t)> place = [&](std::size_t pos) {
    if (pos == order.size()) return true;
    if (budget == 0) return false;
    --budget;
    const auto x = order[pos];
    std::vector<std::uint32_t> candidates;
    for (std::uint32_t y = 0; y < cod.size(x.dim); ++y) {
      bool ok = true;
      if (x.dim > 0) {
        auto df = dom.faces(x.dim, x.index);
        auto cf = cod.faces(x.dim, y);
        for (std::size_t j = 0; j < df.size() && ok; ++j) ok = assign[static_cast<std::size_t>(x.dim) - 1][df[j]] == cf[j];
      }
      if (ok) candidates.push_back(y);
    }
    rng.shuffle(candidates);
    for (auto y : candidates) {
      assign[static_cast<std::size_t>(x.dim)][x.index] = y;
      if (place(pos + 1)) return true;
    }
    return false;
  };
  if (!place(0)) return std::nullopt;
  return SimplicialMap(dom, cod, std::move(assign));
}

namespace {

std::string next_id(const std::string& prefix, int& counter, const DeltaComplexBuilder& taken) {
  return fresh_id(prefix + std::to_string(counter++), [&](const std::string& s) { return taken.contains(s); });
}

// Glues a random k-simplex onto the complex being built; false if there is no boundary for it.
bool add_random_simplex(Rng& rng, DeltaComplexBuilder& builder, int k, const std::string& prefix, int& counter) {
  if (k == 0) {
    builder.add(0, next_id(prefix, counter, builder));
    return true;
  }
  auto current = builder.build();
  auto u = random_map(rng, boundary_complex(k), current);
  if (!u) return false;
  std::vector<std::string> faces;
  for (auto f : facet_images(*u, k)) faces.push_back(current.id(k - 1, f));
  builder.add(k, next_id(prefix, counter, builder), std::move(faces));
  return true;
}

}  // namespace

DeltaComplex random_complex(Rng& rng, const ComplexShape& shape, const std::string& prefix) {
  DeltaComplexBuilder builder;
  int counter = 0;
  const int vertices = rng.between(shape.min_vertices, shape.max_vertices);
  for (int v = 0; v < vertices; ++v) add_random_simplex(rng, builder, 0, prefix, counter);
  for (int k = 1; k <= shape.max_dim; ++k) {
    const int count = rng.between(0, shape.max_per_dim);
    for (int i = 0; i < count; ++i) {
      if (!add_random_simplex(rng, builder, k, prefix, counter)) break;
    }
  }
  return builder.build();
}

DeltaComplex random_supercomplex(Rng& rng, const DeltaComplex& x, int count, int max_dim, const std::string& prefix) {
  DeltaComplexBuilder builder(x);
  int counter = 0;
  for (int i = 0; i < count; ++i) add_random_simplex(rng, builder, rng.between(0, max_dim), prefix, counter);
  return builder.build();
}

SimplicialMap random_map_from(Rng& rng, const DeltaComplex& x) {
  auto g = SimplicialMap::identity(x);
  const int steps = rng.between(1, 3);
  for (int s = 0; s < steps; ++s) {
    const auto cur = g.cod();
    switch (rng.below(3)) {
      case 0:
        // The search budget can run out on larger complexes; skip the step then.
        if (auto e = random_map(rng, cur, cur)) g = compose(*e, g);
        break;
      case 1:
        if (cur.size(0) >= 2) {
          auto a = static_cast<std::uint32_t>(rng.below(cur.size(0)));
          auto b = static_cast<std::uint32_t>(rng.below(cur.size(0) - 1));
          if (b >= a) ++b;
          auto q = coequaliser(characteristic_map(cur, {0, a}), characteristic_map(cur, {0, b}));
          g = compose(q.quotient, g);
        }
        break;
      default: {
        auto bigger = random_supercomplex(rng, cur, rng.between(1, 3), std::min(2, cur.max_dim() + 1), "z");
        g = compose(SimplicialMap::inclusion(cur, bigger), g);
        break;
      }
    }
  }
  return g;
}

SimplicialMap random_arrow(Rng& rng, int max_dim) {
  auto b = random_complex(rng, ComplexShape{max_dim, 1, 3, 3}, "b");
  switch (rng.below(4)) {
    case 0:
      return SimplicialMap::from_empty(b);
    case 1: {
      std::vector<std::vector<bool>> keep(static_cast<std::size_t>(b.max_dim() + 1));
      for (int k = 0; k <= b.max_dim(); ++k) {
        for (std::uint32_t i = 0; i < b.size(k); ++i) {
          bool ok = rng.chance(60);
          for (auto f : b.faces(k, i)) ok = ok && keep[static_cast<std::size_t>(k) - 1][f];
          keep[static_cast<std::size_t>(k)].push_back(ok);
        }
      }
      auto a = subcomplex(b, keep);
      return SimplicialMap::inclusion(a, b);
    }
    default:
      for (int attempt = 0; attempt < 10; ++attempt) {
        auto a = random_complex(rng, ComplexShape{std::max(0, max_dim - 1), 1, 3, 2}, "a");
        if (auto f = random_map(rng, a, b)) return *f;
      }
      return SimplicialMap::identity(b);
  }
}

Stratum random_stratum(Rng& rng, const DeltaComplex& boundary, int cells, int max_dim, const std::string& prefix) {
  std::vector<Cell> out;
  int counter = 0;
  const int count = rng.between(1, std::max(1, cells));
  for (int i = 0; i < count; ++i) {
    auto id = fresh_id(prefix + std::to_string(counter++), [&](const std::string& s) {
      return boundary.contains(s) || std::any_of(out.begin(), out.end(), [&](const Cell& c) { return c.id == s; });
    });
    // Sometimes repeat an earlier attaching map so that parallel cells occur.
    if (!out.empty() && rng.chance(25)) {
      const auto& twin = out[rng.below(out.size())];
      out.push_back({id, twin.dim, twin.attach});
      continue;
    }
    const int k = rng.between(0, max_dim);
    std::optional<SimplicialMap> attach;
    if (k > 0) attach = random_map(rng, boundary_complex(k), boundary);
    if (attach) {
      out.push_back({id, k, *attach});
    } else {
      out.push_back({id, 0, SimplicialMap::from_empty(boundary)});
    }
  }
  return Stratum(boundary, std::move(out));
}

StrataSequence random_sequence(Rng& rng, const CellShape& shape) {
  StrataSequence seq;
  seq.base = random_complex(rng, shape.base, "x");
  const int strata = rng.between(1, shape.max_strata);
  int budget = shape.max_cells;
  DeltaComplex current = seq.base;
  for (int n = 0; n < strata && budget > 0; ++n) {
    const int room = std::max(1, budget - (strata - n - 1));
    auto st = random_stratum(rng, current, std::min(room, std::max(1, shape.max_cells / strata + 1)),
                             shape.max_cell_dim, "c" + std::to_string(n) + "_");
    budget -= static_cast<int>(st.size());
    current = st.body();
    seq.strata.push_back(std::move(st));
  }
  return seq;
}

CellComplex random_cell_complex(Rng& rng, const CellShape& shape) { return normalize(random_sequence(rng, shape)).complex; }

namespace {

// Candidate cells of `cod` for each cell of `dom` given the boundary map f; empty if some cell has none.
std::vector<std::vector<std::uint32_t>> cell_candidates(const Stratum& dom, const Stratum& cod, const SimplicialMap& f) {
  std::vector<std::vector<std::uint32_t>> out;
  for (const auto& s : dom.cells()) {
    auto pushed = compose(f, s.attach);
    std::vector<std::uint32_t> options;
    for (std::uint32_t t = 0; t < cod.size(); ++t) {
      if (cod.cell(t).dim == s.dim && cod.cell(t).attach == pushed) options.push_back(t);
    }
    if (options.empty()) return {};
    out.push_back(std::move(options));
  }
  return out;
}

}  // namespace

std::optional<StrataMorphism> random_strata_morphism(Rng& rng, const Stratum& dom, const Stratum& cod, int attempts) {
  for (int a = 0; a < attempts; ++a) {
    auto f = random_map(rng, dom.boundary(), cod.boundary());
    if (!f) return std::nullopt;
    auto options = cell_candidates(dom, cod, *f);
    if (options.size() != dom.size()) continue;
    std::vector<std::uint32_t> map;
    for (const auto& o : options) map.push_back(o[rng.below(o.size())]);
    return StrataMorphism(dom, cod, *f, std::move(map));
  }
  return std::nullopt;
}

std::optional<CellComplexMorphism> random_cell_morphism(Rng& rng, const CellComplex& dom, const CellComplex& cod,
                                                        int attempts) {
  if (dom.height() > cod.height()) return std::nullopt;
  for (int a = 0; a < attempts; ++a) {
    auto f = random_map(rng, dom.base(), cod.base());
    if (!f) return std::nullopt;
    std::vector<std::vector<std::uint32_t>> maps;
    SimplicialMap stage = *f;
    bool ok = true;
    for (int n = 0; n < dom.height() && ok; ++n) {
      const auto& st = dom.strata()[static_cast<std::size_t>(n)];
      const auto& target = cod.strata()[static_cast<std::size_t>(n)];
      auto options = cell_candidates(st, target, stage);
      if (options.size() != st.size()) {
        ok = false;
        break;
      }
      std::vector<std::uint32_t> map;
      for (const auto& o : options) map.push_back(o[rng.below(o.size())]);
      StrataMorphism m(st, target, stage, map);
      stage = m.body_map();
      maps.push_back(std::move(map));
    }
    if (ok) return CellComplexMorphism(dom, cod, *f, std::move(maps));
  }
  return std::nullopt;
}

StrataMorphism strata_codiagonal(const Stratum& st) {
  std::vector<Stratum> parts{st, st};
  auto sum = strata_coproduct(parts);
  auto id = SimplicialMap::identity(st.boundary());
  auto f = mediating_map(ComplexCocone{sum.apex.boundary(), {sum.legs[0].boundary_map(), sum.legs[1].boundary_map()}},
                         {id, id});
  IdAssignment cells;
  for (std::size_t o = 0; o < 2; ++o) {
    for (const auto& c : st.cells()) cells.emplace(tagged_id(o, c.id), c.id);
  }
  return StrataMorphism::from_ids(sum.apex, st, f, cells);
}

CellComplexMorphism cell_codiagonal(const CellComplex& c) {
  std::vector<CellComplex> parts{c, c};
  auto sum = cellcx_coproduct(parts);
  auto id = SimplicialMap::identity(c.base());
  auto f = mediating_map(ComplexCocone{sum.apex.base(), {sum.legs[0].base_map(), sum.legs[1].base_map()}}, {id, id});
  IdAssignment cells;
  for (std::size_t o = 0; o < 2; ++o) {
    for (const auto& st : c.strata()) {
      for (const auto& cell : st.cells()) cells.emplace(tagged_id(o, cell.id), cell.id);
    }
  }
  return CellComplexMorphism::from_ids(sum.apex, c, f, cells);
}

StrataMorphism random_strata_arrow(Rng& rng, const Stratum& dom) {
  switch (rng.below(5)) {
    case 0:
      return pushforward_stratum(dom, random_map_from(rng, dom.boundary())).morphism;
    case 1: {
      // Merge two cells with the same attaching map, when there are any.
      for (std::size_t s = 0; s < dom.size(); ++s) {
        for (std::size_t t = s + 1; t < dom.size(); ++t) {
          if (dom.cell(s).dim != dom.cell(t).dim || !(dom.cell(s).attach == dom.cell(t).attach)) continue;
          Stratum one(dom.boundary(), {dom.cell(s)});
          auto id = SimplicialMap::identity(dom.boundary());
          StrataMorphism to_s(one, dom, id, {static_cast<std::uint32_t>(s)});
          StrataMorphism to_t(one, dom, id, {static_cast<std::uint32_t>(t)});
          return strata_coequaliser(to_s, to_t).quotient;
        }
      }
      return pushforward_stratum(dom, random_map_from(rng, dom.boundary())).morphism;
    }
    case 2: {
      std::vector<Stratum> parts{dom, random_stratum(rng, random_complex(rng, {1, 1, 2, 2}, "w"), 2, 1, "d")};
      return strata_coproduct(parts).legs[0];
    }
    case 3: {
      std::vector<Stratum> parts{dom, pushforward_stratum(dom, random_map_from(rng, dom.boundary())).stratum};
      auto sum = strata_coproduct(parts);
      if (auto m = random_strata_morphism(rng, dom, sum.apex)) return *m;
      return sum.legs[0];
    }
    default: {
      auto first = pushforward_stratum(dom, random_map_from(rng, dom.boundary())).morphism;
      auto second = pushforward_stratum(first.cod(), random_map_from(rng, first.cod().boundary())).morphism;
      return compose(second, first);
    }
  }
}

namespace {

// Identifies two cells of the same stratum with equal attaching maps, if any.
std::optional<CellComplexMorphism> merge_parallel_cells(const CellComplex& dom) {
  for (int n = 0; n < dom.height(); ++n) {
    const auto& st = dom.strata()[static_cast<std::size_t>(n)];
    for (std::size_t s = 0; s < st.size(); ++s) {
      for (std::size_t t = s + 1; t < st.size(); ++t) {
        if (st.cell(s).dim != st.cell(t).dim || !(st.cell(s).attach == st.cell(t).attach)) continue;
        // The complex up to stratum n, with only cell s in stratum n.
        std::vector<Stratum> strata(dom.strata().begin(), dom.strata().begin() + n);
        strata.emplace_back(st.boundary(), std::vector<Cell>{st.cell(s)});
        CellComplex probe(dom.base(), std::move(strata));
        IdAssignment to_s;
        for (const auto& lower : probe.strata()) {
          for (const auto& c : lower.cells()) to_s.emplace(c.id, c.id);
        }
        auto to_t = to_s;
        to_t[st.cell(s).id] = st.cell(t).id;
        auto id = SimplicialMap::identity(dom.base());
        return cellcx_coequaliser(CellComplexMorphism::from_ids(probe, dom, id, to_s),
                                  CellComplexMorphism::from_ids(probe, dom, id, to_t))
            .quotient;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

CellComplexMorphism random_cell_arrow(Rng& rng, const CellComplex& dom) {
  switch (rng.below(4)) {
    case 0:
      return pushforward_complex(dom, random_map_from(rng, dom.base())).morphism;
    case 1: {
      std::vector<CellComplex> parts{dom, pushforward_complex(dom, random_map_from(rng, dom.base())).complex};
      auto sum = cellcx_coproduct(parts);
      if (auto m = random_cell_morphism(rng, dom, sum.apex)) return *m;
      return sum.legs[0];
    }
    case 2:
      if (auto m = merge_parallel_cells(dom)) return *m;
      return pushforward_complex(dom, random_map_from(rng, dom.base())).morphism;
    default: {
      auto first = pushforward_complex(dom, random_map_from(rng, dom.base())).morphism;
      auto second = random_cell_arrow(rng, first.cod());
      return compose(second, first);
    }
  }
}

std::vector<ArrowSquare> random_squares(Rng& rng, const SimplicialMap& f, std::span<const SimplicialMap> targets,
                                        std::size_t count) {
  std::vector<ArrowSquare> all;
  for (const auto& g : targets) {
    for (const auto& b : enumerate_homs(f.cod(), g.cod())) {
      HomConstraint c;
      c.post.emplace(g, compose(b, f));
      for (const auto& a : enumerate_homs(f.dom(), g.dom(), c)) all.push_back(ArrowSquare{a, b, f, g});
    }
  }
  std::vector<ArrowSquare> out;
  if (all.empty()) return out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(all[rng.below(all.size())]);
  return out;
}

}  // namespace awfs::corpus
