#include "awfs/small_object.hpp"

#include <algorithm>
#include <functional>
#include <unordered_set>

#include "awfs/error.hpp"
#include "awfs/hom_search.hpp"

namespace awfs {

std::string KCellKey::encode() const {
  std::string out = std::to_string(stage) + "|" + std::to_string(dim) + "|" + target + "|";
  for (std::size_t i = 0; i < boundary.size(); ++i) {
    if (i > 0) out.push_back(',');
    out += boundary[i];
  }
  return out;
}

namespace {

using BirthFn = std::function<int(const std::string&)>;

// All cells (b, u) against e: X -> B whose lift first appears at `stage`
// according to `birth`. Cells are named "K<stage>.<rank>" in key order.
K1Step glue_stage(const SimplicialMap& e, int stage, const BirthFn& birth) {
  const auto& x = e.dom();
  const auto& b = e.cod();
  HomSearch search(x, e);
  std::vector<std::pair<KCellKey, SimplicialMap>> found;
  for (int k = 0; k <= b.max_dim(); ++k) {
    const auto shape = boundary_complex(k);
    for (std::uint32_t t = 0; t < b.size(k); ++t) {
      const auto target = boundary_of(b, {k, t});
      search.for_each(shape, nullptr, &target, [&](const Assignment& a) {
        int first = 0;
        for (int m = 0; m < k; ++m) {
          for (auto v : a[static_cast<std::size_t>(m)]) first = std::max(first, birth(x.id(m, v)));
        }
        if (first != stage) return true;
        SimplicialMap u(shape, x, a);
        KCellKey key{stage, k, b.id(k, t), {}};
        for (auto f : facet_images(u, k)) key.boundary.push_back(x.id(k - 1, f));
        found.emplace_back(std::move(key), std::move(u));
        return true;
      });
    }
  }
  std::sort(found.begin(), found.end(), [](const auto& l, const auto& r) { return l.first < r.first; });

  std::unordered_set<std::string> used;
  std::vector<Cell> cells;
  std::vector<std::pair<std::string, KCellKey>> named;
  for (std::size_t j = 0; j < found.size(); ++j) {
    auto id = fresh_id("K" + std::to_string(stage) + "." + std::to_string(j),
                       [&](const std::string& s) { return x.contains(s) || used.count(s) > 0; });
    used.insert(id);
    cells.push_back({id, found[j].first.dim, found[j].second});
    named.emplace_back(id, found[j].first);
  }
  Stratum st(x, std::move(cells));

  // E_{n+1}: the boundary part by e, each glued simplex to its target.
  const auto& body = st.body();
  Assignment assign(static_cast<std::size_t>(body.max_dim() + 1));
  for (int k = 0; k <= body.max_dim(); ++k) assign[static_cast<std::size_t>(k)].resize(body.size(k));
  for (int k = 0; k <= x.max_dim(); ++k) {
    for (std::uint32_t i = 0; i < x.size(k); ++i) assign[static_cast<std::size_t>(k)][st.body_index(k, i)] = e.at(k, i);
  }
  std::vector<KCellKey> keys(st.size(), KCellKey{});
  for (auto& [id, key] : named) {
    auto i = *st.find(id);
    assign[static_cast<std::size_t>(key.dim)][st.glued_index(i)] = b.find(key.target)->index;
    keys[i] = std::move(key);
  }
  SimplicialMap next(body, b, std::move(assign));
  return K1Step{std::move(st), std::move(next), std::move(keys)};
}

}  // namespace

K1Step k1_step(const SimplicialMap& e, const Filtration* filtration) {
  if (filtration == nullptr) return glue_stage(e, 0, [](const std::string&) { return 0; });
  filtration->validate();
  if (!(filtration->top() == e.dom())) throw InputError("filtration does not end at the domain of the map");
  const int last = static_cast<int>(filtration->stages.size()) - 1;
  return glue_stage(e, last, [&](const std::string& id) {
    for (int n = 0; n < last; ++n) {
      if (filtration->stages[static_cast<std::size_t>(n)].contains(id)) return n;
    }
    return last;
  });
}

std::vector<std::size_t> FactorResult::stage_counts() const {
  std::vector<std::size_t> out;
  for (const auto& st : kf.strata()) out.push_back(st.size());
  return out;
}

const std::string* FactorResult::find(const KCellKey& key) const {
  auto it = cell_of_key.find(key);
  return it == cell_of_key.end() ? nullptr : &it->second;
}

FactorResult free_complex(const SimplicialMap& f, int cap) {
  if (cap < 1) throw InputError("the stratum cap must be at least 1");
  std::unordered_map<std::string, int> births;
  const auto& a = f.dom();
  for (int k = 0; k <= a.max_dim(); ++k) {
    for (const auto& id : a.ids(k)) births.emplace(id, 0);
  }
  BirthFn birth = [&](const std::string& id) { return births.at(id); };

  FactorResult out{f, CellComplex(), f, {f}, {}, {}};
  std::vector<Stratum> strata;
  SimplicialMap e = f;
  for (int n = 0;; ++n) {
    auto step = glue_stage(e, n, birth);
    if (step.stratum.empty()) break;
    if (n >= cap) {
      auto counts = std::vector<std::size_t>();
      for (const auto& st : strata) counts.push_back(st.size());
      counts.push_back(step.stratum.size());
      std::string listing;
      for (std::size_t n = 0; n < counts.size(); ++n) {
        listing += (n == 0 ? "" : ", ") + std::to_string(counts[n]);
      }
      throw CapExceeded("free factorization did not stabilise within " + std::to_string(cap) +
                            (cap == 1 ? " stratum" : " strata") + " (cells per stage: " + listing + ")",
                        std::move(counts));
    }
    for (std::size_t i = 0; i < step.stratum.size(); ++i) {
      const auto& id = step.stratum.cell(i).id;
      births.emplace(id, n + 1);
      out.cell_of_key.emplace(step.keys[i], id);
      out.key_of_cell.emplace(id, step.keys[i]);
    }
    e = step.next;
    out.stage_maps.push_back(e);
    strata.push_back(std::move(step.stratum));
  }
  out.kf = CellComplex(a, std::move(strata));
  out.ef = e;
  return out;
}

CellComplexMorphism transpose(const CellComplex& c, const ArrowSquare& square, const FactorResult& fr) {
  square.validate();
  if (!(square.left == u_of_complex(c))) throw InputError("square does not start at the underlying map of the complex");
  if (!(square.right == fr.input)) throw InputError("square does not end at the factored map");
  const auto& h = square.bottom;
  SimplicialMap g = square.top;
  std::vector<std::vector<std::uint32_t>> maps;
  for (int n = 0; n < c.height(); ++n) {
    const auto& st = c.strata()[static_cast<std::size_t>(n)];
    const auto target_stratum = fr.kf.stratum(n);
    std::vector<std::uint32_t> cells;
    for (const auto& t : st.cells()) {
      KCellKey key{n, t.dim, h.image(t.id), {}};
      for (auto f : facet_images(t.attach, t.dim)) key.boundary.push_back(g.cod().id(t.dim - 1, g.at(t.dim - 1, f)));
      const auto* id = fr.find(key);
      auto where = id != nullptr ? fr.kf.find_cell(*id) : std::nullopt;
      if (!where || where->first != n) {
        throw InvariantViolation("transpose: no cell of the free complex with key " + key.encode());
      }
      cells.push_back(static_cast<std::uint32_t>(where->second));
    }
    StrataMorphism m(st, target_stratum, g, cells);
    g = m.body_map();
    maps.push_back(std::move(cells));
  }
  return CellComplexMorphism(c, fr.kf, square.top, std::move(maps));
}

CellComplex decode_coalgebra(const SimplicialMap& alpha, const FactorResult& fr) {
  const auto& f = fr.input;
  const auto& a = f.dom();
  const auto& b = f.cod();
  if (!(alpha.dom() == b) || !(alpha.cod() == fr.kf.body())) throw InputError("structure map has the wrong endpoints");
  if (!(compose(fr.ef, alpha) == SimplicialMap::identity(b))) throw InputError("structure map is not a section of Ef");
  bool inclusion = is_subcomplex(a, b);
  if (inclusion) inclusion = f == SimplicialMap::inclusion(a, b);
  if (!inclusion) throw InputError("decoding needs an identifier inclusion");

  std::vector<std::vector<SimplexRef>> by_stage;
  for (int k = 0; k <= b.max_dim(); ++k) {
    for (std::uint32_t i = 0; i < b.size(k); ++i) {
      if (a.contains(b.id(k, i))) continue;
      auto it = fr.key_of_cell.find(alpha.image(b.id(k, i)));
      if (it == fr.key_of_cell.end()) {
        throw InputError("'" + b.id(k, i) + "' is not sent to a glued simplex of the free complex");
      }
      auto stage = static_cast<std::size_t>(it->second.stage);
      if (by_stage.size() <= stage) by_stage.resize(stage + 1);
      by_stage[stage].push_back({k, i});
    }
  }
  std::vector<Stratum> strata;
  DeltaComplex current = a;
  for (const auto& refs : by_stage) {
    std::vector<Cell> cells;
    for (auto r : refs) {
      std::vector<std::uint32_t> facets;
      for (auto f : b.faces(r.dim, r.index)) {
        auto where = current.find(b.id(r.dim - 1, f));
        if (!where) throw InputError("'" + b.id(r) + "' is attached along simplices of a later stage");
        facets.push_back(where->index);
      }
      cells.push_back({b.id(r), r.dim, boundary_from_facets(current, r.dim, facets)});
    }
    strata.emplace_back(current, std::move(cells));
    current = strata.back().body();
  }
  return CellComplex(a, std::move(strata));
}

bool LawReport::all_passed() const {
  return !error && std::all_of(checks.begin(), checks.end(), [](const LawCheck& c) { return c.ran && c.passed; });
}

const std::vector<std::string>& law_names() {
  static const std::vector<std::string> names{
      "factorization",          "monad_unit_left",  "monad_unit_right",        "monad_associativity",
      "comonad_counit_left",    "comonad_counit_right", "comonad_coassociativity", "distributivity",
      "distributivity_uncomposed", "naturality"};
  return names;
}

const FactorResult& FreeFactorization::factor(const SimplicialMap& f) {
  for (const auto& entry : cache_) {
    if (entry->input == f) return *entry;
  }
  cache_.push_back(std::make_unique<FactorResult>(free_complex(f, cap_)));
  return *cache_.back();
}

SimplicialMap FreeFactorization::middle_map(const ArrowSquare& square) {
  square.validate();
  const auto& ff = factor(square.left);
  const auto& fg = factor(square.right);
  ArrowSquare lifted{square.top, compose(square.bottom, ff.ef), u_of_complex(ff.kf), square.right};
  return awfs::transpose(ff.kf, lifted, fg).body_map();
}

ArrowSquare FreeFactorization::monad_unit(const SimplicialMap& f) {
  const auto& fr = factor(f);
  return ArrowSquare{u_of_complex(fr.kf), SimplicialMap::identity(f.cod()), f, fr.ef};
}

SimplicialMap FreeFactorization::monad_mult(const SimplicialMap& f) {
  const auto& fr = factor(f);
  const auto& fr2 = factor(fr.ef);
  auto both = compose_complexes(fr.kf, fr2.kf);
  ArrowSquare square{SimplicialMap::identity(f.dom()), fr2.ef, u_of_complex(both), f};
  return awfs::transpose(both, square, fr).body_map();
}

SimplicialMap FreeFactorization::comonad_comult(const SimplicialMap& f) { return unit(factor(f).kf).body_map(); }

CellComplexMorphism FreeFactorization::transpose(const CellComplex& c, const ArrowSquare& square) {
  return awfs::transpose(c, square, factor(square.right));
}

CellComplexMorphism FreeFactorization::unit(const CellComplex& c) {
  auto u = u_of_complex(c);
  return transpose(c, identity_square(u));
}

SimplicialMap FreeFactorization::coalgebra_structure(const CellComplex& c) { return unit(c).body_map(); }

SimplicialMap FreeFactorization::composite_left_map(const SimplicialMap& f, const SimplicialMap& alpha,
                                                    const SimplicialMap& g, const SimplicialMap& beta) {
  auto gf = compose(g, f);
  const auto& fr_gf = factor(gf);
  auto m1 = middle_map(ArrowSquare{SimplicialMap::identity(f.dom()), g, f, gf});
  auto m2 = middle_map(ArrowSquare{compose(m1, alpha), SimplicialMap::identity(g.cod()), g, fr_gf.ef});
  return compose(monad_mult(gf), compose(m2, beta));
}

FreeFactorization::Pushforward FreeFactorization::pushforward_left_map(const SimplicialMap& f,
                                                                       const SimplicialMap& alpha,
                                                                       const SimplicialMap& g) {
  auto po = pushout(f, g);
  auto m = middle_map(ArrowSquare{g, po.from_x, f, po.from_y});
  auto on_c = u_of_complex(factor(po.from_y).kf);
  auto structure = pushout_mediating(po, compose(m, alpha), on_c);
  return {std::move(po), std::move(structure)};
}

LawReport FreeFactorization::check_laws(const SimplicialMap& f, const std::vector<ArrowSquare>& squares) {
  LawReport report{f, {}, std::nullopt};
  for (const auto& name : law_names()) report.checks.push_back({name, false, false, std::nullopt});
  using Pair = std::pair<SimplicialMap, SimplicialMap>;
  auto run = [&](std::size_t index, const std::function<std::optional<Pair>()>& body) {
    if (report.error) return;
    auto& check = report.checks[index];
    try {
      auto failure = body();
      check.ran = true;
      check.passed = !failure;
      check.witness = std::move(failure);
    } catch (const CapExceeded& e) {
      report.error = e.what();
    }
  };
  auto expect = [](SimplicialMap lhs, SimplicialMap rhs) -> std::optional<Pair> {
    if (lhs == rhs) return std::nullopt;
    return Pair{std::move(lhs), std::move(rhs)};
  };

  run(0, [&] {
    const auto& fr = factor(f);
    return expect(compose(fr.ef, u_of_complex(fr.kf)), f);
  });
  run(1, [&] {
    const auto& fr = factor(f);
    auto uk_ef = u_of_complex(factor(fr.ef).kf);
    return expect(compose(monad_mult(f), uk_ef), SimplicialMap::identity(fr.kf.body()));
  });
  run(2, [&] {
    const auto& fr = factor(f);
    auto m = middle_map(monad_unit(f));
    return expect(compose(monad_mult(f), m), SimplicialMap::identity(fr.kf.body()));
  });
  run(3, [&] {
    const auto& fr = factor(f);
    auto mu = monad_mult(f);
    auto mu_e = monad_mult(fr.ef);
    auto eef = factor(fr.ef).ef;
    auto m = middle_map(ArrowSquare{mu, SimplicialMap::identity(f.cod()), eef, fr.ef});
    return expect(compose(mu, mu_e), compose(mu, m));
  });
  run(4, [&] {
    const auto& fr = factor(f);
    auto ukf = u_of_complex(fr.kf);
    return expect(compose(factor(ukf).ef, comonad_comult(f)), SimplicialMap::identity(fr.kf.body()));
  });
  run(5, [&] {
    const auto& fr = factor(f);
    auto ukf = u_of_complex(fr.kf);
    auto m = middle_map(ArrowSquare{SimplicialMap::identity(f.dom()), fr.ef, ukf, f});
    return expect(compose(m, comonad_comult(f)), SimplicialMap::identity(fr.kf.body()));
  });
  run(6, [&] {
    const auto& fr = factor(f);
    auto ukf = u_of_complex(fr.kf);
    auto delta = comonad_comult(f);
    auto ukukf = u_of_complex(factor(ukf).kf);
    auto m = middle_map(ArrowSquare{SimplicialMap::identity(f.dom()), delta, ukf, ukukf});
    return expect(compose(m, delta), compose(comonad_comult(ukf), delta));
  });
  // Both forms share the same ingredients.
  std::optional<Pair> strict;
  run(7, [&] {
    const auto& fr = factor(f);
    auto ukf = u_of_complex(fr.kf);
    auto e_ukf = factor(ukf).ef;
    auto mu = monad_mult(f);
    auto delta = comonad_comult(f);
    auto uk_ef = u_of_complex(factor(fr.ef).kf);
    auto m = middle_map(ArrowSquare{delta, mu, uk_ef, e_ukf});
    auto inner_lhs = compose(delta, mu);
    auto inner_rhs = compose(monad_mult(ukf), compose(m, comonad_comult(fr.ef)));
    strict = expect(inner_lhs, inner_rhs);
    return expect(compose(e_ukf, inner_lhs), compose(e_ukf, inner_rhs));
  });
  if (report.checks[7].ran) {
    report.checks[8].ran = true;
    report.checks[8].passed = !strict;
    report.checks[8].witness = std::move(strict);
  }
  run(9, [&]() -> std::optional<Pair> {
    for (const auto& sq : squares) {
      sq.validate();
      if (!(sq.left == f)) throw InputError("naturality square does not start at the checked map");
      const auto& fr_f = factor(sq.left);
      const auto& fr_g = factor(sq.right);
      auto m = middle_map(sq);
      auto mm = middle_map(ArrowSquare{m, sq.bottom, fr_f.ef, fr_g.ef});
      if (auto bad = expect(compose(m, monad_mult(sq.left)), compose(monad_mult(sq.right), mm))) return bad;
      if (auto bad = expect(compose(u_of_complex(fr_g.kf), sq.top), compose(m, u_of_complex(fr_f.kf)))) return bad;
    }
    return std::nullopt;
  });
  return report;
}

LawReport check_awfs_laws(const SimplicialMap& f, int cap, const std::vector<ArrowSquare>& squares) {
  FreeFactorization ff(cap);
  return ff.check_laws(f, squares);
}

}  // namespace awfs
