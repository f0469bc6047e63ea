#include "doctest.h"

#include "awfs/colimits.hpp"
#include "awfs/corpus.hpp"
#include "awfs/error.hpp"
#include "awfs/lifting.hpp"
#include "build.hpp"

using namespace awfs;

namespace {

SimplicialMap generator_map(int k) { return SimplicialMap::inclusion(boundary_complex(k), standard_simplex(k)); }

// Id of the free cell with this key.
std::string cell_for(const FactorResult& fr, const KCellKey& key) {
  const auto* id = fr.find(key);
  REQUIRE(id != nullptr);
  return *id;
}

}  // namespace

TEST_SUITE("lifting") {
  TEST_CASE("free filler examples") {
    auto fr0 = free_complex(SimplicialMap::from_empty(build::point()));
    auto t0 = free_fillers(fr0);
    CHECK(t0.fill({0, {}, "0"}) == fr0.kf.strata()[0].cell(0).id);

    auto fr = free_complex(generator_map(1));
    auto table = free_fillers(fr);
    CHECK(table.fill({1, {"1", "0"}, "01"}) == cell_for(fr, {0, 1, "01", {"1", "0"}}));

    // A boundary through a vertex glued at stage 0 lands on a stage-1 edge.
    const auto fresh = cell_for(fr, {0, 0, "1", {}});
    auto filler = table.fill({1, {fresh, "0"}, "01"});
    REQUIRE(filler.has_value());
    CHECK(fr.key_of_cell.at(*filler).stage == 1);
    CHECK(is_filler(fr.ef, {1, {fresh, "0"}, "01"}, *filler));
    CHECK(verify_fillers(table).ok());
  }

  TEST_CASE("solve_lifting examples") {
    auto pt = build::point();
    auto two = build::complex({{0, "a"}, {0, "b"}});
    auto fold = build::map(two, pt, {{"a", "0"}, {"b", "0"}});
    FillerTable first(fold, {{GeneratingSquare{0, {}, "0"}, "a"}}, FillerTable::Fallback::fail);
    Stratum vertex(DeltaComplex{}, {build::cell("p", 0, {})});
    CellComplex c(DeltaComplex{}, {vertex});
    ArrowSquare sq{SimplicialMap::from_empty(two), build::map(c.body(), pt, {{"p", "0"}}), u_of_complex(c), fold};
    auto d = solve_lifting(c, first, sq);
    CHECK(d.image("p") == "a");

    auto x = standard_simplex(1);
    auto idx = SimplicialMap::identity(x);
    auto e = corpus::fixture("boundary_1");
    auto u = build::map(x, e.cod(), {{"0", "0"}, {"1", "1"}, {"01", "01"}});
    FillerTable none(SimplicialMap::identity(e.cod()));
    CHECK(solve_lifting(CellComplex::trivial(x), none, ArrowSquare{u, u, idx, SimplicialMap::identity(e.cod())}) == u);
  }

  TEST_CASE("lifting against free fillers recovers the coalgebra structure") {
    corpus::Rng rng(61);
    for (int trial = 0; trial < 60; ++trial) {
      auto c = corpus::random_cell_complex(rng, corpus::CellShape{});
      FreeFactorization ff;
      auto u = u_of_complex(c);
      const auto& fr = ff.factor(u);
      ArrowSquare unit{u_of_complex(fr.kf), SimplicialMap::identity(c.body()), u, fr.ef};
      CHECK(solve_lifting(c, free_fillers(fr), unit) == ff.coalgebra_structure(c));
    }
  }

  TEST_CASE("lift of the free complex along the identity is the comultiplication") {
    for (const auto& fx : corpus::fixtures()) {
      CAPTURE(fx.name);
      FreeFactorization ff;
      const auto& fr = ff.factor(fx.map);
      auto ukf = u_of_complex(fr.kf);
      const auto& fr2 = ff.factor(ukf);
      ArrowSquare sq{u_of_complex(fr2.kf), SimplicialMap::identity(fr.kf.body()), ukf, fr2.ef};
      CHECK(solve_lifting(fr.kf, free_fillers(fr2), sq) == ff.comonad_comult(fx.map));
    }
  }

  TEST_CASE("free fillers always verify") {
    corpus::Rng rng(62);
    for (int trial = 0; trial < 30; ++trial) {
      auto fr = free_complex(corpus::random_arrow(rng, 2));
      auto report = verify_fillers(free_fillers(fr));
      CHECK(report.ok());
      CHECK(report.exhausted);
      CHECK(report.checked >= fr.kf.cell_count());
    }
  }

  TEST_CASE("a corrupted entry is reported once") {
    auto fr = free_complex(generator_map(1));
    auto base = free_fillers(fr);
    auto entries = base.entries();
    GeneratingSquare bad{1, {"1", "0"}, "01"};
    const auto right = entries.at(bad);
    std::string wrong;
    for (const auto& [sq, id] : entries) {
      if (sq.dim == 1 && id != right) wrong = id;
    }
    entries[bad] = wrong;
    FillerTable corrupted(fr.ef, entries, FillerTable::Fallback::fail);
    auto report = verify_fillers(corrupted);
    REQUIRE(report.failures.size() == 1);
    CHECK(report.failures[0].square == bad);
    CHECK(report.failures[0].filler == wrong);

    auto b1 = boundary_complex(1);
    CellComplex edge(b1, {Stratum(b1, {build::cell("01", 1, b1, {"1", "0"})})});
    ArrowSquare sq{SimplicialMap::inclusion(b1, fr.kf.body()), SimplicialMap::identity(standard_simplex(1)),
                   generator_map(1), fr.ef};
    try {
      solve_lifting(edge, corrupted, sq);
      FAIL("expected a lifting failure");
    } catch (const LiftingFailure& e) {
      CHECK(e.square() == bad);
      CHECK(e.cell() == "01");
      CHECK(e.filler() == wrong);
    }
  }

  TEST_CASE("search fallback reports unsolvable squares") {
    auto d1 = standard_simplex(1);
    auto two = build::complex({{0, "a"}, {0, "b"}});
    auto p = build::map(two, d1, {{"a", "0"}, {"b", "1"}});
    FillerTable search(p);
    auto report = verify_fillers(search);
    REQUIRE(report.failures.size() == 1);
    CHECK(report.failures[0].square == GeneratingSquare{1, {"b", "a"}, "01"});
    CHECK_FALSE(report.failures[0].filler.has_value());
    CHECK(search.fill({0, {}, "1"}) == std::string("b"));
  }

  TEST_CASE("lifts compose") {
    corpus::Rng rng(63);
    for (int trial = 0; trial < 30; ++trial) {
      auto a = corpus::random_cell_complex(rng, corpus::CellShape{});
      StrataSequence seq{a.body(), {corpus::random_stratum(rng, a.body(), 3, 2, "b")}};
      auto b = normalize(seq).complex;
      auto ab = compose_complexes(a, b);
      auto u = u_of_complex(ab);
      auto fr = free_complex(u);
      auto table = free_fillers(fr);
      ArrowSquare whole{u_of_complex(fr.kf), SimplicialMap::identity(ab.body()), u, fr.ef};
      auto direct = solve_lifting(ab, table, whole);

      auto ua = u_of_complex(a);
      auto ub = u_of_complex(b);
      auto first = solve_lifting(a, table, ArrowSquare{whole.top, ub, ua, fr.ef});
      auto second = solve_lifting(b, table, ArrowSquare{first, whole.bottom, ub, fr.ef});
      CHECK(second == direct);
    }
  }

  TEST_CASE("lifts do not depend on the order cells are listed in") {
    corpus::Rng rng(64);
    for (int trial = 0; trial < 30; ++trial) {
      auto c = corpus::random_cell_complex(rng, corpus::CellShape{});
      auto u = u_of_complex(c);
      auto fr = free_complex(u);
      auto table = free_fillers(fr);
      ArrowSquare sq{u_of_complex(fr.kf), SimplicialMap::identity(c.body()), u, fr.ef};
      auto expected = solve_lifting(c, table, sq);

      std::vector<Stratum> shuffled;
      for (const auto& st : c.strata()) {
        std::vector<Cell> cells(st.cells().begin(), st.cells().end());
        rng.shuffle(cells);
        shuffled.emplace_back(st.boundary(), std::move(cells));
      }
      CellComplex same(c.base(), std::move(shuffled));
      CHECK(solve_lifting(same, table, sq) == expected);
    }
  }
}
