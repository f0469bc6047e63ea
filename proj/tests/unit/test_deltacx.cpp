#include "doctest.h"

#include <set>

#include "awfs/colimits.hpp"
#include "awfs/corpus.hpp"
#include "awfs/error.hpp"
#include "awfs/hom_search.hpp"
#include "build.hpp"
#include "oracles.hpp"

using namespace awfs;

TEST_SUITE("deltacx") {
  TEST_CASE("standard simplices use vertex-list names") {
    auto d0 = standard_simplex(0);
    CHECK(d0.max_dim() == 0);
    CHECK(d0.total_size() == 1);

    auto d1 = standard_simplex(1);
    CHECK(d1.size(0) == 2);
    CHECK(d1.size(1) == 1);
    CHECK(d1.face_ids(1, 0) == std::vector<std::string>{"1", "0"});

    auto d2 = standard_simplex(2);
    CHECK(d2.size(0) == 3);
    CHECK(d2.size(1) == 3);
    CHECK(d2.size(2) == 1);
    CHECK(d2.face_ids(2, 0) == std::vector<std::string>{"12", "02", "01"});
    CHECK(standard_simplex(3).contains("013"));
  }

  TEST_CASE("boundary complexes drop the top simplex") {
    CHECK(boundary_complex(0).max_dim() == -1);
    auto b1 = boundary_complex(1);
    CHECK(b1.max_dim() == 0);
    CHECK(b1.size(0) == 2);
    auto b2 = boundary_complex(2);
    CHECK(b2.max_dim() == 1);
    CHECK(b2.size(0) == 3);
    CHECK(b2.size(1) == 3);
  }

  TEST_CASE("builder enforces the simplicial identities") {
    CHECK_THROWS_AS(build::complex({{0, "a"}, {0, "a"}}), InputError);
    CHECK_THROWS_AS(build::complex({{0, "a"}, {1, "e", {"a"}}}), InputError);
    CHECK_THROWS_AS(build::complex({{0, "a"}, {1, "e", {"a", "zz"}}}), InputError);
    // d0 d1 must equal d0 d0 for a triangle; break it.
    CHECK_THROWS_AS(build::complex({{0, "a"},
                                    {0, "b"},
                                    {0, "c"},
                                    {1, "x", {"b", "a"}},
                                    {1, "y", {"c", "a"}},
                                    {1, "z", {"c", "b"}},
                                    {2, "t", {"z", "x", "y"}}}),
                    InputError);
    CHECK_NOTHROW(build::complex({{0, "a"},
                                  {0, "b"},
                                  {0, "c"},
                                  {1, "x", {"b", "a"}},
                                  {1, "y", {"c", "a"}},
                                  {1, "z", {"c", "b"}},
                                  {2, "t", {"z", "y", "x"}}}));
  }

  TEST_CASE("maps reject face mismatches") {
    auto d1 = standard_simplex(1);
    auto lp = build::loop();
    CHECK_NOTHROW(build::map(d1, lp, {{"0", "v"}, {"1", "v"}, {"01", "e"}}));
    CHECK_THROWS_AS(build::map(d1, d1, {{"0", "0"}, {"1", "0"}, {"01", "01"}}), InputError);
    CHECK_THROWS_AS(build::map(d1, lp, {{"0", "v"}, {"1", "v"}}), InputError);
  }

  TEST_CASE("enumerate_homs examples") {
    corpus::Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
      auto x = corpus::random_complex(rng, {2, 1, 4, 4});
      for (int k = 0; k <= x.max_dim(); ++k) CHECK(enumerate_homs(standard_simplex(k), x).size() == x.size(k));
      CHECK(enumerate_homs(boundary_complex(1), x).size() == x.size(0) * x.size(0));
    }
    auto homs = enumerate_homs(boundary_complex(2), boundary_complex(2));
    REQUIRE(homs.size() == 1);
    CHECK(homs[0] == SimplicialMap::identity(boundary_complex(2)));
  }

  TEST_CASE("enumerate_homs agrees with brute force and respects constraints") {
    corpus::Rng rng(12);
    for (int trial = 0; trial < 40; ++trial) {
      auto a = corpus::random_complex(rng, {2, 1, 3, 2}, "a");
      auto x = corpus::random_complex(rng, {2, 1, 3, 3}, "x");
      auto fast = enumerate_homs(a, x);
      auto slow = oracle::all_maps(a, x);
      REQUIRE(fast.size() == slow.size());
      std::set<std::map<std::string, std::string>> got;
      for (const auto& f : fast) got.insert(oracle::ids_of(f));
      CHECK(got == std::set<std::map<std::string, std::string>>(slow.begin(), slow.end()));
      if (!fast.empty()) {
        // Fixing the composite with a map out of the domain singles out the maps that agree there.
        HomConstraint c;
        c.pre.emplace(SimplicialMap::identity(a), fast.front());
        auto pinned = enumerate_homs(a, x, c);
        REQUIRE(pinned.size() == 1);
        CHECK(pinned[0] == fast.front());
      }
    }
  }

  TEST_CASE("coproduct examples") {
    std::vector<DeltaComplex> two_points{build::point(), build::point()};
    CHECK(coproduct(two_points).apex.size(0) == 2);
    CHECK(coproduct(std::vector<DeltaComplex>{}).apex.empty());
    std::vector<DeltaComplex> mixed{standard_simplex(1), boundary_complex(2)};
    auto sum = coproduct(mixed).apex;
    CHECK(sum.size(0) == 5);
    CHECK(sum.size(1) == 4);
    CHECK(sum.contains("1:01"));
  }

  TEST_CASE("pushout examples") {
    auto incl = SimplicialMap::inclusion(boundary_complex(1), standard_simplex(1));
    auto bigon = pushout(incl, incl);
    CHECK(bigon.apex.size(0) == 2);
    CHECK(bigon.apex.size(1) == 2);
    CHECK(bigon.apex.contains("01"));
    CHECK(bigon.apex.contains("01'"));

    auto collapse = build::map(boundary_complex(1), build::point(), {{"0", "0"}, {"1", "0"}});
    auto lp = pushout(incl, collapse);
    REQUIRE(lp.apex.size(0) == 1);
    REQUIRE(lp.apex.size(1) == 1);
    CHECK(lp.apex.face(1, 0, 0) == lp.apex.face(1, 0, 1));

    auto x = standard_simplex(1);
    auto y = boundary_complex(2);
    auto p = pushout(SimplicialMap::from_empty(x), SimplicialMap::from_empty(y));
    CHECK(p.apex.size(0) == 5);
    CHECK(p.apex.size(1) == 4);
  }

  TEST_CASE("pushouts agree with the union-find oracle") {
    corpus::Rng rng(13);
    for (int trial = 0; trial < 60; ++trial) {
      auto a = corpus::random_complex(rng, {1, 1, 3, 2}, "a");
      auto x = corpus::random_supercomplex(rng, a, 3, 2, "x");
      auto g = corpus::random_map_from(rng, a);
      auto f = rng.chance(50) ? SimplicialMap::inclusion(a, x) : compose(*corpus::random_map(rng, x, x), SimplicialMap::inclusion(a, x));
      auto ours = pushout(f, g);
      auto ref = oracle::colimit({a, x, g.cod()}, {{0, 1, f}, {0, 2, g}});
      CHECK(find_isomorphism(ours.apex, ref.apex).has_value());
      CHECK(compose(ours.from_x, f) == compose(ours.from_y, g));
      if (f.injective()) {
        CHECK(ours.from_y.injective());
        for (int k = 0; k <= g.cod().max_dim(); ++k) {
          for (const auto& id : g.cod().ids(k)) CHECK(ours.from_y.image(id) == id);
        }
      }
      // The mediating map out of the pushout into itself is the identity.
      CHECK(pushout_mediating(ours, ours.from_x, ours.from_y) == SimplicialMap::identity(ours.apex));
    }
  }

  TEST_CASE("general colimits match the oracle exactly") {
    corpus::Rng rng(14);
    for (int trial = 0; trial < 40; ++trial) {
      auto a = corpus::random_complex(rng, {1, 1, 3, 2}, "a");
      auto f1 = corpus::random_map_from(rng, a);
      auto f2 = corpus::random_map_from(rng, a);
      ComplexDiagram d{{a, f1.cod(), f2.cod()}, {{0, 1, f1}, {0, 2, f2}}};
      auto ours = colimit(d);
      auto ref = oracle::colimit(d.objects, {{0, 1, f1}, {0, 2, f2}});
      CHECK(ours.apex == ref.apex);
      for (std::size_t o = 0; o < 3; ++o) CHECK(oracle::ids_of(ours.legs[o]) == ref.legs[o]);
    }
  }

  TEST_CASE("mediating maps are unique and commute") {
    corpus::Rng rng(15);
    for (int trial = 0; trial < 30; ++trial) {
      auto a = corpus::random_complex(rng, {1, 1, 3, 2}, "a");
      auto f = corpus::random_map_from(rng, a);
      auto g = corpus::random_map_from(rng, a);
      auto p = pushout(f, g);
      auto t = corpus::random_map_from(rng, p.apex);
      auto x = compose(t, p.from_x);
      auto y = compose(t, p.from_y);
      CHECK(pushout_mediating(p, x, y) == t);
    }
    auto incl = SimplicialMap::inclusion(boundary_complex(1), standard_simplex(1));
    auto bigon = pushout(incl, incl);
    auto to_loop = build::map(standard_simplex(1), build::loop(), {{"0", "v"}, {"1", "v"}, {"01", "e"}});
    CHECK(pushout_mediating(bigon, to_loop, to_loop).image("01'") == "e");
    std::vector<DeltaComplex> pair{standard_simplex(1), standard_simplex(1)};
    auto apart = coproduct(pair);
    CHECK_THROWS_AS(pushout_mediating(bigon, apart.legs[0], apart.legs[1]), InputError);
  }

  TEST_CASE("coequaliser examples") {
    auto d1 = standard_simplex(1);
    auto id = SimplicialMap::identity(d1);
    CHECK(coequaliser(id, id).apex == d1);

    auto at0 = build::map(build::point(), d1, {{"0", "0"}});
    auto at1 = build::map(build::point(), d1, {{"0", "1"}});
    auto lp = coequaliser(at0, at1).apex;
    CHECK(lp.size(0) == 1);
    CHECK(lp.size(1) == 1);

    auto s0 = build::map(build::point(), boundary_complex(1), {{"0", "0"}});
    auto s1 = build::map(build::point(), boundary_complex(1), {{"0", "1"}});
    auto one = coequaliser(s0, s1).apex;
    CHECK(one.total_size() == 1);
    CHECK(one.contains("0"));
  }

  TEST_CASE("equaliser examples") {
    auto b1 = boundary_complex(1);
    auto id = SimplicialMap::identity(b1);
    CHECK(equaliser(id, id).apex == b1);
    auto swap = build::map(b1, b1, {{"0", "1"}, {"1", "0"}});
    CHECK(equaliser(id, swap).apex.empty());

    std::vector<DeltaComplex> two{build::point(), build::point()};
    auto x = coproduct(two).apex;
    auto y = b1;
    auto f = build::map(x, y, {{"0:0", "0"}, {"1:0", "0"}});
    auto g = build::map(x, y, {{"0:0", "0"}, {"1:0", "1"}});
    auto e = equaliser(f, g);
    CHECK(e.apex.total_size() == 1);
    CHECK(e.apex.contains("0:0"));
  }

  TEST_CASE("equalisers agree with the oracle") {
    corpus::Rng rng(16);
    for (int trial = 0; trial < 40; ++trial) {
      auto x = corpus::random_complex(rng, {2, 1, 4, 3});
      auto f = corpus::random_map_from(rng, x);
      auto g = corpus::random_map(rng, x, f.cod());
      REQUIRE(g.has_value());
      CHECK(equaliser(f, *g).apex == oracle::equaliser(f, *g));
    }
  }

  TEST_CASE("is_pullback examples") {
    auto d2 = standard_simplex(2);
    auto a = build::complex({{0, "0"}, {0, "1"}, {1, "01", {"1", "0"}}});
    auto b = build::complex({{0, "1"}, {0, "2"}, {1, "12", {"2", "1"}}});
    auto meet = build::complex({{0, "1"}});
    ArrowSquare sq{SimplicialMap::inclusion(meet, b), SimplicialMap::inclusion(a, d2), SimplicialMap::inclusion(meet, a),
                   SimplicialMap::inclusion(b, d2)};
    CHECK(is_pullback(sq));
    CHECK(oracle::is_pullback(sq));

    ArrowSquare empty_corner{SimplicialMap::from_empty(b), SimplicialMap::inclusion(a, d2), SimplicialMap::from_empty(a),
                             SimplicialMap::inclusion(b, d2)};
    CHECK_FALSE(is_pullback(empty_corner));
    CHECK_FALSE(oracle::is_pullback(empty_corner));

    ArrowSquare broken{SimplicialMap::inclusion(meet, b), SimplicialMap::inclusion(a, d2),
                       build::map(meet, a, {{"1", "0"}}), SimplicialMap::inclusion(b, d2)};
    CHECK_THROWS_AS(is_pullback(broken), InputError);
  }

  TEST_CASE("computed pullbacks are pullbacks; shrinking the corner breaks it") {
    corpus::Rng rng(17);
    for (int trial = 0; trial < 40; ++trial) {
      auto z = corpus::random_complex(rng, {2, 1, 3, 3}, "z");
      auto xs = corpus::random_complex(rng, {1, 1, 3, 2}, "x");
      auto ys = corpus::random_complex(rng, {1, 1, 3, 2}, "y");
      auto x = corpus::random_map(rng, xs, z);
      auto y = corpus::random_map(rng, ys, z);
      if (!x || !y) continue;
      auto pb = pullback(*x, *y);
      ArrowSquare square{pb.to_x, *y, pb.to_y, *x};
      CHECK(is_pullback(square));
      CHECK(oracle::is_pullback(square));
      if (pb.apex.size(0) > 0 && pb.apex.max_dim() == 0) {
        // Drop one vertex of the corner.
        std::vector<std::vector<bool>> keep{std::vector<bool>(pb.apex.size(0), true)};
        keep[0][0] = false;
        auto smaller = subcomplex(pb.apex, keep);
        auto incl = SimplicialMap::inclusion(smaller, pb.apex);
        ArrowSquare cut{compose(pb.to_x, incl), *y, compose(pb.to_y, incl), *x};
        CHECK_FALSE(is_pullback(cut));
        CHECK_FALSE(oracle::is_pullback(cut));
      }
    }
  }

  TEST_CASE("mec examples") {
    auto d1 = standard_simplex(1);
    auto x0 = build::complex({{0, "0"}});
    auto x1 = build::complex({{0, "0"}, {0, "1"}});
    Filtration filt{{x0, x1, d1}};
    CHECK(mec(SimplicialMap::from_empty(d1), filt) == 0);
    CHECK(mec(SimplicialMap::inclusion(x1, d1), filt) == 1);
    CHECK(mec(SimplicialMap::inclusion(x0, d1), filt) == 0);
    Filtration flat{{x1, x1, d1}};
    CHECK(mec(SimplicialMap::inclusion(x1, d1), flat) == 0);
    CHECK_THROWS_AS((Filtration{{x1, x0}}.validate()), InputError);
  }

  TEST_CASE("find_isomorphism agrees with brute force") {
    corpus::Rng rng(19);
    int isomorphic = 0;
    for (int trial = 0; trial < 80; ++trial) {
      auto x = corpus::random_complex(rng, {2, 1, 3, 3}, "x");
      auto y = trial % 2 == 0 ? corpus::random_complex(rng, {2, 1, 3, 3}, "y") : x;
      bool brute = false;
      if (x.max_dim() == y.max_dim()) {
        for (const auto& m : oracle::all_maps(x, y)) {
          std::set<std::string> hit;
          for (const auto& [from, to] : m) hit.insert(to);
          if (hit.size() == y.total_size() && m.size() == x.total_size()) brute = true;
        }
      }
      auto iso = find_isomorphism(x, y);
      CHECK(iso.has_value() == brute);
      if (iso) {
        ++isomorphic;
        CHECK(iso->bijective());
      }
    }
    CHECK(isomorphic > 40);
  }

  TEST_CASE("find_isomorphism handles many symmetric pieces") {
    DeltaComplexBuilder a;
    DeltaComplexBuilder b;
    for (int i = 0; i < 40; ++i) {
      const auto n = std::to_string(i);
      a.add(0, "p" + n).add(0, "q" + n).add(1, "e" + n, {"q" + n, "p" + n});
      b.add(0, "s" + n).add(0, "t" + n).add(1, "f" + n, {"s" + n, "t" + n});
    }
    a.add(0, "lone");
    b.add(0, "lone");
    CHECK(find_isomorphism(a.build(), b.build()).has_value());
    // One loop instead of one edge: same sizes, not isomorphic.
    b.add(1, "g", {"lone", "lone"});
    a.add(1, "g", {"lone", "p0"});
    CHECK_FALSE(find_isomorphism(a.build(), b.build()).has_value());
  }
}
