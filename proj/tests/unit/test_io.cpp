#include "doctest.h"

#include <regex>

#include "awfs/corpus.hpp"
#include "awfs/dot.hpp"
#include "awfs/error.hpp"
#include "awfs/json_io.hpp"
#include "build.hpp"

using namespace awfs;
namespace io = awfs::io;

namespace {

std::size_t count_matches(const std::string& text, const std::string& pattern) {
  std::regex re(pattern);
  return static_cast<std::size_t>(std::distance(std::sregex_iterator(text.begin(), text.end(), re), std::sregex_iterator()));
}

std::size_t node_count(const std::string& dot) { return count_matches(dot, R"(\n  "[^"]*" \[fillcolor)"); }
std::size_t edge_count(const std::string& dot) { return count_matches(dot, " -> "); }

// Reparse through text so that nothing survives by object identity.
io::json through_text(const io::json& j) { return io::parse(io::dump(j), "test"); }

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("complex and map round trips") {
    corpus::Rng rng(71);
    for (int trial = 0; trial < 40; ++trial) {
      auto x = corpus::random_complex(rng, {3, 0, 4, 4});
      CHECK(io::complex_from_json(through_text(io::to_json(x))) == x);
      auto f = corpus::random_map_from(rng, x);
      CHECK(io::map_from_json(through_text(io::to_json(f))) == f);
      CHECK(io::dump(io::to_json(io::map_from_json(io::to_json(f)))) == io::dump(io::to_json(f)));
    }
  }

  TEST_CASE("vertices may be plain strings") {
    auto j = io::parse(R"({"simplices": {"0": ["a", "b"], "1": [{"id": "e", "faces": ["b", "a"]}]}})", "inline");
    auto x = io::complex_from_json(j);
    CHECK(x.size(0) == 2);
    CHECK(x.face_ids(1, 0) == std::vector<std::string>{"b", "a"});
  }

  TEST_CASE("complex, sequence and factor result round trips") {
    corpus::Rng rng(72);
    for (int trial = 0; trial < 30; ++trial) {
      auto seq = corpus::random_sequence(rng, corpus::CellShape{});
      auto back = io::sequence_from_json(through_text(io::to_json(seq)));
      CHECK(back.base == seq.base);
      CHECK(back.strata == seq.strata);
      auto c = normalize(seq).complex;
      CHECK(io::cell_complex_from_json(through_text(io::to_json(c))) == c);
      auto st = c.strata().empty() ? Stratum(c.base()) : c.strata().front();
      CHECK(io::stratum_from_json(through_text(io::to_json(st))) == st);
    }
    for (const auto& fx : corpus::fixtures()) {
      auto fr = free_complex(fx.map);
      auto back = io::factor_result_from_json(through_text(io::to_json(fr)));
      CHECK(back.kf == fr.kf);
      CHECK(back.ef == fr.ef);
      CHECK(back.cell_of_key == fr.cell_of_key);
      CHECK(io::dump(io::to_json(back)) == io::dump(io::to_json(fr)));
    }
  }

  TEST_CASE("filler table round trip") {
    auto fr = free_complex(corpus::fixture("boundary_1"));
    auto table = free_fillers(fr);
    auto back = io::filler_table_from_json(through_text(io::to_json(table)));
    CHECK(back.p() == table.p());
    CHECK(back.entries() == table.entries());
    CHECK(back.fallback() == table.fallback());
  }

  TEST_CASE("partial attach values determine the attaching map") {
    auto j = io::parse(R"({"boundary": {"simplices": {"0": ["v"]}},
                          "cells": [{"id": "e", "dim": 1, "attach": {"0": "v", "1": "v"}}]})",
                       "inline");
    auto st = io::stratum_from_json(j);
    CHECK(st.body().size(1) == 1);
  }

  TEST_CASE("errors name the problem") {
    try {
      io::parse("{\n  \"a\": 1\n  \"b\": 2\n}", "doc.json");
      FAIL("expected a parse error");
    } catch (const InputError& e) {
      std::string what = e.what();
      CHECK(what.find("doc.json") != std::string::npos);
      CHECK(what.find("line 3") != std::string::npos);
    }
    CHECK_THROWS_WITH_AS(io::map_from_json(io::parse(R"({"dom": {"simplices": {}}})", "x")),
                         doctest::Contains("missing field 'cod'"), InputError);
    CHECK_THROWS_AS(io::complex_from_json(io::parse(R"({"simplices": {"x": []}})", "x")), InputError);
    CHECK_THROWS_AS(io::read_file("/nonexistent/file.json"), InputError);
    CHECK_THROWS_AS(io::filler_table_from_json(io::parse(
                        R"({"p": {"dom": {"simplices": {}}, "cod": {"simplices": {}}, "assign": {}},
                            "entries": [], "fallback": "guess"})",
                        "x")),
                    InputError);
  }

  TEST_CASE("dot export examples") {
    auto trivial = export_dot(CellComplex::trivial(standard_simplex(1)));
    CHECK(node_count(trivial) == 2);
    CHECK(edge_count(trivial) == 1);
    CHECK(count_matches(trivial, "#d9d9d9") == 4);

    auto fr = free_complex(corpus::fixture("boundary_1"));
    auto free = export_dot(fr.kf);
    CHECK(node_count(free) == 4);
    CHECK(edge_count(free) == 4);
    CHECK(free.find("// base") != std::string::npos);
    CHECK(free.find("// stratum 0") != std::string::npos);
    CHECK(free.find("// stratum 1") != std::string::npos);
    CHECK(export_dot(fr.kf) == free);

    auto empty = export_dot(CellComplex::trivial(DeltaComplex{}));
    CHECK(empty == "digraph complex {\n}\n");
  }

  TEST_CASE("dot quotes awkward ids") {
    auto x = build::complex({{0, "a\"b"}, {0, "c\\d"}, {1, "e", {"a\"b", "c\\d"}}});
    auto dot = export_dot(CellComplex::trivial(x));
    CHECK(dot.find(R"("a\"b")") != std::string::npos);
    CHECK(dot.find(R"("c\\d" -> "a\"b")") != std::string::npos);
  }
}
