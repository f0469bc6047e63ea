#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "awfs/corpus.hpp"
#include "awfs/dot.hpp"
#include "awfs/error.hpp"
#include "awfs/json_io.hpp"
#include "awfs/lifting.hpp"
#include "awfs/small_object.hpp"

namespace {

using awfs::io::json;

enum Exit : int { ok = 0, internal = 1, input = 2, budget = 3, failure = 4 };

struct Config {
  int cap = awfs::kDefaultCap;
  std::string format = "text";
  std::uint64_t seed = 1;
  std::string out;
};

bool as_json(const Config& cfg) { return cfg.format == "json"; }

void write_file(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw awfs::InputError("cannot write '" + path + "'");
  file << text;
}

// Writes the document to --out when given, else to stdout if `print` is set.
void emit(const Config& cfg, const std::string& text, bool print) {
  if (!cfg.out.empty()) {
    write_file(cfg.out, text);
  } else if (print) {
    std::cout << text;
  }
}

std::string stage_summary(const std::vector<std::size_t>& counts) {
  std::string line;
  for (std::size_t n = 0; n < counts.size(); ++n) {
    line += "stage " + std::to_string(n) + ": " + std::to_string(counts[n]) + (counts[n] == 1 ? " cell; " : " cells; ");
  }
  return line + "height " + std::to_string(counts.size());
}

std::vector<std::size_t> stage_counts(const awfs::CellComplex& c) {
  std::vector<std::size_t> counts;
  for (const auto& st : c.strata()) counts.push_back(st.size());
  return counts;
}

void report_complex(const Config& cfg, const awfs::CellComplex& c) {
  const auto doc = awfs::io::dump(awfs::io::to_json(c));
  emit(cfg, doc, as_json(cfg));
  if (!as_json(cfg)) std::cout << stage_summary(stage_counts(c)) << "\n";
}

int cmd_factor(const Config& cfg, const std::string& path) {
  auto f = awfs::io::map_from_json(awfs::io::read_file(path));
  auto fr = awfs::free_complex(f, cfg.cap);
  const auto doc = awfs::io::dump(awfs::io::to_json(fr));
  emit(cfg, doc, as_json(cfg));
  if (!as_json(cfg)) std::cout << stage_summary(fr.stage_counts()) << "\n";
  return ok;
}

int cmd_compose(const Config& cfg, const std::string& first, const std::string& second) {
  auto a = awfs::io::cell_complex_from_json(awfs::io::read_file(first));
  auto b = awfs::io::cell_complex_from_json(awfs::io::read_file(second));
  report_complex(cfg, awfs::compose_complexes(a, b));
  return ok;
}

int cmd_normalize(const Config& cfg, const std::string& path) {
  auto seq = awfs::io::sequence_from_json(awfs::io::read_file(path));
  auto result = awfs::normalize(seq);
  report_complex(cfg, result.complex);
  if (!as_json(cfg)) {
    for (const auto& [id, move] : result.moves) {
      if (move.first == move.second) continue;
      std::cout << "moved " << id << ": stage " << move.first << " -> " << move.second << "\n";
    }
  }
  return ok;
}

int cmd_pushout(const Config& cfg, const std::string& complex_path, const std::string& map_path) {
  auto c = awfs::io::cell_complex_from_json(awfs::io::read_file(complex_path));
  auto g = awfs::io::map_from_json(awfs::io::read_file(map_path));
  if (!(g.dom() == c.base())) throw awfs::InputError(map_path + ": map does not start at the base of the complex");
  report_complex(cfg, awfs::pushforward_complex(c, g).complex);
  return ok;
}

// A square side given either as a full map or as a bare assignment.
awfs::SimplicialMap side_from_json(const json& j, const awfs::DeltaComplex& dom, const awfs::DeltaComplex& cod) {
  if (j.is_object() && j.contains("assign")) {
    auto m = awfs::io::map_from_json(j);
    if (!(m.dom() == dom) || !(m.cod() == cod)) throw awfs::InputError("map has the wrong domain or codomain");
    return m;
  }
  return awfs::io::map_from_assignment(dom, cod, j);
}

int cmd_lift(const Config& cfg, const std::string& complex_path, const std::string& table_path,
             const std::string& square_path) {
  auto c = awfs::io::cell_complex_from_json(awfs::io::read_file(complex_path));
  auto table = awfs::io::filler_table_from_json(awfs::io::read_file(table_path));
  auto sq = awfs::io::read_file(square_path);
  const auto& p = table.p();
  auto square = [&] {
    try {
      if (!sq.is_object() || !sq.contains("top") || !sq.contains("bottom")) {
        throw awfs::InputError("expected {\"top\": ..., \"bottom\": ...}");
      }
      awfs::ArrowSquare s{side_from_json(sq.at("top"), c.base(), p.dom()),
                          side_from_json(sq.at("bottom"), c.body(), p.cod()), awfs::u_of_complex(c), p};
      s.validate();
      return s;
    } catch (const awfs::InputError& e) {
      throw awfs::InputError(square_path + ": " + e.what());
    }
  }();
  try {
    auto d = awfs::solve_lifting(c, table, square);
    json doc{{"lift", awfs::io::to_json(d)}};
    emit(cfg, awfs::io::dump(doc), as_json(cfg));
    if (!as_json(cfg)) {
      std::cout << "lift found for " << c.cell_count() << (c.cell_count() == 1 ? " cell" : " cells") << "\n";
    }
    return ok;
  } catch (const awfs::LiftingFailure& e) {
    json witness{{"error", "lifting failure"}, {"message", e.what()}, {"cell", e.cell()},
                 {"square", awfs::io::to_json(e.square())}};
    if (e.filler()) witness["filler"] = *e.filler();
    std::cout << awfs::io::dump(witness);
    return failure;
  }
}

int cmd_check(const Config& cfg, const std::vector<std::string>& paths) {
  std::vector<awfs::corpus::Fixture> instances = awfs::corpus::fixtures();
  for (const auto& path : paths) instances.push_back({path, awfs::io::map_from_json(awfs::io::read_file(path))});
  std::vector<awfs::SimplicialMap> pool;
  for (const auto& inst : instances) pool.push_back(inst.map);

  awfs::corpus::Rng rng(cfg.seed);
  awfs::FreeFactorization factorization(cfg.cap);
  json reports = json::object();
  int code = ok;
  std::vector<std::string> lines;
  for (const auto& inst : instances) {
    auto squares = awfs::corpus::random_squares(rng, inst.map, pool, 5);
    auto report = factorization.check_laws(inst.map, squares);
    std::string line = inst.name + ": ";
    if (report.error) {
      line += "budget exceeded (" + *report.error + ")";
      code = budget;
    } else if (report.all_passed()) {
      line += "all " + std::to_string(report.checks.size()) + " laws hold";
    } else {
      line += "FAILED";
      for (const auto& c : report.checks) {
        if (!c.passed) line += " " + c.name;
      }
      if (code == ok) code = failure;
    }
    lines.push_back(line);
    reports[inst.name] = awfs::io::to_json(report);
  }
  json doc{{"seed", cfg.seed}, {"cap", cfg.cap}, {"reports", reports}};
  emit(cfg, awfs::io::dump(doc), as_json(cfg));
  if (!as_json(cfg)) {
    for (const auto& line : lines) std::cout << line << "\n";
    if (code == failure) {
      json failed = json::object();
      for (auto& [name, r] : reports.items()) {
        if (!r["all_passed"].get<bool>()) failed[name] = r;
      }
      std::cout << awfs::io::dump(failed);
    }
  }
  return code;
}

int cmd_export_dot(const Config& cfg, const std::string& path) {
  auto j = awfs::io::read_file(path);
  awfs::CellComplex c;
  if (j.is_object() && j.contains("complex")) {
    c = awfs::io::factor_result_from_json(j).kf;
  } else {
    c = awfs::io::cell_complex_from_json(j);
  }
  emit(cfg, awfs::export_dot(c), true);
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cell complexes over delta complexes and the free factorization of their maps"};
  app.require_subcommand(1);
  app.fallthrough();
  Config cfg;
  app.add_option("--cap", cfg.cap, "Maximum number of strata in a free factorization")
      ->check(CLI::Range(1, std::numeric_limits<int>::max()));
  app.add_option("--format", cfg.format, "Report format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", cfg.seed, "Seed for generated naturality squares");
  app.add_option("--out", cfg.out, "Write the JSON (or DOT) document to this file");

  std::string a, b, c;
  std::vector<std::string> maps;
  auto* factor = app.add_subcommand("factor", "Free factorization of a map");
  factor->add_option("map", a, "Map JSON")->required();
  auto* compose = app.add_subcommand("compose", "Composite of two cell complexes");
  compose->add_option("first", a, "Cell complex JSON")->required();
  compose->add_option("second", b, "Cell complex JSON on the body of the first")->required();
  auto* normalize = app.add_subcommand("normalize", "Proper form of a connected sequence of strata");
  normalize->add_option("sequence", a, "Sequence JSON")->required();
  auto* pushout = app.add_subcommand("pushout", "Pushforward of a cell complex along a map out of its base");
  pushout->add_option("complex", a, "Cell complex JSON")->required();
  pushout->add_option("map", b, "Map JSON")->required();
  auto* lift = app.add_subcommand("lift", "Solve a lifting problem against a filler table");
  lift->add_option("complex", a, "Cell complex JSON")->required();
  lift->add_option("table", b, "Filler table JSON")->required();
  lift->add_option("square", c, "Square JSON {top, bottom}")->required();
  auto* check = app.add_subcommand("check", "Run the law suite on the built-in fixtures and the given maps");
  check->add_option("maps", maps, "Extra map JSON files");
  auto* dot = app.add_subcommand("export-dot", "Graphviz view of a cell complex or factor result");
  dot->add_option("file", a, "Cell complex or factor result JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : input;
  }

  try {
    if (factor->parsed()) return cmd_factor(cfg, a);
    if (compose->parsed()) return cmd_compose(cfg, a, b);
    if (normalize->parsed()) return cmd_normalize(cfg, a);
    if (pushout->parsed()) return cmd_pushout(cfg, a, b);
    if (lift->parsed()) return cmd_lift(cfg, a, b, c);
    if (check->parsed()) return cmd_check(cfg, maps);
    if (dot->parsed()) return cmd_export_dot(cfg, a);
  } catch (const awfs::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return input;
  } catch (const awfs::CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return budget;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return internal;
  }
  return internal;
}
