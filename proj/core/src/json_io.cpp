#include "awfs/json_io.hpp"

#include <fstream>
#include <sstream>

#include "awfs/error.hpp"
#include "awfs/hom_search.hpp"

namespace awfs::io {

namespace {

// Runs `body`, prefixing any failure with the field being read.
template <typename F>
auto reading(const std::string& what, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const InputError& e) {
    throw InputError(what + ": " + e.what());
  } catch (const json::exception& e) {
    throw InputError(what + ": " + e.what());
  }
}

const json& field(const json& j, const char* name) {
  if (!j.is_object()) throw InputError("expected an object");
  auto it = j.find(name);
  if (it == j.end()) throw InputError(std::string("missing field '") + name + "'");
  return *it;
}

int dim_key(const std::string& key) {
  std::size_t used = 0;
  int k = -1;
  try {
    k = std::stoi(key, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != key.size() || k < 0) throw InputError("'" + key + "' is not a dimension");
  return k;
}

std::string facet_key(int k, int i) { return facet_name(k, i); }

}  // namespace

json parse(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // nlohmann reports "... at line L, column C: ..."
    throw InputError(source + ": " + e.what());
  }
}

json read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), path);
}

std::string dump(const json& value) { return value.dump(2) + "\n"; }

json to_json(const DeltaComplex& x) {
  json simplices = json::object();
  for (int k = 0; k <= x.max_dim(); ++k) {
    json level = json::array();
    for (std::uint32_t i = 0; i < x.size(k); ++i) {
      if (k == 0) {
        level.push_back(x.id(k, i));
      } else {
        level.push_back({{"id", x.id(k, i)}, {"faces", x.face_ids(k, i)}});
      }
    }
    simplices[std::to_string(k)] = std::move(level);
  }
  return {{"simplices", std::move(simplices)}};
}

DeltaComplex complex_from_json(const json& j) {
  return reading("complex", [&] {
    DeltaComplexBuilder builder;
    const auto& simplices = field(j, "simplices");
    if (!simplices.is_object()) throw InputError("'simplices' must be an object");
    for (const auto& [key, level] : simplices.items()) {
      const int k = dim_key(key);
      if (!level.is_array()) throw InputError("simplices of dimension " + key + " must be an array");
      for (const auto& s : level) {
        if (s.is_string()) {
          builder.add(k, s.get<std::string>());
        } else {
          auto faces = s.contains("faces") ? s.at("faces").get<std::vector<std::string>>() : std::vector<std::string>{};
          builder.add(k, field(s, "id").get<std::string>(), std::move(faces));
        }
      }
    }
    return builder.build();
  });
}

json assignment_json(const SimplicialMap& f) {
  json assign = json::object();
  const auto& dom = f.dom();
  for (int k = 0; k <= dom.max_dim(); ++k) {
    json level = json::object();
    for (std::uint32_t i = 0; i < dom.size(k); ++i) level[dom.id(k, i)] = f.cod().id(k, f.at(k, i));
    assign[std::to_string(k)] = std::move(level);
  }
  return assign;
}

SimplicialMap map_from_assignment(const DeltaComplex& dom, const DeltaComplex& cod, const json& assign) {
  return reading("assign", [&] {
    if (!assign.is_object()) throw InputError("expected an object keyed by dimension");
    IdAssignment ids;
    for (const auto& [key, level] : assign.items()) {
      const int k = dim_key(key);
      for (const auto& [from, to] : level.items()) {
        auto r = dom.find(from);
        if (!r || r->dim != k) throw InputError("'" + from + "' is not a " + key + "-simplex of the domain");
        if (!ids.emplace(from, to.get<std::string>()).second) throw InputError("'" + from + "' is assigned twice");
      }
    }
    return SimplicialMap::from_ids(dom, cod, ids);
  });
}

json to_json(const SimplicialMap& f) {
  return {{"dom", to_json(f.dom())}, {"cod", to_json(f.cod())}, {"assign", assignment_json(f)}};
}

SimplicialMap map_from_json(const json& j) {
  return reading("map", [&] {
    auto dom = reading("dom", [&] { return complex_from_json(field(j, "dom")); });
    auto cod = reading("cod", [&] { return complex_from_json(field(j, "cod")); });
    return map_from_assignment(dom, cod, field(j, "assign"));
  });
}

namespace {

json cell_json(const Cell& c) {
  json attach = json::object();
  const auto& shape = c.attach.dom();
  for (int k = 0; k <= shape.max_dim(); ++k) {
    for (std::uint32_t i = 0; i < shape.size(k); ++i) attach[shape.id(k, i)] = c.attach.cod().id(k, c.attach.at(k, i));
  }
  return {{"id", c.id}, {"dim", c.dim}, {"attach", std::move(attach)}};
}

// The attaching map may be given on any part of ∂Δ^k that pins it down.
Cell cell_from_json(const json& j, const DeltaComplex& boundary) {
  auto id = field(j, "id").get<std::string>();
  return reading("cell '" + id + "'", [&] {
    const int k = field(j, "dim").get<int>();
    if (k < 0) throw InputError("negative dimension");
    const auto shape = boundary_complex(k);
    Assignment fixed(static_cast<std::size_t>(shape.max_dim() + 1));
    for (int m = 0; m <= shape.max_dim(); ++m) fixed[static_cast<std::size_t>(m)].assign(shape.size(m), UINT32_MAX);
    const json empty = json::object();
    const auto& attach = j.contains("attach") ? j.at("attach") : empty;
    for (const auto& [name, target] : attach.items()) {
      auto from = shape.find(name);
      if (!from) throw InputError("'" + name + "' is not a simplex of the boundary of Δ^" + std::to_string(k));
      auto to = boundary.find(target.get<std::string>());
      if (!to || to->dim != from->dim) {
        throw InputError("'" + target.get<std::string>() + "' is not a " + std::to_string(from->dim) +
                         "-simplex of the stage");
      }
      fixed[static_cast<std::size_t>(from->dim)][from->index] = to->index;
    }
    std::optional<SimplicialMap> found;
    int count = 0;
    HomSearch(boundary).for_each(shape, &fixed, nullptr, [&](const Assignment& a) {
      if (++count == 1) found.emplace(shape, boundary, a);
      return count < 2;
    });
    if (count == 0) throw InputError("no attaching map matches the given values");
    if (count > 1) throw InputError("attaching map is not determined by the given values");
    return Cell{id, k, *found};
  });
}

json cells_json(const Stratum& st) {
  json cells = json::array();
  for (const auto& c : st.cells()) cells.push_back(cell_json(c));
  return cells;
}

std::vector<Cell> cells_from_json(const json& j, const DeltaComplex& boundary) {
  std::vector<Cell> out;
  const auto& cells = field(j, "cells");
  if (!cells.is_array()) throw InputError("'cells' must be an array");
  for (const auto& c : cells) out.push_back(cell_from_json(c, boundary));
  return out;
}

}  // namespace

json to_json(const Stratum& st) { return {{"boundary", to_json(st.boundary())}, {"cells", cells_json(st)}}; }

Stratum stratum_from_json(const json& j) {
  return reading("stratum", [&] {
    auto boundary = reading("boundary", [&] { return complex_from_json(field(j, "boundary")); });
    return Stratum(boundary, cells_from_json(j, boundary));
  });
}

json to_json(const StrataSequence& seq) {
  json strata = json::array();
  for (const auto& st : seq.strata) strata.push_back({{"cells", cells_json(st)}});
  return {{"base", to_json(seq.base)}, {"strata", std::move(strata)}};
}

json to_json(const CellComplex& c) { return to_json(c.sequence()); }

StrataSequence sequence_from_json(const json& j) {
  return reading("cell complex", [&] {
    StrataSequence seq;
    seq.base = reading("base", [&] { return complex_from_json(field(j, "base")); });
    const auto& strata = field(j, "strata");
    if (!strata.is_array()) throw InputError("'strata' must be an array");
    DeltaComplex current = seq.base;
    for (std::size_t n = 0; n < strata.size(); ++n) {
      reading("strata[" + std::to_string(n) + "]", [&] {
        seq.strata.emplace_back(current, cells_from_json(strata[n], current));
        current = seq.strata.back().body();
        return 0;
      });
    }
    return seq;
  });
}

CellComplex cell_complex_from_json(const json& j) {
  auto seq = sequence_from_json(j);
  return reading("cell complex", [&] { return CellComplex(seq.base, seq.strata); });
}

json to_json(const KCellKey& key) {
  return {{"stage", key.stage}, {"dim", key.dim}, {"target", key.target}, {"boundary", key.boundary}};
}

json to_json(const FactorResult& fr) {
  json keys = json::array();
  for (const auto& [key, id] : fr.cell_of_key) {
    auto entry = to_json(key);
    entry["cell"] = id;
    keys.push_back(std::move(entry));
  }
  return {{"input", to_json(fr.input)},
          {"complex", to_json(fr.kf)},
          {"ef", assignment_json(fr.ef)},
          {"stage_cell_counts", fr.stage_counts()},
          {"keys", std::move(keys)}};
}

FactorResult factor_result_from_json(const json& j) {
  return reading("factor result", [&] {
    auto input = reading("input", [&] { return map_from_json(field(j, "input")); });
    auto kf = cell_complex_from_json(field(j, "complex"));
    if (!(kf.base() == input.dom())) throw InputError("complex does not start at the domain of the input");
    auto ef = reading("ef", [&] { return map_from_assignment(kf.body(), input.cod(), field(j, "ef")); });
    if (!(compose(ef, u_of_complex(kf)) == input)) throw InputError("ef does not factor the input");
    FactorResult fr{input, kf, ef, {}, {}, {}};
    for (const auto& stage : kf.filtration().stages) fr.stage_maps.push_back(ef.restrict_to(stage));
    for (const auto& entry : field(j, "keys")) {
      KCellKey key{field(entry, "stage").get<int>(), field(entry, "dim").get<int>(),
                   field(entry, "target").get<std::string>(),
                   field(entry, "boundary").get<std::vector<std::string>>()};
      auto id = field(entry, "cell").get<std::string>();
      if (!kf.find_cell(id)) throw InputError("key names unknown cell '" + id + "'");
      fr.cell_of_key.emplace(key, id);
      fr.key_of_cell.emplace(id, key);
    }
    return fr;
  });
}

json to_json(const LawReport& report) {
  json laws = json::object();
  json witnesses = json::object();
  for (const auto& c : report.checks) {
    laws[c.name] = c.ran ? json(c.passed) : json(nullptr);
    if (c.witness) witnesses[c.name] = {{"lhs", to_json(c.witness->first)}, {"rhs", to_json(c.witness->second)}};
  }
  json out{{"input", to_json(report.input)},
           {"laws", std::move(laws)},
           {"witnesses", std::move(witnesses)},
           {"all_passed", report.all_passed()}};
  if (report.error) out["error"] = *report.error;
  return out;
}

json to_json(const GeneratingSquare& sq) {
  json boundary = json::object();
  for (std::size_t i = 0; i < sq.boundary.size(); ++i) boundary[facet_key(sq.dim, static_cast<int>(i))] = sq.boundary[i];
  return {{"dim", sq.dim}, {"boundary", std::move(boundary)}, {"target", sq.target}};
}

json to_json(const FillerTable& table) {
  json entries = json::array();
  for (const auto& [sq, filler] : table.entries()) {
    auto entry = to_json(sq);
    entry["filler"] = filler;
    entries.push_back(std::move(entry));
  }
  return {{"p", to_json(table.p())},
          {"entries", std::move(entries)},
          {"fallback", table.fallback() == FillerTable::Fallback::search ? "search" : "fail"}};
}

FillerTable filler_table_from_json(const json& j) {
  return reading("filler table", [&] {
    auto p = reading("p", [&] { return map_from_json(field(j, "p")); });
    std::map<GeneratingSquare, std::string> entries;
    const auto& list = field(j, "entries");
    for (std::size_t n = 0; n < list.size(); ++n) {
      reading("entries[" + std::to_string(n) + "]", [&] {
        const auto& e = list[n];
        GeneratingSquare sq{field(e, "dim").get<int>(), {}, field(e, "target").get<std::string>()};
        if (sq.dim > 0) {
          const auto& boundary = field(e, "boundary");
          for (int i = 0; i <= sq.dim; ++i) sq.boundary.push_back(field(boundary, facet_key(sq.dim, i).c_str()).get<std::string>());
        }
        if (!entries.emplace(sq, field(e, "filler").get<std::string>()).second) throw InputError("duplicate square");
        return 0;
      });
    }
    auto fallback = j.contains("fallback") ? j.at("fallback").get<std::string>() : std::string("search");
    if (fallback != "search" && fallback != "fail") throw InputError("fallback must be \"search\" or \"fail\"");
    return FillerTable(p, std::move(entries), fallback == "search" ? FillerTable::Fallback::search : FillerTable::Fallback::fail);
  });
}

json to_json(const ArrowSquare& sq) {
  return {{"top", to_json(sq.top)}, {"bottom", to_json(sq.bottom)}, {"left", to_json(sq.left)}, {"right", to_json(sq.right)}};
}

}  // namespace awfs::io
