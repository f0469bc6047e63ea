#pragma once

#include <string>

#include "json.hpp"

#include "awfs/cell_complex.hpp"
#include "awfs/lifting.hpp"
#include "awfs/small_object.hpp"

// JSON forms of the library's values. Readers throw InputError naming the
// offending field; writers are deterministic (keys sorted, ids in order).
namespace awfs::io {

using json = nlohmann::json;

/// Parses text, turning syntax errors into InputError with line and column.
json parse(const std::string& text, const std::string& source);
json read_file(const std::string& path);
/// Two-space indented, trailing newline.
std::string dump(const json& value);

json to_json(const DeltaComplex& x);
DeltaComplex complex_from_json(const json& j);

json to_json(const SimplicialMap& f);
SimplicialMap map_from_json(const json& j);
/// Just the "assign" part: {"0": {"a": "x"}, ...}.
json assignment_json(const SimplicialMap& f);
SimplicialMap map_from_assignment(const DeltaComplex& dom, const DeltaComplex& cod, const json& assign);

json to_json(const Stratum& st);
Stratum stratum_from_json(const json& j);

/// {"base": ..., "strata": [{"cells": [...]}, ...]}; attaching maps name simplices
/// of the stage they are glued to.
json to_json(const StrataSequence& seq);
json to_json(const CellComplex& c);
StrataSequence sequence_from_json(const json& j);
CellComplex cell_complex_from_json(const json& j);

json to_json(const KCellKey& key);
json to_json(const FactorResult& fr);
FactorResult factor_result_from_json(const json& j);

json to_json(const LawReport& report);

json to_json(const GeneratingSquare& sq);
json to_json(const FillerTable& table);
FillerTable filler_table_from_json(const json& j);

/// {"top": map, "bottom": map}: a square out of U(c) into p.
json to_json(const ArrowSquare& sq);

}  // namespace awfs::io
