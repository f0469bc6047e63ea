#pragma once

#include <string>

#include "awfs/cell_complex.hpp"

namespace awfs {

/// Graphviz digraph of the vertices and edges of the body (edge d_1 -> d_0),
/// coloured by the stage at which each simplex was glued (base = stage 0).
/// Higher simplices are only counted, in a comment.
std::string export_dot(const CellComplex& c);

}  // namespace awfs
