#pragma once

#include <cstddef>
#include <optional>

#include "awfs/detail/quotient.hpp"
#include "awfs/strata.hpp"

namespace awfs::detail {

/// Colimit engine behind strata_colimit and strata_coequaliser. Boundary classes
/// are named by `namer`; cell classes by the least id from `preferred` when
/// given, else by the least tagged id.
StrataCocone glue_strata(const StrataDiagram& diagram, const ClassNamer& namer,
                         std::optional<std::size_t> preferred);

}  // namespace awfs::detail
