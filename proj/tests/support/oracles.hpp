#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "awfs/cell_complex.hpp"
#include "awfs/small_object.hpp"

// Brute-force reference implementations. They only use the accessors of
// DeltaComplex and SimplicialMap and share no code with the library algorithms.
namespace oracle {

using awfs::CellComplex;
using awfs::DeltaComplex;
using awfs::SimplicialMap;

/// Every simplicial map dom -> cod: all vertex assignments, then each higher
/// simplex tried against every simplex of the codomain.
std::vector<std::map<std::string, std::string>> all_maps(const DeltaComplex& dom, const DeltaComplex& cod);

/// Ids of all simplices in the image of a map, faces included.
std::vector<std::string> image_ids(const SimplicialMap& u);

/// Free factorization by exhaustive square enumeration, stage by stage.
struct FreeStages {
  std::vector<std::multiset<int>> cell_dims;  // per stratum
  std::vector<std::size_t> body_sizes;        // per dimension
  DeltaComplex body;
  std::map<std::string, std::string> ef;      // body id -> codomain id
};
FreeStages free_stages(const SimplicialMap& f, int max_stages = 16);

/// Colimit of a finite diagram by label propagation. Classes are named by the
/// least "part:id", or by the least id from object `preferred` when they meet it.
struct Colimit {
  DeltaComplex apex;
  std::vector<std::map<std::string, std::string>> legs;
};
struct Arrow {
  std::size_t src;
  std::size_t dst;
  SimplicialMap map;
};
Colimit colimit(const std::vector<DeltaComplex>& objects, const std::vector<Arrow>& arrows,
                std::optional<std::size_t> preferred = std::nullopt);

/// Ids of dom simplices on which f and g agree.
DeltaComplex equaliser(const SimplicialMap& f, const SimplicialMap& g);

/// The square's corner maps bijectively onto matching pairs in every dimension.
bool is_pullback(const awfs::ArrowSquare& square);

/// Reassigns every cell to the stage of the latest simplex in its attaching image.
CellComplex mec_partition(const awfs::StrataSequence& seq);

/// Every morphism c -> Kf whose underlying square composed with (1, Ef) is `square`.
std::size_t count_transposes(const CellComplex& c, const awfs::ArrowSquare& square, const awfs::FactorResult& fr);

/// Map equality by ids.
std::map<std::string, std::string> ids_of(const SimplicialMap& f);

}  // namespace oracle
