#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "awfs/simplicial_map.hpp"

namespace awfs {

/// A finite diagram of delta complexes.
struct ComplexDiagram {
  struct Arrow {
    std::size_t src = 0;
    std::size_t dst = 0;
    SimplicialMap map;
  };
  std::vector<DeltaComplex> objects;
  std::vector<Arrow> arrows;
};

struct ComplexCocone {
  DeltaComplex apex;
  std::vector<SimplicialMap> legs;  // one per diagram object
};

/// Identifier of simplex `id` of diagram object `part` inside a colimit: "part:id".
std::string tagged_id(std::size_t part, const std::string& id);

/// Degreewise colimit. Each class of the generated equivalence is named by the
/// least tagged id of its members.
ComplexCocone colimit(const ComplexDiagram& diagram);

/// The map out of a colimit apex induced by a cocone with the given legs (one per
/// object, sharing a codomain). Throws InputError when the legs are not a cocone.
SimplicialMap mediating_map(const ComplexCocone& colimit, const std::vector<SimplicialMap>& legs);

/// Disjoint union with ids tagged by part index.
ComplexCocone coproduct(std::span<const DeltaComplex> parts);

struct PushoutResult {
  DeltaComplex apex;
  SimplicialMap from_x;  // X -> P
  SimplicialMap from_y;  // Y -> P
};

/// Pushout of f: A -> X and g: A -> Y.
///
/// Classes meeting Y are named by their least Y id; the remaining simplices of X
/// keep their ids unless those collide with a Y id, in which case primes are
/// appended. In particular ids of Y survive verbatim when f is injective.
PushoutResult pushout(const SimplicialMap& f, const SimplicialMap& g);

/// The map P -> T induced by x: X -> T and y: Y -> T.
SimplicialMap pushout_mediating(const PushoutResult& p, const SimplicialMap& x, const SimplicialMap& y);

struct QuotientResult {
  DeltaComplex apex;
  SimplicialMap quotient;  // Y -> Q
};

/// Coequaliser of f, g: X -> Y; each class is named by its least id.
QuotientResult coequaliser(const SimplicialMap& f, const SimplicialMap& g);

struct SubobjectResult {
  DeltaComplex apex;
  SimplicialMap inclusion;  // E -> X
};

/// The subcomplex of X on which f and g: X -> Y agree.
SubobjectResult equaliser(const SimplicialMap& f, const SimplicialMap& g);

struct PullbackResult {
  DeltaComplex apex;
  SimplicialMap to_x;  // P -> X
  SimplicialMap to_y;  // P -> Y
};

/// Degreewise pullback of the cospan x: X -> Z <- Y: y.
PullbackResult pullback(const SimplicialMap& x, const SimplicialMap& y);

/// Whether the corner of the square is (isomorphic over the cospan to) the pullback
/// of right and bottom. Throws InputError for a non-commuting square.
bool is_pullback(const ArrowSquare& square);

/// An increasing chain of complexes, each a literal subcomplex of the next.
struct Filtration {
  std::vector<DeltaComplex> stages;

  const DeltaComplex& top() const { return stages.back(); }
  /// Throws InputError unless consecutive stages are nested.
  void validate() const;
};

/// The smallest n such that the image of u lies in stage n (identifier containment).
int mec(const SimplicialMap& u, const Filtration& filtration);

}  // namespace awfs
