#pragma once

#include <utility>
#include <vector>

#include "rcloop/annuli.hpp"
#include "rcloop/frechet.hpp"
#include "rcloop/lattice.hpp"
#include "rcloop/loopdecomp.hpp"

namespace rcloop {

// Closed polygonal loop in physical coordinates, no repeated closing point.
using PolyLoop = std::vector<P2>;
using LoopCollection = std::vector<PolyLoop>;

PolyLoop to_physical(const GridGeometry& g, const std::vector<Pt>& walk);
LoopCollection to_collection(const LoopDecomposition& d);

double loop_diameter(const PolyLoop& l);
// Cyclic discrete Frechet distance, orientation preserving. Throws
// PreconditionError on empty input.
double loop_distance(const PolyLoop& a, const PolyLoop& b);

struct Matching {
  std::vector<std::pair<int, int>> pairs;
};

struct CollectionDistance {
  double value = 0;
  Matching matching;  // an optimal matching
};

// min over matchings of max(matched loop distances, half diameters of the
// unmatched loops), solved exactly as a bottleneck assignment with dummy
// "unmatched" nodes.
CollectionDistance collection_distance_full(const LoopCollection& a, const LoopCollection& b);
double collection_distance(const LoopCollection& a, const LoopCollection& b);

// Loops pairwise disjoint, simple, strictly inside the domain rectangle and
// clockwise exactly at odd levels (level = 1 + number of loops around).
// Loops must have axis-parallel edges.
bool is_smpl(const LoopCollection& L, const Rect& domain);
int level_in(const LoopCollection& L, std::size_t i);

// bit(A) = 1 iff a single loop crosses A.
CrossingFingerprint F_fingerprint(const GridGeometry& g, const std::vector<std::vector<Pt>>& loops,
                                  const DyadicFamily& fam, int k_max = kDefaultKMax);
CrossingFingerprint F_fingerprint(const LoopDecomposition& d, int k, int k_max = kDefaultKMax);
// bit(A) = 1 iff a single loop separates the boundaries of A.
CrossingFingerprint separation_fingerprint(const GridGeometry& g, const std::vector<std::vector<Pt>>& loops,
                                           const DyadicFamily& fam, int k_max = kDefaultKMax);

std::size_t hamming(const CrossingFingerprint& a, const CrossingFingerprint& b);

}  // namespace rcloop
