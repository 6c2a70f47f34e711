#pragma once

#include <optional>
#include <vector>

#include "rcloop/lattice.hpp"
#include "rcloop/percolation.hpp"

namespace rcloop {

struct LevelledLoop {
  std::vector<Pt> pts;  // open walk, doubled coordinates
  int level = 0;
  Orientation orientation = Orientation::undefined;
};

struct PeelResult {
  // levels[i-1] holds the loops peeled at level i, in peeling order.
  std::vector<std::vector<LevelledLoop>> levels;
  // residual[i] is the configuration after levels 1..i were removed;
  // residual[0] is the input.
  std::vector<Config> residual;
};

struct LoopDecomposition {
  std::vector<LevelledLoop> loops;
  Config source_config;
  int N = 0;
  PeelResult peeled;
  // For loops[j]: the peeled loop the chain started from and whether it was
  // certified outmost by a surrounding dual circuit.
  std::vector<LevelledLoop> seeds;
  std::vector<bool> seed_outmost;
  // Level loops absorbed after the first pass of a level (see README).
  int late_absorptions = 0;
};

// Peels levels from a configuration that is sourceless relative to K.
// Throws PreconditionError on sources or open edges outside E(K).
PeelResult peel_levels(const Config& k, const DiscreteDisc& K);

// l (+) l2 starting from `start`; throws PreconditionError when no shared
// vertex satisfies the straight-line condition or start is not on l.
std::vector<Pt> concatenate(const std::vector<Pt>& l, const std::vector<Pt>& l2, Pt start);

LoopDecomposition decompose(const Config& k, const DiscreteDisc& K);

// Simple dual circuit in the dual configuration that surrounds l, built from
// the faces outside l touching V(l); nullopt when none is found that way.
std::optional<std::vector<Pt>> surrounding_circuit(const std::vector<Pt>& l, const Config& k,
                                                   const DiscreteDisc& K);

// Connected components of the open edges as sorted edge-id lists, sorted by
// first id. Throws PreconditionError on an odd-degree vertex.
std::vector<std::vector<int>> component_oracle(const Config& k);

// Edge ids traversed by a walk in geometry g.
std::vector<int> walk_edge_ids(const GridGeometry& g, const std::vector<Pt>& walk);

}  // namespace rcloop
