#pragma once

#include <vector>

#include "rcloop/lattice.hpp"
#include "rcloop/loopdecomp.hpp"
#include "rcloop/percolation.hpp"

namespace rcloop {

// Ambient disc D together with a non-self-crossing loop gamma in it.
struct ExplorationContext {
  DiscreteDisc D;
  std::vector<Pt> gamma;
  Subgraph gamma_region;  // [gamma]
  Subgraph outside;       // D \ [gamma]
};

// Throws PreconditionError when gamma is self-crossing or [gamma] is not
// contained in D.
ExplorationContext make_context(const DiscreteDisc& D, const std::vector<Pt>& gamma);

struct Exploration {
  ExplorationContext ctx;
  Subgraph R;
  Config state;  // supported on R
  // Loops of the decomposition reaching outside [gamma].
  std::vector<LevelledLoop> explored_loops;
};

// V(l+) = V(l); E(l+) = edges of D with an endpoint on l.
Subgraph l_plus(const std::vector<Pt>& l, const DiscreteDisc& D);

// Loops with at least one edge outside E([gamma]).
std::vector<LevelledLoop> loops_reaching_outside(const std::vector<LevelledLoop>& loops,
                                                 const ExplorationContext& ctx);
// (D \ [gamma]) united with l+ for the loops reaching outside.
Subgraph explored_region(const std::vector<LevelledLoop>& loops, const ExplorationContext& ctx);

Exploration explore_outside(const Config& k, const ExplorationContext& ctx);

bool is_admissible(const ExplorationContext& ctx, const Subgraph& R, const Config& state);

// Connected pieces of D \ R, each certified as a disc (InvariantError
// otherwise). Isolated vertices give single-vertex discs.
std::vector<DiscreteDisc> unexplored_discs(const Exploration& x);

}  // namespace rcloop
