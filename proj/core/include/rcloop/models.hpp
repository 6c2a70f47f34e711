#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <vector>

#include "rcloop/lattice.hpp"
#include "rcloop/loopdecomp.hpp"
#include "rcloop/percolation.hpp"

namespace rcloop {

struct CriticalConstants {
  double beta_c, tanh_beta_c, t_c, t_star;
};
CriticalConstants critical_constants();

// Exact law over configurations on a fixed support; keys are bit masks over
// `edges` (position j <-> edge id edges[j]).
struct EdgeLaw {
  Subgraph support;
  std::vector<int> edges;
  std::map<std::uint64_t, double> p;
  // Per-edge truncation mass bound (current_trace only).
  double truncation_bound = 0;

  std::uint64_t mask_of(const Config& c) const;
  Config config_of(std::uint64_t mask) const;
  double prob(const Config& c) const;
};

double total_variation(const EdgeLaw& a, const EdgeLaw& b);

// Weight of a sourceless configuration; default is the product of tanh(beta_c)
// over open edges.
using ConfigWeight = std::function<double(const Config&)>;
ConfigWeight tanh_weight(double x);

enum class ModelKind { ising_plus, ht_expansion, current_trace };

struct LawOptions {
  double beta = 0;  // 0 means beta_c
  int n_max = 8;    // current truncation
  ConfigWeight weight;  // ht_expansion only; empty = tanh(beta)^|eta|
  std::uint64_t max_states = std::uint64_t{1} << 24;
};

// ising_plus: pushforward of the + boundary Ising law on the dual disc under
// the interface map. ht_expansion: sourceless law with weight w. current_trace:
// trace of truncated sourceless currents. Throws CapacityError beyond
// max_states.
EdgeLaw enumerate_law(ModelKind kind, const DiscreteDisc& D, const LawOptions& opt = {});

// Law of overlay(eta, Bernoulli(t)) for eta ~ law, by exact convolution.
EdgeLaw convolve_bernoulli(const EdgeLaw& law, double t);

// Enumerates the sourceless configurations on `support` (cycle space).
std::vector<Config> sourceless_configs(const Subgraph& support, std::uint64_t max_states = std::uint64_t{1} << 24);

// Spins per face id of the window: +1/-1 on K*, 0 elsewhere.
struct IsingState {
  std::shared_ptr<const DiscreteDisc> D;
  std::vector<std::int8_t> spin;
};

IsingState all_plus(std::shared_ptr<const DiscreteDisc> D);
Config interface_of(const IsingState& s);
// The unique state with + boundary whose interface is eta (sourceless on D).
IsingState spins_from_interface(std::shared_ptr<const DiscreteDisc> D, const Config& eta);

struct WolffOptions {
  double beta = 0;         // 0 means beta_c
  double burn_in = -1;     // sweeps; < 0 means ceil(20 L^0.25)
  double sweeps = 1;       // sweeps between returned samples
};

// Wolff cluster chain at beta with the boundary merged into one ghost spin;
// states with a - ghost are flipped globally on output. One sweep is a fixed
// number of cluster updates, ceil(sites / min(sites, L^1.75)) with L the
// larger window side, so that a sweep flips about as many sites as there are.
class WolffSampler {
 public:
  WolffSampler(std::shared_ptr<const DiscreteDisc> D, std::uint64_t seed, std::uint64_t replica,
               WolffOptions opt = {});
  IsingState next();
  std::uint64_t cluster_updates() const { return updates_; }

 private:
  void run_sweeps(double sweeps);
  void update();
  std::shared_ptr<const DiscreteDisc> D_;
  Rng rng_;
  WolffOptions opt_;
  double p_add_;
  int ghost_;
  std::vector<int> face_of_site_;
  std::vector<std::vector<int>> nbr_;  // multi-edges to the ghost repeated
  std::vector<std::int8_t> s_;
  std::vector<int> stack_;
  std::vector<std::uint8_t> in_cluster_;
  std::uint64_t updates_ = 0;
  double updates_per_sweep_ = 1;
  bool burned_ = false;
};

IsingState sample_ising_plus(std::shared_ptr<const DiscreteDisc> D, std::uint64_t seed, std::uint64_t replica = 0,
                             WolffOptions opt = {});

struct CoupledSample {
  Config eta;
  Config trace;  // overlay(eta, Bernoulli(t))
};
CoupledSample sample_current_trace(std::shared_ptr<const DiscreteDisc> D, std::uint64_t seed,
                                   std::uint64_t replica = 0, double t = -1, WolffOptions opt = {});

struct IsingLoops {
  // levels[i-1]: level-i Ising loops traced with + on the left, turning left
  // (odd i) or right (even i) at saddles.
  std::vector<std::vector<LevelledLoop>> levels;
  // most[i-1][j]: the loop follows a strong loop of s(i) spins on its s(i) side.
  std::vector<std::vector<bool>> most;
  // Per edge slot: level of an interface edge from spin depth, 0 otherwise.
  std::vector<int> edge_level;
};
IsingLoops ising_loop_levels(const IsingState& s);

}  // namespace rcloop
