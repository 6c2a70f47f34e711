#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "rcloop/lattice.hpp"
#include "rcloop/rng.hpp"

namespace rcloop {

// Percolation configuration: one bit per edge of the support.
class Config {
 public:
  Config() = default;
  explicit Config(Subgraph support);

  const Subgraph& support() const { return support_; }
  const GridGeometry& geometry() const { return support_.geometry(); }
  bool open(int eid) const { return bits_[eid] != 0; }
  void set_open(int eid, bool on = true);
  std::vector<int> open_edges() const;
  int num_open() const;
  // Raw per-slot bits (zero outside the support).
  const std::vector<std::uint8_t>& bits() const { return bits_; }

  bool operator==(const Config&) const = default;

 private:
  Subgraph support_;
  std::vector<std::uint8_t> bits_;
};

Config restrict(const Config& k, const Subgraph& r);
Config extend_trivially(const Config& k);  // support = full window
// Vertices of odd degree counting open edges of the trivial extension that
// lie in E(r).
std::vector<int> source_set(const Config& k, const Subgraph& r);
Config overlay(const Config& a, const Config& b);
// Graph (V = endpoints of open edges, E = open edges).
Subgraph open_subgraph(const Config& k);

struct BernoulliField {
  Subgraph support;
  std::vector<double> t;  // per edge slot; ignored outside the support
  static BernoulliField constant(const Subgraph& support, double t);
};

// Bit e is open iff u(seed, replica, e) < t_e with u a counter-based uniform.
Config sample_bernoulli(const BernoulliField& f, std::uint64_t seed, std::uint64_t replica = 0);

}  // namespace rcloop
