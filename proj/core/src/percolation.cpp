#include "rcloop/percolation.hpp"

#include <algorithm>
#include <string>

namespace rcloop {

Config::Config(Subgraph support)
    : support_(std::move(support)),
      bits_(static_cast<std::size_t>(support_.geometry().edge_slots()), 0) {}

void Config::set_open(int eid, bool on) {
  if (eid < 0 || eid >= static_cast<int>(bits_.size()) || !support_.has_edge(eid))
    throw BoundsError("edge " + std::to_string(eid) + " not in configuration support");
  bits_[eid] = on;
}

std::vector<int> Config::open_edges() const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(bits_.size()); ++i)
    if (bits_[i]) out.push_back(i);
  return out;
}

int Config::num_open() const { return static_cast<int>(std::count(bits_.begin(), bits_.end(), 1)); }

Config restrict(const Config& k, const Subgraph& r) {
  if (!(r.geometry() == k.geometry())) throw PreconditionError("restrict: geometry mismatch");
  for (int e : r.edge_ids())
    if (!k.support().has_edge(e)) throw PreconditionError("restrict: edge outside support");
  Config out(r);
  for (int e : r.edge_ids())
    if (k.open(e)) out.set_open(e);
  return out;
}

Config extend_trivially(const Config& k) {
  Config out(Subgraph::full(k.geometry()));
  for (int e : k.open_edges()) out.set_open(e);
  return out;
}

std::vector<int> source_set(const Config& k, const Subgraph& r) {
  if (!(r.geometry() == k.geometry())) throw PreconditionError("source_set: geometry mismatch");
  const auto& g = k.geometry();
  std::vector<int> parity(static_cast<std::size_t>(g.num_vertices()), 0);
  for (int e : r.edge_ids()) {
    if (!k.bits()[e]) continue;
    auto [a, b] = g.edge_vertex_ids(e);
    parity[a] ^= 1;
    parity[b] ^= 1;
  }
  std::vector<int> out;
  for (int v = 0; v < g.num_vertices(); ++v)
    if (parity[v]) out.push_back(v);
  return out;
}

Config overlay(const Config& a, const Config& b) {
  if (!(a.support() == b.support())) throw PreconditionError("overlay: support mismatch");
  Config out = a;
  for (int e : b.open_edges()) out.set_open(e);
  return out;
}

Subgraph open_subgraph(const Config& k) {
  Subgraph s(k.geometry());
  for (int e : k.open_edges()) s.add_edge_with_ends(e);
  return s;
}

BernoulliField BernoulliField::constant(const Subgraph& support, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw PreconditionError("Bernoulli parameter outside [0,1]");
  BernoulliField f;
  f.support = support;
  f.t.assign(static_cast<std::size_t>(support.geometry().edge_slots()), t);
  return f;
}

Config sample_bernoulli(const BernoulliField& f, std::uint64_t seed, std::uint64_t replica) {
  Config out(f.support);
  for (int e : f.support.edge_ids()) {
    double t = f.t[e];
    if (!(t >= 0.0 && t <= 1.0)) throw PreconditionError("Bernoulli parameter outside [0,1]");
    if (counter_uniform(seed, replica, static_cast<std::uint64_t>(e)) < t) out.set_open(e);
  }
  return out;
}

}  // namespace rcloop
