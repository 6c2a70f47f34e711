#include "rcloop/exploration.hpp"

#include <numeric>

namespace rcloop {

ExplorationContext make_context(const DiscreteDisc& D, const std::vector<Pt>& gamma) {
  const auto& g = D.geometry();
  auto walk = open_walk(gamma);
  if (walk.size() < 4) throw PreconditionError("gamma must be a loop with at least four steps");
  for (Pt p : walk)
    if (!g.has_vertex(p) || !D.graph.has_vertex(g.vertex_id(p)))
      throw PreconditionError("gamma leaves the disc");
  if (classify_loop(walk).cls == LoopClass::general)
    throw PreconditionError("gamma must be non-self-crossing");
  ExplorationContext ctx;
  ctx.D = D;
  ctx.gamma = walk;
  ctx.gamma_region = closed_region(g, walk);
  if (!is_subgraph(ctx.gamma_region, D.graph)) throw PreconditionError("[gamma] is not inside the disc");
  ctx.outside = subtract(D.graph, ctx.gamma_region);
  return ctx;
}

Subgraph l_plus(const std::vector<Pt>& l, const DiscreteDisc& D) {
  const auto& g = D.geometry();
  Subgraph s(g);
  for (Pt p : open_walk(l)) {
    int v = g.vertex_id(p);
    s.set_vertex(v);
    for (int dir = 0; dir < 4; ++dir) {
      int e = g.edge_from(v, dir);
      if (e >= 0 && D.graph.has_edge(e)) s.set_edge(e);
    }
  }
  return s;
}

std::vector<LevelledLoop> loops_reaching_outside(const std::vector<LevelledLoop>& loops,
                                                 const ExplorationContext& ctx) {
  const auto& g = ctx.D.geometry();
  std::vector<LevelledLoop> out;
  for (const auto& l : loops)
    for (int e : walk_edge_ids(g, l.pts))
      if (!ctx.gamma_region.has_edge(e)) {
        out.push_back(l);
        break;
      }
  return out;
}

Subgraph explored_region(const std::vector<LevelledLoop>& loops, const ExplorationContext& ctx) {
  Subgraph R = ctx.outside;
  for (const auto& l : loops_reaching_outside(loops, ctx)) R = unite(R, l_plus(l.pts, ctx.D));
  return R;
}

Exploration explore_outside(const Config& k, const ExplorationContext& ctx) {
  if (!source_set(k, ctx.D.graph).empty()) throw PreconditionError("explore_outside: configuration has sources");
  Config onD(ctx.D.graph);
  for (int e : k.open_edges()) onD.set_open(e);
  auto dec = decompose(onD, ctx.D);
  Exploration x;
  x.ctx = ctx;
  x.explored_loops = loops_reaching_outside(dec.loops, ctx);
  x.R = explored_region(dec.loops, ctx);
  x.state = restrict(onD, x.R);
  return x;
}

bool is_admissible(const ExplorationContext& ctx, const Subgraph& R, const Config& state) {
  if (!(state.support() == R)) return false;
  if (!is_subgraph(R, ctx.D.graph)) return false;
  if (!source_set(state, R).empty()) return false;
  Config onD(ctx.D.graph);
  for (int e : state.open_edges()) onD.set_open(e);
  auto dec = decompose(onD, ctx.D);
  return explored_region(dec.loops, ctx) == R;
}

std::vector<DiscreteDisc> unexplored_discs(const Exploration& x) {
  const auto& g = x.ctx.D.geometry();
  Subgraph rest = subtract(x.ctx.D.graph, x.R);
  std::vector<int> parent(static_cast<std::size_t>(g.num_vertices()));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (int e : rest.edge_ids()) {
    auto [a, b] = g.edge_vertex_ids(e);
    if (!rest.has_vertex(a) || !rest.has_vertex(b))
      throw InvariantError("unexplored edge with an explored endpoint");
    parent[find(a)] = find(b);
  }
  std::vector<int> slot(parent.size(), -1);
  std::vector<Subgraph> pieces;
  for (int v : rest.vertex_ids()) {
    int r = find(v);
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(pieces.size());
      pieces.emplace_back(g);
    }
    pieces[slot[r]].set_vertex(v);
  }
  for (int e : rest.edge_ids()) pieces[slot[find(g.edge_vertex_ids(e).first)]].set_edge(e);
  std::vector<DiscreteDisc> out;
  for (const auto& p : pieces) {
    if (!certify_disc(p)) throw InvariantError("unexplored piece is not a disc");
    out.push_back(disc_from_subgraph(p));
  }
  return out;
}

}  // namespace rcloop
