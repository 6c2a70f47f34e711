#include "rcloop/loopdecomp.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace rcloop {

namespace {

void check_input(const Config& k, const DiscreteDisc& K) {
  if (!(k.geometry() == K.geometry())) throw PreconditionError("configuration and disc geometries differ");
  for (int e : k.open_edges())
    if (!K.graph.has_edge(e)) throw PreconditionError("open edge outside the disc");
  if (!source_set(k, K.graph).empty()) throw PreconditionError("configuration has sources");
}

int degree(const GridGeometry& g, const std::vector<std::uint8_t>& bits, int v) {
  int d = 0;
  for (int dir = 0; dir < 4; ++dir) {
    int e = g.edge_from(v, dir);
    if (e >= 0 && bits[e]) ++d;
  }
  return d;
}

// Faces of K* reachable from the boundary of K* through open dual edges.
std::vector<std::uint8_t> reach_from_dual_boundary(const DiscreteDisc& K,
                                                   const std::vector<std::uint8_t>& bits) {
  const auto& g = K.geometry();
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(g.num_faces()), 0);
  std::deque<int> q;
  for (int f = 0; f < g.num_faces(); ++f)
    if (K.dual_boundary[f]) {
      seen[f] = 1;
      q.push_back(f);
    }
  while (!q.empty()) {
    int f = q.front();
    q.pop_front();
    Pt c = g.face(f);
    for (int dir = 0; dir < 4; ++dir) {
      Pt c2 = step(c, dir);
      if (!g.has_face(c2)) continue;
      int f2 = g.face_id(c2);
      if (seen[f2] || !K.dual_vertices[f2]) continue;
      Edge crossed{{(c.x + c2.x) / 2, (c.y + c2.y) / 2}, false};
      if (g.has_edge(crossed)) {
        int e = g.edge_id(crossed);
        if (K.graph.has_edge(e) && bits[e]) continue;
      }
      seen[f2] = 1;
      q.push_back(f2);
    }
  }
  return seen;
}

bool is_opposite(Pt a, Pt z, Pt b) { return a.x + b.x == 2 * z.x && a.y + b.y == 2 * z.y; }

}  // namespace

std::vector<int> walk_edge_ids(const GridGeometry& g, const std::vector<Pt>& walk) {
  std::vector<int> out;
  for (const Edge& e : loop_edges(walk)) out.push_back(g.edge_id(e));
  return out;
}

PeelResult peel_levels(const Config& k, const DiscreteDisc& K) {
  check_input(k, K);
  const auto& g = K.geometry();
  PeelResult res;
  res.residual.push_back(k);
  std::vector<std::uint8_t> cur = k.bits();
  int remaining = k.num_open();
  for (int level = 1; remaining > 0; ++level) {
    auto reached = reach_from_dual_boundary(K, cur);
    std::vector<std::uint8_t> peeled(cur.size(), 0);
    std::vector<LevelledLoop> loops;
    for (int e0 = 0; e0 < static_cast<int>(cur.size()); ++e0) {
      if (!cur[e0] || peeled[e0]) continue;
      auto [f1, f2] = g.faces_of(e0);
      bool r1 = reached[g.face_id(f1)], r2 = reached[g.face_id(f2)];
      if (!r1 && !r2) continue;
      if (r1 && r2) throw InvariantError("open edge exposed on both sides");
      // faces_of gives (below, above) for horizontal and (left, right) for
      // vertical edges; walk so that the exposed face is on the left.
      auto [va, vb] = g.edge_vertex_ids(e0);
      bool horizontal = (e0 & 1) != 0;
      bool left_is_first = !horizontal;
      int x0 = (r1 == left_is_first) ? va : vb;
      int x1 = x0 == va ? vb : va;
      std::vector<Pt> pts{g.vertex(x0)};
      peeled[e0] = 1;
      int prev = x0, at = x1;
      int heading = direction(g.vertex(prev), g.vertex(at));
      while (at != x0) {
        pts.push_back(g.vertex(at));
        int deg = degree(g, cur, at);
        int next_dir = -1;
        if (deg == 2) {
          for (int dir = 0; dir < 4; ++dir) {
            int e = g.edge_from(at, dir);
            if (e >= 0 && cur[e] && dir != ((heading + 2) & 3)) next_dir = dir;
          }
        } else if (deg == 4) {
          next_dir = (heading + 1) & 3;
        } else {
          throw InvariantError("odd or zero degree on a peeling walk");
        }
        int e = g.edge_from(at, next_dir);
        if (e < 0 || !cur[e] || peeled[e]) throw InvariantError("peeling walk reused an edge");
        auto [h1, h2] = g.faces_of(e);
        if (!reached[g.face_id(h1)] && !reached[g.face_id(h2)])
          throw InvariantError("peeling walk left the exposed set");
        peeled[e] = 1;
        prev = at;
        at = g.neighbor(at, next_dir);
        heading = next_dir;
      }
      LevelledLoop l;
      l.level = level;
      l.pts = (level % 2 == 0) ? reversed(pts) : pts;
      l.orientation = classify_loop(l.pts).orientation;
      loops.push_back(std::move(l));
    }
    if (loops.empty()) throw InvariantError("no exposed edge while edges remain");
    Config next = res.residual.back();
    for (int e = 0; e < static_cast<int>(cur.size()); ++e)
      if (peeled[e]) {
        cur[e] = 0;
        next.set_open(e, false);
        --remaining;
      }
    res.levels.push_back(std::move(loops));
    res.residual.push_back(std::move(next));
  }
  return res;
}

std::vector<Pt> concatenate(const std::vector<Pt>& l_in, const std::vector<Pt>& l2_in, Pt start) {
  auto l = open_walk(l_in);
  auto l2 = open_walk(l2_in);
  auto it = std::find(l.begin(), l.end(), start);
  if (it == l.end()) throw PreconditionError("concatenate: start vertex not on the first loop");
  std::rotate(l.begin(), it, l.end());
  const std::size_t n = l.size(), m = l2.size();
  for (std::size_t k = 0; k < n; ++k) {
    Pt z = l[k];
    Pt prev = l[(k + n - 1) % n], next = l[(k + 1) % n];
    for (std::size_t k2 = 0; k2 < m; ++k2) {
      if (!(l2[k2] == z)) continue;
      Pt prev2 = l2[(k2 + m - 1) % m], next2 = l2[(k2 + 1) % m];
      if (!is_opposite(prev, z, prev2) || !is_opposite(next, z, next2)) continue;
      std::vector<Pt> out(l.begin(), l.begin() + static_cast<long>(k) + 1);
      for (std::size_t s = 1; s <= m; ++s) out.push_back(l2[(k2 + s) % m]);
      out.insert(out.end(), l.begin() + static_cast<long>(k) + 1, l.end());
      return out;
    }
  }
  throw PreconditionError("concatenate: no shared vertex satisfies the straight-line condition");
}

std::optional<std::vector<Pt>> surrounding_circuit(const std::vector<Pt>& l, const Config& k,
                                                   const DiscreteDisc& K) {
  const auto& g = K.geometry();
  auto pts = open_walk(l);
  auto wn = face_winding(g, pts);
  std::vector<std::uint8_t> layer(static_cast<std::size_t>(g.num_faces()), 0);
  for (Pt p : pts)
    for (int dx : {-1, 1})
      for (int dy : {-1, 1}) {
        Pt c{p.x + dx, p.y + dy};
        int f = g.face_id(c);
        if (wn[f] == 0 && K.dual_vertices[f]) layer[f] = 1;
      }
  auto in_layer = [&](Pt c) { return g.has_face(c) && layer[g.face_id(c)]; };
  auto open_dual = [&](Pt a, Pt b) {
    if (!in_layer(a) || !in_layer(b)) return false;
    Edge crossed{{(a.x + b.x) / 2, (a.y + b.y) / 2}, false};
    if (!g.has_edge(crossed)) return true;
    int e = g.edge_id(crossed);
    return !(K.graph.has_edge(e) && k.bits()[e]);
  };
  int first = -1;
  for (int f = 0; f < g.num_faces(); ++f)
    if (layer[f]) {
      first = f;
      break;
    }
  if (first < 0) return std::nullopt;
  auto walk = trace_outer(g.face(first), open_dual);
  if (walk.size() < 4) return std::nullopt;
  if (classify_loop(walk).cls != LoopClass::simple) return std::nullopt;
  if (!surrounds(walk, pts)) return std::nullopt;
  return walk;
}

LoopDecomposition decompose(const Config& k, const DiscreteDisc& K) {
  LoopDecomposition out;
  out.source_config = k;
  out.peeled = peel_levels(k, K);
  const auto& levels = out.peeled.levels;
  out.N = static_cast<int>(levels.size());

  struct Chain {
    std::vector<Pt> pts;
    std::set<Pt> verts;
    int seed_level;
    std::size_t seed_pos;
    bool outmost;
  };
  std::vector<Chain> chains;

  auto absorb = [&](Chain& c, const LevelledLoop& l) {
    Pt start = *std::min_element(c.pts.begin(), c.pts.end());
    c.pts = concatenate(c.pts, l.pts, start);
    c.verts.insert(l.pts.begin(), l.pts.end());
  };
  auto shares = [](const std::set<Pt>& verts, const std::vector<Pt>& pts) {
    for (Pt p : pts)
      if (verts.count(p)) return true;
    return false;
  };

  for (int i = 1; i <= out.N; ++i) {
    const auto& lv = levels[i - 1];
    std::vector<bool> used(lv.size(), false);
    for (auto& c : chains) {
      std::set<Pt> before = c.verts;
      for (std::size_t j = 0; j < lv.size(); ++j) {
        if (used[j] || !shares(before, lv[j].pts)) continue;
        absorb(c, lv[j]);
        used[j] = true;
      }
      for (bool grew = true; grew;) {
        grew = false;
        for (std::size_t j = 0; j < lv.size(); ++j) {
          if (used[j] || !shares(c.verts, lv[j].pts)) continue;
          absorb(c, lv[j]);
          used[j] = true;
          grew = true;
          ++out.late_absorptions;
        }
      }
    }
    for (std::size_t j = 0; j < lv.size(); ++j) {
      if (used[j]) continue;
      Chain c;
      c.pts = lv[j].pts;
      c.verts.insert(c.pts.begin(), c.pts.end());
      c.seed_level = i;
      c.seed_pos = j;
      c.outmost = surrounding_circuit(lv[j].pts, k, K).has_value();
      chains.push_back(std::move(c));
    }
  }

  for (const auto& c : chains) {
    LevelledLoop l;
    l.pts = c.pts;
    l.level = c.seed_level;
    l.orientation = classify_loop(c.pts).orientation;
    out.loops.push_back(std::move(l));
    out.seeds.push_back(levels[c.seed_level - 1][c.seed_pos]);
    out.seed_outmost.push_back(c.outmost);
  }
  return out;
}

std::vector<std::vector<int>> component_oracle(const Config& k) {
  const auto& g = k.geometry();
  std::vector<int> parent(static_cast<std::size_t>(g.num_vertices()));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<int> deg(parent.size(), 0);
  auto open = k.open_edges();
  for (int e : open) {
    auto [a, b] = g.edge_vertex_ids(e);
    ++deg[a];
    ++deg[b];
    parent[find(a)] = find(b);
  }
  for (int d : deg)
    if (d % 2) throw PreconditionError("component_oracle: odd degree vertex");
  std::vector<std::vector<int>> by_root(parent.size());
  for (int e : open) by_root[find(g.edge_vertex_ids(e).first)].push_back(e);
  std::vector<std::vector<int>> comps;
  for (auto& c : by_root)
    if (!c.empty()) comps.push_back(std::move(c));
  std::sort(comps.begin(), comps.end());
  return comps;
}

}  // namespace rcloop
