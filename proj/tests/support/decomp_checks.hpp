#pragma once

// Independent checks for loop decompositions, shared by unit and acceptance
// tests.

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rcloop/lattice.hpp"
#include "rcloop/loopdecomp.hpp"
#include "rcloop/percolation.hpp"

namespace rt {

using namespace rcloop;

// Each simple cycle (length >= 3) of an undirected graph once. Returns false
// when more than `cap` cycles exist.
inline bool simple_cycles(int nodes, const std::vector<std::vector<int>>& adj,
                          const std::function<void(const std::vector<int>&)>& fn, std::size_t cap = 200000) {
  std::size_t count = 0;
  std::vector<int> path;
  std::vector<char> on(static_cast<std::size_t>(nodes), 0);
  std::function<bool(int, int)> dfs = [&](int s, int u) {
    for (int v : adj[u]) {
      if (v == s && path.size() >= 3 && path[1] < path.back()) {
        if (++count > cap) return false;
        fn(path);
      }
      if (v <= s || on[v]) continue;
      on[v] = 1;
      path.push_back(v);
      bool ok = dfs(s, v);
      path.pop_back();
      on[v] = 0;
      if (!ok) return false;
    }
    return true;
  };
  for (int s = 0; s < nodes; ++s) {
    path = {s};
    on[s] = 1;
    bool ok = dfs(s, s);
    on[s] = 0;
    if (!ok) return false;
  }
  return true;
}

// Ray casting for a point of odd coordinates against a lattice polygon.
inline bool inside_polygon(const std::vector<Pt>& poly, Pt q) {
  bool in = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    Pt a = poly[i], b = poly[(i + 1) % n];
    if (a.x != b.x || a.x <= q.x) continue;
    if ((a.y < q.y) != (b.y < q.y)) in = !in;
  }
  return in;
}

inline long long shoelace2(const std::vector<Pt>& w) {
  long long s = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    Pt a = w[i], b = w[(i + 1) % w.size()];
    s += static_cast<long long>(a.x) * b.y - static_cast<long long>(b.x) * a.y;
  }
  return s;
}

inline double vertex_diameter(const std::vector<Pt>& w) {
  double d = 0;
  for (Pt a : w)
    for (Pt b : w) d = std::max(d, std::hypot(a.x - b.x, a.y - b.y));
  return d;
}

inline std::vector<int> sorted_edges(const GridGeometry& g, const std::vector<Pt>& w) {
  auto e = walk_edge_ids(g, w);
  std::sort(e.begin(), e.end());
  return e;
}

struct DecompStats {
  std::size_t configs = 0, loops = 0, outmost_oracle = 0, outmost_flagged = 0, late = 0;
  std::size_t cycle_cap_hits = 0;
};

// Returns an empty string on success, otherwise a description of the first
// violated property.
inline std::string check_decomposition(const Config& k, const DiscreteDisc& K, DecompStats* stats = nullptr,
                                       bool oracle_most = true) {
  const auto& g = K.geometry();
  std::ostringstream err;
  LoopDecomposition d;
  try {
    d = decompose(k, K);
  } catch (const std::exception& e) {
    return std::string("decompose threw: ") + e.what();
  }
  if (stats) {
    ++stats->configs;
    stats->loops += d.loops.size();
    stats->late += static_cast<std::size_t>(d.late_absorptions);
  }
  // Edge property and disjointness.
  std::vector<int> all;
  std::vector<std::set<Pt>> verts;
  for (const auto& l : d.loops) {
    auto e = walk_edge_ids(g, l.pts);
    all.insert(all.end(), e.begin(), e.end());
    verts.emplace_back(l.pts.begin(), l.pts.end());
    auto info = classify_loop(l.pts);
    if (info.cls != LoopClass::simple && info.cls != LoopClass::weakly_simple) return "loop not weakly simple";
    long long a = shoelace2(l.pts);
    bool cw = a < 0;
    if (a == 0 || cw != (l.level % 2 == 1)) return "orientation rule violated";
    if ((l.orientation == Orientation::cw) != cw) return "stored orientation disagrees with the shoelace sign";
  }
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) return "edge used twice";
  if (all != k.open_edges()) return "loop edges differ from open edges";
  for (std::size_t i = 0; i < verts.size(); ++i)
    for (std::size_t j = i + 1; j < verts.size(); ++j)
      for (Pt p : verts[i])
        if (verts[j].count(p)) return "loops share a vertex";
  // Uniqueness up to the planar identification: components.
  std::vector<std::vector<int>> comps;
  for (const auto& l : d.loops) comps.push_back(sorted_edges(g, l.pts));
  std::sort(comps.begin(), comps.end());
  if (comps != component_oracle(k)) return "loops differ from connected components";
  if (d.N != static_cast<int>(d.peeled.levels.size())) return "N differs from the number of levels";
  // Seeds: inside and same diameter (outmost seeds).
  for (std::size_t j = 0; j < d.loops.size(); ++j) {
    const auto& seed = d.seeds[j].pts;
    if (stats && d.seed_outmost[j]) ++stats->outmost_flagged;
    std::set<Pt> on(seed.begin(), seed.end());
    for (Pt p : d.loops[j].pts)
      if (!on.count(p) && !inside_polygon(seed, {p.x + 1, p.y + 1})) return "loop leaves its seed";
    if (d.seed_outmost[j] && std::abs(vertex_diameter(seed) - vertex_diameter(d.loops[j].pts)) > 1e-12)
      return "diameter differs from the outmost seed";
  }
  // Peeled levels: loops of the residual, residuals sourceless.
  for (std::size_t i = 0; i < d.peeled.levels.size(); ++i) {
    const Config& prev = d.peeled.residual[i];
    if (!source_set(d.peeled.residual[i + 1], K.graph).empty()) return "residual has sources";
    std::set<std::vector<int>> peeled;
    for (const auto& l : d.peeled.levels[i]) {
      auto info = classify_loop(l.pts);
      if (info.cls != LoopClass::simple && info.cls != LoopClass::weakly_simple) return "peeled loop not weakly simple";
      auto e = sorted_edges(g, l.pts);
      for (int x : e)
        if (!prev.open(x)) return "peeled loop uses a closed edge";
      peeled.insert(e);
    }
    if (!oracle_most) continue;
    // Outmost oracle: simple cycles of the residual surrounded by a simple
    // dual circuit through faces next to the cycle.
    std::vector<int> vid_of(static_cast<std::size_t>(g.num_vertices()), -1);
    std::vector<int> vs;
    for (int e : prev.open_edges())
      for (int v : {g.edge_vertex_ids(e).first, g.edge_vertex_ids(e).second})
        if (vid_of[v] < 0) {
          vid_of[v] = static_cast<int>(vs.size());
          vs.push_back(v);
        }
    std::vector<std::vector<int>> adj(vs.size());
    for (int e : prev.open_edges()) {
      auto [a, b] = g.edge_vertex_ids(e);
      adj[vid_of[a]].push_back(vid_of[b]);
      adj[vid_of[b]].push_back(vid_of[a]);
    }
    // Level-i faces: reachable from the dual boundary in the residual.
    std::set<Pt> reached;
    {
      std::vector<Pt> q;
      for (int f = 0; f < g.num_faces(); ++f)
        if (K.dual_boundary[f]) {
          reached.insert(g.face(f));
          q.push_back(g.face(f));
        }
      while (!q.empty()) {
        Pt c = q.back();
        q.pop_back();
        for (int dir = 0; dir < 4; ++dir) {
          Pt c2 = step(c, dir);
          if (!g.has_face(c2) || !K.dual_vertices[g.face_id(c2)] || reached.count(c2)) continue;
          Edge crossed{{(c.x + c2.x) / 2, (c.y + c2.y) / 2}, false};
          if (g.has_edge(crossed) && K.graph.has_edge(g.edge_id(crossed)) && prev.open(g.edge_id(crossed)))
            continue;
          reached.insert(c2);
          q.push_back(c2);
        }
      }
    }
    std::string fail;
    bool ok = simple_cycles(static_cast<int>(vs.size()), adj, [&](const std::vector<int>& cyc) {
      if (!fail.empty()) return;
      std::vector<Pt> l;
      for (int c : cyc) l.push_back(g.vertex(vs[c]));
      // Faces outside l touching V(l), inside K*.
      std::vector<Pt> ring;
      std::set<Pt> ring_set;
      for (Pt p : l)
        for (int dx : {-1, 1})
          for (int dy : {-1, 1}) {
            Pt f{p.x + dx, p.y + dy};
            if (!g.has_face(f) || !K.dual_vertices[g.face_id(f)] || inside_polygon(l, f)) continue;
            if (ring_set.insert(f).second) ring.push_back(f);
          }
      // Required faces: the outside endpoint of each dual edge.
      std::vector<Pt> need;
      for (std::size_t t = 0; t < l.size(); ++t) {
        Pt a = l[t], b = l[(t + 1) % l.size()];
        Pt m{(a.x + b.x) / 2, (a.y + b.y) / 2};
        Pt f1, f2;
        if (a.x == b.x) {
          f1 = {m.x - 1, m.y};
          f2 = {m.x + 1, m.y};
        } else {
          f1 = {m.x, m.y - 1};
          f2 = {m.x, m.y + 1};
        }
        need.push_back(inside_polygon(l, f1) ? f2 : f1);
      }
      for (Pt f : need)
        if (!reached.count(f)) return;  // not a level-i loop
      std::vector<std::vector<int>> radj(ring.size());
      for (std::size_t u = 0; u < ring.size(); ++u)
        for (std::size_t v = 0; v < ring.size(); ++v) {
          Pt a = ring[u], b = ring[v];
          if (!are_neighbors(a, b)) continue;
          Edge crossed{{(a.x + b.x) / 2, (a.y + b.y) / 2}, false};
          if (g.has_edge(crossed) && K.graph.has_edge(g.edge_id(crossed)) && prev.open(g.edge_id(crossed))) continue;
          radj[u].push_back(static_cast<int>(v));
        }
      bool most = false;
      simple_cycles(static_cast<int>(ring.size()), radj, [&](const std::vector<int>& c) {
        if (most) return;
        std::set<Pt> cs;
        for (int x : c) cs.insert(ring[x]);
        most = std::all_of(need.begin(), need.end(), [&](Pt f) { return cs.count(f) > 0; });
      });
      if (!most) return;
      if (stats) ++stats->outmost_oracle;
      auto e = sorted_edges(g, l);
      if (!peeled.count(e)) {
        std::ostringstream os;
        os << "outmost cycle at level " << i + 1 << " not peeled";
        fail = os.str();
      }
    });
    if (!ok && stats) ++stats->cycle_cap_hits;
    if (!fail.empty()) return fail;
  }
  return {};
}

}  // namespace rt
