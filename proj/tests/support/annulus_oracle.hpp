#pragma once

// Sampling oracle for annulus predicates. All polygon corners and lattice
// points must lie on a grid of spacing h; points are sampled at spacing h/2,
// so every piece of a segment inside the closed annulus contains a sample.

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

#include "rcloop/annuli.hpp"
#include "rcloop/percolation.hpp"

namespace rt {

using rcloop::P2;
using rcloop::PolyAnnulus;

inline bool on_boundary(const std::vector<P2>& poly, P2 p) {
  for (std::size_t i = 0; i < poly.size(); ++i) {
    P2 a = poly[i], b = poly[(i + 1) % poly.size()];
    if (a.x == b.x && p.x == a.x && p.y >= std::min(a.y, b.y) && p.y <= std::max(a.y, b.y)) return true;
    if (a.y == b.y && p.y == a.y && p.x >= std::min(a.x, b.x) && p.x <= std::max(a.x, b.x)) return true;
  }
  return false;
}

// Strict interior (p not on the boundary).
inline bool inside_open(const std::vector<P2>& poly, P2 p) {
  if (on_boundary(poly, p)) return false;
  bool in = false;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    P2 a = poly[i], b = poly[(i + 1) % poly.size()];
    if (a.x != b.x || a.x <= p.x) continue;
    double lo = std::min(a.y, b.y), hi = std::max(a.y, b.y);
    if (p.y >= lo && p.y < hi) in = !in;
  }
  return in;
}

inline bool inside_closed(const std::vector<P2>& poly, P2 p) { return on_boundary(poly, p) || inside_open(poly, p); }

inline bool in_annulus(const PolyAnnulus& a, P2 p) { return inside_closed(a.outer, p) && !inside_open(a.inner, p); }

// Chains of sample points; consecutive points of a chain are joined.
using Chains = std::vector<std::vector<P2>>;

inline Chains sample_segment(P2 a, P2 b, double step) {
  double len = std::abs(a.x - b.x) + std::abs(a.y - b.y);
  int m = static_cast<int>(std::llround(len / step));
  std::vector<P2> c;
  for (int i = 0; i <= m; ++i) {
    double t = m == 0 ? 0.0 : static_cast<double>(i) / m;
    c.push_back({a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t});
  }
  return {c};
}

inline Chains chains_of_config(const rcloop::Config& k, double h) {
  const auto& g = k.geometry();
  Chains out;
  for (int e : k.open_edges()) {
    auto [va, vb] = g.edge_vertex_ids(e);
    auto pa = g.vertex(va), pb = g.vertex(vb);
    auto s = sample_segment({g.coord(pa.x), g.coord(pa.y)}, {g.coord(pb.x), g.coord(pb.y)}, h / 2);
    out.insert(out.end(), s.begin(), s.end());
  }
  return out;
}

// Some connected component of the set inside the closed annulus touches both
// boundaries.
inline bool oracle_crosses(const Chains& chains, const PolyAnnulus& a) {
  std::map<std::pair<double, double>, int> id;
  std::vector<int> parent;
  std::vector<std::array<bool, 2>> touch;
  auto node = [&](P2 p) {
    auto key = std::make_pair(p.x, p.y);
    auto it = id.find(key);
    if (it != id.end()) return it->second;
    int i = static_cast<int>(parent.size());
    id.emplace(key, i);
    parent.push_back(i);
    touch.push_back({inside_closed(a.inner, p), !inside_open(a.outer, p)});
    return i;
  };
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (const auto& c : chains)
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (!in_annulus(a, c[i])) continue;
      int u = node(c[i]);
      if (i + 1 < c.size() && in_annulus(a, c[i + 1])) {
        int v = node(c[i + 1]);
        int ru = find(u), rv = find(v);
        if (ru != rv) {
          parent[ru] = rv;
          touch[rv][0] = touch[rv][0] || touch[ru][0];
          touch[rv][1] = touch[rv][1] || touch[ru][1];
        }
      }
    }
  for (std::size_t i = 0; i < parent.size(); ++i)
    if (find(static_cast<int>(i)) == static_cast<int>(i) && touch[i][0] && touch[i][1]) return true;
  return false;
}

// Searches a grid path (spacing h/2) crossing a2 whose pieces inside a1 never
// touch both boundaries of a1. Returns the path, empty when none exists.
inline std::vector<P2> crossing_witness(const PolyAnnulus& a1, const PolyAnnulus& a2, double h) {
  double x0 = a2.outer[0].x, x1 = x0, y0 = a2.outer[0].y, y1 = y0;
  for (auto p : a2.outer) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  const double s = h / 2;
  const int W = static_cast<int>(std::llround((x1 - x0) / s)), H = static_cast<int>(std::llround((y1 - y0) / s));
  auto pt = [&](int i, int j) { return P2{x0 + i * s, y0 + j * s}; };
  auto idx = [&](int i, int j, int st) { return (i * (H + 1) + j) * 4 + st; };
  std::vector<int> prev(static_cast<std::size_t>((W + 1) * (H + 1) * 4), -2);
  std::deque<int> q;
  // state: 0 outside a1, otherwise 1 + mask of boundaries of a1 touched by
  // the current stretch inside a1.
  auto state_at = [&](P2 p, int from) -> int {
    if (!in_annulus(a1, p)) return 0;
    int mask = from > 0 ? from - 1 : 0;
    if (inside_closed(a1.inner, p)) mask |= 1;
    if (!inside_open(a1.outer, p)) mask |= 2;
    if (mask == 3) return -1;
    return mask + 1;
  };
  for (int i = 0; i <= W; ++i)
    for (int j = 0; j <= H; ++j) {
      P2 p = pt(i, j);
      if (!in_annulus(a2, p) || !inside_closed(a2.inner, p)) continue;
      int st = state_at(p, 0);
      if (st < 0) continue;
      prev[idx(i, j, st)] = -1;
      q.push_back(idx(i, j, st));
    }
  while (!q.empty()) {
    int cur = q.front();
    q.pop_front();
    int st = cur % 4, cell = cur / 4, i = cell / (H + 1), j = cell % (H + 1);
    P2 p = pt(i, j);
    if (!inside_open(a2.outer, p)) {
      std::vector<P2> path;
      for (int c = cur; c >= 0; c = prev[c]) path.push_back(pt(c / 4 / (H + 1), c / 4 % (H + 1)));
      std::reverse(path.begin(), path.end());
      return path;
    }
    const int di[4] = {1, 0, -1, 0}, dj[4] = {0, 1, 0, -1};
    for (int d = 0; d < 4; ++d) {
      int ni = i + di[d], nj = j + dj[d];
      if (ni < 0 || nj < 0 || ni > W || nj > H) continue;
      P2 np = pt(ni, nj);
      if (!in_annulus(a2, np)) continue;
      int ns = state_at(np, st);
      if (ns < 0) continue;
      int key = idx(ni, nj, ns);
      if (prev[key] != -2) continue;
      prev[key] = cur;
      q.push_back(key);
    }
  }
  return {};
}

}  // namespace rt
