#include "rcloop/loopmetric.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace rcloop {

namespace {

double half_diam(const PolyLoop& l) { return 0.5 * loop_diameter(l); }

// Kuhn's augmenting paths; returns match of each left node or -1.
bool perfect_matching(int n, const std::vector<std::vector<int>>& adj, std::vector<int>& match_left) {
  std::vector<int> match_right(static_cast<std::size_t>(n), -1);
  match_left.assign(static_cast<std::size_t>(n), -1);
  std::vector<int> stamp(static_cast<std::size_t>(n), -1);
  std::function<bool(int, int)> augment = [&](int u, int round) -> bool {
    for (int v : adj[u]) {
      if (stamp[v] == round) continue;
      stamp[v] = round;
      if (match_right[v] < 0 || augment(match_right[v], round)) {
        match_right[v] = u;
        match_left[u] = v;
        return true;
      }
    }
    return false;
  };
  for (int u = 0; u < n; ++u)
    if (!augment(u, u)) return false;
  return true;
}

bool axis_parallel(const PolyLoop& l) {
  for (std::size_t i = 0; i < l.size(); ++i) {
    P2 a = l[i], b = l[(i + 1) % l.size()];
    if (a.x != b.x && a.y != b.y) return false;
  }
  return true;
}

double gap(double alo, double ahi, double blo, double bhi) { return std::max({0.0, blo - ahi, alo - bhi}); }

bool segments_meet(P2 a, P2 b, P2 c, P2 d) {
  return gap(std::min(a.x, b.x), std::max(a.x, b.x), std::min(c.x, d.x), std::max(c.x, d.x)) == 0 &&
         gap(std::min(a.y, b.y), std::max(a.y, b.y), std::min(c.y, d.y), std::max(c.y, d.y)) == 0;
}

bool loops_meet(const PolyLoop& a, const PolyLoop& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      if (segments_meet(a[i], a[(i + 1) % a.size()], b[j], b[(j + 1) % b.size()])) return true;
  return false;
}

bool simple_poly(const PolyLoop& p) {
  const std::size_t m = p.size();
  if (m < 4) return false;
  for (std::size_t i = 0; i < m; ++i) {
    if (p[i] == p[(i + 1) % m]) return false;
    for (std::size_t j = i + 1; j < m; ++j) {
      if (j == i + 1 || (i == 0 && j == m - 1)) continue;
      if (segments_meet(p[i], p[(i + 1) % m], p[j], p[(j + 1) % m])) return false;
    }
  }
  // Adjacent edges may not fold back onto each other.
  for (std::size_t i = 0; i < m; ++i) {
    P2 a = p[(i + m - 1) % m], b = p[i], c = p[(i + 1) % m];
    double d1x = b.x - a.x, d1y = b.y - a.y, d2x = c.x - b.x, d2y = c.y - b.y;
    if (d1x * d2y - d1y * d2x == 0 && d1x * d2x + d1y * d2y < 0) return false;
  }
  return true;
}

double area2(const PolyLoop& p) {
  double s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    P2 u = p[i], v = p[(i + 1) % p.size()];
    s += u.x * v.y - v.x * u.y;
  }
  return s;
}

// Strictly inside a simple axis-parallel polygon; q must not lie on it.
bool strictly_inside(const PolyLoop& poly, P2 q) {
  int cross = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    P2 a = poly[i], b = poly[(i + 1) % poly.size()];
    if (a.x != b.x || a.x <= q.x) continue;
    double lo = std::min(a.y, b.y), hi = std::max(a.y, b.y);
    if (q.y >= lo && q.y < hi) ++cross;
  }
  return (cross & 1) != 0;
}

}  // namespace

PolyLoop to_physical(const GridGeometry& g, const std::vector<Pt>& walk) {
  PolyLoop out;
  for (Pt p : open_walk(walk)) out.push_back({g.coord(p.x), g.coord(p.y)});
  return out;
}

LoopCollection to_collection(const LoopDecomposition& d) {
  LoopCollection out;
  for (const auto& l : d.loops) out.push_back(to_physical(d.source_config.geometry(), l.pts));
  return out;
}

double loop_diameter(const PolyLoop& l) {
  double best = 0;
  for (std::size_t i = 0; i < l.size(); ++i)
    for (std::size_t j = i + 1; j < l.size(); ++j) best = std::max(best, euclid(l[i], l[j]));
  return best;
}

double loop_distance(const PolyLoop& a, const PolyLoop& b) {
  if (a.empty() || b.empty()) throw PreconditionError("loop_distance: empty loop");
  return cyclic_discrete_frechet(a, b);
}

CollectionDistance collection_distance_full(const LoopCollection& a, const LoopCollection& b) {
  const int m = static_cast<int>(a.size()), n = static_cast<int>(b.size());
  std::vector<double> ha(a.size()), hb(b.size());
  for (int i = 0; i < m; ++i) ha[i] = half_diam(a[i]);
  for (int j = 0; j < n; ++j) hb[j] = half_diam(b[j]);
  std::vector<std::vector<double>> d(a.size(), std::vector<double>(b.size()));
  std::vector<double> cand{0.0};
  for (int i = 0; i < m; ++i) {
    cand.push_back(ha[i]);
    for (int j = 0; j < n; ++j) {
      d[i][j] = loop_distance(a[i], b[j]);
      cand.push_back(d[i][j]);
    }
  }
  for (int j = 0; j < n; ++j) cand.push_back(hb[j]);
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

  // Left nodes: a-loops then one dummy per b-loop; right nodes: b-loops then
  // one dummy per a-loop.
  const int N = m + n;
  auto build = [&](double tau) {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(N));
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j)
        if (d[i][j] <= tau) adj[i].push_back(j);
      if (ha[i] <= tau) adj[i].push_back(n + i);
    }
    for (int j = 0; j < n; ++j) {
      if (hb[j] <= tau) adj[m + j].push_back(j);
      for (int i = 0; i < m; ++i) adj[m + j].push_back(n + i);
    }
    return adj;
  };
  std::vector<int> match;
  std::size_t lo = 0, hi = cand.size() - 1;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (perfect_matching(N, build(cand[mid]), match)) hi = mid;
    else lo = mid + 1;
  }
  CollectionDistance out;
  out.value = cand[lo];
  if (!perfect_matching(N, build(cand[lo]), match)) throw InvariantError("collection_distance: no matching");
  for (int i = 0; i < m; ++i)
    if (match[i] < n) out.matching.pairs.push_back({i, match[i]});
  return out;
}

double collection_distance(const LoopCollection& a, const LoopCollection& b) {
  return collection_distance_full(a, b).value;
}

int level_in(const LoopCollection& L, std::size_t i) {
  int lvl = 1;
  for (std::size_t j = 0; j < L.size(); ++j)
    if (j != i && strictly_inside(L[j], L[i].front())) ++lvl;
  return lvl;
}

bool is_smpl(const LoopCollection& L, const Rect& domain) {
  for (const auto& l : L) {
    if (!axis_parallel(l)) throw PreconditionError("is_smpl: loops must have axis-parallel edges");
    if (!simple_poly(l)) return false;
    for (P2 p : l)
      if (!(p.x > domain.x0 && p.x < domain.x1 && p.y > domain.y0 && p.y < domain.y1)) return false;
  }
  for (std::size_t i = 0; i < L.size(); ++i)
    for (std::size_t j = i + 1; j < L.size(); ++j)
      if (loops_meet(L[i], L[j])) return false;
  for (std::size_t i = 0; i < L.size(); ++i) {
    bool cw = area2(L[i]) < 0;
    if (cw != (level_in(L, i) % 2 == 1)) return false;
  }
  return true;
}

CrossingFingerprint F_fingerprint(const GridGeometry& g, const std::vector<std::vector<Pt>>& loops,
                                  const DyadicFamily& fam, int k_max) {
  return fingerprint(LatticeSet::from_loops(g, loops), fam, k_max);
}

CrossingFingerprint F_fingerprint(const LoopDecomposition& d, int k, int k_max) {
  std::vector<std::vector<Pt>> loops;
  for (const auto& l : d.loops) loops.push_back(l.pts);
  const auto& g = d.source_config.geometry();
  if (k > k_max) throw CapacityError("fingerprint resolution above k_max");
  return F_fingerprint(g, loops, DyadicFamily::for_geometry(k, g), k_max);
}

CrossingFingerprint separation_fingerprint(const GridGeometry& g, const std::vector<std::vector<Pt>>& loops,
                                           const DyadicFamily& fam, int k_max) {
  if (fam.k() > k_max) throw CapacityError("fingerprint resolution above k_max");
  auto s = LatticeSet::from_loops(g, loops);
  CrossingFingerprint f;
  f.k = fam.k();
  f.size = fam.size();
  f.words.assign((f.size + 63) / 64, 0);
  for (std::size_t i = 0; i < f.size; ++i)
    if (separates(s, fam.annulus(i))) f.set(i);
  return f;
}

std::size_t hamming(const CrossingFingerprint& a, const CrossingFingerprint& b) {
  if (a.size != b.size) throw PreconditionError("fingerprints of different families");
  std::size_t c = 0;
  for (std::size_t i = 0; i < a.words.size(); ++i) c += static_cast<std::size_t>(__builtin_popcountll(a.words[i] ^ b.words[i]));
  return c;
}

}  // namespace rcloop
