#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace rcloop {

struct P2 {
  double x = 0, y = 0;
  bool operator==(const P2&) const = default;
};

inline double euclid(P2 a, P2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

// Discrete Frechet distance between two open point sequences.
inline double discrete_frechet(const std::vector<P2>& a, const std::vector<P2>& b) {
  const std::size_t n = a.size(), m = b.size();
  if (n == 0 || m == 0) return std::numeric_limits<double>::infinity();
  std::vector<double> prev(m), cur(m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      double d = euclid(a[i], b[j]);
      double best;
      if (i == 0 && j == 0) best = d;
      else if (i == 0) best = std::max(cur[j - 1], d);
      else if (j == 0) best = std::max(prev[j], d);
      else best = std::max(std::min({prev[j], prev[j - 1], cur[j - 1]}), d);
      cur[j] = best;
    }
    std::swap(prev, cur);
  }
  return prev[m - 1];
}

// Cyclic version: both sequences are closed curves (no repeated closing
// point); minimises over the starting points of both, keeping the traversal
// direction.
inline double cyclic_discrete_frechet(const std::vector<P2>& a, const std::vector<P2>& b) {
  if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
  std::vector<P2> ca(a), cb;
  ca.push_back(a.front());
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < b.size(); ++s) {
    cb.clear();
    for (std::size_t t = 0; t <= b.size(); ++t) cb.push_back(b[(s + t) % b.size()]);
    best = std::min(best, discrete_frechet(ca, cb));
  }
  return best;
}

}  // namespace rcloop
