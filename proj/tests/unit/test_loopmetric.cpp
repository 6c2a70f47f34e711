#include <doctest.h>

#include <cmath>
#include <functional>
#include <map>
#include <random>

#include "rcloop/loopmetric.hpp"
#include "rcloop/models.hpp"
#include "test_util.hpp"

using namespace rcloop;

namespace {

PolyLoop square(double x, double y, double s) { return {{x, y}, {x + s, y}, {x + s, y + s}, {x, y + s}}; }

// Unit-step subdivision of an axis-parallel loop with integer corners.
PolyLoop refine(const PolyLoop& l) {
  PolyLoop out;
  for (std::size_t i = 0; i < l.size(); ++i) {
    P2 a = l[i], b = l[(i + 1) % l.size()];
    int m = static_cast<int>(std::llround(std::abs(b.x - a.x) + std::abs(b.y - a.y)));
    for (int t = 0; t < m; ++t) out.push_back({a.x + (b.x - a.x) * t / m, a.y + (b.y - a.y) * t / m});
  }
  return out;
}

// Memoised recursion over coupling prefixes for every rotation of b.
double brute_cyclic_frechet(const PolyLoop& a, const PolyLoop& b) {
  double best = 1e300;
  const std::size_t n = a.size(), m = b.size();
  for (std::size_t r = 0; r < m; ++r) {
    std::vector<P2> A(a), B;
    for (std::size_t j = 0; j <= m; ++j) B.push_back(b[(r + j) % m]);
    A.push_back(a[0]);
    std::map<std::pair<std::size_t, std::size_t>, double> memo;
    std::function<double(std::size_t, std::size_t)> f = [&](std::size_t i, std::size_t j) -> double {
      auto key = std::make_pair(i, j);
      if (auto it = memo.find(key); it != memo.end()) return it->second;
      double d = std::hypot(A[i].x - B[j].x, A[i].y - B[j].y);
      double v;
      if (i == 0 && j == 0) v = d;
      else if (i == 0) v = std::max(d, f(0, j - 1));
      else if (j == 0) v = std::max(d, f(i - 1, 0));
      else v = std::max(d, std::min({f(i - 1, j), f(i, j - 1), f(i - 1, j - 1)}));
      return memo[key] = v;
    };
    best = std::min(best, f(n, m));
  }
  return best;
}

double point_to_loop(P2 p, const PolyLoop& l) {
  double best = 1e300;
  for (std::size_t i = 0; i < l.size(); ++i) {
    P2 a = l[i], b = l[(i + 1) % l.size()];
    double dx = b.x - a.x, dy = b.y - a.y, len = dx * dx + dy * dy;
    double t = len == 0 ? 0 : std::clamp(((p.x - a.x) * dx + (p.y - a.y) * dy) / len, 0.0, 1.0);
    best = std::min(best, std::hypot(p.x - a.x - t * dx, p.y - a.y - t * dy));
  }
  return best;
}

PolyLoop random_loop(std::mt19937_64& rng) {
  std::vector<int> hs(1 + rng() % 4);
  for (auto& h : hs) h = 1 + static_cast<int>(rng() % 4);
  auto w = rt::histogram_walk(hs, static_cast<int>(rng() % 6));
  int dy = static_cast<int>(rng() % 6);
  PolyLoop l;
  for (auto p : w) l.push_back({p.x / 2.0, p.y / 2.0 + dy});
  if (rng() & 1) std::reverse(l.begin(), l.end());
  return l;
}

}  // namespace

TEST_CASE("loop distance examples") {
  auto s = refine(square(0, 0, 1));
  CHECK(loop_distance(s, s) == 0.0);
  auto t = refine(square(3, 0, 1));
  CHECK(loop_distance(s, t) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(brute_cyclic_frechet(s, t) == doctest::Approx(3.0).epsilon(1e-12));
  PolyLoop pt{{10, 0}};
  double dmin = 1e9;
  for (auto p : s) dmin = std::min(dmin, std::hypot(p.x - 10, p.y));
  CHECK(loop_distance(s, pt) >= dmin);
  CHECK_THROWS_AS(loop_distance(s, {}), PreconditionError);
  // Rotation of the start point does not matter.
  auto r = s;
  std::rotate(r.begin(), r.begin() + 2, r.end());
  CHECK(loop_distance(s, r) == 0.0);
}

TEST_CASE("loop distance matches brute force on random loops") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 60; ++i) {
    auto a = refine(random_loop(rng)), b = refine(random_loop(rng));
    double d = loop_distance(a, b);
    CHECK(d == doctest::Approx(brute_cyclic_frechet(a, b)).epsilon(1e-12));
    CHECK(d == doctest::Approx(loop_distance(b, a)).epsilon(1e-12));
    for (auto p : a) CHECK(point_to_loop(p, b) <= d + 1e-12);
  }
}

TEST_CASE("collection distance examples") {
  LoopCollection L{square(0, 0, 1), square(5, 5, 2)};
  CHECK(collection_distance(L, L) == 0.0);
  CHECK(collection_distance({square(0, 0, 2)}, {}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  auto one = LoopCollection{refine(square(0, 0, 1))}, two = LoopCollection{refine(square(3, 0, 1))};
  auto full = collection_distance_full(one, two);
  CHECK(full.value == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-12));
  CHECK(full.matching.pairs.empty());
  auto near = LoopCollection{refine(square(0.25, 0, 1))};
  auto m = collection_distance_full(one, near);
  CHECK(m.value == doctest::Approx(0.25));
  CHECK(m.matching.pairs.size() == 1);
  CHECK(collection_distance({}, {}) == 0.0);
}

TEST_CASE("collection distance metric axioms") {
  std::mt19937_64 rng(12);
  auto coll = [&] {
    LoopCollection c(rng() % 4);
    for (auto& l : c) l = refine(random_loop(rng));
    return c;
  };
  for (int i = 0; i < 300; ++i) {
    auto a = coll(), b = coll(), c = coll();
    double ab = collection_distance(a, b), ba = collection_distance(b, a);
    CHECK(ab == doctest::Approx(ba).epsilon(1e-12));
    CHECK(collection_distance(a, a) == 0.0);
    CHECK(collection_distance(a, c) <= ab + collection_distance(b, c) + 1e-9);
  }
}

TEST_CASE("smpl collections") {
  Rect dom{0, 0, 10, 10};
  auto outer = square(1, 1, 6), inner = square(3, 3, 2);
  std::reverse(outer.begin(), outer.end());  // clockwise
  CHECK(is_smpl({outer, inner}, dom));
  CHECK(level_in({outer, inner}, 1) == 2);
  auto inner_cw = inner;
  std::reverse(inner_cw.begin(), inner_cw.end());
  CHECK_FALSE(is_smpl({outer, inner_cw}, dom));
  auto a = square(1, 1, 2), b = square(3, 1, 2);
  std::reverse(a.begin(), a.end());
  std::reverse(b.begin(), b.end());
  CHECK_FALSE(is_smpl({a, b}, dom));
  CHECK_FALSE(is_smpl({square(0, 0, 2)}, dom));
}

TEST_CASE("F fingerprint") {
  auto D = square_disc(8, 8);
  const auto& g = D.geometry();
  auto fam = DyadicFamily::for_geometry(3, g);
  auto zero = F_fingerprint(g, {}, fam);
  CHECK(zero.count() == 0);
  // A loop strictly inside one dyadic cell touches no annulus boundary.
  auto fine = square_disc(32, 32).geometry();
  auto small = F_fingerprint(fine, {rt::rect_walk(1, 1, 2, 2)}, DyadicFamily::for_geometry(3, fine));
  CHECK(small.count() == 0);

  auto K = square_disc(3, 3, 4);
  for (const auto& k : sourceless_configs(K.graph)) {
    auto d = decompose(k, K);
    CHECK(F_fingerprint(d, 2) == fingerprint(k, 2));
  }
}
