#include <doctest.h>

#include <random>

#include "rcloop/percolation.hpp"
#include "test_util.hpp"

using namespace rcloop;
using rt::P;

namespace {

Config random_config(const Subgraph& s, std::mt19937_64& rng) {
  Config c(s);
  for (int e : s.edge_ids())
    if (rng() & 1) c.set_open(e);
  return c;
}

}  // namespace

TEST_CASE("restrict") {
  auto D = square_disc(3, 3);
  std::mt19937_64 rng(1);
  auto k = random_config(D.graph, rng);
  CHECK(restrict(k, D.graph) == k);
  auto empty = restrict(k, Subgraph(D.geometry()));
  CHECK(empty.num_open() == 0);
  CHECK(empty.support().num_edges() == 0);

  auto sq = square_disc(1, 1);
  auto k1 = rt::config_of_walks(sq.graph, {rt::rect_walk(0, 0, 1, 1)});
  Subgraph one(sq.geometry());
  int e = sq.geometry().edge_id(edge_between(P(0, 0), P(1, 0)));
  one.add_edge_with_ends(e);
  auto r = restrict(k1, one);
  CHECK(r.num_open() == 1);
  CHECK(r.open(e));

  auto big = square_disc(4, 4, 3);
  CHECK_THROWS_AS(restrict(k, big.graph), PreconditionError);
}

TEST_CASE("extend trivially") {
  auto D = square_disc(3, 2);
  Config k(D.graph);
  auto ext = extend_trivially(k);
  CHECK(ext.num_open() == 0);
  CHECK(ext.support() == Subgraph::full(D.geometry()));
  int e = D.geometry().edge_id(edge_between(P(1, 1), P(2, 1)));
  k.set_open(e);
  ext = extend_trivially(k);
  CHECK(ext.open_edges() == std::vector<int>{e});
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    auto r = random_config(D.graph, rng);
    CHECK(restrict(extend_trivially(r), D.graph) == r);
  }
}

TEST_CASE("source sets") {
  auto D = square_disc(2, 2);
  const auto& g = D.geometry();
  Config k(D.graph);
  k.set_open(g.edge_id(edge_between(P(0, 0), P(1, 0))));
  CHECK(source_set(k, D.graph) == std::vector<int>{g.vertex_id(P(0, 0)), g.vertex_id(P(1, 0))});

  auto sq = rt::config_of_walks(D.graph, {rt::rect_walk(0, 0, 1, 1)});
  CHECK(source_set(sq, D.graph).empty());

  Config l(D.graph);
  l.set_open(g.edge_id(edge_between(P(0, 0), P(1, 0))));
  l.set_open(g.edge_id(edge_between(P(1, 0), P(1, 1))));
  auto s = source_set(l, D.graph);
  CHECK(s == std::vector<int>{g.vertex_id(P(0, 0)), g.vertex_id(P(1, 1))});

  // Parity oracle against a direct degree count, restricted to sub-discs.
  std::mt19937_64 rng(3);
  auto big = square_disc(4, 4);
  std::vector<std::uint8_t> cells(static_cast<std::size_t>(big.geometry().num_faces()), 0);
  for (int i = 1; i < 3; ++i)
    for (int j = 0; j < 3; ++j) cells[big.geometry().face_id({2 * i + 1, 2 * j + 1})] = 1;
  auto K = disc_from_cells(big.geometry(), cells);
  for (int trial = 0; trial < 100; ++trial) {
    auto c = random_config(big.graph, rng);
    const auto& gb = big.geometry();
    std::vector<int> expect;
    for (int v = 0; v < gb.num_vertices(); ++v) {
      int deg = 0;
      for (int d = 0; d < 4; ++d) {
        int e = gb.edge_from(v, d);
        if (e >= 0 && K.graph.has_edge(e) && c.open(e)) ++deg;
      }
      if (deg % 2) expect.push_back(v);
    }
    auto got = source_set(c, K.graph);
    CHECK(got == expect);
    for (int v : got) {
      bool touches = false;
      for (int d = 0; d < 4; ++d) {
        int e = gb.edge_from(v, d);
        touches |= e >= 0 && K.graph.has_edge(e);
      }
      CHECK(touches);
    }
  }
}

TEST_CASE("overlay") {
  auto D = square_disc(3, 3);
  std::mt19937_64 rng(11);
  Config empty(D.graph);
  for (int i = 0; i < 30; ++i) {
    auto a = random_config(D.graph, rng), b = random_config(D.graph, rng);
    CHECK(overlay(a, empty) == a);
    CHECK(overlay(a, a) == a);
    auto o = overlay(a, b);
    for (int e : D.graph.edge_ids()) CHECK(o.open(e) == (a.open(e) || b.open(e)));
  }
  CHECK_THROWS_AS(overlay(empty, Config(square_disc(2, 2, 3).graph)), PreconditionError);
}

TEST_CASE("bernoulli sampling") {
  auto D = square_disc(4, 4);
  for (std::uint64_t s = 0; s < 5; ++s) {
    CHECK(sample_bernoulli(BernoulliField::constant(D.graph, 0.0), s).num_open() == 0);
    CHECK(sample_bernoulli(BernoulliField::constant(D.graph, 1.0), s).num_open() == D.graph.num_edges());
  }
  auto big = square_disc(71, 71);
  const int m = big.graph.num_edges();
  REQUIRE(m >= 10000);
  auto c = sample_bernoulli(BernoulliField::constant(big.graph, 0.5), 2024);
  double frac = static_cast<double>(c.num_open()) / m;
  CHECK(frac > 0.48);
  CHECK(frac < 0.52);
  CHECK(sample_bernoulli(BernoulliField::constant(big.graph, 0.5), 2024) == c);
  CHECK_FALSE(sample_bernoulli(BernoulliField::constant(big.graph, 0.5), 2024, 1) == c);
  CHECK_THROWS_AS(BernoulliField::constant(D.graph, 1.5), PreconditionError);
}
