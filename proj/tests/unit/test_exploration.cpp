#include <doctest.h>

#include "exploration_checks.hpp"
#include "rcloop/exploration.hpp"
#include "test_util.hpp"

using namespace rcloop;
using rt::P;

TEST_CASE("l_plus") {
  auto D = square_disc(5, 5);
  const auto& g = D.geometry();
  auto sq = rt::rect_walk(2, 2, 3, 3);
  auto lp = l_plus(sq, D);
  CHECK(lp.num_vertices() == 4);
  // Oracle: edges of D with an endpoint on the square.
  int expect = 0;
  for (int e : D.graph.edge_ids()) {
    auto [a, b] = g.edge_vertex_ids(e);
    Pt pa = g.vertex(a), pb = g.vertex(b);
    auto on = [&](Pt p) { return p.x >= 4 && p.x <= 6 && p.y >= 4 && p.y <= 6; };
    expect += on(pa) || on(pb);
  }
  CHECK(expect == 12);
  CHECK(lp.num_edges() == 12);

  auto corner = rt::rect_walk(0, 0, 1, 1);
  auto lc = l_plus(corner, D);
  CHECK(lc.num_edges() == 4 + 4);
  CHECK(is_subgraph(lc, D.graph));
}

TEST_CASE("context validation") {
  auto D = square_disc(4, 4);
  CHECK_THROWS_AS(make_context(D, {P(0, 0), P(1, 0), P(0, 0), P(1, 0)}), PreconditionError);
  CHECK_THROWS_AS(make_context(D, rt::rect_walk(3, 3, 5, 5)), PreconditionError);
  CHECK_NOTHROW(make_context(D, rt::rect_walk(1, 1, 3, 3)));
}

TEST_CASE("explore the empty configuration") {
  auto D = square_disc(8, 8);
  auto ctx = make_context(D, rt::rect_walk(2, 2, 6, 6));
  auto x = explore_outside(Config(D.graph), ctx);
  CHECK(x.R == subtract(D.graph, closed_region(D.geometry(), ctx.gamma)));
  CHECK(x.state.num_open() == 0);
  CHECK(x.explored_loops.empty());
  CHECK(is_admissible(ctx, x.R, x.state));
  auto discs = unexplored_discs(x);
  REQUIRE(discs.size() == 1);
  CHECK(discs[0].graph == ctx.gamma_region);
}

TEST_CASE("a loop inside gamma is not explored") {
  auto D = square_disc(6, 6);
  auto ctx = make_context(D, rt::rect_walk(1, 1, 5, 5));
  auto k = rt::config_of_walks(D.graph, {rt::rect_walk(2, 2, 3, 3)});
  auto x = explore_outside(k, ctx);
  CHECK(x.R == ctx.outside);
  CHECK(x.state.num_open() == 0);
  // A loop running along gamma stays inside E([gamma]) too.
  auto along = rt::config_of_walks(D.graph, {rt::rect_walk(1, 1, 2, 2)});
  CHECK(explore_outside(along, ctx).R == ctx.outside);
}

TEST_CASE("a straddling loop") {
  auto D = square_disc(8, 8);
  const auto& g = D.geometry();
  auto ctx = make_context(D, rt::rect_walk(2, 2, 6, 6));
  auto l = rt::rect_walk(1, 3, 7, 4);
  auto k = rt::config_of_walks(D.graph, {l});
  auto x = explore_outside(k, ctx);
  CHECK(x.R == unite(ctx.outside, l_plus(l, D)));
  CHECK(x.state.open_edges() == k.open_edges());
  REQUIRE(x.explored_loops.size() == 1);
  CHECK(is_admissible(ctx, x.R, x.state));

  auto discs = unexplored_discs(x);
  REQUIRE(discs.size() == 2);
  std::vector<int> sizes{discs[0].graph.num_vertices(), discs[1].graph.num_vertices()};
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<int>{5, 10});

  // An extra open edge in R creates sources.
  Config extra = x.state;
  extra.set_open(g.edge_id(edge_between(P(0, 0), P(1, 0))));
  CHECK_FALSE(is_admissible(ctx, x.R, extra));
  // A loop far outside gamma has l+ inside D \ [gamma] already.
  Config more = x.state;
  for (const auto& e : loop_edges(rt::rect_walk(0, 6, 1, 7))) more.set_open(g.edge_id(e));
  CHECK(is_admissible(ctx, x.R, more));
  // One touching gamma from outside pulls edges of [gamma] into U.
  Config full = k;
  for (const auto& e : loop_edges(rt::rect_walk(6, 5, 7, 6))) full.set_open(g.edge_id(e));
  auto y = explore_outside(full, ctx);
  CHECK_FALSE(y.R == x.R);
  CHECK(y.R.has_edge(g.edge_id(edge_between(P(5, 5), P(6, 5)))));
  // Dropping an l+ edge from R.
  Subgraph R2 = x.R;
  R2.set_edge(g.edge_id(edge_between(P(0, 3), P(1, 3))), false);
  CHECK_FALSE(is_admissible(ctx, R2, restrict(k, R2)));
}

TEST_CASE("R equal to the disc leaves nothing unexplored") {
  auto D = square_disc(4, 4);
  auto ctx = make_context(D, rt::rect_walk(1, 1, 2, 2));
  Exploration x;
  x.ctx = ctx;
  x.R = D.graph;
  x.state = Config(D.graph);
  CHECK(unexplored_discs(x).empty());
}

TEST_CASE("explore rejects sources") {
  auto D = square_disc(4, 4);
  auto ctx = make_context(D, rt::rect_walk(1, 1, 3, 3));
  Config k(D.graph);
  k.set_open(D.geometry().edge_id(edge_between(P(0, 0), P(1, 0))));
  CHECK_THROWS_AS(explore_outside(k, ctx), PreconditionError);
}

TEST_CASE("exhaustive 3x3 exploration") {
  auto D = square_disc(3, 3);
  for (const auto& gamma : {rt::rect_walk(1, 1, 2, 2), rt::rect_walk(0, 0, 2, 2), rt::rect_walk(1, 0, 3, 3)}) {
    rt::ExploreStats st;
    auto why = rt::check_exploration(D, gamma, true, &st);
    CHECK_MESSAGE(why.empty(), why);
    CHECK(st.configs == 512);
    CHECK(st.max_tv < 1e-12);
  }
}
