#include <doctest.h>

#include <regex>

#include "rcloop/io.hpp"
#include "test_util.hpp"

using namespace rcloop;
using rt::P;

TEST_CASE("run-length coding") {
  CHECK(rle_encode({}) == "0");
  CHECK(rle_encode({0, 0, 1, 1, 1, 0}) == "2 3 1");
  CHECK(rle_encode({1, 0}) == "0 1 1");
  std::vector<std::uint8_t> bits{1, 1, 0, 1, 0, 0, 0, 1};
  CHECK(rle_decode(rle_encode(bits), bits.size()) == bits);
  CHECK_THROWS_AS(rle_decode("3 9", 5), PreconditionError);
  CHECK_THROWS_AS(rle_decode("2 2", 5), PreconditionError);
  CHECK_THROWS_AS(rle_decode("2 x", 5), PreconditionError);
  CHECK_THROWS_AS(rle_decode("-1 6", 5), PreconditionError);
}

TEST_CASE("configuration round trip") {
  auto D = square_disc(5, 4, 8);
  for (std::uint64_t r = 0; r < 20; ++r) {
    Config k = sample_bernoulli(BernoulliField::constant(D.graph, 0.4), 3, r);
    auto text = config_to_rle(k, "note");
    CHECK(text.rfind("# note\nrcloop-config 1\ngeometry 8 ", 0) == 0);
    Config back = config_from_rle(text);
    CHECK(back.geometry().n == 8);
    CHECK(back.bits() == k.bits());
    CHECK(back.support().edge_bits() == D.graph.edge_bits());
    CHECK(config_to_rle(back) == config_to_rle(k));
  }
}

TEST_CASE("malformed configuration text") {
  auto D = square_disc(2, 2);
  Config k(D.graph);
  k.set_open(D.geometry().edge_id(edge_between(P(0, 0), P(1, 0))));
  const std::string good = config_to_rle(k);
  CHECK_NOTHROW(config_from_rle(good));
  auto bad = [&](std::string from, std::string to) {
    std::string t = good;
    auto i = t.find(from);
    REQUIRE(i != std::string::npos);
    t.replace(i, from.size(), to);
    CHECK_THROWS_AS(config_from_rle(t), PreconditionError);
  };
  bad("rcloop-config 1", "rcloop-config 2");
  bad("geometry", "geom");
  bad("support ", "open ");
  bad("geometry 2", "geometry 0");
  CHECK_THROWS_AS(config_from_rle(""), PreconditionError);
  // open edge outside the support
  Subgraph s(D.geometry());
  Config empty(s);
  std::string t = config_to_rle(empty);
  t.replace(t.find("open "), std::string::npos, "open " + rle_encode(k.bits()) + "\n");
  CHECK_THROWS_AS(config_from_rle(t), PreconditionError);
}

TEST_CASE("svg output") {
  auto D = square_disc(4, 4);
  auto k = rt::config_of_walks(D.graph, {rt::rect_walk(1, 1, 3, 3)});
  auto d = decompose(k, D);
  REQUIRE(d.loops.size() == 1);
  auto svg = loops_svg(D.geometry(), d.loops, &k);
  CHECK(svg.rfind("<svg ", 0) == 0);
  CHECK(svg.find("</svg>\n") == svg.size() - 7);
  std::regex line("<line ");
  auto n = std::distance(std::sregex_iterator(svg.begin(), svg.end(), line), std::sregex_iterator());
  CHECK(n == 16);  // 8 grey open edges, 8 loop edges
  CHECK(svg.find("class=\"level-1\"") != std::string::npos);
  CHECK(std::string(version()).size() > 0);
}
