#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "annulus_oracle.hpp"
#include "rcloop/experiments.hpp"

using namespace rcloop;

namespace {

ExperimentSetup setup(int n, std::uint64_t replicas, std::uint64_t seed = 7, unsigned threads = 1) {
  ExperimentSetup s;
  s.n = n;
  s.replicas = replicas;
  s.seed = seed;
  s.threads = threads;
  return s;
}

const PolyAnnulus& A() {
  static const PolyAnnulus a = square_annulus(0.5, 0.5, 0.125, 0.25);
  return a;
}

std::string csv_of(const std::vector<Row>& rows) {
  std::ostringstream os;
  write_csv(os, "test", rows);
  return os.str();
}

}  // namespace

TEST_CASE("pairwise_sum and summarize") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  for (std::size_t n : {0u, 1u, 7u, 8u, 9u, 100u, 1001u}) {
    std::vector<double> x(n);
    long double ref = 0;
    for (auto& v : x) {
      v = u(rng);
      ref += v;
    }
    CHECK(pairwise_sum(x.data(), n) == doctest::Approx(static_cast<double>(ref)).epsilon(1e-12));
  }
  std::vector<double> s{1, 0, 0, 1, 1};
  auto e = summarize(s, 42);
  CHECK(e.value == doctest::Approx(0.6));
  // sample variance 0.3, stderr sqrt(0.3 / 5)
  CHECK(e.stderr_ == doctest::Approx(std::sqrt(0.3 / 5)));
  CHECK(e.replicas == 5);
  CHECK(e.seed == 42);
  CHECK(summarize({}, 1).replicas == 0);
  CHECK(summarize({2.5}, 1).stderr_ == 0);
}

TEST_CASE("run_replicas") {
  auto fn = [](std::uint64_t r) { return std::vector<double>{static_cast<double>(r * r), 1.0}; };
  auto a = run_replicas(100, 1, fn);
  auto b = run_replicas(100, 4, fn);
  CHECK(a == b);
  CHECK(a[9][0] == 81);
  CHECK(run_replicas(0, 3, fn).empty());
  CHECK_THROWS_AS(run_replicas(50, 3,
                               [](std::uint64_t r) -> std::vector<double> {
                                 if (r == 17) throw InvariantError("boom");
                                 return {0.0};
                               }),
                  InvariantError);
}

TEST_CASE("Bernoulli crossing estimate") {
  ModelSpec m;
  m.model = SampleModel::bernoulli;
  m.t = 0;
  CHECK(estimate_crossing_prob(m, A(), setup(16, 20)).value == 0);
  m.t = 1;
  auto all = estimate_crossing_prob(m, A(), setup(16, 20));
  CHECK(all.value == 1);
  CHECK(all.stderr_ == 0);

  // Against the sampling oracle on the same configurations.
  m.t = 0.25;
  auto s = setup(16, 300, 11, 2);
  auto est = estimate_crossing_prob(m, A(), s);
  auto D = discretize_domain(s.domain, s.n);
  double hits = 0;
  for (std::uint64_t r = 0; r < s.replicas; ++r) {
    auto c = sample_bernoulli(BernoulliField::constant(D.graph, 0.25), s.seed, r);
    hits += rt::oracle_crosses(rt::chains_of_config(c, 1.0 / 16), A());
  }
  CHECK(est.value == doctest::Approx(hits / s.replicas).epsilon(1e-15));
  CHECK(est.value > 0);
  CHECK(est.value < 1);

  CHECK_THROWS_AS(estimate_crossing_prob(m, square_annulus(0.9, 0.5, 0.125, 0.25), s), PreconditionError);
}

TEST_CASE("symmetric difference of crossing events") {
  WolffOptions w;
  w.burn_in = 10;
  SUBCASE("t = 0") {
    auto e = symdiff_crossing(A(), 0.0, setup(16, 60), w);
    CHECK(e.value == 0);
  }
  SUBCASE("equals the difference of the two crossing frequencies") {
    auto s = setup(16, 200, 5, 2);
    auto sd = symdiff_crossing(A(), -1, s, w);
    ModelSpec trace{SampleModel::coupled_trace, -1, w};
    ModelSpec eta{SampleModel::ising_interface, -1, w};
    double po = estimate_crossing_prob(trace, A(), s).value;
    double pe = estimate_crossing_prob(eta, A(), s).value;
    CHECK(sd.value == doctest::Approx(po - pe).epsilon(1e-12));
    CHECK(sd.value <= po);
  }
  SUBCASE("intensity above t*") {
    CHECK_THROWS_AS(symdiff_crossing(A(), 0.2, setup(16, 1), w), PreconditionError);
  }
}

TEST_CASE("stability gap") {
  WolffOptions w;
  w.burn_in = 10;
  auto s = setup(16, 150, 9, 2);
  std::vector<double> r{0.0, 1.0 / 32, 1.0 / 16, 1.0 / 8};
  auto gap = stability_gap(A(), r, -1, s, w);
  REQUIRE(gap.size() == r.size());
  for (std::size_t i = 1; i < gap.size(); ++i) CHECK(gap[i].value >= gap[i - 1].value);
  CHECK(gap[0].value == doctest::Approx(symdiff_crossing(A(), -1, s, w).value).epsilon(1e-15));
  CHECK_THROWS_AS(stability_gap(A(), {-1.0}, -1, s, w), PreconditionError);
}

TEST_CASE("condition suite") {
  ConditionOptions c;
  WolffOptions w;
  w.burn_in = 10;
  auto rows = condition_suite(c, setup(32, 60), w);
  REQUIRE(rows.size() == 1 + c.eps.size() + 3 * c.r.size());
  CHECK(rows[0].experiment == "H0_markov_tv");
  CHECK(rows[0].value < 1e-12);
  CHECK(rows[1].experiment == "H1_eroded_gap");
  CHECK(rows[1].value == 0);  // eps = 0
  for (std::size_t i = 1 + c.eps.size(); i < rows.size(); i += c.r.size()) {
    CHECK(rows[i].experiment == "H2_boundary_connection");
    CHECK(rows[i].value == 0);  // r = 0
    CHECK(rows[i].value <= rows[i + 1].value);
    CHECK(rows[i + 1].value <= rows[i + 2].value);
  }
  for (int k = 1; k <= 3; ++k) CHECK(markov_property_tv(k) < 1e-12);
  CHECK_THROWS_AS(markov_property_tv(5), PreconditionError);
}

TEST_CASE("CSV output") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(1) == "1");
  CHECK(std::stod(format_double(1.0 / 3)) == 1.0 / 3);
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("q\"x") == "\"q\"\"x\"");
  CHECK(csv_field("plain") == "plain");

  std::vector<Row> rows{{"symdiff", 16, annulus_label(A()), "t=0.5", 0.25, 0.01, 100, 3}};
  auto text = csv_of(rows);
  CHECK(text ==
        "# test\n"
        "experiment,n,annulus,param,value,stderr,replicas,seed\n"
        "symdiff,16,\"[0.375,0.625]x[0.375,0.625]/[0.25,0.75]x[0.25,0.75]\",t=0.5,0.25,0.01,100,3\n");
}

TEST_CASE("results do not depend on the thread count") {
  WolffOptions w;
  w.burn_in = 10;
  ConditionOptions c;
  std::string ref;
  for (unsigned threads : {1u, 3u, 8u}) {
    auto s = setup(16, 40, 13, threads);
    auto rows = condition_suite(c, s, w);
    auto sd = symdiff_crossing(A(), -1, s, w);
    rows.push_back({"symdiff", s.n, annulus_label(A()), "t=t_c", sd.value, sd.stderr_, sd.replicas, s.seed});
    auto text = csv_of(rows);
    if (ref.empty()) ref = text;
    CHECK(text == ref);
  }
}
