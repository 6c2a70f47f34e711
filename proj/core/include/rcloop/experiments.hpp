#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "rcloop/annuli.hpp"
#include "rcloop/lattice.hpp"
#include "rcloop/models.hpp"

namespace rcloop {

struct Estimate {
  double value = 0;
  double stderr_ = 0;
  std::uint64_t replicas = 0;
  std::uint64_t seed = 0;
};

// Fixed-shape pairwise summation.
double pairwise_sum(const double* x, std::size_t n);
Estimate summarize(const std::vector<double>& samples, std::uint64_t seed);

// Runs fn(replica) for replica = 0..count-1 on up to `threads` workers
// (0 = hardware concurrency). Each result lands in its own slot, so the
// output is independent of scheduling.
std::vector<std::vector<double>> run_replicas(std::uint64_t count, unsigned threads,
                                              const std::function<std::vector<double>(std::uint64_t)>& fn);

enum class SampleModel { bernoulli, ising_interface, coupled_trace };

struct ModelSpec {
  SampleModel model = SampleModel::ising_interface;
  double t = -1;  // Bernoulli / coupling intensity; < 0 means t_c
  WolffOptions wolff;
};

struct ExperimentSetup {
  DomainSpec domain = DomainSpec::rectangle(0, 0, 1, 1);
  int n = 16;
  std::uint64_t replicas = 1000;
  std::uint64_t seed = 1;
  unsigned threads = 0;
};

std::string annulus_label(const PolyAnnulus& a);

Estimate estimate_crossing_prob(const ModelSpec& m, const PolyAnnulus& a, const ExperimentSetup& s);
// Frequency of {thickened crossing by omega in A} minus-exact-crossing by eta.
// One estimate per radius, all on the same samples.
std::vector<Estimate> stability_gap(const PolyAnnulus& a, const std::vector<double>& r, double t,
                                    const ExperimentSetup& s, const WolffOptions& w = {});
// Frequency of {omega crosses A} \ {eta crosses A}. Throws InvariantError if
// eta crosses while omega does not.
Estimate symdiff_crossing(const PolyAnnulus& a, double t, const ExperimentSetup& s, const WolffOptions& w = {});

struct Row {
  std::string experiment;
  int n = 0;
  std::string annulus;
  std::string param;
  double value = 0;
  double stderr_ = 0;
  std::uint64_t replicas = 0;
  std::uint64_t seed = 0;
};

// Maximum TV, over square sub-discs K of the n_small x n_small disc and
// boundary conditions on D \ K, between the conditional law on K and the
// sourceless law on K.
double markov_property_tv(int n_small);

struct ConditionOptions {
  int n_small = 2;
  std::vector<double> eps{0.0, 1.0 / 32, 1.0 / 16};
  std::vector<double> r{0.0, 1.0 / 32, 1.0 / 16};
  double box_radius = 1.0 / 16;  // R for (H2)
};
std::vector<Row> condition_suite(const ConditionOptions& c, const ExperimentSetup& s, const WolffOptions& w = {});

// CSV with a leading comment line; doubles printed with %.17g, text fields
// quoted when they contain commas or quotes.
std::string csv_field(const std::string& s);
void write_csv(std::ostream& os, const std::string& comment, const std::vector<Row>& rows);
std::string format_double(double v);

}  // namespace rcloop
