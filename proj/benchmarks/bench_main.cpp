#include <benchmark/benchmark.h>

#include <memory>

#include "rcloop/annuli.hpp"
#include "rcloop/experiments.hpp"
#include "rcloop/loopdecomp.hpp"
#include "rcloop/loopmetric.hpp"
#include "rcloop/models.hpp"

using namespace rcloop;

namespace {

std::shared_ptr<const DiscreteDisc> disc(int n) { return std::make_shared<const DiscreteDisc>(square_disc(n, n)); }

void BM_WolffSample(benchmark::State& st) {
  auto D = disc(static_cast<int>(st.range(0)));
  std::uint64_t r = 0;
  for (auto _ : st) benchmark::DoNotOptimize(sample_ising_plus(D, 1, r++));
}
BENCHMARK(BM_WolffSample)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_Decompose(benchmark::State& st) {
  auto D = disc(static_cast<int>(st.range(0)));
  Config k = interface_of(sample_ising_plus(D, 2, 0));
  for (auto _ : st) benchmark::DoNotOptimize(decompose(k, *D));
}
BENCHMARK(BM_Decompose)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMicrosecond);

void BM_Crosses(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  auto D = disc(n);
  auto a = square_annulus(0.5, 0.5, 0.125, 0.25);
  auto s = LatticeSet::from_config(sample_bernoulli(BernoulliField::constant(D->graph, 0.5), 3, 0));
  for (auto _ : st) benchmark::DoNotOptimize(crosses(s, a));
}
BENCHMARK(BM_Crosses)->Arg(16)->Arg(64)->Unit(benchmark::kMicrosecond);

void BM_Fingerprint(benchmark::State& st) {
  auto D = disc(32);
  Config k = interface_of(sample_ising_plus(D, 4, 0));
  for (auto _ : st) benchmark::DoNotOptimize(fingerprint(k, static_cast<int>(st.range(0))));
}
BENCHMARK(BM_Fingerprint)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_CollectionDistance(benchmark::State& st) {
  auto D = disc(16);
  auto a = to_collection(decompose(interface_of(sample_ising_plus(D, 5, 0)), *D));
  auto b = to_collection(decompose(interface_of(sample_ising_plus(D, 5, 1)), *D));
  for (auto _ : st) benchmark::DoNotOptimize(collection_distance(a, b));
}
BENCHMARK(BM_CollectionDistance)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
