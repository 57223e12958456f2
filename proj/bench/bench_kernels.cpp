// Serial reference implementations against the OpenMP kernels.
// Thread counts come from the benchmark argument; run with --benchmark_filter to pick a kernel.
#include <benchmark/benchmark.h>

#include "mixsum/counting.hpp"
#include "mixsum/primality.hpp"
#include "mixsum/verifier.hpp"

using namespace mixsum;

namespace {

constexpr std::uint64_t kSieveLo = 1000000000000ull;
constexpr std::uint64_t kSieveLen = 1ull << 26;

void BM_SieveReference(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sieve_range_reference(kSieveLo, kSieveLo + kSieveLen));
  state.SetItemsProcessed(state.iterations() * kSieveLen);
}
BENCHMARK(BM_SieveReference)->Unit(benchmark::kMillisecond);

void BM_SieveParallel(benchmark::State& state) {
  SieveConfig cfg;
  cfg.workers = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sieve_range(kSieveLo, kSieveLo + kSieveLen, cfg).count());
  state.SetItemsProcessed(state.iterations() * kSieveLen);
}
BENCHMARK(BM_SieveParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_VerifySerial(benchmark::State& state) {
  const Form f = builtin_form("pFF");
  for (auto _ : state) benchmark::DoNotOptimize(verify_range_serial(f, 5, 200001).verified_count);
  state.SetItemsProcessed(state.iterations() * 200000);
}
BENCHMARK(BM_VerifySerial)->Unit(benchmark::kMillisecond);

void BM_VerifyParallel(benchmark::State& state) {
  const Form f = builtin_form("pFF");
  RunPolicy p;
  p.workers = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_range(f, 5, 200001, p).verified_count);
  state.SetItemsProcessed(state.iterations() * 200000);
}
BENCHMARK(BM_VerifyParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_CountSerial(benchmark::State& state) {
  const Form f = builtin_form("pP2P_count");
  const BigInt n = pow_ui(10, 200) + 33;
  for (auto _ : state) benchmark::DoNotOptimize(representation_count_serial(f, n).r);
}
BENCHMARK(BM_CountSerial)->Unit(benchmark::kMillisecond);

void BM_CountParallel(benchmark::State& state) {
  const Form f = builtin_form("pP2P_count");
  const BigInt n = pow_ui(10, 200) + 33;
  CountPolicy p;
  p.workers = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(representation_count(f, n, p).r);
}
BENCHMARK(BM_CountParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
