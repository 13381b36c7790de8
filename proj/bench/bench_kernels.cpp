#include <benchmark/benchmark.h>

#include <map>

#include "bpt/kernels.hpp"
#include "bpt/metrics.hpp"
#include "bpt/tokenizer.hpp"
#include "fixtures.hpp"

using namespace bpt;

namespace {

const PointCloud& cloud(std::size_t n, std::uint64_t seed) {
  static std::map<std::pair<std::size_t, std::uint64_t>, PointCloud> cache;
  auto it = cache.find({n, seed});
  if (it == cache.end()) it = cache.emplace(std::pair{n, seed}, sample_surface(fixtures::icosphere(3), n, seed)).first;
  return it->second;
}

const std::vector<QuantizedVertex>& stream() {
  static const auto s = bpt_emission_stream(encode(prepare_mesh(fixtures::icosphere(4)), BptConfig{}));
  return s;
}

template <auto Kernel>
void nearest(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const PointCloud& a = cloud(n, 1);
  const PointCloud& b = cloud(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(a.points, b.points));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * n));
}

template <auto Kernel>
void avd(benchmark::State& state) {
  const auto t = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(stream(), t));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(stream().size() * t));
}

}  // namespace

BENCHMARK(nearest<kernels::serial::nearest_distances>)->Name("nearest/serial")->Arg(1024)->Arg(4096)->Arg(16384);
BENCHMARK(nearest<kernels::omp::nearest_distances>)->Name("nearest/omp")->Arg(1024)->Arg(4096)->Arg(16384)->UseRealTime();
BENCHMARK(avd<kernels::serial::avd_terms>)->Name("avd/serial")->Arg(8)->Arg(32)->Arg(128);
BENCHMARK(avd<kernels::omp::avd_terms>)->Name("avd/omp")->Arg(8)->Arg(32)->Arg(128)->UseRealTime();

BENCHMARK_MAIN();
