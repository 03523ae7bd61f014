// Serial reference vs OpenMP kernels on fabrics larger than the reference one.
//   ./bench_kernels --benchmark_filter=Summary

#include <benchmark/benchmark.h>

#include "owcpon/kernels.hpp"

using namespace owcpon;

namespace {

// racks = 4 * arg, 16 servers per rack, two groups.
NetworkGraph scaled_fabric(std::int64_t scale) {
  OwcPonSpec s;
  s.num_racks = static_cast<std::uint32_t>(4 * scale);
  s.num_groups = 2;
  s.aps_per_group = s.num_racks / 2;
  s.servers_per_rack = 16;
  return build_owc_pon(s);
}

template <bool Parallel>
void Summary(benchmark::State& state) {
  const auto g = scaled_fabric(state.range(0));
  for (auto _ : state) {
    auto h = Parallel ? parallel::all_pairs_summary(g, {}) : serial::all_pairs_summary(g, {});
    benchmark::DoNotOptimize(h);
  }
  const auto n = static_cast<std::int64_t>(g.servers().size());
  state.SetItemsProcessed(state.iterations() * n * n);
}

template <bool Parallel>
void Assign(benchmark::State& state) {
  const auto g = scaled_fabric(state.range(0));
  const auto tm = generate_traffic(TrafficPattern::uniform(Rational(1, 7)), g);
  for (auto _ : state) {
    auto r = Parallel ? parallel::assign(g, tm, {}) : serial::assign(g, tm, {});
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(tm.size()));
}

template <bool Parallel>
void Sweep(benchmark::State& state) {
  SweepFamily fam;
  for (std::uint32_t r = 4; r <= 4 * static_cast<std::uint32_t>(state.range(0)); r += 4) {
    fam.racks.push_back(r);
  }
  fam.groups = {1, 2, 4};
  fam.servers_per_rack = {8, 16};
  for (auto _ : state) {
    auto pts = Parallel ? parallel::scaling_sweep(fam, {}, {}) : serial::scaling_sweep(fam, {}, {});
    benchmark::DoNotOptimize(pts);
  }
}

}  // namespace

BENCHMARK(Summary<false>)->Name("Summary/serial")->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(Summary<true>)->Name("Summary/parallel")->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(Assign<false>)->Name("Assign/serial")->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(Assign<true>)->Name("Assign/parallel")->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(Sweep<false>)->Name("Sweep/serial")->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(Sweep<true>)->Name("Sweep/parallel")->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
