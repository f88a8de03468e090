#include <benchmark/benchmark.h>

#include "halfgasket/bvp.hpp"
#include "halfgasket/flux.hpp"
#include "halfgasket/green.hpp"
#include "halfgasket/spectra.hpp"

using namespace halfgasket;
using R = Rational;

namespace {

BoundarySeq<R> symmetric() { return BoundarySeq<R>::geometric(R(1), R(0), R(4, 3), R(3, 5)); }

void BM_SolveRational(benchmark::State& st) {
  const auto d = symmetric();
  for (auto _ : st) benchmark::DoNotOptimize(solve_continuous(d, static_cast<int>(st.range(0))));
}
BENCHMARK(BM_SolveRational)->Arg(8)->Arg(32)->Arg(128);

void BM_SolveDouble(benchmark::State& st) {
  const auto d = BoundarySeq<double>::geometric(1.0, 0.0, 4.0 / 3, 0.6);
  for (auto _ : st) benchmark::DoNotOptimize(solve_continuous(d, static_cast<int>(st.range(0))));
}
BENCHMARK(BM_SolveDouble)->Arg(8)->Arg(32)->Arg(128);

void BM_DtnApply(benchmark::State& st) {
  const auto d = BoundarySeq<double>::geometric(1.0, 0.5, 4.0 / 3, 0.6);
  for (auto _ : st) benchmark::DoNotOptimize(dtn_apply(d, static_cast<int>(st.range(0))));
}
BENCHMARK(BM_DtnApply)->Arg(20)->Arg(40)->Arg(100);

void BM_DtnInvert(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const auto eta = dtn_apply(BoundarySeq<double>::geometric(1.0, 0.5, 4.0 / 3, 0.6), n);
  for (auto _ : st) benchmark::DoNotOptimize(dtn_invert(eta, n));
}
BENCHMARK(BM_DtnInvert)->Arg(20)->Arg(40)->Arg(100);

void BM_DtnRowSumsRational(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(dtn_row_sums<R>(static_cast<int>(st.range(0))));
}
BENCHMARK(BM_DtnRowSumsRational)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_GreenSeries(benchmark::State& st) {
  const auto y = Vertex(Word::parse("01210"), 1);
  for (auto _ : st) benchmark::DoNotOptimize(green_series<R>(x_point(2), y, static_cast<int>(st.range(0))));
}
BENCHMARK(BM_GreenSeries)->Arg(2)->Arg(5)->Arg(8);

void BM_SolvePoisson(benchmark::State& st) {
  const auto f = CellField<R>::constant(R(1));
  for (auto _ : st) benchmark::DoNotOptimize(solve_poisson(f, static_cast<int>(st.range(0)), Domain::sg));
}
BENCHMARK(BM_SolvePoisson)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

void BM_PoissonOracle(benchmark::State& st) {
  const auto f = CellField<R>::constant(R(1));
  for (auto _ : st) benchmark::DoNotOptimize(poisson_graph_oracle(f, static_cast<int>(st.range(0)), Domain::sg));
}
BENCHMARK(BM_PoissonOracle)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

void BM_GraphSpectrum(benchmark::State& st) {
  for (auto _ : st)
    benchmark::DoNotOptimize(graph_spectrum(static_cast<int>(st.range(0)), BoundaryCondition::neumann));
}
BENCHMARK(BM_GraphSpectrum)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
