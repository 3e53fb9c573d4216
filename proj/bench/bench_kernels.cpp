// Serial reference against the OpenMP path for the hot kernels, plus the
// end-to-end Monte Carlo depth of a whole sample.

#include <benchmark/benchmark.h>

#include "fdepth/depth.hpp"
#include "fdepth/rng.hpp"
#include "fdepth/simgen.hpp"

using namespace fdepth;
using kernels::Exec;

namespace {

RowMatrix noise(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  RowMatrix x(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    CounterRng rng(seed, static_cast<std::uint64_t>(i));
    for (Eigen::Index j = 0; j < cols; ++j) x(i, j) = rng.normal();
  }
  return x;
}

Exec exec_of(const benchmark::State& state) { return state.range(0) == 0 ? Exec::serial : Exec::parallel; }

void label(benchmark::State& state) { state.SetLabel(state.range(0) == 0 ? "serial" : "parallel"); }

void BM_SecondMoment(benchmark::State& state) {
  const RowMatrix x = noise(500, 201, 1);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::second_moment(x, exec_of(state)));
  label(state);
}
BENCHMARK(BM_SecondMoment)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ProjectRows(benchmark::State& state) {
  const RowMatrix x = noise(2000, 201, 2);
  const RowMatrix basis = noise(40, 201, 3);
  const std::vector<double> w(201, 1.0 / 200.0);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::project_rows(x, w, basis, exec_of(state)));
  label(state);
}
BENCHMARK(BM_ProjectRows)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ReconstructRows(benchmark::State& state) {
  const RowMatrix coeffs = noise(5000, 40, 4);
  const RowMatrix basis = noise(40, 201, 5);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::reconstruct_rows(coeffs, basis, exec_of(state)));
  label(state);
}
BENCHMARK(BM_ReconstructRows)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_BootstrapReference(benchmark::State& state) {
  const CoefficientMatrix c{noise(100, 40, 6), nullptr};
  for (auto _ : state) benchmark::DoNotOptimize(bootstrap_reference(c, 20000, 7, exec_of(state)));
  label(state);
}
BENCHMARK(BM_BootstrapReference)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_DepthDerivativeCriterion(benchmark::State& state) {
  const auto s = sim::brownian_bridge_laplace_sample(Grid::unit(201), 200, 1000, 8).sample;
  const auto model = fit_model(s);
  DepthOptions o;
  o.N = 2000;
  o.exec = exec_of(state);
  for (auto _ : state) {
    const DepthScorer scorer(model, s, Criterion::derivative_lp(1, 2), model.center, o);
    benchmark::DoNotOptimize(scorer.score_all(s));
  }
  label(state);
}
BENCHMARK(BM_DepthDerivativeCriterion)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
