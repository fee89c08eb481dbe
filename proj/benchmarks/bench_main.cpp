#include <random>

#include <benchmark/benchmark.h>

#include "wavedg/dg1d.hpp"
#include "wavedg/dg2d.hpp"
#include "wavedg/timeint.hpp"

namespace {

Eigen::VectorXd random_state(Eigen::Index n) {
  std::mt19937 gen(7);
  std::normal_distribution<double> d;
  Eigen::VectorXd w(n);
  for (Eigen::Index i = 0; i < n; ++i) w(i) = d(gen);
  return w;
}

// Args: q, n.
void BM_apply_1d(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0)), n = static_cast<int>(state.range(1));
  const auto op = wavedg::assemble_staggered_1d(wavedg::StaggeredMesh1D::build(-1.0, 1.0, n, true), q, q - 1, {}, 1.0);
  const Eigen::VectorXd w = random_state(op.size());
  for (auto _ : state) benchmark::DoNotOptimize(op.apply(w, 0.0));
  state.counters["dofs"] = static_cast<double>(op.size());
}
BENCHMARK(BM_apply_1d)->Args({4, 160})->Args({14, 40})->Args({27, 20});

void BM_apply_2d(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0)), n = static_cast<int>(state.range(1));
  const auto op = wavedg::assemble_staggered_2d(wavedg::StaggeredMesh2D::build(n), q, q, {}, wavedg::quadratic_speed());
  const Eigen::VectorXd w = random_state(op.size());
  for (auto _ : state) benchmark::DoNotOptimize(op.apply(w, 0.0));
  state.counters["dofs"] = static_cast<double>(op.size());
}
BENCHMARK(BM_apply_2d)->Args({2, 32})->Args({3, 16})->Args({7, 10})->Unit(benchmark::kMicrosecond);

void BM_taylor_step_2d(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0)), n = static_cast<int>(state.range(1));
  const auto op = wavedg::assemble_staggered_2d(wavedg::StaggeredMesh2D::build(n), q, q, {}, wavedg::quadratic_speed());
  const wavedg::TaylorScheme scheme{q + 1, 0.1 * 2.0 / n};
  Eigen::VectorXd w = random_state(op.size());
  for (auto _ : state) w = wavedg::taylor_step(op, w, 0.0, scheme);
  state.counters["dofs"] = static_cast<double>(op.size());
}
BENCHMARK(BM_taylor_step_2d)->Args({3, 16})->Args({7, 10})->Unit(benchmark::kMillisecond);

void BM_lts_step_2d(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0)), n = static_cast<int>(state.range(1));
  const auto op = wavedg::assemble_staggered_2d(wavedg::StaggeredMesh2D::build(n), q, q, {}, wavedg::quadratic_speed());
  const auto lts = wavedg::make_lts_config(op, 3, q + 1, q + 1);
  Eigen::VectorXd w = random_state(op.size());
  for (auto _ : state) w = wavedg::lts_step(op, w, 0.0, 0.1 * 2.0 / n, lts);
  state.counters["dofs"] = static_cast<double>(op.size());
}
BENCHMARK(BM_lts_step_2d)->Args({3, 16})->Args({7, 10})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
