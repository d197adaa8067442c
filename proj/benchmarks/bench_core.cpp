#include <benchmark/benchmark.h>

#include <Eigen/Dense>

#include "flowcap/matrix_exp.hpp"
#include "flowcap/rng.hpp"
#include "flowcap/schemes.hpp"
#include "flowcap/universality.hpp"

using namespace flowcap;

namespace {

Eigen::MatrixXd rotation_generator(int d) {
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i + 1 < d; ++i) {
    A(i, i + 1) = 0.5 + 0.1 * i;
    A(i + 1, i) = -(0.5 + 0.1 * i);
  }
  return A;
}

void BM_matrix_exp(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const Eigen::MatrixXd A = rotation_generator(d);
  for (auto _ : state) benchmark::DoNotOptimize(matrix_exp(A));
}
BENCHMARK(BM_matrix_exp)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_rk4_flow(benchmark::State& state) {
  const auto f = VectorField::named(NamedField::PermuteRelu, 2);
  const Eigen::Vector2d x(0.3, -0.7);
  const IntegratorConfig cfg{static_cast<int>(state.range(0)), 1e6};
  for (auto _ : state) benchmark::DoNotOptimize(flow_numeric(f, 1.0, x, cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_rk4_flow)->Arg(100)->Arg(1000);

void BM_lie_trotter(benchmark::State& state) {
  const long n = state.range(0);
  Eigen::MatrixXd A(2, 2);
  A << 0, 1, -1, 0;
  const auto f1 = VectorField::affine(A, Eigen::Vector2d::Zero());
  const auto f2 = VectorField::constant(Eigen::Vector2d(1, 0));
  const Eigen::Vector2d x(0.5, 0.5);
  for (auto _ : state)
    benchmark::DoNotOptimize(lie_trotter({{1.0, f1}, {1.0, f2}}, 1.0, n, x));
}
BENCHMARK(BM_lie_trotter)->Arg(16)->Arg(256);

void BM_span_certificate(benchmark::State& state) {
  const auto f = VectorField::named(NamedField::SinSum, 2);
  const Eigen::MatrixXd X =
      omega_n_configuration(static_cast<int>(state.range(0)), 2, 1);
  for (auto _ : state)
    benchmark::DoNotOptimize(span_certificate(
        f, SampledFamily::Diag, X, 8 * static_cast<int>(X.rows()), 1));
}
BENCHMARK(BM_span_certificate)->Arg(3)->Arg(6);

void BM_interpolate(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>> data;
  SeededRng rng(5);
  for (int i = 0; i < N; ++i) {
    Eigen::Vector2d x(rng.uniform(-2, 2), rng.uniform(-2, 2));
    Eigen::Vector2d y(rng.uniform(-2, 2), rng.uniform(-2, 2));
    data.emplace_back(x, y);
  }
  const InterpolationProblem problem(data, 1e-6);
  for (auto _ : state)
    benchmark::DoNotOptimize(interpolate(problem, InterpolationFamily::AssRelu));
}
BENCHMARK(BM_interpolate)->Arg(3)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
