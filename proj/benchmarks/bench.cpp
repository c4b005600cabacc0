#include <benchmark/benchmark.h>

#include "lyalasso/gram.hpp"
#include "lyalasso/irrep.hpp"
#include "lyalasso/lasso.hpp"
#include "lyalasso/linalg.hpp"
#include "lyalasso/rng.hpp"
#include "lyalasso/simulate.hpp"

namespace {

using namespace lyalasso;

Matrix stable_drift(int p) {
  return sample_stable_dominant(p, 0.3, RngSeed{7, static_cast<std::uint64_t>(p)});
}

void bm_solve_lyapunov(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const Matrix m = stable_drift(p);
  const Matrix c = 2.0 * Matrix::Identity(p, p);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_lyapunov(m, c));
  }
}
BENCHMARK(bm_solve_lyapunov)->Arg(5)->Arg(10)->Arg(20)->Arg(40);

void bm_build_gram(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const Matrix m = stable_drift(p);
  const Matrix sigma = solve_lyapunov(m, 2.0 * Matrix::Identity(p, p));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_gram(sigma));
  }
}
BENCHMARK(bm_build_gram)->Arg(5)->Arg(10)->Arg(20)->Arg(40);

void bm_solve_lasso(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const Matrix m = stable_drift(p);
  const Matrix c = 2.0 * Matrix::Identity(p, p);
  const GramSystem sys = make_gram_system(solve_lyapunov(m, c), c);
  const double lambda = 0.05 * sys.g.lpNorm<Eigen::Infinity>();
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_lasso(sys, lambda));
  }
}
BENCHMARK(bm_solve_lasso)->Arg(5)->Arg(10)->Arg(20);

void bm_fit_path(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const Matrix m = stable_drift(p);
  const Matrix c = 2.0 * Matrix::Identity(p, p);
  const GramSystem sys = make_gram_system(solve_lyapunov(m, c), c);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit_path(sys, 50, 1e4));
  }
}
BENCHMARK(bm_fit_path)->Arg(5)->Arg(10);

void bm_irrep_constant(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const Matrix m = stable_drift(p);
  const Matrix c = 2.0 * Matrix::Identity(p, p);
  for (auto _ : state) {
    benchmark::DoNotOptimize(irrep_constant(m, c));
  }
}
BENCHMARK(bm_irrep_constant)->Arg(5)->Arg(10)->Arg(20);

}  // namespace

BENCHMARK_MAIN();
