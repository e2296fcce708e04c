#include <random>

#include <benchmark/benchmark.h>

#include "fxmot/assign.hpp"
#include "fxmot/sb.hpp"

namespace {

fxmot::QuboProblem random_qubo(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXd q(n, n);
  for (Eigen::Index i = 0; i < q.rows(); ++i) {
    for (Eigen::Index j = 0; j < q.cols(); ++j) q(i, j) = u(rng);
  }
  return fxmot::QuboProblem::from_raw(q);
}

fxmot::SimilarityMatrix random_similarity(std::size_t n_t, std::size_t n_d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  fxmot::SimilarityMatrix s{Eigen::MatrixXd(n_t, n_d)};
  for (Eigen::Index i = 0; i < s.s.rows(); ++i) {
    for (Eigen::Index j = 0; j < s.s.cols(); ++j) s.s(i, j) = u(rng);
  }
  return s;
}

void BM_SolveQubo(benchmark::State& state) {
  const auto p = random_qubo(static_cast<std::size_t>(state.range(0)), 1);
  fxmot::SbParams params;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fxmot::solve_qubo(p, params));
    ++params.seed;
  }
}
BENCHMARK(BM_SolveQubo)->Arg(4)->Arg(16)->Arg(64)->Arg(256);

void BM_BruteForce(benchmark::State& state) {
  const auto p = random_qubo(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(fxmot::brute_force_qubo(p));
}
BENCHMARK(BM_BruteForce)->Arg(8)->Arg(12)->Arg(16)->Arg(20);

void BM_Hungarian(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto s = random_similarity(n, n, 3);
  for (auto _ : state) benchmark::DoNotOptimize(fxmot::hungarian(s));
}
BENCHMARK(BM_Hungarian)->Arg(4)->Arg(16)->Arg(64);

void BM_FlexibleAssign(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto s = random_similarity(n, n, 4);
  const auto solver = fxmot::sb_solver({});
  for (auto _ : state) benchmark::DoNotOptimize(fxmot::flexible_assign(s, solver));
}
BENCHMARK(BM_FlexibleAssign)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
