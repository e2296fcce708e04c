#include <gtest/gtest.h>

#include <random>

#include "fxmot/assign.hpp"
#include "fxmot/errors.hpp"
#include "fxmot/sb.hpp"
#include "test_support.hpp"

using namespace fxmot;
using fxmot::testing::random_qubo;
using fxmot::testing::similarity;

namespace {

IsingProblem single_bias(double h) {
  return {Eigen::MatrixXd::Zero(1, 1), Eigen::VectorXd::Constant(1, h), 0.0};
}

SbState state_of(std::initializer_list<double> x, std::initializer_list<double> y) {
  SbState s;
  s.x = Eigen::VectorXd(static_cast<Eigen::Index>(x.size()));
  s.y = Eigen::VectorXd(static_cast<Eigen::Index>(y.size()));
  Eigen::Index i = 0;
  for (double v : x) s.x[i++] = v;
  i = 0;
  for (double v : y) s.y[i++] = v;
  return s;
}

}  // namespace

TEST(SbParams, DefaultsAndValidation) {
  const SbParams p;
  EXPECT_EQ(p.a0, 1.0);
  EXPECT_EQ(p.c0, 0.8);
  EXPECT_EQ(p.eta, 0.8);
  EXPECT_EQ(p.dt, 0.3);
  EXPECT_EQ(p.n_steps, 400U);
  EXPECT_EQ(p.restarts, 1U);
  EXPECT_NO_THROW(validate(p));

  auto bad = p;
  bad.a0 = 0.0;
  EXPECT_THROW(validate(bad), DomainError);
  bad = p;
  bad.c0 = -1.0;
  EXPECT_THROW(validate(bad), DomainError);
  bad = p;
  bad.dt = 0.0;
  EXPECT_THROW(validate(bad), DomainError);
  bad = p;
  bad.n_steps = 0;
  EXPECT_THROW(validate(bad), DomainError);
  bad = p;
  bad.restarts = 0;
  EXPECT_THROW(validate(bad), DomainError);
}

TEST(PumpAmplitude, LinearAndQuadraticRamps) {
  SbParams p;
  p.a0 = 2.0;
  p.n_steps = 4;
  EXPECT_DOUBLE_EQ(pump_amplitude(p, 0), 0.0);
  EXPECT_DOUBLE_EQ(pump_amplitude(p, 1), 0.5);
  EXPECT_DOUBLE_EQ(pump_amplitude(p, 4), 2.0);
  p.schedule = PumpSchedule::quadratic;
  EXPECT_DOUBLE_EQ(pump_amplitude(p, 2), 0.5);
}

TEST(SbStep, SingleBiasHandEvaluation) {
  const auto next = sb_step(state_of({0.0}, {0.0}), single_bias(-1.0), {});
  EXPECT_NEAR(next.y[0], 0.24, 1e-15);
  EXPECT_NEAR(next.x[0], 0.072, 1e-15);
  EXPECT_EQ(next.k, 1U);
}

TEST(SbStep, HandEvaluationWithCouplingAndDetuning) {
  // Independent evaluation of the update at k = 100 of 400 (a_k = 0.25).
  IsingProblem p{Eigen::MatrixXd(2, 2), Eigen::VectorXd(2), 0.0};
  p.j << 0, 0.5, 0.5, 0;
  p.h << 0.2, -0.4;
  auto s = state_of({0.3, -0.6}, {0.1, 0.05});
  s.k = 100;
  const SbParams params;
  const double y0 = 0.1 + (-(1.0 - 0.25) * 0.3 - 0.8 * 0.2 + 0.8 * 0.5 * -0.6) * 0.3;
  const double y1 = 0.05 + (-(1.0 - 0.25) * -0.6 - 0.8 * -0.4 + 0.8 * 0.5 * 0.3) * 0.3;
  const auto next = sb_step(s, p, params);
  EXPECT_NEAR(next.y[0], y0, 1e-15);
  EXPECT_NEAR(next.y[1], y1, 1e-15);
  EXPECT_NEAR(next.x[0], 0.3 + y0 * 0.3, 1e-15);
  EXPECT_NEAR(next.x[1], -0.6 + y1 * 0.3, 1e-15);
}

TEST(SbStep, WallClampsPositionAndZeroesMomentum) {
  const auto next = sb_step(state_of({1.5}, {0.0}), single_bias(0.0), {});
  EXPECT_EQ(next.x[0], 1.0);
  EXPECT_EQ(next.y[0], 0.0);
  const auto neg = sb_step(state_of({-3.0}, {-1.0}), single_bias(0.0), {});
  EXPECT_EQ(neg.x[0], -1.0);
  EXPECT_EQ(neg.y[0], 0.0);
}

TEST(SbStep, DimensionMismatch) {
  EXPECT_THROW(sb_step(state_of({0.0, 0.0}, {0.0, 0.0}), single_bias(1.0), {}), DimensionError);
}

TEST(SbStep, DoesNotModifyInput) {
  const auto s = state_of({0.2}, {0.3});
  const auto next = sb_step(s, single_bias(-1.0), {});
  EXPECT_EQ(s.x[0], 0.2);
  EXPECT_EQ(s.k, 0U);
  EXPECT_NE(next.x[0], 0.2);
}

TEST(SbProperty, ZeroProblemFromZeroStateNeverMoves) {
  const IsingProblem p{Eigen::MatrixXd::Zero(4, 4), Eigen::VectorXd::Zero(4), 0.0};
  SbState s{Eigen::VectorXd::Zero(4), Eigen::VectorXd::Zero(4), 0};
  const SbParams params;
  for (std::size_t k = 0; k < params.n_steps; ++k) {
    s = sb_step(std::move(s), p, params);
    ASSERT_TRUE(s.x.isZero(0.0));
    ASSERT_TRUE(s.y.isZero(0.0));
  }
}

TEST(SbProperty, NoMomentumNoiseAndNoBiasStaysAtZero) {
  std::mt19937_64 rng(11);
  const auto is = qubo_to_ising(random_qubo(6, rng));
  IsingProblem p = is;
  p.h.setZero();
  SbParams params;
  params.init_momentum = 0.0;
  const auto s0 = initial_state(6, params);
  EXPECT_TRUE(s0.y.isZero(0.0));
  // sign(0) = +1 everywhere
  EXPECT_EQ(solve_ising(p, params), Spins(6, 1));
}

TEST(SbProperty, WallInvariantAfterEveryStep) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 5; ++trial) {
    const auto p = qubo_to_ising(random_qubo(12, rng, -3.0, 3.0));
    SbParams params;
    params.seed = static_cast<std::uint64_t>(trial);
    SbState s = initial_state(12, params);
    for (std::size_t k = 0; k < params.n_steps; ++k) {
      const SbState before = s;
      s = sb_step(std::move(s), p, params);
      ASSERT_LE(s.x.cwiseAbs().maxCoeff(), 1.0);
      for (Eigen::Index i = 0; i < s.x.size(); ++i) {
        // a coordinate pushed past the wall this step must be resting on it with y = 0
        const double free_x = before.x[i] + params.a0 * params.dt *
                                                (before.y[i] + params.dt * ((params.c0 * (p.j * before.x))[i] -
                                                                            (params.a0 - pump_amplitude(params, k)) *
                                                                                before.x[i] -
                                                                            params.eta * p.h[i]));
        if (std::abs(free_x) > 1.0 + 1e-9) {
          ASSERT_EQ(std::abs(s.x[i]), 1.0);
          ASSERT_EQ(s.y[i], 0.0);
        }
      }
    }
  }
}

TEST(SbProperty, DeterministicForFixedSeed) {
  std::mt19937_64 rng(13);
  const auto p = qubo_to_ising(random_qubo(16, rng));
  SbParams params;
  params.seed = 99;
  EXPECT_EQ(solve_ising(p, params), solve_ising(p, params));
  const auto a = initial_state(16, params);
  const auto b = initial_state(16, params);
  EXPECT_EQ(a.y, b.y);
  params.seed = 100;
  EXPECT_NE(initial_state(16, params).y, a.y);
}

TEST(SbProperty, InitialMomentumWithinRange) {
  SbParams params;
  params.seed = 5;
  const auto s = initial_state(1000, params);
  EXPECT_TRUE(s.x.isZero(0.0));
  EXPECT_LE(s.y.cwiseAbs().maxCoeff(), params.init_momentum);
  EXPECT_GT(s.y.cwiseAbs().maxCoeff(), 0.0);
}

TEST(SolveIsing, SingleSpinFollowsBias) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    SbParams params;
    params.seed = seed;
    EXPECT_EQ(solve_ising(single_bias(-1.0), params), Spins{1});
    EXPECT_EQ(solve_ising(single_bias(1.0), params), Spins{-1});
  }
}

TEST(SolveIsing, FerromagnetReachesGroundPair) {
  IsingProblem p{Eigen::MatrixXd(2, 2), Eigen::VectorXd::Zero(2), 0.0};
  p.j << 0, 1, 1, 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    SbParams params;
    params.seed = seed;
    const auto s = solve_ising(p, params);
    EXPECT_EQ(s[0], s[1]);
    EXPECT_DOUBLE_EQ(ising_energy(p, s), -1.0);
  }
}

TEST(SolveIsing, RestartsNeverWorseThanFirstRun) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = qubo_to_ising(random_qubo(12, rng));
    SbParams one;
    one.seed = static_cast<std::uint64_t>(trial);
    SbParams many = one;
    many.restarts = 4;
    EXPECT_LE(ising_energy(p, solve_ising(p, many)), ising_energy(p, solve_ising(p, one)) + 1e-12);
  }
}

TEST(SolveQubo, SingleVariable) {
  const auto sol = solve_qubo(QuboProblem{Eigen::MatrixXd::Constant(1, 1, -2.5)}, {});
  EXPECT_EQ(sol.bits, Bits{1});
  EXPECT_DOUBLE_EQ(sol.energy, -2.5);
}

TEST(SolveQubo, ZeroProblem) {
  const auto sol = solve_qubo(QuboProblem{Eigen::MatrixXd::Zero(2, 2)}, {});
  EXPECT_EQ(sol.bits.size(), 2U);
  EXPECT_EQ(sol.energy, 0.0);
}

TEST(SolveQubo, TwoTrackersOneDetectionSmallPenalty) {
  const auto aq = build_assignment_qubo(similarity({{0.8}, {0.7}}), 0.1);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    SbParams params;
    params.seed = seed;
    const auto sol = solve_qubo(aq.qubo, params);
    EXPECT_EQ(sol.bits, (Bits{1, 1}));
    // QUBO-side energy; adding the dropped penalty constant gives the full cost -1.4
    EXPECT_NEAR(sol.energy, -1.5, 1e-12);
    EXPECT_NEAR(sol.energy + aq.dropped_constant, -1.4, 1e-12);
  }
}

TEST(SolveQubo, EnergyEqualsQuboEnergyOfBits) {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = random_qubo(8, rng);
    SbParams params;
    params.seed = static_cast<std::uint64_t>(trial);
    const auto sol = solve_qubo(p, params);
    EXPECT_DOUBLE_EQ(sol.energy, qubo_energy(p, sol.bits));
    EXPECT_GE(sol.energy, brute_force_qubo(p).energy - 1e-9);
  }
}

TEST(SbQuality, RandomTenVariableInstances) {
  std::mt19937_64 rng(2024);
  int hits = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = random_qubo(10, rng);
    SbParams params;
    params.seed = static_cast<std::uint64_t>(trial);
    if (std::abs(solve_qubo(p, params).energy - brute_force_qubo(p).energy) <= 1e-9) ++hits;
  }
  EXPECT_GE(hits, 90);
}

TEST(SbQuality, RandomSixteenVariableInstances) {
  std::mt19937_64 rng(2025);
  int hits = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = random_qubo(1 + trial % 16, rng);
    SbParams params;
    params.seed = static_cast<std::uint64_t>(trial);
    const auto sol = solve_qubo(p, params);
    const auto best = brute_force_qubo(p);
    ASSERT_GE(sol.energy, best.energy - 1e-9);
    if (std::abs(sol.energy - best.energy) <= 1e-9) ++hits;
  }
  EXPECT_GE(hits, 180);
}
