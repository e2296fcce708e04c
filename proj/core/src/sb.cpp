#include "fxmot/sb.hpp"

#include <cmath>
#include <random>
#include <string>

#include "fxmot/errors.hpp"

namespace fxmot {

namespace {

void check_dimensions(const SbState& state, const IsingProblem& p) {
  const auto n = static_cast<Eigen::Index>(p.n());
  if (p.j.rows() != n || p.j.cols() != n) {
    throw DimensionError("coupling matrix does not match bias length " + std::to_string(n));
  }
  if (state.x.size() != n || state.y.size() != n) {
    throw DimensionError("SB state size does not match problem size " + std::to_string(n));
  }
}

// In-place step; the public sb_step() copies.
void advance(SbState& s, const IsingProblem& p, const SbParams& params) {
  const double detuning = params.a0 - pump_amplitude(params, s.k);
  s.y.noalias() += params.dt * (params.c0 * (p.j * s.x) - detuning * s.x - params.eta * p.h);
  s.x.noalias() += (params.a0 * params.dt) * s.y;
  for (Eigen::Index i = 0; i < s.x.size(); ++i) {
    if (std::abs(s.x[i]) > 1.0) {
      s.x[i] = s.x[i] > 0.0 ? 1.0 : -1.0;
      s.y[i] = 0.0;
    }
  }
  ++s.k;
}

Spins digitize(const Eigen::VectorXd& x) {
  Spins spins(static_cast<std::size_t>(x.size()));
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    spins[static_cast<std::size_t>(i)] = x[i] >= 0.0 ? 1 : -1;
  }
  return spins;
}

SbState draw_state(std::size_t n, const SbParams& params, std::mt19937_64& rng) {
  SbState s;
  s.x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  s.y = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  if (params.init_momentum > 0.0) {
    std::uniform_real_distribution<double> noise(-params.init_momentum, params.init_momentum);
    for (std::size_t i = 0; i < n; ++i) s.y[static_cast<Eigen::Index>(i)] = noise(rng);
  }
  return s;
}

}  // namespace

void validate(const SbParams& params) {
  if (!(params.a0 > 0.0)) throw DomainError("a0 must be positive");
  if (!(params.c0 > 0.0)) throw DomainError("c0 must be positive");
  if (!(params.eta >= 0.0)) throw DomainError("eta must be non-negative");
  if (!(params.dt > 0.0)) throw DomainError("dt must be positive");
  if (params.n_steps < 1) throw DomainError("n_steps must be at least 1");
  if (params.restarts < 1) throw DomainError("restarts must be at least 1");
  if (!(params.init_momentum >= 0.0)) throw DomainError("init_momentum must be non-negative");
}

double pump_amplitude(const SbParams& params, std::size_t k) {
  const double progress = static_cast<double>(k) / static_cast<double>(params.n_steps);
  switch (params.schedule) {
    case PumpSchedule::quadratic:
      return params.a0 * progress * progress;
    case PumpSchedule::linear:
      break;
  }
  return params.a0 * progress;
}

SbState initial_state(std::size_t n, const SbParams& params) {
  std::mt19937_64 rng(params.seed);
  return draw_state(n, params, rng);
}

SbState sb_step(SbState state, const IsingProblem& p, const SbParams& params) {
  check_dimensions(state, p);
  advance(state, p, params);
  return state;
}

Spins solve_ising(const IsingProblem& p, const SbParams& params) {
  validate(params);
  const auto n = p.n();
  std::mt19937_64 rng(params.seed);

  Spins best;
  double best_energy = 0.0;
  for (std::size_t r = 0; r < params.restarts; ++r) {
    SbState s = draw_state(n, params, rng);
    check_dimensions(s, p);
    for (std::size_t k = 0; k < params.n_steps; ++k) advance(s, p, params);
    Spins spins = digitize(s.x);
    if (params.restarts == 1) return spins;
    const double e = ising_energy(p, spins);
    if (best.empty() || e < best_energy) {
      best = std::move(spins);
      best_energy = e;
    }
  }
  return best;
}

QuboSolution solve_qubo(const QuboProblem& p, const SbParams& params) {
  const IsingProblem ising = qubo_to_ising(p);
  QuboSolution out;
  out.bits = spins_to_bits(solve_ising(ising, params));
  out.energy = qubo_energy(p, out.bits);
  return out;
}

}  // namespace fxmot
