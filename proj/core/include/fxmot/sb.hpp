#pragma once

// Ballistic simulated bifurcation (bSB) for the Ising problem
//   minimize  -1/2 sum_ij J_ij s_i s_j + sum_i h_i s_i.
//
// One step k -> k+1 for every oscillator i:
//   y_i += [-(a0 - a_k) x_i - eta h_i + c0 sum_j J_ij x_j] dt
//   x_i += a0 y_i dt
//   if |x_i| > 1:  x_i = sign(x_i), y_i = 0        (perfectly inelastic wall)
// After n_steps the spins are sign(x_i), with sign(0) = +1.
//
// Randomness: std::mt19937_64 seeded with `seed`; initial momenta are drawn in index
// order from std::uniform_real_distribution(-init_momentum, init_momentum). Restart r
// continues the same stream.

#include <cstddef>
#include <cstdint>

#include "fxmot/ising.hpp"

namespace fxmot {

enum class PumpSchedule {
  linear,     // a_k = a0 * k / n_steps
  quadratic,  // a_k = a0 * (k / n_steps)^2
};

struct SbParams {
  double a0 = 1.0;
  double c0 = 0.8;
  double eta = 0.8;
  double dt = 0.3;
  std::size_t n_steps = 400;
  std::uint64_t seed = 0;
  double init_momentum = 0.1;
  std::size_t restarts = 1;  // best-of-N by Ising energy; ties keep the earliest
  PumpSchedule schedule = PumpSchedule::linear;
};

// Throws DomainError when a parameter is out of range.
void validate(const SbParams& params);

struct SbState {
  Eigen::VectorXd x;
  Eigen::VectorXd y;
  std::size_t k = 0;
};

double pump_amplitude(const SbParams& params, std::size_t k);

SbState initial_state(std::size_t n, const SbParams& params);

SbState sb_step(SbState state, const IsingProblem& p, const SbParams& params);

Spins solve_ising(const IsingProblem& p, const SbParams& params);

// Converts, solves and maps back. The energy is measured on the QUBO side.
QuboSolution solve_qubo(const QuboProblem& p, const SbParams& params);

}  // namespace fxmot
