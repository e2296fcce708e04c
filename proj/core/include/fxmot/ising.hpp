#pragma once

// Binary quadratic problem encodings.
//
//   QUBO:   H(b) = sum_ij Q_ij b_i b_j,               b_i in {0, 1}
//   Ising:  H(s) = -1/2 sum_ij J_ij s_i s_j + sum_i h_i s_i,   s_i in {-1, +1}
//
// qubo_to_ising() uses s = 2b - 1 and keeps the constant term in `offset`, so that
// qubo_energy(p, b) == ising_energy(qubo_to_ising(p), 2b - 1) + offset holds exactly.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace fxmot {

using Bits = std::vector<std::uint8_t>;
using Spins = std::vector<std::int8_t>;

struct QuboProblem {
  Eigen::MatrixXd q;  // always symmetric; use from_raw() to build from arbitrary coefficients

  std::size_t n() const { return static_cast<std::size_t>(q.rows()); }

  // (Q + Q^T) / 2. Leaves every energy unchanged.
  static QuboProblem from_raw(const Eigen::MatrixXd& raw);
};

struct IsingProblem {
  Eigen::MatrixXd j;  // symmetric, zero diagonal
  Eigen::VectorXd h;
  double offset = 0.0;

  std::size_t n() const { return static_cast<std::size_t>(h.size()); }
};

struct QuboSolution {
  Bits bits;
  double energy = 0.0;
};

double qubo_energy(const QuboProblem& p, std::span<const std::uint8_t> bits);

// Offset is not included; add p.offset to compare against the source QUBO.
double ising_energy(const IsingProblem& p, std::span<const std::int8_t> spins);

IsingProblem qubo_to_ising(const QuboProblem& p);

Spins bits_to_spins(std::span<const std::uint8_t> bits);
Bits spins_to_bits(std::span<const std::int8_t> spins);

inline constexpr std::size_t kBruteForceMaxVariables = 24;

// Exhaustive minimum. Ties (within 1e-9) go to the lowest integer value of the bit
// vector read with b_0 as the most significant bit. Throws CapacityError for n > 24.
QuboSolution brute_force_qubo(const QuboProblem& p);

// Text format: first token `n`, then `i j value` triples (0-based); missing entries are
// zero, repeated entries accumulate, and the result is symmetrized.
QuboProblem read_qubo(std::istream& in);
void write_qubo(std::ostream& out, const QuboProblem& p);

}  // namespace fxmot
