#include "fxmot/ising.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "fxmot/errors.hpp"

namespace fxmot {

namespace {

constexpr double kTieTolerance = 1e-9;

void require_square(const Eigen::MatrixXd& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw DimensionError(std::string(what) + " must be square");
  }
}

// Integer key of a bit vector with bits[0] as the most significant bit.
std::uint64_t lexicographic_key(const Bits& bits) {
  std::uint64_t key = 0;
  for (auto b : bits) key = (key << 1) | b;
  return key;
}

}  // namespace

QuboProblem QuboProblem::from_raw(const Eigen::MatrixXd& raw) {
  require_square(raw, "QUBO coefficient matrix");
  QuboProblem p;
  p.q = 0.5 * (raw + raw.transpose());
  return p;
}

double qubo_energy(const QuboProblem& p, std::span<const std::uint8_t> bits) {
  const auto n = p.n();
  if (bits.size() != n) {
    throw DimensionError("bit vector length " + std::to_string(bits.size()) +
                         " does not match QUBO size " + std::to_string(n));
  }
  double energy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!bits[i]) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (bits[j]) energy += p.q(i, j);
    }
  }
  return energy;
}

double ising_energy(const IsingProblem& p, std::span<const std::int8_t> spins) {
  const auto n = p.n();
  if (spins.size() != n) {
    throw DimensionError("spin vector length " + std::to_string(spins.size()) +
                         " does not match Ising size " + std::to_string(n));
  }
  Eigen::VectorXd s(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (spins[i] != 1 && spins[i] != -1) {
      throw DomainError("spin " + std::to_string(i) + " is " + std::to_string(spins[i]) +
                        ", expected -1 or +1");
    }
    s[static_cast<Eigen::Index>(i)] = spins[i];
  }
  return -0.5 * s.dot(p.j * s) + p.h.dot(s);
}

IsingProblem qubo_to_ising(const QuboProblem& p) {
  require_square(p.q, "QUBO coefficient matrix");
  IsingProblem ising;
  ising.j = -0.5 * p.q;
  ising.j.diagonal().setZero();
  ising.h = 0.5 * p.q.rowwise().sum();
  // sum_ij Q_ij (s_i+1)(s_j+1)/4 leaves sum(Q)/4 as a constant, and the diagonal
  // s_i^2 = 1 contributes another trace(Q)/4.
  ising.offset = 0.25 * p.q.sum() + 0.25 * p.q.trace();
  return ising;
}

Spins bits_to_spins(std::span<const std::uint8_t> bits) {
  Spins s(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) s[i] = bits[i] ? 1 : -1;
  return s;
}

Bits spins_to_bits(std::span<const std::int8_t> spins) {
  Bits b(spins.size());
  for (std::size_t i = 0; i < spins.size(); ++i) b[i] = spins[i] > 0 ? 1 : 0;
  return b;
}

QuboSolution brute_force_qubo(const QuboProblem& p) {
  const auto n = p.n();
  if (n > kBruteForceMaxVariables) {
    throw CapacityError("brute force limited to " + std::to_string(kBruteForceMaxVariables) +
                        " variables, got " + std::to_string(n));
  }

  // Gray-code walk: one bit flips per step, the energy delta comes from the running
  // off-diagonal field of the flipped variable.
  Bits bits(n, 0);
  std::vector<double> field(n, 0.0);  // field[k] = sum_{j != k} q_kj b_j
  double energy = 0.0;

  Bits best = bits;
  double best_energy = 0.0;
  std::uint64_t best_key = 0;

  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t step = 1; step < total; ++step) {
    const auto k = static_cast<std::size_t>(std::countr_zero(step));
    const double sign = bits[k] ? -1.0 : 1.0;
    energy += sign * (p.q(k, k) + 2.0 * field[k]);
    bits[k] ^= 1;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != k) field[j] += sign * p.q(j, k);
    }

    if (energy < best_energy - kTieTolerance) {
      best = bits;
      best_energy = energy;
      best_key = lexicographic_key(bits);
    } else if (energy <= best_energy + kTieTolerance) {
      const auto key = lexicographic_key(bits);
      if (key < best_key) {
        best = bits;
        best_key = key;
        best_energy = std::min(best_energy, energy);
      }
    }
  }
  // Recompute directly so the reported energy carries no accumulated rounding.
  return {best, qubo_energy(p, best)};
}

QuboProblem read_qubo(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  long long n = -1;
  Eigen::MatrixXd raw;

  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string first;
    if (!(fields >> first)) continue;

    if (n < 0) {
      std::size_t used = 0;
      try {
        n = std::stoll(first, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      std::string extra;
      if (used != first.size() || n < 0 || (fields >> extra)) {
        throw ParseError("expected variable count", line_no);
      }
      raw = Eigen::MatrixXd::Zero(n, n);
      continue;
    }

    long long i = 0;
    long long j = 0;
    double value = 0.0;
    std::istringstream entry(line);
    std::string extra;
    if (!(entry >> i >> j >> value) || (entry >> extra)) {
      throw ParseError("expected `i j value`", line_no);
    }
    if (i < 0 || j < 0 || i >= n || j >= n) {
      throw ParseError("index out of range for n=" + std::to_string(n), line_no);
    }
    if (!std::isfinite(value)) throw ParseError("non-finite coefficient", line_no);
    raw(i, j) += value;
  }
  if (n < 0) throw ParseError("empty QUBO file", 0);
  return QuboProblem::from_raw(raw);
}

void write_qubo(std::ostream& out, const QuboProblem& p) {
  const auto n = static_cast<Eigen::Index>(p.n());
  out << n << '\n';
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (p.q(i, j) != 0.0) out << i << ' ' << j << ' ' << p.q(i, j) << '\n';
    }
  }
}

}  // namespace fxmot
