#pragma once

#include <cstdint>
#include <random>

#include "fxmot/assign.hpp"
#include "fxmot/ising.hpp"

namespace fxmot::testing {

// Raw coefficients uniform in [lo, hi], then symmetrized.
inline QuboProblem random_qubo(std::size_t n, std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Eigen::MatrixXd q(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < q.rows(); ++i) {
    for (Eigen::Index j = 0; j < q.cols(); ++j) q(i, j) = u(rng);
  }
  return QuboProblem::from_raw(q);
}

inline Eigen::MatrixXd random_raw(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXd q(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < q.rows(); ++i) {
    for (Eigen::Index j = 0; j < q.cols(); ++j) q(i, j) = u(rng);
  }
  return q;
}

inline SimilarityMatrix random_similarity(std::size_t n_t, std::size_t n_d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  SimilarityMatrix s{Eigen::MatrixXd(static_cast<Eigen::Index>(n_t), static_cast<Eigen::Index>(n_d))};
  for (Eigen::Index i = 0; i < s.s.rows(); ++i) {
    for (Eigen::Index j = 0; j < s.s.cols(); ++j) s.s(i, j) = u(rng);
  }
  return s;
}

inline SimilarityMatrix similarity(std::initializer_list<std::initializer_list<double>> rows) {
  const auto n_t = static_cast<Eigen::Index>(rows.size());
  const auto n_d = static_cast<Eigen::Index>(rows.begin()->size());
  SimilarityMatrix s{Eigen::MatrixXd(n_t, n_d)};
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (double v : r) s.s(i, j++) = v;
    ++i;
  }
  return s;
}

// Bit vector of `value` with bit i of the integer as b_i.
inline Bits bits_of(std::uint64_t value, std::size_t n) {
  Bits b(n);
  for (std::size_t i = 0; i < n; ++i) b[i] = static_cast<std::uint8_t>((value >> i) & 1U);
  return b;
}

}  // namespace fxmot::testing
