#pragma once

// Tracker/detection assignment posed as a QUBO with a one-to-one penalty of weight c:
//
//   H_cost = -sum_td S_td b_td + c (H_penalty1 + H_penalty2)
//
// On the shorter side of the table (or both sides when n_t == n_d) the penalty is the
// squared equality (sum b - 1)^2; on the longer side it only counts pairwise
// coincidences sum_{x != x'} b b', so one-to-zero (n_t > n_d) and zero-to-one
// (n_t < n_d) correspondences stay free.
//
// Variable b_td is QUBO index t * n_d + d (row-major).

#include <functional>
#include <limits>
#include <variant>
#include <vector>

#include "fxmot/ising.hpp"
#include "fxmot/sb.hpp"

namespace fxmot {

struct SimilarityMatrix {
  Eigen::MatrixXd s;  // n_t x n_d

  std::size_t n_t() const { return static_cast<std::size_t>(s.rows()); }
  std::size_t n_d() const { return static_cast<std::size_t>(s.cols()); }
};

class AssignmentTable {
 public:
  AssignmentTable() = default;
  AssignmentTable(std::size_t n_t, std::size_t n_d) : n_t_(n_t), n_d_(n_d), b_(n_t * n_d, 0) {}

  // Interprets a QUBO solution with the row-major layout.
  static AssignmentTable from_bits(std::size_t n_t, std::size_t n_d, const Bits& bits);

  std::size_t n_t() const { return n_t_; }
  std::size_t n_d() const { return n_d_; }

  bool at(std::size_t t, std::size_t d) const { return b_[t * n_d_ + d] != 0; }
  void set(std::size_t t, std::size_t d, bool v) { b_[t * n_d_ + d] = v ? 1 : 0; }

  std::size_t row_sum(std::size_t t) const;
  std::size_t col_sum(std::size_t d) const;

  const Bits& bits() const { return b_; }

  friend bool operator==(const AssignmentTable&, const AssignmentTable&) = default;

 private:
  std::size_t n_t_ = 0;
  std::size_t n_d_ = 0;
  Bits b_;
};

inline std::size_t variable_index(std::size_t t, std::size_t d, std::size_t n_d) {
  return t * n_d + d;
}

struct AssignmentQubo {
  QuboProblem qubo;
  // Constant dropped while expanding the squared penalties: H_cost = qubo_energy + this.
  double dropped_constant = 0.0;
};

AssignmentQubo build_assignment_qubo(const SimilarityMatrix& s, double c);

// Row/column sums exactly 1 on the shorter dimension, at most 1 on the longer one.
bool check_one_to_one(const AssignmentTable& b);

// Maximum-similarity one-to-one table with exactly min(n_t, n_d) pairs. Among optimal
// tables the lexicographically smallest (tracker 0 first, lower detection first) wins.
AssignmentTable hungarian(const SimilarityMatrix& s);

// Clears duplicate bits so that every column and row has at most one: per column keep
// the highest-similarity tracker, then per row the highest-similarity detection (ties
// go to the lower index). Returns the number of cleared bits.
std::size_t repair_table(AssignmentTable& b, const SimilarityMatrix& s);

struct Match {
  std::size_t detection;
  friend bool operator==(const Match&, const Match&) = default;
};
struct PotentiallyMatch {
  std::size_t detection;
  friend bool operator==(const PotentiallyMatch&, const PotentiallyMatch&) = default;
};
struct Unmatch {
  friend bool operator==(const Unmatch&, const Unmatch&) = default;
};

using TrackerOutcome = std::variant<Match, PotentiallyMatch, Unmatch>;

struct AssignmentDiagnostics {
  double energy_large = 0.0;  // H_cost of the raw large-c solution
  double energy_small = 0.0;  // H_cost of the small-c solution
  std::size_t repairs = 0;
  std::size_t gated = 0;
  double solve_seconds = 0.0;
};

struct AssignmentResult {
  std::vector<TrackerOutcome> tracker_states;
  std::vector<std::size_t> unmatched_detections;  // ascending
  AssignmentTable large_table;                    // after repair
  AssignmentTable small_table;
  AssignmentDiagnostics diagnostics;
};

// Maps a QUBO to a bit vector. The second argument tells which of the two per-frame
// solves this is (0 = large c, 1 = small c) so seeded solvers can decorrelate them.
using QuboSolver = std::function<Bits(const QuboProblem&, int solve_index)>;

struct FlexibleAssignConfig {
  double c_small = 0.1;
  double c_large = 1.0;
  // Matches below this similarity are demoted to Unmatch. -infinity disables gating.
  double s_min = 0.1;
};

AssignmentResult flexible_assign(const SimilarityMatrix& s, const QuboSolver& solver,
                                 const FlexibleAssignConfig& cfg = {});

// One-to-one baseline: Hungarian table, same gating, never PotentiallyMatch.
AssignmentResult linear_assign(const SimilarityMatrix& s, double s_min = 0.1);

QuboSolver brute_force_solver();

// SB-backed solver. Solve i runs with seed mix(params.seed, i), see sb_seed().
QuboSolver sb_solver(const SbParams& params);

// splitmix64 of (seed, stream); used to derive per-solve seeds.
std::uint64_t sb_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace fxmot
