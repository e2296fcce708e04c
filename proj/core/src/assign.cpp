#include "fxmot/assign.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>

#include "fxmot/errors.hpp"

namespace fxmot {

namespace {

void add_pair(Eigen::MatrixXd& q, std::size_t a, std::size_t b, double w) {
  q(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) += w;
}

// Square min-cost assignment with dual potentials (shortest augmenting path).
// cost is N x N; returns row_of_col (size N) and the potentials.
struct DualSolution {
  std::vector<std::size_t> col_of_row;
  std::vector<double> u;  // row potentials
  std::vector<double> v;  // column potentials
};

DualSolution min_cost_assignment(const Eigen::MatrixXd& cost) {
  const auto n = static_cast<std::size_t>(cost.rows());
  constexpr double kInf = std::numeric_limits<double>::infinity();
  // 1-based with a virtual column 0.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);

  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(static_cast<Eigen::Index>(i0 - 1), static_cast<Eigen::Index>(j - 1)) -
                           u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  DualSolution out;
  out.col_of_row.assign(n, 0);
  for (std::size_t j = 1; j <= n; ++j) {
    if (p[j] != 0) out.col_of_row[p[j] - 1] = j - 1;
  }
  out.u.assign(u.begin() + 1, u.end());
  out.v.assign(v.begin() + 1, v.end());
  return out;
}

// Kuhn's augmenting path on the allowed-edge graph restricted to free rows/columns.
bool try_augment(std::size_t row, const std::vector<std::vector<char>>& allowed,
                 const std::vector<char>& col_free, std::vector<char>& seen,
                 std::vector<std::ptrdiff_t>& row_of_col) {
  for (std::size_t c = 0; c < allowed[row].size(); ++c) {
    if (!allowed[row][c] || !col_free[c] || seen[c]) continue;
    seen[c] = 1;
    if (row_of_col[c] < 0 ||
        try_augment(static_cast<std::size_t>(row_of_col[c]), allowed, col_free, seen, row_of_col)) {
      row_of_col[c] = static_cast<std::ptrdiff_t>(row);
      return true;
    }
  }
  return false;
}

bool has_perfect_matching(const std::vector<std::vector<char>>& allowed, std::size_t first_row,
                          const std::vector<char>& col_free) {
  const std::size_t n = allowed.size();
  std::vector<std::ptrdiff_t> row_of_col(n, -1);
  std::vector<char> seen(n);
  for (std::size_t r = first_row; r < n; ++r) {
    std::fill(seen.begin(), seen.end(), 0);
    if (!try_augment(r, allowed, col_free, seen, row_of_col)) return false;
  }
  return true;
}

// Index of the highest-similarity set bit in a row, lower detection on ties.
std::ptrdiff_t best_in_row(const AssignmentTable& b, const SimilarityMatrix& s, std::size_t t) {
  std::ptrdiff_t best = -1;
  for (std::size_t d = 0; d < b.n_d(); ++d) {
    if (!b.at(t, d)) continue;
    if (best < 0 || s.s(t, d) > s.s(t, best)) best = static_cast<std::ptrdiff_t>(d);
  }
  return best;
}

double cost_of(const AssignmentQubo& aq, const Bits& bits) {
  return qubo_energy(aq.qubo, bits) + aq.dropped_constant;
}

void fill_unmatched_detections(AssignmentResult& r, std::size_t n_d) {
  std::vector<char> taken(n_d, 0);
  for (const auto& st : r.tracker_states) {
    if (const auto* m = std::get_if<Match>(&st)) taken[m->detection] = 1;
  }
  r.unmatched_detections.clear();
  for (std::size_t d = 0; d < n_d; ++d) {
    if (!taken[d]) r.unmatched_detections.push_back(d);
  }
}

void apply_gating(AssignmentResult& r, const SimilarityMatrix& s, double s_min) {
  for (std::size_t t = 0; t < r.tracker_states.size(); ++t) {
    if (const auto* m = std::get_if<Match>(&r.tracker_states[t])) {
      if (s.s(t, m->detection) < s_min) {
        r.tracker_states[t] = Unmatch{};
        ++r.diagnostics.gated;
      }
    }
  }
}

void validate_similarity(const SimilarityMatrix& s) {
  if (!s.s.allFinite()) throw DomainError("similarity matrix has non-finite entries");
}

}  // namespace

AssignmentTable AssignmentTable::from_bits(std::size_t n_t, std::size_t n_d, const Bits& bits) {
  if (bits.size() != n_t * n_d) {
    throw DimensionError("bit vector length " + std::to_string(bits.size()) + " does not match " +
                         std::to_string(n_t) + "x" + std::to_string(n_d) + " table");
  }
  AssignmentTable t(n_t, n_d);
  for (std::size_t i = 0; i < bits.size(); ++i) t.b_[i] = bits[i] ? 1 : 0;
  return t;
}

std::size_t AssignmentTable::row_sum(std::size_t t) const {
  std::size_t sum = 0;
  for (std::size_t d = 0; d < n_d_; ++d) sum += b_[t * n_d_ + d];
  return sum;
}

std::size_t AssignmentTable::col_sum(std::size_t d) const {
  std::size_t sum = 0;
  for (std::size_t t = 0; t < n_t_; ++t) sum += b_[t * n_d_ + d];
  return sum;
}

AssignmentQubo build_assignment_qubo(const SimilarityMatrix& s, double c) {
  const auto n_t = s.n_t();
  const auto n_d = s.n_d();
  if (n_t == 0 || n_d == 0) throw DimensionError("similarity matrix must be non-empty");
  if (!(c >= 0.0)) throw DomainError("penalty weight c must be non-negative");
  validate_similarity(s);

  const auto n = n_t * n_d;
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  double constant = 0.0;

  for (std::size_t t = 0; t < n_t; ++t) {
    for (std::size_t d = 0; d < n_d; ++d) {
      add_pair(q, variable_index(t, d, n_d), variable_index(t, d, n_d), -s.s(t, d));
    }
  }

  // Column term over trackers sharing detection d. (sum_t b - 1)^2 expands with b^2 = b
  // to -sum_t b + sum_{t != t'} b b' + 1; the coincidence-only form keeps just the pairs.
  const bool squared_columns = n_t >= n_d;
  for (std::size_t d = 0; d < n_d; ++d) {
    for (std::size_t t = 0; t < n_t; ++t) {
      const auto a = variable_index(t, d, n_d);
      if (squared_columns) add_pair(q, a, a, -c);
      for (std::size_t t2 = 0; t2 < n_t; ++t2) {
        if (t2 != t) add_pair(q, a, variable_index(t2, d, n_d), c);
      }
    }
    if (squared_columns) constant += c;
  }

  const bool squared_rows = n_t <= n_d;
  for (std::size_t t = 0; t < n_t; ++t) {
    for (std::size_t d = 0; d < n_d; ++d) {
      const auto a = variable_index(t, d, n_d);
      if (squared_rows) add_pair(q, a, a, -c);
      for (std::size_t d2 = 0; d2 < n_d; ++d2) {
        if (d2 != d) add_pair(q, a, variable_index(t, d2, n_d), c);
      }
    }
    if (squared_rows) constant += c;
  }

  return {QuboProblem::from_raw(q), constant};
}

bool check_one_to_one(const AssignmentTable& b) {
  const bool rows_exact = b.n_t() <= b.n_d();
  const bool cols_exact = b.n_t() >= b.n_d();
  for (std::size_t t = 0; t < b.n_t(); ++t) {
    const auto sum = b.row_sum(t);
    if (rows_exact ? sum != 1 : sum > 1) return false;
  }
  for (std::size_t d = 0; d < b.n_d(); ++d) {
    const auto sum = b.col_sum(d);
    if (cols_exact ? sum != 1 : sum > 1) return false;
  }
  return true;
}

AssignmentTable hungarian(const SimilarityMatrix& s) {
  validate_similarity(s);
  const auto n_t = s.n_t();
  const auto n_d = s.n_d();
  AssignmentTable table(n_t, n_d);
  const auto n = std::max(n_t, n_d);
  if (n_t == 0 || n_d == 0) return table;

  // Pad to square; dummy cells cost 0 so exactly min(n_t, n_d) real pairs are chosen.
  Eigen::MatrixXd cost = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  cost.topLeftCorner(static_cast<Eigen::Index>(n_t), static_cast<Eigen::Index>(n_d)) = -s.s;
  const DualSolution dual = min_cost_assignment(cost);

  // Every perfect matching on zero-reduced-cost edges is optimal. Pick the
  // lexicographically smallest one row by row, checking the rest stays completable.
  const double tol = 1e-9 * (1.0 + cost.cwiseAbs().maxCoeff());
  std::vector<std::vector<char>> allowed(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double reduced =
          cost(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) - dual.u[i] - dual.v[j];
      allowed[i][j] = std::abs(reduced) <= tol ? 1 : 0;
    }
  }

  std::vector<char> col_free(n, 1);
  for (std::size_t row = 0; row < n_t; ++row) {
    bool fixed = false;
    for (std::size_t col = 0; col < n && !fixed; ++col) {
      if (!allowed[row][col] || !col_free[col]) continue;
      col_free[col] = 0;
      auto saved = allowed[row];
      std::fill(allowed[row].begin(), allowed[row].end(), 0);
      if (has_perfect_matching(allowed, row + 1, col_free)) {
        if (col < n_d) table.set(row, col, true);
        fixed = true;
      } else {
        col_free[col] = 1;
      }
      allowed[row] = std::move(saved);
    }
    if (!fixed) {
      // Only reachable if the tolerance split ties inconsistently; fall back to the
      // raw optimum for the remaining rows.
      for (std::size_t r = row; r < n_t; ++r) {
        if (dual.col_of_row[r] < n_d) table.set(r, dual.col_of_row[r], true);
      }
      break;
    }
  }
  return table;
}

std::size_t repair_table(AssignmentTable& b, const SimilarityMatrix& s) {
  std::size_t cleared = 0;
  for (std::size_t d = 0; d < b.n_d(); ++d) {
    if (b.col_sum(d) <= 1) continue;
    std::ptrdiff_t keep = -1;
    for (std::size_t t = 0; t < b.n_t(); ++t) {
      if (b.at(t, d) && (keep < 0 || s.s(t, d) > s.s(keep, d))) keep = static_cast<std::ptrdiff_t>(t);
    }
    for (std::size_t t = 0; t < b.n_t(); ++t) {
      if (b.at(t, d) && static_cast<std::ptrdiff_t>(t) != keep) {
        b.set(t, d, false);
        ++cleared;
      }
    }
  }
  for (std::size_t t = 0; t < b.n_t(); ++t) {
    if (b.row_sum(t) <= 1) continue;
    const auto keep = best_in_row(b, s, t);
    for (std::size_t d = 0; d < b.n_d(); ++d) {
      if (b.at(t, d) && static_cast<std::ptrdiff_t>(d) != keep) {
        b.set(t, d, false);
        ++cleared;
      }
    }
  }
  return cleared;
}

AssignmentResult flexible_assign(const SimilarityMatrix& s, const QuboSolver& solver,
                                 const FlexibleAssignConfig& cfg) {
  if (!(cfg.c_small < cfg.c_large)) throw DomainError("c_small must be below c_large");
  if (!(cfg.c_small >= 0.0)) throw DomainError("penalty weight c must be non-negative");
  const auto n_t = s.n_t();
  const auto n_d = s.n_d();

  AssignmentResult r;
  r.tracker_states.assign(n_t, Unmatch{});
  r.large_table = AssignmentTable(n_t, n_d);
  r.small_table = AssignmentTable(n_t, n_d);
  if (n_t == 0 || n_d == 0) {
    fill_unmatched_detections(r, n_d);
    return r;
  }

  const auto large_qubo = build_assignment_qubo(s, cfg.c_large);
  const auto small_qubo = build_assignment_qubo(s, cfg.c_small);

  const auto start = std::chrono::steady_clock::now();
  const Bits large_bits = solver(large_qubo.qubo, 0);
  const Bits small_bits = solver(small_qubo.qubo, 1);
  r.diagnostics.solve_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  r.diagnostics.energy_large = cost_of(large_qubo, large_bits);
  r.diagnostics.energy_small = cost_of(small_qubo, small_bits);
  r.large_table = AssignmentTable::from_bits(n_t, n_d, large_bits);
  r.small_table = AssignmentTable::from_bits(n_t, n_d, small_bits);
  r.diagnostics.repairs = repair_table(r.large_table, s);

  for (std::size_t t = 0; t < n_t; ++t) {
    if (const auto d = best_in_row(r.large_table, s, t); d >= 0) {
      r.tracker_states[t] = Match{static_cast<std::size_t>(d)};
    } else if (const auto p = best_in_row(r.small_table, s, t); p >= 0) {
      r.tracker_states[t] = PotentiallyMatch{static_cast<std::size_t>(p)};
    }
  }
  apply_gating(r, s, cfg.s_min);
  fill_unmatched_detections(r, n_d);
  return r;
}

AssignmentResult linear_assign(const SimilarityMatrix& s, double s_min) {
  AssignmentResult r;
  r.tracker_states.assign(s.n_t(), Unmatch{});
  const auto start = std::chrono::steady_clock::now();
  r.large_table = hungarian(s);
  r.diagnostics.solve_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.small_table = AssignmentTable(s.n_t(), s.n_d());
  for (std::size_t t = 0; t < s.n_t(); ++t) {
    for (std::size_t d = 0; d < s.n_d(); ++d) {
      if (r.large_table.at(t, d)) {
        r.tracker_states[t] = Match{d};
        r.diagnostics.energy_large -= s.s(t, d);
      }
    }
  }
  apply_gating(r, s, s_min);
  fill_unmatched_detections(r, s.n_d());
  return r;
}

QuboSolver brute_force_solver() {
  return [](const QuboProblem& p, int) { return brute_force_qubo(p).bits; };
}

std::uint64_t sb_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

QuboSolver sb_solver(const SbParams& params) {
  validate(params);
  return [params](const QuboProblem& p, int solve_index) {
    SbParams local = params;
    local.seed = sb_seed(params.seed, static_cast<std::uint64_t>(solve_index));
    return solve_qubo(p, local).bits;
  };
}

}  // namespace fxmot
