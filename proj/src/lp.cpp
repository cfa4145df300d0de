#include "aro/lp.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "aro/tolerances.hpp"

namespace aro::lp {
namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kReducedCostTol = 1e-9;
constexpr int kMaxIterations = 200000;

enum class ColKind { ShiftedLo, MirroredUp, FreePos, FreeNeg, Slack, Artificial };

struct ColMeta {
  ColKind kind;
  int ref = -1;       // original variable or standard row index
  double offset = 0;  // lo for ShiftedLo, up for MirroredUp
};

enum class RowKind { OrigIneq, OrigEq, UpperBound };

struct RowMeta {
  RowKind kind;
  int ref = -1;      // original row / variable index
  double sign = 1;   // -1 when the standard row was negated to make rhs >= 0
};

// Standard-form problem  min c z  s.t.  A z = b, z >= 0  with bookkeeping to
// map solutions and duals back to the caller's variables and rows.
struct StandardForm {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::VectorXd c;
  std::vector<ColMeta> cols;
  std::vector<RowMeta> rows;
  int num_struct_cols = 0;
};

StandardForm build_standard_form(const LinearProgram& lp) {
  const int n = lp.num_vars();
  const bool has_bounds = lp.lower.size() > 0;
  auto lo = [&](int j) { return has_bounds ? lp.lower(j) : -kInf; };
  auto up = [&](int j) { return has_bounds ? lp.upper(j) : kInf; };

  StandardForm sf;
  // Structural columns.
  std::vector<std::pair<int, int>> var_cols(n);  // (first col, second col or -1)
  for (int j = 0; j < n; ++j) {
    if (std::isfinite(lo(j))) {
      var_cols[j] = {static_cast<int>(sf.cols.size()), -1};
      sf.cols.push_back({ColKind::ShiftedLo, j, lo(j)});
    } else if (std::isfinite(up(j))) {
      var_cols[j] = {static_cast<int>(sf.cols.size()), -1};
      sf.cols.push_back({ColKind::MirroredUp, j, up(j)});
    } else {
      int base = static_cast<int>(sf.cols.size());
      var_cols[j] = {base, base + 1};
      sf.cols.push_back({ColKind::FreePos, j, 0});
      sf.cols.push_back({ColKind::FreeNeg, j, 0});
    }
  }
  sf.num_struct_cols = static_cast<int>(sf.cols.size());

  // Row list: original inequalities, then upper-bound rows for doubly bounded
  // variables, then equalities.
  for (int i = 0; i < lp.num_ineq(); ++i) sf.rows.push_back({RowKind::OrigIneq, i, 1});
  for (int j = 0; j < n; ++j) {
    // Crossed bounds surface as an infeasible row, not an error.
    if (std::isfinite(lo(j)) && std::isfinite(up(j))) sf.rows.push_back({RowKind::UpperBound, j, 1});
  }
  for (int i = 0; i < lp.num_eq(); ++i) sf.rows.push_back({RowKind::OrigEq, i, 1});

  const int rows = static_cast<int>(sf.rows.size());
  const int ineq_like = rows - lp.num_eq();  // rows that receive a slack
  const int cols = sf.num_struct_cols + ineq_like;
  sf.A = Eigen::MatrixXd::Zero(rows, cols);
  sf.b = Eigen::VectorXd::Zero(rows);
  sf.c = Eigen::VectorXd::Zero(cols);

  auto put_var_coeff = [&](int row, int j, double coeff) {
    auto [c0, c1] = var_cols[j];
    const ColMeta& meta = sf.cols[c0];
    switch (meta.kind) {
      case ColKind::ShiftedLo:
        sf.A(row, c0) += coeff;
        sf.b(row) -= coeff * meta.offset;
        break;
      case ColKind::MirroredUp:
        sf.A(row, c0) -= coeff;
        sf.b(row) -= coeff * meta.offset;
        break;
      case ColKind::FreePos:
        sf.A(row, c0) += coeff;
        sf.A(row, c1) -= coeff;
        break;
      default:
        break;
    }
  };

  for (int k = 0; k < rows; ++k) {
    const RowMeta& rm = sf.rows[k];
    if (rm.kind == RowKind::OrigIneq) {
      sf.b(k) += lp.ineq_rhs(rm.ref);
      for (int j = 0; j < n; ++j) {
        double coeff = lp.ineq_lhs(rm.ref, j);
        if (coeff != 0.0) put_var_coeff(k, j, coeff);
      }
    } else if (rm.kind == RowKind::OrigEq) {
      sf.b(k) += lp.eq_rhs(rm.ref);
      for (int j = 0; j < n; ++j) {
        double coeff = lp.eq_lhs(rm.ref, j);
        if (coeff != 0.0) put_var_coeff(k, j, coeff);
      }
    } else {
      sf.b(k) += up(rm.ref);
      put_var_coeff(k, rm.ref, 1.0);
    }
  }

  // Slack columns.
  int slack_col = sf.num_struct_cols;
  for (int k = 0; k < rows; ++k) {
    if (sf.rows[k].kind == RowKind::OrigEq) continue;
    sf.A(k, slack_col) = 1.0;
    sf.cols.push_back({ColKind::Slack, k, 0});
    ++slack_col;
  }

  // Structural costs.
  for (int j = 0; j < n; ++j) {
    double cj = lp.cost(j);
    if (cj == 0.0) continue;
    auto [c0, c1] = var_cols[j];
    const ColMeta& meta = sf.cols[c0];
    if (meta.kind == ColKind::MirroredUp) {
      sf.c(c0) -= cj;
    } else {
      sf.c(c0) += cj;
      if (c1 >= 0) sf.c(c1) -= cj;
    }
  }

  // Make every rhs nonnegative.
  for (int k = 0; k < rows; ++k) {
    if (sf.b(k) < 0) {
      sf.A.row(k) = -sf.A.row(k);
      sf.b(k) = -sf.b(k);
      sf.rows[k].sign = -1;
    }
  }
  return sf;
}

// Dense tableau with both phase objective rows maintained in place.
class Simplex {
 public:
  explicit Simplex(StandardForm sf) : sf_(std::move(sf)) {}

  LpStatus run() {
    setup();
    LpStatus st = iterate(/*phase1=*/true);
    if (st != LpStatus::Optimal) return st;
    // The cost-row rhs cell carries the negated objective.
    if (-tableau_(rows_ + 1, total_cols_) > phase1_tol_) return LpStatus::Infeasible;
    purge_artificials();
    return iterate(/*phase1=*/false);
  }

  const StandardForm& sf() const { return sf_; }
  const std::vector<int>& basis() const { return basis_; }
  const std::vector<int>& kept_rows() const { return kept_rows_; }

  Eigen::VectorXd primal() const {
    Eigen::VectorXd z = Eigen::VectorXd::Zero(sf_.A.cols());
    for (int r = 0; r < rows_; ++r) {
      if (basis_[r] < static_cast<int>(sf_.A.cols())) z(basis_[r]) = tableau_(r, total_cols_);
    }
    return z;
  }

 private:
  void setup() {
    rows_ = static_cast<int>(sf_.A.rows());
    int base_cols = static_cast<int>(sf_.A.cols());
    kept_rows_.resize(rows_);
    for (int r = 0; r < rows_; ++r) kept_rows_[r] = r;

    // Slack columns of non-negated inequality rows can start basic; all
    // other rows need an artificial.
    std::vector<int> art_rows;
    basis_.assign(rows_, -1);
    for (size_t c = 0; c < sf_.cols.size(); ++c) {
      if (sf_.cols[c].kind == ColKind::Slack) {
        int r = sf_.cols[c].ref;
        if (sf_.rows[r].sign > 0) basis_[r] = static_cast<int>(c);
      }
    }
    for (int r = 0; r < rows_; ++r) {
      if (basis_[r] < 0) art_rows.push_back(r);
    }
    num_artificials_ = static_cast<int>(art_rows.size());
    total_cols_ = base_cols + num_artificials_;

    tableau_ = Eigen::MatrixXd::Zero(rows_ + 2, total_cols_ + 1);
    tableau_.block(0, 0, rows_, base_cols) = sf_.A;
    tableau_.block(0, total_cols_, rows_, 1) = sf_.b;
    artificial_start_ = base_cols;
    for (int k = 0; k < num_artificials_; ++k) {
      tableau_(art_rows[k], base_cols + k) = 1.0;
      basis_[art_rows[k]] = base_cols + k;
    }

    // Phase-2 cost row.
    tableau_.block(rows_, 0, 1, base_cols) = sf_.c.transpose();
    // Phase-1 cost row: ones on artificials, canonicalized below.
    for (int k = 0; k < num_artificials_; ++k) tableau_(rows_ + 1, base_cols + k) = 1.0;
    for (int r = 0; r < rows_; ++r) {
      int bc = basis_[r];
      if (tableau_(rows_ + 1, bc) != 0.0)
        tableau_.row(rows_ + 1) -= tableau_(rows_ + 1, bc) * tableau_.row(r);
      if (tableau_(rows_, bc) != 0.0)
        tableau_.row(rows_) -= tableau_(rows_, bc) * tableau_.row(r);
    }
    phase1_tol_ = tol::kLpFeasibility * (1.0 + sf_.b.cwiseAbs().maxCoeff());
  }

  LpStatus iterate(bool phase1) {
    const int obj_row = phase1 ? rows_ + 1 : rows_;
    int stall = 0;
    bool bland = false;
    double best_obj = tableau_(obj_row, total_cols_);
    const int stall_limit = 2 * (rows_ + total_cols_) + 16;

    for (int iter = 0; iter < kMaxIterations; ++iter) {
      int enter = -1;
      if (!bland) {
        double best = -kReducedCostTol;
        for (int c = 0; c < total_cols_; ++c) {
          if (!phase1 && c >= artificial_start_) continue;
          double rc = tableau_(obj_row, c);
          if (rc < best) {
            best = rc;
            enter = c;
          }
        }
      } else {
        for (int c = 0; c < total_cols_; ++c) {
          if (!phase1 && c >= artificial_start_) continue;
          if (tableau_(obj_row, c) < -kReducedCostTol) {
            enter = c;
            break;
          }
        }
      }
      if (enter < 0) return LpStatus::Optimal;

      int leave = -1;
      double best_ratio = kInf;
      for (int r = 0; r < rows_; ++r) {
        double coeff = tableau_(r, enter);
        if (coeff > kPivotTol) {
          double ratio = tableau_(r, total_cols_) / coeff;
          if (ratio < best_ratio - 1e-12 ||
              (ratio < best_ratio + 1e-12 &&
               (leave < 0 || (bland ? basis_[r] < basis_[leave] : r < leave)))) {
            best_ratio = ratio;
            leave = r;
          }
        }
      }
      if (leave < 0) {
        if (phase1) fail(ErrorCode::NumericalFailure, "phase-1 column unbounded");
        return LpStatus::Unbounded;
      }

      pivot(leave, enter);

      // Minimization progress shows as growth of the negated-objective cell.
      double obj = tableau_(obj_row, total_cols_);
      if (obj > best_obj + 1e-12 * (1.0 + std::abs(best_obj))) {
        best_obj = obj;
        stall = 0;
      } else if (!bland && ++stall > stall_limit) {
        bland = true;
      }
    }
    fail(ErrorCode::NumericalFailure, "simplex iteration limit");
  }

  void pivot(int row, int col) {
    tableau_.row(row) /= tableau_(row, col);
    for (int r = 0; r < rows_ + 2; ++r) {
      if (r == row) continue;
      double f = tableau_(r, col);
      if (f != 0.0) tableau_.row(r) -= f * tableau_.row(row);
    }
    basis_[row] = col;
  }

  // Pivot basic artificials out after phase 1; drop numerically redundant
  // rows that cannot be repaired.
  void purge_artificials() {
    std::vector<int> drop;
    for (int r = 0; r < rows_; ++r) {
      if (basis_[r] < artificial_start_) continue;
      int pivot_col = -1;
      for (int c = 0; c < artificial_start_; ++c) {
        if (std::abs(tableau_(r, c)) > 1e-8) {
          pivot_col = c;
          break;
        }
      }
      if (pivot_col >= 0) {
        pivot(r, pivot_col);
      } else {
        drop.push_back(r);
      }
    }
    if (drop.empty()) return;
    std::vector<int> keep;
    for (int r = 0; r < rows_; ++r) {
      if (std::find(drop.begin(), drop.end(), r) == drop.end()) keep.push_back(r);
    }
    Eigen::MatrixXd nt(static_cast<int>(keep.size()) + 2, total_cols_ + 1);
    std::vector<int> nb;
    std::vector<int> nk;
    for (size_t i = 0; i < keep.size(); ++i) {
      nt.row(static_cast<int>(i)) = tableau_.row(keep[i]);
      nb.push_back(basis_[keep[i]]);
      nk.push_back(kept_rows_[keep[i]]);
    }
    nt.row(static_cast<int>(keep.size())) = tableau_.row(rows_);
    nt.row(static_cast<int>(keep.size()) + 1) = tableau_.row(rows_ + 1);
    tableau_ = std::move(nt);
    basis_ = std::move(nb);
    kept_rows_ = std::move(nk);
    rows_ = static_cast<int>(keep.size());
  }

  StandardForm sf_;
  Eigen::MatrixXd tableau_;
  std::vector<int> basis_;
  std::vector<int> kept_rows_;  // surviving row -> original standard row
  int rows_ = 0;
  int total_cols_ = 0;
  int artificial_start_ = 0;
  int num_artificials_ = 0;
  double phase1_tol_ = tol::kLpFeasibility;
};

void recover_solution(const LinearProgram& lp, const Simplex& simplex, LpSolution& out) {
  const StandardForm& sf = simplex.sf();
  Eigen::VectorXd z = simplex.primal();

  const int n = lp.num_vars();
  out.x = Eigen::VectorXd::Zero(n);
  const bool has_bounds = lp.lower.size() > 0;
  for (int c = 0; c < sf.num_struct_cols; ++c) {
    const ColMeta& meta = sf.cols[c];
    switch (meta.kind) {
      case ColKind::ShiftedLo:
        out.x(meta.ref) = meta.offset + z(c);
        break;
      case ColKind::MirroredUp:
        out.x(meta.ref) = meta.offset - z(c);
        break;
      case ColKind::FreePos:
        out.x(meta.ref) += z(c);
        break;
      case ColKind::FreeNeg:
        out.x(meta.ref) -= z(c);
        break;
      default:
        break;
    }
  }
  out.objective = lp.cost.dot(out.x);

  // Duals: solve B^T y = c_B on the surviving rows, then map back.
  const auto& basis = simplex.basis();
  const auto& kept = simplex.kept_rows();
  const int m = static_cast<int>(kept.size());
  Eigen::MatrixXd B(m, m);
  Eigen::VectorXd cb(m);
  const int ncols = static_cast<int>(sf.A.cols());
  for (int i = 0; i < m; ++i) {
    for (int r = 0; r < m; ++r) {
      B(r, i) = basis[i] < ncols ? sf.A(kept[r], basis[i]) : (kept[r] == kept[i] ? 1.0 : 0.0);
    }
    cb(i) = basis[i] < ncols ? sf.c(basis[i]) : 0.0;
  }
  Eigen::VectorXd y_kept = B.transpose().fullPivLu().solve(cb);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(sf.A.rows());
  for (int i = 0; i < m; ++i) y(kept[i]) = y_kept(i);

  out.dual_ineq = Eigen::VectorXd::Zero(lp.num_ineq());
  out.dual_eq = Eigen::VectorXd::Zero(lp.num_eq());
  Eigen::VectorXd mu_upper = Eigen::VectorXd::Zero(n);
  for (int k = 0; k < static_cast<int>(sf.rows.size()); ++k) {
    const RowMeta& rm = sf.rows[k];
    double lambda = -rm.sign * y(k);
    switch (rm.kind) {
      case RowKind::OrigIneq:
        out.dual_ineq(rm.ref) = lambda;
        break;
      case RowKind::OrigEq:
        out.dual_eq(rm.ref) = lambda;
        break;
      case RowKind::UpperBound:
        mu_upper(rm.ref) = lambda;
        break;
    }
  }
  // Bound multipliers from structural reduced costs.
  Eigen::VectorXd mu_lower = Eigen::VectorXd::Zero(n);
  for (int c = 0; c < sf.num_struct_cols; ++c) {
    const ColMeta& meta = sf.cols[c];
    if (meta.kind != ColKind::ShiftedLo && meta.kind != ColKind::MirroredUp) continue;
    double rc = sf.c(c);
    for (int i = 0; i < m; ++i) rc -= y_kept(i) * sf.A(kept[i], c);
    if (meta.kind == ColKind::ShiftedLo) {
      mu_lower(meta.ref) = rc;
    } else {
      mu_upper(meta.ref) += rc;
    }
  }

  double dual_obj = -out.dual_ineq.dot(lp.ineq_rhs) - out.dual_eq.dot(lp.eq_rhs);
  if (has_bounds) {
    for (int j = 0; j < n; ++j) {
      if (std::isfinite(lp.lower(j))) dual_obj += mu_lower(j) * lp.lower(j);
      if (std::isfinite(lp.upper(j))) dual_obj -= mu_upper(j) * lp.upper(j);
    }
  }
  out.dual_objective = dual_obj;
}

}  // namespace

LinearProgram LinearProgram::make(int n) {
  LinearProgram lp;
  lp.cost = VectorXd::Zero(n);
  lp.ineq_lhs = MatrixXd::Zero(0, n);
  lp.ineq_rhs = VectorXd::Zero(0);
  lp.eq_lhs = MatrixXd::Zero(0, n);
  lp.eq_rhs = VectorXd::Zero(0);
  return lp;
}

void LinearProgram::add_ineq(const VectorXd& row, double rhs) {
  const int n = num_vars();
  ineq_lhs.conservativeResize(ineq_lhs.rows() + 1, n);
  ineq_lhs.row(ineq_lhs.rows() - 1) = row.transpose();
  ineq_rhs.conservativeResize(ineq_rhs.size() + 1);
  ineq_rhs(ineq_rhs.size() - 1) = rhs;
}

void LinearProgram::add_eq(const VectorXd& row, double rhs) {
  const int n = num_vars();
  eq_lhs.conservativeResize(eq_lhs.rows() + 1, n);
  eq_lhs.row(eq_lhs.rows() - 1) = row.transpose();
  eq_rhs.conservativeResize(eq_rhs.size() + 1);
  eq_rhs(eq_rhs.size() - 1) = rhs;
}

LpSolution solve_lp(const LinearProgram& lp) {
  if (lp.ineq_lhs.cols() != lp.num_vars() && lp.num_ineq() > 0)
    fail(ErrorCode::DimensionMismatch, "inequality block width");
  if (lp.eq_lhs.cols() != lp.num_vars() && lp.num_eq() > 0)
    fail(ErrorCode::DimensionMismatch, "equality block width");
  if (lp.ineq_lhs.rows() != lp.ineq_rhs.size() || lp.eq_lhs.rows() != lp.eq_rhs.size())
    fail(ErrorCode::DimensionMismatch, "row count mismatch");
  if (lp.lower.size() != lp.upper.size())
    fail(ErrorCode::DimensionMismatch, "bound vectors differ in length");
  if (lp.lower.size() > 0 && lp.lower.size() != lp.num_vars())
    fail(ErrorCode::DimensionMismatch, "bound vector length");

  Simplex simplex(build_standard_form(lp));
  LpSolution out;
  out.status = simplex.run();
  if (out.status == LpStatus::Optimal) recover_solution(lp, simplex, out);
  return out;
}

double bisect_max(const std::function<bool(double)>& predicate, double lo, double hi,
                  double tol) {
  if (!(tol > 0)) fail(ErrorCode::InvalidInput, "bisect_max tol must be positive");
  if (hi < lo) fail(ErrorCode::InvalidInput, "bisect_max needs lo <= hi");
  if (predicate(hi)) return hi;
  if (!predicate(lo)) fail(ErrorCode::NotEvenLo, "predicate false at lower endpoint");
  double good = lo;
  double bad = hi;
  while (bad - good > tol) {
    double mid = 0.5 * (good + bad);
    if (predicate(mid)) {
      good = mid;
    } else {
      bad = mid;
    }
  }
  return good;
}

LpSolution cutting_plane_norm2(const ConicProgram& cp, CutTrace* trace, double tolerance,
                               int max_cuts) {
  LinearProgram relaxation = cp.lp;
  int cuts = 0;
  if (trace) {
    trace->objectives.clear();
    trace->cuts = 0;
  }
  while (true) {
    LpSolution sol = solve_lp(relaxation);
    if (sol.status != LpStatus::Optimal) return sol;
    if (trace) trace->objectives.push_back(sol.objective);

    double worst = 0.0;
    bool added = false;
    for (const SocRow& row : cp.soc) {
      Eigen::VectorXd w = row.M * sol.x + row.m0;
      double norm = w.norm();
      double viol = norm - (row.q.dot(sol.x) + row.q0);
      worst = std::max(worst, viol);
      if (viol > tolerance) {
        // Supporting hyperplane <w/||w||, M x + m0> <= <q, x> + q0.
        Eigen::VectorXd u = norm > 1e-12 ? (w / norm).eval() : Eigen::VectorXd::Zero(w.size());
        if (norm <= 1e-12) u(0) = 1.0;
        Eigen::VectorXd cut = row.M.transpose() * u - row.q;
        relaxation.add_ineq(cut, row.q0 - u.dot(row.m0));
        ++cuts;
        added = true;
      }
    }
    if (trace) trace->cuts = cuts;
    if (worst <= tolerance) return sol;
    if (!added || cuts > max_cuts)
      fail(ErrorCode::IterationLimit, "cutting-plane loop exceeded cut budget");
  }
}

}  // namespace aro::lp
