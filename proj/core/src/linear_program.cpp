#include "netotc/linear_program.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/QR>

#include "netotc/error.hpp"

namespace netotc {

namespace {

class Tableau {
 public:
  Tableau(const LinearProgram& lp, const LpOptions& options)
      : rows_(lp.a.rows()), vars_(lp.a.cols()), options_(options) {
    t_ = Eigen::MatrixXd::Zero(rows_ + 1, vars_ + rows_ + 1);
    basis_.resize(rows_);
    for (Eigen::Index i = 0; i < rows_; ++i) {
      const double sign = lp.b(i) < 0.0 ? -1.0 : 1.0;
      t_.row(i).head(vars_) = sign * lp.a.row(i);
      t_(i, vars_ + i) = 1.0;
      t_(i, rhs()) = sign * lp.b(i);
      basis_[i] = vars_ + i;
    }
  }

  // Phase one minimizes the sum of artificials.
  LpStatus phase_one() {
    t_.row(rows_).setZero();
    for (Eigen::Index i = 0; i < rows_; ++i) {
      t_.row(rows_).head(vars_) -= t_.row(i).head(vars_);
      t_(rows_, rhs()) -= t_(i, rhs());
    }
    const LpStatus status = iterate(vars_);
    if (status != LpStatus::Optimal) return status;
    double artificial = 0.0;
    for (Eigen::Index i = 0; i < rows_; ++i)
      if (basis_[i] >= vars_) artificial += std::abs(t_(i, rhs()));
    if (artificial > options_.feasibility_tolerance) return LpStatus::Infeasible;
    drive_out_artificials();
    return LpStatus::Optimal;
  }

  LpStatus phase_two(const Eigen::VectorXd& c) {
    t_.row(rows_).setZero();
    t_.row(rows_).head(vars_) = c.transpose();
    for (Eigen::Index i = 0; i < rows_; ++i) {
      const Eigen::Index bv = basis_[i];
      if (bv >= vars_) continue;
      const double cb = c(bv);
      if (cb != 0.0) t_.row(rows_) -= cb * t_.row(i);
    }
    return iterate(vars_);
  }

  // Basic values re-solved from the original rows, which removes the drift
  // accumulated over many tableau updates.
  // Basic values more negative than -tol are left in place so the caller's
  // residual check rejects the point.
  Eigen::VectorXd solution(const LinearProgram& lp, double tol) const {
    std::vector<Eigen::Index> cols;
    for (Eigen::Index i = 0; i < rows_; ++i)
      if (basis_[i] < vars_) cols.push_back(basis_[i]);
    Eigen::MatrixXd b(lp.a.rows(), static_cast<Eigen::Index>(cols.size()));
    for (Eigen::Index k = 0; k < b.cols(); ++k) b.col(k) = lp.a.col(cols[k]);
    const Eigen::VectorXd xb = b.colPivHouseholderQr().solve(lp.b);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(vars_);
    for (Eigen::Index k = 0; k < b.cols(); ++k)
      x(cols[k]) = xb(k) < -tol ? std::numeric_limits<double>::quiet_NaN() : std::max(0.0, xb(k));
    return x;
  }

  int pivots() const { return pivots_; }

 private:
  Eigen::Index rhs() const { return vars_ + rows_; }

  void pivot(Eigen::Index r, Eigen::Index s) {
    const double p = t_(r, s);
    t_.row(r) /= p;
    for (Eigen::Index i = 0; i <= rows_; ++i) {
      if (i == r) continue;
      const double f = t_(i, s);
      if (f != 0.0) t_.row(i) -= f * t_.row(r);
    }
    basis_[r] = s;
    ++pivots_;
  }

  // Columns >= `enterable` may not enter the basis.
  LpStatus iterate(Eigen::Index enterable) {
    int degenerate_run = 0;
    const int bland_after = 50;
    bool bland = false;
    for (;;) {
      if (pivots_ >= options_.max_pivots) return LpStatus::IterationLimit;
      // Once stalling is detected Bland's rule stays on, which rules out cycling.
      bland = bland || degenerate_run >= bland_after;
      Eigen::Index s = -1;
      double best = -options_.optimality_tolerance;
      for (Eigen::Index j = 0; j < enterable; ++j) {
        const double d = t_(rows_, j);
        if (d < best) {
          best = d;
          s = j;
          if (bland) break;
        }
      }
      if (s < 0) return LpStatus::Optimal;

      Eigen::Index r = -1;
      double ratio = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < rows_; ++i) {
        const double a = t_(i, s);
        if (a <= options_.pivot_tolerance) continue;
        const double q = std::max(0.0, t_(i, rhs())) / a;
        if (r < 0 || q < ratio - 1e-13) {
          r = i;
          ratio = q;
        } else if (q <= ratio + 1e-13) {
          const bool prefer = bland ? basis_[i] < basis_[r] : a > t_(r, s);
          if (prefer) {
            r = i;
            ratio = std::min(ratio, q);
          }
        }
      }
      if (r < 0) return LpStatus::Unbounded;
      degenerate_run = ratio <= 1e-14 ? degenerate_run + 1 : 0;
      pivot(r, s);
    }
  }

  void drive_out_artificials() {
    for (Eigen::Index i = 0; i < rows_; ++i) {
      if (basis_[i] < vars_) continue;
      Eigen::Index best = -1;
      double mag = options_.pivot_tolerance;
      for (Eigen::Index j = 0; j < vars_; ++j) {
        if (std::abs(t_(i, j)) > mag) {
          mag = std::abs(t_(i, j));
          best = j;
        }
      }
      if (best >= 0) {
        pivot(i, best);
      } else {
        // Redundant constraint: clear it so it never limits a ratio test.
        t_.row(i).head(vars_).setZero();
        t_(i, rhs()) = 0.0;
      }
    }
  }

  Eigen::Index rows_, vars_;
  LpOptions options_;
  Eigen::MatrixXd t_;
  std::vector<Eigen::Index> basis_;
  int pivots_ = 0;
};

// Drops equality rows that are linear combinations of others.
LinearProgram independent_rows(const LinearProgram& lp) {
  if (lp.a.rows() == 0) return lp;
  Eigen::MatrixXd ab(lp.a.cols() + 1, lp.a.rows());
  ab.topRows(lp.a.cols()) = lp.a.transpose();
  ab.bottomRows(1) = lp.b.transpose();
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(ab);
  qr.setThreshold(1e-10);
  const Eigen::Index rank = qr.rank();
  if (rank == lp.a.rows()) return lp;
  std::vector<Eigen::Index> keep(rank);
  for (Eigen::Index k = 0; k < rank; ++k) keep[k] = qr.colsPermutation().indices()(k);
  std::sort(keep.begin(), keep.end());
  LinearProgram out;
  out.a.resize(rank, lp.a.cols());
  out.b.resize(rank);
  out.c = lp.c;
  for (Eigen::Index k = 0; k < rank; ++k) {
    out.a.row(k) = lp.a.row(keep[k]);
    out.b(k) = lp.b(keep[k]);
  }
  return out;
}

}  // namespace

LpResult solve_linear_program(const LinearProgram& lp, const LpOptions& options) {
  if (lp.a.rows() != lp.b.size() || lp.a.cols() != lp.c.size())
    throw Error(ErrorCode::DimensionMismatch, "linear program shape mismatch");
  const LinearProgram reduced = independent_rows(lp);
  // Degenerate programs stall the simplex; a tiny deterministic shift of b
  // removes ties, and the final basis is re-solved against the true b.
  LinearProgram shifted = reduced;
  if (options.perturbation > 0.0) {
    const double eps = options.perturbation * (1.0 + reduced.b.cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i < shifted.b.size(); ++i) {
      const double frac = std::fmod(0.6180339887498949 * (i + 1), 1.0);
      shifted.b(i) += eps * (0.5 + frac);
    }
  }
  Tableau tableau(shifted, options);
  LpResult out;
  out.status = tableau.phase_one();
  if (out.status == LpStatus::Optimal) out.status = tableau.phase_two(lp.c);
  out.pivots = tableau.pivots();
  if (out.status == LpStatus::Optimal) {
    out.x = tableau.solution(reduced, options.feasibility_tolerance);
    out.value = lp.c.dot(out.x);
    const double scale = 1.0 + lp.b.cwiseAbs().maxCoeff();
    if (!out.x.allFinite() ||
        (lp.a * out.x - lp.b).cwiseAbs().maxCoeff() > options.feasibility_tolerance * scale)
      out.status = LpStatus::NumericalFailure;
  }
  return out;
}

}  // namespace netotc
