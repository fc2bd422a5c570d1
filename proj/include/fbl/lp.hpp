#pragma once

#include <Eigen/Core>

namespace fbl {

using Tableau = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  double value = 0.0;
  Eigen::VectorXd x;
};

/// maximize c'x subject to A x <= b, x >= 0.
///
/// Two-phase dense simplex with Bland's rule, so it never cycles. Meant for
/// small programs (a few hundred rows); callers re-verify anything they
/// derive from the solution.
LpResult solve_lp(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c, double eps = 1e-9);

}  // namespace fbl
