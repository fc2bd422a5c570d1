#include "fbl/lp.hpp"

#include "fbl/errors.hpp"

#include <limits>
#include <vector>

namespace fbl {

namespace {

// Tableau layout follows the classic dictionary form: rows 0..m-1 hold the
// constraints, row m the objective, row m+1 the phase-one objective;
// column n is the artificial variable and column n+1 the right-hand side.
class Simplex {
 public:
  Simplex(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c, double eps)
      : m_(static_cast<int>(b.size())), n_(static_cast<int>(c.size())), eps_(eps),
        nonbasic_(static_cast<std::size_t>(n_) + 1), basic_(static_cast<std::size_t>(m_)),
        d_(Tableau::Zero(m_ + 2, n_ + 2)) {
    d_.topLeftCorner(m_, n_) = A;
    for (int i = 0; i < m_; ++i) {
      basic_[static_cast<std::size_t>(i)] = n_ + i;
      d_(i, n_) = -1;
      d_(i, n_ + 1) = b(i);
    }
    for (int j = 0; j < n_; ++j) {
      nonbasic_[static_cast<std::size_t>(j)] = j;
      d_(m_, j) = -c(j);
    }
    nonbasic_[static_cast<std::size_t>(n_)] = -1;
    d_(m_ + 1, n_) = 1;
  }

  LpResult solve() {
    LpResult result;
    int r = 0;
    for (int i = 1; i < m_; ++i)
      if (d_(i, n_ + 1) < d_(r, n_ + 1)) r = i;
    if (m_ > 0 && d_(r, n_ + 1) < -eps_) {
      pivot(r, n_);
      if (!run(2) || d_(m_ + 1, n_ + 1) < -eps_) {
        result.status = LpStatus::Infeasible;
        return result;
      }
      for (int i = 0; i < m_; ++i) {
        if (basic_[static_cast<std::size_t>(i)] != -1) continue;
        int s = -1;
        for (int j = 0; j <= n_; ++j)
          if (s == -1 || d_(i, j) < d_(i, s) || (d_(i, j) == d_(i, s) && nonbasic_[static_cast<std::size_t>(j)] < nonbasic_[static_cast<std::size_t>(s)])) s = j;
        pivot(i, s);
      }
    }
    const bool bounded = run(1);
    result.x = Eigen::VectorXd::Zero(n_);
    for (int i = 0; i < m_; ++i)
      if (basic_[static_cast<std::size_t>(i)] >= 0 && basic_[static_cast<std::size_t>(i)] < n_) {
        result.x(basic_[static_cast<std::size_t>(i)]) = d_(i, n_ + 1);
      }
    result.status = bounded ? LpStatus::Optimal : LpStatus::Unbounded;
    result.value = bounded ? d_(m_, n_ + 1) : std::numeric_limits<double>::infinity();
    return result;
  }

 private:
  void pivot(int r, int s) {
    const double inv = 1.0 / d_(r, s);
    for (int i = 0; i < m_ + 2; ++i) {
      if (i == r || std::abs(d_(i, s)) <= eps_) continue;
      const double factor = d_(i, s) * inv;
      d_.row(i) -= factor * d_.row(r);
      d_(i, s) = d_(r, s) * factor;
    }
    for (int j = 0; j < n_ + 2; ++j)
      if (j != s) d_(r, j) *= inv;
    for (int i = 0; i < m_ + 2; ++i)
      if (i != r) d_(i, s) *= -inv;
    d_(r, s) = inv;
    std::swap(basic_[static_cast<std::size_t>(r)], nonbasic_[static_cast<std::size_t>(s)]);
  }

  // Bland's rule: entering column with the smallest variable id among the
  // improving ones, leaving row by minimum ratio with smallest basic id.
  bool run(int phase) {
    const int obj = m_ + phase - 1;
    for (;;) {
      int s = -1;
      for (int j = 0; j <= n_; ++j) {
        if (nonbasic_[static_cast<std::size_t>(j)] == -phase) continue;
        if (d_(obj, j) < -eps_ && (s == -1 || nonbasic_[static_cast<std::size_t>(j)] < nonbasic_[static_cast<std::size_t>(s)])) s = j;
      }
      if (s == -1) return true;
      int r = -1;
      double best_ratio = 0.0;
      for (int i = 0; i < m_; ++i) {
        if (d_(i, s) <= eps_) continue;
        const double ratio = d_(i, n_ + 1) / d_(i, s);
        if (r == -1 || ratio < best_ratio - eps_ ||
            (ratio <= best_ratio + eps_ && basic_[static_cast<std::size_t>(i)] < basic_[static_cast<std::size_t>(r)])) {
          r = i;
          best_ratio = ratio;
        }
      }
      if (r == -1) return false;
      pivot(r, s);
    }
  }

  int m_;
  int n_;
  double eps_;
  std::vector<int> nonbasic_;
  std::vector<int> basic_;
  Tableau d_;
};

}  // namespace

LpResult solve_lp(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c, double eps) {
  if (A.rows() != b.size() || A.cols() != c.size()) throw InvalidInput("linear program dimensions disagree");
  return Simplex(A, b, c, eps).solve();
}

}  // namespace fbl
