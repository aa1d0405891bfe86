#include "coarse/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "coarse/errors.hpp"

namespace coarse::lp {

namespace {
constexpr std::size_t kRefactorEvery = 100;
constexpr int kDegenerateBeforeBland = 30;
constexpr double kPivotTol = 1e-11;
}  // namespace

PackingLp::PackingLp(std::vector<double> rhs, double tol)
    : m_(static_cast<int>(rhs.size())), tol_(tol), b_(std::move(rhs)) {
  for (double v : b_) require(v >= 0.0, "packing LP needs a non-negative right-hand side");
  basis_.resize(static_cast<std::size_t>(m_));
  slack_basic_.assign(static_cast<std::size_t>(m_), 1);
  for (int i = 0; i < m_; ++i) basis_[i] = -(i + 1);
  binv_.assign(static_cast<std::size_t>(m_) * m_, 0.0);
  for (int i = 0; i < m_; ++i) binv_[static_cast<std::size_t>(i) * m_ + i] = 1.0;
  xb_ = b_;
}

int PackingLp::add_column(Column col) {
  for (auto [r, a] : col.entries) require(r >= 0 && r < m_ && std::isfinite(a), "bad column entry");
  cols_.push_back(std::move(col));
  where_.push_back(-1);
  return static_cast<int>(cols_.size()) - 1;
}

long long PackingLp::order_key(int var) const {
  return var >= 0 ? var : (1LL << 40) + (-var - 1);
}

void PackingLp::refactor() {
  // Gauss-Jordan on the basis matrix with partial pivoting.
  std::size_t m = static_cast<std::size_t>(m_);
  std::vector<double> a(m * m, 0.0), inv(m * m, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    int var = basis_[r];
    if (var < 0) {
      a[static_cast<std::size_t>(-var - 1) * m + r] = 1.0;
    } else {
      for (auto [row, coef] : cols_[var].entries) a[static_cast<std::size_t>(row) * m + r] += coef;
    }
    inv[r * m + r] = 1.0;
  }
  for (std::size_t c = 0; c < m; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < m; ++r)
      if (std::abs(a[r * m + c]) > std::abs(a[piv * m + c])) piv = r;
    ensure(std::abs(a[piv * m + c]) > 1e-14, "singular basis during refactorization");
    if (piv != c) {
      std::swap_ranges(a.begin() + piv * m, a.begin() + piv * m + m, a.begin() + c * m);
      std::swap_ranges(inv.begin() + piv * m, inv.begin() + piv * m + m, inv.begin() + c * m);
    }
    double d = a[c * m + c];
    for (std::size_t k = 0; k < m; ++k) {
      a[c * m + k] /= d;
      inv[c * m + k] /= d;
    }
    for (std::size_t r = 0; r < m; ++r) {
      if (r == c) continue;
      double f = a[r * m + c];
      if (f == 0.0) continue;
      for (std::size_t k = 0; k < m; ++k) {
        a[r * m + k] -= f * a[c * m + k];
        inv[r * m + k] -= f * inv[c * m + k];
      }
    }
  }
  // inv is B^{-1} with rows indexed by basis position.
  binv_ = std::move(inv);
  for (std::size_t r = 0; r < m; ++r) {
    double s = 0.0;
    for (std::size_t k = 0; k < m; ++k) s += binv_[r * m + k] * b_[k];
    xb_[r] = std::max(0.0, s);
  }
  since_refactor_ = 0;
}

std::vector<double> PackingLp::duals() const {
  std::size_t m = static_cast<std::size_t>(m_);
  std::vector<double> pi(m, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    double c = cost_of(basis_[r]);
    if (c == 0.0) continue;
    const double* row = &binv_[r * m];
    for (std::size_t k = 0; k < m; ++k) pi[k] += c * row[k];
  }
  return pi;
}

Result PackingLp::solve(std::size_t max_pivots) {
  std::size_t m = static_cast<std::size_t>(m_);
  Result res;
  int degenerate_run = 0;
  std::vector<double> d(m);
  while (true) {
    if (res.pivots >= max_pivots) {
      res.status = Status::iteration_limit;
      break;
    }
    auto pi = duals();
    bool bland = degenerate_run >= kDegenerateBeforeBland;
    int enter = -2;  // -2 none; >= 0 column; < 0 slack
    double best_rc = tol_;
    for (int j = 0; j < num_columns(); ++j) {
      if (where_[j] >= 0) continue;
      double rc = cols_[j].cost;
      for (auto [r, a] : cols_[j].entries) rc -= pi[r] * a;
      if (rc > best_rc) {
        enter = j;
        best_rc = rc;
        if (bland) break;
      }
    }
    if (!(bland && enter != -2)) {
      for (int i = 0; i < m_; ++i) {
        if (slack_basic_[i]) continue;
        double rc = -pi[i];
        if (rc > best_rc) {
          enter = -(i + 1);
          best_rc = rc;
          if (bland) break;
        }
      }
    }
    if (enter == -2) break;

    std::fill(d.begin(), d.end(), 0.0);
    if (enter >= 0) {
      for (auto [row, a] : cols_[enter].entries)
        for (std::size_t r = 0; r < m; ++r) d[r] += binv_[r * m + row] * a;
    } else {
      std::size_t col = static_cast<std::size_t>(-enter - 1);
      for (std::size_t r = 0; r < m; ++r) d[r] = binv_[r * m + col];
    }
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < m; ++r)
      if (d[r] > kPivotTol) best_ratio = std::min(best_ratio, std::max(0.0, xb_[r]) / d[r]);
    int leave = -1;
    for (std::size_t r = 0; r < m; ++r) {
      if (d[r] <= kPivotTol || std::max(0.0, xb_[r]) / d[r] > best_ratio + 1e-12) continue;
      bool better = leave < 0 || (bland ? order_key(basis_[r]) < order_key(basis_[leave])
                                        : d[r] > d[static_cast<std::size_t>(leave)]);
      if (better) leave = static_cast<int>(r);
    }
    if (leave < 0) {
      res.status = Status::unbounded;
      return res;
    }
    degenerate_run = best_ratio <= 1e-12 ? degenerate_run + 1 : 0;

    std::size_t p = static_cast<std::size_t>(leave);
    double dp = d[p];
    double* prow = &binv_[p * m];
    for (std::size_t k = 0; k < m; ++k) prow[k] /= dp;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == p || d[r] == 0.0) continue;
      double f = d[r];
      double* row = &binv_[r * m];
      for (std::size_t k = 0; k < m; ++k) row[k] -= f * prow[k];
      xb_[r] = std::max(0.0, xb_[r] - f * best_ratio);
    }
    xb_[p] = best_ratio;

    int old = basis_[p];
    if (old >= 0) where_[old] = -1; else slack_basic_[-old - 1] = 0;
    basis_[p] = enter;
    if (enter >= 0) where_[enter] = leave; else slack_basic_[-enter - 1] = 1;
    ++res.pivots;
    if (++since_refactor_ >= kRefactorEvery) refactor();
  }
  if (since_refactor_ > 0) refactor();
  res.duals = duals();
  res.primal.assign(cols_.size(), 0.0);
  for (std::size_t r = 0; r < m; ++r)
    if (basis_[r] >= 0) res.primal[basis_[r]] = xb_[r];
  res.objective = 0.0;
  for (std::size_t j = 0; j < cols_.size(); ++j) res.objective += cols_[j].cost * res.primal[j];
  return res;
}

}  // namespace coarse::lp
