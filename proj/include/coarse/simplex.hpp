#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace coarse::lp {

struct Column {
  double cost = 0.0;
  std::vector<std::pair<int, double>> entries;  // (row, coefficient)
};

enum class Status { optimal, unbounded, iteration_limit };

struct Result {
  Status status = Status::optimal;
  double objective = 0.0;
  std::vector<double> primal;  // per column
  std::vector<double> duals;   // per row, >= 0 at optimality
  std::size_t pivots = 0;
};

/// Revised simplex for  max c.y  s.t.  A y <= b, y >= 0  with b >= 0.
/// The slack basis is feasible, so there is no phase 1. Columns may be added
/// between solves; the previous basis is kept as a warm start.
class PackingLp {
 public:
  explicit PackingLp(std::vector<double> rhs, double tol = 1e-9);

  int add_column(Column col);
  int num_rows() const { return m_; }
  int num_columns() const { return static_cast<int>(cols_.size()); }
  const Column& column(int j) const { return cols_[j]; }

  Result solve(std::size_t max_pivots = 5'000'000);

 private:
  int m_;
  double tol_;
  std::vector<double> b_;
  std::vector<Column> cols_;
  std::vector<int> basis_;  // row -> variable; variable >= 0 is a column, -(i+1) is slack i
  std::vector<int> where_;  // column -> basis row or -1
  std::vector<char> slack_basic_;
  std::vector<double> binv_;  // m x m, row-major
  std::vector<double> xb_;
  std::size_t since_refactor_ = 0;

  double cost_of(int var) const { return var >= 0 ? cols_[var].cost : 0.0; }
  long long order_key(int var) const;
  void refactor();
  std::vector<double> duals() const;
};

}  // namespace coarse::lp
