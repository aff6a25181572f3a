#include "small_lp.hpp"

#include <cmath>
#include <stdexcept>

namespace fairvote::detail {
namespace {

constexpr double kPivotTol = 1e-11;

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * (cols + 1), 0.0), basis_(rows, 0) {}

  double& at(std::size_t r, std::size_t c) { return a_[r * (cols_ + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, cols_); }
  std::size_t& basis(std::size_t r) { return basis_[r]; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void pivot(std::size_t pr, std::size_t pc) {
    const double p = at(pr, pc);
    for (std::size_t c = 0; c <= cols_; ++c) at(pr, c) /= p;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == pr) continue;
      const double f = at(r, pc);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c <= cols_; ++c) at(r, c) -= f * at(pr, c);
    }
    basis_[pr] = pc;
  }

  // Maximizes cost over columns [0, allowed). Returns false if unbounded.
  bool optimize(const std::vector<double>& cost, std::size_t allowed) {
    for (int iter = 0; iter < 100000; ++iter) {
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < allowed && enter == cols_; ++j) {
        double d = cost[j];
        for (std::size_t r = 0; r < rows_; ++r) d -= cost[basis_[r]] * at(r, j);
        if (d > kPivotTol) enter = j;
      }
      if (enter == cols_) return true;
      std::size_t leave = rows_;
      double best = 0.0;
      for (std::size_t r = 0; r < rows_; ++r) {
        const double coef = at(r, enter);
        if (coef <= kPivotTol) continue;
        const double ratio = rhs(r) / coef;
        if (leave == rows_ || ratio < best - 1e-15 ||
            (std::abs(ratio - best) <= 1e-15 && basis_[r] < basis_[leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (leave == rows_) return false;
      pivot(leave, enter);
    }
    throw std::runtime_error("simplex iteration limit");
  }

  double objective(const std::vector<double>& cost) {
    double v = 0.0;
    for (std::size_t r = 0; r < rows_; ++r) v += cost[basis_[r]] * rhs(r);
    return v;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> a_;
  std::vector<std::size_t> basis_;
};

}  // namespace

LpResult maximize_on_simplex(const std::vector<double>& c,
                             const std::vector<std::vector<double>>& ge_rows,
                             const std::vector<double>& ge_rhs) {
  const std::size_t m = c.size();
  const std::size_t g = ge_rows.size();
  const std::size_t rows = g + 1;
  const std::size_t first_art = m + g;
  Tableau t(rows, m + g + rows);

  for (std::size_t r = 0; r < g; ++r) {
    const double sign = ge_rhs[r] < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < m; ++j) t.at(r, j) = sign * ge_rows[r][j];
    t.at(r, m + r) = -sign;
    t.rhs(r) = sign * ge_rhs[r];
  }
  for (std::size_t j = 0; j < m; ++j) t.at(g, j) = 1.0;
  t.rhs(g) = 1.0;
  for (std::size_t r = 0; r < rows; ++r) {
    t.at(r, first_art + r) = 1.0;
    t.basis(r) = first_art + r;
  }

  std::vector<double> phase1(t.cols(), 0.0);
  for (std::size_t r = 0; r < rows; ++r) phase1[first_art + r] = -1.0;
  t.optimize(phase1, t.cols());
  LpResult result;
  if (t.objective(phase1) < -1e-9) return result;

  for (std::size_t r = 0; r < rows; ++r) {
    if (t.basis(r) < first_art) continue;
    for (std::size_t j = 0; j < first_art; ++j) {
      if (std::abs(t.at(r, j)) > 1e-9) {
        t.pivot(r, j);
        break;
      }
    }
  }

  std::vector<double> phase2(t.cols(), 0.0);
  for (std::size_t j = 0; j < m; ++j) phase2[j] = c[j];
  if (!t.optimize(phase2, first_art)) {
    result.status = LpResult::Status::Unbounded;
    return result;
  }
  result.status = LpResult::Status::Optimal;
  result.y.assign(m, 0.0);
  for (std::size_t r = 0; r < rows; ++r)
    if (t.basis(r) < m) result.y[t.basis(r)] = t.rhs(r);
  result.objective = 0.0;
  for (std::size_t j = 0; j < m; ++j) result.objective += c[j] * result.y[j];
  return result;
}

}  // namespace fairvote::detail
