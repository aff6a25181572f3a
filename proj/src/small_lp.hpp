#pragma once

#include <cstddef>
#include <vector>

namespace fairvote::detail {

struct LpResult {
  enum class Status { Optimal, Infeasible, Unbounded };
  Status status = Status::Infeasible;
  std::vector<double> y;
  double objective = 0.0;
};

// maximize c.y  s.t.  ge_rows[i].y >= ge_rhs[i],  sum(y) = 1,  y >= 0.
// Dense two-phase simplex with Bland's rule; meant for a few dozen variables.
LpResult maximize_on_simplex(const std::vector<double>& c,
                             const std::vector<std::vector<double>>& ge_rows,
                             const std::vector<double>& ge_rhs);

}  // namespace fairvote::detail
