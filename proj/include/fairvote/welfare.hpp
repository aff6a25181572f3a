#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "fairvote/distribution.hpp"
#include "fairvote/numeric.hpp"
#include "fairvote/profile.hpp"
#include "fairvote/utility.hpp"

namespace fairvote {

// A value that may be +infinity, which Rational cannot represent.
template <typename T>
struct ExtendedValue {
  T value{};
  bool infinite = false;

  double as_double() const;
};

template <typename T>
struct BasicDistortionReport {
  ExtendedValue<T> value;
  Alternative witness_alternative = 0;
  BasicUtilityProfile<T> witness_utilities;
  UtilityClass utility_class = UtilityClass::All;
  // Deviation attaining the reported ratio; a point mass for utilitarian reports.
  std::optional<BasicDistribution<T>> deviation;
};

using DistortionReport = BasicDistortionReport<double>;
using ExactDistortionReport = BasicDistortionReport<Rational>;

// Weighted sum of expected utilities.
template <typename T>
T social_welfare(const BasicDistribution<T>& x, const BasicUtilityProfile<T>& u);

// Weighted geometric mean of expected utilities; 0 if anyone gets 0.
double nash_welfare(const Distribution& x, const UtilityProfile& u);

// sup over consistent u in the class of max_a SW(a,u)/SW(x,u). Rejects All.
template <typename T>
BasicDistortionReport<T> distortion(const BasicDistribution<T>& x,
                                    const PreferenceProfile& profile, UtilityClass cls);

// max_a (1/n) sum_i 1/x(h_i(a)), with the prefix-approval witness.
template <typename T>
BasicDistortionReport<T> pf_distortion(const BasicDistribution<T>& x,
                                       const PreferenceProfile& profile);

// max_a (1/n) sum_i u_i(a)/u_i(x). Rows that are identically zero count as
// indifferent (ratio 1).
template <typename T>
ExtendedValue<T> pf_value(const BasicDistribution<T>& x, const BasicUtilityProfile<T>& u);

struct NashOptOptions {
  double tolerance = 1e-7;  // stop once PF(y, u) <= 1 + tolerance
  std::size_t max_iterations = 200'000;
};

struct NashOptResult {
  Distribution y;
  double pf = 0.0;  // PF(y, u) >= 1, equal to 1 at the optimum
  std::size_t iterations = 0;
  bool converged = false;
};

// Maximizes sum_i w_i log u_i(y) over the simplex by projected gradient
// ascent with backtracking, starting from uniform.
NashOptResult nash_opt(const UtilityProfile& u, const NashOptOptions& options = {});

inline constexpr double kNashEnumerationLimit = 1e5;

// Exact Nash-welfare distortion by enumerating one prefix-approval row per
// ballot. Throws std::domain_error when m^(#ballots) exceeds the limit.
DistortionReport nash_distortion_smallscale(const Distribution& x,
                                            const PreferenceProfile& profile);

struct CoreReport {
  double alpha = 1.0;
  bool violated = false;
  std::vector<std::size_t> coalition;  // utility row indices; whole rows deviate
  std::optional<Distribution> deviation;
};

// Searches every coalition of utility rows (at most 20) for a y with
// (|S|/n) u_i(y) >= alpha u_i(x) for all i in S, one strict.
CoreReport core_check(const Distribution& x, const UtilityProfile& u, double alpha);

}  // namespace fairvote
