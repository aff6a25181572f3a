#pragma once

#include <cstddef>
#include <vector>

#include "fairvote/distribution.hpp"
#include "fairvote/profile.hpp"
#include "fairvote/utility.hpp"

namespace fairvote {

// {x in the simplex : x(a) >= lower_bounds[a]}.
struct FeasibleRegion {
  std::vector<double> lower_bounds;

  void validate() const;  // throws std::invalid_argument when empty
  bool contains(const Distribution& x) const;

  static FeasibleRegion unconstrained(std::size_t m);
  // lower bound p_a / beta with p_a the top-choice share and beta = 2(1 + ln 2m).
  static FeasibleRegion proportional_fairness(const PreferenceProfile& profile);
  // lower bound guard / m everywhere.
  static FeasibleRegion guarded(std::size_t m, double guard);
};

// 2(1 + ln 2m), the largest PF distortion the optimizer can be forced into.
double pf_bound(std::size_t m);

Distribution project(std::span<const double> v, const FeasibleRegion& region);

// Gradient of (1/n) sum_i 1/x(h_i(a*)) at the lowest-index maximizer a*.
// Throws std::domain_error when some prefix mass at a* is zero.
std::vector<double> pf_subgradient(const Distribution& x, const PreferenceProfile& profile);

struct SubgradientOptions {
  std::size_t max_iterations = 1'000'000;
};

struct OptimizationResult {
  Distribution distribution;
  double value = 0.0;
  std::size_t iterations = 0;
  std::size_t required_iterations = 0;  // (D G / eps)^2, saturated
  double guarantee = 0.0;               // proven gap of the best iterate
  bool certified = false;               // guarantee <= eps
};

OptimizationResult optimize_pf(const PreferenceProfile& profile, double epsilon,
                               const SubgradientOptions& options = {});

OptimizationResult optimize_distortion(const PreferenceProfile& profile, UtilityClass cls,
                                       double epsilon, double guard = 1e-3,
                                       const SubgradientOptions& options = {});

}  // namespace fairvote
