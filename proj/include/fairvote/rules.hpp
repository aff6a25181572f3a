#pragma once

#include <string_view>
#include <vector>

#include "fairvote/distribution.hpp"
#include "fairvote/profile.hpp"

namespace fairvote {

// x(a) = 1/(2m) + harm(a) / (2 n H_m) with harm(a) = sum_i 1/sigma_i(a).
template <typename T>
BasicDistribution<T> harmonic_rule(const PreferenceProfile& profile);

// Position weights w_1 >= ... >= w_m >= 0 summing to 1.
template <typename T>
struct BasicPointVotingWeights {
  std::vector<T> w;
  void validate() const;
};

// Weights that reproduce harmonic_rule as a point-voting scheme.
template <typename T>
BasicPointVotingWeights<T> harmonic_weights(std::size_t m);

// x(a) = (1/n) sum_i w[sigma_i(a)].
template <typename T>
BasicDistribution<T> point_voting_rule(const PreferenceProfile& profile,
                                       const BasicPointVotingWeights<T>& weights);

// z_0 <= ... <= z_n with z_k + z_{n-k} = 1.
template <typename T>
struct BasicSupportingSizeWeights {
  std::vector<T> z;
  void validate() const;
};

// x(a) = (1 / C(m,2)) sum_{b != a} z[V(a,b)], V(a,b) = #agents preferring a to b.
template <typename T>
BasicDistribution<T> supporting_size_rule(const PreferenceProfile& profile,
                                          const BasicSupportingSizeWeights<T>& weights);

enum class TwoAltObjective { UnitSumSW, UnitRangeSW, Nash, PF };

TwoAltObjective parse_objective(std::string_view name);
std::string_view objective_name(TwoAltObjective objective);

// Probability of a1 when a fraction alpha of the agents prefers a1 over a2.
double two_alt_rule(double alpha, TwoAltObjective objective);

// g(b) = ln(1-b) / (ln b + ln(1-b)), the map inverted by the Nash rule.
double nash_two_alt_g(double beta);

}  // namespace fairvote
