#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fairvote/distribution.hpp"
#include "fairvote/numeric.hpp"
#include "fairvote/profile.hpp"

namespace fairvote {

// Approval is contained in UnitRange, and UnitRange and UnitSum are both
// contained in Balanced.
enum class UtilityClass { UnitSum, UnitRange, Approval, Balanced, All };

std::string_view class_name(UtilityClass cls);
UtilityClass parse_class(std::string_view name);  // "unit-sum", "unit-range", ...

// One utility row per ballot, indexed by alternative. A row carries the
// ballot's multiplicity.
template <typename T>
class BasicUtilityProfile {
 public:
  BasicUtilityProfile(std::vector<std::vector<T>> rows, std::vector<std::int64_t> weights,
                      UtilityClass cls);

  // Rows weighted like the profile's ballots.
  static BasicUtilityProfile for_profile(const PreferenceProfile& profile,
                                         std::vector<std::vector<T>> rows, UtilityClass cls);

  // Same, but each row lists utilities in that ballot's ranking order.
  static BasicUtilityProfile from_ranked_rows(const PreferenceProfile& profile,
                                              const std::vector<std::vector<T>>& ranked,
                                              UtilityClass cls);

  std::size_t num_rows() const { return rows_.size(); }
  std::size_t num_alternatives() const { return rows_.empty() ? 0 : rows_.front().size(); }
  std::int64_t num_agents() const { return n_; }
  std::int64_t weight(std::size_t r) const { return weights_[r]; }
  std::span<const T> row(std::size_t r) const { return rows_[r]; }
  const T& operator()(std::size_t r, Alternative a) const { return rows_[r][a]; }
  UtilityClass utility_class() const { return cls_; }

  // u_r(x) = sum_a x(a) u_r(a).
  T expected(std::size_t r, const BasicDistribution<T>& x) const;

 private:
  std::vector<std::vector<T>> rows_;
  std::vector<std::int64_t> weights_;
  std::int64_t n_ = 0;
  UtilityClass cls_;
};

using UtilityProfile = BasicUtilityProfile<double>;
using ExactUtilityProfile = BasicUtilityProfile<Rational>;

UtilityProfile to_double(const ExactUtilityProfile& u);

struct ConsistencyViolation {
  std::size_t row = 0;
  // Set for ranking violations: better is ranked above worse but valued less.
  std::optional<Alternative> better;
  std::optional<Alternative> worse;
  std::string reason;
};

struct ConsistencyReport {
  bool ok = true;
  std::optional<ConsistencyViolation> violation;
};

// Throws std::invalid_argument when rows do not line up with the ballots.
template <typename T>
ConsistencyReport check_consistency(const BasicUtilityProfile<T>& u,
                                    const PreferenceProfile& profile);

// Random utilities consistent with the profile and satisfying the class.
UtilityProfile random_consistent_utilities(const PreferenceProfile& profile, UtilityClass cls,
                                           std::mt19937_64& rng);

// Impartial-culture profile with n unit-weight ballots.
PreferenceProfile random_profile(std::int64_t n, std::size_t m, std::mt19937_64& rng);

// Uniformly random point of the simplex.
Distribution random_distribution(std::size_t m, std::mt19937_64& rng);

}  // namespace fairvote
