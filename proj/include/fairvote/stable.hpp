#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "fairvote/distribution.hpp"
#include "fairvote/profile.hpp"

namespace fairvote {

// One round of a stable lottery. A sampling round draws k alternatives i.i.d.
// from z, deduplicates and fills to size k. A committee round is a fixed
// committee (z holds its indicator).
struct LotteryRound {
  enum class Kind { Sampling, Committee };
  Kind kind = Kind::Sampling;
  std::vector<double> z;
};

// Per outsider a*, an upper bound on E[V(a*, X)] recomputed from the rounds.
struct StabilityCertificate {
  std::vector<double> per_alternative;
  double max_value = 0.0;
  double budget = 0.0;  // n / k
  bool stable = false;  // max_value < budget
};

struct StableLottery {
  std::size_t k = 0;
  std::vector<LotteryRound> rounds;
  StabilityCertificate certificate;
  std::size_t mwu_rounds = 0;  // 0 when a committee round was used directly
};

class CertificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

StabilityCertificate certify_lottery(const PreferenceProfile& profile, std::size_t k,
                                     const std::vector<LotteryRound>& rounds);

// Throws CertificationError if the final lottery does not certify.
StableLottery compute_stable_lottery(const PreferenceProfile& profile, std::size_t k,
                                     std::uint64_t seed);

// q(a): probability that a is among the sampled (not filled) members.
std::vector<double> lottery_marginals(const StableLottery& lottery);

// k = ceil(sqrt(m)).
std::size_t committee_size(std::size_t m);

Distribution stable_lottery_rule(const PreferenceProfile& profile, std::uint64_t seed);
Distribution stable_lottery_rule(const PreferenceProfile& profile, std::uint64_t seed,
                                 StableLottery* lottery_out);

// V(a*, X) for every alternative: weight of agents preferring a* to every
// member of X. Zero for members.
std::vector<std::int64_t> committee_support(const PreferenceProfile& profile,
                                            const std::vector<Alternative>& members);

struct Committee {
  std::vector<Alternative> members;  // sorted
  // max over outsiders of V(a*, X) k / n; X is c-stable for every c above it.
  double achieved_c = 0.0;
};

enum class CommitteeSearch { Exhaustive, LocalSearch, Auto };

CommitteeSearch parse_search_mode(std::string_view name);

Committee find_stable_committee(const PreferenceProfile& profile, std::size_t k,
                                CommitteeSearch mode, std::uint64_t seed);

Distribution stable_committee_rule(const PreferenceProfile& profile, std::uint64_t seed,
                                   CommitteeSearch mode = CommitteeSearch::Auto);

}  // namespace fairvote
