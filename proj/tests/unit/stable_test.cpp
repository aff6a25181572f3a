#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "fairvote/fixtures.hpp"
#include "fairvote/stable.hpp"
#include "fairvote/welfare.hpp"

namespace fairvote {
namespace {

const char* kExample = "3 3\n1 2 3\n2 1 3\n1 3 2\n";

// Agents preferring a to every member, counted directly from the ballots.
double brute_force_factor(const PreferenceProfile& p, const std::vector<Alternative>& members,
                          std::size_t k) {
  std::int64_t worst = 0;
  for (Alternative a = 0; a < p.num_alternatives(); ++a) {
    if (std::ranges::find(members, a) != members.end()) continue;
    std::int64_t v = 0;
    for (std::size_t b = 0; b < p.num_ballots(); ++b) {
      bool above_all = true;
      for (Alternative c : members) above_all = above_all && p.prefers(b, a, c);
      if (above_all) v += p.weight(b);
    }
    worst = std::max(worst, v);
  }
  return static_cast<double>(worst) * static_cast<double>(k) /
         static_cast<double>(p.num_agents());
}

TEST(StableLottery, UnanimousUsesTopCommittee) {
  PreferenceProfile p = parse_profile("3 5\n3: 4 2 5 1 3\n");
  for (std::size_t k = 1; k <= 5; ++k) {
    StableLottery lottery = compute_stable_lottery(p, k, 0);
    ASSERT_EQ(lottery.rounds.size(), 1u);
    EXPECT_EQ(lottery.certificate.max_value, 0.0);
    EXPECT_TRUE(lottery.certificate.stable);
    auto q = lottery_marginals(lottery);
    for (std::size_t pos = 0; pos < 5; ++pos)
      EXPECT_DOUBLE_EQ(q[p.order(0)[pos]], pos < k ? 1.0 : 0.0);
  }
}

TEST(StableLottery, ExampleSingleMember) {
  PreferenceProfile p = parse_profile(kExample);
  StableLottery lottery = compute_stable_lottery(p, 1, 0);
  EXPECT_TRUE(lottery.certificate.stable);
  EXPECT_LT(lottery.certificate.max_value, 3.0);
  EXPECT_DOUBLE_EQ(lottery.certificate.budget, 3.0);
}

TEST(StableLottery, PointMassCertificateByHand) {
  PreferenceProfile p = parse_profile(kExample);
  auto cert = certify_lottery(p, 1, {{LotteryRound::Kind::Sampling, {1.0, 0.0, 0.0}}});
  EXPECT_DOUBLE_EQ(cert.per_alternative[0], 0.0);
  EXPECT_DOUBLE_EQ(cert.per_alternative[1], 1.0);
  EXPECT_DOUBLE_EQ(cert.per_alternative[2], 0.0);
}

TEST(StableLottery, OppositePair) {
  PreferenceProfile p = parse_profile("2 2\n1 2\n2 1\n");
  StableLottery lottery = compute_stable_lottery(p, 1, 0);
  EXPECT_LE(lottery.certificate.max_value, 1.0);
  EXPECT_TRUE(lottery.certificate.stable);
}

TEST(StableLottery, RandomProfilesCertifyWithinValueBound) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t m = 3 + trial % 14;
    const std::int64_t n = 5 + trial % 25;
    PreferenceProfile p = random_profile(n, m, rng);
    const std::size_t k = committee_size(m);
    StableLottery lottery = compute_stable_lottery(p, k, 1);
    const double nd = static_cast<double>(n);
    const double gap = 0.5 * (nd / k - nd / (k + 1));
    EXPECT_TRUE(lottery.certificate.stable);
    EXPECT_LT(lottery.certificate.max_value, nd / k);
    EXPECT_LE(lottery.certificate.max_value, nd / (k + 1) + gap + 1e-9);
    auto q = lottery_marginals(lottery);
    double total = 0.0;
    for (double v : q) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
      total += v;
    }
    EXPECT_LE(total, static_cast<double>(k) + 1e-9);
  }
}

TEST(StableLottery, DeterministicGivenSeed) {
  std::mt19937_64 rng(4);
  PreferenceProfile p = random_profile(30, 16, rng);
  auto a = stable_lottery_rule(p, 3);
  auto b = stable_lottery_rule(p, 3);
  EXPECT_TRUE(std::ranges::equal(a.probs(), b.probs()));
}

TEST(LotteryMarginals, Formula) {
  StableLottery point{3, {{LotteryRound::Kind::Sampling, {1.0, 0.0, 0.0, 0.0}}}, {}, 0};
  auto q = lottery_marginals(point);
  EXPECT_EQ(q, (std::vector<double>{1.0, 0.0, 0.0, 0.0}));
  StableLottery uniform{2, {{LotteryRound::Kind::Sampling, {0.25, 0.25, 0.25, 0.25}}}, {}, 0};
  for (double v : lottery_marginals(uniform)) EXPECT_DOUBLE_EQ(v, 7.0 / 16.0);
}

TEST(StableLotteryRule, UnanimousFourAlternatives) {
  PreferenceProfile p = parse_profile("2 4\n2: 1 2 3 4\n");
  Distribution x = stable_lottery_rule(p, 0);
  EXPECT_DOUBLE_EQ(x[0], 3.0 / 8.0);
  EXPECT_DOUBLE_EQ(x[1], 3.0 / 8.0);
  EXPECT_DOUBLE_EQ(x[2], 1.0 / 8.0);
  EXPECT_DOUBLE_EQ(x[3], 1.0 / 8.0);
}

TEST(StableLotteryRule, SingleAlternative) {
  EXPECT_EQ(stable_lottery_rule(parse_profile("3 1\n3: 1\n"), 0)[0], 1.0);
}

TEST(StableLotteryRule, Example) {
  PreferenceProfile p = parse_profile(kExample);
  Distribution x = stable_lottery_rule(p, 0);
  EXPECT_GE(x[0], x[2]);
  auto report = distortion(x, p, UtilityClass::Balanced);
  EXPECT_LE(report.value.as_double(), 2.0 * std::sqrt(3.0));
}

TEST(StableLotteryRule, UniformFloor) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t m = 2 + trial % 20;
    Distribution x = stable_lottery_rule(random_profile(3 + trial, m, rng), 0);
    for (double v : x.probs()) EXPECT_GE(v, 1.0 / (2.0 * m) - 1e-15);
  }
}

TEST(StableCommittee, Unanimous) {
  PreferenceProfile p = parse_profile("4 5\n4: 3 1 2 5 4\n");
  Committee c = find_stable_committee(p, 2, CommitteeSearch::Exhaustive, 0);
  EXPECT_EQ(c.members, (std::vector<Alternative>{0, 2}));
  EXPECT_EQ(c.achieved_c, 0.0);
}

TEST(StableCommittee, ExampleSingleton) {
  PreferenceProfile p = parse_profile(kExample);
  Committee c = find_stable_committee(p, 1, CommitteeSearch::Exhaustive, 0);
  EXPECT_EQ(c.members, (std::vector<Alternative>{0}));
  EXPECT_DOUBLE_EQ(c.achieved_c, 1.0 / 3.0);
}

TEST(StableCommittee, SqrtLowerBoundInstance) {
  FixtureBundle bundle = gen_sqrt_lb(4);
  Committee c = find_stable_committee(bundle.profile, 2, CommitteeSearch::Exhaustive, 0);
  // Four distinct tops, so nothing beats one defector per outsider; the
  // second-choice pair is among the minimizers.
  EXPECT_DOUBLE_EQ(c.achieved_c, 0.5);
  EXPECT_DOUBLE_EQ(brute_force_factor(bundle.profile, {4, 5}, 2), 0.5);
}

TEST(StableCommittee, ExhaustiveIsExactMinimum) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t m = 2 + trial % 7;
    PreferenceProfile p = random_profile(1 + trial % 11, m, rng);
    const std::size_t k = 1 + trial % (m - 1);
    Committee c = find_stable_committee(p, k, CommitteeSearch::Exhaustive, 0);
    EXPECT_DOUBLE_EQ(c.achieved_c, brute_force_factor(p, c.members, k));

    double best = INFINITY;
    std::vector<bool> pick(m, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
    do {
      std::vector<Alternative> members;
      for (Alternative a = 0; a < m; ++a)
        if (pick[a]) members.push_back(a);
      best = std::min(best, brute_force_factor(p, members, k));
    } while (std::prev_permutation(pick.begin(), pick.end()));
    EXPECT_DOUBLE_EQ(c.achieved_c, best);
  }
}

TEST(StableCommittee, LocalSearchReportsHonestFactor) {
  std::mt19937_64 rng(31);
  PreferenceProfile p = random_profile(40, 30, rng);
  Committee c = find_stable_committee(p, 6, CommitteeSearch::LocalSearch, 5);
  EXPECT_EQ(c.members.size(), 6u);
  EXPECT_DOUBLE_EQ(c.achieved_c, brute_force_factor(p, c.members, 6));
}

TEST(StableCommitteeRule, UnanimousFourAlternatives) {
  Distribution x = stable_committee_rule(parse_profile("1 4\n1 2 3 4\n"), 0);
  EXPECT_DOUBLE_EQ(x[0], 3.0 / 8.0);
  EXPECT_DOUBLE_EQ(x[1], 3.0 / 8.0);
  EXPECT_DOUBLE_EQ(x[2], 1.0 / 8.0);
  EXPECT_DOUBLE_EQ(x[3], 1.0 / 8.0);
  EXPECT_EQ(stable_committee_rule(parse_profile("1 1\n1\n"), 0)[0], 1.0);
}

TEST(StableCommitteeRule, Example) {
  PreferenceProfile p = parse_profile(kExample);
  Committee c = find_stable_committee(p, 2, CommitteeSearch::Exhaustive, 0);
  ASSERT_TRUE(std::ranges::find(c.members, 0u) != c.members.end());
  Distribution x = stable_committee_rule(p, 0, CommitteeSearch::Exhaustive);
  EXPECT_DOUBLE_EQ(x[0], 5.0 / 12.0);
  double total = 0.0;
  for (double v : x.probs()) total += v;
  EXPECT_NEAR(total, 1.0, 1e-15);
}

}  // namespace
}  // namespace fairvote
