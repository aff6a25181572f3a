#include <random>

#include <gtest/gtest.h>

#include "fairvote/distribution.hpp"
#include "fairvote/profile.hpp"
#include "fairvote/utility.hpp"

namespace fairvote {
namespace {

const char* kExample = "3 3\n1 2 3\n2 1 3\n1 3 2\n";

TEST(ParseProfile, Example) {
  PreferenceProfile p = parse_profile(kExample);
  EXPECT_EQ(p.num_agents(), 3);
  EXPECT_EQ(p.num_alternatives(), 3u);
  EXPECT_EQ(p.top(0), 0u);
  EXPECT_EQ(p.top(1), 1u);
  EXPECT_TRUE(p.prefers(2, 2, 1));
  EXPECT_EQ(p.position(2, 1), 2u);
}

TEST(ParseProfile, SingleAlternative) {
  PreferenceProfile p = parse_profile("1 1\n1\n");
  EXPECT_EQ(p.num_agents(), 1);
  EXPECT_EQ(p.num_alternatives(), 1u);
}

TEST(ParseProfile, MultiplicityMatchesExplicitBallots) {
  PreferenceProfile weighted = parse_profile("2 3\n2: 1 2 3\n");
  PreferenceProfile explicit_ballots = parse_profile("2 3\n1 2 3\n1 2 3\n");
  EXPECT_EQ(weighted.num_agents(), 2);
  EXPECT_EQ(weighted.num_ballots(), 1u);
  EXPECT_EQ(weighted.weight(0), 2);
  EXPECT_EQ(explicit_ballots.num_ballots(), 2u);
  EXPECT_EQ(weighted.ballot_of_agent(1), 0u);
  EXPECT_EQ(explicit_ballots.ballot_of_agent(1), 1u);
}

TEST(ParseProfile, CommentsAndCommas) {
  PreferenceProfile p = parse_profile("# soc body\n2 3\n\n1,3,2\n# x\n3, 2, 1\n");
  EXPECT_EQ(p.top(1), 2u);
  EXPECT_EQ(p.order(0)[1], 2u);
}

TEST(ParseProfile, ErrorsCarryLineNumbers) {
  auto line_of = [](const char* text) {
    try {
      parse_profile(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  EXPECT_EQ(line_of("3\n"), 1u);
  EXPECT_EQ(line_of("2 3\n1 2 3\n1 1 3\n"), 3u);
  EXPECT_EQ(line_of("2 3\n1 2 3\n1 2 4\n"), 3u);
  EXPECT_EQ(line_of("2 3\n1 2 3\n1 2\n"), 3u);
  EXPECT_THROW(parse_profile("3 3\n1 2 3\n"), ParseError);
  EXPECT_THROW(parse_profile("1 2\n0: 1 2\n"), ParseError);
}

TEST(ParseProfile, RoundTrip) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    PreferenceProfile p = random_profile(1 + trial % 9, 1 + trial % 6, rng);
    EXPECT_EQ(parse_profile(serialize_profile(p)), p);
  }
  PreferenceProfile weighted = parse_profile("5 2\n3: 2 1\n2: 1 2\n");
  EXPECT_EQ(parse_profile(serialize_profile(weighted)), weighted);
}

TEST(Distribution, RejectsBadInput) {
  EXPECT_THROW(Distribution({0.5, 0.6}), std::invalid_argument);
  EXPECT_THROW(Distribution({1.5, -0.5}), std::invalid_argument);
  EXPECT_THROW(ExactDistribution({Rational(1, 3), Rational(1, 3)}), std::invalid_argument);
  EXPECT_NO_THROW(ExactDistribution({Rational(1, 3), Rational(2, 3)}));
}

TEST(PrefixMass, Example) {
  PreferenceProfile p = parse_profile(kExample);
  ExactDistribution x({Rational(1, 2), Rational(1, 4), Rational(1, 4)});
  EXPECT_EQ(prefix_mass(x, p, 1, 0), Rational(3, 4));
  EXPECT_EQ(prefix_mass(x, p, 0, 0), Rational(1, 2));
  EXPECT_EQ(prefix_mass(x, p, 2, 1), Rational(1));
}

TEST(PrefixMass, MonotoneDownTheRanking) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    PreferenceProfile p = random_profile(4, 6, rng);
    Distribution x = random_distribution(6, rng);
    for (std::size_t b = 0; b < p.num_ballots(); ++b) {
      auto masses = prefix_masses(x, p, b);
      EXPECT_DOUBLE_EQ(prefix_mass(x, p, b, p.top(b)), x[p.top(b)]);
      double previous = 0.0;
      for (std::size_t pos = 0; pos < 6; ++pos) {
        const double mass = prefix_mass(x, p, b, p.order(b)[pos]);
        EXPECT_EQ(mass, masses[pos]);
        EXPECT_GE(mass, previous);
        previous = mass;
      }
      EXPECT_NEAR(previous, 1.0, 1e-12);
    }
  }
}

TEST(Consistency, ExampleUnitSumProfiles) {
  PreferenceProfile p = parse_profile(kExample);
  using R = Rational;
  auto u2 = ExactUtilityProfile::from_ranked_rows(
      p, {{R(1, 2), R(1, 2), R(0)}, {R(1), R(0), R(0)}, {R(1, 3), R(1, 3), R(1, 3)}},
      UtilityClass::UnitSum);
  EXPECT_TRUE(check_consistency(u2, p).ok);
  auto u1 = ExactUtilityProfile::from_ranked_rows(
      p, {{R(1, 2), R(1, 3), R(1, 6)}, {R(1, 2), R(1, 2), R(0)}, {R(1, 3), R(1, 3), R(1, 3)}},
      UtilityClass::UnitSum);
  EXPECT_TRUE(check_consistency(u1, p).ok);
  EXPECT_EQ(u1(1, 0), R(1, 2));
  EXPECT_EQ(u1(2, 1), R(1, 3));
}

TEST(Consistency, ReversedPair) {
  PreferenceProfile p = parse_profile("1 2\n1 2\n");
  auto u = UtilityProfile::for_profile(p, {{0.0, 1.0}}, UtilityClass::UnitRange);
  ConsistencyReport report = check_consistency(u, p);
  ASSERT_FALSE(report.ok);
  EXPECT_EQ(report.violation->row, 0u);
  EXPECT_EQ(report.violation->better, Alternative{0});
  EXPECT_EQ(report.violation->worse, Alternative{1});
}

TEST(Consistency, ClassConstraints) {
  PreferenceProfile p = parse_profile("1 3\n1 2 3\n");
  auto approval = UtilityProfile::for_profile(p, {{1.0, 0.5, 0.0}}, UtilityClass::Approval);
  EXPECT_FALSE(check_consistency(approval, p).ok);
  auto unit_sum = UtilityProfile::for_profile(p, {{0.5, 0.25, 0.0}}, UtilityClass::UnitSum);
  EXPECT_FALSE(check_consistency(unit_sum, p).ok);
  auto unit_range = UtilityProfile::for_profile(p, {{0.9, 0.5, 0.0}}, UtilityClass::UnitRange);
  EXPECT_FALSE(check_consistency(unit_range, p).ok);
  auto balanced = UtilityProfile::for_profile(p, {{1.0, 0.0, 0.0}}, UtilityClass::Balanced);
  EXPECT_TRUE(check_consistency(balanced, p).ok);
  auto all = UtilityProfile::for_profile(p, {{7.0, 7.0, 2.0}}, UtilityClass::All);
  EXPECT_TRUE(check_consistency(all, p).ok);
}

TEST(Consistency, DimensionMismatchThrows) {
  PreferenceProfile p = parse_profile("1 3\n1 2 3\n");
  auto u = UtilityProfile({{1.0, 0.0}}, {1}, UtilityClass::All);
  EXPECT_THROW(check_consistency(u, p), std::invalid_argument);
}

TEST(Consistency, RandomUtilitiesAlwaysConsistent) {
  std::mt19937_64 rng(2024);
  const UtilityClass classes[] = {UtilityClass::UnitSum, UtilityClass::UnitRange,
                                  UtilityClass::Approval, UtilityClass::Balanced,
                                  UtilityClass::All};
  for (int draw = 0; draw < 1000; ++draw) {
    PreferenceProfile p = random_profile(1 + draw % 7, 1 + draw % 5, rng);
    UtilityClass cls = classes[draw % 5];
    auto u = random_consistent_utilities(p, cls, rng);
    auto report = check_consistency(u, p);
    EXPECT_TRUE(report.ok) << class_name(cls) << ": " << report.violation->reason;
  }
}

}  // namespace
}  // namespace fairvote
