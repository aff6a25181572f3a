#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "fairvote/pf_optimizer.hpp"
#include "fairvote/rules.hpp"
#include "fairvote/simplex.hpp"
#include "fairvote/welfare.hpp"

namespace fairvote {
namespace {

TEST(Project, WaterFilling) {
  Distribution x = project(std::vector<double>{0.6, 0.6, -0.2}, FeasibleRegion::unconstrained(3));
  EXPECT_NEAR(x[0], 0.5, 1e-15);
  EXPECT_NEAR(x[1], 0.5, 1e-15);
  EXPECT_EQ(x[2], 0.0);
}

TEST(Project, Idempotent) {
  FeasibleRegion region{{0.1, 0.0, 0.2}};
  std::vector<double> v{0.3, 0.25, 0.45};
  Distribution x = project(v, region);
  for (std::size_t a = 0; a < 3; ++a) EXPECT_NEAR(x[a], v[a], 1e-15);
}

TEST(Project, ForcedPoint) {
  Distribution x = project(std::vector<double>{-3.0, 8.0, 0.5}, FeasibleRegion{{1.0, 0.0, 0.0}});
  EXPECT_EQ(x[0], 1.0);
  EXPECT_EQ(x[1], 0.0);
  EXPECT_EQ(x[2], 0.0);
}

TEST(Project, EmptyRegionThrows) {
  EXPECT_THROW(project(std::vector<double>{0.5, 0.5}, FeasibleRegion{{0.7, 0.7}}),
               std::invalid_argument);
}

TEST(Project, StaysInRegionAndIsClosest) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = 2 + trial % 7;
    std::vector<double> v(m), floor(m);
    for (auto& e : v) e = normal(rng);
    Distribution share = random_distribution(m, rng);
    for (std::size_t a = 0; a < m; ++a) floor[a] = 0.5 * share[a];
    FeasibleRegion region{floor};
    Distribution x = project(v, region);
    EXPECT_TRUE(region.contains(x));
    // Optimality: (v - x) . (z - x) <= 0 for feasible z.
    for (int probe = 0; probe < 5; ++probe) {
      Distribution d = random_distribution(m, rng);
      double inner = 0.0;
      for (std::size_t a = 0; a < m; ++a) inner += (v[a] - x[a]) * (floor[a] + 0.5 * d[a] - x[a]);
      EXPECT_LE(inner, 1e-12);
    }
  }
}

TEST(Simplex, ScaledTotal) {
  auto w = project_onto_simplex(std::vector<double>{2.0, 0.0}, 0.5);
  EXPECT_DOUBLE_EQ(w[0], 0.5);
  EXPECT_DOUBLE_EQ(w[1], 0.0);
}

TEST(PfSubgradient, SingleAgent) {
  PreferenceProfile p = parse_profile("1 2\n1 2\n");
  auto g = pf_subgradient(Distribution({0.25, 0.75}), p);
  EXPECT_DOUBLE_EQ(g[0], -16.0);
  EXPECT_DOUBLE_EQ(g[1], 0.0);
}

TEST(PfSubgradient, OppositePairTieTakesFirstAlternative) {
  PreferenceProfile p = parse_profile("2 2\n1 2\n2 1\n");
  auto g = pf_subgradient(Distribution({0.5, 0.5}), p);
  EXPECT_DOUBLE_EQ(g[0], -2.5);
  EXPECT_DOUBLE_EQ(g[1], -0.5);
  PreferenceProfile swapped = parse_profile("2 2\n2 1\n1 2\n");
  EXPECT_EQ(pf_subgradient(Distribution({0.5, 0.5}), swapped), g);
}

TEST(PfSubgradient, ZeroPrefixThrows) {
  PreferenceProfile p = parse_profile("2 2\n1 2\n2 1\n");
  EXPECT_THROW(pf_subgradient(Distribution::point_mass(2, 0), p), std::domain_error);
}

TEST(PfSubgradient, MatchesFiniteDifferences) {
  std::mt19937_64 rng(3);
  int checked = 0;
  while (checked < 50) {
    PreferenceProfile p = random_profile(1 + checked % 6, 2 + checked % 5, rng);
    const std::size_t m = p.num_alternatives();
    Distribution x = random_distribution(m, rng);
    // Skip points where the top two payoffs are close.
    std::vector<double> payoff(m, 0.0);
    for (Alternative a = 0; a < m; ++a)
      for (std::size_t b = 0; b < p.num_ballots(); ++b)
        payoff[a] += p.weight(b) / prefix_mass(x, p, b, a);
    std::vector<double> sorted = payoff;
    std::sort(sorted.rbegin(), sorted.rend());
    if (sorted[0] - sorted[1] < 1e-3 * sorted[0]) continue;
    if (*std::min_element(x.probs().begin(), x.probs().end()) < 1e-3) continue;
    ++checked;
    auto g = pf_subgradient(x, p);
    const double h = 1e-7;
    for (Alternative a = 0; a < m; ++a) {
      // The payoff extends off the simplex, so perturb one coordinate freely.
      double up = 0.0, down = 0.0;
      Alternative star = 0;
      for (Alternative c = 1; c < m; ++c)
        if (payoff[c] > payoff[star]) star = c;
      for (std::size_t b = 0; b < p.num_ballots(); ++b) {
        double mass = prefix_mass(x, p, b, star);
        const bool inside = p.position(b, a) <= p.position(b, star);
        up += p.weight(b) / (mass + (inside ? h : 0.0));
        down += p.weight(b) / (mass - (inside ? h : 0.0));
      }
      const double fd = (up - down) / (2.0 * h * static_cast<double>(p.num_agents()));
      EXPECT_NEAR(g[a], fd, 1e-5 * std::max(1.0, std::abs(fd)));
    }
    // Along the simplex, against pf_distortion itself.
    for (Alternative a = 1; a < m; ++a) {
      std::vector<double> up(x.probs().begin(), x.probs().end()), down = up;
      up[a] += h, up[0] -= h;
      down[a] -= h, down[0] += h;
      const double fd = (pf_distortion(Distribution(up), p).value.value -
                         pf_distortion(Distribution(down), p).value.value) /
                        (2.0 * h);
      EXPECT_NEAR(g[a] - g[0], fd, 1e-5 * std::max(1.0, std::abs(fd)));
    }
  }
}

TEST(OptimizePf, UnanimousIsPointMass) {
  PreferenceProfile p = parse_profile("3 4\n3: 2 1 4 3\n");
  OptimizationResult r = optimize_pf(p, 1e-3);
  EXPECT_DOUBLE_EQ(r.value, 1.0);
  EXPECT_NEAR(r.distribution[1], 1.0, 1e-12);
}

TEST(OptimizePf, IteratesStayInRegionAndBelowBound) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    PreferenceProfile p = random_profile(3 + trial, 3 + trial % 10, rng);
    SubgradientOptions options;
    options.max_iterations = 500;
    OptimizationResult r = optimize_pf(p, 1e-3, options);
    EXPECT_TRUE(FeasibleRegion::proportional_fairness(p).contains(r.distribution));
    EXPECT_LE(r.value, pf_bound(p.num_alternatives()));
    EXPECT_DOUBLE_EQ(r.value, pf_distortion(r.distribution, p).value.value);
    EXPECT_LE(r.value, pf_distortion(harmonic_rule<double>(p), p).value.value + 1e-9);
  }
}

TEST(OptimizePf, RegionKeepsGridOptimum) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    PreferenceProfile p = random_profile(2 + trial % 5, 3, rng);
    double grid_best = INFINITY;
    const int steps = 200;
    for (int i = 0; i <= steps; ++i)
      for (int j = 0; i + j <= steps; ++j) {
        Distribution x({double(i) / steps, double(j) / steps, double(steps - i - j) / steps});
        grid_best = std::min(grid_best, pf_distortion(x, p).value.as_double());
      }
    SubgradientOptions options;
    options.max_iterations = 20000;
    EXPECT_LE(optimize_pf(p, 1e-3, options).value, grid_best + 1e-3);
  }
}

TEST(OptimizePf, TwoAlternativesMatchClosedForm) {
  for (int n_a : {1, 3, 5, 7}) {
    std::string text = "8 2\n" + std::to_string(n_a) + ": 1 2\n" + std::to_string(8 - n_a) +
                       ": 2 1\n";
    OptimizationResult r = optimize_pf(parse_profile(text), 1e-4);
    EXPECT_NEAR(r.distribution[0], two_alt_rule(n_a / 8.0, TwoAltObjective::PF), 1e-3);
  }
}

TEST(OptimizeDistortion, UnanimousWithinGuard) {
  PreferenceProfile p = parse_profile("2 3\n2: 3 1 2\n");
  const double guard = 1e-3;
  OptimizationResult r = optimize_distortion(p, UtilityClass::UnitSum, 1e-3, guard);
  EXPECT_LE(r.value, 1.0 / (1.0 - guard));
  EXPECT_GT(r.distribution[2], 0.99);
  EXPECT_THROW(optimize_distortion(p, UtilityClass::UnitSum, 1e-3, 0.6), std::invalid_argument);
  EXPECT_THROW(optimize_distortion(p, UtilityClass::All, 1e-3), std::invalid_argument);
}

TEST(OptimizeDistortion, Deterministic) {
  std::mt19937_64 rng(6);
  PreferenceProfile p = random_profile(5, 4, rng);
  SubgradientOptions options;
  options.max_iterations = 300;
  auto a = optimize_distortion(p, UtilityClass::Balanced, 1e-3, 1e-3, options);
  auto b = optimize_distortion(p, UtilityClass::Balanced, 1e-3, 1e-3, options);
  EXPECT_EQ(a.value, b.value);
  EXPECT_TRUE(std::ranges::equal(a.distribution.probs(), b.distribution.probs()));
}

}  // namespace
}  // namespace fairvote
