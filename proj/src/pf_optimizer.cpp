#include "fairvote/pf_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "fairvote/simplex.hpp"
#include "fairvote/welfare.hpp"

namespace fairvote {

void FeasibleRegion::validate() const {
  if (lower_bounds.empty()) throw std::invalid_argument("region over zero alternatives");
  double total = 0.0;
  for (double l : lower_bounds) {
    if (!(l >= 0.0)) throw std::invalid_argument("negative lower bound");
    total += l;
  }
  if (total > 1.0 + 1e-12) throw std::invalid_argument("empty region: lower bounds exceed 1");
}

bool FeasibleRegion::contains(const Distribution& x) const {
  if (x.size() != lower_bounds.size()) return false;
  for (Alternative a = 0; a < x.size(); ++a)
    if (x[a] < lower_bounds[a]) return false;
  return true;
}

FeasibleRegion FeasibleRegion::unconstrained(std::size_t m) {
  return FeasibleRegion{std::vector<double>(m, 0.0)};
}

double pf_bound(std::size_t m) { return 2.0 * (1.0 + std::log(2.0 * static_cast<double>(m))); }

FeasibleRegion FeasibleRegion::proportional_fairness(const PreferenceProfile& profile) {
  const double beta = pf_bound(profile.num_alternatives());
  FeasibleRegion region{std::vector<double>(profile.num_alternatives(), 0.0)};
  for (std::size_t b = 0; b < profile.num_ballots(); ++b)
    region.lower_bounds[profile.top(b)] += static_cast<double>(profile.weight(b));
  for (double& l : region.lower_bounds) l /= static_cast<double>(profile.num_agents()) * beta;
  return region;
}

FeasibleRegion FeasibleRegion::guarded(std::size_t m, double guard) {
  if (!(guard > 0.0 && guard < 0.5)) throw std::invalid_argument("guard must lie in (0, 1/2)");
  return FeasibleRegion{std::vector<double>(m, guard / static_cast<double>(m))};
}

Distribution project(std::span<const double> v, const FeasibleRegion& region) {
  region.validate();
  const std::size_t m = region.lower_bounds.size();
  if (v.size() != m) throw std::invalid_argument("dimension mismatch");
  const double floor_mass =
      std::accumulate(region.lower_bounds.begin(), region.lower_bounds.end(), 0.0);
  std::vector<double> shifted(m);
  for (Alternative a = 0; a < m; ++a) shifted[a] = v[a] - region.lower_bounds[a];
  auto w = project_onto_simplex(shifted, std::max(0.0, 1.0 - floor_mass));
  std::vector<double> x(m);
  for (Alternative a = 0; a < m; ++a) x[a] = region.lower_bounds[a] + w[a];
  return Distribution(std::move(x));
}

std::vector<double> pf_subgradient(const Distribution& x, const PreferenceProfile& profile) {
  const std::size_t m = profile.num_alternatives();
  auto report = pf_distortion(x, profile);
  const Alternative star = report.witness_alternative;
  if (report.value.infinite)
    throw std::domain_error("pf_subgradient: zero prefix mass at the maximizer");
  std::vector<double> g(m, 0.0);
  const double n = static_cast<double>(profile.num_agents());
  for (std::size_t b = 0; b < profile.num_ballots(); ++b) {
    const std::size_t pos = profile.position(b, star);
    const double mass = prefix_mass(x, profile, b, star);
    const double term = static_cast<double>(profile.weight(b)) / (mass * mass) / n;
    auto order = profile.order(b);
    for (std::size_t p = 0; p <= pos; ++p) g[order[p]] -= term;
  }
  return g;
}

namespace {

constexpr double kDiameter = 1.4142135623730951;  // diameter of the simplex

// Projected subgradient descent with normalized steps D / sqrt(T), keeping
// the best iterate.
OptimizationResult descend(
    const FeasibleRegion& region, const Distribution& start, double epsilon, double g_bound,
    const SubgradientOptions& options,
    const std::function<std::pair<double, std::vector<double>>(const Distribution&)>& oracle) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  const double wanted = std::ceil(std::pow(kDiameter * g_bound / epsilon, 2.0));
  const double cap = static_cast<double>(std::max<std::size_t>(1, options.max_iterations));
  const std::size_t required =
      wanted > 1e18 ? std::numeric_limits<std::size_t>::max() : static_cast<std::size_t>(wanted);
  const std::size_t planned = static_cast<std::size_t>(std::min(std::max(wanted, 1.0), cap));
  const double step = kDiameter / std::sqrt(static_cast<double>(planned));

  Distribution x = start;
  OptimizationResult result{start, std::numeric_limits<double>::infinity(), 0, required};
  for (std::size_t t = 0; t < planned; ++t) {
    auto [value, g] = oracle(x);
    ++result.iterations;
    if (value < result.value) {
      result.value = value;
      result.distribution = x;
    }
    double norm = 0.0;
    for (double v : g) norm += v * v;
    norm = std::sqrt(norm);
    if (norm > g_bound * (1.0 + 1e-9))
      throw std::logic_error("subgradient norm exceeds the region bound");
    if (norm == 0.0) break;  // unconstrained minimizer reached
    std::vector<double> next(x.size());
    for (Alternative a = 0; a < x.size(); ++a) next[a] = x[a] - step * g[a] / norm;
    x = project(next, region);
  }
  result.guarantee = g_bound * kDiameter / std::sqrt(static_cast<double>(result.iterations));
  result.certified = result.guarantee <= epsilon;
  return result;
}

}  // namespace

OptimizationResult optimize_pf(const PreferenceProfile& profile, double epsilon,
                               const SubgradientOptions& options) {
  const std::size_t m = profile.num_alternatives();
  const FeasibleRegion region = FeasibleRegion::proportional_fairness(profile);
  const double beta = pf_bound(m);
  const double n = static_cast<double>(profile.num_agents());

  std::vector<double> shares(m, 0.0);
  for (std::size_t b = 0; b < profile.num_ballots(); ++b)
    shares[profile.top(b)] += static_cast<double>(profile.weight(b)) / n;
  double g_bound = 0.0;
  for (std::size_t b = 0; b < profile.num_ballots(); ++b) {
    const double floor = shares[profile.top(b)] / beta;
    g_bound += static_cast<double>(profile.weight(b)) / (floor * floor) / n;
  }
  g_bound *= std::sqrt(static_cast<double>(m));

  auto oracle = [&](const Distribution& x) {
    auto report = pf_distortion(x, profile);
    return std::make_pair(report.value.as_double(), pf_subgradient(x, profile));
  };
  auto result = descend(region, project(shares, region), epsilon, g_bound, options, oracle);
  if (result.value > beta * (1.0 + 1e-12))
    throw std::logic_error("optimized PF distortion exceeds 2(1 + ln 2m)");
  return result;
}

OptimizationResult optimize_distortion(const PreferenceProfile& profile, UtilityClass cls,
                                       double epsilon, double guard,
                                       const SubgradientOptions& options) {
  if (cls == UtilityClass::All)
    throw std::invalid_argument("utilitarian distortion over all utilities is degenerate");
  const std::size_t m = profile.num_alternatives();
  const FeasibleRegion region = FeasibleRegion::guarded(m, guard);
  // With x >= guard/m both the ratio t and SW(a,u)/SW(x,u) are at most m/guard.
  const double ratio_bound = static_cast<double>(m) / guard;
  const double g_bound = std::sqrt(static_cast<double>(m)) * ratio_bound * ratio_bound;

  auto oracle = [&](const Distribution& x) {
    auto report = distortion(x, profile, cls);
    const double t = report.value.as_double();
    const auto& u = report.witness_utilities;
    double sw_x = 0.0;
    std::vector<double> sw_a(m, 0.0);
    for (std::size_t r = 0; r < u.num_rows(); ++r) {
      const double w = static_cast<double>(u.weight(r));
      for (Alternative a = 0; a < m; ++a) {
        sw_a[a] += w * u(r, a);
        sw_x += w * u(r, a) * x[a];
      }
    }
    std::vector<double> g(m);
    for (Alternative a = 0; a < m; ++a) g[a] = -t * sw_a[a] / sw_x;
    return std::make_pair(t, std::move(g));
  };
  return descend(region, Distribution::uniform(m), epsilon, g_bound, options, oracle);
}

}  // namespace fairvote
