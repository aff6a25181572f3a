#include "fairvote/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fairvote {
namespace {

// Appends the alternatives not yet in `order`, in index order rotated by `shift`.
void fill_cyclic(std::vector<Alternative>& order, std::size_t m, std::size_t shift) {
  std::vector<bool> used(m, false);
  for (Alternative a : order) used[a] = true;
  std::vector<Alternative> rest;
  for (Alternative a = 0; a < m; ++a)
    if (!used[a]) rest.push_back(a);
  if (rest.empty()) return;
  std::rotate(rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(shift % rest.size()),
              rest.end());
  order.insert(order.end(), rest.begin(), rest.end());
}

UtilityProfile top_width_utilities(const PreferenceProfile& profile,
                                   const std::vector<std::size_t>& widths, bool uniform) {
  std::vector<std::vector<double>> rows;
  for (std::size_t b = 0; b < profile.num_ballots(); ++b) {
    std::vector<double> row(profile.num_alternatives(), 0.0);
    auto order = profile.order(b);
    for (std::size_t pos = 0; pos < widths[b]; ++pos)
      row[order[pos]] = uniform ? 1.0 / static_cast<double>(widths[b]) : 1.0;
    rows.push_back(std::move(row));
  }
  return UtilityProfile::for_profile(profile, std::move(rows),
                                     uniform ? UtilityClass::UnitSum : UtilityClass::Approval);
}

std::size_t rounded_positive(double v) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(v)));
}

}  // namespace

FixtureBundle gen_sqrt_lb(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("gen_sqrt_lb needs n >= 1");
  const auto s = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(n))));
  if (s * s != n) throw std::invalid_argument("gen_sqrt_lb needs a perfect square n");
  const auto m = static_cast<std::size_t>(n + s);

  std::vector<Ballot> ballots;
  for (std::int64_t i = 1; i <= n; ++i) {
    Ballot ballot;
    ballot.order = {static_cast<Alternative>(i - 1),
                    static_cast<Alternative>(n + (i + s - 1) / s - 1)};
    fill_cyclic(ballot.order, m, static_cast<std::size_t>(i - 1));
    ballots.push_back(std::move(ballot));
  }
  FixtureBundle bundle{"sqrt-lb", PreferenceProfile(m, std::move(ballots)), {},
                       static_cast<double>(s) / 2.0, "sqrt(n)/2"};

  for (std::int64_t r = 1; r <= s; ++r) {
    std::vector<std::size_t> widths;
    for (std::int64_t i = 1; i <= n; ++i) widths.push_back((i + s - 1) / s == r ? 2 : 1);
    bundle.witnesses.push_back(
        {"group-" + std::to_string(r), top_width_utilities(bundle.profile, widths, false),
         Distribution::point_mass(m, static_cast<Alternative>(n + r - 1))});
  }
  return bundle;
}

std::size_t sqrt_lb_witness_index(const FixtureBundle& bundle, const Distribution& x) {
  const auto n = static_cast<std::size_t>(bundle.profile.num_agents());
  std::size_t best = 0;
  for (std::size_t r = 1; r < bundle.witnesses.size(); ++r)
    if (x[n + r] < x[n + best]) best = r;
  return best;
}

FixtureBundle gen_nash_lb(std::size_t k) {
  if (k < 2 || k > 20) throw std::invalid_argument("gen_nash_lb needs 2 <= k <= 20");
  const std::size_t n = std::size_t{1} << (k - 1);
  const std::size_t m = (std::size_t{1} << k) - 1;

  std::vector<Ballot> ballots;
  for (std::size_t i = 0; i < n; ++i) {
    Ballot ballot;
    for (std::size_t level = 1; level <= k; ++level) {
      // Alternatives a_{2^(k-l)} .. a_{2^(k-l+1)-1} share rank l, each for 2^(l-1) agents.
      const std::size_t first = std::size_t{1} << (k - level);
      ballot.order.push_back(first + (i >> (level - 1)) - 1);
    }
    fill_cyclic(ballot.order, m, i);
    ballots.push_back(std::move(ballot));
  }
  FixtureBundle bundle{"nash-lb", PreferenceProfile(m, std::move(ballots)), {},
                       static_cast<double>(k) / 2.0, "k/2"};

  for (std::size_t level = 1; level <= k; ++level) {
    std::vector<double> y(m, 0.0);
    const std::size_t first = std::size_t{1} << (k - level);
    for (std::size_t j = first; j < 2 * first; ++j) y[j - 1] = 1.0 / static_cast<double>(first);
    bundle.witnesses.push_back(
        {"level-" + std::to_string(level),
         top_width_utilities(bundle.profile, std::vector<std::size_t>(n, level), false),
         Distribution(std::move(y))});
  }
  return bundle;
}

FixtureBundle gen_cyclic_special(std::size_t m, std::size_t r, std::size_t width,
                                 CyclicWitness kind) {
  if (m < 2) throw std::invalid_argument("gen_cyclic_special needs m >= 2");
  if (r < 1 || r > m) throw std::invalid_argument("rank must lie in [1, m]");
  if (width < 1 || width > m) throw std::invalid_argument("width must lie in [1, m]");

  std::vector<Ballot> ballots;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    Ballot ballot;
    for (std::size_t s = 0; s + 1 < m; ++s) ballot.order.push_back(1 + (i + s) % (m - 1));
    ballot.order.insert(ballot.order.begin() + static_cast<std::ptrdiff_t>(r - 1), Alternative{0});
    ballots.push_back(std::move(ballot));
  }
  FixtureBundle bundle{"cyclic", PreferenceProfile(m, std::move(ballots)), {}, 0.0, ""};
  bundle.witnesses.push_back(
      {"top-" + std::to_string(width),
       top_width_utilities(bundle.profile, std::vector<std::size_t>(m - 1, width),
                           kind == CyclicWitness::UnitSum),
       Distribution::point_mass(m, 0)});
  return bundle;
}

std::size_t cyclic_unit_sum_rank(std::size_t m) {
  return rounded_positive(
      std::sqrt(static_cast<double>(m) / (2.0 * harmonic_number<double>(m))));
}

std::size_t cyclic_pf_rank(std::size_t m) {
  return rounded_positive(std::sqrt(static_cast<double>(m) / harmonic_number<double>(m)));
}

FixtureBundle gen_harmonic_unit_sum_lb(std::size_t m) {
  const std::size_t k = cyclic_unit_sum_rank(m);
  auto bundle = gen_cyclic_special(m, k, k, CyclicWitness::UnitSum);
  const double md = static_cast<double>(m);
  const double kd = static_cast<double>(k);
  const double h = harmonic_number<double>(m);
  bundle.family = "harmonic-unit-sum-lb";
  bundle.claimed_bound = std::min({md / 2.0, kd * h / 2.0, md / (4.0 * kd)});
  bundle.bound_formula = "min(m/2, k H_m/2, m/(4k))";
  return bundle;
}

FixtureBundle gen_harmonic_pf_lb(std::size_t m) {
  const std::size_t r = cyclic_pf_rank(m);
  auto bundle = gen_cyclic_special(m, r, r, CyclicWitness::Approval);
  bundle.family = "harmonic-pf-lb";
  bundle.claimed_bound = std::sqrt(static_cast<double>(m) * harmonic_number<double>(m)) / 2.0;
  bundle.bound_formula = "sqrt(m H_m)/2";
  return bundle;
}

}  // namespace fairvote
