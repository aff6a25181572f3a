#include "fairvote/rules.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fairvote {
namespace {

template <typename T>
bool close(const T& a, const T& b) {
  if constexpr (is_exact_v<T>) {
    return a == b;
  } else {
    return std::abs(a - b) <= 1e-12;
  }
}

}  // namespace

template <typename T>
BasicDistribution<T> harmonic_rule(const PreferenceProfile& profile) {
  const std::size_t m = profile.num_alternatives();
  std::vector<T> harm(m, T(0));
  for (std::size_t b = 0; b < profile.num_ballots(); ++b) {
    auto order = profile.order(b);
    for (std::size_t pos = 0; pos < m; ++pos)
      harm[order[pos]] += from_ratio<T>(profile.weight(b), static_cast<std::int64_t>(pos + 1));
  }
  const T uniform_part = from_ratio<T>(1, 2 * static_cast<std::int64_t>(m));
  const T scale = T(2 * profile.num_agents()) * harmonic_number<T>(m);
  std::vector<T> probs(m);
  for (Alternative a = 0; a < m; ++a) probs[a] = uniform_part + harm[a] / scale;
  return BasicDistribution<T>(std::move(probs));
}

template <typename T>
void BasicPointVotingWeights<T>::validate() const {
  if (w.empty()) throw std::invalid_argument("empty point-voting weights");
  T sum = 0;
  for (std::size_t r = 0; r < w.size(); ++r) {
    if (w[r] < 0) throw std::invalid_argument("negative point-voting weight");
    if (r > 0 && w[r] > w[r - 1]) throw std::invalid_argument("point-voting weights increase");
    sum += w[r];
  }
  if (!close(sum, T(1))) throw std::invalid_argument("point-voting weights do not sum to 1");
}

template <typename T>
BasicPointVotingWeights<T> harmonic_weights(std::size_t m) {
  const T h = harmonic_number<T>(m);
  BasicPointVotingWeights<T> weights;
  for (std::size_t r = 1; r <= m; ++r)
    weights.w.push_back(from_ratio<T>(1, 2 * static_cast<std::int64_t>(m)) +
                        T(1) / (T(2 * static_cast<std::int64_t>(r)) * h));
  return weights;
}

template <typename T>
BasicDistribution<T> point_voting_rule(const PreferenceProfile& profile,
                                       const BasicPointVotingWeights<T>& weights) {
  weights.validate();
  const std::size_t m = profile.num_alternatives();
  if (weights.w.size() != m) throw std::invalid_argument("need one weight per position");
  std::vector<T> probs(m, T(0));
  for (std::size_t b = 0; b < profile.num_ballots(); ++b) {
    auto order = profile.order(b);
    for (std::size_t pos = 0; pos < m; ++pos) probs[order[pos]] += T(profile.weight(b)) * weights.w[pos];
  }
  const T n(profile.num_agents());
  for (T& p : probs) p /= n;
  return BasicDistribution<T>(std::move(probs));
}

template <typename T>
void BasicSupportingSizeWeights<T>::validate() const {
  if (z.empty()) throw std::invalid_argument("empty supporting-size weights");
  const std::size_t n = z.size() - 1;
  for (std::size_t k = 0; k <= n; ++k) {
    if (k > 0 && z[k] < z[k - 1]) throw std::invalid_argument("supporting-size weights decrease");
    if (!close(T(z[k] + z[n - k]), T(1)))
      throw std::invalid_argument("supporting-size weights violate z_k + z_{n-k} = 1");
  }
}

template <typename T>
BasicDistribution<T> supporting_size_rule(const PreferenceProfile& profile,
                                          const BasicSupportingSizeWeights<T>& weights) {
  weights.validate();
  const std::size_t m = profile.num_alternatives();
  if (m < 2) throw std::invalid_argument("supporting-size rule needs m >= 2");
  if (weights.z.size() != static_cast<std::size_t>(profile.num_agents()) + 1)
    throw std::invalid_argument("need n+1 supporting-size weights");

  std::vector<std::int64_t> support(m * m, 0);  // support[a*m+b] = V(a,b)
  for (std::size_t bl = 0; bl < profile.num_ballots(); ++bl) {
    auto order = profile.order(bl);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) support[order[i] * m + order[j]] += profile.weight(bl);
  }
  const T pairs = from_ratio<T>(static_cast<std::int64_t>(m * (m - 1)), 2);
  std::vector<T> probs(m, T(0));
  for (Alternative a = 0; a < m; ++a) {
    for (Alternative b = 0; b < m; ++b)
      if (b != a) probs[a] += weights.z[support[a * m + b]];
    probs[a] /= pairs;
  }
  return BasicDistribution<T>(std::move(probs));
}

TwoAltObjective parse_objective(std::string_view name) {
  for (auto objective : {TwoAltObjective::UnitSumSW, TwoAltObjective::UnitRangeSW,
                         TwoAltObjective::Nash, TwoAltObjective::PF})
    if (objective_name(objective) == name) return objective;
  throw std::invalid_argument("unknown two-alternative objective '" + std::string(name) + "'");
}

std::string_view objective_name(TwoAltObjective objective) {
  switch (objective) {
    case TwoAltObjective::UnitSumSW: return "unit-sum";
    case TwoAltObjective::UnitRangeSW: return "unit-range";
    case TwoAltObjective::Nash: return "nash";
    case TwoAltObjective::PF: return "pf";
  }
  return "?";
}

double nash_two_alt_g(double beta) {
  if (beta <= 0.0) return 0.0;
  if (beta >= 1.0) return 1.0;
  const double l1 = std::log1p(-beta);
  return l1 / (std::log(beta) + l1);
}

double two_alt_rule(double alpha, TwoAltObjective objective) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in [0,1]");
  if (alpha == 0.0 || alpha == 1.0) return alpha;
  switch (objective) {
    case TwoAltObjective::UnitSumSW:
      return (2.0 - alpha) * alpha / (1.0 + 2.0 * alpha * (1.0 - alpha));
    case TwoAltObjective::UnitRangeSW:
      return alpha;
    case TwoAltObjective::Nash: {
      double lo = 0.0;
      double hi = 1.0;
      while (hi - lo > 1e-12) {
        double mid = 0.5 * (lo + hi);
        if (nash_two_alt_g(mid) < alpha) lo = mid;
        else hi = mid;
      }
      return 0.5 * (lo + hi);
    }
    case TwoAltObjective::PF: {
      const double s = std::sqrt(alpha);
      return s / (s + std::sqrt(1.0 - alpha));
    }
  }
  throw std::invalid_argument("unknown objective");
}

template BasicDistribution<double> harmonic_rule(const PreferenceProfile&);
template BasicDistribution<Rational> harmonic_rule(const PreferenceProfile&);
template struct BasicPointVotingWeights<double>;
template struct BasicPointVotingWeights<Rational>;
template BasicPointVotingWeights<double> harmonic_weights(std::size_t);
template BasicPointVotingWeights<Rational> harmonic_weights(std::size_t);
template BasicDistribution<double> point_voting_rule(const PreferenceProfile&,
                                                     const BasicPointVotingWeights<double>&);
template BasicDistribution<Rational> point_voting_rule(const PreferenceProfile&,
                                                       const BasicPointVotingWeights<Rational>&);
template struct BasicSupportingSizeWeights<double>;
template struct BasicSupportingSizeWeights<Rational>;
template BasicDistribution<double> supporting_size_rule(const PreferenceProfile&,
                                                        const BasicSupportingSizeWeights<double>&);
template BasicDistribution<Rational> supporting_size_rule(
    const PreferenceProfile&, const BasicSupportingSizeWeights<Rational>&);

}  // namespace fairvote
