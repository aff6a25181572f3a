#include "fairvote/distribution.hpp"

#include <cmath>

namespace fairvote {

template <typename T>
BasicDistribution<T>::BasicDistribution(std::vector<T> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw std::invalid_argument("distribution over zero alternatives");
  T sum = 0;
  for (const T& p : probs_) {
    if (p < 0) throw std::invalid_argument("negative probability");
    sum += p;
  }
  if constexpr (is_exact_v<T>) {
    if (sum != 1) throw std::invalid_argument("probabilities do not sum to 1");
  } else {
    if (!std::isfinite(sum) || std::abs(sum - 1.0) > 1e-12)
      throw std::invalid_argument("probabilities do not sum to 1");
  }
}

template <typename T>
BasicDistribution<T> BasicDistribution<T>::uniform(std::size_t m) {
  return BasicDistribution(std::vector<T>(m, from_ratio<T>(1, static_cast<std::int64_t>(m))));
}

template <typename T>
BasicDistribution<T> BasicDistribution<T>::point_mass(std::size_t m, Alternative a) {
  std::vector<T> probs(m, T(0));
  probs.at(a) = 1;
  return BasicDistribution(std::move(probs));
}

Distribution to_double(const ExactDistribution& x) {
  std::vector<double> probs;
  probs.reserve(x.size());
  for (const Rational& p : x.probs()) probs.push_back(to_double(p));
  // Rounding each entry can push the sum off by a few ulps; absorb it.
  double sum = 0;
  for (double p : probs) sum += p;
  Alternative largest = 0;
  for (Alternative a = 1; a < probs.size(); ++a)
    if (probs[a] > probs[largest]) largest = a;
  probs[largest] += 1.0 - sum;
  return Distribution(std::move(probs));
}

template <typename T>
T prefix_mass(const BasicDistribution<T>& x, const PreferenceProfile& profile, std::size_t b,
              Alternative a) {
  if (b >= profile.num_ballots() || a >= profile.num_alternatives() ||
      x.size() != profile.num_alternatives())
    throw std::out_of_range("prefix_mass index");
  T mass = 0;
  auto order = profile.order(b);
  for (std::size_t pos = 0; pos <= profile.position(b, a); ++pos) mass += x[order[pos]];
  return mass;
}

template <typename T>
std::vector<T> prefix_masses(const BasicDistribution<T>& x, const PreferenceProfile& profile,
                             std::size_t b) {
  std::vector<T> out;
  out.reserve(profile.num_alternatives());
  T mass = 0;
  for (Alternative a : profile.order(b)) {
    mass += x[a];
    out.push_back(mass);
  }
  return out;
}

template class BasicDistribution<double>;
template class BasicDistribution<Rational>;
template double prefix_mass(const Distribution&, const PreferenceProfile&, std::size_t, Alternative);
template Rational prefix_mass(const ExactDistribution&, const PreferenceProfile&, std::size_t,
                              Alternative);
template std::vector<double> prefix_masses(const Distribution&, const PreferenceProfile&,
                                           std::size_t);
template std::vector<Rational> prefix_masses(const ExactDistribution&, const PreferenceProfile&,
                                             std::size_t);

}  // namespace fairvote
