#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "fairvote/numeric.hpp"
#include "fairvote/profile.hpp"

namespace fairvote {

// A point of the probability simplex over the m alternatives.
template <typename T>
class BasicDistribution {
 public:
  // Throws std::invalid_argument on negative entries or a sum that is off by
  // more than 1e-12 (exactly 1 for Rational).
  explicit BasicDistribution(std::vector<T> probs);

  static BasicDistribution uniform(std::size_t m);
  static BasicDistribution point_mass(std::size_t m, Alternative a);

  std::size_t size() const { return probs_.size(); }
  const T& operator[](Alternative a) const { return probs_[a]; }
  std::span<const T> probs() const { return probs_; }

 private:
  std::vector<T> probs_;
};

using Distribution = BasicDistribution<double>;
using ExactDistribution = BasicDistribution<Rational>;

Distribution to_double(const ExactDistribution& x);

// x(h_b(a)): mass of the alternatives ballot b ranks weakly above a.
template <typename T>
T prefix_mass(const BasicDistribution<T>& x, const PreferenceProfile& profile, std::size_t b,
              Alternative a);

// All prefix masses of ballot b: result[j] = mass of the top j+1 alternatives.
template <typename T>
std::vector<T> prefix_masses(const BasicDistribution<T>& x, const PreferenceProfile& profile,
                             std::size_t b);

}  // namespace fairvote
