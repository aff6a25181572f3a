#pragma once

// Brute-force references shared by the unit and acceptance tests. They
// enumerate vertex utility profiles directly and never call the evaluators.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "fairvote/welfare.hpp"

namespace fairvote::testing {

// Every profile with at most n_max agents and m_max alternatives, up to
// relabeling of alternatives: ballot 0 is the identity, the remaining ballots
// range over nondecreasing sequences of permutations.
inline std::vector<PreferenceProfile> canonical_profiles(std::size_t n_max, std::size_t m_max) {
  std::vector<PreferenceProfile> out;
  for (std::size_t m = 1; m <= m_max; ++m) {
    std::vector<std::vector<Alternative>> perms;
    std::vector<Alternative> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    do perms.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));

    for (std::size_t n = 1; n <= n_max; ++n) {
      std::vector<std::size_t> idx(n - 1, 0);
      while (true) {
        std::vector<Ballot> ballots{{perms.front(), 1}};
        for (std::size_t i : idx) ballots.push_back({perms[i], 1});
        out.emplace_back(m, std::move(ballots));
        std::size_t pos = idx.size();
        while (pos > 0 && idx[pos - 1] + 1 == perms.size()) --pos;
        if (pos == 0) break;
        ++idx[pos - 1];
        std::fill(idx.begin() + static_cast<std::ptrdiff_t>(pos), idx.end(), idx[pos - 1]);
      }
    }
  }
  return out;
}

// Small-denominator rational distribution; zeros are common on purpose.
inline ExactDistribution random_exact_distribution(std::size_t m, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, 6);
  std::vector<int> raw(m);
  int total = 0;
  while (total == 0) {
    total = 0;
    for (int& v : raw) total += (v = pick(rng));
  }
  std::vector<Rational> probs;
  for (int v : raw) probs.push_back(Rational(v, total));
  return ExactDistribution(std::move(probs));
}

// Per-agent vertex rows of the class polytope, in ranking order.
template <typename T>
std::vector<std::vector<T>> vertex_rows(std::size_t m, UtilityClass cls) {
  std::vector<std::vector<T>> rows;
  const bool ones = cls != UtilityClass::UnitSum;
  const bool uniform = cls == UtilityClass::UnitSum || cls == UtilityClass::Balanced;
  for (std::size_t j = 1; j <= m; ++j) {
    if (ones) {
      std::vector<T> row(m, T(0));
      std::fill(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(j), T(1));
      rows.push_back(row);
    }
    if (uniform && (j > 1 || !ones)) {
      std::vector<T> row(m, T(0));
      std::fill(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(j),
                from_ratio<T>(1, static_cast<std::int64_t>(j)));
      rows.push_back(row);
    }
  }
  return rows;
}

// Calls visit(u) for every profile assembling one vertex row per ballot.
template <typename T, typename Visit>
void for_each_vertex_profile(const PreferenceProfile& profile, UtilityClass cls, Visit visit) {
  const auto rows = vertex_rows<T>(profile.num_alternatives(), cls);
  std::vector<std::size_t> choice(profile.num_ballots(), 0);
  while (true) {
    std::vector<std::vector<T>> ranked;
    for (std::size_t c : choice) ranked.push_back(rows[c]);
    visit(BasicUtilityProfile<T>::from_ranked_rows(profile, ranked, cls));
    std::size_t b = 0;
    while (b < choice.size() && ++choice[b] == rows.size()) choice[b++] = 0;
    if (b == choice.size()) break;
  }
}

template <typename T>
bool extended_less(const ExtendedValue<T>& a, const ExtendedValue<T>& b) {
  if (a.infinite) return false;
  return b.infinite || a.value < b.value;
}

template <typename T>
bool extended_equal(const ExtendedValue<T>& a, const ExtendedValue<T>& b) {
  return a.infinite == b.infinite && (a.infinite || a.value == b.value);
}

// max over vertex profiles and point masses of SW(a,u)/SW(x,u).
template <typename T>
ExtendedValue<T> brute_force_distortion(const BasicDistribution<T>& x,
                                        const PreferenceProfile& profile, UtilityClass cls) {
  ExtendedValue<T> best{T(1), false};
  const std::size_t m = profile.num_alternatives();
  for_each_vertex_profile<T>(profile, cls, [&](const BasicUtilityProfile<T>& u) {
    const T achieved = social_welfare(x, u);
    for (Alternative a = 0; a < m; ++a) {
      const T optimum = social_welfare(BasicDistribution<T>::point_mass(m, a), u);
      ExtendedValue<T> ratio;
      if (achieved == 0) {
        if (optimum == 0) continue;
        ratio.infinite = true;
      } else {
        ratio.value = optimum / achieved;
      }
      if (extended_less(best, ratio)) best = ratio;
    }
  });
  return best;
}

// max over prefix-approval profiles of PF(x,u).
template <typename T>
ExtendedValue<T> brute_force_pf_distortion(const BasicDistribution<T>& x,
                                           const PreferenceProfile& profile) {
  ExtendedValue<T> best{T(0), false};
  for_each_vertex_profile<T>(profile, UtilityClass::Approval, [&](const BasicUtilityProfile<T>& u) {
    ExtendedValue<T> v = pf_value(x, u);
    if (extended_less(best, v)) best = v;
  });
  return best;
}

}  // namespace fairvote::testing
