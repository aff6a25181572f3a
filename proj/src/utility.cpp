#include "fairvote/utility.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fairvote {

std::string_view class_name(UtilityClass cls) {
  switch (cls) {
    case UtilityClass::UnitSum: return "unit-sum";
    case UtilityClass::UnitRange: return "unit-range";
    case UtilityClass::Approval: return "approval";
    case UtilityClass::Balanced: return "balanced";
    case UtilityClass::All: return "all";
  }
  return "?";
}

UtilityClass parse_class(std::string_view name) {
  for (auto cls : {UtilityClass::UnitSum, UtilityClass::UnitRange, UtilityClass::Approval,
                   UtilityClass::Balanced, UtilityClass::All})
    if (class_name(cls) == name) return cls;
  throw std::invalid_argument("unknown utility class '" + std::string(name) + "'");
}

template <typename T>
BasicUtilityProfile<T>::BasicUtilityProfile(std::vector<std::vector<T>> rows,
                                            std::vector<std::int64_t> weights, UtilityClass cls)
    : rows_(std::move(rows)), weights_(std::move(weights)), cls_(cls) {
  if (rows_.empty()) throw std::invalid_argument("utility profile without rows");
  if (weights_.size() != rows_.size()) throw std::invalid_argument("one weight per row required");
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (rows_[r].size() != rows_.front().size())
      throw std::invalid_argument("utility rows differ in length");
    if (weights_[r] <= 0) throw std::invalid_argument("row weight must be positive");
    for (const T& v : rows_[r])
      if (v < 0) throw std::invalid_argument("negative utility");
    n_ += weights_[r];
  }
}

template <typename T>
BasicUtilityProfile<T> BasicUtilityProfile<T>::for_profile(const PreferenceProfile& profile,
                                                           std::vector<std::vector<T>> rows,
                                                           UtilityClass cls) {
  std::vector<std::int64_t> weights;
  for (std::size_t b = 0; b < profile.num_ballots(); ++b) weights.push_back(profile.weight(b));
  return BasicUtilityProfile(std::move(rows), std::move(weights), cls);
}

template <typename T>
BasicUtilityProfile<T> BasicUtilityProfile<T>::from_ranked_rows(
    const PreferenceProfile& profile, const std::vector<std::vector<T>>& ranked, UtilityClass cls) {
  if (ranked.size() != profile.num_ballots())
    throw std::invalid_argument("one ranked row per ballot required");
  std::vector<std::vector<T>> rows;
  for (std::size_t b = 0; b < ranked.size(); ++b) {
    if (ranked[b].size() != profile.num_alternatives())
      throw std::invalid_argument("ranked row length differs from m");
    std::vector<T> row(profile.num_alternatives());
    auto order = profile.order(b);
    for (std::size_t pos = 0; pos < order.size(); ++pos) row[order[pos]] = ranked[b][pos];
    rows.push_back(std::move(row));
  }
  return for_profile(profile, std::move(rows), cls);
}

template <typename T>
T BasicUtilityProfile<T>::expected(std::size_t r, const BasicDistribution<T>& x) const {
  if (x.size() != num_alternatives()) throw std::invalid_argument("dimension mismatch");
  T v = 0;
  for (Alternative a = 0; a < x.size(); ++a) v += x[a] * rows_[r][a];
  return v;
}

UtilityProfile to_double(const ExactUtilityProfile& u) {
  std::vector<std::vector<double>> rows;
  std::vector<std::int64_t> weights;
  for (std::size_t r = 0; r < u.num_rows(); ++r) {
    std::vector<double> row;
    for (const Rational& v : u.row(r)) row.push_back(to_double(v));
    rows.push_back(std::move(row));
    weights.push_back(u.weight(r));
  }
  return UtilityProfile(std::move(rows), std::move(weights), u.utility_class());
}

namespace {

template <typename T>
bool near(const T& a, const T& b) {
  if constexpr (is_exact_v<T>) {
    return a == b;
  } else {
    return std::abs(a - b) <= 1e-9;
  }
}

template <typename T>
bool at_most(const T& a, const T& b) {
  if constexpr (is_exact_v<T>) {
    return a <= b;
  } else {
    return a <= b + 1e-9;
  }
}

template <typename T>
std::optional<std::string> class_violation(std::span<const T> row, UtilityClass cls) {
  T sum = 0;
  T max = 0;
  for (const T& v : row) {
    sum += v;
    if (v > max) max = v;
  }
  switch (cls) {
    case UtilityClass::UnitSum:
      if (!near(sum, T(1))) return "unit-sum row does not sum to 1";
      break;
    case UtilityClass::UnitRange:
      if (!near(max, T(1))) return "unit-range row has max different from 1";
      break;
    case UtilityClass::Approval: {
      bool any = false;
      for (const T& v : row) {
        if (v == 1) any = true;
        else if (v != 0) return "approval row has an entry other than 0 or 1";
      }
      if (!any) return "approval row approves nothing";
      break;
    }
    case UtilityClass::Balanced:
      if (!at_most(max, T(1))) return "balanced row has an entry above 1";
      if (!at_most(T(1), sum)) return "balanced row sums to less than 1";
      break;
    case UtilityClass::All:
      break;
  }
  return std::nullopt;
}

}  // namespace

template <typename T>
ConsistencyReport check_consistency(const BasicUtilityProfile<T>& u,
                                    const PreferenceProfile& profile) {
  if (u.num_rows() != profile.num_ballots() || u.num_alternatives() != profile.num_alternatives())
    throw std::invalid_argument("utility profile does not match the preference profile");
  for (std::size_t r = 0; r < u.num_rows(); ++r)
    if (u.weight(r) != profile.weight(r))
      throw std::invalid_argument("utility row weight differs from ballot weight");

  for (std::size_t b = 0; b < u.num_rows(); ++b) {
    auto order = profile.order(b);
    for (std::size_t pos = 0; pos + 1 < order.size(); ++pos) {
      if (u(b, order[pos]) < u(b, order[pos + 1])) {
        return {false, ConsistencyViolation{b, order[pos], order[pos + 1],
                                            "utility increases down the ranking"}};
      }
    }
    if (auto reason = class_violation(u.row(b), u.utility_class()))
      return {false, ConsistencyViolation{b, std::nullopt, std::nullopt, *reason}};
  }
  return {};
}

UtilityProfile random_consistent_utilities(const PreferenceProfile& profile, UtilityClass cls,
                                           std::mt19937_64& rng) {
  const std::size_t m = profile.num_alternatives();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::exponential_distribution<double> expo(1.0);
  std::vector<std::vector<double>> rows;
  for (std::size_t b = 0; b < profile.num_ballots(); ++b) {
    std::vector<double> ranked(m);
    switch (cls) {
      case UtilityClass::UnitSum: {
        for (double& v : ranked) v = expo(rng);
        std::sort(ranked.rbegin(), ranked.rend());
        double sum = std::accumulate(ranked.begin(), ranked.end(), 0.0);
        for (double& v : ranked) v /= sum;
        break;
      }
      case UtilityClass::UnitRange: {
        for (double& v : ranked) v = unit(rng);
        std::sort(ranked.rbegin(), ranked.rend());
        ranked[0] = 1.0;
        break;
      }
      case UtilityClass::Approval: {
        std::uniform_int_distribution<std::size_t> width(1, m);
        std::size_t j = width(rng);
        for (std::size_t pos = 0; pos < m; ++pos) ranked[pos] = pos < j ? 1.0 : 0.0;
        break;
      }
      case UtilityClass::Balanced: {
        for (double& v : ranked) v = unit(rng);
        std::sort(ranked.rbegin(), ranked.rend());
        ranked[0] = std::max(ranked[0], 1e-3);
        double sum = std::accumulate(ranked.begin(), ranked.end(), 0.0);
        // Any scale in [1/sum, 1/max] keeps max <= 1 <= sum.
        double lo = 1.0 / sum;
        double hi = 1.0 / ranked[0];
        double scale = lo + (hi - lo) * unit(rng);
        for (double& v : ranked) v = std::min(1.0, v * scale);
        if (std::accumulate(ranked.begin(), ranked.end(), 0.0) < 1.0) ranked[0] = 1.0;
        break;
      }
      case UtilityClass::All: {
        double scale = 10.0 * unit(rng);
        for (double& v : ranked) v = scale * unit(rng);
        std::sort(ranked.rbegin(), ranked.rend());
        break;
      }
    }
    std::vector<double> row(m);
    auto order = profile.order(b);
    for (std::size_t pos = 0; pos < m; ++pos) row[order[pos]] = ranked[pos];
    rows.push_back(std::move(row));
  }
  return UtilityProfile::for_profile(profile, std::move(rows), cls);
}

PreferenceProfile random_profile(std::int64_t n, std::size_t m, std::mt19937_64& rng) {
  std::vector<Ballot> ballots;
  for (std::int64_t i = 0; i < n; ++i) {
    Ballot ballot;
    ballot.order.resize(m);
    std::iota(ballot.order.begin(), ballot.order.end(), Alternative{0});
    for (std::size_t j = m; j > 1; --j) {
      std::uniform_int_distribution<std::size_t> pick(0, j - 1);
      std::swap(ballot.order[j - 1], ballot.order[pick(rng)]);
    }
    ballots.push_back(std::move(ballot));
  }
  return PreferenceProfile(m, std::move(ballots));
}

Distribution random_distribution(std::size_t m, std::mt19937_64& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> probs(m);
  double sum = 0;
  for (double& p : probs) sum += (p = expo(rng));
  for (double& p : probs) p /= sum;
  double drift = 1.0 - std::accumulate(probs.begin(), probs.end(), 0.0);
  *std::max_element(probs.begin(), probs.end()) += drift;
  return Distribution(std::move(probs));
}

template class BasicUtilityProfile<double>;
template class BasicUtilityProfile<Rational>;
template ConsistencyReport check_consistency(const UtilityProfile&, const PreferenceProfile&);
template ConsistencyReport check_consistency(const ExactUtilityProfile&, const PreferenceProfile&);

}  // namespace fairvote
