#include "fairvote/stable.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <tuple>

#include "fairvote/mwu.hpp"

namespace fairvote {
namespace {

// sum_b w_b z(L_b(a))^k for every a, where L_b(a) is what ballot b ranks below a.
std::vector<double> sampling_payoffs(const PreferenceProfile& profile, std::size_t k,
                                     const std::vector<double>& z) {
  const std::size_t m = profile.num_alternatives();
  std::vector<double> out(m, 0.0);
  for (std::size_t b = 0; b < profile.num_ballots(); ++b) {
    auto order = profile.order(b);
    const double w = static_cast<double>(profile.weight(b));
    double below = 0.0;
    for (std::size_t pos = m; pos-- > 0;) {
      out[order[pos]] += w * std::pow(std::min(below, 1.0), static_cast<double>(k));
      below += z[order[pos]];
    }
  }
  return out;
}

std::vector<Alternative> distinct_tops(const PreferenceProfile& profile) {
  std::vector<Alternative> tops;
  for (std::size_t b = 0; b < profile.num_ballots(); ++b) tops.push_back(profile.top(b));
  std::sort(tops.begin(), tops.end());
  tops.erase(std::unique(tops.begin(), tops.end()), tops.end());
  return tops;
}

}  // namespace

std::size_t committee_size(std::size_t m) {
  std::size_t k = 0;
  while (k * k < m) ++k;
  return std::max<std::size_t>(k, 1);
}

std::vector<std::int64_t> committee_support(const PreferenceProfile& profile,
                                            const std::vector<Alternative>& members) {
  const std::size_t m = profile.num_alternatives();
  std::vector<std::int64_t> support(m, 0);
  if (members.empty()) throw std::invalid_argument("empty committee");
  for (std::size_t b = 0; b < profile.num_ballots(); ++b) {
    std::size_t best = m;
    for (Alternative a : members) best = std::min(best, profile.position(b, a));
    auto order = profile.order(b);
    for (std::size_t pos = 0; pos < best; ++pos) support[order[pos]] += profile.weight(b);
  }
  return support;
}

StabilityCertificate certify_lottery(const PreferenceProfile& profile, std::size_t k,
                                     const std::vector<LotteryRound>& rounds) {
  const std::size_t m = profile.num_alternatives();
  if (rounds.empty()) throw std::invalid_argument("lottery without rounds");
  StabilityCertificate cert;
  cert.per_alternative.assign(m, 0.0);
  for (const LotteryRound& round : rounds) {
    if (round.z.size() != m) throw std::invalid_argument("round has wrong dimension");
    std::vector<double> bound;
    if (round.kind == LotteryRound::Kind::Committee) {
      std::vector<Alternative> members;
      for (Alternative a = 0; a < m; ++a)
        if (round.z[a] > 0.5) members.push_back(a);
      if (members.size() != k) throw std::invalid_argument("committee round has wrong size");
      auto support = committee_support(profile, members);
      bound.assign(support.begin(), support.end());
    } else {
      bound = sampling_payoffs(profile, k, round.z);
    }
    for (Alternative a = 0; a < m; ++a) cert.per_alternative[a] += bound[a];
  }
  for (double& v : cert.per_alternative) v /= static_cast<double>(rounds.size());
  cert.max_value = *std::max_element(cert.per_alternative.begin(), cert.per_alternative.end());
  cert.budget = static_cast<double>(profile.num_agents()) / static_cast<double>(k);
  cert.stable = cert.max_value < cert.budget;
  return cert;
}

StableLottery compute_stable_lottery(const PreferenceProfile& profile, std::size_t k,
                                     std::uint64_t seed) {
  const std::size_t m = profile.num_alternatives();
  if (k < 1 || k > m) throw std::invalid_argument("committee size must lie in [1, m]");
  StableLottery lottery;
  lottery.k = k;

  // When every top choice fits in one committee nobody prefers an outsider.
  auto tops = distinct_tops(profile);
  if (tops.size() <= k) {
    // Tops land at rank 1; the rest fill rank by rank in ballot order.
    std::vector<double> indicator(m, 0.0);
    std::size_t filled = 0;
    for (std::size_t pos = 0; pos < m && filled < k; ++pos)
      for (std::size_t b = 0; b < profile.num_ballots() && filled < k; ++b) {
        const Alternative a = profile.order(b)[pos];
        if (indicator[a] == 0.0) indicator[a] = 1.0, ++filled;
      }
    lottery.rounds.push_back({LotteryRound::Kind::Committee, std::move(indicator)});
  } else {
    const double n = static_cast<double>(profile.num_agents());
    const double kd = static_cast<double>(k);
    const double gap = 0.5 * (n / kd - n / (kd + 1.0));
    const double target = n / (kd + 1.0) + gap;

    MatrixGame game{m, n};
    MwuOptions options;
    options.epsilon = gap;
    options.seed = seed;
    std::function<ColumnResponse<std::vector<double>>(const std::vector<double>&)> respond =
        [&](const std::vector<double>& mix) {
          return ColumnResponse<std::vector<double>>{mix, sampling_payoffs(profile, k, mix)};
        };
    std::function<bool(const std::vector<double>&, std::size_t)> done =
        [&](const std::vector<double>& avg, std::size_t) {
          return *std::max_element(avg.begin(), avg.end()) <= target;
        };
    auto solved = mwu_solve<std::vector<double>>(game, respond, options, done);
    lottery.mwu_rounds = solved.rounds;
    lottery.rounds.reserve(solved.responses.size());
    for (auto& z : solved.responses)
      lottery.rounds.push_back({LotteryRound::Kind::Sampling, std::move(z)});
  }

  lottery.certificate = certify_lottery(profile, k, lottery.rounds);
  if (!lottery.certificate.stable)
    throw CertificationError("stable lottery failed certification: max " +
                             std::to_string(lottery.certificate.max_value) + " >= budget " +
                             std::to_string(lottery.certificate.budget));
  return lottery;
}

std::vector<double> lottery_marginals(const StableLottery& lottery) {
  if (lottery.rounds.empty()) throw std::invalid_argument("lottery without rounds");
  const std::size_t m = lottery.rounds.front().z.size();
  std::vector<double> q(m, 0.0);
  for (const LotteryRound& round : lottery.rounds) {
    for (Alternative a = 0; a < m; ++a) {
      if (round.kind == LotteryRound::Kind::Committee) {
        q[a] += round.z[a] > 0.5 ? 1.0 : 0.0;
      } else {
        q[a] += 1.0 - std::pow(1.0 - round.z[a], static_cast<double>(lottery.k));
      }
    }
  }
  for (double& v : q) v /= static_cast<double>(lottery.rounds.size());
  return q;
}

Distribution stable_lottery_rule(const PreferenceProfile& profile, std::uint64_t seed) {
  return stable_lottery_rule(profile, seed, nullptr);
}

Distribution stable_lottery_rule(const PreferenceProfile& profile, std::uint64_t seed,
                                 StableLottery* lottery_out) {
  const std::size_t m = profile.num_alternatives();
  const std::size_t k = committee_size(m);
  StableLottery lottery = compute_stable_lottery(profile, k, seed);
  auto q = lottery_marginals(lottery);
  const double kd = static_cast<double>(k);
  const double md = static_cast<double>(m);
  const double leftover = (kd - std::accumulate(q.begin(), q.end(), 0.0)) / (2.0 * kd);
  std::vector<double> probs(m);
  for (Alternative a = 0; a < m; ++a)
    probs[a] = q[a] / (2.0 * kd) + 1.0 / (2.0 * md) + std::max(leftover, 0.0) / md;
  double drift = 1.0 - std::accumulate(probs.begin(), probs.end(), 0.0);
  *std::max_element(probs.begin(), probs.end()) += drift;
  if (lottery_out) *lottery_out = std::move(lottery);
  return Distribution(std::move(probs));
}

CommitteeSearch parse_search_mode(std::string_view name) {
  if (name == "exhaustive") return CommitteeSearch::Exhaustive;
  if (name == "local") return CommitteeSearch::LocalSearch;
  if (name == "auto") return CommitteeSearch::Auto;
  throw std::invalid_argument("unknown search mode '" + std::string(name) + "'");
}

namespace {

// Number of k-subsets of m, saturating at limit + 1.
std::uint64_t bounded_binomial(std::size_t m, std::size_t k, std::uint64_t limit) {
  k = std::min(k, m - k);
  long double c = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    c = c * static_cast<long double>(m - k + i) / static_cast<long double>(i);
    if (c > static_cast<long double>(limit)) return limit + 1;
  }
  return static_cast<std::uint64_t>(std::llround(static_cast<double>(c)));
}

// Lexicographic score: worst outsider support, then total outsider support.
std::pair<std::int64_t, std::int64_t> committee_score(const PreferenceProfile& profile,
                                                      const std::vector<Alternative>& members) {
  auto support = committee_support(profile, members);
  std::int64_t worst = 0;
  std::int64_t total = 0;
  for (std::int64_t v : support) {
    worst = std::max(worst, v);
    total += v;
  }
  return {worst, total};
}

Committee make_committee(const PreferenceProfile& profile, std::vector<Alternative> members) {
  std::sort(members.begin(), members.end());
  auto support = committee_support(profile, members);
  const auto worst = *std::max_element(support.begin(), support.end());
  const double c = static_cast<double>(worst) * static_cast<double>(members.size()) /
                   static_cast<double>(profile.num_agents());
  return {std::move(members), c};
}

Committee exhaustive_committee(const PreferenceProfile& profile, std::size_t k) {
  const std::size_t m = profile.num_alternatives();
  std::vector<Alternative> current(k);
  std::iota(current.begin(), current.end(), Alternative{0});
  std::vector<Alternative> best = current;
  std::int64_t best_worst = committee_score(profile, current).first;
  while (true) {
    std::size_t i = k;
    while (i > 0 && current[i - 1] == m - k + i - 1) --i;
    if (i == 0) break;
    ++current[i - 1];
    for (std::size_t j = i; j < k; ++j) current[j] = current[j - 1] + 1;
    auto worst = committee_score(profile, current).first;
    if (worst < best_worst) {
      best_worst = worst;
      best = current;
    }
  }
  return make_committee(profile, best);
}

Committee local_search_committee(const PreferenceProfile& profile, std::size_t k,
                                 std::uint64_t seed) {
  const std::size_t m = profile.num_alternatives();
  std::mt19937_64 rng(seed);
  std::vector<Alternative> best;
  std::pair<std::int64_t, std::int64_t> best_score{0, 0};
  for (int restart = 0; restart < 8; ++restart) {
    std::vector<Alternative> all(m);
    std::iota(all.begin(), all.end(), Alternative{0});
    for (std::size_t j = m; j > 1; --j) {
      std::uniform_int_distribution<std::size_t> pick(0, j - 1);
      std::swap(all[j - 1], all[pick(rng)]);
    }
    std::vector<Alternative> members(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k));
    std::vector<Alternative> outsiders(all.begin() + static_cast<std::ptrdiff_t>(k), all.end());
    auto score = committee_score(profile, members);
    bool improved = true;
    while (improved) {
      improved = false;
      std::size_t best_i = 0;
      std::size_t best_o = 0;
      auto step_score = score;
      for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t o = 0; o < outsiders.size(); ++o) {
          std::swap(members[i], outsiders[o]);
          auto s = committee_score(profile, members);
          std::swap(members[i], outsiders[o]);
          if (s < step_score) {
            step_score = s;
            best_i = i;
            best_o = o;
            improved = true;
          }
        }
      }
      if (improved) {
        std::swap(members[best_i], outsiders[best_o]);
        score = step_score;
      }
    }
    std::sort(members.begin(), members.end());
    if (best.empty() || std::tie(score, members) < std::tie(best_score, best)) {
      best = members;
      best_score = score;
    }
  }
  return make_committee(profile, best);
}

}  // namespace

Committee find_stable_committee(const PreferenceProfile& profile, std::size_t k,
                                CommitteeSearch mode, std::uint64_t seed) {
  const std::size_t m = profile.num_alternatives();
  if (k < 1 || k > m) throw std::invalid_argument("committee size must lie in [1, m]");
  constexpr std::uint64_t kExhaustiveLimit = 1'000'000;
  const bool small = bounded_binomial(m, k, kExhaustiveLimit) <= kExhaustiveLimit;
  if (mode == CommitteeSearch::Auto)
    mode = small ? CommitteeSearch::Exhaustive : CommitteeSearch::LocalSearch;
  if (mode == CommitteeSearch::Exhaustive) {
    if (!small) throw std::invalid_argument("exhaustive search needs C(m,k) <= 1e6");
    return exhaustive_committee(profile, k);
  }
  return local_search_committee(profile, k, seed);
}

Distribution stable_committee_rule(const PreferenceProfile& profile, std::uint64_t seed,
                                   CommitteeSearch mode) {
  const std::size_t m = profile.num_alternatives();
  const std::size_t k = committee_size(m);
  Committee committee = find_stable_committee(profile, k, mode, seed);
  std::vector<double> probs(m, 1.0 / (2.0 * static_cast<double>(m)));
  for (Alternative a : committee.members) probs[a] += 1.0 / (2.0 * static_cast<double>(k));
  double drift = 1.0 - std::accumulate(probs.begin(), probs.end(), 0.0);
  *std::max_element(probs.begin(), probs.end()) += drift;
  return Distribution(std::move(probs));
}

}  // namespace fairvote
