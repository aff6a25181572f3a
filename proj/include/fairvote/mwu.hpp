#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace fairvote {

// Zero-sum game seen from the maximizing row player. Payoffs lie in
// [0, max_payoff]; columns are whatever the best-response oracle returns.
struct MatrixGame {
  std::size_t rows = 0;
  double max_payoff = 1.0;
};

template <typename Strategy>
struct ColumnResponse {
  Strategy strategy;
  std::vector<double> payoffs;  // payoff of each row against strategy
};

struct MwuOptions {
  double epsilon = 1e-2;  // in payoff units, not normalized
  std::size_t max_rounds = 1'000'000;
  std::uint64_t seed = 0;
  std::size_t check_interval = 1000;
};

template <typename Strategy>
struct MwuResult {
  std::vector<double> row_mix;             // time-averaged row distribution
  std::vector<Strategy> responses;         // uniform mixture of these is the column strategy
  std::vector<double> average_payoffs;     // per-row payoff against that mixture
  double value_estimate = 0.0;             // (1/T) sum_t p_t . payoff_t
  double certified_upper = 0.0;            // max over rows of average_payoffs
  std::size_t rounds = 0;
  std::size_t planned_rounds = 0;
  bool certified = false;                  // certified_upper <= value_estimate + epsilon
  bool stopped_early = false;
};

// Hedge on the rows against a best-responding column player. The optional
// stop predicate sees the running per-row average payoffs every
// check_interval rounds and may end the run before the planned round count.
// The solve is deterministic; the seed is only carried for callers that
// randomize their oracle.
template <typename Strategy>
MwuResult<Strategy> mwu_solve(
    const MatrixGame& game,
    const std::function<ColumnResponse<Strategy>(const std::vector<double>& row_mix)>& best_response,
    const MwuOptions& options,
    const std::function<bool(const std::vector<double>& average_payoffs, std::size_t rounds)>&
        stop = {}) {
  if (game.rows == 0) throw std::invalid_argument("game without rows");
  if (!(options.epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (!(game.max_payoff > 0.0)) throw std::invalid_argument("max_payoff must be positive");

  const std::size_t R = game.rows;
  const double log_r = std::log(static_cast<double>(R));
  const double eps = options.epsilon / game.max_payoff;
  std::size_t planned = static_cast<std::size_t>(std::ceil(4.0 * log_r / (eps * eps)));
  planned = std::clamp<std::size_t>(planned, 1, std::max<std::size_t>(1, options.max_rounds));
  const double eta = std::sqrt(log_r / static_cast<double>(planned));

  MwuResult<Strategy> result;
  result.planned_rounds = planned;
  result.row_mix.assign(R, 0.0);
  std::vector<double> payoff_sum(R, 0.0);
  std::vector<double> log_weights(R, 0.0);
  std::vector<double> p(R, 1.0 / static_cast<double>(R));
  double value_sum = 0.0;

  for (std::size_t t = 0; t < planned; ++t) {
    ColumnResponse<Strategy> response = best_response(p);
    if (response.payoffs.size() != R) throw std::logic_error("oracle returned wrong payoff length");
    double played = 0.0;
    for (std::size_t r = 0; r < R; ++r) {
      const double v = response.payoffs[r];
      if (!std::isfinite(v) || v < -1e-9 * game.max_payoff ||
          v > game.max_payoff * (1.0 + 1e-9))
        throw std::out_of_range("oracle payoff outside the declared range");
      played += p[r] * v;
      payoff_sum[r] += v;
      result.row_mix[r] += p[r];
      log_weights[r] += eta * v / game.max_payoff;
    }
    value_sum += played;
    result.responses.push_back(std::move(response.strategy));
    ++result.rounds;

    const double top = *std::max_element(log_weights.begin(), log_weights.end());
    double total = 0.0;
    for (std::size_t r = 0; r < R; ++r) total += (p[r] = std::exp(log_weights[r] - top));
    for (double& v : p) v /= total;

    if (stop && result.rounds % std::max<std::size_t>(1, options.check_interval) == 0 &&
        result.rounds < planned) {
      std::vector<double> avg(R);
      for (std::size_t r = 0; r < R; ++r) avg[r] = payoff_sum[r] / static_cast<double>(result.rounds);
      if (stop(avg, result.rounds)) {
        result.stopped_early = true;
        break;
      }
    }
  }

  const double T = static_cast<double>(result.rounds);
  result.average_payoffs.resize(R);
  for (std::size_t r = 0; r < R; ++r) {
    result.average_payoffs[r] = payoff_sum[r] / T;
    result.row_mix[r] /= T;
  }
  result.value_estimate = value_sum / T;
  result.certified_upper =
      *std::max_element(result.average_payoffs.begin(), result.average_payoffs.end());
  result.certified = result.certified_upper <= result.value_estimate + options.epsilon;
  return result;
}

}  // namespace fairvote
