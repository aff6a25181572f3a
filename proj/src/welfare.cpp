#include "fairvote/welfare.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fairvote/mwu.hpp"
#include "fairvote/simplex.hpp"
#include "small_lp.hpp"

namespace fairvote {

template <typename T>
double ExtendedValue<T>::as_double() const {
  return infinite ? std::numeric_limits<double>::infinity() : to_double(value);
}

template <typename T>
T social_welfare(const BasicDistribution<T>& x, const BasicUtilityProfile<T>& u) {
  T total = 0;
  for (std::size_t r = 0; r < u.num_rows(); ++r) total += T(u.weight(r)) * u.expected(r, x);
  return total;
}

double nash_welfare(const Distribution& x, const UtilityProfile& u) {
  std::vector<double> values;
  for (std::size_t r = 0; r < u.num_rows(); ++r) {
    values.push_back(u.expected(r, x));
    if (values.back() <= 0.0) return 0.0;
  }
  if (std::all_of(values.begin(), values.end(), [&](double v) { return v == values.front(); }))
    return values.front();
  double log_sum = 0.0;
  for (std::size_t r = 0; r < values.size(); ++r)
    log_sum += static_cast<double>(u.weight(r)) * std::log(values[r]);
  return std::exp(log_sum / static_cast<double>(u.num_agents()));
}

namespace {

// Vertex of a ballot's consistent-utility polytope: 1 (or 1/width) on the
// top `width` alternatives.
struct Vertex {
  bool uniform = false;
  std::size_t width = 1;
};

std::vector<Vertex> class_vertices(UtilityClass cls, std::size_t m) {
  std::vector<Vertex> out;
  const bool indicators = cls == UtilityClass::Approval || cls == UtilityClass::UnitRange ||
                          cls == UtilityClass::Balanced;
  const bool uniforms = cls == UtilityClass::UnitSum || cls == UtilityClass::Balanced;
  if (indicators)
    for (std::size_t j = 1; j <= m; ++j) out.push_back({false, j});
  if (uniforms)
    for (std::size_t j = indicators ? 2 : 1; j <= m; ++j) out.push_back({true, j});
  return out;
}

// (v(a*), v(x)) for a vertex, with a* at position pos and prefix[j] = x(top j+1).
template <typename U>
std::pair<U, U> vertex_terms(const Vertex& v, std::size_t pos, const std::vector<U>& prefix) {
  U va = pos < v.width ? U(1) : U(0);
  U vx = prefix[v.width - 1];
  if (v.uniform) {
    const U w(static_cast<long long>(v.width));
    va /= w;
    vx /= w;
  }
  return {va, vx};
}

template <typename T>
std::vector<T> vertex_row(const Vertex& v, std::span<const Alternative> order) {
  std::vector<T> row(order.size(), T(0));
  const T value = v.uniform ? from_ratio<T>(1, static_cast<std::int64_t>(v.width)) : T(1);
  for (std::size_t pos = 0; pos < v.width; ++pos) row[order[pos]] = value;
  return row;
}

template <typename T>
struct StarOutcome {
  ExtendedValue<T> value;
  std::vector<std::size_t> choice;  // index into the vertex list, per ballot
};

template <typename T>
class DistortionSearch {
 public:
  DistortionSearch(const BasicDistribution<T>& x, const PreferenceProfile& profile,
                   UtilityClass cls)
      : profile_(profile), vertices_(class_vertices(cls, profile.num_alternatives())) {
    for (std::size_t b = 0; b < profile.num_ballots(); ++b) {
      prefix_.push_back(prefix_masses(x, profile, b));
      std::vector<double> approx;
      for (const T& p : prefix_.back()) approx.push_back(to_double(p));
      prefix_double_.push_back(std::move(approx));
    }
  }

  const std::vector<Vertex>& vertices() const { return vertices_; }

  StarOutcome<T> evaluate(Alternative star) const {
    StarOutcome<T> out;
    if (auto unbounded = unbounded_choice(star)) {
      out.value.infinite = true;
      out.choice = std::move(*unbounded);
      return out;
    }

    double lo = 0.0;
    double hi = 1.0;
    while (slack_double(star, hi) > 0.0) {
      lo = hi;
      hi *= 2.0;
      if (!std::isfinite(hi)) throw std::logic_error("distortion bracket diverged");
    }
    while (hi - lo > 1e-10 * std::max(1.0, lo)) {
      const double mid = 0.5 * (lo + hi);
      if (slack_double(star, mid) > 0.0) lo = mid;
      else hi = mid;
    }

    // Dinkelbach steps in T turn the bracketed value into the exact ratio of
    // the witness vertices.
    std::vector<std::size_t> choice = argmax_choice<double>(star, lo, prefix_double_);
    T t = ratio(star, choice);
    for (int iter = 0; iter < 200; ++iter) {
      auto next = argmax_choice<T>(star, t, prefix_);
      T slack = 0;
      for (std::size_t b = 0; b < next.size(); ++b) {
        auto [va, vx] = vertex_terms(vertices_[next[b]], profile_.position(b, star), prefix_[b]);
        slack += T(profile_.weight(b)) * (va - t * vx);
      }
      if (!(slack > tolerance(t))) break;
      T r = ratio(star, next);
      if (!(r > t)) break;
      t = r;
      choice = std::move(next);
    }
    out.value.value = t;
    out.choice = std::move(choice);
    return out;
  }

  BasicUtilityProfile<T> witness(const std::vector<std::size_t>& choice, UtilityClass cls) const {
    std::vector<std::vector<T>> rows;
    for (std::size_t b = 0; b < choice.size(); ++b)
      rows.push_back(vertex_row<T>(vertices_[choice[b]], profile_.order(b)));
    return BasicUtilityProfile<T>::for_profile(profile_, std::move(rows), cls);
  }

 private:
  static T tolerance(const T& t) {
    if constexpr (is_exact_v<T>) {
      return T(0);
    } else {
      return 1e-13 * std::max(1.0, t);
    }
  }

  // Every ballot can put all its utility on zero-mass alternatives while
  // someone still values star: the ratio is unbounded.
  std::optional<std::vector<std::size_t>> unbounded_choice(Alternative star) const {
    std::vector<std::size_t> choice;
    bool positive = false;
    for (std::size_t b = 0; b < profile_.num_ballots(); ++b) {
      const std::size_t pos = profile_.position(b, star);
      std::optional<std::size_t> best;
      T best_va = -1;
      for (std::size_t v = 0; v < vertices_.size(); ++v) {
        auto [va, vx] = vertex_terms(vertices_[v], pos, prefix_[b]);
        if (vx != 0) continue;
        if (!best || va > best_va) {
          best = v;
          best_va = va;
        }
      }
      if (!best) return std::nullopt;
      if (best_va > 0) positive = true;
      choice.push_back(*best);
    }
    if (!positive) return std::nullopt;
    return choice;
  }

  double slack_double(Alternative star, double t) const {
    double total = 0.0;
    for (std::size_t b = 0; b < profile_.num_ballots(); ++b) {
      const std::size_t pos = profile_.position(b, star);
      double best = -std::numeric_limits<double>::infinity();
      for (const Vertex& v : vertices_) {
        auto [va, vx] = vertex_terms(v, pos, prefix_double_[b]);
        best = std::max(best, va - t * vx);
      }
      total += static_cast<double>(profile_.weight(b)) * best;
    }
    return total;
  }

  template <typename U>
  std::vector<std::size_t> argmax_choice(Alternative star, const U& t,
                                         const std::vector<std::vector<U>>& prefix) const {
    std::vector<std::size_t> choice;
    for (std::size_t b = 0; b < profile_.num_ballots(); ++b) {
      const std::size_t pos = profile_.position(b, star);
      std::size_t best = 0;
      U best_value = 0;
      for (std::size_t v = 0; v < vertices_.size(); ++v) {
        auto [va, vx] = vertex_terms(vertices_[v], pos, prefix[b]);
        U value = va - t * vx;
        if (v == 0 || value > best_value) {
          best = v;
          best_value = value;
        }
      }
      choice.push_back(best);
    }
    return choice;
  }

  T ratio(Alternative star, const std::vector<std::size_t>& choice) const {
    T num = 0;
    T den = 0;
    for (std::size_t b = 0; b < choice.size(); ++b) {
      auto [va, vx] = vertex_terms(vertices_[choice[b]], profile_.position(b, star), prefix_[b]);
      num += T(profile_.weight(b)) * va;
      den += T(profile_.weight(b)) * vx;
    }
    if (den == 0) return T(0);
    return num / den;
  }

  const PreferenceProfile& profile_;
  std::vector<Vertex> vertices_;
  std::vector<std::vector<T>> prefix_;
  std::vector<std::vector<double>> prefix_double_;
};

template <typename T>
bool better(const ExtendedValue<T>& a, const ExtendedValue<T>& b) {
  if (a.infinite) return !b.infinite;
  if (b.infinite) return false;
  return a.value > b.value;
}

}  // namespace

template <typename T>
BasicDistortionReport<T> distortion(const BasicDistribution<T>& x,
                                    const PreferenceProfile& profile, UtilityClass cls) {
  if (cls == UtilityClass::All)
    throw std::invalid_argument("utilitarian distortion over all utilities is degenerate");
  if (x.size() != profile.num_alternatives()) throw std::invalid_argument("dimension mismatch");
  DistortionSearch<T> search(x, profile, cls);
  std::optional<StarOutcome<T>> best;
  Alternative best_star = 0;
  for (Alternative star = 0; star < profile.num_alternatives(); ++star) {
    auto outcome = search.evaluate(star);
    if (!best || better(outcome.value, best->value)) {
      best = std::move(outcome);
      best_star = star;
    }
  }
  return {best->value, best_star, search.witness(best->choice, cls), cls,
          BasicDistribution<T>::point_mass(profile.num_alternatives(), best_star)};
}

template <typename T>
BasicDistortionReport<T> pf_distortion(const BasicDistribution<T>& x,
                                       const PreferenceProfile& profile) {
  const std::size_t m = profile.num_alternatives();
  if (x.size() != m) throw std::invalid_argument("dimension mismatch");
  std::vector<std::vector<T>> prefix;
  for (std::size_t b = 0; b < profile.num_ballots(); ++b)
    prefix.push_back(prefix_masses(x, profile, b));

  ExtendedValue<T> best;
  Alternative best_star = 0;
  for (Alternative a = 0; a < m; ++a) {
    ExtendedValue<T> value;
    for (std::size_t b = 0; b < profile.num_ballots() && !value.infinite; ++b) {
      const T& mass = prefix[b][profile.position(b, a)];
      if (mass == 0) value.infinite = true;
      else value.value += T(profile.weight(b)) / mass;
    }
    if (!value.infinite) value.value /= T(profile.num_agents());
    if (a == 0 || better(value, best)) {
      best = value;
      best_star = a;
    }
  }

  std::vector<std::vector<T>> rows;
  for (std::size_t b = 0; b < profile.num_ballots(); ++b) {
    std::vector<T> row(m, T(0));
    auto order = profile.order(b);
    for (std::size_t pos = 0; pos <= profile.position(b, best_star); ++pos) row[order[pos]] = 1;
    rows.push_back(std::move(row));
  }
  return {best, best_star,
          BasicUtilityProfile<T>::for_profile(profile, std::move(rows), UtilityClass::Approval),
          UtilityClass::All, BasicDistribution<T>::point_mass(m, best_star)};
}

template <typename T>
ExtendedValue<T> pf_value(const BasicDistribution<T>& x, const BasicUtilityProfile<T>& u) {
  const std::size_t m = u.num_alternatives();
  std::vector<T> at_x;
  std::vector<bool> indifferent;
  for (std::size_t r = 0; r < u.num_rows(); ++r) {
    at_x.push_back(u.expected(r, x));
    const bool zero_row =
        std::all_of(u.row(r).begin(), u.row(r).end(), [](const T& v) { return v == 0; });
    indifferent.push_back(zero_row);
    if (at_x.back() == 0 && !zero_row) return {T(0), true};
  }
  ExtendedValue<T> best;
  for (Alternative a = 0; a < m; ++a) {
    T total = 0;
    for (std::size_t r = 0; r < u.num_rows(); ++r)
      total += T(u.weight(r)) * (indifferent[r] ? T(1) : T(u(r, a) / at_x[r]));
    total /= T(u.num_agents());
    if (a == 0 || total > best.value) best.value = total;
  }
  return best;
}

NashOptResult nash_opt(const UtilityProfile& u, const NashOptOptions& options) {
  const std::size_t m = u.num_alternatives();
  const std::size_t rows = u.num_rows();
  const double n = static_cast<double>(u.num_agents());
  for (std::size_t r = 0; r < rows; ++r)
    if (*std::max_element(u.row(r).begin(), u.row(r).end()) <= 0.0)
      throw std::invalid_argument("nash_opt needs every agent to value some alternative");

  auto utilities = [&](const std::vector<double>& y) {
    std::vector<double> out(rows, 0.0);
    for (std::size_t r = 0; r < rows; ++r)
      for (Alternative a = 0; a < m; ++a) out[r] += y[a] * u(r, a);
    return out;
  };
  auto gradient = [&](const std::vector<double>& uy) {
    std::vector<double> g(m, 0.0);
    for (std::size_t r = 0; r < rows; ++r) {
      const double share = static_cast<double>(u.weight(r)) / n / uy[r];
      for (Alternative a = 0; a < m; ++a) g[a] += share * u(r, a);
    }
    return g;
  };

  std::vector<double> y(m, 1.0 / static_cast<double>(m));
  double step = 1.0;
  NashOptResult result{Distribution::uniform(m)};
  std::vector<double> uy = utilities(y);
  std::vector<double> g = gradient(uy);
  for (result.iterations = 0; result.iterations < options.max_iterations; ++result.iterations) {
    result.pf = *std::max_element(g.begin(), g.end());
    if (result.pf <= 1.0 + options.tolerance) {
      result.converged = true;
      break;
    }
    // Accept the largest tried step whose endpoint is still uphill along the
    // segment; by concavity the objective then did not decrease.
    bool moved = false;
    for (int attempt = 0; attempt < 80 && !moved; ++attempt) {
      std::vector<double> trial(m);
      for (Alternative a = 0; a < m; ++a) trial[a] = y[a] + step * g[a];
      trial = project_onto_simplex(trial);
      auto trial_uy = utilities(trial);
      if (std::any_of(trial_uy.begin(), trial_uy.end(), [](double v) { return v <= 0.0; })) {
        step *= 0.5;
        continue;
      }
      auto trial_g = gradient(trial_uy);
      double slope = 0.0;
      double moved_norm = 0.0;
      for (Alternative a = 0; a < m; ++a) {
        slope += trial_g[a] * (trial[a] - y[a]);
        moved_norm += std::abs(trial[a] - y[a]);
      }
      if (moved_norm == 0.0) break;
      if (slope >= 0.0) {
        y = std::move(trial);
        uy = std::move(trial_uy);
        g = std::move(trial_g);
        step = std::min(step * 2.0, 1e12);
        moved = true;
      } else {
        step *= 0.5;
      }
    }
    if (!moved) break;
  }
  result.pf = *std::max_element(g.begin(), g.end());
  result.converged = result.pf <= 1.0 + options.tolerance;

  double sum = 0.0;
  for (double v : y) sum += v;
  for (double& v : y) v /= sum;
  double drift = 1.0;
  for (double v : y) drift -= v;
  *std::max_element(y.begin(), y.end()) += drift;
  result.y = Distribution(std::move(y));
  return result;
}

DistortionReport nash_distortion_smallscale(const Distribution& x,
                                            const PreferenceProfile& profile) {
  const std::size_t m = profile.num_alternatives();
  const std::size_t ballots = profile.num_ballots();
  if (x.size() != m) throw std::invalid_argument("dimension mismatch");
  if (static_cast<double>(ballots) * std::log(static_cast<double>(m)) >
      std::log(kNashEnumerationLimit) + 1e-9)
    throw std::domain_error("instance too large for exact Nash distortion enumeration");

  std::vector<std::vector<double>> prefix;
  for (std::size_t b = 0; b < ballots; ++b) prefix.push_back(prefix_masses(x, profile, b));

  auto approval_rows = [&](const std::vector<std::size_t>& widths) {
    std::vector<std::vector<double>> rows;
    for (std::size_t b = 0; b < ballots; ++b) {
      std::vector<double> row(m, 0.0);
      auto order = profile.order(b);
      for (std::size_t pos = 0; pos < widths[b]; ++pos) row[order[pos]] = 1.0;
      rows.push_back(std::move(row));
    }
    return UtilityProfile::for_profile(profile, std::move(rows), UtilityClass::Approval);
  };

  std::vector<std::size_t> widths(ballots, 1);
  ExtendedValue<double> best;
  std::optional<std::vector<std::size_t>> best_widths;
  std::optional<Distribution> best_y;
  while (true) {
    bool zero = false;
    for (std::size_t b = 0; b < ballots; ++b) zero = zero || prefix[b][widths[b] - 1] == 0.0;
    auto u = approval_rows(widths);
    auto opt = nash_opt(u);
    ExtendedValue<double> value;
    if (zero) {
      value.infinite = true;
    } else {
      value.value = nash_welfare(opt.y, u) / nash_welfare(x, u);
    }
    if (!best_widths || better(value, best)) {
      best = value;
      best_widths = widths;
      best_y = opt.y;
    }
    if (best.infinite) break;

    std::size_t b = 0;
    while (b < ballots && widths[b] == m) widths[b++] = 1;
    if (b == ballots) break;
    ++widths[b];
  }

  const auto& y = *best_y;
  Alternative heaviest = 0;
  for (Alternative a = 1; a < m; ++a)
    if (y[a] > y[heaviest]) heaviest = a;
  return {best, heaviest, approval_rows(*best_widths), UtilityClass::All, y};
}

CoreReport core_check(const Distribution& x, const UtilityProfile& u, double alpha) {
  const std::size_t rows = u.num_rows();
  const std::size_t m = u.num_alternatives();
  if (rows > 20) throw std::invalid_argument("core_check enumerates coalitions of at most 20 rows");
  if (x.size() != m) throw std::invalid_argument("dimension mismatch");
  constexpr double kTol = 1e-9;
  const double n = static_cast<double>(u.num_agents());

  std::vector<double> at_x(rows);
  std::vector<double> row_max(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    at_x[r] = u.expected(r, x);
    row_max[r] = *std::max_element(u.row(r).begin(), u.row(r).end());
  }

  CoreReport report;
  report.alpha = alpha;
  for (std::uint32_t mask = 1; mask < (1u << rows); ++mask) {
    std::vector<std::size_t> members;
    double weight = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
      if (mask & (1u << r)) {
        members.push_back(r);
        weight += static_cast<double>(u.weight(r));
      }
    }
    const double share = weight / n;
    // slack_i(y) = share u_i(y) - alpha u_i(x)
    bool hopeless = false;
    for (std::size_t r : members) hopeless = hopeless || share * row_max[r] < alpha * at_x[r] - kTol;
    if (hopeless) continue;

    // Zero-sum screen: alternatives maximize, coalition members minimize.
    double shift = 0.0;
    double span = 0.0;
    for (std::size_t r : members) {
      shift = std::max(shift, alpha * at_x[r]);
      span = std::max(span, share * row_max[r]);
    }
    MatrixGame game{m, std::max(shift + span, 1e-12)};
    MwuOptions options;
    options.epsilon = 1e-3 * game.max_payoff;
    options.max_rounds = 2000;
    std::function<ColumnResponse<std::size_t>(const std::vector<double>&)> respond =
        [&](const std::vector<double>& y) {
          std::size_t worst = members.front();
          double worst_slack = std::numeric_limits<double>::infinity();
          for (std::size_t r : members) {
            double uy = 0.0;
            for (Alternative a = 0; a < m; ++a) uy += y[a] * u(r, a);
            const double slack = share * uy - alpha * at_x[r];
            if (slack < worst_slack) {
              worst_slack = slack;
              worst = r;
            }
          }
          std::vector<double> payoffs(m);
          for (Alternative a = 0; a < m; ++a)
            payoffs[a] = std::clamp(share * u(worst, a) - alpha * at_x[worst] + shift, 0.0,
                                    game.max_payoff);
          return ColumnResponse<std::size_t>{worst, std::move(payoffs)};
        };
    auto screen = mwu_solve<std::size_t>(game, respond, options);
    const double upper = screen.certified_upper - shift;
    if (upper < -kTol) continue;

    Distribution y_bar(project_onto_simplex(screen.row_mix));
    double lower = std::numeric_limits<double>::infinity();
    for (std::size_t r : members) lower = std::min(lower, share * u.expected(r, y_bar) - alpha * at_x[r]);
    if (lower > kTol) {
      report.violated = true;
      report.coalition = members;
      report.deviation = y_bar;
      return report;
    }

    // Exact check: maximize total slack subject to every slack >= 0.
    std::vector<double> objective(m, 0.0);
    std::vector<std::vector<double>> ge_rows;
    std::vector<double> ge_rhs;
    for (std::size_t r : members) {
      std::vector<double> coef(m);
      for (Alternative a = 0; a < m; ++a) {
        coef[a] = share * u(r, a);
        objective[a] += coef[a];
      }
      ge_rows.push_back(std::move(coef));
      ge_rhs.push_back(alpha * at_x[r]);
    }
    auto lp = detail::maximize_on_simplex(objective, ge_rows, ge_rhs);
    if (lp.status != detail::LpResult::Status::Optimal) continue;
    double total_slack = lp.objective;
    for (double v : ge_rhs) total_slack -= v;
    if (total_slack <= kTol) continue;

    std::vector<double> y(lp.y);
    for (double& v : y) v = std::max(v, 0.0);
    Distribution deviation(project_onto_simplex(y));
    bool valid = true;
    for (std::size_t r : members)
      valid = valid && share * u.expected(r, deviation) - alpha * at_x[r] >= -kTol;
    if (!valid) continue;
    report.violated = true;
    report.coalition = members;
    report.deviation = deviation;
    return report;
  }
  return report;
}

template struct ExtendedValue<double>;
template struct ExtendedValue<Rational>;
template double social_welfare(const Distribution&, const UtilityProfile&);
template Rational social_welfare(const ExactDistribution&, const ExactUtilityProfile&);
template DistortionReport distortion(const Distribution&, const PreferenceProfile&, UtilityClass);
template ExactDistortionReport distortion(const ExactDistribution&, const PreferenceProfile&,
                                          UtilityClass);
template DistortionReport pf_distortion(const Distribution&, const PreferenceProfile&);
template ExactDistortionReport pf_distortion(const ExactDistribution&, const PreferenceProfile&);
template ExtendedValue<double> pf_value(const Distribution&, const UtilityProfile&);
template ExtendedValue<Rational> pf_value(const ExactDistribution&, const ExactUtilityProfile&);

}  // namespace fairvote
