#include "fairvote/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "fairvote/fixtures.hpp"
#include "fairvote/pf_optimizer.hpp"
#include "fairvote/rules.hpp"
#include "fairvote/stable.hpp"
#include "fairvote/welfare.hpp"

namespace fairvote::cli {
namespace {

using Json = nlohmann::ordered_json;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.12g", v);
  return std::strtod(buffer, nullptr);
}

Json number(const Rational& v) { return rational_string(v); }

template <typename T>
Json number(const ExtendedValue<T>& v) {
  return v.infinite ? Json("inf") : number(v.value);
}

template <typename T>
Json distribution_json(const BasicDistribution<T>& x) {
  Json j;
  j["m"] = x.size();
  j["probs"] = Json::array();
  for (const T& p : x.probs()) j["probs"].push_back(number(p));
  return j;
}

template <typename T>
Json rows_json(const BasicUtilityProfile<T>& u) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < u.num_rows(); ++r) {
    Json row = Json::array();
    for (const T& v : u.row(r)) row.push_back(number(v));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Json read_json(const std::string& path) {
  try {
    return Json::parse(read_text(path));
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

// Numbers keep their shortest decimal spelling, so "0.1" is exactly 1/10 in
// rational mode; strings may also be fractions such as "1/3".
template <typename T>
T scalar(const Json& j) {
  if (j.is_string()) {
    Rational v = parse_rational(j.get<std::string>());
    if constexpr (is_exact_v<T>) return v;
    else return to_double(v);
  }
  if (!j.is_number()) throw InputError("expected a number, got " + j.dump());
  if constexpr (is_exact_v<T>) return parse_rational(j.dump());
  else return j.get<double>();
}

template <typename T>
BasicDistribution<T> read_distribution(const std::string& path, std::size_t m) {
  Json j = read_json(path);
  const Json& probs = j.is_array() ? j : j.at("probs");
  std::vector<T> values;
  for (const Json& p : probs) values.push_back(scalar<T>(p));
  if (values.size() != m)
    throw InputError(path + ": distribution has " + std::to_string(values.size()) +
                     " entries, profile has " + std::to_string(m) + " alternatives");
  if constexpr (!is_exact_v<T>) {
    // Hand-written decimals rarely sum to 1 within 1e-12.
    double sum = 0.0;
    for (double v : values) sum += v;
    if (std::abs(sum - 1.0) <= 1e-9 && sum > 0.0)
      for (double& v : values) v /= sum;
  }
  return BasicDistribution<T>(std::move(values));
}

template <typename T>
BasicUtilityProfile<T> read_utilities(const std::string& path, const PreferenceProfile& profile) {
  Json j = read_json(path);
  const UtilityClass cls = parse_class(j.value("class", std::string("all")));
  std::vector<std::vector<T>> rows;
  for (const Json& row : j.at("rows")) {
    std::vector<T> values;
    for (const Json& v : row) values.push_back(scalar<T>(v));
    rows.push_back(std::move(values));
  }
  const std::string order = j.value("order", std::string("alternatives"));
  BasicUtilityProfile<T> u =
      order == "ranking" ? BasicUtilityProfile<T>::from_ranked_rows(profile, rows, cls)
      : order == "alternatives"
          ? BasicUtilityProfile<T>::for_profile(profile, std::move(rows), cls)
          : throw InputError("utility order must be 'alternatives' or 'ranking'");
  auto report = check_consistency(u, profile);
  if (!report.ok) {
    std::string where = "row " + std::to_string(report.violation->row + 1);
    if (report.violation->better)
      where += ", alternatives " + std::to_string(*report.violation->better + 1) + " and " +
               std::to_string(*report.violation->worse + 1);
    throw InputError(path + ": utilities inconsistent with the profile (" + where + "): " +
                     report.violation->reason);
  }
  return u;
}

template <typename T>
std::vector<T> parse_list(const std::string& text) {
  std::vector<T> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    Rational v = parse_rational(item);
    if constexpr (is_exact_v<T>) out.push_back(v);
    else out.push_back(to_double(v));
  }
  return out;
}

template <typename T>
Json report_json(const BasicDistortionReport<T>& report) {
  Json j;
  j["value"] = number(report.value);
  j["witness_alternative"] = report.witness_alternative + 1;
  j["class"] = std::string(class_name(report.utility_class));
  j["witness_utilities"] = rows_json(report.witness_utilities);
  if (report.deviation) j["deviation"] = distribution_json(*report.deviation);
  return j;
}

Json lottery_json(const StableLottery& lottery) {
  Json j;
  j["k"] = lottery.k;
  j["rounds"] = Json::array();
  for (const LotteryRound& round : lottery.rounds) {
    Json r;
    r["kind"] = round.kind == LotteryRound::Kind::Committee ? "committee" : "sampling";
    r["z"] = Json::array();
    for (double v : round.z) r["z"].push_back(number(v));
    j["rounds"].push_back(std::move(r));
  }
  Json cert;
  cert["per_alternative"] = Json::array();
  for (double v : lottery.certificate.per_alternative) cert["per_alternative"].push_back(number(v));
  cert["max"] = number(lottery.certificate.max_value);
  cert["budget"] = number(lottery.certificate.budget);
  cert["stable"] = lottery.certificate.stable;
  j["certificate"] = std::move(cert);
  return j;
}

Json optimization_json(const OptimizationResult& result) {
  Json j;
  j["distribution"] = distribution_json(result.distribution);
  j["value"] = number(result.value);
  j["iterations"] = result.iterations;
  j["certified"] = result.certified;
  j["guarantee"] = number(result.guarantee);
  return j;
}

Json bundle_json(const FixtureBundle& bundle) {
  Json j;
  j["family"] = bundle.family;
  j["n"] = bundle.profile.num_agents();
  j["m"] = bundle.profile.num_alternatives();
  j["profile"] = serialize_profile(bundle.profile);
  j["claimed_bound"] = number(bundle.claimed_bound);
  j["bound_formula"] = bundle.bound_formula;
  j["witnesses"] = Json::array();
  for (const Witness& w : bundle.witnesses) {
    Json wj;
    wj["name"] = w.name;
    wj["class"] = std::string(class_name(w.utilities.utility_class()));
    wj["rows"] = rows_json(w.utilities);
    wj["deviation"] = distribution_json(w.deviation);
    j["witnesses"].push_back(std::move(wj));
  }
  return j;
}

// ---- stress -------------------------------------------------------------

struct StressConfig {
  std::size_t trials = 200;
  std::int64_t n_max = 50;
  std::vector<std::size_t> m_values{4, 9, 16, 25, 36, 49};
  std::uint64_t seed = 0;
  std::vector<std::string> checks{"slr", "pf"};
  std::size_t pf_iterations = 2000;
  double pf_epsilon = 1e-3;
};

std::size_t worker_count(std::size_t jobs) {
  std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("FAIRVOTE_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) workers = std::min(workers, static_cast<std::size_t>(cap));
  }
  return std::max<std::size_t>(1, std::min(workers, jobs));
}

Json stress_record(const StressConfig& config, std::size_t id, const std::string& check) {
  std::seed_seq seq{config.seed, static_cast<std::uint64_t>(id)};
  std::mt19937_64 rng(seq);
  std::uniform_int_distribution<std::int64_t> pick_n(1, config.n_max);
  const std::int64_t n = pick_n(rng);
  const std::size_t m = config.m_values[id % config.m_values.size()];
  const PreferenceProfile profile = random_profile(n, m, rng);

  Json record;
  record["id"] = id;
  record["n"] = n;
  record["m"] = m;
  try {
    if (check == "slr") {
      StableLottery lottery;
      Distribution x = stable_lottery_rule(profile, config.seed, &lottery);
      auto report = distortion(x, profile, UtilityClass::Balanced);
      const double bound = 2.0 * std::sqrt(static_cast<double>(m));
      record["rule"] = "slr";
      record["metric"] = "balanced-distortion";
      record["value"] = number(report.value);
      record["bound"] = number(bound);
      record["certificate_max"] = number(lottery.certificate.max_value);
      record["certificate_budget"] = number(lottery.certificate.budget);
      record["mwu_rounds"] = lottery.mwu_rounds;
      record["pass"] = !report.value.infinite && report.value.value <= bound &&
                       lottery.certificate.stable;
    } else {
      SubgradientOptions options;
      options.max_iterations = config.pf_iterations;
      auto result = optimize_pf(profile, config.pf_epsilon, options);
      const double bound = pf_bound(m);
      record["rule"] = "optimize_pf";
      record["metric"] = "pf-distortion";
      record["value"] = number(result.value);
      record["bound"] = number(bound);
      record["iterations"] = result.iterations;
      record["pass"] = result.value <= bound;
    }
  } catch (const std::exception& e) {
    record["rule"] = check;
    record["error"] = e.what();
    record["pass"] = false;
  }
  return record;
}

Json run_stress(const StressConfig& config) {
  for (const auto& check : config.checks)
    if (check != "slr" && check != "pf") throw InputError("unknown stress check '" + check + "'");
  if (config.m_values.empty() && config.trials > 0) throw InputError("no m values given");
  if (config.n_max < 1) throw InputError("--n-max must be at least 1");

  const std::size_t jobs = config.trials * config.checks.size();
  std::vector<Json> records(jobs);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t job = next++; job < jobs; job = next++)
      records[job] = stress_record(config, job / config.checks.size(),
                                   config.checks[job % config.checks.size()]);
  };
  std::vector<std::thread> pool;
  const std::size_t workers = worker_count(jobs);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  Json out;
  Json cfg;
  cfg["trials"] = config.trials;
  cfg["n_max"] = config.n_max;
  cfg["m_values"] = config.m_values;
  cfg["seed"] = config.seed;
  cfg["checks"] = config.checks;
  cfg["pf_iterations"] = config.pf_iterations;
  cfg["pf_epsilon"] = number(config.pf_epsilon);
  out["config"] = std::move(cfg);
  std::size_t failures = 0;
  out["records"] = Json::array();
  for (auto& r : records) {
    if (!r.at("pass").get<bool>()) ++failures;
    out["records"].push_back(std::move(r));
  }
  Json summary;
  summary["instances"] = config.trials;
  summary["records"] = jobs;
  summary["failures"] = failures;
  summary["pass"] = failures == 0;
  out["summary"] = std::move(summary);
  return out;
}

// ---- command handlers ---------------------------------------------------

struct Options {
  std::string profile_path;
  std::string dist_path;
  std::string utilities_path;
  std::string class_name = "unit-sum";
  std::string objective = "pf";
  std::string mode = "auto";
  std::string weights;
  std::string profile_out;
  bool rational = false;
  bool with_lottery = false;
  bool with_committee = false;
  bool unit_sum_witness = false;
  std::uint64_t seed = 0;
  double alpha = 1.0;
  double epsilon = 1e-3;
  double guard = 1e-3;
  std::size_t max_iterations = 1'000'000;
  std::int64_t n = 4;
  std::size_t k = 4;
  std::size_t m = 3;
  std::size_t rank = 1;
  std::size_t width = 1;
  std::size_t count = 1;
  std::string m_values = "4,9,16,25,36,49";
  std::string checks = "slr,pf";
  StressConfig stress;
};

PreferenceProfile load_profile(const std::string& path) {
  try {
    return parse_profile(read_text(path));
  } catch (const ParseError& e) {
    throw InputError(path + ": " + e.what());
  }
}

template <typename T>
Json rule_output(const Options& o, const std::string& rule) {
  const PreferenceProfile profile = load_profile(o.profile_path);
  if (rule == "harmonic") return distribution_json(harmonic_rule<T>(profile));
  if (rule == "point-voting")
    return distribution_json(
        point_voting_rule(profile, BasicPointVotingWeights<T>{parse_list<T>(o.weights)}));
  return distribution_json(
      supporting_size_rule(profile, BasicSupportingSizeWeights<T>{parse_list<T>(o.weights)}));
}

template <typename T>
Json eval_output(const Options& o, const std::string& metric) {
  const PreferenceProfile profile = load_profile(o.profile_path);
  const auto x = read_distribution<T>(o.dist_path, profile.num_alternatives());
  auto utilities = [&] {
    if (o.utilities_path.empty()) throw InputError(metric + " needs --utilities");
    return read_utilities<T>(o.utilities_path, profile);
  };
  if (metric == "sw") {
    Json j;
    j["value"] = number(social_welfare(x, utilities()));
    return j;
  }
  if (metric == "pf-value") {
    Json j;
    j["value"] = number(pf_value(x, utilities()));
    return j;
  }
  if (metric == "pf-distortion") return report_json(pf_distortion(x, profile));
  return report_json(distortion(x, profile, parse_class(o.class_name)));
}

int dispatch(CLI::App& app, const Options& o, std::ostream& out) {
  auto* rule = app.get_subcommand("rule");
  auto* eval = app.get_subcommand("eval");
  auto* opt = app.get_subcommand("opt");
  auto* gen = app.get_subcommand("gen");
  Json result;

  if (rule->parsed()) {
    const std::string name = rule->get_subcommands().front()->get_name();
    if (name == "two-alt") {
      const double beta = two_alt_rule(o.alpha, parse_objective(o.objective));
      result["m"] = 2;
      result["probs"] = {number(beta), number(1.0 - beta)};
    } else if (name == "slr") {
      const PreferenceProfile profile = load_profile(o.profile_path);
      StableLottery lottery;
      Distribution x = stable_lottery_rule(profile, o.seed, &lottery);
      if (o.with_lottery) {
        result["distribution"] = distribution_json(x);
        result["lottery"] = lottery_json(lottery);
      } else {
        result = distribution_json(x);
      }
    } else if (name == "scr") {
      const PreferenceProfile profile = load_profile(o.profile_path);
      const CommitteeSearch mode = parse_search_mode(o.mode);
      Distribution x = stable_committee_rule(profile, o.seed, mode);
      if (o.with_committee) {
        Committee c = find_stable_committee(profile, committee_size(profile.num_alternatives()),
                                            mode, o.seed);
        result["distribution"] = distribution_json(x);
        Json members = Json::array();
        for (Alternative a : c.members) members.push_back(a + 1);
        result["committee"] = {{"members", members}, {"achieved_c", number(c.achieved_c)}};
      } else {
        result = distribution_json(x);
      }
    } else {
      result = o.rational ? rule_output<Rational>(o, name) : rule_output<double>(o, name);
    }
  } else if (eval->parsed()) {
    const std::string metric = eval->get_subcommands().front()->get_name();
    if (metric == "nw" || metric == "nash-distortion" || metric == "core") {
      if (o.rational) throw InputError(metric + " has no rational mode");
      const PreferenceProfile profile = load_profile(o.profile_path);
      const auto x = read_distribution<double>(o.dist_path, profile.num_alternatives());
      if (metric == "nash-distortion") {
        result = report_json(nash_distortion_smallscale(x, profile));
      } else {
        if (o.utilities_path.empty()) throw InputError(metric + " needs --utilities");
        const auto u = read_utilities<double>(o.utilities_path, profile);
        if (metric == "nw") {
          result["value"] = number(nash_welfare(x, u));
        } else {
          CoreReport report = core_check(x, u, o.alpha);
          result["alpha"] = number(report.alpha);
          result["violated"] = report.violated;
          if (report.violated) {
            Json coalition = Json::array();
            for (std::size_t r : report.coalition) coalition.push_back(r + 1);
            result["coalition"] = std::move(coalition);
            result["deviation"] = distribution_json(*report.deviation);
          }
        }
      }
    } else {
      result = o.rational ? eval_output<Rational>(o, metric) : eval_output<double>(o, metric);
    }
  } else if (opt->parsed()) {
    const std::string target = opt->get_subcommands().front()->get_name();
    const PreferenceProfile profile = load_profile(o.profile_path);
    SubgradientOptions options;
    options.max_iterations = o.max_iterations;
    result = target == "pf" ? optimization_json(optimize_pf(profile, o.epsilon, options))
                            : optimization_json(optimize_distortion(
                                  profile, parse_class(o.class_name), o.epsilon, o.guard, options));
  } else if (gen->parsed()) {
    const std::string family = gen->get_subcommands().front()->get_name();
    FixtureBundle bundle =
        family == "sqrt-lb"   ? gen_sqrt_lb(o.n)
        : family == "nash-lb" ? gen_nash_lb(o.k)
                              : gen_cyclic_special(o.m, o.rank, o.width,
                                                   o.unit_sum_witness ? CyclicWitness::UnitSum
                                                                      : CyclicWitness::Approval);
    if (!o.profile_out.empty()) {
      std::ofstream file(o.profile_out);
      if (!file) throw InputError("cannot write " + o.profile_out);
      file << serialize_profile(bundle.profile);
    }
    result = bundle_json(bundle);
  } else if (app.get_subcommand("sample")->parsed()) {
    Json j = read_json(o.dist_path);
    std::vector<double> probs;
    for (const Json& p : j.is_array() ? j : j.at("probs")) probs.push_back(scalar<double>(p));
    Distribution x(std::move(probs));
    std::mt19937_64 rng(o.seed);
    std::discrete_distribution<std::size_t> draw(x.probs().begin(), x.probs().end());
    result["samples"] = Json::array();
    for (std::size_t i = 0; i < o.count; ++i) result["samples"].push_back(draw(rng) + 1);
  } else {
    StressConfig config = o.stress;
    config.m_values.clear();
    for (double v : parse_list<double>(o.m_values))
      config.m_values.push_back(static_cast<std::size_t>(v));
    config.checks.clear();
    std::stringstream in(o.checks);
    for (std::string item; std::getline(in, item, ',');)
      if (!item.empty()) config.checks.push_back(item);
    result = run_stress(config);
    out << result.dump(2) << '\n';
    return result["summary"]["pass"].get<bool>() ? kOk : kCertificationFailure;
  }
  out << result.dump(2) << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"fairvote: probabilistic voting rules, distortion and proportional fairness"};
  app.require_subcommand(1);
  Options o;

  auto add_profile = [&](CLI::App* cmd) {
    cmd->add_option("profile", o.profile_path, "Profile file ('n m' header, one ballot per line)")
        ->required();
  };
  auto add_distribution = [&](CLI::App* cmd) {
    cmd->add_option("distribution", o.dist_path, "Distribution JSON {\"m\":..,\"probs\":[..]}")
        ->required();
  };

  auto* rule = app.add_subcommand("rule", "Compute a voting rule's distribution");
  rule->require_subcommand(1);
  {
    auto* c = rule->add_subcommand("harmonic", "Harmonic rule");
    add_profile(c);
    c->add_flag("--rational", o.rational, "Exact rational arithmetic");
    c = rule->add_subcommand("point-voting", "Point-voting scheme with position weights");
    add_profile(c);
    c->add_option("--weights", o.weights, "Comma-separated w_1..w_m")->required();
    c->add_flag("--rational", o.rational, "Exact rational arithmetic");
    c = rule->add_subcommand("supporting-size", "Supporting-size scheme");
    add_profile(c);
    c->add_option("--weights", o.weights, "Comma-separated z_0..z_n")->required();
    c->add_flag("--rational", o.rational, "Exact rational arithmetic");
    c = rule->add_subcommand("two-alt", "Optimal two-alternative rule");
    c->add_option("--alpha", o.alpha, "Fraction of agents preferring a1")->required();
    c->add_option("--objective", o.objective, "unit-sum | unit-range | nash | pf")->required();
    c = rule->add_subcommand("slr", "Stable lottery rule");
    add_profile(c);
    c->add_option("--seed", o.seed, "Seed");
    c->add_flag("--lottery", o.with_lottery, "Also dump the lottery and its certificate");
    c = rule->add_subcommand("scr", "Stable committee rule");
    add_profile(c);
    c->add_option("--mode", o.mode, "exhaustive | local | auto");
    c->add_option("--seed", o.seed, "Seed for local search restarts");
    c->add_flag("--committee", o.with_committee, "Also print the committee");
  }

  auto* eval = app.add_subcommand("eval", "Evaluate a distribution");
  eval->require_subcommand(1);
  {
    auto add_common = [&](CLI::App* c, bool utilities, bool rational) {
      add_profile(c);
      add_distribution(c);
      if (utilities) c->add_option("--utilities", o.utilities_path, "Utility JSON")->required();
      if (rational) c->add_flag("--rational", o.rational, "Exact rational arithmetic");
    };
    add_common(eval->add_subcommand("sw", "Utilitarian social welfare"), true, true);
    add_common(eval->add_subcommand("nw", "Nash welfare"), true, false);
    add_common(eval->add_subcommand("pf-value", "Proportional fairness PF(x,u)"), true, true);
    add_common(eval->add_subcommand("pf-distortion", "Worst-case PF over all utilities"), false,
               true);
    auto* d = eval->add_subcommand("distortion", "Worst-case utilitarian distortion");
    add_common(d, false, true);
    d->add_option("--class", o.class_name, "unit-sum | unit-range | approval | balanced");
    add_common(eval->add_subcommand("nash-distortion", "Exact Nash-welfare distortion (small)"),
               false, false);
    auto* core = eval->add_subcommand("core", "alpha-core check");
    add_common(core, true, false);
    core->add_option("--alpha", o.alpha, "Core factor");
  }

  auto* opt = app.add_subcommand("opt", "Instance-optimal distributions");
  opt->require_subcommand(1);
  {
    auto* c = opt->add_subcommand("pf", "Minimize worst-case PF");
    add_profile(c);
    c->add_option("--eps", o.epsilon, "Target accuracy");
    c->add_option("--max-iterations", o.max_iterations, "Iteration cap");
    c = opt->add_subcommand("distortion", "Minimize utilitarian distortion");
    add_profile(c);
    c->add_option("--class", o.class_name, "unit-sum | unit-range | approval | balanced");
    c->add_option("--eps", o.epsilon, "Target accuracy");
    c->add_option("--guard", o.guard, "Uniform floor guard in (0, 1/2)");
    c->add_option("--max-iterations", o.max_iterations, "Iteration cap");
  }

  auto* gen = app.add_subcommand("gen", "Lower-bound instance generators");
  gen->require_subcommand(1);
  {
    auto* c = gen->add_subcommand("sqrt-lb", "n agents (perfect square), m = n + sqrt(n)");
    c->add_option("--n", o.n, "Number of agents")->required();
    c->add_option("--profile-out", o.profile_out, "Also write the profile file");
    c = gen->add_subcommand("nash-lb", "Layered instance with k levels");
    c->add_option("--k", o.k, "Number of levels")->required();
    c->add_option("--profile-out", o.profile_out, "Also write the profile file");
    c = gen->add_subcommand("cyclic", "a1 at a fixed rank, others rotating");
    c->add_option("--m", o.m, "Number of alternatives")->required();
    c->add_option("--r", o.rank, "Rank of a1")->required();
    c->add_option("--width", o.width, "Witness prefix width")->required();
    c->add_flag("--unit-sum", o.unit_sum_witness, "Witness uses 1/width instead of 1");
    c->add_option("--profile-out", o.profile_out, "Also write the profile file");
  }

  auto* sample = app.add_subcommand("sample", "Draw alternatives from a distribution");
  sample->add_option("distribution", o.dist_path, "Distribution JSON")->required();
  sample->add_option("--count", o.count, "Number of draws");
  sample->add_option("--seed", o.seed, "Seed");

  auto* stress = app.add_subcommand("stress", "Random-profile bound sweep");
  stress->add_option("--trials", o.stress.trials, "Number of random profiles");
  stress->add_option("--n-max", o.stress.n_max, "Largest number of agents");
  stress->add_option("--m-values", o.m_values, "Comma-separated m values, cycled");
  stress->add_option("--seed", o.stress.seed, "Seed");
  stress->add_option("--checks", o.checks, "Comma-separated subset of slr,pf");
  stress->add_option("--pf-iterations", o.stress.pf_iterations, "Iteration cap for optimize_pf");
  stress->add_option("--pf-eps", o.stress.pf_epsilon, "Target accuracy for optimize_pf");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    return dispatch(app, o, out);
  } catch (const CertificationError& e) {
    err << "certification failure: " << e.what() << '\n';
    return kCertificationFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace fairvote::cli
