#include "rowsynth/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <thread>

#include "rowsynth/errors.hpp"
#include "rowsynth/optimal.hpp"
#include "rowsynth/simulate.hpp"

namespace rowsynth::experiments {

namespace {

std::atomic<unsigned> g_default_threads{0};

constexpr std::int64_t kMaxDpLength = 5000;

void check_basic(int q, std::int64_t length, std::int64_t trials) {
  if (q < 2) throw ConfigError("q must be at least 2");
  if (length < 1) throw ConfigError("L must be at least 1");
  if (trials < 1) throw ConfigError("trials must be at least 1");
}

std::uint64_t tie_seed_for(std::uint64_t seed, std::uint64_t trial) {
  return mix64(seed ^ mix64(trial ^ 0x7469655365656400ull));
}

// Evaluates fn(trial) for every trial, spread over worker threads, and
// reduces the results in trial order.
template <class Fn>
EstimateResult run_trials(std::int64_t trials, std::int64_t length,
                          unsigned threads, Fn&& fn) {
  if (threads == 0) threads = default_threads();
  threads = static_cast<unsigned>(
      std::min<std::int64_t>(threads, std::max<std::int64_t>(trials, 1)));

  std::vector<double> values(static_cast<std::size_t>(trials));
  std::atomic<std::int64_t> next{0};
  auto worker = [&] {
    for (std::int64_t k; (k = next.fetch_add(1)) < trials;) {
      values[static_cast<std::size_t>(k)] = fn(static_cast<std::uint64_t>(k));
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker);
  }

  double sum = 0;
  double sum_sq = 0;
  for (double v : values) {
    sum += v;
    sum_sq += v * v;
  }
  const auto n = static_cast<double>(trials);
  EstimateResult res;
  res.trials = trials;
  res.mean = sum / n;
  if (trials > 1) {
    const double var = std::max(0.0, (sum_sq - sum * sum / n) / (n - 1));
    res.std_error = std::sqrt(var / n);
  }
  res.slope = res.mean / static_cast<double>(length);
  return res;
}

}  // namespace

void ExperimentConfig::validate() const {
  check_basic(q, length, trials);
  const TiePolicy& p = find_policy(policy);
  if (!p.supports(q)) {
    throw ConfigError("policy " + p.cli_name + " requires q = " +
                      std::to_string(p.required_q) + ", got q = " +
                      std::to_string(q));
  }
}

Strand random_strand(int q, std::int64_t length, Rng& rng) {
  std::uniform_int_distribution<int> uniform(0, q - 1);
  Strand z(static_cast<std::size_t>(std::max<std::int64_t>(length, 0)));
  for (auto& s : z) s = uniform(rng);
  return z;
}

StrandPair random_pair(int q, std::int64_t length, std::uint64_t seed,
                       std::uint64_t trial) {
  Rng rng = substream(seed, trial);
  StrandPair pair;
  pair.x = random_strand(q, length, rng);
  pair.y = random_strand(q, length, rng);
  return pair;
}

void set_default_threads(unsigned threads) { g_default_threads = threads; }

unsigned default_threads() {
  const unsigned t = g_default_threads.load();
  if (t != 0) return t;
  return std::max(1u, std::thread::hardware_concurrency());
}

EstimateResult estimate_policy_time(const ExperimentConfig& config,
                                    unsigned threads) {
  config.validate();
  const TiePolicy& policy = find_policy(config.policy);
  const Alphabet alphabet(config.q);
  return run_trials(config.trials, config.length, threads,
                    [&](std::uint64_t k) {
                      const auto pair =
                          random_pair(config.q, config.length, config.seed, k);
                      return static_cast<double>(
                          simulate_time(pair.x, pair.y, policy, alphabet,
                                        tie_seed_for(config.seed, k)));
                    });
}

EstimateResult estimate_optimal_time(const ExperimentConfig& config,
                                     unsigned threads) {
  check_basic(config.q, config.length, config.trials);
  if (config.length > kMaxDpLength) {
    throw ConfigError("L = " + std::to_string(config.length) +
                      " is too large for the exact solver (max " +
                      std::to_string(kMaxDpLength) + ")");
  }
  const Alphabet alphabet(config.q);
  return run_trials(config.trials, config.length, threads,
                    [&](std::uint64_t k) {
                      const auto pair =
                          random_pair(config.q, config.length, config.seed, k);
                      return static_cast<double>(
                          t_star(pair.x, pair.y, alphabet));
                    });
}

EstimateResult estimate_solo_time(int q, std::int64_t length,
                                  std::int64_t trials, std::uint64_t seed,
                                  unsigned threads) {
  check_basic(q, length, trials);
  const Alphabet alphabet(q);
  return run_trials(trials, length, threads, [&](std::uint64_t k) {
    Rng rng = substream(seed, k);
    return static_cast<double>(
        solo_time(random_strand(q, length, rng), alphabet, 0));
  });
}

EstimateResult estimate_max_lower_bound(int q, std::int64_t length,
                                        std::int64_t trials,
                                        std::uint64_t seed, unsigned threads) {
  check_basic(q, length, trials);
  if (q == 2) {
    throw ConfigError(
        "the max-of-solo-times bound is for q > 2; for q = 2 use the "
        "trivial 2L lower bound");
  }
  const Alphabet alphabet(q);
  return run_trials(trials, length, threads, [&](std::uint64_t k) {
    const auto pair = random_pair(q, length, seed, k);
    return static_cast<double>(std::max(solo_time(pair.x, alphabet, 0),
                                        solo_time(pair.y, alphabet, 0)));
  });
}

BoundsRow analytic_bounds(int q, std::int64_t length) {
  if (q < 2) throw ConfigError("q must be at least 2");
  const double qd = q;
  const auto len = static_cast<double>(length);
  BoundsRow row;
  row.q = q;
  row.length = length;
  row.solo_expected = len * (qd + 1) / 2;
  row.x_first_expected = len * (qd + 1) * (qd + 7) / (2 * (qd + 3));
  row.lf_expected = len * (qd + 3) / 2;
  if (q == 2) {
    row.lf1_expected = 7 * len / 3;
  } else {
    row.lower_max_expected =
        row.solo_expected +
        std::sqrt(len * (qd * qd - 1) / (12 * std::numbers::pi));
  }
  row.trivial_lower = 2 * len;
  return row;
}

std::optional<double> analytic_slope(const TiePolicy& policy, int q) {
  if (!policy.supports(q)) return std::nullopt;
  const double qd = q;
  if (policy.name == "x_first" || policy.name == "y_first") {
    return (qd + 1) * (qd + 7) / (2 * (qd + 3));
  }
  if (policy.name == "lf1") return 7.0 / 3.0;
  // Every other catalog policy is lookahead-free and balanced to leading
  // order.
  return (qd + 3) / 2;
}

std::vector<FloorEntry> no_lookahead_floor_check(
    int q, std::int64_t length, std::int64_t trials,
    const std::vector<std::string>& policies, std::uint64_t seed,
    unsigned threads) {
  for (const auto& name : policies) {
    if (find_policy(name).lookahead_depth != 0) {
      throw ConfigError("policy " + name +
                        " uses lookahead; the floor applies to lookahead-free "
                        "policies only");
    }
  }
  const double floor = (static_cast<double>(q) + 3) / 2;
  std::vector<FloorEntry> out;
  for (const auto& name : policies) {
    ExperimentConfig cfg{q, length, trials, seed, name};
    FloorEntry e;
    e.policy = find_policy(name).cli_name;
    e.estimate = estimate_policy_time(cfg, threads);
    e.floor = floor;
    e.epsilon =
        4 * e.estimate.std_error / static_cast<double>(length) + 0.01 * floor;
    e.pass = e.estimate.slope >= floor - e.epsilon;
    out.push_back(e);
  }
  return out;
}

EstimateRow run_config(const ExperimentConfig& config, unsigned threads) {
  EstimateRow row;
  row.config = config;
  row.result = estimate_policy_time(config, threads);
  row.analytic_slope = analytic_slope(find_policy(config.policy), config.q);
  return row;
}

std::string format_number(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

std::string to_csv_line(const EstimateRow& row) {
  const auto& c = row.config;
  const auto& r = row.result;
  std::string line = std::to_string(c.q) + "," + std::to_string(c.length) +
                     "," + find_policy(c.policy).cli_name + "," +
                     std::to_string(r.trials) + "," + std::to_string(c.seed) +
                     "," + format_number(r.mean) + "," +
                     format_number(r.std_error) + "," + format_number(r.slope) +
                     ",";
  if (row.analytic_slope) {
    line += format_number(*row.analytic_slope);
    line += ",";
    if (r.std_error > 0) {
      const double target = *row.analytic_slope * static_cast<double>(c.length);
      line += format_number((r.mean - target) / r.std_error, 3);
    }
  } else {
    line += ",";
  }
  return line;
}

}  // namespace rowsynth::experiments
