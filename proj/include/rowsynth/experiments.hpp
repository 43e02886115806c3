#ifndef ROWSYNTH_EXPERIMENTS_HPP_
#define ROWSYNTH_EXPERIMENTS_HPP_

// Monte Carlo estimates of expected completion times on random strand pairs.
//
// Trial k of a run with master seed s draws everything it needs from
// substream(s, k), and per-trial results are reduced in trial order, so an
// estimate is a pure function of (config, seed) whatever the thread count.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rowsynth/model.hpp"
#include "rowsynth/policies.hpp"
#include "rowsynth/rng.hpp"

namespace rowsynth::experiments {

struct ExperimentConfig {
  int q = 2;
  std::int64_t length = 1000;
  std::int64_t trials = 100;
  std::uint64_t seed = 0xDA7A;
  std::string policy = "lf";

  /// Throws ConfigError for out-of-range values or an unknown policy.
  void validate() const;
};

struct EstimateResult {
  double mean = 0;
  double std_error = 0;
  std::int64_t trials = 0;
  double slope = 0;  // mean / L
};

/// Uniform i.i.d. symbols.
Strand random_strand(int q, std::int64_t length, Rng& rng);

struct StrandPair {
  Strand x;
  Strand y;
};

/// The pair used by trial `trial` of every estimator seeded with `seed`.
StrandPair random_pair(int q, std::int64_t length, std::uint64_t seed,
                       std::uint64_t trial);

/// Worker threads used by the estimators; 0 picks the hardware count.
void set_default_threads(unsigned threads);
unsigned default_threads();

/// Mean completion time of config.policy on random pairs. Throws
/// ConfigError when the policy does not support config.q.
EstimateResult estimate_policy_time(const ExperimentConfig& config,
                                    unsigned threads = 0);

/// Mean optimal completion time (DP) on the same pairs as
/// estimate_policy_time with the same seed.
EstimateResult estimate_optimal_time(const ExperimentConfig& config,
                                     unsigned threads = 0);

EstimateResult estimate_solo_time(int q, std::int64_t length,
                                  std::int64_t trials, std::uint64_t seed,
                                  unsigned threads = 0);

/// Mean of max(T(x), T(y)). Throws ConfigError for q = 2, where the
/// trivial 2L bound is the relevant one.
EstimateResult estimate_max_lower_bound(int q, std::int64_t length,
                                        std::int64_t trials,
                                        std::uint64_t seed,
                                        unsigned threads = 0);

struct BoundsRow {
  int q = 2;
  std::int64_t length = 0;
  double solo_expected = 0;     // L(q+1)/2
  double x_first_expected = 0;  // L(q+1)(q+7)/(2(q+3))
  double lf_expected = 0;       // L(q+3)/2
  std::optional<double> lf1_expected;        // 7L/3, q = 2 only
  std::optional<double> lower_max_expected;  // q > 2 only
  double trivial_lower = 0;                  // 2L
};

BoundsRow analytic_bounds(int q, std::int64_t length);

/// Leading-order slope of a catalog policy, or nullopt if the policy does
/// not support q.
std::optional<double> analytic_slope(const TiePolicy& policy, int q);

struct FloorEntry {
  std::string policy;
  EstimateResult estimate;
  double floor = 0;    // (q+3)/2
  double epsilon = 0;  // 4 standard errors/L + 1% of the floor
  bool pass = false;
};

/// Checks that no lookahead-free policy beats the (q+3)/2 slope. Throws
/// ConfigError if any policy has lookahead.
std::vector<FloorEntry> no_lookahead_floor_check(
    int q, std::int64_t length, std::int64_t trials,
    const std::vector<std::string>& policies, std::uint64_t seed,
    unsigned threads = 0);

/// Tabular output.
struct EstimateRow {
  ExperimentConfig config;
  EstimateResult result;
  std::optional<double> analytic_slope;
};

EstimateRow run_config(const ExperimentConfig& config, unsigned threads = 0);

inline constexpr const char* kEstimateCsvHeader =
    "q,L,policy,trials,seed,meanT,stderr,slope,analyticSlope,deltaSigma";

std::string to_csv_line(const EstimateRow& row);

/// Formats doubles with a fixed number of digits so output is reproducible.
std::string format_number(double v, int precision = 6);

}  // namespace rowsynth::experiments

#endif  // ROWSYNTH_EXPERIMENTS_HPP_
