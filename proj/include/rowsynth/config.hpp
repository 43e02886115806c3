#ifndef ROWSYNTH_CONFIG_HPP_
#define ROWSYNTH_CONFIG_HPP_

// Sweep files for the `experiment` subcommand: a flat YAML mapping whose
// values are scalars or lists, e.g.
//
//   q: 2
//   L: [250, 1000, 2000]
//   policy: lf
//   trials: 200
//
// Every combination of list values becomes one ExperimentConfig.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rowsynth/experiments.hpp"

namespace rowsynth {

/// Values given on the command line; they replace the file's values.
struct ConfigOverrides {
  std::optional<int> q;
  std::optional<std::int64_t> length;
  std::optional<std::int64_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> policy;
};

/// Throws ConfigError (with the line number for syntax errors) on bad input.
std::vector<experiments::ExperimentConfig> parse_config(
    std::string_view text, const ConfigOverrides& overrides = {});

std::vector<experiments::ExperimentConfig> load_config(
    const std::string& path, const ConfigOverrides& overrides = {});

}  // namespace rowsynth

#endif  // ROWSYNTH_CONFIG_HPP_
