#include "rowsynth/config.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <sstream>

#include "rowsynth/errors.hpp"

namespace rowsynth {

namespace {

using experiments::ExperimentConfig;

std::string at_line(const YAML::Mark& mark) {
  return "line " + std::to_string(mark.line + 1);
}

template <class T>
std::vector<T> values_of(const YAML::Node& node, const std::string& key) {
  std::vector<T> out;
  auto convert = [&](const YAML::Node& item) {
    if (!item.IsScalar()) {
      throw ConfigError(at_line(item.Mark()) + ": value of '" + key +
                        "' must be a scalar or a list of scalars");
    }
    try {
      out.push_back(item.as<T>());
    } catch (const YAML::Exception&) {
      throw ConfigError(at_line(item.Mark()) + ": bad value '" +
                        item.Scalar() + "' for '" + key + "'");
    }
  };
  if (node.IsSequence()) {
    if (node.size() == 0) {
      throw ConfigError(at_line(node.Mark()) + ": '" + key + "' is empty");
    }
    for (const auto& item : node) convert(item);
  } else {
    convert(node);
  }
  return out;
}

}  // namespace

std::vector<ExperimentConfig> parse_config(std::string_view text,
                                           const ConfigOverrides& overrides) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw ConfigError(at_line(e.mark) + ": " + e.msg);
  }

  const ExperimentConfig defaults;
  std::vector<int> qs{defaults.q};
  std::vector<std::int64_t> lengths{defaults.length};
  std::vector<std::int64_t> trials{defaults.trials};
  std::vector<std::uint64_t> seeds{defaults.seed};
  std::vector<std::string> policies{defaults.policy};

  if (root.IsDefined() && !root.IsNull()) {
    if (!root.IsMap()) {
      throw ConfigError(at_line(root.Mark()) +
                        ": config must be a key-value mapping");
    }
    for (const auto& kv : root) {
      const auto key = kv.first.as<std::string>();
      const YAML::Node& value = kv.second;
      if (key == "q") {
        qs = values_of<int>(value, key);
      } else if (key == "L") {
        lengths = values_of<std::int64_t>(value, key);
      } else if (key == "trials") {
        trials = values_of<std::int64_t>(value, key);
      } else if (key == "seed") {
        seeds = values_of<std::uint64_t>(value, key);
      } else if (key == "policy") {
        policies = values_of<std::string>(value, key);
      } else {
        throw ConfigError(at_line(kv.first.Mark()) + ": unknown key '" + key +
                          "'");
      }
    }
  }

  if (overrides.q) qs = {*overrides.q};
  if (overrides.length) lengths = {*overrides.length};
  if (overrides.trials) trials = {*overrides.trials};
  if (overrides.seed) seeds = {*overrides.seed};
  if (overrides.policy) policies = {*overrides.policy};

  std::vector<ExperimentConfig> out;
  for (int q : qs) {
    for (auto len : lengths) {
      for (const auto& policy : policies) {
        for (auto n : trials) {
          for (auto seed : seeds) {
            ExperimentConfig c{q, len, n, seed, policy};
            c.validate();
            out.push_back(c);
          }
        }
      }
    }
  }
  return out;
}

std::vector<ExperimentConfig> load_config(const std::string& path,
                                          const ConfigOverrides& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), overrides);
}

}  // namespace rowsynth
