#include "rowsynth/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <ctime>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "rowsynth/config.hpp"
#include "rowsynth/errors.hpp"
#include "rowsynth/experiments.hpp"
#include "rowsynth/markov.hpp"
#include "rowsynth/model.hpp"
#include "rowsynth/optimal.hpp"
#include "rowsynth/policies.hpp"
#include "rowsynth/simulate.hpp"

namespace rowsynth::cli {

namespace {

using Json = nlohmann::ordered_json;
using experiments::format_number;
using markov::Rational;

struct Globals {
  std::uint64_t seed = kDefaultSeed;
  std::string format;  // empty: subcommand default
  std::string output;
  bool no_timestamp = false;
  unsigned threads = 0;
};

struct PairArgs {
  int q = 2;
  std::string x;
  std::string y;
};

std::string policy_names() {
  std::string names;
  for (const auto& p : policy_catalog()) {
    if (!names.empty()) names += "|";
    names += p.cli_name;
  }
  return names;
}

std::string fraction(const Rational& v) {
  if (v.denominator() == 1) return std::to_string(v.numerator());
  return std::to_string(v.numerator()) + "/" + std::to_string(v.denominator());
}

std::string utc_timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Json metadata(const Globals& g) {
  Json meta;
  meta["toolVersion"] = kToolVersion;
  meta["seed"] = g.seed;
  if (!g.no_timestamp) meta["timestamp"] = utc_timestamp();
  return meta;
}

std::string dump(Json doc, const Globals& g) {
  doc["metadata"] = metadata(g);
  return doc.dump(2) + "\n";
}

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string optional_number(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string();
}

void add_pair_options(CLI::App* sub, PairArgs& args) {
  sub->add_option("--q", args.q, "Alphabet size")
      ->default_val(2)
      ->check(CLI::Range(2, 1 << 20));
  sub->add_option("--x", args.x, "Strand 1, e.g. 1,3,2,2 or 1322")
      ->required();
  sub->add_option("--y", args.y, "Strand 2")->required();
}

// --- subcommand bodies -----------------------------------------------------

std::string cmd_simulate(const PairArgs& p, const std::string& policy_name,
                         bool with_trace, const Globals& g) {
  const Alphabet alphabet(p.q);
  const Strand x = parse_strand(p.x, alphabet);
  const Strand y = parse_strand(p.y, alphabet);
  const TiePolicy& policy = find_policy(policy_name);
  SimOptions opts;
  opts.tie_seed = g.seed;
  const SimResult sim = simulate(x, y, policy, alphabet, opts);

  if (g.format == "csv") {
    std::string out = "t,r,action,a,b\n";
    for (const auto& rec : sim.trace) {
      out += std::to_string(rec.t) + "," + std::to_string(rec.r) + "," +
             format_schedule(Schedule{{rec.action}}) + "," +
             (rec.a ? std::to_string(*rec.a) : "") + "," +
             (rec.b ? std::to_string(*rec.b) : "") + "\n";
    }
    return out;
  }
  Json doc;
  doc["q"] = p.q;
  doc["Lx"] = x.size();
  doc["Ly"] = y.size();
  doc["policy"] = policy.cli_name;
  doc["completionTime"] = sim.schedule.completion_time();
  doc["schedule"] = format_schedule(sim.schedule);
  if (with_trace) {
    Json trace = Json::array();
    for (const auto& rec : sim.trace) {
      Json r;
      r["t"] = rec.t;
      r["r"] = rec.r;
      r["action"] = format_schedule(Schedule{{rec.action}});
      r["a"] = rec.a ? Json(*rec.a) : Json(nullptr);
      r["b"] = rec.b ? Json(*rec.b) : Json(nullptr);
      trace.push_back(r);
    }
    doc["trace"] = trace;
  }
  return dump(doc, g);
}

std::string cmd_solve(const PairArgs& p, const Globals& g) {
  const Alphabet alphabet(p.q);
  const Strand x = parse_strand(p.x, alphabet);
  const Strand y = parse_strand(p.y, alphabet);
  const OptimalResult best = solve(x, y, alphabet);
  const std::size_t len = std::max(x.size(), y.size());
  if (g.format == "csv") {
    return "q,L,tStar,schedule\n" + std::to_string(p.q) + "," +
           std::to_string(len) + "," + std::to_string(best.t_star) + "," +
           csv_quote(format_schedule(best.schedule)) + "\n";
  }
  Json doc;
  doc["q"] = p.q;
  doc["L"] = len;
  doc["tStar"] = best.t_star;
  doc["schedule"] = format_schedule(best.schedule);
  return dump(doc, g);
}

std::string cmd_oracle(const PairArgs& p, std::uint64_t budget,
                       const Globals& g) {
  const Alphabet alphabet(p.q);
  const Strand x = parse_strand(p.x, alphabet);
  const Strand y = parse_strand(p.y, alphabet);
  const auto res = enumerate_interleavings_min(x, y, alphabet, budget);
  if (g.format == "csv") {
    return "tStar,interleavingsChecked\n" + std::to_string(res.min_time) + "," +
           std::to_string(res.interleavings_checked) + "\n";
  }
  Json doc;
  doc["tStar"] = res.min_time;
  doc["interleavingsChecked"] = res.interleavings_checked;
  return dump(doc, g);
}

std::string cmd_validate(const PairArgs& p, const std::string& schedule_text,
                         const Globals& g) {
  const Alphabet alphabet(p.q);
  const Strand x = parse_strand(p.x, alphabet);
  const Strand y = parse_strand(p.y, alphabet);
  const Duration t = apply_schedule(x, y, parse_schedule(schedule_text),
                                    alphabet);
  if (g.format == "csv") {
    return "completionTime\n" + std::to_string(t) + "\n";
  }
  Json doc;
  doc["completionTime"] = t;
  return dump(doc, g);
}

std::string cmd_rotations(const std::vector<int>& qs, std::int64_t rotations,
                          const Globals& g) {
  std::string out =
      "q,nRotations,meanVX,meanVY,meanT,stderrVX,stderrVY,stderrT,closedVX,"
      "closedVY,closedT\n";
  Json rows = Json::array();
  for (int q : qs) {
    const auto m = markov::rotation_moments(q, rotations, g.seed);
    const auto c = markov::closed_form_rotation(q);
    const double cvx = boost::rational_cast<double>(c.vx);
    const double cvy = boost::rational_cast<double>(c.vy);
    const double ct = boost::rational_cast<double>(c.t);
    out += std::to_string(q) + "," + std::to_string(rotations) + "," +
           format_number(m.mean_vx) + "," + format_number(m.mean_vy) + "," +
           format_number(m.mean_t) + "," + format_number(m.stderr_vx) + "," +
           format_number(m.stderr_vy) + "," + format_number(m.stderr_t) + "," +
           format_number(cvx) + "," + format_number(cvy) + "," +
           format_number(ct) + "\n";
    Json row;
    row["q"] = q;
    row["nRotations"] = rotations;
    row["meanVX"] = m.mean_vx;
    row["meanVY"] = m.mean_vy;
    row["meanT"] = m.mean_t;
    row["stderrVX"] = m.stderr_vx;
    row["stderrVY"] = m.stderr_vy;
    row["stderrT"] = m.stderr_t;
    row["closedVX"] = fraction(c.vx);
    row["closedVY"] = fraction(c.vy);
    row["closedT"] = fraction(c.t);
    rows.push_back(row);
  }
  if (g.format == "json") {
    Json doc;
    doc["rotations"] = rows;
    return dump(doc, g);
  }
  return out;
}

std::string cmd_chain(bool show_matrix, bool show_stationary,
                      const Globals& g) {
  if (!show_matrix && !show_stationary) show_matrix = show_stationary = true;
  const auto p = markov::lf1_matrix();
  const auto pi = markov::stationary(p);
  const auto rate = markov::synthesis_rate(pi);
  const auto decimals = pi.values();

  if (g.format == "json") {
    Json doc;
    if (show_matrix) {
      Json rows = Json::array();
      for (std::size_t i = 0; i < p.size(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < p.size(); ++j) {
          row.push_back(fraction(p.at(i, j)));
        }
        rows.push_back(row);
      }
      doc["matrix"] = rows;
    }
    if (show_stationary) {
      Json states = Json::array();
      for (std::size_t s = 0; s < pi.weights.size(); ++s) {
        const auto st = markov::Lf1State::from_index(static_cast<int>(s));
        Json e;
        e["state"] = s;
        e["abcd"] = std::to_string(st.a) + std::to_string(st.b) +
                    std::to_string(st.c) + std::to_string(st.d);
        e["pi"] = fraction(pi.weights[s]);
        e["value"] = decimals[s];
        states.push_back(e);
      }
      doc["stationary"] = states;
      doc["rate"] = fraction(rate);
      doc["rateValue"] = boost::rational_cast<double>(rate);
    }
    return dump(doc, g);
  }

  std::string out;
  if (show_matrix) {
    out += "# transition matrix, states indexed 8a+4b+2c+d\nstate";
    for (std::size_t j = 0; j < p.size(); ++j) out += "," + std::to_string(j);
    out += "\n";
    for (std::size_t i = 0; i < p.size(); ++i) {
      out += std::to_string(i);
      for (std::size_t j = 0; j < p.size(); ++j) {
        out += "," + fraction(p.at(i, j));
      }
      out += "\n";
    }
  }
  if (show_stationary) {
    if (show_matrix) out += "\n";
    out += "# stationary distribution\nstate,a,b,c,d,pi,value\n";
    for (std::size_t s = 0; s < pi.weights.size(); ++s) {
      const auto st = markov::Lf1State::from_index(static_cast<int>(s));
      out += std::to_string(s) + "," + std::to_string(st.a) + "," +
             std::to_string(st.b) + "," + std::to_string(st.c) + "," +
             std::to_string(st.d) + "," + fraction(pi.weights[s]) + "," +
             format_number(decimals[s], 12) + "\n";
    }
    out += "rate,,,,," + fraction(rate) + "," +
           format_number(boost::rational_cast<double>(rate), 12) + "\n";
  }
  return out;
}

std::string cmd_bounds(const std::vector<int>& qs,
                       const std::vector<std::int64_t>& lengths,
                       const Globals& g) {
  std::string out =
      "q,L,soloExpected,xFirstExpected,lfExpected,lf1Expected,"
      "lowerMaxExpected,trivialLower\n";
  Json rows = Json::array();
  for (int q : qs) {
    for (auto len : lengths) {
      const auto b = experiments::analytic_bounds(q, len);
      out += std::to_string(q) + "," + std::to_string(len) + "," +
             format_number(b.solo_expected) + "," +
             format_number(b.x_first_expected) + "," +
             format_number(b.lf_expected) + "," +
             optional_number(b.lf1_expected) + "," +
             optional_number(b.lower_max_expected) + "," +
             format_number(b.trivial_lower) + "\n";
      Json row;
      row["q"] = q;
      row["L"] = len;
      row["soloExpected"] = b.solo_expected;
      row["xFirstExpected"] = b.x_first_expected;
      row["lfExpected"] = b.lf_expected;
      row["lf1Expected"] = b.lf1_expected ? Json(*b.lf1_expected) : Json();
      row["lowerMaxExpected"] =
          b.lower_max_expected ? Json(*b.lower_max_expected) : Json();
      row["trivialLower"] = b.trivial_lower;
      rows.push_back(row);
    }
  }
  if (g.format == "json") {
    Json doc;
    doc["bounds"] = rows;
    return dump(doc, g);
  }
  return out;
}

std::string cmd_experiment(
    const std::vector<experiments::ExperimentConfig>& configs,
    const Globals& g) {
  std::string out = std::string(experiments::kEstimateCsvHeader) + "\n";
  Json rows = Json::array();
  for (const auto& cfg : configs) {
    const auto row = experiments::run_config(cfg, g.threads);
    out += experiments::to_csv_line(row) + "\n";
    Json r;
    r["q"] = cfg.q;
    r["L"] = cfg.length;
    r["policy"] = find_policy(cfg.policy).cli_name;
    r["trials"] = row.result.trials;
    r["seed"] = cfg.seed;
    r["meanT"] = row.result.mean;
    r["stderr"] = row.result.std_error;
    r["slope"] = row.result.slope;
    r["analyticSlope"] =
        row.analytic_slope ? Json(*row.analytic_slope) : Json();
    rows.push_back(r);
  }
  if (g.format == "json") {
    Json doc;
    doc["results"] = rows;
    return dump(doc, g);
  }
  return out;
}

std::string cmd_conjecture(int q, std::int64_t length, std::int64_t trials,
                           const Globals& g) {
  experiments::ExperimentConfig cfg{q, length, trials, g.seed, "lf"};
  const auto opt = experiments::estimate_optimal_time(cfg, g.threads);
  const auto lf = experiments::estimate_policy_time(cfg, g.threads);
  const double target = q == 2 ? 2.16 : (q + 2) / 2.0;
  if (g.format == "json") {
    Json doc;
    doc["q"] = q;
    doc["L"] = length;
    doc["trials"] = trials;
    doc["optimalMean"] = opt.mean;
    doc["optimalStderr"] = opt.std_error;
    doc["optimalSlope"] = opt.slope;
    doc["lfSlope"] = lf.slope;
    doc["conjecturedSlope"] = target;
    return dump(doc, g);
  }
  return "q,L,trials,seed,optimalMean,optimalStderr,optimalSlope,lfSlope,"
         "conjecturedSlope\n" +
         std::to_string(q) + "," + std::to_string(length) + "," +
         std::to_string(trials) + "," + std::to_string(g.seed) + "," +
         format_number(opt.mean) + "," + format_number(opt.std_error) + "," +
         format_number(opt.slope) + "," + format_number(lf.slope) + "," +
         format_number(target) + "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{
      "rowsynth: scheduling two DNA strands in one row of a synthesis array "
      "under the periodic synthesis sequence.\n"
      "Defaults: q = 2, L = 1000, trials = 100, seed = 0xDA7A (55930)."};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.footer("Tie policies (--policy): " + policy_names());

  Globals g;
  app.add_option("--seed", g.seed, "Master random seed")
      ->envname("ROWSYNTH_SEED");
  app.add_option("--format", g.format, "Output format")
      ->envname("ROWSYNTH_FORMAT")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--output", g.output, "Write output to this file");
  app.add_flag("--no-timestamp", g.no_timestamp,
               "Omit the timestamp from JSON metadata");
  app.add_option("--threads", g.threads, "Worker threads (0 = all cores)");

  const std::string policy_help = "Tie policy: " + policy_names();

  PairArgs pair;
  std::string policy_name = "x-first";
  bool with_trace = false;
  auto* sim = app.add_subcommand("simulate", "Greedy simulation of a pair");
  add_pair_options(sim, pair);
  sim->add_option("--policy", policy_name, policy_help)->default_val("x-first");
  sim->add_flag("--trace", with_trace, "Include the per-slot trace");

  auto* solve_cmd = app.add_subcommand("solve", "Optimal schedule (exact DP)");
  add_pair_options(solve_cmd, pair);

  std::uint64_t budget = kDefaultInterleavingBudget;
  auto* oracle = app.add_subcommand(
      "oracle", "Brute-force minimum over all interleavings");
  add_pair_options(oracle, pair);
  oracle->add_option("--budget", budget, "Maximum interleavings to enumerate");

  std::string schedule_text;
  auto* validate = app.add_subcommand(
      "validate", "Check a schedule and report its completion time");
  add_pair_options(validate, pair);
  validate->add_option("--schedule", schedule_text, "e.g. \"Y,X,-,X\"")
      ->required();

  std::vector<int> qs{2};
  std::int64_t rotations = 100000;
  auto* rot = app.add_subcommand(
      "rotations", "Empirical vs closed-form rotation moments (x-first)");
  rot->add_option("--q", qs, "Alphabet sizes")
      ->delimiter(',')
      ->check(CLI::Range(2, 1 << 20));
  rot->add_option("--rotations", rotations, "Rotations per alphabet size")
      ->check(CLI::PositiveNumber);

  bool show_matrix = false;
  bool show_stationary = false;
  auto* chain = app.add_subcommand(
      "chain", "Transition matrix and stationary law of the lf1 chain");
  chain->add_flag("--matrix", show_matrix, "Print the transition matrix");
  chain->add_flag("--stationary", show_stationary,
                  "Print the stationary distribution and rate");

  std::vector<std::int64_t> lengths{1000};
  auto* bounds = app.add_subcommand("bounds", "Analytic expected times");
  bounds->add_option("--q", qs, "Alphabet sizes")
      ->delimiter(',')
      ->check(CLI::Range(2, 1 << 20));
  bounds->add_option("--L", lengths, "Strand lengths")->delimiter(',');

  int q_single = 2;
  std::int64_t length = 1000;
  std::int64_t trials = 100;
  std::string exp_policy = "lf";
  std::string config_path;
  auto* experiment = app.add_subcommand(
      "experiment", "Monte Carlo completion time of a policy");
  auto* q_opt = experiment->add_option("--q", q_single, "Alphabet size");
  auto* l_opt = experiment->add_option("--L", length, "Strand length");
  auto* t_opt = experiment->add_option("--trials", trials, "Random pairs");
  auto* p_opt = experiment->add_option("--policy", exp_policy, policy_help);
  experiment->add_option("--config", config_path,
                         "YAML sweep file; flags override its values");

  int conj_q = 2;
  std::int64_t conj_length = 200;
  std::int64_t conj_trials = 100;
  auto* conjecture = app.add_subcommand(
      "conjecture", "Mean optimal completion time on random pairs");
  conjecture->add_option("--q", conj_q, "Alphabet size")
      ->check(CLI::Range(2, 1 << 20));
  conjecture->add_option("--L", conj_length, "Strand length");
  conjecture->add_option("--trials", conj_trials, "Random pairs");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsageError;
  }

  try {
    experiments::set_default_threads(g.threads);
    std::string payload;
    if (sim->parsed()) {
      payload = cmd_simulate(pair, policy_name, with_trace, g);
    } else if (solve_cmd->parsed()) {
      payload = cmd_solve(pair, g);
    } else if (oracle->parsed()) {
      payload = cmd_oracle(pair, budget, g);
    } else if (validate->parsed()) {
      payload = cmd_validate(pair, schedule_text, g);
    } else if (rot->parsed()) {
      payload = cmd_rotations(qs, rotations, g);
    } else if (chain->parsed()) {
      payload = cmd_chain(show_matrix, show_stationary, g);
    } else if (bounds->parsed()) {
      payload = cmd_bounds(qs, lengths, g);
    } else if (experiment->parsed()) {
      std::vector<experiments::ExperimentConfig> configs;
      if (!config_path.empty()) {
        ConfigOverrides ov;
        if (q_opt->count()) ov.q = q_single;
        if (l_opt->count()) ov.length = length;
        if (t_opt->count()) ov.trials = trials;
        if (p_opt->count()) ov.policy = exp_policy;
        if (app.get_option("--seed")->count()) ov.seed = g.seed;
        configs = load_config(config_path, ov);
      } else {
        experiments::ExperimentConfig c{q_single, length, trials, g.seed,
                                        exp_policy};
        c.validate();
        configs.push_back(c);
      }
      payload = cmd_experiment(configs, g);
    } else if (conjecture->parsed()) {
      payload = cmd_conjecture(conj_q, conj_length, conj_trials, g);
    }

    if (g.output.empty()) {
      out << payload;
    } else {
      std::ofstream file(g.output, std::ios::binary);
      if (!file) {
        err << "error: cannot write " << g.output << "\n";
        return kValidationError;
      }
      file << payload;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kValidationError;
  }
  return kOk;
}

}  // namespace rowsynth::cli
