#include "rowsynth/simulate.hpp"

#include "rowsynth/errors.hpp"
#include "rowsynth/rng.hpp"

namespace rowsynth {

namespace {

void check_policy(const TiePolicy& policy, Alphabet alphabet) {
  if (!policy.supports(alphabet.size())) {
    throw UnsupportedAlphabetError("policy " + policy.name +
                                   " does not support q = " +
                                   std::to_string(alphabet.size()));
  }
}

std::optional<Symbol> symbol_at(const Strand& z, std::size_t k) {
  if (k < z.size()) return z[k];
  return std::nullopt;
}

TieContext make_context(const Strand& x, const Strand& y, const SimState& s,
                        const TiePolicy& policy, int q, std::uint64_t tie_seed,
                        std::uint64_t tie_index) {
  TieContext ctx;
  ctx.i = s.i;
  ctx.j = s.j;
  ctx.r = s.r;
  ctx.q = q;
  ctx.history_digest = mix64(tie_seed ^ mix64(tie_index));
  if (policy.lookahead_depth >= 1) {
    ctx.lookahead_x = symbol_at(x, s.i + 1);
    ctx.lookahead_y = symbol_at(y, s.j + 1);
  }
  return ctx;
}

template <class OnStep>
void run_greedy(const Strand& x, const Strand& y, const TiePolicy& policy,
                Alphabet alphabet, std::uint64_t tie_seed, OnStep&& on_step) {
  validate_strand(x, alphabet);
  validate_strand(y, alphabet);
  check_policy(policy, alphabet);

  const int q = alphabet.size();
  SimState s;
  std::uint64_t ties = 0;
  for (; s.i < x.size() || s.j < y.size(); ++s.t) {
    s.r = static_cast<Symbol>((s.t - 1) % q);
    const bool can_x = s.i < x.size() && x[s.i] == s.r;
    const bool can_y = s.j < y.size() && y[s.j] == s.r;

    Action action = kIdle;
    if (can_x && can_y) {
      const auto ctx = make_context(x, y, s, policy, q, tie_seed, ties++);
      action = policy(ctx) == TieDecision::AdvanceX ? kAdvanceX : kAdvanceY;
    } else if (can_x) {
      action = kAdvanceX;
    } else if (can_y) {
      action = kAdvanceY;
    }
    on_step(s, action);
    if (action == kAdvanceX) ++s.i;
    if (action == kAdvanceY) ++s.j;
  }
}

}  // namespace

SimResult simulate(const Strand& x, const Strand& y, const TiePolicy& policy,
                   Alphabet alphabet, const SimOptions& options) {
  const int q = alphabet.size();
  SimResult result;
  run_greedy(x, y, policy, alphabet, options.tie_seed,
             [&](const SimState& s, Action action) {
               result.schedule.actions.push_back(action);
               if (!options.record_trace) return;
               StepRecord rec;
               rec.t = s.t;
               rec.r = s.r;
               rec.action = action;
               if (s.i < x.size()) rec.a = ((x[s.i] - s.r) % q + q) % q;
               if (s.j < y.size()) rec.b = ((y[s.j] - s.r) % q + q) % q;
               result.trace.push_back(rec);
             });
  return result;
}

Duration simulate_time(const Strand& x, const Strand& y,
                       const TiePolicy& policy, Alphabet alphabet,
                       std::uint64_t tie_seed) {
  Duration t = 0;
  run_greedy(x, y, policy, alphabet, tie_seed,
             [&](const SimState& s, Action) { t = s.t; });
  return t;
}

Schedule simulate_k(const std::vector<Strand>& strands,
                    const TiePolicy& policy, Alphabet alphabet,
                    const SimOptions& options) {
  for (const auto& z : strands) validate_strand(z, alphabet);
  check_policy(policy, alphabet);

  const int q = alphabet.size();
  std::vector<std::size_t> progress(strands.size(), 0);
  std::size_t remaining = 0;
  for (const auto& z : strands) remaining += z.size();

  Schedule schedule;
  std::uint64_t ties = 0;
  std::vector<std::size_t> candidates;
  for (std::int64_t t = 1; remaining > 0; ++t) {
    const Symbol r = static_cast<Symbol>((t - 1) % q);
    candidates.clear();
    for (std::size_t s = 0; s < strands.size(); ++s) {
      if (progress[s] < strands[s].size() && strands[s][progress[s]] == r) {
        candidates.push_back(s);
      }
    }
    if (candidates.empty()) {
      schedule.actions.push_back(kIdle);
      continue;
    }
    std::size_t winner = candidates.front();
    for (std::size_t c = 1; c < candidates.size(); ++c) {
      const std::size_t other = candidates[c];
      SimState pair{progress[winner], progress[other], t, r};
      const auto ctx = make_context(strands[winner], strands[other], pair,
                                    policy, q, options.tie_seed, ties++);
      if (policy(ctx) == TieDecision::AdvanceY) winner = other;
    }
    ++progress[winner];
    --remaining;
    schedule.actions.push_back(Action::advance(static_cast<int>(winner) + 1));
  }
  return schedule;
}

Duration apply_schedule(const Strand& x, const Strand& y,
                        const Schedule& schedule, Alphabet alphabet) {
  validate_strand(x, alphabet);
  validate_strand(y, alphabet);
  std::size_t i = 0;
  std::size_t j = 0;
  for (std::size_t k = 0; k < schedule.actions.size(); ++k) {
    const std::size_t t = k + 1;
    const Action action = schedule.actions[k];
    if (i == x.size() && j == y.size()) {
      throw ScheduleValidationError(
          t, "schedule continues after both strands are complete");
    }
    if (action.is_idle()) continue;

    const Symbol r = periodic_symbol(alphabet, static_cast<std::int64_t>(t));
    const char* name = action.strand() == 1 ? "x" : "y";
    const Strand* z = nullptr;
    std::size_t* pos = nullptr;
    if (action.strand() == 1) {
      z = &x;
      pos = &i;
    } else if (action.strand() == 2) {
      z = &y;
      pos = &j;
    } else {
      throw ScheduleValidationError(
          t, "action refers to strand " + std::to_string(action.strand()));
    }
    if (*pos == z->size()) {
      throw ScheduleValidationError(
          t, std::string("strand ") + name + " is already complete");
    }
    if ((*z)[*pos] != r) {
      throw ScheduleValidationError(
          t, std::string("strand ") + name + " needs symbol " +
                 std::to_string((*z)[*pos]) + " but slot emits " +
                 std::to_string(r));
    }
    ++*pos;
  }
  if (i != x.size() || j != y.size()) {
    throw IncompleteScheduleError(
        "schedule ends with x at " + std::to_string(i) + "/" +
        std::to_string(x.size()) + " and y at " + std::to_string(j) + "/" +
        std::to_string(y.size()));
  }
  return schedule.completion_time();
}

}  // namespace rowsynth
