#include "rowsynth/policies.hpp"

#include "rowsynth/errors.hpp"

namespace rowsynth {

TieDecision x_first(const TieContext&) { return TieDecision::AdvanceX; }

TieDecision y_first(const TieContext&) { return TieDecision::AdvanceY; }

TieDecision laggard_first(const TieContext& ctx) {
  return ctx.i > ctx.j ? TieDecision::AdvanceY : TieDecision::AdvanceX;
}

TieDecision lf1(const TieContext& ctx) {
  if (ctx.q != 2) {
    throw UnsupportedAlphabetError("lf1 is defined for q = 2 only, got q = " +
                                   std::to_string(ctx.q));
  }
  if (ctx.lookahead_x && ctx.lookahead_y &&
      *ctx.lookahead_x != *ctx.lookahead_y) {
    // Exactly one of the two following symbols is emitted next slot.
    return *ctx.lookahead_x == 1 - ctx.r ? TieDecision::AdvanceX
                                         : TieDecision::AdvanceY;
  }
  return laggard_first(ctx);
}

TieDecision round_robin(const TieContext& ctx) {
  if (ctx.i != ctx.j) return laggard_first(ctx);
  return ctx.i % 2 == 0 ? TieDecision::AdvanceX : TieDecision::AdvanceY;
}

TieDecision random_tie(const TieContext& ctx) {
  return (ctx.history_digest & 1u) ? TieDecision::AdvanceY
                                   : TieDecision::AdvanceX;
}

const std::vector<TiePolicy>& policy_catalog() {
  static const std::vector<TiePolicy> catalog = {
      {"x_first", "x-first", 0, 0, x_first},
      {"y_first", "y-first", 0, 0, y_first},
      {"laggard_first", "lf", 0, 0, laggard_first},
      {"lf1", "lf1", 1, 2, lf1},
      {"round_robin", "round-robin", 0, 0, round_robin},
      {"random_tie", "random", 0, 0, random_tie},
  };
  return catalog;
}

const TiePolicy& find_policy(std::string_view name) {
  for (const auto& p : policy_catalog()) {
    if (p.name == name || p.cli_name == name) return p;
  }
  std::string known;
  for (const auto& p : policy_catalog()) {
    if (!known.empty()) known += ", ";
    known += p.cli_name;
  }
  throw ConfigError("unknown policy \"" + std::string(name) +
                    "\" (known: " + known + ")");
}

}  // namespace rowsynth
