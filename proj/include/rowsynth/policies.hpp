#ifndef ROWSYNTH_POLICIES_HPP_
#define ROWSYNTH_POLICIES_HPP_

// Tie-break policies. A greedy schedule only has a choice at a tie, a slot
// where both strands' next symbols equal the emitted symbol, so a policy is
// just a rule mapping the tie context to the strand that advances.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rowsynth/model.hpp"

namespace rowsynth {

enum class TieDecision { AdvanceX, AdvanceY };

/// Information visible to a policy at a tie. The lookahead fields are only
/// populated for policies declaring lookahead depth 1; they hold the symbol
/// following the current next symbol, or nothing if the strand has a single
/// symbol left.
struct TieContext {
  std::size_t i = 0;  // strand-1 symbols already synthesized
  std::size_t j = 0;  // strand-2 symbols already synthesized
  Symbol r = 0;       // emitted symbol at this slot
  int q = 2;
  std::optional<Symbol> lookahead_x;
  std::optional<Symbol> lookahead_y;
  // Opaque summary of the past; the simulator derives it from its tie seed
  // and the running tie count.
  std::uint64_t history_digest = 0;
};

struct TiePolicy {
  std::string name;      // canonical identifier, e.g. "laggard_first"
  std::string cli_name;  // command-line spelling, e.g. "lf"
  int lookahead_depth = 0;
  int required_q = 0;  // 0 when any alphabet is supported
  std::function<TieDecision(const TieContext&)> decide;

  TieDecision operator()(const TieContext& ctx) const { return decide(ctx); }
  bool supports(int q) const noexcept {
    return required_q == 0 || required_q == q;
  }
};

TieDecision x_first(const TieContext& ctx);
TieDecision y_first(const TieContext& ctx);

/// Advance the strand with fewer synthesized symbols; x on equal progress.
TieDecision laggard_first(const TieContext& ctx);

/// Binary one-symbol lookahead: prefer the strand whose following symbol is
/// emitted in the next slot; otherwise laggard-first. Throws
/// UnsupportedAlphabetError for q != 2.
TieDecision lf1(const TieContext& ctx);

/// Laggard-first, except at equal progress i = j = n where it alternates:
/// x when n is even, y when n is odd.
TieDecision round_robin(const TieContext& ctx);

/// Uses the low bit of the history digest.
TieDecision random_tie(const TieContext& ctx);

const std::vector<TiePolicy>& policy_catalog();

/// Looks a policy up by canonical or command-line name. Throws ConfigError.
const TiePolicy& find_policy(std::string_view name);

}  // namespace rowsynth

#endif  // ROWSYNTH_POLICIES_HPP_
