#ifndef ROWSYNTH_MODEL_HPP_
#define ROWSYNTH_MODEL_HPP_

// Basic vocabulary of the row-constrained synthesis model: alphabet, strands,
// actions and schedules, plus their text forms.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace rowsynth {

using Symbol = int;
using Strand = std::vector<Symbol>;
using Duration = std::int64_t;

/// Size-q symbol alphabet {0, ..., q-1}. q must be at least 2.
class Alphabet {
 public:
  explicit Alphabet(int q);

  int size() const noexcept { return q_; }
  bool contains(Symbol s) const noexcept { return s >= 0 && s < q_; }

  friend bool operator==(Alphabet, Alphabet) = default;

 private:
  int q_;
};

/// Throws InputError if any symbol lies outside the alphabet.
void validate_strand(const Strand& z, Alphabet alphabet);

/// Symbol emitted by the periodic synthesis sequence at 1-based `slot`.
/// Slot 1 emits 0.
Symbol periodic_symbol(Alphabet alphabet, std::int64_t slot);

/// Unconstrained single-strand synthesis time: the slot at which the last
/// symbol of `z` is written when slots 1, 2, ... emit start_phase,
/// start_phase+1, ... (mod q). Zero for the empty strand.
Duration solo_time(const Strand& z, Alphabet alphabet, Symbol start_phase = 0);

/// Slots spent between writing `prev` and writing `next` back to back.
inline int transition_cost(Symbol prev, Symbol next, int q) {
  return ((next - prev - 1) % q + q) % q + 1;
}

/// One slot of a schedule: idle, or advance strand `strand()` (1-based).
class Action {
 public:
  static constexpr Action idle() { return Action(0); }
  static constexpr Action advance(int strand) { return Action(strand); }

  constexpr bool is_idle() const noexcept { return strand_ == 0; }
  constexpr int strand() const noexcept { return strand_; }

  friend constexpr bool operator==(Action, Action) = default;

 private:
  constexpr explicit Action(int strand) : strand_(strand) {}
  int strand_;
};

inline constexpr Action kAdvanceX = Action::advance(1);
inline constexpr Action kAdvanceY = Action::advance(2);
inline constexpr Action kIdle = Action::idle();

struct Schedule {
  std::vector<Action> actions;

  Duration completion_time() const noexcept {
    return static_cast<Duration>(actions.size());
  }
  friend bool operator==(const Schedule&, const Schedule&) = default;
};

// Text forms.
//
// Strands: "1,3,2,2", or the compact digit string "1322" when q <= 10.
// Schedules: "Y,X,-,X" over {X, Y, -}.

Strand parse_strand(std::string_view text, Alphabet alphabet);
std::string format_strand(const Strand& z);

Schedule parse_schedule(std::string_view text);
std::string format_schedule(const Schedule& schedule);

}  // namespace rowsynth

#endif  // ROWSYNTH_MODEL_HPP_
