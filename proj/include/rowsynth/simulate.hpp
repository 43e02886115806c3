#ifndef ROWSYNTH_SIMULATE_HPP_
#define ROWSYNTH_SIMULATE_HPP_

// Greedy execution of strand pairs: at every slot a strand whose next symbol
// matches the emitted symbol advances; the tie policy is consulted only when
// both match. Also validation and scoring of externally supplied schedules.

#include <cstdint>
#include <optional>
#include <vector>

#include "rowsynth/model.hpp"
#include "rowsynth/policies.hpp"

namespace rowsynth {

struct SimState {
  std::size_t i = 0;    // strand-1 symbols completed
  std::size_t j = 0;    // strand-2 symbols completed
  std::int64_t t = 1;   // current slot, 1-based
  Symbol r = 0;         // (t - 1) mod q
};

/// One slot of a simulation. Offsets are (next symbol - r) mod q and are
/// empty once the corresponding strand is complete.
struct StepRecord {
  std::int64_t t = 0;
  Symbol r = 0;
  Action action = kIdle;
  std::optional<int> a;
  std::optional<int> b;

  bool is_tie() const noexcept { return a == 0 && b == 0; }
  friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

using SimTrace = std::vector<StepRecord>;

struct SimOptions {
  bool record_trace = true;
  // Seeds the history digest handed to the policy at each tie.
  std::uint64_t tie_seed = 0;
};

struct SimResult {
  Schedule schedule;
  SimTrace trace;
};

/// Throws InputError for invalid strands and UnsupportedAlphabetError when
/// the policy does not support q.
SimResult simulate(const Strand& x, const Strand& y, const TiePolicy& policy,
                   Alphabet alphabet, const SimOptions& options = {});

/// Completion time only; same semantics as simulate().
Duration simulate_time(const Strand& x, const Strand& y,
                       const TiePolicy& policy, Alphabet alphabet,
                       std::uint64_t tie_seed = 0);

/// k-strand greedy simulation. When several strands match, candidates are
/// folded pairwise in index order: the policy picks between the current
/// winner (as x) and the next candidate (as y).
Schedule simulate_k(const std::vector<Strand>& strands,
                    const TiePolicy& policy, Alphabet alphabet,
                    const SimOptions& options = {});

/// Checks `schedule` against the model and returns its completion time.
/// Non-greedy idles are accepted. Throws ScheduleValidationError naming the
/// slot of an illegal action, IncompleteScheduleError if a strand is left
/// unfinished.
Duration apply_schedule(const Strand& x, const Strand& y,
                        const Schedule& schedule, Alphabet alphabet);

}  // namespace rowsynth

#endif  // ROWSYNTH_SIMULATE_HPP_
