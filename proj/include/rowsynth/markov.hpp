#ifndef ROWSYNTH_MARKOV_HPP_
#define ROWSYNTH_MARKOV_HPP_

// Chain-level analysis of the greedy process: the offset chain on (a, b),
// its decomposition into full rotations between visits to the tie state
// (0, 0), closed-form rotation moments under x-first, and the 16-state
// chain of the binary one-lookahead policy.

#include <boost/rational.hpp>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "rowsynth/model.hpp"
#include "rowsynth/policies.hpp"
#include "rowsynth/rng.hpp"
#include "rowsynth/simulate.hpp"

namespace rowsynth::markov {

using Rational = boost::rational<std::int64_t>;

struct OffsetState {
  int a = 0;
  int b = 0;

  bool is_tie() const noexcept { return a == 0 && b == 0; }
  friend bool operator==(OffsetState, OffsetState) = default;
};

struct ChainStep {
  OffsetState next;
  Action event = kIdle;
};

/// One slot of the offset chain. `draw(strand)` supplies the fresh offset of
/// a strand that just advanced (uniform on [0, q) for random strands).
///
///   both offsets positive   -> both decrement, idle
///   exactly one offset zero -> that strand advances and redraws, the other
///                              decrements
///   tie (0, 0)              -> `tie` picks the strand; it redraws and the
///                              other becomes q - 1
template <class Draw>
ChainStep chain_step(OffsetState s, int q, TieDecision tie, Draw&& draw) {
  if (s.a > 0 && s.b > 0) return {{s.a - 1, s.b - 1}, kIdle};
  bool advance_x = s.a == 0;
  if (s.a == 0 && s.b == 0) advance_x = tie == TieDecision::AdvanceX;
  if (advance_x) {
    return {{draw(1), (s.b + q - 1) % q}, kAdvanceX};
  }
  return {{(s.a + q - 1) % q, draw(2)}, kAdvanceY};
}

enum class ChainTieRule { XFirst, LaggardFirst };

/// Offset chain with slot and advance bookkeeping. Emits the same records as
/// the string-level simulator so traces from both feed the same analyses.
class OffsetChain {
 public:
  OffsetChain(int q, OffsetState start) : q_(q), state_(start) {}

  template <class Draw>
  StepRecord step(TieDecision tie, Draw&& draw) {
    StepRecord rec;
    rec.t = ++t_;
    rec.r = static_cast<Symbol>((rec.t - 1) % q_);
    rec.a = state_.a;
    rec.b = state_.b;
    const ChainStep next = chain_step(state_, q_, tie, draw);
    rec.action = next.event;
    if (next.event == kAdvanceX) ++advances_x_;
    if (next.event == kAdvanceY) ++advances_y_;
    state_ = next.next;
    return rec;
  }

  /// Tie decision under `rule` given the advances so far.
  TieDecision decide(ChainTieRule rule) const noexcept {
    if (rule == ChainTieRule::XFirst) return TieDecision::AdvanceX;
    return advances_x_ > advances_y_ ? TieDecision::AdvanceY
                                     : TieDecision::AdvanceX;
  }

  OffsetState state() const noexcept { return state_; }
  std::int64_t slot() const noexcept { return t_; }
  std::int64_t advances_x() const noexcept { return advances_x_; }
  std::int64_t advances_y() const noexcept { return advances_y_; }

 private:
  int q_;
  OffsetState state_;
  std::int64_t t_ = 0;
  std::int64_t advances_x_ = 0;
  std::int64_t advances_y_ = 0;
};

/// Runs the chain with uniform redraws for `slots` slots.
SimTrace run_chain(int q, OffsetState start, std::int64_t slots,
                   ChainTieRule rule, Rng& rng);

/// A full rotation: from a visit to (0, 0) inclusive to the next visit
/// exclusive. vx and vy count advances of each strand, the opening tie
/// advance included.
struct RotationRecord {
  std::int64_t vx = 0;
  std::int64_t vy = 0;
  std::int64_t t_len = 0;
  friend bool operator==(const RotationRecord&, const RotationRecord&) = default;
};

/// Streaming splitter; feed records in slot order.
class RotationSplitter {
 public:
  /// Returns the rotation closed by `rec`, if `rec` is a tie slot that ends
  /// one.
  std::optional<RotationRecord> feed(const StepRecord& rec);

 private:
  std::optional<RotationRecord> open_;
};

/// Splits a trace at its tie slots. Slots before the first tie and the
/// trailing unfinished rotation are dropped.
std::vector<RotationRecord> decompose_rotations(std::span<const StepRecord> trace);

struct RotationMoments {
  std::int64_t rotations = 0;
  double mean_vx = 0, mean_vy = 0, mean_t = 0;
  double stderr_vx = 0, stderr_vy = 0, stderr_t = 0;
  // mean_t / mean_vx with a delta-method standard error.
  double ratio_t_vx = 0, stderr_ratio = 0;
  // mean of vx - vy per rotation.
  double diff = 0, stderr_diff = 0;
};

/// Empirical moments over `rotations` complete rotations of the x-first
/// chain started at (0, 0).
RotationMoments rotation_moments(int q, std::int64_t rotations,
                                 std::uint64_t seed);

struct ClosedFormRotation {
  Rational vx, vy, t;
};

/// E[V_X] = q(q+3)/(2(q+1)), E[V_Y] = q(q-1)/(2(q+1)), E[T] = q(q+3)/4.
ClosedFormRotation closed_form_rotation(int q);

/// Expected remaining strand-1 advances from an x-advance state (0, b),
/// A_b = b/(q+1) + q/2, and from a y-advance state (a, 0),
/// B_a = -a/(q+1) + q/2. Index 0 holds 0; valid indices are 1..q-1.
struct VisitValues {
  std::vector<Rational> from_x_state;  // A_b
  std::vector<Rational> from_y_state;  // B_a
};
VisitValues visit_values(int q);

/// Binary one-lookahead chain state. c and d are the offsets of the symbols
/// after the next ones.
struct Lf1State {
  int a = 0, b = 0, c = 0, d = 0;

  int index() const noexcept { return 8 * a + 4 * b + 2 * c + d; }
  static Lf1State from_index(int index) noexcept {
    return {(index >> 3) & 1, (index >> 2) & 1, (index >> 1) & 1, index & 1};
  }
  /// A strand can advance from this state.
  bool productive() const noexcept { return a == 0 || b == 0; }
};

class TransitionMatrix {
 public:
  explicit TransitionMatrix(std::size_t n) : n_(n), p_(n * n, Rational(0)) {}

  static TransitionMatrix identity(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  Rational& at(std::size_t i, std::size_t j) { return p_[i * n_ + j]; }
  const Rational& at(std::size_t i, std::size_t j) const {
    return p_[i * n_ + j];
  }

  /// Throws MatrixError on a negative entry or a row not summing to 1.
  void validate_stochastic() const;

  friend bool operator==(const TransitionMatrix&,
                         const TransitionMatrix&) = default;

 private:
  std::size_t n_;
  std::vector<Rational> p_;
};

/// Built from the lf1 decision rules, with x taking double ties
/// (equal lookaheads). Rows and columns are indexed by Lf1State::index().
TransitionMatrix lf1_matrix();

struct Distribution {
  std::vector<Rational> weights;
  std::vector<double> values() const;
};

/// Exact stationary distribution: balance equations with one equation
/// replaced by normalization, solved by Gaussian elimination over the
/// rationals. Throws MatrixError for non-stochastic input or when the
/// stationary distribution is not unique.
Distribution stationary(const TransitionMatrix& p);

/// Floating-point cross-check by iterating the lazy chain (I + P)/2.
std::vector<double> stationary_power_iteration(const TransitionMatrix& p,
                                               double tol = 1e-15,
                                               int max_iter = 1'000'000);

/// Infinity norm of pi P - pi.
double balance_residual(const TransitionMatrix& p,
                        const std::vector<double>& pi);

/// Long-run symbols per slot: stationary mass on productive states.
Rational synthesis_rate(const Distribution& pi);

struct DriftCheckpoint {
  std::int64_t rotations = 0;
  double mean_abs_drift = 0;  // running mean of |d_n| over n = 1..rotations
};

/// Cumulative imbalance d_n = sum (X_i - Y_i) over rotations of the chain
/// under `rule`, reported as running means of |d_n| at n = 10, 100, ... and
/// at the final n.
std::vector<DriftCheckpoint> drift_series(int q, std::int64_t rotations,
                                          std::uint64_t seed,
                                          ChainTieRule rule =
                                              ChainTieRule::LaggardFirst);

}  // namespace rowsynth::markov

#endif  // ROWSYNTH_MARKOV_HPP_
