#include "rowsynth/markov.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "rowsynth/errors.hpp"

namespace rowsynth::markov {

namespace {

// Boost 1.74 recurses forever on C++20 rewritten comparisons between a
// rational and a plain integer, so compare against rationals only.
const Rational kZero(0);
const Rational kOne(1);

void require_alphabet(int q) {
  if (q < 2) throw PreconditionError("alphabet size must be at least 2");
}

struct Moments {
  double n = 0, sum = 0, sum_sq = 0;

  void add(double v) {
    n += 1;
    sum += v;
    sum_sq += v * v;
  }
  double mean() const { return sum / n; }
  double variance() const {
    if (n < 2) return 0;
    return std::max(0.0, (sum_sq - sum * sum / n) / (n - 1));
  }
  double stderr_of_mean() const { return std::sqrt(variance() / n); }
};

}  // namespace

SimTrace run_chain(int q, OffsetState start, std::int64_t slots,
                   ChainTieRule rule, Rng& rng) {
  require_alphabet(q);
  std::uniform_int_distribution<int> uniform(0, q - 1);
  auto draw = [&](int) { return uniform(rng); };
  OffsetChain chain(q, start);
  SimTrace trace;
  trace.reserve(static_cast<std::size_t>(slots));
  for (std::int64_t k = 0; k < slots; ++k) {
    trace.push_back(chain.step(chain.decide(rule), draw));
  }
  return trace;
}

std::optional<RotationRecord> RotationSplitter::feed(const StepRecord& rec) {
  std::optional<RotationRecord> closed;
  if (rec.is_tie()) {
    closed = open_;
    open_ = RotationRecord{};
  }
  if (open_) {
    ++open_->t_len;
    if (rec.action == kAdvanceX) ++open_->vx;
    if (rec.action == kAdvanceY) ++open_->vy;
  }
  return closed;
}

std::vector<RotationRecord> decompose_rotations(
    std::span<const StepRecord> trace) {
  RotationSplitter splitter;
  std::vector<RotationRecord> out;
  for (const auto& rec : trace) {
    if (auto r = splitter.feed(rec)) out.push_back(*r);
  }
  return out;
}

RotationMoments rotation_moments(int q, std::int64_t rotations,
                                 std::uint64_t seed) {
  require_alphabet(q);
  if (rotations < 1) throw PreconditionError("need at least one rotation");

  Rng rng = substream(seed, static_cast<std::uint64_t>(q));
  std::uniform_int_distribution<int> uniform(0, q - 1);
  auto draw = [&](int) { return uniform(rng); };
  OffsetChain chain(q, OffsetState{0, 0});
  RotationSplitter splitter;

  Moments vx, vy, t, diff;
  double sum_tx = 0;  // for the covariance in the ratio's standard error
  std::int64_t done = 0;
  while (done < rotations) {
    const auto rec = chain.step(TieDecision::AdvanceX, draw);
    if (auto rot = splitter.feed(rec)) {
      vx.add(static_cast<double>(rot->vx));
      vy.add(static_cast<double>(rot->vy));
      t.add(static_cast<double>(rot->t_len));
      diff.add(static_cast<double>(rot->vx - rot->vy));
      sum_tx += static_cast<double>(rot->t_len) * static_cast<double>(rot->vx);
      ++done;
    }
  }

  RotationMoments m;
  m.rotations = rotations;
  m.mean_vx = vx.mean();
  m.mean_vy = vy.mean();
  m.mean_t = t.mean();
  m.stderr_vx = vx.stderr_of_mean();
  m.stderr_vy = vy.stderr_of_mean();
  m.stderr_t = t.stderr_of_mean();
  m.diff = diff.mean();
  m.stderr_diff = diff.stderr_of_mean();

  const double n = vx.n;
  m.ratio_t_vx = m.mean_t / m.mean_vx;
  if (n > 1) {
    const double cov = (sum_tx - t.sum * vx.sum / n) / (n - 1);
    const double r = m.ratio_t_vx;
    const double var_resid =
        std::max(0.0, t.variance() - 2 * r * cov + r * r * vx.variance());
    m.stderr_ratio = std::sqrt(var_resid / n) / m.mean_vx;
  }
  return m;
}

ClosedFormRotation closed_form_rotation(int q) {
  require_alphabet(q);
  const std::int64_t qq = q;
  return {Rational(qq * (qq + 3), 2 * (qq + 1)),
          Rational(qq * (qq - 1), 2 * (qq + 1)), Rational(qq * (qq + 3), 4)};
}

VisitValues visit_values(int q) {
  require_alphabet(q);
  VisitValues v;
  v.from_x_state.assign(static_cast<std::size_t>(q), Rational(0));
  v.from_y_state.assign(static_cast<std::size_t>(q), Rational(0));
  const Rational half_q(q, 2);
  for (int k = 1; k < q; ++k) {
    v.from_x_state[static_cast<std::size_t>(k)] = Rational(k, q + 1) + half_q;
    v.from_y_state[static_cast<std::size_t>(k)] = Rational(-k, q + 1) + half_q;
  }
  return v;
}

TransitionMatrix TransitionMatrix::identity(std::size_t n) {
  TransitionMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

void TransitionMatrix::validate_stochastic() const {
  for (std::size_t i = 0; i < n_; ++i) {
    Rational sum = 0;
    for (std::size_t j = 0; j < n_; ++j) {
      if (at(i, j) < kZero) {
        throw MatrixError("negative entry in row " + std::to_string(i));
      }
      sum += at(i, j);
    }
    if (sum != kOne) {
      throw MatrixError("row " + std::to_string(i) + " sums to " +
                        std::to_string(boost::rational_cast<double>(sum)));
    }
  }
}

TransitionMatrix lf1_matrix() {
  TransitionMatrix p(16);
  const Rational half(1, 2);
  for (int idx = 0; idx < 16; ++idx) {
    const Lf1State s = Lf1State::from_index(idx);
    // Moving to the next slot flips every binary offset; the strand that
    // advances shifts its lookahead into place and draws a fresh one.
    if (!s.productive()) {
      p.at(idx, Lf1State{1 - s.a, 1 - s.b, 1 - s.c, 1 - s.d}.index()) = 1;
      continue;
    }
    bool advance_x = s.a == 0;
    if (s.a == 0 && s.b == 0) {
      // Lookahead decides when it discriminates, else x.
      advance_x = s.c == s.d || s.c == 1;
    }
    for (int fresh = 0; fresh < 2; ++fresh) {
      const Lf1State next = advance_x
          ? Lf1State{1 - s.c, 1 - s.b, fresh, 1 - s.d}
          : Lf1State{1 - s.a, 1 - s.d, 1 - s.c, fresh};
      p.at(idx, next.index()) += half;
    }
  }
  return p;
}

std::vector<double> Distribution::values() const {
  std::vector<double> out;
  out.reserve(weights.size());
  for (const auto& w : weights) out.push_back(boost::rational_cast<double>(w));
  return out;
}

Distribution stationary(const TransitionMatrix& p) {
  p.validate_stochastic();
  const std::size_t n = p.size();
  if (n == 0) throw MatrixError("empty matrix");

  // Rows of (P^T - I), last one replaced by sum(pi) = 1.
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n + 1, 0));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      a[i][j] = p.at(j, i) - (i == j ? 1 : 0);
    }
  }
  for (std::size_t j = 0; j < n; ++j) a[n - 1][j] = 1;
  a[n - 1][n] = 1;

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == kZero) ++pivot;
    if (pivot == n) {
      throw MatrixError("stationary distribution is not unique");
    }
    std::swap(a[col], a[pivot]);
    const Rational inv = 1 / a[col][col];
    for (std::size_t k = col; k <= n; ++k) a[col][k] *= inv;
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || a[row][col] == kZero) continue;
      const Rational f = a[row][col];
      for (std::size_t k = col; k <= n; ++k) a[row][k] -= f * a[col][k];
    }
  }

  Distribution pi;
  pi.weights.reserve(n);
  for (std::size_t i = 0; i < n; ++i) pi.weights.push_back(a[i][n]);
  return pi;
}

std::vector<double> stationary_power_iteration(const TransitionMatrix& p,
                                               double tol, int max_iter) {
  p.validate_stochastic();
  const std::size_t n = p.size();
  std::vector<double> dense(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      dense[i * n + j] = boost::rational_cast<double>(p.at(i, j));
    }
  }
  std::vector<double> pi(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n);
  for (int it = 0; it < max_iter; ++it) {
    for (std::size_t j = 0; j < n; ++j) next[j] = 0.5 * pi[j];
    for (std::size_t i = 0; i < n; ++i) {
      const double w = 0.5 * pi[i];
      if (w == 0) continue;
      for (std::size_t j = 0; j < n; ++j) next[j] += w * dense[i * n + j];
    }
    double delta = 0;
    for (std::size_t j = 0; j < n; ++j) {
      delta = std::max(delta, std::abs(next[j] - pi[j]));
    }
    pi.swap(next);
    if (delta < tol) break;
  }
  return pi;
}

double balance_residual(const TransitionMatrix& p,
                        const std::vector<double>& pi) {
  const std::size_t n = p.size();
  double worst = 0;
  for (std::size_t j = 0; j < n; ++j) {
    double flow = 0;
    for (std::size_t i = 0; i < n; ++i) {
      flow += pi[i] * boost::rational_cast<double>(p.at(i, j));
    }
    worst = std::max(worst, std::abs(flow - pi[j]));
  }
  return worst;
}

Rational synthesis_rate(const Distribution& pi) {
  if (pi.weights.size() != 16) {
    throw PreconditionError("synthesis_rate expects the 16 lf1 states");
  }
  Rational rate = 0;
  for (int idx = 0; idx < 16; ++idx) {
    if (Lf1State::from_index(idx).productive()) rate += pi.weights[idx];
  }
  return rate;
}

std::vector<DriftCheckpoint> drift_series(int q, std::int64_t rotations,
                                          std::uint64_t seed,
                                          ChainTieRule rule) {
  require_alphabet(q);
  if (rotations < 10) throw PreconditionError("need at least 10 rotations");

  Rng rng = substream(seed, static_cast<std::uint64_t>(q));
  std::uniform_int_distribution<int> uniform(0, q - 1);
  auto draw = [&](int) { return uniform(rng); };
  OffsetChain chain(q, OffsetState{0, 0});
  RotationSplitter splitter;

  std::vector<DriftCheckpoint> out;
  std::int64_t n = 0;
  std::int64_t drift = 0;
  double sum_abs = 0;
  std::int64_t next_checkpoint = 10;
  while (n < rotations) {
    const auto rec = chain.step(chain.decide(rule), draw);
    if (auto rot = splitter.feed(rec)) {
      ++n;
      drift += rot->vx - rot->vy;
      sum_abs += static_cast<double>(std::llabs(drift));
      if (n == next_checkpoint || n == rotations) {
        out.push_back({n, sum_abs / static_cast<double>(n)});
        if (n == next_checkpoint) next_checkpoint *= 10;
      }
    }
  }
  return out;
}

}  // namespace rowsynth::markov
