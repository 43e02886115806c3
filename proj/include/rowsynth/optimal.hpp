#ifndef ROWSYNTH_OPTIMAL_HPP_
#define ROWSYNTH_OPTIMAL_HPP_

// Exact offline solver for two strands, the interleaving oracle it is checked
// against, and the binary runs / LCS bound machinery.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rowsynth/model.hpp"

namespace rowsynth {

/// Optimal remaining completion time for every state (i, j, r):
/// i symbols of x done, j of y done, r the symbol emitted at the current slot.
class DpTable {
 public:
  DpTable(std::size_t len_x, std::size_t len_y, int q);

  std::size_t len_x() const noexcept { return len_x_; }
  std::size_t len_y() const noexcept { return len_y_; }
  int q() const noexcept { return q_; }

  Duration& at(std::size_t i, std::size_t j, Symbol r) {
    return cells_[index(i, j, r)];
  }
  Duration at(std::size_t i, std::size_t j, Symbol r) const {
    return cells_[index(i, j, r)];
  }

 private:
  std::size_t index(std::size_t i, std::size_t j, Symbol r) const {
    return (i * (len_y_ + 1) + j) * static_cast<std::size_t>(q_) +
           static_cast<std::size_t>(r);
  }

  std::size_t len_x_;
  std::size_t len_y_;
  int q_;
  std::vector<Duration> cells_;
};

struct OptimalResult {
  Duration t_star = 0;
  Schedule schedule;
};

/// x's next symbol when x is unfinished, otherwise y's. Throws
/// PreconditionError if both strands are complete.
Symbol find_first_progress_symbol(const Strand& x, const Strand& y,
                                  std::size_t i, std::size_t j);

/// Fills the table backwards in i and j. For each (i, j) the symbols are
/// visited backwards cyclically from a progress symbol, so an idle step
/// always reads an entry that is already final.
DpTable dp_solve(const Strand& x, const Strand& y, Alphabet alphabet);

/// Minimum completion time over all schedules: DP(0, 0, 0).
Duration t_star(const Strand& x, const Strand& y, Alphabet alphabet);

/// Walks the table forward from (0, 0, 0) and emits an optimal schedule.
/// Equal branches resolve toward x. Throws IntegrityError if the table does
/// not match the strands.
OptimalResult reconstruct(const Strand& x, const Strand& y,
                          const DpTable& table);

/// dp_solve + reconstruct.
OptimalResult solve(const Strand& x, const Strand& y, Alphabet alphabet);

struct InterleavingResult {
  Duration min_time = 0;
  std::uint64_t interleavings_checked = 0;
};

inline constexpr std::uint64_t kDefaultInterleavingBudget = 1'000'000;

/// Number of order-preserving merges, C(m + n, m), saturating at UINT64_MAX.
std::uint64_t interleaving_count(std::size_t m, std::size_t n);

/// Brute force: the minimum solo time over every merge of x and y.
/// Throws BudgetExceededError when there are more than `budget` merges.
InterleavingResult enumerate_interleavings_min(
    const Strand& x, const Strand& y, Alphabet alphabet,
    std::uint64_t budget = kDefaultInterleavingBudget);

/// Number of adjacent unequal pairs.
std::size_t runs_count(const Strand& z);

/// Binary solo time from run structure: 2|z| - 1 - runs, plus one slot when
/// the strand starts with 1. Throws UnsupportedAlphabetError for symbols
/// outside {0, 1}, PreconditionError for an empty strand.
Duration binary_runs_time(const Strand& z);

std::size_t lcs_length(const Strand& u, const Strand& v);

/// Bitwise complement of a binary strand.
Strand complement(const Strand& z);

/// 4L - 2 LCS(x, complement(y)) for equal-length binary strands.
Duration lcs_upper_bound(const Strand& x, const Strand& y);

}  // namespace rowsynth

#endif  // ROWSYNTH_OPTIMAL_HPP_
