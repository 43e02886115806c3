#include "rowsynth/optimal.hpp"

#include <algorithm>
#include <limits>

#include "rowsynth/errors.hpp"

namespace rowsynth {

namespace {

void require_binary(const Strand& z, const char* what) {
  for (Symbol s : z) {
    if (s != 0 && s != 1) {
      throw UnsupportedAlphabetError(std::string(what) +
                                     " requires a binary strand");
    }
  }
}

}  // namespace

DpTable::DpTable(std::size_t len_x, std::size_t len_y, int q)
    : len_x_(len_x),
      len_y_(len_y),
      q_(q),
      cells_((len_x + 1) * (len_y + 1) * static_cast<std::size_t>(q), 0) {}

Symbol find_first_progress_symbol(const Strand& x, const Strand& y,
                                  std::size_t i, std::size_t j) {
  if (i < x.size()) return x[i];
  if (j < y.size()) return y[j];
  throw PreconditionError("both strands are complete; no progress symbol");
}

DpTable dp_solve(const Strand& x, const Strand& y, Alphabet alphabet) {
  validate_strand(x, alphabet);
  validate_strand(y, alphabet);
  const int q = alphabet.size();
  const std::size_t lx = x.size();
  const std::size_t ly = y.size();
  DpTable dp(lx, ly, q);

  for (std::size_t ii = lx + 1; ii-- > 0;) {
    for (std::size_t jj = ly + 1; jj-- > 0;) {
      if (ii == lx && jj == ly) continue;  // terminal, already 0
      const Symbol start = find_first_progress_symbol(x, y, ii, jj);
      for (int k = 0; k < q; ++k) {
        const Symbol r = ((start - k) % q + q) % q;
        const Symbol next = (r + 1) % q;
        const bool can_x = ii < lx && x[ii] == r;
        const bool can_y = jj < ly && y[jj] == r;
        Duration val;
        if (can_x && can_y) {
          val = 1 + std::min(dp.at(ii + 1, jj, next), dp.at(ii, jj + 1, next));
        } else if (can_x) {
          val = 1 + dp.at(ii + 1, jj, next);
        } else if (can_y) {
          val = 1 + dp.at(ii, jj + 1, next);
        } else {
          val = 1 + dp.at(ii, jj, next);
        }
        dp.at(ii, jj, r) = val;
      }
    }
  }
  return dp;
}

Duration t_star(const Strand& x, const Strand& y, Alphabet alphabet) {
  return dp_solve(x, y, alphabet).at(0, 0, 0);
}

OptimalResult reconstruct(const Strand& x, const Strand& y,
                          const DpTable& table) {
  if (table.len_x() != x.size() || table.len_y() != y.size()) {
    throw IntegrityError("table dimensions do not match strand lengths");
  }
  const Alphabet alphabet(table.q());
  try {
    validate_strand(x, alphabet);
    validate_strand(y, alphabet);
  } catch (const InputError& e) {
    throw IntegrityError(std::string("strands do not fit table: ") + e.what());
  }

  const int q = table.q();
  OptimalResult result;
  result.t_star = table.at(0, 0, 0);
  std::size_t i = 0;
  std::size_t j = 0;
  Symbol r = 0;
  while (i < x.size() || j < y.size()) {
    if (result.schedule.completion_time() >= result.t_star) {
      throw IntegrityError("walk exceeds the tabulated optimum");
    }
    const Symbol next = (r + 1) % q;
    const bool can_x = i < x.size() && x[i] == r;
    const bool can_y = j < y.size() && y[j] == r;
    Action action = kIdle;
    std::size_t ni = i;
    std::size_t nj = j;
    if (can_x && can_y) {
      if (table.at(i + 1, j, next) <= table.at(i, j + 1, next)) {
        action = kAdvanceX;
      } else {
        action = kAdvanceY;
      }
    } else if (can_x) {
      action = kAdvanceX;
    } else if (can_y) {
      action = kAdvanceY;
    }
    if (action == kAdvanceX) ++ni;
    if (action == kAdvanceY) ++nj;
    if (table.at(i, j, r) != 1 + table.at(ni, nj, next)) {
      throw IntegrityError("table entry (" + std::to_string(i) + ", " +
                           std::to_string(j) + ", " + std::to_string(r) +
                           ") violates the recurrence");
    }
    result.schedule.actions.push_back(action);
    i = ni;
    j = nj;
    r = next;
  }
  if (result.schedule.completion_time() != result.t_star) {
    throw IntegrityError("reconstructed schedule length differs from table");
  }
  return result;
}

OptimalResult solve(const Strand& x, const Strand& y, Alphabet alphabet) {
  return reconstruct(x, y, dp_solve(x, y, alphabet));
}

std::uint64_t interleaving_count(std::size_t m, std::size_t n) {
  // C(m + n, k) for k = 1..min(m, n), each intermediate exact.
  const std::size_t k_max = std::min(m, n);
  const std::size_t total = m + n;
  unsigned __int128 c = 1;
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  for (std::size_t k = 1; k <= k_max; ++k) {
    c = c * (total - k_max + k) / k;
    if (c > kMax) return kMax;
  }
  return static_cast<std::uint64_t>(c);
}

namespace {

struct MergeSearch {
  const Strand& x;
  const Strand& y;
  Alphabet alphabet;
  Strand z;
  InterleavingResult best{std::numeric_limits<Duration>::max(), 0};

  void run(std::size_t i, std::size_t j) {
    if (i == x.size() && j == y.size()) {
      best.min_time = std::min(best.min_time, solo_time(z, alphabet, 0));
      ++best.interleavings_checked;
      return;
    }
    if (i < x.size()) {
      z.push_back(x[i]);
      run(i + 1, j);
      z.pop_back();
    }
    if (j < y.size()) {
      z.push_back(y[j]);
      run(i, j + 1);
      z.pop_back();
    }
  }
};

}  // namespace

InterleavingResult enumerate_interleavings_min(const Strand& x,
                                               const Strand& y,
                                               Alphabet alphabet,
                                               std::uint64_t budget) {
  validate_strand(x, alphabet);
  validate_strand(y, alphabet);
  const std::uint64_t needed = interleaving_count(x.size(), y.size());
  if (needed > budget) throw BudgetExceededError(needed, budget);

  MergeSearch search{x, y, alphabet, {}, {std::numeric_limits<Duration>::max(), 0}};
  search.z.reserve(x.size() + y.size());
  search.run(0, 0);
  return search.best;
}

std::size_t runs_count(const Strand& z) {
  std::size_t runs = 0;
  for (std::size_t k = 1; k < z.size(); ++k) {
    if (z[k] != z[k - 1]) ++runs;
  }
  return runs;
}

Duration binary_runs_time(const Strand& z) {
  require_binary(z, "binary_runs_time");
  if (z.empty()) throw PreconditionError("binary_runs_time needs |z| >= 1");
  const auto len = static_cast<Duration>(z.size());
  const auto runs = static_cast<Duration>(runs_count(z));
  return 2 * len - 1 - runs + (z.front() == 1 ? 1 : 0);
}

std::size_t lcs_length(const Strand& u, const Strand& v) {
  std::vector<std::size_t> prev(v.size() + 1, 0);
  std::vector<std::size_t> cur(v.size() + 1, 0);
  for (std::size_t a = 1; a <= u.size(); ++a) {
    for (std::size_t b = 1; b <= v.size(); ++b) {
      cur[b] = u[a - 1] == v[b - 1] ? prev[b - 1] + 1
                                    : std::max(prev[b], cur[b - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[v.size()];
}

Strand complement(const Strand& z) {
  require_binary(z, "complement");
  Strand out(z.size());
  std::transform(z.begin(), z.end(), out.begin(),
                 [](Symbol s) { return 1 - s; });
  return out;
}

Duration lcs_upper_bound(const Strand& x, const Strand& y) {
  require_binary(x, "lcs_upper_bound");
  require_binary(y, "lcs_upper_bound");
  if (x.size() != y.size() || x.empty()) {
    throw PreconditionError("lcs_upper_bound needs equal lengths L >= 1");
  }
  const auto len = static_cast<Duration>(x.size());
  return 4 * len - 2 * static_cast<Duration>(lcs_length(x, complement(y)));
}

}  // namespace rowsynth
