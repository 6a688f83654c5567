// SPDX-License-Identifier: Apache-2.0
//
// Accelerated exact-agreement search for single-hidden-layer integer
// networks. The enumeration order fixes (A_1, b_1) before the output row
// A_2, so for one prefix the hidden activations h_u(x_p) are known and
// exact agreement is the integer linear system
//     sum_u c_u * h_u(x_p) = y_p       for every data point p.
// Scanning prefixes lexicographically and taking the lexicographically
// least admissible solution row therefore visits solutions in exactly the
// enumeration order, while skipping the (2s+1)^m suffix factor per prefix.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "exactnn/errors.hpp"
#include "exactnn/learners.hpp"

namespace exactnn::detail {

namespace {

using i64 = long long;
using i128 = __int128;

i128 iabs(i128 v) { return v < 0 ? -v : v; }

int bit_length(i128 v) {
  v = iabs(v);
  int bits = 0;
  while (v > 0) {
    ++bits;
    v >>= 1;
  }
  return bits;
}

struct Instance {
  int d = 0;
  int m = 0;
  int points = 0;
  std::vector<i64> xs;  // points x d
  std::vector<i64> ys;
  std::vector<int> check_order;  // points sorted by |y| descending
};

// solve_exact outcomes for one prefix.
enum class Solve { Inconsistent, Unique, RankDeficient };

// Fraction-free Gaussian elimination over the alive columns; on Unique the
// integer solution is written into `solution` (already box-checked).
Solve solve_exact(std::vector<i128>& mat, int rows, int cols, long box,
                  std::vector<i64>& solution) {
  const int width = cols + 1;
  std::vector<int> pivot_row(static_cast<size_t>(cols), -1);
  int next_row = 0;
  for (int col = 0; col < cols; ++col) {
    int pivot = -1;
    for (int r = next_row; r < rows; ++r)
      if (mat[static_cast<size_t>(r) * width + col] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) return Solve::RankDeficient;
    for (int j = 0; j < width; ++j)
      std::swap(mat[static_cast<size_t>(next_row) * width + j],
                mat[static_cast<size_t>(pivot) * width + j]);
    const i128 pv = mat[static_cast<size_t>(next_row) * width + col];
    for (int r = next_row + 1; r < rows; ++r) {
      const i128 f = mat[static_cast<size_t>(r) * width + col];
      if (f == 0) continue;
      for (int j = col; j < width; ++j)
        mat[static_cast<size_t>(r) * width + j] =
            mat[static_cast<size_t>(r) * width + j] * pv -
            mat[static_cast<size_t>(next_row) * width + j] * f;
    }
    pivot_row[static_cast<size_t>(col)] = next_row;
    ++next_row;
  }
  for (int r = next_row; r < rows; ++r)
    if (mat[static_cast<size_t>(r) * width + cols] != 0) return Solve::Inconsistent;
  solution.assign(static_cast<size_t>(cols), 0);
  for (int col = cols - 1; col >= 0; --col) {
    const int r = pivot_row[static_cast<size_t>(col)];
    i128 acc = mat[static_cast<size_t>(r) * width + cols];
    for (int j = col + 1; j < cols; ++j)
      acc -= mat[static_cast<size_t>(r) * width + j] * solution[static_cast<size_t>(j)];
    const i128 pv = mat[static_cast<size_t>(r) * width + col];
    if (acc % pv != 0) return Solve::Inconsistent;
    const i128 value = acc / pv;
    if (iabs(value) > box) return Solve::Inconsistent;
    solution[static_cast<size_t>(col)] = static_cast<i64>(value);
  }
  return Solve::Unique;
}

struct ShellScan {
  const Instance& inst;
  long shell;
  std::vector<i64> prefix;   // A_1 row-major then b_1, each in [-shell, shell]
  std::vector<i64> hidden;   // m x points relu activations
  std::vector<i64> sum_h;    // per point, sum over units
  std::vector<i64> output;   // candidate output row when found

  ShellScan(const Instance& in, long s)
      : inst(in),
        shell(s),
        prefix(static_cast<size_t>(in.m * in.d + in.m), -s),
        hidden(static_cast<size_t>(in.m) * static_cast<size_t>(in.points), 0),
        sum_h(static_cast<size_t>(in.points), 0) {}

  void recompute_unit(int u) {
    for (int p = 0; p < inst.points; ++p) {
      i64 z = prefix[static_cast<size_t>(inst.m * inst.d + u)];
      for (int j = 0; j < inst.d; ++j)
        z += prefix[static_cast<size_t>(u * inst.d + j)] *
             inst.xs[static_cast<size_t>(p) * inst.d + j];
      hidden[static_cast<size_t>(u) * inst.points + p] = z > 0 ? z : 0;
    }
  }

  void recompute_from(int lowest_changed) {
    const int first_unit =
        lowest_changed >= inst.m * inst.d ? lowest_changed - inst.m * inst.d : 0;
    for (int u = first_unit; u < inst.m; ++u) recompute_unit(u);
    for (int p = 0; p < inst.points; ++p) {
      i64 s = 0;
      for (int u = 0; u < inst.m; ++u)
        s += hidden[static_cast<size_t>(u) * inst.points + p];
      sum_h[static_cast<size_t>(p)] = s;
    }
  }

  // Lowest position that changed, or -1 when the shell box is exhausted.
  int advance() {
    for (int j = static_cast<int>(prefix.size()) - 1; j >= 0; --j) {
      if (++prefix[static_cast<size_t>(j)] <= shell) return j;
      prefix[static_cast<size_t>(j)] = -shell;
    }
    return -1;
  }

  bool prefix_hits_shell() const {
    for (i64 v : prefix)
      if (v == shell || v == -shell) return true;
    return false;
  }

  // Lexicographically least admissible output row for the current prefix,
  // if any. `need_new` forces max|c| = shell (prefix strictly inside).
  bool solve_suffix(bool need_new) {
    for (int p : inst.check_order) {
      const i128 cap = static_cast<i128>(shell) * sum_h[static_cast<size_t>(p)];
      const i128 y = inst.ys[static_cast<size_t>(p)];
      if (y > cap || -y > cap) return false;
    }
    std::vector<int> alive;
    for (int u = 0; u < inst.m; ++u)
      for (int p = 0; p < inst.points; ++p)
        if (hidden[static_cast<size_t>(u) * inst.points + p] > 0) {
          alive.push_back(u);
          break;
        }
    if (alive.empty()) {
      // All labels are zero here (the cap filter passed), any row fits.
      output.assign(static_cast<size_t>(inst.m), -shell);
      return true;
    }
    std::vector<i128> mat(static_cast<size_t>(inst.points) * (alive.size() + 1));
    for (int p = 0; p < inst.points; ++p) {
      for (size_t a = 0; a < alive.size(); ++a)
        mat[static_cast<size_t>(p) * (alive.size() + 1) + a] =
            hidden[static_cast<size_t>(alive[a]) * inst.points + p];
      mat[static_cast<size_t>(p) * (alive.size() + 1) + alive.size()] =
          inst.ys[static_cast<size_t>(p)];
    }
    std::vector<i64> alive_solution;
    const Solve res = solve_exact(mat, inst.points, static_cast<int>(alive.size()),
                                  shell, alive_solution);
    if (res == Solve::Inconsistent) return false;
    if (res == Solve::Unique) {
      output.assign(static_cast<size_t>(inst.m), -shell);
      for (size_t a = 0; a < alive.size(); ++a)
        output[static_cast<size_t>(alive[a])] = alive_solution[a];
      if (need_new && alive.size() == static_cast<size_t>(inst.m)) {
        bool hits = false;
        for (i64 v : output)
          if (v == shell || v == -shell) hits = true;
        if (!hits) return false;  // member of an earlier shell
      }
      return true;
    }
    // Rank-deficient prefixes are rare; brute-force the output row.
    std::vector<i64> c(static_cast<size_t>(inst.m), -shell);
    while (true) {
      bool hits_shell = !need_new;
      for (i64 v : c)
        if (v == shell || v == -shell) hits_shell = true;
      if (hits_shell) {
        bool ok = true;
        for (int p = 0; p < inst.points && ok; ++p) {
          i128 acc = 0;
          for (int u = 0; u < inst.m; ++u)
            acc += static_cast<i128>(c[static_cast<size_t>(u)]) *
                   hidden[static_cast<size_t>(u) * inst.points + p];
          ok = (acc == inst.ys[static_cast<size_t>(p)]);
        }
        if (ok) {
          output = c;
          return true;
        }
      }
      int j = inst.m - 1;
      while (j >= 0 && c[static_cast<size_t>(j)] == shell) c[static_cast<size_t>(j--)] = -shell;
      if (j < 0) return false;
      ++c[static_cast<size_t>(j)];
    }
  }
};

}  // namespace

std::optional<LearnReport> quantized_fast_search(
    const Dataset& dataset, const Architecture& arch,
    const std::optional<std::uint64_t>& max_steps) {
  if (arch.depth() != 2) return std::nullopt;
  Instance inst;
  inst.d = arch.input_dim();
  inst.m = arch.dims[1];
  inst.points = static_cast<int>(dataset.pairs.size());
  if (inst.m * inst.d + 2 * inst.m > 24 || inst.points > 64) return std::nullopt;

  i64 x_max = 1, y_max = 1;
  for (const auto& [x, y] : dataset.pairs) {
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      if (!x[i].num().fits_slong_p()) return std::nullopt;
      x_max = std::max<i64>(x_max, std::abs(x[i].num().get_si()));
    }
    if (!y.num().fits_slong_p()) return std::nullopt;
    y_max = std::max<i64>(y_max, std::abs(y.num().get_si()));
  }
  if (x_max > (1LL << 18) || y_max > (1LL << 40)) return std::nullopt;
  for (const auto& [x, y] : dataset.pairs) {
    for (Eigen::Index i = 0; i < x.size(); ++i)
      inst.xs.push_back(x[i].num().get_si());
    inst.ys.push_back(y.num().get_si());
  }
  for (int p = 0; p < inst.points; ++p) inst.check_order.push_back(p);
  std::sort(inst.check_order.begin(), inst.check_order.end(), [&](int a, int b) {
    return std::abs(inst.ys[static_cast<size_t>(a)]) >
           std::abs(inst.ys[static_cast<size_t>(b)]);
  });

  const size_t n_free = static_cast<size_t>(arch.free_param_count());
  const auto exhausted_report = [&] {
    LearnReport report;
    report.learned = Network::zero(arch);
    report.steps = *max_steps;
    report.budget_exhausted = true;
    return report;
  };

  for (long shell = 0;; ++shell) {
    if (max_steps && shell > 0) {
      const mpz_class done =
          cumulative_count_through_shell(n_free, EnumMode::Integer, shell - 1);
      if (done >= mpz_class(static_cast<unsigned long>(*max_steps)))
        return exhausted_report();
    }
    // Cross-multiplying elimination grows entries by squaring per pivot;
    // bail to the generic scan when the worst case nears 128 bits.
    const i64 h_bound = shell * (inst.d * x_max + 1);
    const int base_bits = bit_length(std::max<i128>(h_bound, y_max)) + 1;
    if (base_bits * (1 << std::min(inst.m, 6)) >= 120) return std::nullopt;

    ShellScan scan(inst, shell);
    scan.recompute_from(0);
    while (true) {
      if (inst.points == 0 || scan.solve_suffix(!scan.prefix_hits_shell())) {
        std::vector<Rational> params;
        params.reserve(n_free);
        for (i64 v : scan.prefix) params.emplace_back(v);
        if (inst.points == 0) scan.output.assign(static_cast<size_t>(inst.m), -shell);
        for (i64 v : scan.output) params.emplace_back(v);
        Network learned = Network::from_params(arch, params, false);
        const mpz_class rank = enumeration_rank(learned, EnumMode::Integer);
        if (max_steps && rank > mpz_class(static_cast<unsigned long>(*max_steps)))
          return exhausted_report();
        if (!rank.fits_ulong_p())
          throw DomainError("enumeration rank exceeds the step counter");
        LearnReport report;
        report.learned = std::move(learned);
        report.steps = rank.get_ui();
        return report;
      }
      const int changed = scan.advance();
      if (changed < 0) break;
      scan.recompute_from(changed);
    }
  }
}

}  // namespace exactnn::detail
