// SPDX-License-Identifier: Apache-2.0

#include "exactnn/enumeration.hpp"

#include <algorithm>

#include "exactnn/errors.hpp"

namespace exactnn {

std::string enum_mode_name(EnumMode mode) {
  return mode == EnumMode::Integer ? "integer" : "rational";
}

EnumMode enum_mode_by_name(const std::string& name) {
  if (name == "integer") return EnumMode::Integer;
  if (name == "rational") return EnumMode::Rational;
  throw ParseError("unknown enumeration mode '" + name + "'");
}

namespace {

long rational_measure(const Rational& q) {
  if (q.is_zero()) return 0;
  const mpz_class n = ::abs(q.num());
  const mpz_class d = q.den();
  const mpz_class m = std::max(n, d);
  if (!m.fits_slong_p()) throw DomainError("parameter measure exceeds long range");
  return m.get_si();
}

}  // namespace

ShellTable make_shell_table(EnumMode mode, long shell) {
  if (shell < 0) throw DomainError("negative shell index");
  ShellTable table;
  table.shell = shell;
  if (mode == EnumMode::Integer) {
    for (long v = -shell; v <= shell; ++v) table.values.emplace_back(v);
  } else {
    table.values.emplace_back(0);
    for (long den = 1; den <= shell; ++den)
      for (long num = 1; num <= shell; ++num) {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), mpz_class(num).get_mpz_t(), mpz_class(den).get_mpz_t());
        if (g != 1) continue;
        table.values.emplace_back(num, den);
        table.values.emplace_back(-num, den);
      }
    std::sort(table.values.begin(), table.values.end());
  }
  table.is_new.resize(table.values.size());
  for (size_t i = 0; i < table.values.size(); ++i) {
    const long measure = mode == EnumMode::Integer
                             ? std::abs(table.values[i].num().get_si())
                             : rational_measure(table.values[i]);
    table.is_new[i] = (measure == shell);
    if (measure < shell) ++table.old_count;
  }
  return table;
}

namespace {

mpz_class mpz_pow(size_t base, size_t exp) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
  return r;
}

// Completions of a prefix to a valid shell member: free when the prefix
// already holds a measure-s value, otherwise the suffix must supply one.
struct SuffixCounts {
  std::vector<mpz_class> free_count;  // |T|^m
  std::vector<mpz_class> need_count;  // |T|^m - |old|^m

  SuffixCounts(size_t n, const ShellTable& t) {
    free_count.resize(n + 1);
    need_count.resize(n + 1);
    for (size_t m = 0; m <= n; ++m) {
      free_count[m] = mpz_pow(t.values.size(), m);
      need_count[m] = free_count[m] - mpz_pow(t.old_count, m);
    }
  }
};

}  // namespace

mpz_class shell_vector_count(size_t n, const ShellTable& table) {
  return mpz_pow(table.values.size(), n) - mpz_pow(table.old_count, n);
}

mpz_class cumulative_count_through_shell(size_t n, EnumMode mode, long shell) {
  const ShellTable next = make_shell_table(mode, shell + 1);
  return mpz_pow(next.old_count, n);
}

mpz_class rank_in_shell(const std::vector<int>& idx, const ShellTable& table) {
  const size_t n = idx.size();
  const SuffixCounts counts(n, table);
  mpz_class rank = 0;
  bool prefix_has_new = false;
  for (size_t i = 0; i < n; ++i) {
    for (int t = 0; t < idx[i]; ++t)
      rank += (prefix_has_new || table.is_new[static_cast<size_t>(t)])
                  ? counts.free_count[n - 1 - i]
                  : counts.need_count[n - 1 - i];
    prefix_has_new = prefix_has_new || table.is_new[static_cast<size_t>(idx[i])];
  }
  if (!prefix_has_new) throw DomainError("vector is not a member of this shell");
  return rank;
}

std::vector<int> unrank_in_shell(size_t n, const mpz_class& position,
                                 const ShellTable& table) {
  if (position < 0 || position >= shell_vector_count(n, table))
    throw DomainError("shell position out of range");
  const SuffixCounts counts(n, table);
  std::vector<int> idx(n, 0);
  mpz_class remaining = position;
  bool prefix_has_new = false;
  for (size_t i = 0; i < n; ++i) {
    for (size_t t = 0;; ++t) {
      const mpz_class& c = (prefix_has_new || table.is_new[t])
                               ? counts.free_count[n - 1 - i]
                               : counts.need_count[n - 1 - i];
      if (remaining < c) {
        idx[i] = static_cast<int>(t);
        prefix_has_new = prefix_has_new || table.is_new[t];
        break;
      }
      remaining -= c;
    }
  }
  return idx;
}

mpz_class enumeration_rank(const Network& net, EnumMode mode) {
  const std::vector<Rational> params = net.to_params(false);
  long shell = 0;
  for (const Rational& p : params) {
    if (mode == EnumMode::Integer && !p.is_integer())
      throw DomainError("integer enumeration rank of a non-integer network");
    const long m = mode == EnumMode::Integer ? std::abs(p.num().get_si())
                                             : rational_measure(p);
    shell = std::max(shell, m);
  }
  const ShellTable table = make_shell_table(mode, shell);
  std::vector<int> idx(params.size());
  for (size_t i = 0; i < params.size(); ++i) {
    const auto it =
        std::lower_bound(table.values.begin(), table.values.end(), params[i]);
    if (it == table.values.end() || !(*it == params[i]))
      throw DomainError("parameter value is not enumerable in this mode");
    idx[i] = static_cast<int>(it - table.values.begin());
  }
  return mpz_pow(table.old_count, params.size()) + rank_in_shell(idx, table) + 1;
}

EnumerationCursor::EnumerationCursor(Architecture arch, EnumMode mode)
    : arch_(std::move(arch)), mode_(mode) {
  enter_shell(0);
}

EnumerationCursor EnumerationCursor::from_checkpoint(Architecture arch, EnumMode mode,
                                                     long shell, std::uint64_t position) {
  EnumerationCursor cursor(std::move(arch), mode);
  cursor.table_ = std::make_shared<const ShellTable>(make_shell_table(mode, shell));
  cursor.idx_ = unrank_in_shell(static_cast<size_t>(cursor.arch_.free_param_count()),
                                mpz_class(static_cast<unsigned long>(position)),
                                *cursor.table_);
  cursor.position_ = position;
  return cursor;
}

void EnumerationCursor::enter_shell(long shell) {
  table_ = std::make_shared<const ShellTable>(make_shell_table(mode_, shell));
  idx_.assign(static_cast<size_t>(arch_.free_param_count()), 0);
  position_ = 0;
  skip_to_valid();
}

bool EnumerationCursor::increment() {
  for (size_t i = idx_.size(); i-- > 0;) {
    if (++idx_[i] < static_cast<int>(table_->values.size())) return true;
    idx_[i] = 0;
  }
  return false;
}

void EnumerationCursor::skip_to_valid() {
  const auto has_new = [&] {
    for (int i : idx_)
      if (table_->is_new[static_cast<size_t>(i)]) return true;
    return false;
  };
  while (!has_new()) {
    // The whole vector has measure < shell. The minimal lexicographic
    // repair raises the last coordinate to the next measure-s value,
    // which always exists because the value s itself tops the table.
    int& last = idx_.back();
    int next_new = -1;
    for (size_t t = static_cast<size_t>(last) + 1; t < table_->values.size(); ++t)
      if (table_->is_new[t]) {
        next_new = static_cast<int>(t);
        break;
      }
    if (next_new >= 0) {
      last = next_new;
    } else {
      last = static_cast<int>(table_->values.size()) - 1;
      if (!increment()) {
        enter_shell(table_->shell + 1);
        return;
      }
    }
  }
}

std::vector<Rational> EnumerationCursor::current_params() const {
  std::vector<Rational> params;
  params.reserve(idx_.size());
  for (int i : idx_) params.push_back(table_->values[static_cast<size_t>(i)]);
  return params;
}

EnumerationCursor EnumerationCursor::advanced() const {
  EnumerationCursor next = *this;
  ++next.position_;
  if (!next.increment()) {
    next.enter_shell(table_->shell + 1);
    return next;
  }
  const std::uint64_t position = next.position_;
  next.skip_to_valid();
  // skip_to_valid only rolls the position back when it crossed into the
  // next shell; keep it otherwise.
  if (next.table_->shell == table_->shell) next.position_ = position;
  return next;
}

std::pair<Network, EnumerationCursor> next_network(const EnumerationCursor& cursor) {
  return {Network::from_params(cursor.architecture(), cursor.current_params(), false),
          cursor.advanced()};
}

mpz_class zigzag_encode(const mpz_class& z) {
  return z >= 0 ? mpz_class(2 * z) : mpz_class(-2 * z - 1);
}

mpz_class zigzag_decode(const mpz_class& n) {
  if (n < 0) throw DecodeError("zigzag code must be nonnegative");
  return n % 2 == 0 ? mpz_class(n / 2) : mpz_class(-((n + 1) / 2));
}

mpz_class cantor_pair(const mpz_class& a, const mpz_class& b) {
  const mpz_class s = a + b;
  return s * (s + 1) / 2 + b;
}

std::pair<mpz_class, mpz_class> cantor_unpair(const mpz_class& m) {
  if (m < 0) throw DecodeError("pair code must be nonnegative");
  mpz_class w;
  const mpz_class disc = 8 * m + 1;
  mpz_sqrt(w.get_mpz_t(), disc.get_mpz_t());
  w = (w - 1) / 2;
  // Guard against isqrt boundary effects.
  while (w * (w + 1) / 2 > m) --w;
  while ((w + 1) * (w + 2) / 2 <= m) ++w;
  const mpz_class b = m - w * (w + 1) / 2;
  return {w - b, b};
}

mpz_class tuple_encode(const std::vector<mpz_class>& values) {
  if (values.empty()) throw DomainError("cannot encode an empty tuple");
  mpz_class acc = values[0];
  if (acc < 0) throw DomainError("tuple components must be nonnegative");
  for (size_t i = 1; i < values.size(); ++i) {
    if (values[i] < 0) throw DomainError("tuple components must be nonnegative");
    acc = cantor_pair(acc, values[i]);
  }
  return acc;
}

std::vector<mpz_class> tuple_decode(const mpz_class& code, size_t length) {
  if (length == 0) throw DomainError("cannot decode an empty tuple");
  if (code < 0) throw DecodeError("tuple code must be nonnegative");
  std::vector<mpz_class> values(length);
  mpz_class acc = code;
  for (size_t i = length; i-- > 1;) {
    auto [a, b] = cantor_unpair(acc);
    values[i] = std::move(b);
    acc = std::move(a);
  }
  values[0] = std::move(acc);
  return values;
}

RatVector godel_encode(const std::vector<mpz_class>& params, int d) {
  if (d < 1) throw DomainError("godel_encode needs d >= 1");
  std::vector<mpz_class> coded;
  coded.reserve(params.size());
  for (const mpz_class& p : params) coded.push_back(zigzag_encode(p));
  RatVector out = RatVector::Constant(d, Rational(0));
  out[0] = Rational(tuple_encode(coded), 1);
  return out;
}

std::vector<mpz_class> godel_decode(const RatVector& x, size_t expected_length) {
  if (x.size() < 1) throw DecodeError("empty code vector");
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (!x[i].is_integer())
      throw DecodeError("code vector has non-integer coordinates");
  for (Eigen::Index i = 1; i < x.size(); ++i)
    if (!x[i].is_zero())
      throw DecodeError("code vector has nonzero tail coordinates");
  if (x[0].is_negative()) throw DecodeError("code must be nonnegative");
  const std::vector<mpz_class> coded = tuple_decode(x[0].num(), expected_length);
  std::vector<mpz_class> params;
  params.reserve(expected_length);
  for (const mpz_class& c : coded) params.push_back(zigzag_decode(c));
  return params;
}

}  // namespace exactnn
