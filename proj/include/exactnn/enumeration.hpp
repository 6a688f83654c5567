// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "exactnn/network.hpp"
#include "exactnn/rational.hpp"

namespace exactnn {

enum class EnumMode { Integer, Rational };

std::string enum_mode_name(EnumMode mode);
EnumMode enum_mode_by_name(const std::string& name);

// -- Parameter-value size shells -------------------------------------------
//
// The enumerations are organized into shells of a size measure:
//   Integer mode:   measure(z)   = |z|
//   Rational mode:  measure(0)   = 0, measure(p/q) = max(|p|, q) canonical
// Shell s holds exactly the parameter vectors whose componentwise maximum
// measure is s; shells are visited in increasing s and within a shell in
// lexicographic order of the flattened parameter list (components ordered
// by numeric value). Shell 0 is the all-zero vector, so the enumeration
// begins with the zero network.

/// Sorted values of measure <= s plus the bookkeeping the odometer and
/// the rank computations need.
struct ShellTable {
  long shell = 0;
  std::vector<Rational> values;  // ascending
  std::vector<bool> is_new;      // measure == shell
  size_t old_count = 0;          // values with measure < shell
};

ShellTable make_shell_table(EnumMode mode, long shell);

/// Number of shell members (vectors of length n over the table with at
/// least one measure-s component).
mpz_class shell_vector_count(size_t n, const ShellTable& table);

/// Members of shells 0..s, i.e. |V(s)|^n.
mpz_class cumulative_count_through_shell(size_t n, EnumMode mode, long shell);

/// 0-based lexicographic rank of a valid shell member given as table
/// indexes.
mpz_class rank_in_shell(const std::vector<int>& idx, const ShellTable& table);

/// Inverse of rank_in_shell; throws if position is out of range.
std::vector<int> unrank_in_shell(size_t n, const mpz_class& position,
                                 const ShellTable& table);

/// 1-based position of the network in the full enumeration order of the
/// given mode (the "steps" a scan consumes to reach it).
mpz_class enumeration_rank(const Network& net, EnumMode mode);

// -- Cursor ------------------------------------------------------------------

/// Value-semantic position in the network enumeration. A cursor points
/// at the network it would emit next; advancing returns a new cursor.
/// The (shell_index, position_in_shell) pair is a complete checkpoint:
/// resuming from it continues the identical sequence.
class EnumerationCursor {
 public:
  EnumerationCursor(Architecture arch, EnumMode mode);
  static EnumerationCursor from_checkpoint(Architecture arch, EnumMode mode, long shell,
                                           std::uint64_t position);

  const Architecture& architecture() const { return arch_; }
  EnumMode mode() const { return mode_; }
  long shell_index() const { return table_->shell; }
  std::uint64_t position_in_shell() const { return position_; }

  /// Free parameters (final bias omitted) of the network the cursor
  /// points at, in flattening order.
  std::vector<Rational> current_params() const;

  EnumerationCursor advanced() const;

 private:
  void skip_to_valid();
  bool increment();
  void enter_shell(long shell);

  Architecture arch_;
  EnumMode mode_;
  std::shared_ptr<const ShellTable> table_;
  std::vector<int> idx_;
  std::uint64_t position_ = 0;
};

/// Emits the network the cursor points at together with the advanced
/// cursor.
std::pair<Network, EnumerationCursor> next_network(const EnumerationCursor& cursor);

// -- Pairing encodings -------------------------------------------------------

/// Z <-> N bijection: 0,-1,1,-2,2,... -> 0,1,2,3,4,...
mpz_class zigzag_encode(const mpz_class& z);
mpz_class zigzag_decode(const mpz_class& n);

/// pi(a, b) = (a+b)(a+b+1)/2 + b on nonnegative integers.
mpz_class cantor_pair(const mpz_class& a, const mpz_class& b);
std::pair<mpz_class, mpz_class> cantor_unpair(const mpz_class& m);

/// Left-associated iterated pairing; a 1-tuple codes to its element.
mpz_class tuple_encode(const std::vector<mpz_class>& values);
std::vector<mpz_class> tuple_decode(const mpz_class& code, size_t length);

/// Codes an integer parameter vector into a d-dimensional integer point:
/// the zigzag-Cantor tuple code in coordinate 0, zeros elsewhere.
RatVector godel_encode(const std::vector<mpz_class>& params, int d);

/// Inverse; DecodeError when the point is not a well-formed code (non
/// integer entries, nonzero tail coordinates, or negative code).
std::vector<mpz_class> godel_decode(const RatVector& x, size_t expected_length);

}  // namespace exactnn
