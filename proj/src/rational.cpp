// SPDX-License-Identifier: Apache-2.0

#include "exactnn/rational.hpp"

#include <cctype>
#include <ostream>

#include "exactnn/errors.hpp"

namespace exactnn {

Rational::Rational(long num, long den) : Rational(mpz_class(num), mpz_class(den)) {}

Rational::Rational(mpz_class num, mpz_class den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  value_ = mpq_class(std::move(num), std::move(den));
  value_.canonicalize();
}

Rational::Rational(mpq_class q) : value_(std::move(q)) {
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  const auto bad = [&] {
    return ParseError("not a rational \"p\" or \"p/q\": '" + std::string(text) + "'");
  };
  size_t i = 0;
  auto read_integer = [&](bool allow_sign) -> mpz_class {
    std::string digits;
    if (allow_sign && i < text.size() && text[i] == '-') digits += text[i++];
    const size_t start = digits.size();
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
      digits += text[i++];
    if (digits.size() == start) throw bad();
    return mpz_class(digits, 10);
  };
  mpz_class num = read_integer(true);
  mpz_class den = 1;
  if (i < text.size() && text[i] == '/') {
    ++i;
    den = read_integer(false);
    if (den == 0) throw bad();
  }
  if (i != text.size()) throw bad();
  return Rational(std::move(num), std::move(den));
}

Rational Rational::pow2(long k) {
  mpz_class p = 1;
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(k < 0 ? -k : k));
  return k >= 0 ? Rational(std::move(p), 1) : Rational(1, std::move(p));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DomainError("rational division by zero");
  value_ /= o.value_;
  return *this;
}

mpz_class Rational::floor() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return q;
}

std::string Rational::to_string() const {
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::string Rational::to_decimal(int digits) const {
  mpz_class n = num();
  const bool neg = n < 0;
  if (neg) n = -n;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  mpz_class whole = n / den();
  mpz_class frac = ((n % den()) * scale) / den();
  std::string out = whole.get_str();
  if (digits > 0) {
    std::string f = frac.get_str();
    f.insert(0, static_cast<size_t>(digits) - f.size(), '0');
    out += "." + f;
  }
  if (neg && (whole != 0 || frac != 0)) out.insert(0, "-");
  return out;
}

Rational abs(const Rational& q) {
  return q.is_negative() ? -q : q;
}

long ceil_log2_ub(const Rational& q) {
  if (!(q > Rational(0))) throw DomainError("ceil_log2_ub requires a positive argument");
  // Bit lengths give a two-sided starting guess; fix up by comparison.
  long m = static_cast<long>(mpz_sizeinbase(q.num().get_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(q.den().get_mpz_t(), 2)) + 1;
  while (Rational::pow2(m) < q) ++m;
  while (Rational::pow2(m - 1) >= q) --m;
  return m;
}

namespace {

// floor of the integer square root, with a flag for exactness.
mpz_class isqrt_floor(const mpz_class& n, bool* exact) {
  mpz_class root, rem;
  mpz_sqrtrem(root.get_mpz_t(), rem.get_mpz_t(), n.get_mpz_t());
  *exact = (rem == 0);
  return root;
}

}  // namespace

// sqrt(p/q) = sqrt(p*q)/q, so scaling p*q by 4^k and rounding the integer
// root gives a bound off by less than 1/(q*2^k) <= 2^(-k).
Rational sqrt_ub(const Rational& q, unsigned k) {
  if (q.is_negative()) throw DomainError("sqrt of a negative rational");
  mpz_class n = q.num() * q.den();
  mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), 2 * k);
  bool exact = false;
  mpz_class root = isqrt_floor(n, &exact);
  if (!exact) root += 1;
  mpz_class den;
  mpz_mul_2exp(den.get_mpz_t(), q.den().get_mpz_t(), k);
  return Rational(std::move(root), std::move(den));
}

Rational sqrt_lb(const Rational& q, unsigned k) {
  if (q.is_negative()) throw DomainError("sqrt of a negative rational");
  mpz_class n = q.num() * q.den();
  mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), 2 * k);
  bool exact = false;
  mpz_class root = isqrt_floor(n, &exact);
  mpz_class den;
  mpz_mul_2exp(den.get_mpz_t(), q.den().get_mpz_t(), k);
  return Rational(std::move(root), std::move(den));
}

std::ostream& operator<<(std::ostream& os, const Rational& q) {
  return os << q.to_string();
}

}  // namespace exactnn
