#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace helix {

using Integer = mpz_class;
using Rational = mpq_class;

// Small number theory on machine integers. Arguments are expected to be
// positive and small (conductors stay in the low thousands).
long gcd(long a, long b);
long lcm(long a, long b);
long euler_phi(long n);
int moebius(long n);
long mod(long a, long m);
std::vector<std::pair<long, int>> factorize(long n);
bool is_prime(long n);

/// An exact element of a cyclotomic field Q(zeta_N).
///
/// Values are stored in the Zumbroich basis of Q(zeta_N) (a Z-basis of the
/// ring of integers consisting of roots of unity) and are always lowered to
/// the smallest conductor N whose field contains them. Two values are equal
/// iff their conductors and coefficient lists agree.
class CycValue {
 public:
  using Term = std::pair<long, Rational>;  // exponent e, coefficient of zeta_N^e

  CycValue() = default;
  CycValue(long value);  // NOLINT(google-explicit-constructor)
  CycValue(const Rational& value);  // NOLINT(google-explicit-constructor)

  /// zeta_n^(e mod n).
  static CycValue root_of_unity(long n, long e);

  /// Builds sum c * zeta_n^e from arbitrary, possibly non-canonical, terms.
  static CycValue from_terms(long n, const std::vector<Term>& terms);

  long conductor() const { return conductor_; }
  const std::vector<Term>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const { return conductor_ == 1; }
  std::optional<Rational> rational() const;
  /// True iff the value is an algebraic integer.
  bool is_integral() const;

  CycValue operator-() const;
  CycValue& operator+=(const CycValue& rhs);
  CycValue& operator-=(const CycValue& rhs);
  CycValue& operator*=(const CycValue& rhs);
  friend CycValue operator+(CycValue lhs, const CycValue& rhs) { return lhs += rhs; }
  friend CycValue operator-(CycValue lhs, const CycValue& rhs) { return lhs -= rhs; }
  friend CycValue operator*(CycValue lhs, const CycValue& rhs) { return lhs *= rhs; }
  friend bool operator==(const CycValue& a, const CycValue& b) {
    return a.conductor_ == b.conductor_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const CycValue& a, const CycValue& b) { return !(a == b); }

  /// Image under zeta_N -> zeta_N^k. Throws std::invalid_argument unless
  /// gcd(k, conductor()) == 1.
  CycValue galois(long k) const;
  CycValue conj() const { return galois(-1); }

  /// Multiplication by zeta_n^e without a full product.
  CycValue times_root(long n, long e) const;

  /// Trace from Q(zeta_conductor) down to Q.
  Rational trace() const { return trace(conductor_); }
  /// Trace from Q(zeta_field) down to Q. The value must lie in Q(zeta_field).
  Rational trace(long field) const;

  /// Human-readable form, e.g. "1+3*E(3)" (E(n) is zeta_n).
  std::string to_string() const;

 private:
  CycValue(long n, std::vector<Term> terms) : conductor_(n), terms_(std::move(terms)) {}

  long conductor_ = 1;
  std::vector<Term> terms_;  // canonical, sorted by exponent, no zero coefficients

  friend class CycAccumulator;
};

std::ostream& operator<<(std::ostream& os, const CycValue& v);

/// Mutable sum of cyclotomic values at a fixed working conductor. Summing many
/// products this way avoids canonicalizing every intermediate value.
class CycAccumulator {
 public:
  explicit CycAccumulator(long conductor);

  long conductor() const { return conductor_; }
  /// Adds coef * zeta_n^e; n must divide the working conductor.
  void add_root(long n, long e, const Rational& coef);
  void add(const CycValue& v, const Rational& coef = 1);
  /// Adds coef * a * b.
  void add_product(const CycValue& a, const CycValue& b, const Rational& coef = 1);
  CycValue value() const;

 private:
  long conductor_;
  std::vector<Rational> dense_;  // coefficient per exponent, not yet reduced
};

/// Trace of zeta_n^e from Q(zeta_field) to Q; requires zeta_n^e in that field.
long root_trace(long n, long e, long field);

}  // namespace helix
