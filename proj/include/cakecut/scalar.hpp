#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace cakecut {

// Expression templates are disabled so arithmetic results materialize
// immediately; it keeps mixed Scalar/BigInt expressions unambiguous.
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;
using Rational =
    boost::multiprecision::number<boost::multiprecision::rational_adaptor<
                                      boost::multiprecision::cpp_int_backend<>>,
                                  boost::multiprecision::et_off>;

/// floor(sqrt(n)) for n >= 0; domain error for negative n.
BigInt isqrt(const BigInt& n);

/// Largest integer k with k*k <= r; domain error for r < 0.
BigInt floor_sqrt_rational(const Rational& r);

/// True iff m has no repeated prime factor (1 counts as square-free).
bool is_square_free(std::int64_t m);

/// Smallest t >= 0 with 2^t >= n; domain error for n <= 0.
int ceil_log2(const BigInt& n);

/// (floor(D/2), ceil(D/2)); domain error for D < 1.
std::pair<BigInt, BigInt> near_half_split(const BigInt& D);

BigInt pow10(int t);

int sign_of(const Rational& r);
BigInt floor_rational(const Rational& r);

/// Exact scalar: either a rational or an element a + b*sqrt(m) of a real
/// quadratic field Q(sqrt(m)), m square-free >= 2.  Canonical form keeps
/// m == 0 exactly when the radical part b is zero, so values that happen to
/// be rational always compare and serialize as rationals.  Mixed arithmetic
/// promotes a rational operand into the other operand's field; genuinely
/// mismatched fields (say sqrt(2) vs sqrt(3)) raise std::domain_error.
/// All comparisons are exact: no floating point is involved anywhere.
class Scalar {
 public:
  Scalar() : m_(0) {}
  Scalar(int v) : a_(v), m_(0) {}
  Scalar(long v) : a_(v), m_(0) {}
  Scalar(long long v) : a_(v), m_(0) {}
  Scalar(const BigInt& v) : a_(v), m_(0) {}
  Scalar(const Rational& v) : a_(v), m_(0) {}

  /// a + b*sqrt(m).  m must be square-free and >= 2 unless b == 0.
  static Scalar quadratic(const Rational& a, const Rational& b, std::int64_t m);

  bool is_rational() const { return m_ == 0; }
  /// Field parameter, 0 for rationals.
  std::int64_t field_m() const { return m_; }
  const Rational& rat_part() const { return a_; }
  const Rational& rad_part() const { return b_; }
  /// The value as a Rational; domain error if a radical part is present.
  const Rational& as_rational() const;

  int sign() const;
  bool is_zero() const { return a_ == 0 && b_ == 0; }

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar x, const Scalar& y) { return x += y; }
  friend Scalar operator-(Scalar x, const Scalar& y) { return x -= y; }
  friend Scalar operator*(Scalar x, const Scalar& y) { return x *= y; }
  friend Scalar operator/(Scalar x, const Scalar& y) { return x /= y; }

  friend bool operator==(const Scalar& x, const Scalar& y) {
    return (x - y).is_zero();
  }
  friend std::strong_ordering operator<=>(const Scalar& x, const Scalar& y) {
    int s = (x - y).sign();
    return s < 0 ? std::strong_ordering::less
         : s > 0 ? std::strong_ordering::greater
                 : std::strong_ordering::equal;
  }

  BigInt floor() const;
  BigInt ceil() const;

  /// "p", "p/q", or "quad(a|b|m)".
  std::string to_string() const;
  static Scalar parse(const std::string& s);

 private:
  Rational a_;
  Rational b_;
  std::int64_t m_;

  void normalize();
  // Returns the common field parameter for an operation on *this and o,
  // promoting rationals; throws on a genuine mismatch.
  std::int64_t unify(const Scalar& o) const;
};

/// -1, 0, or +1 for a + b*sqrt(m) by exact case analysis (signs of a and b,
/// then comparison of a^2 against b^2*m).
int quad_sign(const Rational& a, const Rational& b, std::int64_t m);

/// Fixed-point decimal rendering of a rational with `places` digits after the
/// point, rounded toward negative infinity.  Deterministic; used for report
/// output where an exact value has no finite decimal form.
std::string decimal_string(const Rational& r, int places);

/// log3(arg) truncated to `places` decimal digits, as an exact rational with
/// denominator 10^places; exact integer arithmetic throughout (digit-by-digit
/// extraction from certified dyadic bounds).  arg must be positive.
Rational log3_fixed(const Rational& arg, int places);

/// floor(places-digit decimal of coeff*log3(arg)) as a string; exact integer
/// arithmetic throughout.
std::string decimal_log3(const Rational& coeff, const Rational& arg, int places);

Rational parse_rational(const std::string& s);

}  // namespace cakecut
