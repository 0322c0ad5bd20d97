#include "cakecut/scalar.hpp"

#include <boost/multiprecision/integer.hpp>

namespace cakecut {

namespace mp = boost::multiprecision;

BigInt isqrt(const BigInt& n) {
  if (n < 0) throw std::domain_error("isqrt of negative value");
  return mp::sqrt(n);
}

BigInt floor_sqrt_rational(const Rational& r) {
  if (r < 0) throw std::domain_error("floor_sqrt_rational of negative value");
  const BigInt num = mp::numerator(r), den = mp::denominator(r);
  BigInt k = isqrt(num / den);
  while ((k + 1) * (k + 1) * den <= num) ++k;
  while (k > 0 && k * k * den > num) --k;
  return k;
}

bool is_square_free(std::int64_t m) {
  if (m <= 0) return false;
  for (std::int64_t p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      m /= p;
      if (m % p == 0) return false;
    }
  }
  return true;
}

int ceil_log2(const BigInt& n) {
  if (n <= 0) throw std::domain_error("ceil_log2 requires a positive argument");
  if (n == 1) return 0;
  int t = static_cast<int>(mp::msb(n));
  return (BigInt(1) << t) == n ? t : t + 1;
}

std::pair<BigInt, BigInt> near_half_split(const BigInt& D) {
  if (D < 1) throw std::domain_error("near_half_split requires D >= 1");
  BigInt lo = D / 2;
  return {lo, D - lo};
}

BigInt pow10(int t) {
  if (t < 0) throw std::domain_error("pow10 requires t >= 0");
  return mp::pow(BigInt(10), static_cast<unsigned>(t));
}

int sign_of(const Rational& r) { return r.sign(); }

BigInt floor_rational(const Rational& r) {
  const BigInt num = mp::numerator(r), den = mp::denominator(r);
  BigInt q = num / den;  // truncates toward zero
  if (num < 0 && q * den != num) --q;
  return q;
}

int quad_sign(const Rational& a, const Rational& b, std::int64_t m) {
  const int sa = a.sign(), sb = b.sign();
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: |a| vs |b|*sqrt(m) decided by squaring, exactly.
  const Rational lhs = a * a, rhs = b * b * m;
  if (lhs == rhs) return 0;  // impossible for square-free m >= 2, b != 0
  return lhs > rhs ? sa : sb;
}

Scalar Scalar::quadratic(const Rational& a, const Rational& b, std::int64_t m) {
  Scalar s;
  s.a_ = a;
  if (b != 0) {
    if (m < 2 || !is_square_free(m))
      throw std::domain_error("quadratic field parameter must be square-free and >= 2");
    s.b_ = b;
    s.m_ = m;
  }
  return s;
}

const Rational& Scalar::as_rational() const {
  if (m_ != 0) throw std::domain_error("scalar has a nonzero radical part");
  return a_;
}

int Scalar::sign() const {
  return m_ == 0 ? sign_of(a_) : quad_sign(a_, b_, m_);
}

void Scalar::normalize() {
  if (b_ == 0) m_ = 0;
}

std::int64_t Scalar::unify(const Scalar& o) const {
  if (m_ == o.m_) return m_;
  if (m_ == 0) return o.m_;
  if (o.m_ == 0) return m_;
  throw std::domain_error("mismatched quadratic fields");
}

Scalar Scalar::operator-() const {
  Scalar r(*this);
  r.a_ = -r.a_;
  r.b_ = -r.b_;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  m_ = unify(o);
  a_ += o.a_;
  b_ += o.b_;
  normalize();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  m_ = unify(o);
  a_ -= o.a_;
  b_ -= o.b_;
  normalize();
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  const std::int64_t m = unify(o);
  const Rational na = a_ * o.a_ + b_ * o.b_ * m;
  const Rational nb = a_ * o.b_ + b_ * o.a_;
  a_ = na;
  b_ = nb;
  m_ = m;
  normalize();
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw std::domain_error("scalar division by zero");
  const std::int64_t m = unify(o);
  if (m == 0) {
    a_ /= o.a_;
    return *this;
  }
  // Multiply by the conjugate; the norm a^2 - b^2 m vanishes only at zero.
  const Rational norm = o.a_ * o.a_ - o.b_ * o.b_ * m;
  const Rational na = (a_ * o.a_ - b_ * o.b_ * m) / norm;
  const Rational nb = (b_ * o.a_ - a_ * o.b_) / norm;
  a_ = na;
  b_ = nb;
  m_ = m;
  normalize();
  return *this;
}

BigInt Scalar::floor() const {
  if (m_ == 0) return floor_rational(a_);
  const Rational rsq = b_ * b_ * m_;
  const BigInt k = floor_sqrt_rational(rsq);
  BigInt fb;
  if (b_ > 0) {
    fb = k;
  } else {
    fb = -k;
    if (k * k < rsq) --fb;  // strict for irrational sqrt
  }
  BigInt c = floor_rational(a_) + fb;
  if ((*this - Scalar(c + 1)).sign() >= 0) ++c;
  return c;
}

BigInt Scalar::ceil() const { return -((-*this).floor()); }

namespace {

std::string rat_str(const Rational& r) {
  const BigInt num = mp::numerator(r), den = mp::denominator(r);
  std::string s = num.str();
  if (den != 1) s += "/" + den.str();
  return s;
}

}  // namespace

std::string Scalar::to_string() const {
  if (m_ == 0) return rat_str(a_);
  return "quad(" + rat_str(a_) + "|" + rat_str(b_) + "|" + std::to_string(m_) + ")";
}

Rational parse_rational(const std::string& s) {
  const auto bad = [&] {
    throw std::invalid_argument("malformed rational: '" + s + "'");
  };
  if (s.empty()) bad();
  const auto slash = s.find('/');
  const auto digits_ok = [&](std::size_t from, std::size_t to, bool allow_sign) {
    if (from >= to) return false;
    std::size_t i = from;
    if (allow_sign && (s[i] == '-' || s[i] == '+')) ++i;
    if (i >= to) return false;
    for (; i < to; ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  if (slash == std::string::npos) {
    if (!digits_ok(0, s.size(), true)) bad();
    return Rational(BigInt(s));
  }
  if (!digits_ok(0, slash, true) || !digits_ok(slash + 1, s.size(), false)) bad();
  const BigInt num(s.substr(0, slash)), den(s.substr(slash + 1));
  if (den == 0) throw std::domain_error("rational with zero denominator");
  return Rational(num, den);
}

Scalar Scalar::parse(const std::string& s) {
  if (s.rfind("quad(", 0) == 0 && s.size() > 6 && s.back() == ')') {
    const std::string body = s.substr(5, s.size() - 6);
    const auto p1 = body.find('|');
    const auto p2 = body.find('|', p1 == std::string::npos ? p1 : p1 + 1);
    if (p1 == std::string::npos || p2 == std::string::npos)
      throw std::invalid_argument("malformed quadratic scalar: '" + s + "'");
    const Rational a = parse_rational(body.substr(0, p1));
    const Rational b = parse_rational(body.substr(p1 + 1, p2 - p1 - 1));
    const std::string mstr = body.substr(p2 + 1);
    std::size_t pos = 0;
    const long long m = std::stoll(mstr, &pos);
    if (pos != mstr.size())
      throw std::invalid_argument("malformed quadratic scalar: '" + s + "'");
    return Scalar::quadratic(a, b, m);
  }
  return Scalar(parse_rational(s));
}

std::string decimal_string(const Rational& r, int places) {
  if (places < 0) throw std::domain_error("decimal_string requires places >= 0");
  const BigInt scale = pow10(places);
  const BigInt v = floor_rational(r * scale);
  const bool neg = v < 0;
  BigInt w = neg ? BigInt(-v) : v;
  std::string frac = (w % scale).str();
  if (places == 0) return (neg ? "-" : "") + w.str();
  frac.insert(frac.begin(), places - frac.size(), '0');
  return (neg ? "-" : "") + (w / scale).str() + "." + frac;
}

Rational log3_fixed(const Rational& arg, int places) {
  if (arg <= 0) throw std::domain_error("log3 requires a positive argument");
  if (places < 0) throw std::domain_error("log3 places must be non-negative");
  const bool inverted = arg < 1;
  const Rational a = inverted ? Rational(1) / arg : arg;
  const BigInt P = pow10(places);
  const BigInt num = mp::numerator(a), den = mp::denominator(a);

  // Integer part: largest k0 with 3^k0 <= a.
  BigInt k0 = 0, p3 = 1;
  while (p3 * 3 * den <= num) {
    p3 *= 3;
    ++k0;
  }
  if (p3 * den == num)  // exact power of 3: every further digit vanishes
    return Rational((inverted ? -k0 : k0) * P, P);

  // Decimal digits of log3 of the residual x = a / 3^k0 in [1, 3), one at a
  // time: keep certified dyadic bounds L/2^B <= x <= U/2^B, raise both to
  // the 10th power, read the next digit off as the 3-adic magnitude, and
  // rescale.  A digit the two bounds disagree on restarts the extraction at
  // doubled precision; a is not a power of 3, so the true value never sits
  // exactly on a digit boundary and the loop terminates.
  for (int B = 48 + 4 * places;; B *= 2) {
    const BigInt scale = BigInt(1) << static_cast<unsigned>(B);
    const BigInt scale9 = mp::pow(scale, 9);
    const BigInt d0 = den * p3;
    BigInt L = num * scale / d0;
    BigInt U = (num * scale + d0 - 1) / d0;
    BigInt e = k0;
    bool decided = true;
    for (int i = 0; i < places; ++i) {
      const BigInt XL = mp::pow(L, 10), XU = mp::pow(U, 10);
      int dl = 0;
      BigInt tl = scale9 * scale;  // 3^dl * scale^10
      while (dl < 10 && tl * 3 <= XL) {
        tl *= 3;
        ++dl;
      }
      int du = 0;
      BigInt tu = scale9 * scale;
      while (du < 11 && tu * 3 <= XU) {
        tu *= 3;
        ++du;
      }
      if (dl != du) {
        decided = false;
        break;
      }
      e = e * 10 + dl;
      const BigInt den3 = tl / scale;  // 3^dl * scale^9
      L = XL / den3;
      U = (XU + den3 - 1) / den3;
    }
    if (decided) return Rational(inverted ? -e : e, P);
  }
}

std::string decimal_log3(const Rational& coeff, const Rational& arg, int places) {
  return decimal_string(coeff * log3_fixed(arg, places), places);
}

}  // namespace cakecut
