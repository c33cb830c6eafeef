#include "nagumo/padic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nagumo {

namespace {

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace

Prime::Prime(long long p) : p_(p) {
  if (!is_prime(p)) throw std::invalid_argument("Prime: " + std::to_string(p) + " is not prime");
}

long long valuation(long long numerator, long long denominator, const Prime& p) {
  if (denominator == 0) throw std::invalid_argument("valuation: zero denominator");
  if (numerator == 0) return kOrderInfinity;
  long long v = 0;
  long long n = numerator;
  long long d = denominator;
  while (n % p.value() == 0) {
    n /= p.value();
    ++v;
  }
  while (d % p.value() == 0) {
    d /= p.value();
    --v;
  }
  return v;
}

long long padic_order(const Rational& x, const Prime& p) {
  if (x == 0) return kOrderInfinity;
  BigInt n = numerator(x);
  BigInt d = denominator(x);
  const BigInt pb(p.value());
  long long v = 0;
  while (n % pb == 0) {
    n /= pb;
    ++v;
  }
  while (d % pb == 0) {
    d /= pb;
    --v;
  }
  return v;
}

Rational ball_measure(const Prime& p, int k) { return rational_pow(Rational(p.value()), k); }

Rational shell_measure(const Prime& p, int k) {
  return ball_measure(p, k) * Rational(p.value() - 1, p.value());
}

Rational fractional_part(const Rational& x, const Prime& p) {
  const long long v = padic_order(x, p);
  if (v >= 0 || x == 0) return Rational(0);
  const unsigned long long m = static_cast<unsigned long long>(-v);
  const BigInt pm = int_pow(BigInt(p.value()), m);
  // x = a / (b * p^m) with p coprime to a and b; {x}_p = (a b^{-1} mod p^m) / p^m.
  BigInt a = numerator(x);
  BigInt b = denominator(x);
  BigInt pb(p.value());
  while (a % pb == 0) a /= pb;  // only possible if numerator carried extra powers
  BigInt b_reduced = b;
  while (b_reduced % pb == 0) b_reduced /= pb;
  BigInt c = (a % pm) * mod_inverse(b_reduced % pm, pm) % pm;
  if (c < 0) c += pm;
  return Rational(c, pm);
}

std::complex<double> char_eval(const Prime& p, const Rational& x) {
  const Rational frac = fractional_part(x, p);
  const double angle = 2.0 * std::numbers::pi * to_double(frac);
  return {std::cos(angle), std::sin(angle)};
}

Rational char_shell_integral(const Prime& p, long long v, int k) {
  if (v <= -static_cast<long long>(k)) return shell_measure(p, k);
  if (v == 1 - static_cast<long long>(k)) return -ball_measure(p, k - 1);
  return Rational(0);
}

Rational char_ball_integral(const Prime& p, long long v, int k) {
  if (v <= -static_cast<long long>(k)) return ball_measure(p, k);
  return Rational(0);
}

double bracket_weight(const Prime& p, int k, double s) {
  if (k <= 0) return 1.0;
  return std::pow(p.as_double(), static_cast<double>(k) * s);
}

PadicPoint::PadicPoint(const Prime& p) : p_(p) {}

PadicPoint::PadicPoint(const Prime& p, long long v, std::vector<int> digits) : p_(p), v_(v), digits_(std::move(digits)) {
  if (digits_.size() > kMaxDigits) throw std::invalid_argument("PadicPoint: digit expansion too long");
  for (int d : digits_) {
    if (d < 0 || d >= p_.value()) throw std::invalid_argument("PadicPoint: digit out of range");
  }
  if (!digits_.empty() && digits_.front() == 0) throw std::invalid_argument("PadicPoint: leading digit must be nonzero");
  while (!digits_.empty() && digits_.back() == 0) digits_.pop_back();
  if (digits_.empty()) v_ = 0;
}

PadicPoint PadicPoint::from_rational(const Prime& p, const Rational& x) {
  if (x == 0) return PadicPoint(p);
  if (x < 0) throw std::invalid_argument("PadicPoint: finite expansions represent nonnegative rationals");
  const long long v = padic_order(x, p);
  const Rational unit = x * rational_pow(Rational(p.value()), -v);
  if (denominator(unit) != 1) throw std::invalid_argument("PadicPoint: denominator is not a power of p");
  BigInt a = numerator(unit);
  std::vector<int> digits;
  const BigInt pb(p.value());
  while (a > 0) {
    digits.push_back(static_cast<int>(a % pb));
    a /= pb;
    if (digits.size() > kMaxDigits) throw std::invalid_argument("PadicPoint: digit expansion too long");
  }
  return PadicPoint(p, v, std::move(digits));
}

Rational PadicPoint::to_rational() const {
  Rational acc(0);
  for (std::size_t i = digits_.size(); i-- > 0;) {
    acc = acc * Rational(p_.value()) + Rational(digits_[i]);
  }
  return acc * rational_pow(Rational(p_.value()), v_);
}

PadicPoint PadicPoint::operator+(const PadicPoint& other) const {
  if (p_ != other.p_) throw std::invalid_argument("PadicPoint: mismatched primes");
  return from_rational(p_, to_rational() + other.to_rational());
}

std::complex<double> char_eval(const Prime& p, const PadicPoint& x) {
  if (x.prime() != p) throw std::invalid_argument("char_eval: mismatched primes");
  return char_eval(p, x.to_rational());
}

}  // namespace nagumo
