#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <vector>

#include "nagumo/rational.hpp"

namespace nagumo {

// Sentinel for the order of zero.
inline constexpr long long kOrderInfinity = std::numeric_limits<long long>::max();

class Prime {
 public:
  explicit Prime(long long p);

  long long value() const { return p_; }
  double as_double() const { return static_cast<double>(p_); }

  bool operator==(const Prime& other) const { return p_ == other.p_; }
  bool operator!=(const Prime& other) const { return p_ != other.p_; }

 private:
  long long p_;
};

// p-adic order of numerator/denominator; kOrderInfinity iff numerator == 0.
// Throws std::invalid_argument on zero denominator.
long long valuation(long long numerator, long long denominator, const Prime& p);

// p-adic order of an exact rational.
long long padic_order(const Rational& x, const Prime& p);

// Haar measure of the ball B_k = {|x|_p <= p^k}, normalized so B_0 has measure 1.
Rational ball_measure(const Prime& p, int k);

// Haar measure of the sphere S_k = {|x|_p = p^k}: p^k (1 - 1/p).
Rational shell_measure(const Prime& p, int k);

// The p-adic fractional part {x}_p as an exact rational in [0, 1) whose
// denominator is a power of p; {x}_p = 0 whenever ord(x) >= 0.
Rational fractional_part(const Rational& x, const Prime& p);

// The additive character chi_p(x) = exp(2 pi i {x}_p), as a unit complex number.
std::complex<double> char_eval(const Prime& p, const Rational& x);

// Integral of chi_p(a x) over the sphere S_k, for any frequency a with |a|_p = p^v:
//   p^k (1 - 1/p)  if v <= -k
//   -p^(k-1)       if v == 1 - k
//   0              if v >= 2 - k
Rational char_shell_integral(const Prime& p, long long v, int k);

// Integral of chi_p(a x) over the ball B_k: p^k if v <= -k, else 0.
Rational char_ball_integral(const Prime& p, long long v, int k);

// max(1, p^k)^s, the Sobolev weight on the sphere S_k.
double bracket_weight(const Prime& p, int k, double s);

// A point of Q_p with a finite digit expansion: x = p^v sum_i digits[i] p^i,
// digits in {0, ..., p-1}, leading digit nonzero unless x = 0. Digit count is
// capped; longer inputs are rejected rather than truncated.
class PadicPoint {
 public:
  static constexpr std::size_t kMaxDigits = 64;

  explicit PadicPoint(const Prime& p);  // zero
  PadicPoint(const Prime& p, long long v, std::vector<int> digits);

  // Requires x >= 0 with a p-power denominator (i.e. a finite expansion).
  static PadicPoint from_rational(const Prime& p, const Rational& x);

  const Prime& prime() const { return p_; }
  bool is_zero() const { return digits_.empty(); }
  long long order() const { return is_zero() ? kOrderInfinity : v_; }
  const std::vector<int>& digits() const { return digits_; }

  Rational to_rational() const;

  PadicPoint operator+(const PadicPoint& other) const;

 private:
  Prime p_;
  long long v_ = 0;
  std::vector<int> digits_;
};

std::complex<double> char_eval(const Prime& p, const PadicPoint& x);

}  // namespace nagumo
