#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "nagumo/padic.hpp"
#include "nagumo/rational.hpp"

namespace nagumo {

// Neumaier compensated summation; reductions over shells always run in
// ascending-k order so results are bit-identical across runs.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }

  double value() const { return sum + comp; }
};

namespace detail {

template <class Scalar>
Scalar scalar_p_pow(const Prime& p, long long k) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return rational_pow(Rational(p.value()), k);
  } else {
    return std::pow(p.as_double(), static_cast<double>(k));
  }
}

template <class Scalar>
double scalar_to_double(const Scalar& x) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return to_double(x);
  } else {
    return x;
  }
}

}  // namespace detail

// A radial step function on Q_p: one value on the inner ball B_{j_min},
// one value per sphere S_k for j_min < k <= j_max, and 0 outside B_{j_max}.
// Closed under pointwise algebra and under the exact Fourier transform.
template <class Scalar>
class RadialFieldT {
 public:
  RadialFieldT(Prime p, int j_min, int j_max, Scalar ball_value, std::vector<Scalar> shell_values)
      : p_(p), j_min_(j_min), j_max_(j_max), ball_value_(std::move(ball_value)), shell_values_(std::move(shell_values)) {
    if (j_min_ > j_max_) throw std::invalid_argument("RadialField: j_min > j_max");
    if (shell_values_.size() != static_cast<std::size_t>(j_max_ - j_min_)) {
      throw std::invalid_argument("RadialField: shell value count must equal j_max - j_min");
    }
  }

  static RadialFieldT zero(const Prime& p, int j_min, int j_max) {
    return RadialFieldT(p, j_min, j_max, Scalar(0), std::vector<Scalar>(static_cast<std::size_t>(j_max - j_min), Scalar(0)));
  }

  // Indicator of the ball B_k.
  static RadialFieldT ball_indicator(const Prime& p, int k) {
    return RadialFieldT(p, k, k, Scalar(1), {});
  }

  static RadialFieldT from_profile(const Prime& p, int j_min, int j_max, const std::function<Scalar(int)>& profile) {
    std::vector<Scalar> shells;
    shells.reserve(static_cast<std::size_t>(j_max - j_min));
    for (int k = j_min + 1; k <= j_max; ++k) shells.push_back(profile(k));
    return RadialFieldT(p, j_min, j_max, profile(j_min), std::move(shells));
  }

  const Prime& prime() const { return p_; }
  int j_min() const { return j_min_; }
  int j_max() const { return j_max_; }
  const Scalar& ball_value() const { return ball_value_; }
  const std::vector<Scalar>& shell_values() const { return shell_values_; }

  // Value on the sphere S_k (ball value for k <= j_min, 0 beyond j_max).
  Scalar value_at_shell(int k) const {
    if (k <= j_min_) return ball_value_;
    if (k > j_max_) return Scalar(0);
    return shell_values_[static_cast<std::size_t>(k - j_min_ - 1)];
  }

  // Pointwise map g applied on every region; g(0) must vanish so the result
  // stays compactly supported.
  template <class Fn>
  RadialFieldT map(Fn&& g) const {
    if (g(Scalar(0)) != Scalar(0)) throw std::invalid_argument("RadialField::map: g(0) must be 0");
    std::vector<Scalar> shells;
    shells.reserve(shell_values_.size());
    for (const Scalar& v : shell_values_) shells.push_back(g(v));
    return RadialFieldT(p_, j_min_, j_max_, g(ball_value_), std::move(shells));
  }

  // u^m, m >= 1.
  RadialFieldT pow_int(int m) const {
    if (m < 1) throw std::invalid_argument("RadialField::pow_int: exponent must be >= 1");
    return map([m](const Scalar& y) {
      Scalar acc = y;
      for (int i = 1; i < m; ++i) acc *= y;
      return acc;
    });
  }

  RadialFieldT scaled(const Scalar& a) const {
    std::vector<Scalar> shells;
    shells.reserve(shell_values_.size());
    for (const Scalar& v : shell_values_) shells.push_back(a * v);
    return RadialFieldT(p_, j_min_, j_max_, a * ball_value_, std::move(shells));
  }

  // Exact Fourier transform via the ball decomposition; the transform of the
  // indicator of B_k is p^k times the indicator of B_{-k}, so the image lives
  // on the reflected window [-j_max, -j_min]. Radial fields are even, hence
  // the same map is its own inverse.
  RadialFieldT fourier() const {
    const int a = j_min_, b = j_max_;
    // Prefix integrals I_K = integral of f over B_K, ascending K.
    std::vector<Scalar> prefix(static_cast<std::size_t>(b - a + 1));
    if constexpr (std::is_same_v<Scalar, double>) {
      CompensatedSum acc;
      acc.add(ball_value_ * detail::scalar_p_pow<double>(p_, a));
      prefix[0] = acc.value();
      for (int k = a + 1; k <= b; ++k) {
        acc.add(value_at_shell(k) * measure_shell(k));
        prefix[static_cast<std::size_t>(k - a)] = acc.value();
      }
    } else {
      prefix[0] = ball_value_ * detail::scalar_p_pow<Scalar>(p_, a);
      for (int k = a + 1; k <= b; ++k) {
        prefix[static_cast<std::size_t>(k - a)] =
            prefix[static_cast<std::size_t>(k - a - 1)] + value_at_shell(k) * measure_shell(k);
      }
    }
    const Scalar hat_ball = prefix.back();  // value of the transform near 0
    std::vector<Scalar> shells(static_cast<std::size_t>(b - a));
    for (int m = -b + 1; m <= -a; ++m) {
      const int K = -m;  // transform on S_m sees integral over B_K minus a correction
      shells[static_cast<std::size_t>(m + b - 1)] =
          prefix[static_cast<std::size_t>(K - a)] - value_at_shell(K + 1) * detail::scalar_p_pow<Scalar>(p_, K);
    }
    return RadialFieldT(p_, -b, -a, hat_ball, std::move(shells));
  }

  Scalar integral() const {
    if constexpr (std::is_same_v<Scalar, double>) {
      CompensatedSum acc;
      acc.add(ball_value_ * detail::scalar_p_pow<double>(p_, j_min_));
      for (int k = j_min_ + 1; k <= j_max_; ++k) acc.add(value_at_shell(k) * measure_shell(k));
      return acc.value();
    } else {
      Scalar acc = ball_value_ * detail::scalar_p_pow<Scalar>(p_, j_min_);
      for (int k = j_min_ + 1; k <= j_max_; ++k) acc += value_at_shell(k) * measure_shell(k);
      return acc;
    }
  }

  Scalar norm_l2_squared() const {
    if constexpr (std::is_same_v<Scalar, double>) {
      CompensatedSum acc;
      acc.add(ball_value_ * ball_value_ * detail::scalar_p_pow<double>(p_, j_min_));
      for (int k = j_min_ + 1; k <= j_max_; ++k) {
        const double v = value_at_shell(k);
        acc.add(v * v * measure_shell(k));
      }
      return acc.value();
    } else {
      Scalar acc = ball_value_ * ball_value_ * detail::scalar_p_pow<Scalar>(p_, j_min_);
      for (int k = j_min_ + 1; k <= j_max_; ++k) {
        const Scalar v = value_at_shell(k);
        acc += v * v * measure_shell(k);
      }
      return acc;
    }
  }

  double norm_l2() const { return std::sqrt(std::max(0.0, detail::scalar_to_double(norm_l2_squared()))); }

  double norm_sup() const {
    double m = std::abs(detail::scalar_to_double(ball_value_));
    for (const Scalar& v : shell_values_) m = std::max(m, std::abs(detail::scalar_to_double(v)));
    return m;
  }

  // Sobolev norm ||f||_s: the weight max(1, |xi|)^s integrated against the
  // squared transform, summed shell by shell in closed form.
  double norm_sobolev(double s) const {
    const RadialFieldT hat = fourier();
    const double pd = p_.as_double();
    CompensatedSum acc;
    const int inner = hat.j_min();
    const double bv = detail::scalar_to_double(hat.ball_value());
    if (inner <= 0) {
      acc.add(bv * bv * std::pow(pd, inner));
    } else {
      // Inner ball reaches outside Z_p: weighted measure 1 + sum_{k=1}^{inner} p^{ks} mu(S_k).
      double weighted = 1.0;
      for (int k = 1; k <= inner; ++k) {
        weighted += std::pow(pd, static_cast<double>(k) * s) * std::pow(pd, k) * (1.0 - 1.0 / pd);
      }
      acc.add(bv * bv * weighted);
    }
    for (int k = inner + 1; k <= hat.j_max(); ++k) {
      const double v = detail::scalar_to_double(hat.value_at_shell(k));
      acc.add(v * v * bracket_weight(p_, k, s) * std::pow(pd, k) * (1.0 - 1.0 / pd));
    }
    return std::sqrt(std::max(0.0, acc.value()));
  }

  // Restrict to a new window; returns the restricted field together with the
  // L2 norm of what was dropped, so callers can maintain an error budget.
  std::pair<RadialFieldT, double> retruncate(int new_j_min, int new_j_max) const {
    if (new_j_min > new_j_max) throw std::invalid_argument("retruncate: invalid window");
    std::vector<Scalar> shells;
    shells.reserve(static_cast<std::size_t>(new_j_max - new_j_min));
    for (int k = new_j_min + 1; k <= new_j_max; ++k) shells.push_back(value_at_shell(k));
    const Scalar new_ball = value_at_shell(new_j_min);
    RadialFieldT out(p_, new_j_min, new_j_max, new_ball, std::move(shells));

    CompensatedSum lost;
    // Everything above the new window is dropped. If the cut reaches into the
    // old inner ball, the ball annulus (new_j_max, j_min] goes too.
    if (new_j_max < j_min_) {
      const double bv = detail::scalar_to_double(ball_value_);
      lost.add(bv * bv * (std::pow(p_.as_double(), j_min_) - std::pow(p_.as_double(), new_j_max)));
    }
    for (int k = std::max(new_j_max + 1, j_min_ + 1); k <= j_max_; ++k) {
      const double v = detail::scalar_to_double(value_at_shell(k));
      lost.add(v * v * detail::scalar_to_double(measure_shell(k)));
    }
    // Structure below the new inner ball collapsed onto a single value.
    if (new_j_min > j_min_) {
      const double nb = detail::scalar_to_double(new_ball);
      const double db = detail::scalar_to_double(ball_value_) - nb;
      lost.add(db * db * std::pow(p_.as_double(), j_min_));
      for (int k = j_min_ + 1; k <= std::min(new_j_min, j_max_); ++k) {
        const double d = detail::scalar_to_double(value_at_shell(k)) - nb;
        lost.add(d * d * detail::scalar_to_double(measure_shell(k)));
      }
    }
    return {std::move(out), std::sqrt(std::max(0.0, lost.value()))};
  }

  RadialFieldT<double> to_double_field() const {
    std::vector<double> shells;
    shells.reserve(shell_values_.size());
    for (const Scalar& v : shell_values_) shells.push_back(detail::scalar_to_double(v));
    return RadialFieldT<double>(p_, j_min_, j_max_, detail::scalar_to_double(ball_value_), std::move(shells));
  }

 private:
  Scalar measure_shell(int k) const {
    if constexpr (std::is_same_v<Scalar, Rational>) {
      return shell_measure(p_, k);
    } else {
      return std::pow(p_.as_double(), k) * (1.0 - 1.0 / p_.as_double());
    }
  }

  Prime p_;
  int j_min_;
  int j_max_;
  Scalar ball_value_;
  std::vector<Scalar> shell_values_;
};

using RadialField = RadialFieldT<double>;
using ExactRadialField = RadialFieldT<Rational>;

// a*f + b*g on the merged window (values extend by 0 outside support and by
// the ball value inside the inner ball, so the combination is exact).
template <class Scalar>
RadialFieldT<Scalar> linear_combine(const Scalar& a, const RadialFieldT<Scalar>& f, const Scalar& b, const RadialFieldT<Scalar>& g) {
  if (f.prime() != g.prime()) throw std::invalid_argument("linear_combine: mismatched primes");
  const int j_min = std::min(f.j_min(), g.j_min());
  const int j_max = std::max(f.j_max(), g.j_max());
  std::vector<Scalar> shells;
  shells.reserve(static_cast<std::size_t>(j_max - j_min));
  for (int k = j_min + 1; k <= j_max; ++k) shells.push_back(a * f.value_at_shell(k) + b * g.value_at_shell(k));
  return RadialFieldT<Scalar>(f.prime(), j_min, j_max, a * f.value_at_shell(j_min) + b * g.value_at_shell(j_min), std::move(shells));
}

// Exact pointwise product on the merged window.
template <class Scalar>
RadialFieldT<Scalar> pointwise_product(const RadialFieldT<Scalar>& f, const RadialFieldT<Scalar>& g) {
  if (f.prime() != g.prime()) throw std::invalid_argument("pointwise_product: mismatched primes");
  const int j_min = std::min(f.j_min(), g.j_min());
  const int j_max = std::max(f.j_max(), g.j_max());
  std::vector<Scalar> shells;
  shells.reserve(static_cast<std::size_t>(j_max - j_min));
  for (int k = j_min + 1; k <= j_max; ++k) shells.push_back(f.value_at_shell(k) * g.value_at_shell(k));
  return RadialFieldT<Scalar>(f.prime(), j_min, j_max, f.value_at_shell(j_min) * g.value_at_shell(j_min), std::move(shells));
}

// Largest |f - g| over spheres covering both windows (plus one shell beyond).
template <class Scalar>
double max_abs_difference(const RadialFieldT<Scalar>& f, const RadialFieldT<Scalar>& g) {
  const int lo = std::min(f.j_min(), g.j_min());
  const int hi = std::max(f.j_max(), g.j_max()) + 1;
  double m = 0.0;
  for (int k = lo; k <= hi; ++k) {
    m = std::max(m, std::abs(detail::scalar_to_double(f.value_at_shell(k)) - detail::scalar_to_double(g.value_at_shell(k))));
  }
  return m;
}

template <class Scalar>
double l2_difference(const RadialFieldT<Scalar>& f, const RadialFieldT<Scalar>& g) {
  return linear_combine(Scalar(1), f, Scalar(-1), g).norm_l2();
}

// A(1, s) with A^2 = 1 + (1 - 1/p) p^{1-s} / (1 - p^{1-s}); the constant in
// ||f^||_1 <= A(1,s) ||f||_s. Requires s > 1.
double embedding_constant(const Prime& p, double s);

}  // namespace nagumo
