#include "nagumo/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace nagumo {

PDTerms::PDTerms(std::vector<PDTerm> terms) : terms_(std::move(terms)) {
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].exponent < 0.0) throw std::invalid_argument("PDTerms: exponents must be >= 0");
    if (i > 0 && terms_[i].exponent <= terms_[i - 1].exponent) {
      throw std::invalid_argument("PDTerms: exponents must be strictly increasing");
    }
  }
}

double PDTerms::degree() const { return terms_.empty() ? 0.0 : terms_.back().exponent; }

double PDTerms::coef_abs_sum() const {
  double s = 0.0;
  for (const PDTerm& t : terms_) s += std::abs(t.coef);
  return s;
}

OperatorResult apply_multiplier(const RadialField& f, const ShellSymbol& symbol, double symbol_limit, const TailPolicy& tail) {
  if (tail.tail_depth < 1) throw std::invalid_argument("apply_multiplier: tail_depth must be >= 1");
  const RadialField hat = f.fourier();
  const int inner = hat.j_min();
  const int outer = hat.j_max();
  const int deep = inner - tail.tail_depth;
  const double hat_ball = hat.ball_value();

  std::vector<double> shells;
  shells.reserve(static_cast<std::size_t>(outer - deep));
  for (int k = deep + 1; k <= inner; ++k) shells.push_back(symbol(k) * hat_ball);
  for (int k = inner + 1; k <= outer; ++k) shells.push_back(symbol(k) * hat.value_at_shell(k));
  RadialField scaled_hat(f.prime(), deep, outer, symbol_limit * hat_ball, std::move(shells));

  // Defect lives on the deep ball where the true symbol still varies; its L2
  // size is at most sup |m - limit| there times the deep-ball L2 mass. The
  // sup is probed at the boundary shells, relying on monotone decay below.
  double sup_dev = 0.0;
  for (int k = deep; k > deep - 8; --k) sup_dev = std::max(sup_dev, std::abs(symbol(k) - symbol_limit));
  const double error = std::abs(hat_ball) * sup_dev * std::pow(f.prime().as_double(), 0.5 * deep);

  return {scaled_hat.fourier(), error};
}

OperatorResult taibleson_spectral(const RadialField& f, double alpha, const TailPolicy& tail) {
  if (alpha <= 0.0) throw std::invalid_argument("taibleson_spectral: alpha must be > 0");
  const double p = f.prime().as_double();
  return apply_multiplier(
      f, [p, alpha](int k) { return std::pow(p, alpha * static_cast<double>(k)); }, 0.0, tail);
}

RadialField taibleson_kochubei(const RadialField& f, double alpha, const TailPolicy& tail) {
  if (alpha <= 0.0) throw std::invalid_argument("taibleson_kochubei: alpha must be > 0");
  if (tail.tail_depth < 1) throw std::invalid_argument("taibleson_kochubei: tail_depth must be >= 1");
  const double p = f.prime().as_double();
  const int a = f.j_min();
  const int b = f.j_max();
  const int b_out = b + tail.tail_depth;
  const double front = (1.0 - std::pow(p, alpha)) / (1.0 - std::pow(p, -alpha - 1.0));
  const double haar = 1.0 - 1.0 / p;
  const double ratio = std::pow(p, -alpha);

  // Prefix ball integrals I_K for K in [a-1, b].
  std::vector<double> prefix(static_cast<std::size_t>(b - a + 2));
  {
    CompensatedSum acc;
    acc.add(f.ball_value() * std::pow(p, a - 1));
    prefix[0] = acc.value();
    acc = CompensatedSum{};
    acc.add(f.ball_value() * std::pow(p, a));
    prefix[1] = acc.value();
    for (int k = a + 1; k <= b; ++k) {
      acc.add(f.value_at_shell(k) * std::pow(p, k) * haar);
      prefix[static_cast<std::size_t>(k - a + 1)] = acc.value();
    }
  }
  const auto ball_integral = [&](int K) {
    if (K < a - 1) return f.ball_value() * std::pow(p, K);
    return prefix[static_cast<std::size_t>(std::min(K, b) - a + 1)];
  };

  // Suffix sums T_j = sum_{l > j} p^{-l alpha} f(S_l) over the window.
  std::vector<double> suffix(static_cast<std::size_t>(b - a + 2), 0.0);
  for (int j = b - 1; j >= a - 1; --j) {
    suffix[static_cast<std::size_t>(j - a + 1)] =
        suffix[static_cast<std::size_t>(j - a + 2)] + std::pow(p, -alpha * (j + 1)) * f.value_at_shell(j + 1);
  }
  const auto tail_sum = [&](int j) {  // sum_{l > j} p^{-l alpha} f(S_l), exact geometric tail beyond b
    return j >= b ? 0.0 : suffix[static_cast<std::size_t>(j - a + 1)];
  };
  const auto weight_tail = [&](int j) {  // sum_{l > j} p^{-l alpha}
    return std::pow(p, -alpha * (j + 1)) / (1.0 - ratio);
  };

  // Value on the inner ball (differences vanish at scales where f is flat).
  const double ball_out = front * haar * (tail_sum(a) - f.ball_value() * weight_tail(a));

  std::vector<double> shells(static_cast<std::size_t>(b_out - a));
  for (int m = a + 1; m <= b_out; ++m) {
    const double fm = f.value_at_shell(m);
    // Spheres |y| > |x| contribute value differences; |y| = |x| folds the
    // sphere around x onto the ball B_{m-1} minus the matching-leading-digit
    // part, leaving the ball integral against the centered value.
    const double far_part = haar * (tail_sum(m) - fm * weight_tail(m));
    const double equal_part = std::pow(p, -(alpha + 1.0) * m) * (ball_integral(m - 1) - fm * std::pow(p, m - 1));
    shells[static_cast<std::size_t>(m - a - 1)] = front * (far_part + equal_part);
  }
  return RadialField(f.prime(), a, b_out, ball_out, std::move(shells));
}

std::complex<double> taibleson_pointwise(const Prime& p, double alpha,
                                         const std::function<std::complex<double>(const Rational&)>& g,
                                         int constancy_exp, int support_exp, const Rational& x) {
  if (alpha <= 0.0) throw std::invalid_argument("taibleson_pointwise: alpha must be > 0");
  const double pd = p.as_double();
  const double front = (1.0 - std::pow(pd, alpha)) / (1.0 - std::pow(pd, -alpha - 1.0));
  const double haar = 1.0 - 1.0 / pd;
  const std::complex<double> gx = g(x);

  const long long ordx = padic_order(x, p);
  const int x_exp = (ordx == kOrderInfinity) ? support_exp : static_cast<int>(-ordx);
  const int last_explicit = std::max(support_exp, x_exp);

  std::complex<double> acc(0.0, 0.0);
  std::vector<int> digits;
  for (int l = constancy_exp + 1; l <= last_explicit; ++l) {
    // Representatives of B_{constancy} cosets tiling the sphere |y| = p^l:
    // y = sum_{i=-l}^{-constancy-1} d_i p^i with d_{-l} != 0.
    const int ndig = l - constancy_exp;
    digits.assign(static_cast<std::size_t>(ndig), 0);
    digits[0] = 1;
    std::complex<double> sphere(0.0, 0.0);
    while (true) {
      Rational y(0);
      for (int i = ndig - 1; i >= 0; --i) y = y * Rational(p.value()) + Rational(digits[static_cast<std::size_t>(i)]);
      y *= rational_pow(Rational(p.value()), -l);
      sphere += g(x - y) - gx;
      // Odometer over digits, keeping the leading digit nonzero.
      int pos = 0;
      while (pos < ndig) {
        ++digits[static_cast<std::size_t>(pos)];
        const int lo = (pos == 0) ? 1 : 0;
        if (digits[static_cast<std::size_t>(pos)] < p.value()) break;
        digits[static_cast<std::size_t>(pos)] = lo;
        ++pos;
      }
      if (pos == ndig) break;
    }
    acc += std::pow(pd, -(alpha + 1.0) * l) * sphere * std::pow(pd, constancy_exp);
  }
  // Beyond the support and |x|, g(x - y) = 0 on the whole sphere.
  const double geo = std::pow(pd, -alpha * (last_explicit + 1)) / (1.0 - std::pow(pd, -alpha));
  acc -= gx * haar * geo;
  return front * acc;
}

OperatorResult apply_pd(const RadialField& f, const PDTerms& pd, const TailPolicy& tail) {
  RadialField acc = RadialField::zero(f.prime(), f.j_min(), f.j_max());
  double err = 0.0;
  for (const PDTerm& term : pd.terms()) {
    if (term.exponent == 0.0) {
      acc = linear_combine(1.0, acc, term.coef, f);
    } else {
      OperatorResult part = taibleson_spectral(f, term.exponent, tail);
      acc = linear_combine(1.0, acc, term.coef, part.field);
      err += std::abs(term.coef) * part.error_bound;
    }
  }
  return {std::move(acc), err};
}

OperatorResult semigroup_apply(const RadialField& f, double t, double gamma, double alpha, double beta, const TailPolicy& tail) {
  if (t < 0.0) throw std::invalid_argument("semigroup_apply: t must be >= 0");
  if (gamma <= 0.0) throw std::invalid_argument("semigroup_apply: gamma must be > 0");
  if (beta < 0.0) throw std::invalid_argument("semigroup_apply: beta must be >= 0");
  if (alpha <= 0.0) throw std::invalid_argument("semigroup_apply: alpha must be > 0");
  if (t == 0.0) return {f, 0.0};
  const double p = f.prime().as_double();
  const double limit = std::exp(-beta * t);
  return apply_multiplier(
      f,
      [p, t, gamma, alpha, beta](int k) {
        return std::exp(-(gamma * std::pow(p, alpha * static_cast<double>(k)) + beta) * t);
      },
      limit, tail);
}

double smoothing_bound(double lambda, double t, double gamma, double alpha, double beta) {
  if (t <= 0.0) throw std::invalid_argument("smoothing_bound: t must be > 0");
  if (lambda < 0.0) throw std::invalid_argument("smoothing_bound: lambda must be >= 0");
  const double decay = std::exp(-beta * t);
  if (lambda == 0.0) return 2.0 * decay;
  const double q = lambda / (2.0 * alpha);
  return decay * (1.0 + std::exp(-q) * std::pow(lambda / (2.0 * alpha * gamma * t), q));
}

}  // namespace nagumo
