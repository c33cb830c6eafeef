#include "nagumo/wavelets.hpp"

#include <cmath>
#include <stdexcept>

namespace nagumo {

namespace {

void validate_index(const Prime& p, const WaveletIndex& idx) {
  if (idx.j < 1 || idx.j > p.value() - 1) throw std::invalid_argument("WaveletIndex: j must lie in {1,...,p-1}");
  if (idx.n < 0 || idx.n >= 1) throw std::invalid_argument("WaveletIndex: n must lie in [0,1)");
  if (idx.n != 0 && padic_order(idx.n, p) >= 0) {
    throw std::invalid_argument("WaveletIndex: n must have a p-power denominator");
  }
  if (idx.n != 0) {
    const Rational unit = idx.n * rational_pow(Rational(p.value()), -padic_order(idx.n, p));
    if (denominator(unit) != 1) throw std::invalid_argument("WaveletIndex: n must have a p-power denominator");
  }
}

}  // namespace

std::complex<double> wavelet_eval(const Prime& p, const WaveletIndex& idx, const Rational& x) {
  validate_index(p, idx);
  const Rational t = rational_pow(Rational(p.value()), idx.r) * x - idx.n;
  if (t != 0 && padic_order(t, p) < 0) return {0.0, 0.0};  // outside the support ball
  const Rational arg = Rational(idx.j) * t / Rational(p.value());
  const double scale = std::pow(p.as_double(), -0.5 * idx.r);
  return scale * char_eval(p, arg);
}

std::complex<double> wavelet_eval(const Prime& p, const WaveletIndex& idx, const PadicPoint& x) {
  return wavelet_eval(p, idx, x.to_rational());
}

double multiplier_eigenvalue(const ShellSymbol& symbol, int r) { return symbol(1 - r); }

BlowupWeight::BlowupWeight(const Prime& p, int r, double alpha) : p_(p), r_(r), alpha_(alpha) {
  if (p.value() < 3) throw std::invalid_argument("BlowupWeight: needs p >= 3 (the squared wavelet is the j = 2 one)");
  if (r > 0) throw std::invalid_argument("BlowupWeight: r must be <= 0");
  if (alpha <= 0.0) throw std::invalid_argument("BlowupWeight: alpha must be > 0");
  eigenvalue_ = std::pow(p.as_double(), (1.0 - r) * alpha);
}

double BlowupWeight::value(const Rational& x) const {
  const std::complex<double> w1 = wavelet_eval(p_, WaveletIndex{r_, Rational(0), 1}, x);
  return (w1 * w1).real();
}

Rational BlowupWeight::shell_integral(int k) const {
  // w = p^{-r} chi_p(2 p^{r-1} x) on its support; the frequency has norm
  // p^{1-r}, so sphere integrals follow the three-case character formula.
  if (k > r_) return Rational(0);
  const Rational amp = rational_pow(Rational(p_.value()), -r_);
  return amp * char_shell_integral(p_, 1 - r_, k);
}

Rational BlowupWeight::ball_integral(int k) const {
  if (k >= r_) return Rational(0);  // the full character integral cancels
  const Rational amp = rational_pow(Rational(p_.value()), -r_);
  return amp * char_ball_integral(p_, 1 - r_, k);
}

double BlowupWeight::pairing(const RadialField& u) const {
  if (u.prime() != p_) throw std::invalid_argument("BlowupWeight::pairing: mismatched primes");
  CompensatedSum acc;
  acc.add(u.ball_value() * to_double(ball_integral(u.j_min())));
  for (int k = u.j_min() + 1; k <= u.j_max(); ++k) {
    acc.add(u.value_at_shell(k) * to_double(shell_integral(k)));
  }
  return acc.value();
}

double BlowupWeight::positive_pairing(const RadialField& u) const {
  if (u.prime() != p_) throw std::invalid_argument("BlowupWeight::positive_pairing: mismatched primes");
  CompensatedSum acc;
  const double p = p_.as_double();
  acc.add(u.ball_value() * std::pow(p, std::min(r_, u.j_min())));
  for (int k = u.j_min() + 1; k <= std::min(r_, u.j_max()); ++k) {
    acc.add(u.value_at_shell(k) * std::pow(p, k) * (1.0 - 1.0 / p));
  }
  return std::pow(p, -r_) * acc.value();
}

double comparison_H(double y, const ComparisonParams& cp) {
  const double pd = static_cast<double>(cp.p);
  const double diffusion = cp.gamma * std::pow(pd, (1.0 - cp.r) * cp.alpha);
  const double forcing = std::pow(pd, (1.0 - cp.r) * cp.alpha1);
  const double reaction = -y * y * y + (cp.beta + 1.0) * y * y - cp.beta * y;
  return -diffusion * y + reaction + forcing * y * y * y;
}

double comparison_H_second(double y, const ComparisonParams& cp) {
  const double pd = static_cast<double>(cp.p);
  const double forcing = std::pow(pd, (1.0 - cp.r) * cp.alpha1);
  return 6.0 * y * (forcing - 1.0) + 2.0 * (cp.beta + 1.0);
}

namespace {

double comparison_H_prime(double y, const ComparisonParams& cp) {
  const double pd = static_cast<double>(cp.p);
  const double diffusion = cp.gamma * std::pow(pd, (1.0 - cp.r) * cp.alpha);
  const double forcing = std::pow(pd, (1.0 - cp.r) * cp.alpha1);
  return -diffusion - 3.0 * y * y + 2.0 * (cp.beta + 1.0) * y - cp.beta + 3.0 * forcing * y * y;
}

double rk4_step(double g, double dt, const ComparisonParams& cp) {
  const double k1 = comparison_H(g, cp);
  const double k2 = comparison_H(g + 0.5 * dt * k1, cp);
  const double k3 = comparison_H(g + 0.5 * dt * k2, cp);
  const double k4 = comparison_H(g + dt * k3, cp);
  return g + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Root of H between a and b (H changes sign there).
double bisect_root(double a, double b, const ComparisonParams& cp) {
  double fa = comparison_H(a, cp);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (a + b);
    const double fm = comparison_H(mid, cp);
    if (fm == 0.0) return mid;
    if ((fa < 0.0) == (fm < 0.0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

double ode_blowup_time(double g0, const ComparisonParams& cp, double threshold, double dt0) {
  if (!(threshold > g0)) throw std::invalid_argument("ode_blowup_time: threshold must exceed g0");
  if (dt0 <= 0.0) throw std::invalid_argument("ode_blowup_time: dt0 must be > 0");
  constexpr double kInf = std::numeric_limits<double>::infinity();
  constexpr double kRootTol = 1e-12;

  double g = g0;
  double t = 0.0;
  double dt = dt0;
  for (long long step = 0; step < 200'000'000LL; ++step) {
    const double h = comparison_H(g, cp);
    if (std::abs(h) < kRootTol) return kInf;  // equilibrium capture
    const double scale = std::max(std::abs(g), 1e-300);
    while (std::abs(h) * dt > 0.1 * scale) dt *= 0.5;
    if (std::abs(h) * dt < 0.04 * scale) dt *= 2.0;

    double g_next = rk4_step(g, dt, cp);
    const double h_next = comparison_H(g_next, cp);
    if ((h > 0.0) != (h_next > 0.0)) {
      // The step would jump across a root; the continuous orbit stops there.
      const double root = bisect_root(std::min(g, g_next), std::max(g, g_next), cp);
      if (comparison_H_prime(root, cp) < 0.0) return kInf;
      dt *= 0.5;  // unstable root in between: refine instead of stepping over
      continue;
    }
    g = g_next;
    t += dt;
    if (g >= threshold) return t;
    if (!std::isfinite(g)) return t;  // numeric overflow past the threshold
  }
  return kInf;
}

}  // namespace nagumo
