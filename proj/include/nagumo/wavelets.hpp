#pragma once

#include <complex>
#include <optional>

#include "nagumo/operators.hpp"
#include "nagumo/radial_field.hpp"

namespace nagumo {

// Index (r, n, j) of the compactly supported wavelet
//   W_{rnj}(x) = p^{-r/2} chi_p(p^{-1} j (p^r x - n)) 1{ |p^r x - n|_p <= 1 },
// where n in [0,1) has a p-power denominator (a coset of Q_p / Z_p) and
// 1 <= j <= p-1. These are joint eigenfunctions of every radial multiplier:
// a symbol m acts on W_{rnj} as the scalar m at |xi| = p^{1-r}.
struct WaveletIndex {
  int r = 0;
  Rational n = Rational(0);
  int j = 1;
};

std::complex<double> wavelet_eval(const Prime& p, const WaveletIndex& idx, const Rational& x);
std::complex<double> wavelet_eval(const Prime& p, const WaveletIndex& idx, const PadicPoint& x);

// Eigenvalue of the radial multiplier `symbol` on any W_{rnj}: symbol(1 - r).
double multiplier_eigenvalue(const ShellSymbol& symbol, int r);

// The signed comparison weight w(x) = Re( W_{r,0,1}(x)^2 ), an eigenfunction
// of the Taibleson operator with eigenvalue p^{(1-r) alpha}. Its sphere
// integrals are exact rationals; needs p >= 3 (the square is the j = 2
// wavelet, rescaled) and r <= 0.
class BlowupWeight {
 public:
  BlowupWeight(const Prime& p, int r, double alpha);

  const Prime& prime() const { return p_; }
  int r() const { return r_; }
  double alpha() const { return alpha_; }
  double eigenvalue() const { return eigenvalue_; }
  int support_exp() const { return r_; }
  int constancy_exp() const { return r_ - 1; }

  double value(const Rational& x) const;

  // Integral of w over the sphere S_k / the ball B_k (exact).
  Rational shell_integral(int k) const;
  Rational ball_integral(int k) const;

  // G = integral of u * w, exact given the integral tables.
  double pairing(const RadialField& u) const;

  // Diagnostic pairing against |W_{r,0,1}|^2 dx, a probability measure: the
  // average of u over the support ball. Nonnegative for nonnegative u.
  double positive_pairing(const RadialField& u) const;

 private:
  Prime p_;
  int r_;
  double alpha_;
  double eigenvalue_;
};

struct ComparisonParams {
  double gamma = 1.0;
  double alpha = 0.2;
  double alpha1 = 0.1;
  double beta = 0.0;
  long long p = 3;
  int r = 0;
};

// H(y) = -gamma p^{(1-r) alpha} y + F(y) + p^{(1-r) alpha1} y^3 with the
// reaction F(y) = -y^3 + (beta+1) y^2 - beta y; convex for y >= 0, r <= 0.
double comparison_H(double y, const ComparisonParams& cp);
double comparison_H_second(double y, const ComparisonParams& cp);

// First time the adaptive integration of g' = H(g), g(0) = g0 reaches the
// threshold; +infinity when the orbit is captured by a stable root of H.
// Steps are RK4 with relative size control 0.1 and halving near sign changes.
double ode_blowup_time(double g0, const ComparisonParams& cp, double threshold, double dt0);

}  // namespace nagumo
