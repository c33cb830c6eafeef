#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "nagumo/radial_field.hpp"

namespace nagumo {

// P(D) = sum_j coef_j D^{exp_j} with 0 <= exp_0 < exp_1 < ... ; an exponent of
// 0 acts as the identity. degree() is the largest exponent.
struct PDTerm {
  double coef = 0.0;
  double exponent = 0.0;
};

class PDTerms {
 public:
  PDTerms() = default;
  explicit PDTerms(std::vector<PDTerm> terms);

  const std::vector<PDTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  double degree() const;
  double coef_abs_sum() const;

 private:
  std::vector<PDTerm> terms_;
};

// Tail handling for spectral multipliers: how many extra inner shells of the
// transform are materialized before the deep ball is closed off with the
// multiplier's zero-frequency limit.
struct TailPolicy {
  int tail_depth = 40;
  double error_budget = 0.0;
};

struct OperatorResult {
  RadialField field;
  double error_bound = 0.0;  // rigorous L2 bound on the replaced-tail defect
};

using ShellSymbol = std::function<double(int)>;

// F^{-1}( m(|xi|) F f ) for a radial symbol m given shell-wise; symbol_limit
// is m's limit as |xi| -> 0 and |m - symbol_limit| must be nonincreasing
// toward 0 below the materialized shells (true for every symbol used here).
OperatorResult apply_multiplier(const RadialField& f, const ShellSymbol& symbol, double symbol_limit, const TailPolicy& tail);

// Taibleson operator, spectral route: symbol |xi|^alpha.
OperatorResult taibleson_spectral(const RadialField& f, double alpha, const TailPolicy& tail);

// Taibleson operator via the hypersingular integral, evaluated exactly on
// radial step functions (the series over spheres where f vanishes is summed
// in closed form). Output window matches the spectral route.
RadialField taibleson_kochubei(const RadialField& f, double alpha, const TailPolicy& tail);

// Pointwise hypersingular evaluation for an arbitrary locally constant g with
// compact support: g is constant on cosets of B_{constancy_exp} and vanishes
// outside B_{support_exp}. Sphere integrals are coset sums at the constancy
// resolution; the tail past the support is summed in closed form.
std::complex<double> taibleson_pointwise(const Prime& p, double alpha,
                                         const std::function<std::complex<double>(const Rational&)>& g,
                                         int constancy_exp, int support_exp, const Rational& x);

OperatorResult apply_pd(const RadialField& f, const PDTerms& pd, const TailPolicy& tail);

// V(t) f = F^{-1}( exp(-(gamma |xi|^alpha + beta) t) F f ), t >= 0.
OperatorResult semigroup_apply(const RadialField& f, double t, double gamma, double alpha, double beta, const TailPolicy& tail);

// Bound for || V(t) f ||_{s+lambda} <= bound * || f ||_s, any s:
//   exp(-beta t) (1 + exp(-lambda/(2 alpha)) (lambda / (2 alpha gamma t))^{lambda/(2 alpha)})
// The lambda = 0 convention puts the parenthesis at 2; the sharper lambda = 0
// contract exp(-beta t) is the semigroup contraction itself.
double smoothing_bound(double lambda, double t, double gamma, double alpha, double beta);

}  // namespace nagumo
