#include "nagumo/checks.hpp"

#include <chrono>
#include <cmath>
#include <complex>

#include "nagumo/random_field.hpp"

namespace nagumo {

namespace {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

struct Tally {
  long long cases = 0;
  long long violations = 0;
  double worst = 0.0;

  // Record one inequality instance lhs <= rhs (+ slack handled by caller).
  void expect_le(double lhs, double rhs) {
    ++cases;
    if (!(lhs <= rhs) || !std::isfinite(lhs)) {
      ++violations;
      worst = std::max(worst, lhs - rhs);
    }
  }

  void expect_true(bool ok, double magnitude = 1.0) {
    ++cases;
    if (!ok) {
      ++violations;
      worst = std::max(worst, magnitude);
    }
  }

  CheckResult finish(std::string name, const Stopwatch& clock, std::string note = {}) const {
    return {std::move(name), cases, violations, worst, clock.seconds(), std::move(note)};
  }
};

RadialField normalized_sobolev(RadialField f, double s, double target = 1.0) {
  const double n = f.norm_sobolev(s);
  if (n < 1e-12) return RadialField::ball_indicator(f.prime(), 0).scaled(target);
  return f.scaled(target / n);
}

// Model parameters with every constant finite: s - 2 delta > 1.05, delta < alpha.
ModelParams random_params(Rng& rng, bool force_zero_degree = false) {
  const Prime p = random_prime(rng);
  const double alpha = rng.uniform(0.3, 1.4);
  std::vector<PDTerm> terms;
  if (force_zero_degree) {
    if (rng.coin(0.5)) terms.push_back({rng.uniform(-1.0, 1.0), 0.0});
  } else {
    const int n_terms = rng.uniform_int(0, 2);
    double expo = rng.coin(0.4) ? 0.0 : rng.uniform(0.02, 0.2);
    for (int i = 0; i < n_terms; ++i) {
      terms.push_back({rng.uniform(-1.2, 1.2), expo});
      expo += rng.uniform(0.05, 0.5 * (alpha - expo) + 0.05);
      if (expo >= 0.85 * alpha) break;
    }
  }
  PDTerms pd(terms);
  ModelParams params{p,
                     rng.uniform(0.3, 2.0),
                     alpha,
                     rng.uniform(0.0, 1.5),
                     rng.uniform_int(1, 3),
                     pd,
                     0.0,
                     true};
  params.s = 2.0 * params.delta() + 1.05 + rng.uniform(0.1, 1.2);
  return params;
}

// Euler march without window clipping (the window grows with each operator
// application); used where the discrete Gronwall envelope is asserted.
std::vector<RadialField> raw_euler(const RadialField& f0, const ModelParams& params, const TailPolicy& tail,
                                   double dt, int steps) {
  std::vector<RadialField> states;
  states.reserve(static_cast<std::size_t>(steps) + 1);
  states.push_back(f0);
  for (int i = 0; i < steps; ++i) {
    RhsResult r = rhs(states.back(), params, tail, Method::EulerSpectral);
    states.push_back(linear_combine(1.0, states.back(), dt, r.field));
  }
  return states;
}

// Coset-sum integral of fn over the ball B_M at constancy resolution ell.
std::complex<double> integrate_ball(const Prime& p, int support_exp, int constancy_exp,
                                    const std::function<std::complex<double>(const Rational&)>& fn) {
  const int ndig = support_exp - constancy_exp;
  if (ndig < 0) throw std::invalid_argument("integrate_ball: resolution coarser than the ball");
  std::vector<int> digits(static_cast<std::size_t>(ndig), 0);
  const Rational coset_measure = ball_measure(p, constancy_exp);
  std::complex<double> acc(0.0, 0.0);
  while (true) {
    Rational x(0);
    for (int i = ndig - 1; i >= 0; --i) x = x * Rational(p.value()) + Rational(digits[static_cast<std::size_t>(i)]);
    x *= rational_pow(Rational(p.value()), -support_exp);
    acc += fn(x);
    int pos = 0;
    while (pos < ndig) {
      ++digits[static_cast<std::size_t>(pos)];
      if (digits[static_cast<std::size_t>(pos)] < p.value()) break;
      digits[static_cast<std::size_t>(pos)] = 0;
      ++pos;
    }
    if (pos == ndig) break;
  }
  return acc * to_double(coset_measure);
}

}  // namespace

CheckResult check_haar_identities(std::uint64_t seed) {
  Stopwatch clock;
  Tally tally;
  (void)seed;
  for (long long pv : {2LL, 3LL, 5LL, 7LL}) {
    const Prime p(pv);
    for (int K = -6; K <= 6; ++K) {
      // Partial sums of sphere measures reach the ball measure exactly.
      for (int j0 = K - 6; j0 <= K; ++j0) {
        Rational partial(0);
        for (int j = j0; j <= K; ++j) partial += shell_measure(p, j);
        tally.expect_true(ball_measure(p, K) - partial == ball_measure(p, j0 - 1));
      }
      // Character shell integrals telescope to the ball integral.
      for (long long v = -4; v <= 6; ++v) {
        const int K0 = K - 7;
        Rational total = char_ball_integral(p, v, K0);
        for (int k = K0 + 1; k <= K; ++k) total += char_shell_integral(p, v, k);
        tally.expect_true(total == char_ball_integral(p, v, K));
      }
    }
    // Brute-force coset oracle for the sphere integral of chi_p(a x).
    for (long long v = -2; v <= 2; ++v) {
      const Rational a = rational_pow(Rational(p.value()), -v);  // |a|_p = p^v
      for (int k = -2; k <= 2; ++k) {
        const int res = std::min(-static_cast<int>(v), k - 1);  // chi(a x) constant on B_res cosets
        auto chi = [&](const Rational& x) { return char_eval(p, a * x); };
        const std::complex<double> ball_k = integrate_ball(p, k, res, chi);
        const std::complex<double> ball_km1 = integrate_ball(p, k - 1, res, chi);
        const std::complex<double> sphere = ball_k - ball_km1;
        const double expected = to_double(char_shell_integral(p, v, k));
        tally.expect_le(std::abs(sphere - std::complex<double>(expected, 0.0)), 1e-11);
      }
    }
  }
  return tally.finish("haar-shell-identities", clock);
}

CheckResult check_character_properties(std::uint64_t seed) {
  Stopwatch clock;
  Tally tally;
  Rng rng(seed ^ 0x22ull);
  for (int i = 0; i < 500; ++i) {
    const Prime p = random_prime(rng);
    auto random_point = [&]() {
      const int len = rng.uniform_int(0, 6);
      std::vector<int> digits;
      for (int d = 0; d < len; ++d) digits.push_back(rng.uniform_int(0, static_cast<int>(p.value()) - 1));
      while (!digits.empty() && digits.front() == 0) digits.erase(digits.begin());
      return PadicPoint(p, rng.uniform_int(-6, 4), digits);
    };
    const PadicPoint x = random_point();
    const PadicPoint y = random_point();
    const std::complex<double> lhs = char_eval(p, x + y);
    const std::complex<double> rhs_v = char_eval(p, x) * char_eval(p, y);
    tally.expect_le(std::abs(lhs - rhs_v), 1e-14);
    tally.expect_le(std::abs(std::abs(char_eval(p, x)) - 1.0), 1e-14);
  }
  return tally.finish("character-multiplicativity", clock);
}

CheckResult check_fourier_exactness(std::uint64_t seed, int cases) {
  Stopwatch clock;
  Tally tally;
  Rng rng(seed ^ 0x33ull);
  for (int i = 0; i < cases; ++i) {
    const Prime p = random_prime(rng);
    const RadialField f = random_field(rng, p);
    const double scale = std::max(1.0, f.norm_l2());
    const RadialField hat = f.fourier();
    // Involution.
    tally.expect_le(max_abs_difference(hat.fourier(), f), 1e-12 * std::max(1.0, f.norm_sup()));
    // Parseval.
    tally.expect_le(std::abs(f.norm_l2() - hat.norm_l2()), 1e-12 * scale);
    // The transform at zero frequency is the integral.
    tally.expect_le(std::abs(hat.value_at_shell(hat.j_min()) - f.integral()), 1e-12 * scale);
    // Ball indicators map to scaled ball indicators.
    const int k = rng.uniform_int(-6, 6);
    const RadialField ball_hat = RadialField::ball_indicator(p, k).fourier();
    const double pk = std::pow(p.as_double(), k);
    tally.expect_le(std::abs(ball_hat.value_at_shell(-k) - pk), 1e-12 * pk);
    tally.expect_le(std::abs(ball_hat.value_at_shell(-k + 1)), 1e-12 * pk);
  }
  // Exact rational involution on a few fields.
  Rng rng2(seed ^ 0x34ull);
  for (int i = 0; i < 25; ++i) {
    const Prime p = random_prime(rng2);
    const int a = rng2.uniform_int(-5, 3);
    const int b = rng2.uniform_int(a, 5);
    const ExactRadialField f = ExactRadialField::from_profile(p, a, b, [&](int) {
      return Rational(rng2.uniform_int(-20, 20), rng2.uniform_int(1, 7));
    });
    const ExactRadialField back = f.fourier().fourier();
    bool equal = back.ball_value() == f.value_at_shell(back.j_min());
    for (int k = back.j_min() + 1; k <= back.j_max(); ++k) equal = equal && (back.value_at_shell(k) == f.value_at_shell(k));
    tally.expect_true(equal);
  }
  return tally.finish("fourier-exactness", clock);
}

CheckResult check_sobolev_norms(std::uint64_t seed, int cases) {
  Stopwatch clock;
  Tally tally;
  Rng rng(seed ^ 0x44ull);
  for (int i = 0; i < cases; ++i) {
    const Prime p = random_prime(rng);
    const RadialField f = random_field(rng, p);
    // s = 0 recovers L2.
    tally.expect_le(std::abs(f.norm_sobolev(0.0) - f.norm_l2()), 1e-12 * std::max(1.0, f.norm_l2()));
    // Monotone in s.
    const double r = rng.uniform(-3.0, 3.0);
    const double s = r + rng.uniform(0.0, 3.0);
    tally.expect_le(f.norm_sobolev(r), f.norm_sobolev(s) * (1.0 + 1e-12) + 1e-15);
  }
  const Prime p3(3);
  const RadialField unit_ball = RadialField::ball_indicator(p3, 0);
  for (double s : {-2.0, 0.0, 1.5, 4.0}) {
    tally.expect_le(std::abs(unit_ball.norm_sobolev(s) - 1.0), 1e-13);
  }
  return tally.finish("sobolev-norms", clock);
}

CheckResult check_interpolation(std::uint64_t seed, int cases) {
  Stopwatch clock;
  Tally tally;
  Rng rng(seed ^ 0x55ull);
  for (int i = 0; i < cases; ++i) {
    const Prime p = random_prime(rng);
    const double s1 = rng.uniform(-2.0, 2.0);
    const double s2 = s1 + rng.uniform(0.0, 2.5);
    const double theta = rng.uniform(0.0, 1.0);
    const double s = theta * s1 + (1.0 - theta) * s2;
    const RadialField f = normalized_sobolev(random_nonzero_field(rng, p, -6, 6), s2);
    const double lhs = f.norm_sobolev(s);
    const double rhs_v = std::pow(f.norm_sobolev(s1), theta) * std::pow(f.norm_sobolev(s2), 1.0 - theta);
    tally.expect_le(lhs, rhs_v + 1e-9);
  }
  return tally.finish("interpolation-inequality", clock);
}

CheckResult check_banach_algebra(std::uint64_t seed, int cases) {
  Stopwatch clock;
  Tally tally;
  Rng rng(seed ^ 0x66ull);
  for (int i = 0; i < cases; ++i) {
    const Prime p = random_prime(rng);
    const double s = rng.uniform(1.05, 3.0);
    const RadialField f = normalized_sobolev(random_nonzero_field(rng, p, -6, 6), s);
    const RadialField g = normalized_sobolev(random_nonzero_field(rng, p, -6, 6), s);
    const double lhs = pointwise_product(f, g).norm_sobolev(s);
    const double rhs_v = 2.0 * embedding_constant(p, s) * f.norm_sobolev(s) * g.norm_sobolev(s);
    tally.expect_le(lhs, rhs_v + 1e-9);
  }
  return tally.finish("banach-algebra", clock);
}

CheckResult check_taibleson_equivalence(std::uint64_t seed, int cases) {
  Stopwatch clock;
  Tally tally;
  Rng rng(seed ^ 0x77ull);
  const TailPolicy tail{40, 0.0};
  for (int i = 0; i < cases; ++i) {
    const Prime p = random_prime(rng);
    const RadialField f = random_field(rng, p);
    for (double alpha : {0.2, 0.5, 1.0, 2.0}) {
      const OperatorResult spec = taibleson_spectral(f, alpha, tail);
      const RadialField koch = taibleson_kochubei(f, alpha, tail);
      const double denom = std::max(koch.norm_l2(), 1e-30);
      tally.expect_le(l2_difference(spec.field, koch) / denom, 1e-8);
    }
  }
  return tally.finish("taibleson-spectral-vs-kochubei", clock);
}

CheckResult check_semigroup_contraction(std::uint64_t seed, int cases) {
  Stopwatch clock;
  Tally tally;
  Rng rng(seed ^ 0x88ull);
  const TailPolicy tail{40, 0.0};
  for (int i = 0; i < cases; ++i) {
    const Prime p = random_prime(rng);
    const double s = rng.uniform(-2.0, 3.0);
    const double t = rng.uniform(1e-3, 2.0);
    const double gamma = rng.uniform(0.3, 2.0);
    const double alpha = rng.uniform(0.2, 1.5);
    const double beta = rng.uniform(0.0, 1.5);
    const RadialField f = normalized_sobolev(random_nonzero_field(rng, p, -6, 6), s);
    const OperatorResult vf = semigroup_apply(f, t, gamma, alpha, beta, tail);
    tally.expect_le(vf.field.norm_sobolev(s), std::exp(-beta * t) * f.norm_sobolev(s) + vf.error_bound + 1e-9);
  }
  return tally.finish("semigroup-contraction", clock);
}

CheckResult check_smoothing_bound(std::uint64_t seed, int cases) {
  Stopwatch clock;
  Tally tally;
  Rng rng(seed ^ 0x99ull);
  const TailPolicy tail{40, 0.0};
  for (int i = 0; i < cases; ++i) {
    const Prime p = random_prime(rng);
    const double s = rng.uniform(-1.0, 2.0);
    const double lambda = rng.coin(0.05) ? 0.0 : rng.uniform(0.0, 2.5);
    const double t = rng.uniform(1e-2, 1.0);
    const double gamma = rng.uniform(0.5, 2.0);
    const double alpha = rng.uniform(0.3, 1.5);
    const double beta = rng.uniform(0.0, 1.5);
    const RadialField f = normalized_sobolev(random_nonzero_field(rng, p, -6, 6), s);
    const OperatorResult vf = semigroup_apply(f, t, gamma, alpha, beta, tail);
    const double bound = smoothing_bound(lambda, t, gamma, alpha, beta);
    tally.expect_le(vf.field.norm_sobolev(s + lambda), bound * f.norm_sobolev(s) + vf.error_bound + 1e-9);
  }
  return tally.finish("smoothing-bound", clock);
}

CheckResult check_semigroup_law(std::uint64_t seed, int cases) {
  Stopwatch clock;
  Tally tally;
  Rng rng(seed ^ 0xaaull);
  const TailPolicy tail{40, 0.0};
  for (int i = 0; i < cases; ++i) {
    const Prime p = random_prime(rng);
    const double t = rng.uniform(0.0, 2.0);
    const double u = rng.uniform(0.0, 2.0);
    const double gamma = rng.uniform(0.3, 2.0);
    const double alpha = rng.uniform(0.2, 1.5);
    const double beta = rng.uniform(0.0, 1.0);
    const RadialField f = normalized_sobolev(random_nonzero_field(rng, p, -6, 6), 0.0);
    const OperatorResult first = semigroup_apply(f, u, gamma, alpha, beta, tail);
    const OperatorResult second = semigroup_apply(first.field, t, gamma, alpha, beta, tail);
    const OperatorResult joint = semigroup_apply(f, t + u, gamma, alpha, beta, tail);
    const double allowance = first.error_bound + second.error_bound + joint.error_bound + 1e-12;
    tally.expect_le(l2_difference(second.field, joint.field), allowance);
  }
  return tally.finish("semigroup-law", clock);
}

CheckResult check_strong_continuity(std::uint64_t seed, int cases) {
  Stopwatch clock;
  Tally tally;
  Rng rng(seed ^ 0xbbull);
  const TailPolicy tail{40, 0.0};
  for (int i = 0; i < cases; ++i) {
    const Prime p = random_prime(rng);
    const double s = rng.uniform(-1.0, 2.0);
    const double gamma = rng.uniform(0.3, 2.0);
    const double alpha = rng.uniform(0.2, 1.5);
    const double beta = rng.uniform(0.0, 1.0);
    const RadialField f = normalized_sobolev(random_nonzero_field(rng, p, -5, 5), s);
    double prev = std::numeric_limits<double>::infinity();
    double last = 0.0;
    for (int e = 1; e <= 20; ++e) {
      const double t = std::pow(2.0, -e);
      const OperatorResult vf = semigroup_apply(f, t, gamma, alpha, beta, tail);
      const double dist = linear_combine(1.0, vf.field, -1.0, f).norm_sobolev(s);
      tally.expect_le(dist, prev * (1.0 + 1e-12) + vf.error_bound + 1e-13);
      prev = dist;
      last = dist;
    }
    // 1 - e^{-x} <= x gives a linear-in-t ceiling at the finest step.
    const double top_symbol = std::pow(p.as_double(), alpha * std::max(0, -f.j_min()));
    tally.expect_le(last, std::pow(2.0, -20) * (gamma * top_symbol + beta) * f.norm_sobolev(s) * (1.0 + 1e-9) + 1e-12);
  }
  return tally.finish("semigroup-strong-continuity", clock);
}

CheckResult check_multiplier_positivity(std::uint64_t seed, int cases) {
  Stopwatch clock;
  Tally tally;
  Rng rng(seed ^ 0xccull);
  const TailPolicy tail{40, 0.0};
  for (int i = 0; i < cases; ++i) {
    const Prime p = random_prime(rng);
    const int a = rng.uniform_int(-6, 6);
    const int b = rng.uniform_int(a, 6);
    const RadialField f = RadialField::from_profile(p, a, b, [&](int) { return rng.uniform(0.0, 2.0); });
    const OperatorResult vf = semigroup_apply(f, rng.uniform(0.0, 2.0), rng.uniform(0.3, 2.0), rng.uniform(0.2, 1.5),
                                              rng.uniform(0.0, 1.5), tail);
    tally.expect_le(vf.field.integral(), f.integral() * (1.0 + 1e-12) + 1e-12);
  }
  return tally.finish("diffusion-mass-monotonicity", clock);
}

CheckResult check_error_bound_overestimate(std::uint64_t seed, int cases) {
  Stopwatch clock;
  Tally tally;
  Rng rng(seed ^ 0xddull);
  for (int i = 0; i < cases; ++i) {
    const Prime p = random_prime(rng);
    const RadialField f = random_field(rng, p, -5, 5);
    const double alpha = rng.uniform(0.2, 1.5);
    const TailPolicy coarse{rng.uniform_int(4, 12), 0.0};
    const TailPolicy fine{2 * coarse.tail_depth, 0.0};
    const OperatorResult lo = taibleson_spectral(f, alpha, coarse);
    const OperatorResult hi = taibleson_spectral(f, alpha, fine);
    tally.expect_le(l2_difference(lo.field, hi.field), lo.error_bound * (1.0 + 1e-9) + 1e-13);

    const double t = rng.uniform(1e-3, 1.0);
    const double gamma = rng.uniform(0.3, 2.0);
    const double beta = rng.uniform(0.0, 1.0);
    const OperatorResult vlo = semigroup_apply(f, t, gamma, alpha, beta, coarse);
    const OperatorResult vhi = semigroup_apply(f, t, gamma, alpha, beta, fine);
    tally.expect_le(l2_difference(vlo.field, vhi.field), vlo.error_bound * (1.0 + 1e-9) + 1e-13);
  }
  return tally.finish("tail-error-overestimates", clock);
}

CheckResult check_lipschitz_domination(std::uint64_t seed, int cases) {
  Stopwatch clock;
  Tally tally;
  Rng rng(seed ^ 0xeeull);
  const TailPolicy tail{40, 0.0};
  for (int i = 0; i < cases; ++i) {
    const ModelParams params = random_params(rng);
    const double target = params.s - 2.0 * params.delta();
    const Prime p = params.p;
    RadialField u = normalized_sobolev(random_nonzero_field(rng, p, -5, 5), params.s, rng.uniform(0.1, 2.0));
    RadialField w = normalized_sobolev(random_nonzero_field(rng, p, -5, 5), params.s, rng.uniform(0.1, 2.0));

    // The estimate concerns the Duhamel forcing -u^3 + (beta+1) u^2 + P(D) u^m
    // (the -beta u term belongs to the semigroup generator).
    auto apply_F = [&](const RadialField& v, double& err) {
      RadialField acc = v.map([&](double y) { return -y * y * y + (params.beta + 1.0) * y * y; });
      if (!params.pd.empty()) {
        OperatorResult forcing = apply_pd(v.pow_int(params.m), params.pd, tail);
        err += forcing.error_bound;
        acc = linear_combine(1.0, acc, 1.0, forcing.field);
      }
      return acc;
    };
    double err = 0.0;
    const RadialField fu = apply_F(u, err);
    const RadialField fw = apply_F(w, err);
    const double lhs = linear_combine(1.0, fu, -1.0, fw).norm_sobolev(target);
    const double L = lipschitz_L(u.norm_sobolev(params.s), w.norm_sobolev(params.s), params);
    const double rhs_v = L * linear_combine(1.0, u, -1.0, w).norm_sobolev(params.s);
    tally.expect_le(lhs, rhs_v + err + 1e-9);

    // Monotonicity of L on a small grid.
    const double a = rng.uniform(0.0, 3.0), b = rng.uniform(0.0, 3.0);
    tally.expect_le(lipschitz_L(a, b, params), lipschitz_L(a + 0.5, b, params) + 1e-12);
    tally.expect_le(lipschitz_L(a, b, params), lipschitz_L(a, b + 0.5, params) + 1e-12);
  }
  return tally.finish("lipschitz-domination", clock);
}

CheckResult check_pd_product_bound(std::uint64_t seed, int cases) {
  Stopwatch clock;
  Tally tally;
  Rng rng(seed ^ 0xffull);
  const TailPolicy tail{40, 0.0};
  for (int i = 0; i < cases; ++i) {
    const Prime p = random_prime(rng);
    const double s = rng.uniform(1.05, 2.5);
    std::vector<PDTerm> terms;
    double expo = rng.coin(0.4) ? 0.0 : rng.uniform(0.05, 0.3);
    const int n_terms = rng.uniform_int(1, 3);
    for (int k = 0; k < n_terms; ++k) {
      terms.push_back({rng.uniform(-1.5, 1.5), expo});
      expo += rng.uniform(0.05, 0.4);
    }
    const PDTerms pd(terms);
    const double bump = s + 2.0 * pd.degree();
    const RadialField f = normalized_sobolev(random_nonzero_field(rng, p, -5, 5), bump);
    const RadialField g = normalized_sobolev(random_nonzero_field(rng, p, -5, 5), bump);
    const OperatorResult lhs = apply_pd(pointwise_product(f, g), pd, tail);
    const double rhs_v =
        pd.coef_abs_sum() * 2.0 * embedding_constant(p, s) * f.norm_sobolev(bump) * g.norm_sobolev(bump);
    tally.expect_le(lhs.field.norm_sobolev(s), rhs_v + lhs.error_bound + 1e-9);
  }
  return tally.finish("pd-product-bound", clock);
}

CheckResult check_gronwall_envelope(std::uint64_t seed, int cases) {
  Stopwatch clock;
  Tally tally;
  Rng rng(seed ^ 0x1010ull);
  const TailPolicy tail{8, 0.0};
  for (int i = 0; i < cases; ++i) {
    ModelParams params = random_params(rng, /*force_zero_degree=*/true);
    const Prime p = params.p;
    const RadialField f0 = normalized_sobolev(random_nonzero_field(rng, p, -4, 4), params.s, rng.uniform(0.2, 1.5));
    const RadialField bump = normalized_sobolev(random_nonzero_field(rng, p, -4, 4), params.s, 1.0);
    const RadialField f1 = linear_combine(1.0, f0, rng.uniform(1e-4, 1e-2), bump);

    // Both runs on one window so the discrete diffusion factor is shared.
    const int wa = std::min(f0.j_min(), f1.j_min());
    const int wb = std::max(f0.j_max(), f1.j_max());
    // Step small enough that the discrete diffusion factor stays in [0, 1].
    const double top_symbol = std::pow(p.as_double(), params.alpha * std::max(0, -wa));
    const double dt = 0.5 / std::max(1.0, params.gamma * top_symbol);
    const int steps = 12;
    const auto ua = raw_euler(f0.retruncate(wa, wb).first, params, tail, dt, steps);
    const auto ub = raw_euler(f1.retruncate(wa, wb).first, params, tail, dt, steps);

    double W = 0.0;
    for (const auto& state : ua) W = std::max(W, state.norm_sobolev(params.s));
    for (const auto& state : ub) W = std::max(W, state.norm_sobolev(params.s));
    const double rate = lipschitz_L(W, W, params);
    const double d0 = linear_combine(1.0, ua.front(), -1.0, ub.front()).norm_sobolev(params.s);
    for (int k = 1; k <= steps; ++k) {
      const double dist = linear_combine(1.0, ua[static_cast<std::size_t>(k)], -1.0, ub[static_cast<std::size_t>(k)])
                              .norm_sobolev(params.s);
      tally.expect_le(dist, std::exp(rate * dt * k) * d0 + 1e-9);
    }
  }
  return tally.finish("gronwall-envelope", clock);
}

CheckResult check_wavelet_square_identity(std::uint64_t seed) {
  Stopwatch clock;
  Tally tally;
  Rng rng(seed ^ 0x1111ull);
  for (long long pv : {3LL, 5LL, 7LL}) {
    const Prime p(pv);
    for (int r : {-2, -1, 0}) {
      const double factor = std::pow(p.as_double(), -0.5 * r);
      for (int i = 0; i < 200; ++i) {
        const int ord = rng.uniform_int(r - 2, -r + 2);
        Rational x(0);
        if (!rng.coin(0.05)) {
          BigInt acc = rng.uniform_int(1, static_cast<int>(pv) - 1);
          for (int d = 0; d < 4; ++d) acc = acc * pv + rng.uniform_int(0, static_cast<int>(pv) - 1);
          x = Rational(acc) * rational_pow(Rational(pv), ord - 4);
        }
        const std::complex<double> w1 = wavelet_eval(p, WaveletIndex{r, Rational(0), 1}, x);
        const std::complex<double> w2 = wavelet_eval(p, WaveletIndex{r, Rational(0), 2}, x);
        tally.expect_le(std::abs(w1 * w1 - factor * w2), 1e-13);
      }
    }
  }
  return tally.finish("wavelet-square-identity", clock);
}

CheckResult check_wavelet_fourier_support(std::uint64_t seed) {
  Stopwatch clock;
  Tally tally;
  Rng rng(seed ^ 0x1212ull);
  for (long long pv : {3LL, 5LL}) {
    const Prime p(pv);
    for (int r : {-1, 0, 1}) {
      for (int j = 1; j <= std::min<long long>(2, pv - 1); ++j) {
        const WaveletIndex idx{r, Rational(0), j};
        auto transform_at = [&](const Rational& xi) {
          // chi(xi x) is constant on cosets of B_{-e} for |xi| = p^e.
          const int e = (xi == 0) ? -10 : static_cast<int>(-padic_order(xi, p));
          const int res = std::min(r - 1, -e);
          return integrate_ball(p, r, res, [&](const Rational& x) {
            return char_eval(p, xi * x) * wavelet_eval(p, idx, x);
          });
        };
        // On-support frequencies: xi = p^{r-1}(-j + p z).
        for (int z : {0, 1, 2}) {
          const Rational xi = rational_pow(Rational(pv), r - 1) * Rational(-j + static_cast<int>(pv) * z);
          tally.expect_true(padic_order(xi, p) == r - 1);  // |xi| = p^{1-r} there
          tally.expect_le(std::abs(std::abs(transform_at(xi)) - std::pow(p.as_double(), 0.5 * r)), 1e-11);
        }
        // Off-support: wrong unit digit, or wrong shell.
        const int wrong_j = (j % static_cast<int>(pv - 1)) + 1;
        if (wrong_j != j) {
          const Rational xi_wrong = rational_pow(Rational(pv), r - 1) * Rational(-wrong_j);
          tally.expect_le(std::abs(transform_at(xi_wrong)), 1e-11);
        }
        for (int shift : {-1, 1, 2}) {
          const Rational xi_off = rational_pow(Rational(pv), r - 1 + shift) * Rational(-j);
          tally.expect_le(std::abs(transform_at(xi_off)), 1e-11);
        }
      }
    }
  }
  return tally.finish("wavelet-fourier-support", clock);
}

CheckResult check_wavelet_eigenrelation(std::uint64_t seed, int points) {
  Stopwatch clock;
  Tally tally;
  Rng rng(seed ^ 0x1313ull);
  for (long long pv : {3LL, 5LL}) {
    const Prime p(pv);
    for (int r : {-2, -1, 0}) {
      for (double alpha : {0.2, 1.0}) {
        const double eigen = std::pow(p.as_double(), (1.0 - r) * alpha);
        const BlowupWeight weight(p, r, alpha);
        for (int j : {1, 2}) {
          const WaveletIndex idx{r, Rational(0), j};
          auto psi = [&](const Rational& x) { return wavelet_eval(p, idx, x); };
          auto wfun = [&](const Rational& x) { return std::complex<double>(weight.value(x), 0.0); };
          for (int i = 0; i < points; ++i) {
            // Orders from two shells outside the support ball to deep inside.
            const int ord = rng.uniform_int(-r - 2, -r + 2);
            BigInt acc = rng.uniform_int(1, static_cast<int>(pv) - 1);
            for (int d = 0; d < 2; ++d) acc = acc * pv + rng.uniform_int(0, static_cast<int>(pv) - 1);
            const Rational x = rng.coin(0.06) ? Rational(0) : Rational(acc) * rational_pow(Rational(pv), ord - 2);

            const std::complex<double> lhs = taibleson_pointwise(p, alpha, psi, r - 1, r, x);
            const std::complex<double> rhs_v = eigen * psi(x);
            tally.expect_le(std::abs(lhs - rhs_v), 1e-8 * std::max(1.0, std::abs(rhs_v)));
            if (j == 1) {
              const std::complex<double> lhs_w = taibleson_pointwise(p, alpha, wfun, r - 1, r, x);
              tally.expect_le(std::abs(lhs_w - eigen * wfun(x)), 1e-8 * std::max(1.0, std::abs(wfun(x)) * eigen));
            }
          }
        }
      }
    }
  }
  return tally.finish("wavelet-eigenrelation", clock);
}

CheckResult check_weight_tables(std::uint64_t seed) {
  Stopwatch clock;
  Tally tally;
  (void)seed;
  for (long long pv : {3LL, 5LL, 7LL}) {
    const Prime p(pv);
    for (int r : {-2, -1, 0}) {
      const BlowupWeight weight(p, r, 0.7);
      // Brute-force sphere integrals of w agree with the exact table.
      for (int k = r - 2; k <= r + 1; ++k) {
        auto wfun = [&](const Rational& x) { return std::complex<double>(weight.value(x), 0.0); };
        const std::complex<double> ball_k = integrate_ball(p, k, std::min(r - 1, k - 1), wfun);
        const std::complex<double> ball_km1 = integrate_ball(p, k - 1, std::min(r - 1, k - 2), wfun);
        const double brute = (ball_k - ball_km1).real();
        tally.expect_le(std::abs(brute - to_double(weight.shell_integral(k))), 1e-11);
      }
      // Total integral vanishes exactly.
      Rational total = weight.ball_integral(r - 3);
      for (int k = r - 2; k <= -r + 1; ++k) total += weight.shell_integral(k);
      tally.expect_true(total == 0);
      // Vanishing beyond the character cutoff.
      for (int k = r + 1; k <= -r + 2; ++k) tally.expect_true(weight.shell_integral(k) == 0);
    }
  }
  return tally.finish("blowup-weight-tables", clock);
}

CheckResult check_pairing_identities(std::uint64_t seed, int cases) {
  Stopwatch clock;
  Tally tally;
  Rng rng(seed ^ 0x1414ull);
  const TailPolicy tail{40, 0.0};
  for (int i = 0; i < cases; ++i) {
    const Prime p = random_odd_prime(rng);
    const int r = rng.uniform_int(-2, 0);
    const double alpha = rng.uniform(0.2, 1.5);
    const BlowupWeight weight(p, r, alpha);
    const RadialField u = random_field(rng, p, -6, 4);
    const double weight_l2 = std::pow(p.as_double(), -0.5 * r);  // |w| <= p^{-r} on a ball of measure p^{r}

    // Pairing linearity.
    const RadialField v = random_field(rng, p, -6, 4);
    const double lin = weight.pairing(linear_combine(2.5, u, -1.25, v)) -
                       (2.5 * weight.pairing(u) - 1.25 * weight.pairing(v));
    tally.expect_le(std::abs(lin), 1e-12 * (1.0 + std::abs(weight.pairing(u)) + std::abs(weight.pairing(v))));

    // Self-adjoint action: <D^alpha u, w> = p^{(1-r) alpha} <u, w>.
    const OperatorResult du = taibleson_spectral(u, alpha, tail);
    const double lhs = weight.pairing(du.field);
    const double rhs_v = weight.eigenvalue() * weight.pairing(u);
    tally.expect_le(std::abs(lhs - rhs_v), du.error_bound * weight_l2 + 1e-10 * (1.0 + std::abs(rhs_v)));

    // Under the diffusion semigroup the pairing decays with the eigen-rate.
    const double t = rng.uniform(0.0, 1.0);
    const double gamma = rng.uniform(0.3, 2.0);
    const double beta = rng.uniform(0.0, 1.0);
    const OperatorResult vu = semigroup_apply(u, t, gamma, alpha, beta, tail);
    const double decay = std::exp(-(gamma * weight.eigenvalue() + beta) * t);
    tally.expect_le(std::abs(weight.pairing(vu.field) - decay * weight.pairing(u)),
                    vu.error_bound * weight_l2 + 1e-10 * (1.0 + std::abs(weight.pairing(u))));
  }
  return tally.finish("pairing-eigen-identities", clock);
}

CheckResult check_euler_determinism(std::uint64_t seed) {
  Stopwatch clock;
  Tally tally;
  (void)seed;
  const Prime p(3);
  ModelParams params{p, 1.0, 0.4, 0.5, 3, PDTerms({{0.6, 0.15}}), 2.0, true};
  SolverConfig cfg;
  cfg.j_min = -6;
  cfg.j_max = 6;
  cfg.dt = 1e-3;
  cfg.t_end = 0.05;
  cfg.save_every = 5;
  cfg.tail.tail_depth = 20;
  const RadialField f0 = RadialField::from_profile(p, -6, 6, [](int k) { return 1.5 * std::exp(-std::abs(k)); });
  const Trajectory a = euler_run(f0, params, cfg);
  const Trajectory b = euler_run(f0, params, cfg);
  tally.expect_true(a.times == b.times);
  tally.expect_true(a.sup_norm == b.sup_norm && a.l2_norm == b.l2_norm && a.hs_norm == b.hs_norm);
  tally.expect_true(a.mass == b.mass && a.error_budget == b.error_budget);
  return tally.finish("euler-determinism", clock);
}

CheckResult check_blowup_bracket(std::uint64_t seed) {
  Stopwatch clock;
  Tally tally;
  (void)seed;
  const Prime p(3);
  // Strong positive forcing so the sup crosses the threshold quickly.
  ModelParams params{p, 0.05, 0.2, 0.0, 3, PDTerms({{2.0, 0.15}}), 2.0, true};
  SolverConfig cfg;
  cfg.j_min = -6;
  cfg.j_max = 6;
  cfg.dt = 1e-3;
  cfg.t_end = 5.0;
  cfg.save_every = 10;
  cfg.tail.tail_depth = 25;
  cfg.blowup_threshold = 1e4;
  const RadialField f0 = RadialField::from_profile(p, -6, 6, [](int) { return 2.0; });
  const Trajectory traj = euler_run(f0, params, cfg);
  tally.expect_true(traj.blowup.has_value());
  if (traj.blowup) {
    tally.expect_true(traj.blowup->sup_lo < cfg.blowup_threshold);
    tally.expect_true(!(traj.blowup->sup_hi < cfg.blowup_threshold));
    tally.expect_le(traj.blowup->t_hi - traj.blowup->t_lo, cfg.dt * std::pow(2.0, -10) * (1.0 + 1e-9));
    tally.expect_true(traj.blowup->t_lo < traj.blowup->t_hi);
  }
  return tally.finish("blowup-bracket", clock);
}

CheckResult check_existence_substitution(std::uint64_t seed, int cases) {
  Stopwatch clock;
  Tally tally;
  Rng rng(seed ^ 0x1515ull);
  for (int i = 0; i < cases; ++i) {
    const ModelParams params = random_params(rng);
    const double f0_norm = rng.uniform(0.05, 2.0);
    const double M = rng.uniform(0.1, 2.0);
    const ExistenceEstimate est = existence_time(f0_norm, M, params);
    tally.expect_true(est.T > 0.0);
    const double q = est.kernel_q;
    const double K = est.T + est.kernel_c * std::pow(est.T, 1.0 - q) / (1.0 - q);
    const double x = M + f0_norm;
    tally.expect_le(lipschitz_L(x, 0.0, params) * x * K, M * (1.0 + 1e-12));
    tally.expect_true(lipschitz_L(x, x, params) * K < 1.0);
    tally.expect_true(est.contraction_constant < 1.0);
    // Doubling the datum can only shrink the horizon.
    const ExistenceEstimate smaller = existence_time(2.0 * f0_norm, M, params);
    tally.expect_le(smaller.T, est.T * (1.0 + 1e-12));
  }
  return tally.finish("existence-substitution", clock);
}

CheckResult check_picard_contraction(std::uint64_t seed, int cases) {
  Stopwatch clock;
  Tally tally;
  Rng rng(seed ^ 0x1616ull);
  for (int i = 0; i < cases; ++i) {
    ModelParams params = random_params(rng);
    const RadialField shape = random_nonzero_field(rng, params.p, -4, 4);
    const double f0_norm = rng.uniform(0.2, 1.0);
    const RadialField f0 = normalized_sobolev(shape, params.s, f0_norm);
    const double M = rng.uniform(0.5, 1.5);
    const ExistenceEstimate est = existence_time(f0_norm, M, params);

    SolverConfig cfg;
    cfg.j_min = f0.j_min();
    cfg.j_max = f0.j_max();
    cfg.t_end = 0.9 * est.T;
    cfg.dt = cfg.t_end / 40.0;
    cfg.tail.tail_depth = 40;
    cfg.picard_tol = 0.0;  // harvest a full residual history
    cfg.max_picard_iters = 12;
    std::vector<double> residuals;
    try {
      residuals = picard_solve(f0, params, cfg).picard_residuals;
    } catch (const PicardDivergence& div) {
      residuals = div.residual_history;
    }
    tally.expect_true(residuals.size() >= 3);
    const double floor = 1e-13 * (1.0 + f0_norm);
    for (std::size_t k = 1; k < residuals.size(); ++k) {
      if (residuals[k - 1] < floor || residuals[k] < floor) break;
      tally.expect_le(residuals[k] / residuals[k - 1], est.contraction_constant * 1.1);
    }
  }
  return tally.finish("picard-contraction", clock);
}

std::vector<CheckResult> run_all_checks(std::uint64_t seed) {
  std::vector<CheckResult> results;
  results.push_back(check_haar_identities(seed));
  results.push_back(check_character_properties(seed));
  results.push_back(check_fourier_exactness(seed));
  results.push_back(check_sobolev_norms(seed));
  results.push_back(check_interpolation(seed));
  results.push_back(check_banach_algebra(seed));
  results.push_back(check_taibleson_equivalence(seed));
  results.push_back(check_semigroup_contraction(seed));
  results.push_back(check_smoothing_bound(seed));
  results.push_back(check_semigroup_law(seed));
  results.push_back(check_strong_continuity(seed));
  results.push_back(check_multiplier_positivity(seed));
  results.push_back(check_error_bound_overestimate(seed));
  results.push_back(check_lipschitz_domination(seed));
  results.push_back(check_pd_product_bound(seed));
  results.push_back(check_gronwall_envelope(seed));
  results.push_back(check_wavelet_square_identity(seed));
  results.push_back(check_wavelet_fourier_support(seed));
  results.push_back(check_wavelet_eigenrelation(seed));
  results.push_back(check_weight_tables(seed));
  results.push_back(check_pairing_identities(seed));
  results.push_back(check_euler_determinism(seed));
  results.push_back(check_blowup_bracket(seed));
  results.push_back(check_existence_substitution(seed));
  results.push_back(check_picard_contraction(seed));
  return results;
}

}  // namespace nagumo
