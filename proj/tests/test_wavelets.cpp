#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "nagumo/random_field.hpp"
#include "nagumo/wavelets.hpp"

using namespace nagumo;

namespace {
const Prime p3(3);
}

TEST_CASE("wavelet evaluation") {
  const WaveletIndex idx{0, Rational(0), 1};
  CHECK(wavelet_eval(p3, idx, Rational(0)) == std::complex<double>(1.0, 0.0));

  // Modulus p^{-r/2} on the support, zero outside. The support is the ball
  // |x|_p <= p^r, so the edge points have order -r.
  for (int r : {-2, -1, 0, 1}) {
    const WaveletIndex w{r, Rational(0), 1};
    const Rational inside = rational_pow(Rational(3), -r);        // |x|_p = p^r
    const Rational outside = rational_pow(Rational(3), -(r + 1));  // one shell out
    CHECK(std::abs(wavelet_eval(p3, w, inside)) == doctest::Approx(std::pow(3.0, -0.5 * r)).epsilon(1e-14));
    CHECK(std::abs(wavelet_eval(p3, w, outside)) == 0.0);
  }

  CHECK_THROWS_AS(wavelet_eval(p3, WaveletIndex{0, Rational(0), 3}, Rational(0)), std::invalid_argument);
  CHECK_THROWS_AS(wavelet_eval(p3, WaveletIndex{0, Rational(1, 2), 1}, Rational(0)), std::invalid_argument);

  // Nonzero translation index: the support is the coset n + Z_p (for r = 0).
  const WaveletIndex shifted{0, Rational(1, 3), 1};
  CHECK(wavelet_eval(p3, shifted, Rational(1, 3)) == std::complex<double>(1.0, 0.0));
  CHECK(std::abs(wavelet_eval(p3, shifted, Rational(4, 3))) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(wavelet_eval(p3, shifted, Rational(0))) == 0.0);
}

TEST_CASE("orthonormality via coset sums at p = 3") {
  // Psi_{0,0,j} is constant on the three unit translates of 3 Z_3.
  auto inner = [&](int j1, int j2) {
    std::complex<double> acc(0.0, 0.0);
    for (int d = 0; d < 3; ++d) {
      const Rational x(d);
      acc += wavelet_eval(p3, WaveletIndex{0, Rational(0), j1}, x) *
             std::conj(wavelet_eval(p3, WaveletIndex{0, Rational(0), j2}, x));
    }
    return acc / 3.0;
  };
  CHECK(std::abs(inner(1, 2)) < 1e-14);
  CHECK(std::abs(inner(1, 1) - std::complex<double>(1.0, 0.0)) < 1e-14);
  CHECK(std::abs(inner(2, 2) - std::complex<double>(1.0, 0.0)) < 1e-14);
}

TEST_CASE("multiplier eigenvalue") {
  const double alpha = 0.4;
  auto taibleson_symbol = [alpha](int k) { return std::pow(3.0, alpha * k); };
  CHECK(multiplier_eigenvalue(taibleson_symbol, 0) == doctest::Approx(std::pow(3.0, alpha)).epsilon(1e-14));
  CHECK(multiplier_eigenvalue([](int) { return 1.0; }, -5) == 1.0);

  const double gamma = 1.2, beta = 0.3, t = 0.7;
  auto diffusion = [&](int k) { return std::exp(-(gamma * std::pow(3.0, alpha * k) + beta) * t); };
  for (int r : {-2, 0, 1}) {
    CHECK(multiplier_eigenvalue(diffusion, r) ==
          doctest::Approx(std::exp(-(gamma * std::pow(3.0, alpha * (1 - r)) + beta) * t)).epsilon(1e-14));
  }
}

TEST_CASE("square identity") {
  Rng rng(3);
  for (long long pv : {3LL, 5LL, 7LL}) {
    const Prime p(pv);
    for (int r : {-2, -1, 0}) {
      const double factor = std::pow(static_cast<double>(pv), -0.5 * r);
      for (int i = 0; i < 60; ++i) {
        BigInt acc = rng.uniform_int(1, static_cast<int>(pv) - 1);
        for (int d = 0; d < 3; ++d) acc = acc * pv + rng.uniform_int(0, static_cast<int>(pv) - 1);
        const Rational x = Rational(acc) * rational_pow(Rational(pv), rng.uniform_int(r - 2, -r + 1) - 3);
        const std::complex<double> w1 = wavelet_eval(p, WaveletIndex{r, Rational(0), 1}, x);
        const std::complex<double> w2 = wavelet_eval(p, WaveletIndex{r, Rational(0), 2}, x);
        CHECK(std::abs(w1 * w1 - factor * w2) < 1e-13);
      }
    }
  }
}

TEST_CASE("blowup weight construction and tables") {
  CHECK_THROWS_AS(BlowupWeight(Prime(2), 0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(BlowupWeight(p3, 1, 0.5), std::invalid_argument);

  const BlowupWeight w(p3, 0, 0.2);
  CHECK(w.eigenvalue() == doctest::Approx(std::pow(3.0, 0.2)).epsilon(1e-14));
  // Three-case table at r = 0: full spheres below, -1/p at the edge, 0 above.
  CHECK(w.shell_integral(-2) == Rational(2, 27));
  CHECK(w.shell_integral(-1) == Rational(2, 9));
  CHECK(w.shell_integral(0) == Rational(-1, 3));
  CHECK(w.shell_integral(1) == 0);
  CHECK(w.shell_integral(5) == 0);

  // Total integral vanishes exactly.
  Rational total = w.ball_integral(-9);
  for (int k = -8; k <= 2; ++k) total += w.shell_integral(k);
  CHECK(total == 0);

  // Pointwise values: +1 deep inside, -1/2 on the unit sphere (p = 3, r = 0).
  CHECK(w.value(Rational(3)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(w.value(Rational(1)) == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(w.value(Rational(2)) == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(w.value(Rational(1, 3)) == 0.0);
}

TEST_CASE("pairing") {
  const BlowupWeight w(p3, 0, 0.2);
  const RadialField omega = RadialField::ball_indicator(p3, 0);
  CHECK(w.pairing(omega) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(w.pairing(RadialField::zero(p3, -3, 3)) == 0.0);

  Rng rng(43);
  for (int i = 0; i < 100; ++i) {
    const RadialField u = random_field(rng, p3);
    const RadialField v = random_field(rng, p3);
    const double a = rng.uniform(-2.0, 2.0), b = rng.uniform(-2.0, 2.0);
    const double lhs = w.pairing(linear_combine(a, u, b, v));
    const double rhs = a * w.pairing(u) + b * w.pairing(v);
    CHECK(std::abs(lhs - rhs) <= 1e-13 * (1.0 + std::abs(rhs)));
  }

  // The positive diagnostic weight averages u over the support ball.
  CHECK(w.positive_pairing(omega) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("comparison function H") {
  const ComparisonParams cp{1.0, 0.2, 0.1, 0.7, 3, 0};
  CHECK(comparison_H(0.0, cp) == 0.0);
  CHECK(comparison_H_second(0.0, cp) == doctest::Approx(3.4).epsilon(1e-14));
  for (double y = 0.0; y <= 50.0; y += 0.5) {
    CHECK(comparison_H_second(y, cp) >= 0.0);
  }
  // Closed form: H(y) = (p^{(1-r)a1} - 1) y^3 + (beta+1) y^2 - (gamma p^{(1-r)a} + beta) y.
  for (double y : {0.3, 1.0, 4.2}) {
    const double c3 = std::pow(3.0, 0.1) - 1.0;
    const double c2 = 1.7;
    const double c1 = -(std::pow(3.0, 0.2) + 0.7);
    CHECK(comparison_H(y, cp) == doctest::Approx(c3 * y * y * y + c2 * y * y + c1 * y).epsilon(1e-14));
  }
}

TEST_CASE("comparison ODE blow-up time") {
  SUBCASE("stable root capture") {
    // Large diffusion: H < 0 right of 0 on the whole window, orbit sinks to 0.
    const ComparisonParams cp{50.0, 1.0, 0.1, 0.2, 3, 0};
    CHECK(std::isinf(ode_blowup_time(1.0, cp, 1e6, 1e-3)));
  }
  SUBCASE("cubic lower bound on the blow-up time") {
    const ComparisonParams cp{0.5, 0.2, 0.4, 0.3, 3, 0};
    const double c3 = std::pow(3.0, 0.4) - 1.0;
    const double c2 = cp.beta + 1.0;
    const double c1 = -(cp.gamma * std::pow(3.0, 0.2) + cp.beta);
    const double g0 = 5.0;
    REQUIRE(c2 * g0 * g0 + c1 * g0 >= 0.0);  // H(y) >= c3 y^3 along the orbit
    const double t = ode_blowup_time(g0, cp, 10.0 * g0, 1e-4);
    CHECK(t > 0.0);
    CHECK(t <= 1.0 / (2.0 * c3 * g0 * g0));
  }
  SUBCASE("threshold close to g0 gives a vanishing time") {
    const ComparisonParams cp{0.1, 0.2, 0.5, 0.5, 3, 0};
    double prev = std::numeric_limits<double>::infinity();
    for (double eps : {1.0, 0.1, 0.01, 0.001}) {
      const double t = ode_blowup_time(5.0, cp, 5.0 + eps, 1e-5);
      CHECK(t < prev);
      prev = t;
    }
    CHECK(prev < 1e-3);
  }
  SUBCASE("negative start is trapped by the root at zero") {
    const ComparisonParams cp{1.0, 0.2, 0.1, 0.7, 3, 0};
    CHECK(std::isinf(ode_blowup_time(-0.09, cp, 1e6, 1e-3)));
  }
  SUBCASE("validation") {
    const ComparisonParams cp{1.0, 0.2, 0.1, 0.7, 3, 0};
    CHECK_THROWS_AS(ode_blowup_time(2.0, cp, 1.0, 1e-3), std::invalid_argument);
    CHECK_THROWS_AS(ode_blowup_time(0.0, cp, 1.0, 0.0), std::invalid_argument);
  }
}

TEST_CASE("weight eigenrelation against the pointwise operator") {
  for (long long pv : {3LL, 5LL}) {
    const Prime p(pv);
    const int r = -1;
    const double alpha = 0.6;
    const BlowupWeight w(p, r, alpha);
    auto wfun = [&](const Rational& x) { return std::complex<double>(w.value(x), 0.0); };
    for (const Rational& x : {Rational(0), rational_pow(Rational(pv), -1), Rational(1), Rational(2)}) {
      const std::complex<double> lhs = taibleson_pointwise(p, alpha, wfun, r - 1, r, x);
      CHECK(std::abs(lhs - w.eigenvalue() * wfun(x)) <= 1e-8 * std::max(1.0, std::abs(wfun(x)) * w.eigenvalue()));
    }
  }
}
