#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "nagumo/padic.hpp"

using namespace nagumo;

TEST_CASE("prime validation") {
  CHECK_NOTHROW(Prime(2));
  CHECK_NOTHROW(Prime(97));
  CHECK_THROWS_AS(Prime(1), std::invalid_argument);
  CHECK_THROWS_AS(Prime(9), std::invalid_argument);
  CHECK_THROWS_AS(Prime(-3), std::invalid_argument);
}

TEST_CASE("valuation") {
  CHECK(valuation(1, 3, Prime(3)) == -1);
  CHECK(valuation(9, 1, Prime(3)) == 2);
  CHECK(valuation(0, 5, Prime(7)) == kOrderInfinity);
  CHECK(valuation(12, 8, Prime(2)) == -1);
  CHECK_THROWS_AS(valuation(1, 0, Prime(3)), std::invalid_argument);

  CHECK(padic_order(Rational(1, 3), Prime(3)) == -1);
  CHECK(padic_order(Rational(-18, 5), Prime(3)) == 2);
  CHECK(padic_order(Rational(0), Prime(5)) == kOrderInfinity);
}

TEST_CASE("measures") {
  CHECK(shell_measure(Prime(3), 0) == Rational(2, 3));
  CHECK(shell_measure(Prime(3), 2) == Rational(6));
  CHECK(shell_measure(Prime(2), 0) == Rational(1, 2));
  CHECK(ball_measure(Prime(5), -2) == Rational(1, 25));

  // Sphere measures telescope exactly to ball measures.
  for (int K = -4; K <= 4; ++K) {
    Rational acc(0);
    for (int j = K - 9; j <= K; ++j) acc += shell_measure(Prime(3), j);
    CHECK(ball_measure(Prime(3), K) - acc == ball_measure(Prime(3), K - 10));
  }
}

TEST_CASE("fractional part and character") {
  const Prime p3(3);
  CHECK(fractional_part(Rational(1, 3), p3) == Rational(1, 3));
  CHECK(fractional_part(Rational(5), Prime(5)) == 0);
  CHECK(fractional_part(Rational(3, 2), Prime(2)) == Rational(1, 2));
  // 1/2 in Q_3 is a unit: zero fractional part.
  CHECK(fractional_part(Rational(1, 2), p3) == 0);
  // -1/3 = 2/3 + (-1): fractional part 2/3.
  CHECK(fractional_part(Rational(-1, 3), p3) == Rational(2, 3));

  const std::complex<double> third = char_eval(p3, Rational(1, 3));
  CHECK(third.real() == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(third.imag() == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-14));
  CHECK(char_eval(Prime(5), Rational(5)) == std::complex<double>(1.0, 0.0));
  const std::complex<double> half = char_eval(Prime(2), Rational(3, 2));
  CHECK(half.real() == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(std::abs(half.imag()) < 1e-14);
}

TEST_CASE("character shell integrals") {
  const Prime p3(3);
  CHECK(char_shell_integral(p3, -2, 0) == Rational(2, 3));
  CHECK(char_shell_integral(p3, 1, 0) == Rational(-1, 3));
  CHECK(char_shell_integral(p3, 5, 0) == 0);
  // Summing spheres reproduces the ball integral for every frequency.
  for (long long v = -3; v <= 4; ++v) {
    for (int K = -3; K <= 3; ++K) {
      Rational acc = char_ball_integral(p3, v, K - 8);
      for (int k = K - 7; k <= K; ++k) acc += char_shell_integral(p3, v, k);
      CHECK(acc == char_ball_integral(p3, v, K));
    }
  }
}

TEST_CASE("bracket weight") {
  CHECK(bracket_weight(Prime(3), -2, 7.5) == 1.0);
  CHECK(bracket_weight(Prime(3), 2, 2.0) == doctest::Approx(81.0).epsilon(1e-14));
  CHECK(bracket_weight(Prime(5), 1, 0.0) == 1.0);
}

TEST_CASE("padic points") {
  const Prime p3(3);
  const PadicPoint zero(p3);
  CHECK(zero.is_zero());
  CHECK(zero.order() == kOrderInfinity);
  CHECK(zero.to_rational() == 0);

  const PadicPoint x(p3, -1, {1});  // 1/3
  CHECK(x.to_rational() == Rational(1, 3));
  CHECK(x.order() == -1);

  const PadicPoint y(p3, 0, {2, 1});  // 2 + 3 = 5
  CHECK(y.to_rational() == 5);
  CHECK((x + y).to_rational() == Rational(16, 3));

  CHECK_THROWS_AS(PadicPoint(p3, 0, {0, 1}), std::invalid_argument);  // leading zero
  CHECK_THROWS_AS(PadicPoint(p3, 0, {3}), std::invalid_argument);     // digit out of range
  CHECK_THROWS_AS(PadicPoint(p3, 0, std::vector<int>(65, 1)), std::invalid_argument);

  CHECK_THROWS_AS(PadicPoint::from_rational(p3, Rational(1, 2)), std::invalid_argument);
  CHECK(PadicPoint::from_rational(p3, Rational(10, 9)).order() == -2);

  // Character multiplicativity on exact points.
  const std::complex<double> lhs = char_eval(p3, x + y);
  const std::complex<double> rhs = char_eval(p3, x) * char_eval(p3, y);
  CHECK(std::abs(lhs - rhs) < 1e-14);
}
