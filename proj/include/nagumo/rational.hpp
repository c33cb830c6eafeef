#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>

namespace nagumo {

// Exact arbitrary-precision integers/rationals. All shell measures and
// character integrals are kept exact; conversion to double happens at
// module boundaries only.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& x) { return x.convert_to<double>(); }

inline BigInt int_pow(const BigInt& base, unsigned long long exp) {
  BigInt result = 1;
  BigInt b = base;
  while (exp > 0) {
    if (exp & 1ULL) result *= b;
    b *= b;
    exp >>= 1ULL;
  }
  return result;
}

// base^exp with signed exponent; base must be nonzero when exp < 0.
inline Rational rational_pow(const Rational& base, long long exp) {
  if (exp >= 0) {
    return Rational(int_pow(numerator(base), static_cast<unsigned long long>(exp)),
                    int_pow(denominator(base), static_cast<unsigned long long>(exp)));
  }
  if (base == 0) throw std::domain_error("rational_pow: zero base with negative exponent");
  return Rational(int_pow(denominator(base), static_cast<unsigned long long>(-exp)),
                  int_pow(numerator(base), static_cast<unsigned long long>(-exp)));
}

// Modular inverse of a mod m (m > 1, gcd(a, m) = 1), via extended Euclid.
inline BigInt mod_inverse(BigInt a, const BigInt& m) {
  BigInt r0 = m, r1 = a % m;
  if (r1 < 0) r1 += m;
  BigInt t0 = 0, t1 = 1;
  while (r1 != 0) {
    BigInt q = r0 / r1;
    BigInt r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    BigInt t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  if (r0 != 1) throw std::domain_error("mod_inverse: arguments not coprime");
  if (t0 < 0) t0 += m;
  return t0;
}

}  // namespace nagumo
