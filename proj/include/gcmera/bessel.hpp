#pragma once

// Cylinder Bessel functions J_nu (nu >= -1/2) and K_nu, plus the positive
// zeros of J_nu used to partition oscillatory radial transforms.
//
// J_nu: ascending series in long double below z = 17 (the extra mantissa
// absorbs the alternating-series cancellation), Hankel asymptotic expansion
// above (optimal truncation error ~ e^{-2z} < 2e-15 there). For half-integer
// orders the asymptotic series terminates and is exact.
//
// K_nu: closed form for half-integer orders; otherwise the integral
// representation K_nu(z) = int_0^inf e^{-z cosh t} cosh(nu t) dt, evaluated
// scaled by e^z with adaptive quadrature.

#include <cmath>
#include <limits>

#include "gcmera/params.hpp"
#include "gcmera/quadrature.hpp"

namespace gcmera {

namespace detail {

inline double bessel_j_series(double nu, double z) {
  const long double q = (static_cast<long double>(z) * z) / 4.0L;
  long double term =
      std::exp(nu * std::log(static_cast<long double>(z) / 2.0L) -
               std::lgamma(static_cast<long double>(nu) + 1.0L));
  if (z == 0.0) term = (nu == 0.0) ? 1.0L : 0.0L;
  long double sum = term;
  for (int m = 0; m < 200; ++m) {
    term *= -q / ((m + 1.0L) * (nu + m + 1.0L));
    sum += term;
    if (std::abs(term) < 1e-25L * (std::abs(sum) + 1e-30L) && m > 1) break;
  }
  return static_cast<double>(sum);
}

inline double bessel_j_asymptotic(double nu, double z) {
  const double mu = 4.0 * nu * nu;
  double a = 1.0;       // running product a_k
  double p = 1.0, q = 0.0;
  double prev = std::numeric_limits<double>::max();
  for (int k = 1; k <= 40; ++k) {
    const double num = mu - (2.0 * k - 1.0) * (2.0 * k - 1.0);
    a *= num / (k * 8.0 * z);
    if (std::abs(a) > prev) break;  // past optimal truncation
    prev = std::abs(a);
    if (k % 2 == 1) {
      q += ((k - 1) / 2 % 2 == 0 ? a : -a);
    } else {
      p += (k / 2 % 2 == 0 ? a : -a);
    }
    if (std::abs(a) < 1e-18) break;
  }
  const double chi = z - (0.5 * nu + 0.25) * M_PI;
  return std::sqrt(2.0 / (M_PI * z)) * (std::cos(chi) * p - std::sin(chi) * q);
}

}  // namespace detail

inline double bessel_j(double nu, double z) {
  if (nu < -0.5) throw domain_error("bessel_j: order must be >= -1/2");
  if (z < 0.0) throw domain_error("bessel_j: argument must be >= 0");
  if (z == 0.0) {
    if (nu == 0.0) return 1.0;
    if (nu > 0.0) return 0.0;
    throw domain_error("bessel_j: J_{-1/2} diverges at z = 0");
  }
  return z < 17.0 ? detail::bessel_j_series(nu, z)
                  : detail::bessel_j_asymptotic(nu, z);
}

// d/dz J_nu(z) = (nu/z) J_nu(z) - J_{nu+1}(z); valid for all supported nu.
inline double bessel_j_derivative(double nu, double z) {
  return (nu / z) * bessel_j(nu, z) - bessel_j(nu + 1.0, z);
}

// i-th positive zero of J_nu (i = 1, 2, ...): McMahon expansion plus Newton.
inline double bessel_j_zero(double nu, int i) {
  if (nu < 0.0) throw domain_error("bessel_j_zero: order must be >= 0");
  if (i < 1) throw domain_error("bessel_j_zero: index must be >= 1");
  const double mu = 4.0 * nu * nu;
  const double beta = (i + 0.5 * nu - 0.25) * M_PI;
  const double b8 = 8.0 * beta;
  double x = beta - (mu - 1.0) / b8 -
             4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * b8 * b8 * b8);
  // low zeros of higher orders need a few extra Newton steps
  for (int it = 0; it < 8; ++it) {
    const double f = bessel_j(nu, x);
    const double df = bessel_j_derivative(nu, x);
    const double dx = f / df;
    x -= dx;
    if (std::abs(dx) < 1e-14 * x) break;
  }
  return x;
}

namespace detail {

inline bool is_half_integer(double nu) {
  return std::abs(nu - std::floor(nu)) == 0.5;
}

// K_{p+1/2}(z) = sqrt(pi/(2z)) e^{-z} sum_j (p+j)! / (j! (p-j)! (2z)^j);
// all terms positive, no cancellation.
inline double bessel_k_half_integer(double nu, double z) {
  const int p = static_cast<int>(std::floor(nu));
  double term = 1.0, sum = 1.0;
  for (int j = 1; j <= p; ++j) {
    term *= (p + j) * (p - j + 1) / (2.0 * j * z);
    sum += term;
  }
  return std::sqrt(M_PI / (2.0 * z)) * std::exp(-z) * sum;
}

// e^z K_nu(z) via the cosh integral; the upper limit is pushed until the
// exponent has decayed past double precision even against cosh(nu t) growth.
inline double bessel_k_scaled_integral(double nu, double z) {
  double T = std::acosh(1.0 + 46.0 / z);
  while (z * (std::cosh(T) - 1.0) - nu * T < 46.0 && T < 80.0) T += 1.0;
  auto f = [nu, z](double t) {
    return std::exp(-z * (std::cosh(t) - 1.0)) * std::cosh(nu * t);
  };
  QuadratureResult r = integrate(f, 0.0, T, 1e-300, 1e-14);
  return r.value;
}

}  // namespace detail

// e^z K_nu(z), safe against underflow at large z.
inline double bessel_k_scaled(double nu, double z) {
  nu = std::abs(nu);
  if (!(z > 0.0)) throw domain_error("bessel_k: argument must be > 0");
  if (detail::is_half_integer(nu)) {
    const int p = static_cast<int>(std::floor(nu));
    double term = 1.0, sum = 1.0;
    for (int j = 1; j <= p; ++j) {
      term *= (p + j) * (p - j + 1) / (2.0 * j * z);
      sum += term;
    }
    return std::sqrt(M_PI / (2.0 * z)) * sum;
  }
  return detail::bessel_k_scaled_integral(nu, z);
}

inline double bessel_k(double nu, double z) {
  nu = std::abs(nu);
  if (!(z > 0.0)) throw domain_error("bessel_k: argument must be > 0");
  if (detail::is_half_integer(nu)) return detail::bessel_k_half_integer(nu, z);
  return std::exp(-z) * detail::bessel_k_scaled_integral(nu, z);
}

}  // namespace gcmera
