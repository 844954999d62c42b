#pragma once

// d-dimensional radial Fourier transforms and the asymptote subtraction that
// splits a momentum density into distributional and regular parts.
//
// Convention (fixed once, globally):  f(x) = (2pi)^{-d} int d^dk e^{ik.x} F(k),
// which for rotationally symmetric F reduces to the one-dimensional kernel
//   f(x) = (2pi)^{-d/2} x^{1-d/2} int_0^inf dk k^{d/2} J_{d/2-1}(kx) F(k),
// and to (1/pi) int_0^inf dk cos(kx) F(k) in d = 1. Under this convention a
// constant c0 maps to c0 delta^(d)(x) and c2 k^2 maps to -c2 Lap delta^(d)(x).
//
// Oscillatory integrals are partitioned between consecutive kernel zeros and
// the alternating series of panel integrals is accelerated with Wynn's
// epsilon algorithm; a damped-exponential path (e^{-eps k}, eps -> 0 by
// Richardson extrapolation) is provided as an independent cross-check.

#include <cmath>
#include <functional>
#include <optional>
#include <tuple>
#include <vector>

#include "gcmera/bessel.hpp"
#include "gcmera/params.hpp"
#include "gcmera/quadrature.hpp"

namespace gcmera {

// Even-polynomial large-k behaviour c0 + c2 k^2.
struct Asymptote {
  double c0 = 0.0;
  double c2 = 0.0;
};

struct RadialFunction {
  std::function<double(double)> eval;
  std::optional<Asymptote> asymptote;
  // p such that eval(k) - asymptote(k) = O(k^-p)
  double decay_exponent = 0.0;
};

// Distributional coefficients plus the regular remainder of a correlator.
struct SubtractedCorrelator {
  double delta_coeff = 0.0;      // coefficient of delta^(d)(x)
  double lap_delta_coeff = 0.0;  // coefficient of Lap delta^(d)(x)
  std::function<double(double)> regular;
};

namespace detail {

// Wynn's epsilon algorithm over a stream of partial sums. Even columns of
// the table are the accelerated estimates.
class WynnEpsilon {
 public:
  void push(double s) {
    std::vector<double> next(diag_.size() + 1);
    next[0] = s;
    for (std::size_t k = 1; k < next.size(); ++k) {
      const double denom = next[k - 1] - diag_[k - 1];
      const double base = k >= 2 ? diag_[k - 2] : 0.0;
      if (denom == 0.0) {
        // exactly converged tail; freeze the table here
        next.resize(k);
        break;
      }
      next[k] = base + 1.0 / denom;
    }
    diag_ = std::move(next);
    prev_estimate_ = estimate_;
    std::size_t top = diag_.size() - 1;
    if (top % 2 == 1) --top;  // even columns only
    estimate_ = diag_[top];
  }

  double estimate() const { return estimate_; }
  double error() const { return std::abs(estimate_ - prev_estimate_); }
  int count() const { return static_cast<int>(diag_.size()); }

 private:
  std::vector<double> diag_;
  double estimate_ = 0.0;
  double prev_estimate_ = 0.0;
};

struct RadialKernel {
  // full integrand weight w(k) such that f(x) = int_0^inf w(k) F(k) dk
  std::function<double(double)> weight;
  // i-th zero of the oscillatory kernel factor
  std::function<double(int)> zero;
};

inline RadialKernel make_radial_kernel(int d, double x) {
  RadialKernel kern;
  if (d == 1) {
    kern.weight = [x](double k) { return std::cos(k * x) / M_PI; };
    kern.zero = [x](int i) { return (i - 0.5) * M_PI / x; };
    return kern;
  }
  const double nu = 0.5 * d - 1.0;
  const double front =
      std::pow(2.0 * M_PI, -0.5 * d) * std::pow(x, 1.0 - 0.5 * d);
  kern.weight = [nu, front, x, d](double k) {
    return front * std::pow(k, 0.5 * d) * bessel_j(nu, k * x);
  };
  kern.zero = [nu, x](int i) { return bessel_j_zero(nu, i) / x; };
  return kern;
}

}  // namespace detail

// Radial transform of F at x > 0 with estimated absolute error <= tol.
// F must decay (after any caller-side subtraction) fast enough that the
// partitioned series of panel integrals converges, possibly only in the
// accelerated sense.
inline double radial_fourier(const RadialFunction& F, int d, double x,
                             double tol) {
  if (d < 1) throw validation_error("radial_fourier: d must be >= 1");
  if (!(x > 0.0)) throw validation_error("radial_fourier: x must be > 0");
  if (!(tol > 0.0)) throw validation_error("radial_fourier: tol must be > 0");
  const auto kern = detail::make_radial_kernel(d, x);
  auto integrand = [&](double k) { return kern.weight(k) * F.eval(k); };

  const double z1 = kern.zero(1);
  QuadratureResult head = integrate(integrand, 0.0, z1, 0.25 * tol);

  detail::WynnEpsilon eps;
  double plain = 0.0;
  double prev_term = 0.0;
  const int max_terms = 96;
  for (int i = 1; i <= max_terms; ++i) {
    const double a = kern.zero(i);
    const double b = kern.zero(i + 1);
    const double term = gauss_panel(integrand, a, b).value;
    plain += term;
    eps.push(plain);
    // fast-decaying integrands: the plain sum has already converged
    if (i >= 3 && std::abs(term) + std::abs(prev_term) < 0.05 * tol)
      return head.value + plain;
    if (i >= 8 && eps.error() < 0.5 * tol && std::isfinite(eps.estimate()))
      return head.value + eps.estimate();
    prev_term = term;
  }
  throw numerical_error(
      "radial_fourier: series acceleration did not converge "
      "(partial sum " + std::to_string(head.value + plain) + ")",
      eps.error());
}

// Cross-check path: transform of F(k) e^{-eps k} for a decreasing sequence
// of eps, extrapolated to eps = 0 with a Neville table.
inline double radial_fourier_damped(const RadialFunction& F, int d, double x,
                                    double tol) {
  const int levels = 7;
  std::vector<double> epses(levels), val(levels);
  double e = 1.0 / x;
  for (int i = 0; i < levels; ++i) {
    RadialFunction damped;
    const double ei = e;
    damped.eval = [&F, ei](double k) { return F.eval(k) * std::exp(-ei * k); };
    val[i] = radial_fourier(damped, d, x, 0.1 * tol);
    epses[i] = e;
    e *= 0.5;
  }
  // Neville extrapolation to eps = 0
  for (int m = 1; m < levels; ++m)
    for (int i = levels - 1; i >= m; --i)
      val[i] = val[i] + (val[i] - val[i - 1]) * epses[i] /
                            (epses[i - m] - epses[i]);
  return val[levels - 1];
}

// Closed form: under our convention the transform of k^a in d dimensions is
// coeff(a, d) * x^{-d-a} with coeff = 2^a pi^{-d/2} Gamma((d+a)/2)/Gamma(-a/2).
// Even non-negative integer a is purely distributional: coeff = 0.
inline double radial_power_transform_coeff(double a, int d) {
  if (a >= 0.0 && std::fmod(a, 2.0) == 0.0) return 0.0;
  if (a <= -d) throw validation_error("radial power transform: need a > -d");
  return std::pow(2.0, a) * std::pow(M_PI, -0.5 * d) *
         std::tgamma(0.5 * (d + a)) / std::tgamma(-0.5 * a);
}

// Closed form: transform of (k^2 + m^2)^{-nu} in d dimensions,
//   f(x) = 2^{1-nu} (2pi)^{-d/2} / Gamma(nu) m^{d-2nu} (mx)^{nu-d/2}
//          K_{d/2-nu}(mx),
// continued to negative nu through 1/Gamma.
inline double radial_matern_transform(double nu, double m, int d, double x) {
  if (!(m > 0.0) || !(x > 0.0))
    throw validation_error("matern transform: need m > 0 and x > 0");
  const double z = m * x;
  const double front = std::pow(2.0, 1.0 - nu) *
                       std::pow(2.0 * M_PI, -0.5 * d) / std::tgamma(nu) *
                       std::pow(m, d - 2.0 * nu) * std::pow(z, nu - 0.5 * d);
  return front * bessel_k(0.5 * d - nu, z);
}

// Estimate the even-polynomial asymptote c0 + c2 k^2 of F over the window
// [k_lo, k_hi] by extrapolation in 1/k^2: F(k)/k^2 = c2 + c0/k^2 + ... is
// fitted with a small Vandermonde solve on geometric nodes (iterated
// Richardson). Returns (c0, c2, remainder). Throws numerical_error if the
// estimates drift when the window is shifted.
inline std::tuple<double, double, RadialFunction> subtract_asymptotics(
    const RadialFunction& F, double k_lo, double k_hi) {
  if (!(k_lo > 0.0) || !(k_hi > k_lo))
    throw validation_error("subtract_asymptotics: bad fit window");
  const int nn = 5;
  auto fit = [&](double lo, double hi) {
    std::vector<double> u(nn), rhs(nn);
    const double ratio = std::pow(hi / lo, 1.0 / (nn - 1));
    const double uref = 1.0 / (lo * lo);
    double k = lo;
    for (int i = 0; i < nn; ++i) {
      u[i] = (1.0 / (k * k)) / uref;
      rhs[i] = F.eval(k) / (k * k);
      k *= ratio;
    }
    // Vandermonde solve in powers of u (Gaussian elimination, partial pivot)
    std::vector<std::vector<double>> A(nn, std::vector<double>(nn + 1));
    for (int i = 0; i < nn; ++i) {
      double p = 1.0;
      for (int j = 0; j < nn; ++j) {
        A[i][j] = p;
        p *= u[i];
      }
      A[i][nn] = rhs[i];
    }
    for (int c = 0; c < nn; ++c) {
      int piv = c;
      for (int r = c + 1; r < nn; ++r)
        if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
      std::swap(A[c], A[piv]);
      for (int r = c + 1; r < nn; ++r) {
        const double f = A[r][c] / A[c][c];
        for (int j = c; j <= nn; ++j) A[r][j] -= f * A[c][j];
      }
    }
    std::vector<double> coef(nn);
    for (int r = nn - 1; r >= 0; --r) {
      double sum = A[r][nn];
      for (int j = r + 1; j < nn; ++j) sum -= A[r][j] * coef[j];
      coef[r] = sum / A[r][r];
    }
    return std::pair<double, double>(coef[1] / uref, coef[0]);  // (c0, c2)
  };

  const auto [c0, c2] = fit(k_lo, k_hi);
  const auto [c0b, c2b] = fit(1.5 * k_lo, 1.5 * k_hi);
  const double scale0 = std::abs(c0) + std::abs(c2) * k_lo * k_lo + 1e-300;
  if (std::abs(c0 - c0b) > 1e-6 * scale0 ||
      std::abs(c2 - c2b) * k_lo * k_lo > 1e-6 * scale0)
    throw numerical_error("subtract_asymptotics: extrapolation did not settle",
                          std::abs(c0 - c0b));

  RadialFunction rem;
  const auto base = F.eval;
  const double a0 = c0, a2 = c2;
  rem.eval = [base, a0, a2](double k) { return base(k) - a0 - a2 * k * k; };
  rem.decay_exponent = F.decay_exponent;
  return {c0, c2, rem};
}

// Map the asymptote to distributional coefficients: c0 -> c0 delta^(d),
// c2 k^2 -> -c2 Lap delta^(d) (the sign is fixed by our transform
// convention; d does not enter the mapping).
inline std::pair<double, double> delta_coefficients(double c0, double c2,
                                                    int /*d*/) {
  return {c0, -c2};
}

}  // namespace gcmera
