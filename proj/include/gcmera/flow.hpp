#pragma once

// Entangler profiles g_par(k), g_perp(k) and the scale-flow integral
//   alpha(k, s) = Lambda exp(-2 int_0^s du g(k e^{s-u})),
// evaluated after the substitution v = s - u as an adaptive quadrature on
// v in [0, s]. The closed-form spectra in alpha_models are cross-validated
// against this independent route, and against the transport equation
//   d_s alpha = k d_k alpha - 2 g(k) alpha
// obtained by differentiating the solved flow (a derived consistency check;
// the flow itself is only ever written in integral form).

#include <functional>

#include "gcmera/alpha_models.hpp"
#include "gcmera/params.hpp"
#include "gcmera/quadrature.hpp"
#include "gcmera/transforms.hpp"

namespace gcmera {

enum class ProfileFamily { magic, generalized };

struct EntanglerProfile {
  std::function<double(double)> g_par;
  std::function<double(double)> g_perp;
  ProfileFamily family = ProfileFamily::magic;
  int n = 1;
  double lambda = 1.0;
};

// g_perp = Lambda^2 / (2 (Lambda^2 + k^2)), g_par = 1 - g_perp.
inline EntanglerProfile magic_profile(double lambda) {
  if (!(lambda > 0.0)) throw validation_error("magic_profile: lambda > 0");
  EntanglerProfile prof;
  prof.lambda = lambda;
  prof.g_perp = [lambda](double k) {
    const double kap = k / lambda;
    return 0.5 / (1.0 + kap * kap);
  };
  prof.g_par = [lambda](double k) {
    const double kap = k / lambda;
    return 1.0 - 0.5 / (1.0 + kap * kap);
  };
  return prof;
}

// Appendix-C family (n >= 2):
// g_perp = (1 + n kap^(2n-2)) / (2 (1 + kap^(2n-2)) (1 + kap^2 + kap^(2n))).
inline EntanglerProfile generalized_profile(double lambda, int n) {
  if (!(lambda > 0.0)) throw validation_error("generalized_profile: lambda > 0");
  if (n < 2) throw validation_error("generalized_profile: n >= 2");
  EntanglerProfile prof;
  prof.family = ProfileFamily::generalized;
  prof.n = n;
  prof.lambda = lambda;
  auto gp = [lambda, n](double k) {
    const double kap = k / lambda;
    const double k2 = kap * kap;
    const double k2n2 = detail::pow_int(kap, 2 * n - 2);
    const double k2n = k2n2 * k2;
    return (1.0 + n * k2n2) / (2.0 * (1.0 + k2n2) * (1.0 + k2 + k2n));
  };
  prof.g_perp = gp;
  prof.g_par = [gp](double k) { return 1.0 - gp(k); };
  return prof;
}

inline EntanglerProfile profile_for(const ModelParams& params) {
  return params.n == 1 ? magic_profile(params.lambda)
                       : generalized_profile(params.lambda, params.n);
}

// Position-space profile of the magic entangler: the radial inverse Fourier
// transform of Lambda^2/(2 (Lambda^2 + k^2)) in d dimensions, proportional
// to K_{(d-2)/2}(Lambda x)/(Lambda x)^{(d-2)/2}. The generalized family has
// no position-space profile here.
inline double profile_position_space(const EntanglerProfile& profile, double x,
                                     int d) {
  if (profile.family != ProfileFamily::magic)
    throw validation_error(
        "profile_position_space: magic family only");
  if (!(x > 0.0)) throw validation_error("profile_position_space: x > 0");
  const double lam = profile.lambda;
  // (Lambda^2/2) * Matern(nu = 1) has the closed Bessel-K form; the
  // quadrature oracle for it lives in the tests.
  return 0.5 * lam * lam * radial_matern_transform(1.0, lam, d, x);
}

// alpha(k, s) by adaptive quadrature of the flow exponent, absolute error of
// the exponent <= tol. Returns Lambda exp(-2 I).
inline double flow_alpha_quadrature(const EntanglerProfile& profile,
                                    Polarization pol, double k, double s,
                                    double tol = 1e-12) {
  if (!(k > 0.0)) throw domain_error("flow_alpha_quadrature: k > 0");
  if (!(s >= 0.0)) throw validation_error("flow_alpha_quadrature: s >= 0");
  if (!(tol > 0.0)) throw validation_error("flow_alpha_quadrature: tol > 0");
  if (s == 0.0) return profile.lambda;
  const auto& g =
      pol == Polarization::longitudinal ? profile.g_par : profile.g_perp;
  auto integrand = [&g, k](double v) { return g(k * std::exp(v)); };
  QuadratureResult r = integrate(integrand, 0.0, s, tol);
  return profile.lambda * std::exp(-2.0 * r.value);
}

// k dln(alpha)/dk - 2 g(k), central differences in ln k (relative step 1e-5).
// Vanishes identically when alpha_fn is a fixed point of the flow under g.
inline double fixed_point_residual(const EntanglerProfile& profile,
                                   const std::function<double(double)>& alpha_fn,
                                   Polarization pol, double k) {
  if (!(k > 0.0)) throw domain_error("fixed_point_residual: k > 0");
  const double h = 1e-5;
  const double up = std::log(alpha_fn(k * std::exp(h)));
  const double dn = std::log(alpha_fn(k * std::exp(-h)));
  const double dlog = (up - dn) / (2.0 * h);
  const auto& g =
      pol == Polarization::longitudinal ? profile.g_par : profile.g_perp;
  return dlog - 2.0 * g(k);
}

// Transport-equation residual d_s alpha - k d_k alpha + 2 g(k) alpha on the
// closed-form state, by central finite differences (relative step 1e-5).
inline double flow_pde_residual(const EntanglerProfile& profile,
                                Polarization pol, double k, double s) {
  if (!(k > 0.0)) throw domain_error("flow_pde_residual: k > 0");
  if (!(s > 0.0)) throw validation_error("flow_pde_residual: s > 0 required");
  auto alpha = [&](double kk, double ss) {
    ModelParams p;
    p.lambda = profile.lambda;
    p.s = Scale::finite(ss);
    p.n = profile.n;
    const GaussianVectorState state = profile.family == ProfileFamily::magic
                                          ? magic_cmera_state(p)
                                          : generalized_cmera_state(p);
    return eval_alpha(state, pol, kk);
  };
  const double hs = 1e-5 * std::max(s, 1.0);
  const double hk = 1e-5;
  const double ds = (alpha(k, s + hs) - alpha(k, s - hs)) / (2.0 * hs);
  const double kdk =
      (alpha(k * std::exp(hk), s) - alpha(k * std::exp(-hk), s)) / (2.0 * hk);
  const auto& g =
      pol == Polarization::longitudinal ? profile.g_par : profile.g_perp;
  return ds - kdk + 2.0 * g(k) * alpha(k, s);
}

}  // namespace gcmera
