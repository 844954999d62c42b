#pragma once

// Gaussian vector-boson states parametrized by the pair of spectra
// alpha_par(k), alpha_perp(k): the annihilation operators are
// sqrt(alpha/2) A + i sqrt(1/(2 alpha)) Pi per polarization, so
// <AA> = 1/(2 alpha) and <Pi Pi> = alpha/2.
//
// All closed forms are evaluated in the nondimensional variables
// kappa = k/Lambda, mu = m/Lambda to stay well conditioned for k far from
// Lambda and large n. At s = 0 every cMERA constructor reproduces the
// unentangled state bitwise (the radicals reduce to ratios of identical
// doubles).

#include <functional>

#include "gcmera/params.hpp"

namespace gcmera {

enum class StateLabel {
  unentangled,
  massless_target,
  massive_target,
  cmera_magic,
  cmera_generalized,
  custom,
};

struct PolarizationSpectrum {
  std::function<double(double)> alpha_par;
  std::function<double(double)> alpha_perp;
  // True only when alpha_par == 0, i.e. the gauge constraint
  // Pi_par |psi> = 0 holds. Consumers must consult this flag before
  // dividing by alpha_par.
  bool longitudinal_constrained = false;
};

struct GaussianVectorState {
  ModelParams params;
  PolarizationSpectrum spectrum;
  StateLabel label = StateLabel::custom;
};

inline double eval_alpha(const GaussianVectorState& state, Polarization pol,
                         double k) {
  if (!(k > 0.0))
    throw domain_error("alpha is defined for k > 0 only (zero mode excluded)");
  return pol == Polarization::longitudinal ? state.spectrum.alpha_par(k)
                                           : state.spectrum.alpha_perp(k);
}

// |Lambda>: alpha_par = alpha_perp = Lambda.
inline GaussianVectorState unentangled_state(const ModelParams& params) {
  params.validate();
  const double lam = params.lambda;
  PolarizationSpectrum sp;
  sp.alpha_par = [lam](double) { return lam; };
  sp.alpha_perp = [lam](double) { return lam; };
  sp.longitudinal_constrained = false;
  return {params, sp, StateLabel::unentangled};
}

// Ground state of the massless U(1) theory: alpha_perp(k) = k and the
// longitudinal sector removed by Gauss's law (alpha_par == 0 + flag).
inline GaussianVectorState massless_target(const ModelParams& params) {
  params.validate();
  PolarizationSpectrum sp;
  sp.alpha_par = [](double) { return 0.0; };
  sp.alpha_perp = [](double k) { return k; };
  sp.longitudinal_constrained = true;
  return {params, sp, StateLabel::massless_target};
}

// Ground state of the Proca theory with mass m:
// alpha_par = m^2/sqrt(k^2+m^2), alpha_perp = sqrt(k^2+m^2).
inline GaussianVectorState massive_target(const ModelParams& params,
                                          double m) {
  params.validate();
  if (!(m > 0.0)) throw validation_error("massive_target requires m > 0");
  PolarizationSpectrum sp;
  sp.alpha_par = [m](double k) { return m * (m / std::sqrt(k * k + m * m)); };
  sp.alpha_perp = [m](double k) { return std::sqrt(k * k + m * m); };
  sp.longitudinal_constrained = false;
  return {params, sp, StateLabel::massive_target};
}

namespace detail {

inline double magic_perp(double k, double lam, double mu_) {
  const double kap = k / lam;
  return lam * std::sqrt((kap * kap + mu_ * mu_) / (kap * kap + 1.0));
}

inline double magic_par(double k, double lam, double mu_) {
  const double kap = k / lam;
  const double m = lam * mu_;
  return m * (m / lam) *
         std::sqrt((kap * kap + 1.0) / (kap * kap + mu_ * mu_));
}

// Appendix-C family. The two radicals are combined into a single ratio so
// that mu = 1 gives exactly 1 (numerator and denominator are then the same
// two doubles multiplied in opposite order).
inline double generalized_perp(double k, double lam, double mu_, int n) {
  const double kap = k / lam;
  const double kap2 = kap * kap;
  const double kap2n = pow_int(kap, 2 * n);
  const double p = kap2n + kap2;                        // kappa^2n + kappa^2
  const double q = kap2n + kap2 * pow_int(mu_, 2 * n - 2);
  const double num = p * (q + pow_int(mu_, 2 * n));
  const double den = (p + 1.0) * q;
  return lam * std::sqrt(num / den);
}

}  // namespace detail

// Magic cMERA state at finite scale s:
//   alpha_perp(k,s) = Lambda sqrt((k^2+m^2)/(k^2+Lambda^2)),
//   alpha_par(k,s)  = (m^2/Lambda) sqrt((k^2+Lambda^2)/(k^2+m^2)).
inline GaussianVectorState magic_cmera_state(const ModelParams& params) {
  params.validate();
  if (params.s.is_infinite())
    throw validation_error("magic_cmera_state requires finite s (use fixed_point_state)");
  const double lam = params.lambda;
  const double mu_ = params.mu();
  PolarizationSpectrum sp;
  sp.alpha_perp = [lam, mu_](double k) { return detail::magic_perp(k, lam, mu_); };
  sp.alpha_par = [lam, mu_](double k) { return detail::magic_par(k, lam, mu_); };
  sp.longitudinal_constrained = false;
  return {params, sp, StateLabel::cmera_magic};
}

// s -> infinity fixed point: gauge invariant, alpha_perp = Lambda k / sqrt(k^2+Lambda^2)
// for the magic family; for n > 1 the Appendix-C fixed point is used.
inline GaussianVectorState fixed_point_state(const ModelParams& params) {
  params.validate();
  const double lam = params.lambda;
  const int n = params.n;
  PolarizationSpectrum sp;
  if (n == 1) {
    sp.alpha_perp = [lam](double k) {
      const double kap = k / lam;
      return lam * (kap / std::sqrt(kap * kap + 1.0));
    };
  } else {
    sp.alpha_perp = [lam, n](double k) {
      const double kap = k / lam;
      const double p = detail::pow_int(kap, 2 * n) + kap * kap;
      return lam * std::sqrt(p / (p + 1.0));
    };
  }
  sp.alpha_par = [](double) { return 0.0; };
  sp.longitudinal_constrained = true;
  ModelParams p = params;
  p.s = Scale::infinity();
  return {p, sp, n == 1 ? StateLabel::cmera_magic : StateLabel::cmera_generalized};
}

// Appendix-C cMERA state for regularity order n >= 2; alpha_par = m^2/alpha_perp.
inline GaussianVectorState generalized_cmera_state(const ModelParams& params) {
  params.validate();
  if (params.n < 2)
    throw validation_error("generalized_cmera_state requires n >= 2");
  if (params.s.is_infinite())
    throw validation_error("generalized_cmera_state requires finite s");
  const double lam = params.lambda;
  const double mu_ = params.mu();
  const int n = params.n;
  const double m = params.mass();
  PolarizationSpectrum sp;
  sp.alpha_perp = [lam, mu_, n](double k) {
    return detail::generalized_perp(k, lam, mu_, n);
  };
  sp.alpha_par = [lam, mu_, n, m](double k) {
    return m * (m / detail::generalized_perp(k, lam, mu_, n));
  };
  sp.longitudinal_constrained = false;
  return {params, sp, StateLabel::cmera_generalized};
}

namespace detail {

// Cancellation-free deviations of the spectra from their large-k asymptotes,
// used by the coincidence-limit diagnostics where the plain difference
// 1/alpha - const would drown in roundoff at k >> Lambda.
//
// For the magic family with R = (kappa^2+1)/(kappa^2+mu^2):
//   1/alpha_perp - 1/Lambda        = (1/Lambda)   (sqrt(R) - 1)
//   1/alpha_par  - Lambda/m^2      = (Lambda/m^2) (1/sqrt(R) - 1)
// and sqrt(R)-1 = (R-1)/(sqrt(R)+1) with R-1 = (1-mu^2)/(kappa^2+mu^2).
// The generalized family admits the same treatment with
//   R - 1 = (kappa^2n (1-mu^2n) + kappa^2 mu^(2n-2) (1-mu^2)) / (p (q+mu^2n)).
inline double ratio_minus_one(double k, double lam, double mu_, int n) {
  const double kap = k / lam;
  const double kap2 = kap * kap;
  if (n == 1) return (1.0 - mu_ * mu_) / (kap2 + mu_ * mu_);
  const double kap2n = pow_int(kap, 2 * n);
  const double mu2n = pow_int(mu_, 2 * n);
  const double p = kap2n + kap2;
  const double q = kap2n + kap2 * pow_int(mu_, 2 * n - 2);
  return (kap2n * (1.0 - mu2n) +
          kap2 * pow_int(mu_, 2 * n - 2) * (1.0 - mu_ * mu_)) /
         (p * (q + mu2n));
}

// 1/alpha_perp(k,s) - 1/Lambda, stable at any k.
inline double inv_alpha_perp_dev(double k, double lam, double mu_, int n) {
  const double rm1 = ratio_minus_one(k, lam, mu_, n);
  const double sr = std::sqrt(1.0 + rm1);
  return rm1 / ((sr + 1.0) * lam);
}

// 1/alpha_par(k,s) - Lambda/m^2, stable at any k.
inline double inv_alpha_par_dev(double k, double lam, double mu_, int n) {
  const double rm1 = ratio_minus_one(k, lam, mu_, n);
  const double sr = std::sqrt(1.0 + rm1);
  // 1/sqrt(R) - 1 = -(R-1)/(sqrt(R)(sqrt(R)+1))
  const double m2 = lam * mu_ * lam * mu_;
  return -(lam / m2) * rm1 / (sr * (sr + 1.0));
}

// alpha_par(k,s)/2 - m^2/(2 Lambda), the Appendix-B subtracted Pi density.
inline double alpha_par_half_dev(double k, double lam, double mu_, int n) {
  const double rm1 = ratio_minus_one(k, lam, mu_, n);
  const double sr = std::sqrt(1.0 + rm1);
  const double m2 = lam * mu_ * lam * mu_;
  return (m2 / (2.0 * lam)) * rm1 / (sr + 1.0);
}

// alpha_perp(k,s)/2 - Lambda/2.
inline double alpha_perp_half_dev(double k, double lam, double mu_, int n) {
  const double rm1 = ratio_minus_one(k, lam, mu_, n);
  const double sr = std::sqrt(1.0 + rm1);
  return -(lam / 2.0) * rm1 / (sr * (sr + 1.0));
}

}  // namespace detail

}  // namespace gcmera
