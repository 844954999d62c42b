#pragma once

// Gauge-invariance and UV-regularity witnesses.
//
// Gauge violation: the <Pi_par Pi_par> density alpha_par(k,s)/2. Its large-k
// plateau is m(s)^2/(2 Lambda), so its log decays in s with slope exactly -2.
//
// Coincidence limit: int d^dk (1/alpha - large-k limit) over balls of
// growing radius classifies states as UV-finite or divergent; for the
// order-n entangler family the integral is finite iff d < 2n. The integrand
// is evaluated through the rationalized deviations in alpha_models, which
// stay exact where the naive difference would be pure roundoff.

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "gcmera/alpha_models.hpp"
#include "gcmera/correlators.hpp"
#include "gcmera/params.hpp"
#include "gcmera/quadrature.hpp"

namespace gcmera {

// <Pi_par Pi_par> density at k; zero exactly on gauge-invariant states.
inline double gauge_violation(const GaussianVectorState& state, double k) {
  CorrelatorSpec spec{FieldKind::Pi, Polarization::longitudinal,
                      Representation::momentum_density};
  return momentum_density(state, spec, k);
}

struct GaugeDecayFit {
  double slope = 0.0;      // d ln(plateau) / ds
  double intercept = 0.0;
  std::vector<std::pair<double, double>> samples;  // (s, plateau)
};

// Least-squares fit of ln <Pi_par Pi_par>(k >> Lambda) against s. The
// plateau is sampled at k = 1e6 Lambda where the finite-k correction is
// below 1e-12. Exact law: plateau = Lambda e^{-2s} / 2, slope -2.
inline GaugeDecayFit gauge_violation_decay(const ModelParams& base,
                                           const std::vector<double>& s_grid) {
  if (s_grid.size() < 2)
    throw validation_error("gauge_violation_decay: need >= 2 scales");
  GaugeDecayFit fit;
  const double k_plateau = 1e6 * base.lambda;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (double s : s_grid) {
    ModelParams p = base;
    p.s = Scale::finite(s);
    const GaussianVectorState state =
        p.n == 1 ? magic_cmera_state(p) : generalized_cmera_state(p);
    const double v = gauge_violation(state, k_plateau);
    fit.samples.emplace_back(s, v);
    const double y = std::log(v);
    sx += s;
    sy += y;
    sxx += s * s;
    sxy += s * y;
  }
  const double n = static_cast<double>(s_grid.size());
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / n;
  return fit;
}

enum class Verdict { finite, divergent };

struct RegularityReport {
  int d = 0;
  int n = 1;
  Polarization polarization = Polarization::transverse;
  Verdict verdict = Verdict::finite;
  // finite: extrapolated value of the integral; divergent: growth exponent
  // of the partial integrals (0 indicates logarithmic growth)
  double estimate = 0.0;
  std::vector<std::pair<double, double>> trace;  // (cutoff K, partial integral)
};

struct RefinementSchedule {
  double k0_over_lambda = 16.0;
  int doublings = 9;
};

// Evaluate int_{|k|<K} d^dk (1/alpha(k) - asymptote) over a dyadic cutoff
// schedule and classify the trace. Model selection follows least squares on
// {constant, b log K, b K^p}, with the exponent p taken from the slope of the
// shell increments; a winner must beat the opposite verdict by 10x in
// residual, otherwise the trace is ambiguous and a numerical_error is thrown.
inline RegularityReport uv_coincidence_limit(
    const GaussianVectorState& state, Polarization pol, int d,
    const RefinementSchedule& sched = {}) {
  if (d < 1) throw validation_error("uv_coincidence_limit: d >= 1");
  if (state.label != StateLabel::cmera_magic &&
      state.label != StateLabel::cmera_generalized &&
      state.label != StateLabel::unentangled)
    throw validation_error(
        "uv_coincidence_limit: state must have a constant large-k 1/alpha");
  if (pol == Polarization::longitudinal &&
      state.spectrum.longitudinal_constrained)
    throw validation_error(
        "uv_coincidence_limit: longitudinal sector is constrained");
  const ModelParams& par = state.params;
  const double lam = par.lambda;
  const double mu = state.label == StateLabel::unentangled ? 1.0 : par.mu();
  const int n = state.label == StateLabel::cmera_generalized ? par.n : 1;
  const double sphere = 2.0 * std::pow(M_PI, 0.5 * d) / std::tgamma(0.5 * d);

  auto integrand = [&](double k) {
    const double dev = pol == Polarization::transverse
                           ? detail::inv_alpha_perp_dev(k, lam, mu, n)
                           : detail::inv_alpha_par_dev(k, lam, mu, n);
    return sphere * std::pow(k, d - 1) * dev;
  };

  RegularityReport rep;
  rep.d = d;
  rep.n = n;
  rep.polarization = pol;

  double K = sched.k0_over_lambda * lam;
  double partial = integrate(integrand, 0.0, K, 0.0, 1e-12).value;
  rep.trace.emplace_back(K, partial);
  std::vector<double> increments;
  for (int j = 0; j < sched.doublings; ++j) {
    const double inc = integrate(integrand, K, 2.0 * K, 0.0, 1e-12).value;
    K *= 2.0;
    partial += inc;
    rep.trace.emplace_back(K, partial);
    increments.push_back(inc);
  }

  // a trace whose trailing increments fall below the noise floor has
  // converged numerically: finite
  const int m = static_cast<int>(increments.size());
  const double floor_ = 1e-13 * (std::abs(partial) + 1e-300);
  std::vector<int> live;
  for (int j = 0; j < m; ++j)
    if (std::abs(increments[j]) > floor_) live.push_back(j);
  if (live.empty() || live.back() < m - 2) {
    rep.verdict = Verdict::finite;
    rep.estimate = partial;
    return rep;
  }

  // increment slope: log2 |D_j| should be linear in j with slope p = d - 2n;
  // use the last few live shells
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int used = 0;
  const int take = std::min<int>(6, static_cast<int>(live.size()));
  for (int t = static_cast<int>(live.size()) - take;
       t < static_cast<int>(live.size()); ++t) {
    const int j = live[t];
    const double y = std::log2(std::abs(increments[j]));
    sx += j;
    sy += y;
    sxx += static_cast<double>(j) * j;
    sxy += j * y;
    ++used;
  }
  if (used < 3)
    throw numerical_error("uv_coincidence_limit: trace too short to classify");
  const double p_hat = (used * sxy - sx * sy) / (used * sxx - sx * sx);

  // least-squares residuals of the three models over the tail of the trace
  auto sse_of = [&](const std::function<double(double)>& basis) {
    // fit I ~ c + b * basis(K) on the tail half
    double bx = 0, by = 0, bxx = 0, bxy = 0;
    int cnt = 0;
    const int start = static_cast<int>(rep.trace.size()) / 2;
    for (int i = start; i < static_cast<int>(rep.trace.size()); ++i) {
      const double X = basis(rep.trace[i].first);
      const double Y = rep.trace[i].second;
      bx += X; by += Y; bxx += X * X; bxy += X * Y;
      ++cnt;
    }
    const double det = cnt * bxx - bx * bx;
    const double b = det != 0.0 ? (cnt * bxy - bx * by) / det : 0.0;
    const double c = (by - b * bx) / cnt;
    double sse = 0.0;
    for (int i = start; i < static_cast<int>(rep.trace.size()); ++i) {
      const double r = rep.trace[i].second - c - b * basis(rep.trace[i].first);
      sse += r * r;
    }
    return std::pair<double, double>(sse, c);
  };
  const auto [sse_const, c_const] = sse_of([](double) { return 0.0; });
  const auto [sse_log, c_log] = sse_of([](double K_) { return std::log(K_); });
  double sse_pow = sse_const;
  double c_pow = c_const;
  if (std::abs(p_hat) > 0.1) {
    const auto [sp, cp] = sse_of([p_hat](double K_) { return std::pow(K_, p_hat); });
    sse_pow = sp;
    c_pow = cp;
  }

  const double sse_finite = p_hat < -0.1 ? std::min(sse_const, sse_pow)
                                         : sse_const;
  const double sse_diverg = p_hat > 0.1 ? std::min(sse_log, sse_pow)
                                        : sse_log;
  if (sse_finite < sse_diverg) {
    if (10.0 * sse_finite > sse_diverg && std::abs(p_hat) < 0.4)
      throw numerical_error("uv_coincidence_limit: ambiguous trace", p_hat);
    rep.verdict = Verdict::finite;
    rep.estimate = p_hat < -0.1 ? c_pow : c_const;
  } else {
    if (10.0 * sse_diverg > sse_finite && std::abs(p_hat) < 0.4)
      throw numerical_error("uv_coincidence_limit: ambiguous trace", p_hat);
    rep.verdict = Verdict::divergent;
    rep.estimate = std::abs(p_hat) <= 0.4 ? 0.0 : p_hat;
  }
  return rep;
}

struct ExpansionCheck {
  double coeff_perp = 0.0;        // estimated subleading coefficient, perp
  double coeff_par = 0.0;         // estimated subleading coefficient, par
  double exact_perp = 0.0;
  double exact_par = 0.0;
  double deviation_perp = 0.0;    // relative, or absolute when exact == 0
  double deviation_par = 0.0;
};

// Compare the numerically evaluated 1/alpha against the two-term large-k
// expansions: 1/alpha_perp ~ 1/Lambda + (Lambda^2n - m^2n)/(2 Lambda k^2n)
// and 1/alpha_par ~ Lambda/m^2 + Lambda (m^2n - Lambda^2n)/(2 m^2 k^2n).
inline ExpansionCheck large_k_expansion_check(const ModelParams& params,
                                              double k_probe) {
  params.validate();
  if (params.s.is_infinite())
    throw validation_error("large_k_expansion_check: finite s required");
  if (!(k_probe > 10.0 * params.lambda))
    throw validation_error("large_k_expansion_check: need k_probe >> Lambda");
  const int n = params.n;
  const GaussianVectorState state =
      n == 1 ? magic_cmera_state(params) : generalized_cmera_state(params);
  const double lam = params.lambda;
  const double m = params.mass();
  const double k2n = detail::pow_int(k_probe, 2 * n);
  const double lam2n = detail::pow_int(lam, 2 * n);
  const double m2n = detail::pow_int(m, 2 * n);

  ExpansionCheck chk;
  chk.coeff_perp =
      (1.0 / eval_alpha(state, Polarization::transverse, k_probe) - 1.0 / lam) *
      k2n;
  chk.coeff_par = (1.0 / eval_alpha(state, Polarization::longitudinal, k_probe) -
                   lam / (m * m)) *
                  k2n;
  chk.exact_perp = (lam2n - m2n) / (2.0 * lam);
  chk.exact_par = lam * (m2n - lam2n) / (2.0 * m * m);
  auto rel = [](double got, double want) {
    return want == 0.0 ? std::abs(got) : std::abs(got - want) / std::abs(want);
  };
  chk.deviation_perp = rel(chk.coeff_perp, chk.exact_perp);
  chk.deviation_par = rel(chk.coeff_par, chk.exact_par);
  return chk;
}

// || f_s ||_2 of the Appendix-B decomposition
// <Pi Pi>(x) ~ (m^2/Lambda) delta(x) + f_s(x) in d = 1:
// by Parseval, ||f_s||_2^2 = (1/pi) int_0^inf dk (alpha_par/2 - m^2/(2 Lambda))^2.
inline double appendix_b_norm(const ModelParams& params) {
  params.validate();
  if (params.d != 1) throw validation_error("appendix_b_norm: d = 1 only");
  if (params.s.is_infinite())
    throw validation_error("appendix_b_norm: finite s required");
  const double lam = params.lambda;
  const double mu = params.mu();
  const int n = params.n;
  auto f = [lam, mu, n](double k) {
    const double dev = detail::alpha_par_half_dev(k, lam, mu, n);
    return dev * dev;
  };
  // integrand decays like k^-4; [0, 1e5 Lambda] leaves a negligible tail
  QuadratureResult r = integrate_segments(
      f, {0.0, lam, 10.0 * lam, 100.0 * lam, 1e5 * lam}, 0.0, 1e-12);
  return std::sqrt(r.value / M_PI);
}

}  // namespace gcmera
