#pragma once

// Two-point correlation densities per field and polarization, tensor
// assembly through the transverse/longitudinal projectors, and
// position-space correlators split into distributional and regular parts.
//
// Momentum densities: <AA> = 1/(2 alpha), <Pi Pi> = alpha/2 per mode, and in
// d = 2 the scalar B = d1 A2 - d2 A1 has <BB> = k^2/(2 alpha_perp). Electric
// field correlators are the Pi correlators (temporal gauge).
//
// Position space: target states with power-law or massive densities use the
// closed-form transform branches; cMERA-type states go through asymptote
// subtraction plus oscillatory quadrature (module transforms).

#include <cmath>
#include <functional>
#include <vector>

#include "gcmera/alpha_models.hpp"
#include "gcmera/params.hpp"
#include "gcmera/transforms.hpp"

namespace gcmera {

enum class FieldKind { A, Pi, B };
enum class Representation { momentum_density, position_subtracted };

struct CorrelatorSpec {
  FieldKind field = FieldKind::A;
  Polarization polarization = Polarization::transverse;
  Representation representation = Representation::momentum_density;
};

namespace detail {

inline void check_field_dim(const GaussianVectorState& state, FieldKind f) {
  if (f == FieldKind::B && state.params.d != 2)
    throw validation_error("field B is defined in d = 2 only");
}

}  // namespace detail

// Scalar momentum-space density of <X(-k) X(k)>.
inline double momentum_density(const GaussianVectorState& state,
                               const CorrelatorSpec& spec, double k) {
  if (!(k > 0.0)) throw domain_error("momentum_density: k > 0 required");
  detail::check_field_dim(state, spec.field);
  const bool longitudinal =
      spec.polarization == Polarization::longitudinal &&
      spec.field != FieldKind::B;
  const double alpha = longitudinal ? state.spectrum.alpha_par(k)
                                    : state.spectrum.alpha_perp(k);
  switch (spec.field) {
    case FieldKind::A:
      if (longitudinal && state.spectrum.longitudinal_constrained)
        throw domain_error(
            "A_par correlator undefined on a gauge-constrained state "
            "(pure gauge sector)");
      return 1.0 / (2.0 * alpha);
    case FieldKind::Pi:
      return 0.5 * alpha;
    case FieldKind::B:
      return k * k / (2.0 * state.spectrum.alpha_perp(k));
  }
  throw validation_error("momentum_density: unknown field");
}

// <X_i(-k) X_j(k)> density assembled from the projector decomposition
// (delta_ij - k_i k_j / k^2) c_perp + (k_i k_j / k^2) c_par.
inline double tensor_density(const GaussianVectorState& state, FieldKind field,
                             int i, int j, const std::vector<double>& kvec) {
  if (field == FieldKind::B)
    throw validation_error("tensor_density: B is a scalar, use momentum_density");
  const int d = state.params.d;
  if (static_cast<int>(kvec.size()) != d)
    throw validation_error("tensor_density: k vector has wrong dimension");
  if (i < 0 || j < 0 || i >= d || j >= d)
    throw validation_error("tensor_density: index out of range");
  double k2 = 0.0;
  for (double c : kvec) k2 += c * c;
  if (!(k2 > 0.0)) throw domain_error("tensor_density: |k| > 0 required");
  const double k = std::sqrt(k2);
  CorrelatorSpec perp{field, Polarization::transverse,
                      Representation::momentum_density};
  CorrelatorSpec par{field, Polarization::longitudinal,
                     Representation::momentum_density};
  const double c_perp = momentum_density(state, perp, k);
  // the A_par density is infinite on constrained states, but the projector
  // weight of the longitudinal sector may still be zero; Pi_par is just 0
  const double proj = kvec[i] * kvec[j] / k2;
  const double delta = (i == j) ? 1.0 : 0.0;
  double c_par = 0.0;
  if (proj != 0.0 || field == FieldKind::Pi)
    c_par = momentum_density(state, par, k);
  return (delta - proj) * c_perp + proj * c_par;
}

// Distributional and regular parts of the position-space correlator.
// The regular part captures the transform of the density with its
// even-polynomial large-k asymptote removed; the asymptote itself appears as
// delta / Laplacian-of-delta coefficients.
inline SubtractedCorrelator position_correlator_parts(
    const GaussianVectorState& state, const CorrelatorSpec& spec,
    double tol = 1e-10) {
  detail::check_field_dim(state, spec.field);
  if (spec.representation != Representation::position_subtracted)
    throw validation_error(
        "position_correlator: representation must be position_subtracted");
  const int d = state.params.d;
  const double lam = state.params.lambda;

  // closed-form branches for the target states
  if (state.label == StateLabel::massless_target) {
    double coeff = 0.0;  // density = coeff * k^a
    double a = 0.0;
    switch (spec.field) {
      case FieldKind::A:
        if (spec.polarization == Polarization::longitudinal)
          throw domain_error("A_par on gauge-constrained state");
        coeff = 0.5, a = -1.0;
        break;
      case FieldKind::Pi:
        if (spec.polarization == Polarization::longitudinal)
          return {0.0, 0.0, [](double) { return 0.0; }};
        coeff = 0.5, a = 1.0;
        break;
      case FieldKind::B:
        coeff = 0.5, a = 1.0;
        break;
    }
    const double c = coeff * radial_power_transform_coeff(a, d);
    const double p = d + a;
    return {0.0, 0.0, [c, p](double x) { return c * std::pow(x, -p); }};
  }
  if (state.label == StateLabel::massive_target) {
    // densities are combinations of (k^2+m^2)^{+-1/2}; recover m from
    // alpha_perp at negligible k
    const double mm = state.spectrum.alpha_perp(1e-150);
    auto matern = [d](double nu, double mval) {
      return [nu, mval, d](double x) {
        return radial_matern_transform(nu, mval, d, x);
      };
    };
    switch (spec.field) {
      case FieldKind::A:
        if (spec.polarization == Polarization::longitudinal) {
          auto f = matern(-0.5, mm);
          const double w = 1.0 / (2.0 * mm * mm);
          return {0.0, 0.0, [f, w](double x) { return w * f(x); }};
        } else {
          auto f = matern(0.5, mm);
          return {0.0, 0.0, [f](double x) { return 0.5 * f(x); }};
        }
      case FieldKind::Pi:
        if (spec.polarization == Polarization::longitudinal) {
          auto f = matern(0.5, mm);
          const double w = 0.5 * mm * mm;
          return {0.0, 0.0, [f, w](double x) { return w * f(x); }};
        } else {
          auto f = matern(-0.5, mm);
          return {0.0, 0.0, [f](double x) { return 0.5 * f(x); }};
        }
      case FieldKind::B: {
        auto f1 = matern(-0.5, mm);
        auto f2 = matern(0.5, mm);
        const double w = 0.5 * mm * mm;
        return {0.0, 0.0,
                [f1, f2, w](double x) { return 0.5 * f1(x) - w * f2(x); }};
      }
    }
  }

  // generic branch: subtract the even-polynomial asymptote, transform the
  // remainder between kernel zeros
  RadialFunction density;
  const CorrelatorSpec mspec{spec.field, spec.polarization,
                             Representation::momentum_density};
  density.eval = [state, mspec](double k) {
    return momentum_density(state, mspec, k);
  };
  density.decay_exponent = 2.0 * state.params.n;
  auto [c0, c2, rem] = subtract_asymptotics(density, 100.0 * lam, 1600.0 * lam);
  const auto [dc, lc] = delta_coefficients(c0, c2, d);
  auto remf = rem;
  const int dd = d;
  const double tt = tol;
  return {dc, lc,
          [remf, dd, tt](double x) { return radial_fourier(remf, dd, x, tt); }};
}

// Convenience: the parts plus the regular value at one separation.
struct PositionCorrelatorValue {
  double delta_coeff = 0.0;
  double lap_delta_coeff = 0.0;
  double regular = 0.0;
};

inline PositionCorrelatorValue position_correlator(
    const GaussianVectorState& state, const CorrelatorSpec& spec, double x,
    double tol = 1e-10) {
  if (!(x > 0.0)) throw validation_error("position_correlator: x > 0");
  SubtractedCorrelator parts = position_correlator_parts(state, spec, tol);
  return {parts.delta_coeff, parts.lap_delta_coeff, parts.regular(x)};
}

// Table of position correlators across scales, with the fixed-point column
// and the monotone-approach report.
struct ConvergenceTable {
  std::vector<double> x;
  std::vector<double> s;                      // finite scales
  std::vector<std::vector<double>> value;     // value[si][xi]
  std::vector<double> fixed_point;            // per x
  std::vector<bool> monotone_from_s1;         // per x, over s >= 1 columns
};

inline ConvergenceTable convergence_in_s(const ModelParams& base,
                                         const CorrelatorSpec& spec,
                                         const std::vector<double>& x_grid,
                                         const std::vector<double>& s_list,
                                         double tol = 1e-10) {
  ConvergenceTable table;
  table.x = x_grid;
  table.s = s_list;
  for (double s : s_list) {
    ModelParams p = base;
    p.s = Scale::finite(s);
    const GaussianVectorState state = p.n == 1 ? magic_cmera_state(p)
                                               : generalized_cmera_state(p);
    SubtractedCorrelator parts = position_correlator_parts(state, spec, tol);
    std::vector<double> row;
    row.reserve(x_grid.size());
    for (double x : x_grid) row.push_back(parts.regular(x));
    table.value.push_back(std::move(row));
  }
  ModelParams pfp = base;
  pfp.s = Scale::infinity();
  SubtractedCorrelator fp_parts =
      position_correlator_parts(fixed_point_state(pfp), spec, tol);
  for (double x : x_grid) table.fixed_point.push_back(fp_parts.regular(x));

  for (std::size_t xi = 0; xi < x_grid.size(); ++xi) {
    bool mono = true;
    double prev = -1.0;
    for (std::size_t si = 0; si < s_list.size(); ++si) {
      if (s_list[si] < 1.0) continue;
      const double gap = std::abs(table.value[si][xi] - table.fixed_point[xi]);
      if (prev >= 0.0 && gap > prev) mono = false;
      prev = gap;
    }
    table.monotone_from_s1.push_back(mono);
  }
  return table;
}

}  // namespace gcmera
