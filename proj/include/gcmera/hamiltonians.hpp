#pragma once

// Quadratic per-mode Hamiltonians in the polarization basis. Each sector
// carries an energy density (1/2)[a(k) Pi Pi + b(k) A A]; the ground state
// spectrum is alpha(k) = sqrt(b/a) and the dispersion omega(k) = sqrt(a b).
// The normalization is fixed so that the rule alpha = sqrt(b/a) reproduces
// the massive-theory spectra, and the UV regulator is read off its
// momentum-space form with the same weight.

#include <cmath>
#include <functional>
#include <vector>

#include "gcmera/alpha_models.hpp"
#include "gcmera/params.hpp"

namespace gcmera {

struct ModeQuadraticForm {
  ModelParams params;
  std::function<double(double)> a_par, b_par;
  std::function<double(double)> a_perp, b_perp;
  bool longitudinal_constrained = false;
};

// H_U(1): transverse a = 1, b = k^2; longitudinal sector removed by the
// gauge constraint.
inline ModeQuadraticForm build_massless_u1(const ModelParams& params) {
  params.validate();
  ModeQuadraticForm f;
  f.params = params;
  f.a_perp = [](double) { return 1.0; };
  f.b_perp = [](double k) { return k * k; };
  f.a_par = [](double) { return 1.0; };
  f.b_par = [](double) { return 0.0; };
  f.longitudinal_constrained = true;
  return f;
}

// H_m: transverse a = 1, b = k^2 + m^2; longitudinal a = 1 + k^2/m^2,
// b = m^2.
inline ModeQuadraticForm build_massive(const ModelParams& params, double m) {
  params.validate();
  if (!(m > 0.0)) throw validation_error("build_massive: m > 0 required");
  ModeQuadraticForm f;
  f.params = params;
  f.a_perp = [](double) { return 1.0; };
  f.b_perp = [m](double k) { return k * k + m * m; };
  f.a_par = [m](double k) { return 1.0 + (k / m) * (k / m); };
  f.b_par = [m](double) { return m * m; };
  f.longitudinal_constrained = false;
  return f;
}

// H^Lambda(s) = H_m(s) + UV regulator: transverse a = 1 + k^2/Lambda^2,
// b = k^2 + m^2; longitudinal a = 1 + k^2/m^2, b = m^2 (1 + k^2/Lambda^2).
inline ModeQuadraticForm build_parent(const ModelParams& params) {
  params.validate();
  if (params.s.is_infinite())
    throw validation_error("build_parent: finite s required "
                           "(use build_parent_fixed_point)");
  const double lam = params.lambda;
  const double m = params.mass();
  ModeQuadraticForm f;
  f.params = params;
  f.a_perp = [lam](double k) { return 1.0 + (k / lam) * (k / lam); };
  f.b_perp = [m](double k) { return k * k + m * m; };
  f.a_par = [m](double k) { return 1.0 + (k / m) * (k / m); };
  f.b_par = [m, lam](double k) {
    return m * m * (1.0 + (k / lam) * (k / lam));
  };
  f.longitudinal_constrained = false;
  return f;
}

// H^Lambda_U(1): transverse a = 1 + k^2/Lambda^2, b = k^2; longitudinal
// sector gauge constrained.
inline ModeQuadraticForm build_parent_fixed_point(const ModelParams& params) {
  params.validate();
  const double lam = params.lambda;
  ModeQuadraticForm f;
  f.params = params;
  f.a_perp = [lam](double k) { return 1.0 + (k / lam) * (k / lam); };
  f.b_perp = [](double k) { return k * k; };
  f.a_par = [](double) { return 1.0; };
  f.b_par = [](double) { return 0.0; };
  f.longitudinal_constrained = true;
  return f;
}

// Ground state alpha = sqrt(b/a) per sector; constrained sectors map to
// alpha == 0 with the flag set.
inline GaussianVectorState ground_state_of(const ModeQuadraticForm& form) {
  PolarizationSpectrum sp;
  const auto ap = form.a_perp, bp = form.b_perp;
  sp.alpha_perp = [ap, bp](double k) {
    const double a = ap(k);
    if (!(a > 0.0))
      throw domain_error("ground_state_of: a(k) <= 0 in transverse sector");
    return std::sqrt(bp(k) / a);
  };
  if (form.longitudinal_constrained) {
    sp.alpha_par = [](double) { return 0.0; };
    sp.longitudinal_constrained = true;
  } else {
    const auto al = form.a_par, bl = form.b_par;
    sp.alpha_par = [al, bl](double k) {
      const double a = al(k);
      if (!(a > 0.0))
        throw domain_error("ground_state_of: a(k) <= 0 in longitudinal sector");
      return std::sqrt(bl(k) / a);
    };
  }
  return {form.params, sp, StateLabel::custom};
}

// omega(k) = sqrt(a(k) b(k)).
inline double dispersion(const ModeQuadraticForm& form, Polarization pol,
                         double k) {
  if (!(k > 0.0)) throw domain_error("dispersion: k > 0 required");
  if (pol == Polarization::longitudinal && form.longitudinal_constrained)
    throw domain_error("dispersion: longitudinal sector is constrained");
  const double a =
      pol == Polarization::longitudinal ? form.a_par(k) : form.a_perp(k);
  const double b =
      pol == Polarization::longitudinal ? form.b_par(k) : form.b_perp(k);
  return std::sqrt(a * b);
}

struct ParentReport {
  double max_rel_dev = 0.0;
  double worst_k = 0.0;
  Polarization worst_pol = Polarization::transverse;
  bool pass = false;
  bool sector_mismatch = false;
};

// Max relative deviation between the state's spectra and sqrt(b/a) over the
// grid. Failures are reported, not thrown.
inline ParentReport verify_parent(const GaussianVectorState& state,
                                  const ModeQuadraticForm& form,
                                  const std::vector<double>& k_grid,
                                  double tol) {
  ParentReport rep;
  if (state.spectrum.longitudinal_constrained !=
      form.longitudinal_constrained) {
    rep.sector_mismatch = true;
    rep.pass = false;
    return rep;
  }
  const GaussianVectorState gs = ground_state_of(form);
  for (double k : k_grid) {
    for (Polarization pol :
         {Polarization::transverse, Polarization::longitudinal}) {
      if (pol == Polarization::longitudinal && form.longitudinal_constrained)
        continue;
      const double want = eval_alpha(gs, pol, k);
      const double got = eval_alpha(state, pol, k);
      const double dev = std::abs(got - want) / std::abs(want);
      if (dev > rep.max_rel_dev) {
        rep.max_rel_dev = dev;
        rep.worst_k = k;
        rep.worst_pol = pol;
      }
    }
  }
  rep.pass = rep.max_rel_dev <= tol;
  return rep;
}

}  // namespace gcmera
