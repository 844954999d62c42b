// gcmera: command-line surface of the library. Subcommands regenerate the
// spectra, correlators, parent-Hamiltonian checks, diagnostics and the d = 1
// lattice oracle as CSV/report files.
//
// Output conventions: CSV with a header line, `#` comment lines, comma
// separator, LF endings; floats printed as %.16e (17 significant digits,
// round-trip safe). Identical invocations produce byte-identical files.
//
// Exit codes: 0 success/pass, 1 validation error, 2 numerical error,
// 3 check failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gcmera/gcmera.hpp"

namespace {

using namespace gcmera;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

struct Output {
  std::unique_ptr<std::ofstream> file;
  std::ostream* os = &std::cout;
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!file->good())
        throw validation_error("cannot open output path: " + path);
      os = file.get();
    }
  }
  std::ostream& stream() { return *os; }
};

std::vector<double> make_grid(double lo, double hi, int points, bool log_grid) {
  if (!(lo > 0.0) || !(hi > lo) || points < 2)
    throw validation_error("grid must be strictly increasing with >= 2 points");
  std::vector<double> g(points);
  for (int i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / (points - 1);
    g[i] = log_grid ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t;
  }
  return g;
}

GaussianVectorState make_cmera_state(const ModelParams& p) {
  return p.n == 1 ? magic_cmera_state(p) : generalized_cmera_state(p);
}

// ---------------------------------------------------------------- alpha ---
int cmd_alpha(const std::string& family, int n, int d, double lambda, double s,
              double kmin, double kmax, int points, bool log_grid, double tol,
              const std::string& out) {
  ModelParams p;
  p.d = d;
  p.lambda = lambda;
  p.s = Scale::finite(s);
  p.n = family == "gen" ? n : 1;
  if (family != "magic" && family != "gen")
    throw validation_error("--family must be magic or gen");
  const GaussianVectorState state = make_cmera_state(p);
  const EntanglerProfile prof = profile_for(p);
  const double m2 = p.mass() * p.mass();

  Output o(out);
  o.stream() << "# gcmera alpha: family=" << family << " n=" << p.n
             << " d=" << d << " lambda=" << fmt(lambda) << " s=" << fmt(s)
             << "\n";
  o.stream() << "# product check column is alpha_par*alpha_perp/m(s)^2 "
                "(exactly 1 for an exact flow)\n";
  o.stream() << "k,alpha_par,alpha_perp,alpha_par_quadrature,"
                "alpha_perp_quadrature,product_over_m2\n";
  double max_dev = 0.0;
  for (double k : make_grid(kmin, kmax, points, log_grid)) {
    const double ap = eval_alpha(state, Polarization::longitudinal, k);
    const double at = eval_alpha(state, Polarization::transverse, k);
    const double qp =
        flow_alpha_quadrature(prof, Polarization::longitudinal, k, s, tol);
    const double qt =
        flow_alpha_quadrature(prof, Polarization::transverse, k, s, tol);
    max_dev = std::max(max_dev, std::abs(qp - ap) / ap);
    max_dev = std::max(max_dev, std::abs(qt - at) / at);
    o.stream() << fmt(k) << ',' << fmt(ap) << ',' << fmt(at) << ',' << fmt(qp)
               << ',' << fmt(qt) << ',' << fmt(ap * at / m2) << "\n";
  }
  o.stream() << "# max relative deviation closed-form vs quadrature: "
             << fmt(max_dev) << "\n";
  return 0;
}

// ----------------------------------------------------------- correlator ---
int cmd_correlator(const std::string& field, int d,
                   const std::vector<double>& s_values,
                   const std::string& target, double xmin, double xmax,
                   int points, double tol, const std::string& out) {
  if (field != "B") throw validation_error("--field supports B only");
  if (d != 2) throw validation_error("field B requires --d 2");
  if (target == "massive" && s_values.size() != 1)
    throw validation_error("--target massive requires exactly one --s");
  ModelParams base;
  base.d = d;
  CorrelatorSpec spec{FieldKind::B, Polarization::transverse,
                      Representation::position_subtracted};

  struct Column {
    std::string name;
    SubtractedCorrelator parts;
  };
  std::vector<Column> cols;
  for (double s : s_values) {
    ModelParams p = base;
    p.s = Scale::finite(s);
    char name[32];
    std::snprintf(name, sizeof(name), "s=%g", s);
    cols.push_back(
        {name, position_correlator_parts(make_cmera_state(p), spec, tol)});
  }
  ModelParams pfp = base;
  pfp.s = Scale::infinity();
  cols.push_back({"fixed_point", position_correlator_parts(
                                     fixed_point_state(pfp), spec, tol)});
  if (target == "massless") {
    cols.push_back(
        {"target", position_correlator_parts(massless_target(base), spec, tol)});
  } else if (target == "massive") {
    ModelParams p = base;
    p.s = Scale::finite(s_values.front());
    cols.push_back({"target", position_correlator_parts(
                                  massive_target(base, p.mass()), spec, tol)});
  } else if (target != "none") {
    throw validation_error("--target must be massless, massive or none");
  }

  Output o(out);
  o.stream() << "# gcmera correlator: field=" << field << " d=" << d
             << " lambda=" << fmt(base.lambda) << "\n";
  o.stream() << "# regular parts only; the distributional content per column"
                " is delta_coeff*delta(x) + lap_delta_coeff*Lap delta(x)\n";
  for (const auto& c : cols)
    o.stream() << "# column " << c.name
               << ": delta_coeff=" << fmt(c.parts.delta_coeff)
               << " lap_delta_coeff=" << fmt(c.parts.lap_delta_coeff) << "\n";
  o.stream() << "x";
  for (const auto& c : cols) o.stream() << ',' << c.name;
  o.stream() << "\n";
  for (double x : make_grid(xmin, xmax, points, true)) {
    o.stream() << fmt(x);
    for (const auto& c : cols) o.stream() << ',' << fmt(c.parts.regular(x));
    o.stream() << "\n";
  }
  return 0;
}

// ------------------------------------------------------------ flow-check ---
int cmd_flow_check(const std::string& family, int n, double lambda, double tol,
                   const std::string& out) {
  ModelParams p;
  p.lambda = lambda;
  p.n = family == "gen" ? n : 1;
  if (family != "magic" && family != "gen")
    throw validation_error("--family must be magic or gen");
  const EntanglerProfile prof = profile_for(p);

  const std::vector<double> ks = make_grid(1e-3 * lambda, 1e3 * lambda, 13, true);
  double max_closed = 0.0, max_product = 0.0;
  for (int si = 0; si <= 10; ++si) {
    const double s = si;
    ModelParams ps = p;
    ps.s = Scale::finite(s);
    const GaussianVectorState state = make_cmera_state(ps);
    const double m2 = ps.mass() * ps.mass();
    for (double k : ks) {
      const double qp =
          flow_alpha_quadrature(prof, Polarization::longitudinal, k, s, 1e-12);
      const double qt =
          flow_alpha_quadrature(prof, Polarization::transverse, k, s, 1e-12);
      const double ap = eval_alpha(state, Polarization::longitudinal, k);
      const double at = eval_alpha(state, Polarization::transverse, k);
      max_closed = std::max(max_closed, std::abs(qp - ap) / ap);
      max_closed = std::max(max_closed, std::abs(qt - at) / at);
      max_product = std::max(max_product, std::abs(qp * qt - m2) / m2);
    }
  }

  ModelParams pfp = p;
  pfp.s = Scale::infinity();
  const GaussianVectorState fp = fixed_point_state(pfp);
  double max_fp_res = 0.0;
  for (double k : ks) {
    const double r = fixed_point_residual(
        prof, [&](double kk) { return eval_alpha(fp, Polarization::transverse, kk); },
        Polarization::transverse, k);
    max_fp_res = std::max(max_fp_res, std::abs(r));
  }

  double max_pde = 0.0;
  for (double s : {0.5, 1.0, 3.0})
    for (double k : {0.2 * lambda, lambda, 5.0 * lambda})
      for (Polarization pol :
           {Polarization::transverse, Polarization::longitudinal}) {
        ModelParams ps = p;
        ps.s = Scale::finite(s);
        const double a = eval_alpha(make_cmera_state(ps), pol, k);
        max_pde =
            std::max(max_pde, std::abs(flow_pde_residual(prof, pol, k, s)) / a);
      }

  const bool pass = max_closed <= tol && max_product <= 1e-10 &&
                    max_fp_res <= 1e-8 && max_pde <= 1e-6;
  Output o(out);
  o.stream() << "flow consistency check, family=" << family << " n=" << p.n
             << " lambda=" << fmt(lambda) << "\n";
  o.stream() << "grid: k in [1e-3,1e3] lambda (13 log points), s in 0..10\n";
  o.stream() << (pass ? "PASS" : "FAIL") << "\n";
  o.stream() << "```\n";
  o.stream() << "check: " << (pass ? "pass" : "fail") << "\n";
  o.stream() << "max_closed_vs_quadrature: " << fmt(max_closed) << "\n";
  o.stream() << "max_product_rule_dev: " << fmt(max_product) << "\n";
  o.stream() << "max_fixed_point_residual: " << fmt(max_fp_res) << "\n";
  o.stream() << "max_pde_residual: " << fmt(max_pde) << "\n";
  o.stream() << "```\n";
  return pass ? 0 : 3;
}

// --------------------------------------------------------- verify-parent ---
int cmd_verify_parent(std::vector<double> s_values, double lambda, int d,
                      double tol, const std::string& out) {
  if (s_values.empty()) s_values = {0.0, 1.0, 2.0, 5.0};
  ModelParams base;
  base.d = d;
  base.lambda = lambda;
  const std::vector<double> grid =
      make_grid(1e-3 * lambda, 1e3 * lambda, 33, true);

  Output o(out);
  o.stream() << "parent-Hamiltonian ground-state check, lambda=" << fmt(lambda)
             << "\n";
  bool all_pass = true;
  double worst = 0.0;
  std::ostringstream machine;
  for (double s : s_values) {
    ModelParams p = base;
    p.s = Scale::finite(s);
    const ParentReport rep =
        verify_parent(magic_cmera_state(p), build_parent(p), grid, tol);
    all_pass = all_pass && rep.pass;
    worst = std::max(worst, rep.max_rel_dev);
    o.stream() << "H(s=" << fmt(s) << "): " << (rep.pass ? "pass" : "FAIL")
               << " max_rel_dev=" << fmt(rep.max_rel_dev) << "\n";
    machine << "max_rel_dev_s_" << s << ": " << fmt(rep.max_rel_dev) << "\n";
  }
  ModelParams pfp = base;
  pfp.s = Scale::infinity();
  const ParentReport rep = verify_parent(fixed_point_state(pfp),
                                         build_parent_fixed_point(pfp), grid, tol);
  all_pass = all_pass && rep.pass;
  worst = std::max(worst, rep.max_rel_dev);
  o.stream() << "H_U(1): " << (rep.pass ? "pass" : "FAIL")
             << " max_rel_dev=" << fmt(rep.max_rel_dev) << "\n";
  o.stream() << (all_pass ? "PASS" : "FAIL") << "\n";
  o.stream() << "```\n";
  o.stream() << "check: " << (all_pass ? "pass" : "fail") << "\n";
  o.stream() << machine.str();
  o.stream() << "max_rel_dev_fixed_point: " << fmt(rep.max_rel_dev) << "\n";
  o.stream() << "max_rel_dev: " << fmt(worst) << "\n";
  o.stream() << "tolerance: " << fmt(tol) << "\n";
  o.stream() << "```\n";
  return all_pass ? 0 : 3;
}

// ------------------------------------------------------------- diagnose ---
int cmd_diagnose_uv(int n, int d, double s, const std::string& out) {
  ModelParams p;
  p.d = d;
  p.n = n;
  p.s = Scale::finite(s);
  const GaussianVectorState state = make_cmera_state(p);
  const RegularityReport rep =
      uv_coincidence_limit(state, Polarization::transverse, d);
  const bool expect_finite = d < 2 * n;
  const bool pass = (rep.verdict == Verdict::finite) == expect_finite;
  Output o(out);
  o.stream() << "coincidence-limit regularity, n=" << n << " d=" << d
             << " s=" << fmt(s) << " (transverse)\n";
  o.stream() << "verdict: "
             << (rep.verdict == Verdict::finite ? "finite" : "divergent")
             << "\n";
  o.stream() << "estimate: " << fmt(rep.estimate) << "\n";
  o.stream() << "refinement trace (K, partial integral):\n";
  for (const auto& [K, I] : rep.trace)
    o.stream() << "  " << fmt(K) << "  " << fmt(I) << "\n";
  o.stream() << (pass ? "PASS" : "FAIL") << " (finite iff d < 2n)\n";
  o.stream() << "```\n";
  o.stream() << "check: " << (pass ? "pass" : "fail") << "\n";
  o.stream() << "verdict: "
             << (rep.verdict == Verdict::finite ? "finite" : "divergent")
             << "\n";
  o.stream() << "estimate: " << fmt(rep.estimate) << "\n";
  o.stream() << "```\n";
  return pass ? 0 : 3;
}

int cmd_diagnose_gauge(double smin, double smax, int spoints,
                       const std::string& out) {
  if (!(smax > smin) || spoints < 2)
    throw validation_error("need smax > smin and >= 2 points");
  ModelParams p;
  std::vector<double> sg(spoints);
  for (int i = 0; i < spoints; ++i)
    sg[i] = smin + (smax - smin) * i / (spoints - 1);
  const GaugeDecayFit fit = gauge_violation_decay(p, sg);
  const bool pass = std::abs(fit.slope + 2.0) <= 1e-6;
  Output o(out);
  o.stream() << "gauge-restoration rate: ln <Pi_par Pi_par>(k>>Lambda) vs s\n";
  for (const auto& [s, v] : fit.samples)
    o.stream() << "  s=" << fmt(s) << "  plateau=" << fmt(v) << "\n";
  o.stream() << "fitted slope: " << fmt(fit.slope) << " (exact law: -2)\n";
  o.stream() << (pass ? "PASS" : "FAIL") << "\n";
  o.stream() << "```\n";
  o.stream() << "check: " << (pass ? "pass" : "fail") << "\n";
  o.stream() << "fitted_slope: " << fmt(fit.slope) << "\n";
  o.stream() << "```\n";
  return pass ? 0 : 3;
}

int cmd_diagnose_appendix_b(double smax, const std::string& out) {
  ModelParams p;
  p.d = 1;
  std::vector<std::pair<double, double>> curve;
  for (double s = 0.0; s <= smax + 1e-9; s += 0.5) {
    ModelParams ps = p;
    ps.s = Scale::finite(s);
    curve.emplace_back(s, appendix_b_norm(ps));
  }
  const bool zero_at_origin = curve.front().second == 0.0;
  bool decreasing_tail = true;
  double peak = 0.0;
  for (const auto& [s, v] : curve) peak = std::max(peak, v);
  for (std::size_t i = 1; i < curve.size(); ++i)
    if (curve[i].first >= 2.0 && curve[i].second > curve[i - 1].second)
      decreasing_tail = false;
  const bool pass = zero_at_origin && decreasing_tail;
  Output o(out);
  o.stream() << "Appendix-B norm ||f_s||_2, d=1 (Parseval quadrature)\n";
  for (const auto& [s, v] : curve)
    o.stream() << "  s=" << fmt(s) << "  norm=" << fmt(v) << "\n";
  o.stream() << (pass ? "PASS" : "FAIL")
             << " (zero at s=0, decreasing for s>=2)\n";
  o.stream() << "```\n";
  o.stream() << "check: " << (pass ? "pass" : "fail") << "\n";
  o.stream() << "norm_at_zero: " << fmt(curve.front().second) << "\n";
  o.stream() << "peak: " << fmt(peak) << "\n";
  o.stream() << "final_over_peak: " << fmt(curve.back().second / peak) << "\n";
  o.stream() << "```\n";
  return pass ? 0 : 3;
}

// --------------------------------------------------------------- oracle ---
int cmd_oracle(int sites, double spacing, double s, const std::string& field,
               int rmin, int rmax, int rstep, double tol, bool negative_control,
               const std::string& out) {
  ModelParams p;
  p.d = 1;
  p.s = Scale::finite(s);
  LatticeOptions opt;
  opt.include_uv_regulator = !negative_control;
  const LatticeModel model = build_lattice(sites, spacing, p, opt);
  const FieldKind fk = field == "A" ? FieldKind::A : FieldKind::Pi;
  if (field != "A" && field != "Pi")
    throw validation_error("--field must be A or Pi");
  const OracleReport rep =
      compare_with_continuum(model, fk, rmin, rmax, tol, rstep);
  const bool pass = negative_control ? !rep.pass : rep.pass;
  Output o(out);
  o.stream() << "lattice oracle, N=" << sites << " a=" << fmt(spacing)
             << " s=" << fmt(s) << " field=" << field
             << (negative_control ? " (negative control: regulator removed)"
                                  : "")
             << "\n";
  o.stream() << "r,lattice,continuum,rel_dev\n";
  for (const auto& row : rep.rows)
    o.stream() << row.r << ',' << fmt(row.lattice) << ',' << fmt(row.continuum)
               << ',' << fmt(row.rel_dev) << "\n";
  o.stream() << (pass ? "PASS" : "FAIL") << "\n";
  o.stream() << "```\n";
  o.stream() << "check: " << (pass ? "pass" : "fail") << "\n";
  o.stream() << "max_rel_dev: " << fmt(rep.max_rel_dev) << "\n";
  o.stream() << "worst_r: " << rep.worst_r << "\n";
  o.stream() << "tolerance: " << fmt(tol) << "\n";
  o.stream() << "negative_control: " << (negative_control ? "1" : "0") << "\n";
  o.stream() << "```\n";
  return pass ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian cMERA for U(1) vector bosons"};
  app.require_subcommand(1);

  // alpha
  auto* alpha = app.add_subcommand("alpha", "alpha spectra: closed form vs flow quadrature");
  std::string a_family = "magic", a_out;
  int a_n = 2, a_d = 3, a_points = 33;
  double a_lambda = 1.0, a_s = 1.0, a_kmin = 1e-3, a_kmax = 1e3, a_tol = 1e-10;
  bool a_log = true;
  alpha->add_option("--family", a_family, "magic or gen");
  alpha->add_option("--n", a_n, "regularity order (gen family)");
  alpha->add_option("--d", a_d, "spatial dimension");
  alpha->add_option("--lambda", a_lambda, "UV cutoff");
  alpha->add_option("--s", a_s, "scale parameter");
  alpha->add_option("--kmin", a_kmin);
  alpha->add_option("--kmax", a_kmax);
  alpha->add_option("--points", a_points);
  alpha->add_flag("--log,!--no-log", a_log, "log-spaced k grid");
  alpha->add_option("--tol", a_tol, "quadrature tolerance");
  alpha->add_option("--out", a_out, "output path (default stdout)");

  // correlator
  auto* corr = app.add_subcommand("correlator", "position-space <BB> correlators");
  std::string c_field = "B", c_target = "massless", c_out;
  int c_d = 2, c_points = 25;
  std::vector<double> c_s;
  double c_xmin = 1.0, c_xmax = 100.0, c_tol = 1e-10;
  corr->add_option("--field", c_field, "field (B)");
  corr->add_option("--d", c_d, "spatial dimension (2)");
  corr->add_option("--s", c_s, "scale values (repeatable)");
  corr->add_option("--target", c_target, "massless, massive or none");
  corr->add_option("--xmin", c_xmin);
  corr->add_option("--xmax", c_xmax);
  corr->add_option("--points", c_points);
  corr->add_option("--tol", c_tol);
  corr->add_option("--out", c_out);

  // flow-check
  auto* fc = app.add_subcommand("flow-check", "flow quadrature and residual checks");
  std::string f_family = "magic", f_out;
  int f_n = 2;
  double f_lambda = 1.0, f_tol = 1e-8;
  fc->add_option("--family", f_family);
  fc->add_option("--n", f_n);
  fc->add_option("--lambda", f_lambda);
  fc->add_option("--tol", f_tol);
  fc->add_option("--out", f_out);

  // verify-parent
  auto* vp = app.add_subcommand("verify-parent", "parent-Hamiltonian ground-state checks");
  std::vector<double> v_s;
  double v_lambda = 1.0, v_tol = 1e-10;
  int v_d = 3;
  std::string v_out;
  vp->add_option("--s", v_s, "scales (default 0 1 2 5)");
  vp->add_option("--lambda", v_lambda);
  vp->add_option("--d", v_d);
  vp->add_option("--tol", v_tol);
  vp->add_option("--out", v_out);

  // diagnose
  auto* diag = app.add_subcommand("diagnose", "gauge/UV/appendix-B diagnostics");
  diag->require_subcommand(1);
  auto* duv = diag->add_subcommand("uv", "coincidence-limit regularity");
  int u_n = 1, u_d = 2;
  double u_s = 1.0;
  std::string u_out;
  duv->add_option("--n", u_n);
  duv->add_option("--d", u_d);
  duv->add_option("--s", u_s);
  duv->add_option("--out", u_out);
  auto* dg = diag->add_subcommand("gauge", "gauge-restoration decay rate");
  double g_smin = 2.0, g_smax = 8.0;
  int g_spoints = 7;
  std::string g_out;
  dg->add_option("--smin", g_smin);
  dg->add_option("--smax", g_smax);
  dg->add_option("--spoints", g_spoints);
  dg->add_option("--out", g_out);
  auto* db = diag->add_subcommand("appendix-b", "||f_s||_2 curve in d=1");
  double b_smax = 10.0;
  std::string b_out;
  db->add_option("--smax", b_smax);
  db->add_option("--out", b_out);

  // oracle
  auto* orc = app.add_subcommand("oracle", "d=1 lattice ground-state oracle");
  int o_sites = 8192, o_rmin = 10, o_rmax = 200, o_rstep = 1;
  double o_spacing = 0.02, o_s = 2.0, o_tol = 0.01;
  std::string o_field = "A", o_out;
  bool o_negative = false;
  orc->add_option("--sites", o_sites);
  orc->add_option("--spacing", o_spacing);
  orc->add_option("--s", o_s);
  orc->add_option("--field", o_field, "A or Pi");
  orc->add_option("--rmin", o_rmin);
  orc->add_option("--rmax", o_rmax);
  orc->add_option("--rstep", o_rstep);
  orc->add_option("--tol", o_tol);
  orc->add_flag("--negative-control", o_negative,
                "drop the UV regulator; expect the comparison to fail");
  orc->add_option("--out", o_out);

  try {
    app.parse(argc, argv);
    if (*alpha)
      return cmd_alpha(a_family, a_n, a_d, a_lambda, a_s, a_kmin, a_kmax,
                       a_points, a_log, a_tol, a_out);
    if (*corr)
      return cmd_correlator(c_field, c_d, c_s, c_target, c_xmin, c_xmax,
                            c_points, c_tol, c_out);
    if (*fc) return cmd_flow_check(f_family, f_n, f_lambda, f_tol, f_out);
    if (*vp) return cmd_verify_parent(v_s, v_lambda, v_d, v_tol, v_out);
    if (*duv) return cmd_diagnose_uv(u_n, u_d, u_s, u_out);
    if (*dg) return cmd_diagnose_gauge(g_smin, g_smax, g_spoints, g_out);
    if (*db) return cmd_diagnose_appendix_b(b_smax, b_out);
    if (*orc)
      return cmd_oracle(o_sites, o_spacing, o_s, o_field, o_rmin, o_rmax,
                        o_rstep, o_tol, o_negative, o_out);
    std::cerr << "no subcommand\n";
    return 1;
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
      return app.exit(e);
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const validation_error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 1;
  } catch (const domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 1;
  } catch (const numerical_error& e) {
    std::cerr << "numerical error: " << e.what()
              << " (achieved " << e.achieved << ")\n";
    return 2;
  }
}
