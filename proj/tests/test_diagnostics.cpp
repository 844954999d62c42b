#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "gcmera/diagnostics.hpp"

using namespace gcmera;

TEST_CASE("gauge violation measure") {
  ModelParams p;
  p.s = Scale::infinity();
  const auto fp = fixed_point_state(p);
  for (double k : {0.1, 1.0, 100.0}) CHECK(gauge_violation(fp, k) == 0.0);

  ModelParams p0;
  p0.s = Scale::finite(0.0);
  const auto st0 = magic_cmera_state(p0);
  for (double k : {0.5, 7.0}) CHECK(gauge_violation(st0, k) == 0.5);
}

TEST_CASE("gauge violation is non-increasing in s at fixed k") {
  for (double k : {0.3, 2.0, 40.0}) {
    double prev = std::numeric_limits<double>::max();
    for (double s : {0.0, 1.0, 2.0, 4.0, 8.0}) {
      ModelParams p;
      p.s = Scale::finite(s);
      const double v = gauge_violation(magic_cmera_state(p), k);
      CHECK(v < prev);
      prev = v;
    }
  }
}

TEST_CASE("gauge restoration decays with log-slope exactly -2") {
  ModelParams p;
  std::vector<double> sg;
  for (double s = 2.0; s <= 8.0 + 1e-12; s += 1.0) sg.push_back(s);
  const auto fit = gauge_violation_decay(p, sg);
  CHECK(std::abs(fit.slope + 2.0) <= 1e-6);
  // plateau is m(s)^2/(2 Lambda) up to k^-2 corrections
  for (const auto& [s, v] : fit.samples)
    CHECK(v == Catch::Approx(0.5 * std::exp(-2.0 * s)).epsilon(1e-10));
}

TEST_CASE("coincidence-limit verdicts follow d < 2n") {
  for (int n : {1, 2, 3}) {
    ModelParams p;
    p.n = n;
    p.s = Scale::finite(1.0);
    const auto state =
        n == 1 ? magic_cmera_state(p) : generalized_cmera_state(p);
    for (int d = 1; d <= 5; ++d) {
      const auto rep = uv_coincidence_limit(state, Polarization::transverse, d);
      INFO("n=" << n << " d=" << d);
      REQUIRE((rep.verdict == Verdict::finite) == (d < 2 * n));
      REQUIRE(rep.trace.size() >= 8);
      if (rep.verdict == Verdict::finite) {
        // trace must be Cauchy: last increments shrink
        const auto& tr = rep.trace;
        const double last =
            std::abs(tr[tr.size() - 1].second - tr[tr.size() - 2].second);
        const double mid = std::abs(tr[4].second - tr[3].second);
        CHECK(last <= mid + 1e-13 * std::abs(tr.back().second));
      }
    }
  }
}

TEST_CASE("coincidence limit in the longitudinal sector, magic d = 1") {
  ModelParams p;
  p.s = Scale::finite(1.0);
  const auto st = magic_cmera_state(p);
  const auto rep = uv_coincidence_limit(st, Polarization::longitudinal, 1);
  CHECK(rep.verdict == Verdict::finite);
  const auto rep2 = uv_coincidence_limit(st, Polarization::longitudinal, 2);
  CHECK(rep2.verdict == Verdict::divergent);
}

TEST_CASE("coincidence limit of the unentangled state is trivially finite") {
  ModelParams p;
  const auto rep = uv_coincidence_limit(unentangled_state(p),
                                        Polarization::transverse, 3);
  CHECK(rep.verdict == Verdict::finite);
  CHECK(rep.estimate == 0.0);
}

TEST_CASE("uv_coincidence_limit validation") {
  ModelParams p;
  const auto ml = massless_target(p);
  CHECK_THROWS_AS(uv_coincidence_limit(ml, Polarization::transverse, 2),
                  validation_error);
  ModelParams pfp;
  pfp.s = Scale::infinity();
  CHECK_THROWS_AS(uv_coincidence_limit(fixed_point_state(pfp),
                                       Polarization::longitudinal, 2),
                  validation_error);
}

TEST_CASE("large-k expansion coefficients") {
  {
    ModelParams p;
    p.n = 1;
    p.s = Scale::finite(1.0);
    const auto chk = large_k_expansion_check(p, 1e3);
    CHECK(chk.deviation_perp <= 1e-4);
    CHECK(chk.deviation_par <= 1e-4);
    CHECK(chk.exact_perp ==
          Catch::Approx((1.0 - std::exp(-2.0)) / 2.0).epsilon(1e-14));
  }
  {
    ModelParams p;
    p.n = 3;
    p.s = Scale::finite(2.0);
    const auto chk = large_k_expansion_check(p, 50.0);
    CHECK(chk.deviation_perp <= 1e-3);
    CHECK(chk.deviation_par <= 1e-3);
  }
  {
    // s = 0: the state is unentangled, the subleading coefficient vanishes
    ModelParams p;
    p.s = Scale::finite(0.0);
    const auto chk = large_k_expansion_check(p, 1e3);
    CHECK(chk.exact_perp == 0.0);
    CHECK(chk.deviation_perp <= 1e-8);  // absolute when exact is zero
  }
  ModelParams bad;
  CHECK_THROWS_AS(large_k_expansion_check(bad, 1.0), validation_error);
}

TEST_CASE("Appendix-B norm curve") {
  auto norm_at = [](double s) {
    ModelParams p;
    p.d = 1;
    p.s = Scale::finite(s);
    return appendix_b_norm(p);
  };
  // s = 0: exactly zero (alpha == Lambda and the subtraction is exact)
  CHECK(norm_at(0.0) == 0.0);
  // frozen mpmath values under the (1/pi) int_0^inf convention
  CHECK(norm_at(0.5) == Catch::Approx(0.0494271842773043672).epsilon(1e-9));
  CHECK(norm_at(1.0) == Catch::Approx(0.0397429452696683014).epsilon(1e-9));
  CHECK(norm_at(2.0) == Catch::Approx(0.0133264212986309316).epsilon(1e-9));
  CHECK(norm_at(3.0) == Catch::Approx(0.00347552171930125872).epsilon(1e-9));
  CHECK(norm_at(8.0) == Catch::Approx(2.16841290630718685e-6).epsilon(1e-9));
  // decreasing for s >= 2, and far below the peak by s = 8
  double peak = 0.0;
  for (double s = 0.0; s <= 2.0; s += 0.25) peak = std::max(peak, norm_at(s));
  double prev = norm_at(2.0);
  for (double s = 3.0; s <= 10.0; s += 1.0) {
    const double v = norm_at(s);
    CHECK(v < prev);
    prev = v;
  }
  CHECK(norm_at(8.0) < 1e-3 * peak);
  // the subtracted constant is the exact k -> infinity limit of alpha_par/2
  ModelParams p;
  p.d = 1;
  p.s = Scale::finite(2.0);
  const auto st = magic_cmera_state(p);
  const double m2 = p.mass() * p.mass();
  CHECK(st.spectrum.alpha_par(1e8) ==
        Catch::Approx(m2 / p.lambda).epsilon(1e-14));

  ModelParams bad;
  bad.d = 2;
  CHECK_THROWS_AS(appendix_b_norm(bad), validation_error);
}
