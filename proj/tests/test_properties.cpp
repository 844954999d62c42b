// Randomized property sweeps with a fixed-seed generator: the structural
// identities must hold at arbitrary parameter combinations, not just on the
// hand-picked grids.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "gcmera/alpha_models.hpp"
#include "gcmera/correlators.hpp"
#include "gcmera/flow.hpp"
#include "gcmera/hamiltonians.hpp"
#include "gcmera/quadrature.hpp"
#include "gcmera/transforms.hpp"

using namespace gcmera;

namespace {

struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  double uniform() {  // xorshift64*, in (0, 1)
    state ^= state >> 12;
    state ^= state << 25;
    state ^= state >> 27;
    const std::uint64_t r = state * 0x2545F4914F6CDD1DULL;
    return (static_cast<double>(r >> 11) + 0.5) / 9007199254740992.0;
  }
  double log_uniform(double lo, double hi) {
    return lo * std::pow(hi / lo, uniform());
  }
  int integer(int lo, int hi) {
    return lo + static_cast<int>(uniform() * (hi - lo + 1));
  }
};

}  // namespace

TEST_CASE("product rule holds at random parameters") {
  Rng rng(0x9e3779b97f4a7c15ULL);
  for (int trial = 0; trial < 300; ++trial) {
    ModelParams p;
    p.lambda = rng.log_uniform(0.1, 10.0);
    p.s = Scale::finite(10.0 * rng.uniform());
    p.n = rng.integer(1, 4);
    const auto st =
        p.n == 1 ? magic_cmera_state(p) : generalized_cmera_state(p);
    const double k = rng.log_uniform(1e-3 * p.lambda, 1e3 * p.lambda);
    const double m2 = p.mass() * p.mass();
    const double prod = st.spectrum.alpha_par(k) * st.spectrum.alpha_perp(k);
    REQUIRE(std::abs(prod - m2) <= 1e-12 * m2);
  }
}

TEST_CASE("parent ground-state identity holds at random parameters") {
  Rng rng(0xfeedfacecafebeefULL);
  for (int trial = 0; trial < 200; ++trial) {
    ModelParams p;
    p.lambda = rng.log_uniform(0.2, 5.0);
    p.s = Scale::finite(8.0 * rng.uniform());
    const auto st = magic_cmera_state(p);
    const auto gs = ground_state_of(build_parent(p));
    const double k = rng.log_uniform(1e-3 * p.lambda, 1e3 * p.lambda);
    for (Polarization pol :
         {Polarization::transverse, Polarization::longitudinal}) {
      const double a = eval_alpha(st, pol, k);
      const double b = eval_alpha(gs, pol, k);
      REQUIRE(std::abs(a - b) <= 1e-12 * std::abs(b));
    }
  }
}

TEST_CASE("Gaussian purity holds at random parameters") {
  Rng rng(0x123456789abcdef0ULL);
  for (int trial = 0; trial < 200; ++trial) {
    ModelParams p;
    p.lambda = rng.log_uniform(0.1, 10.0);
    p.s = Scale::finite(6.0 * rng.uniform());
    p.n = rng.integer(1, 3);
    const auto st =
        p.n == 1 ? magic_cmera_state(p) : generalized_cmera_state(p);
    const double k = rng.log_uniform(1e-2 * p.lambda, 1e2 * p.lambda);
    const Polarization pol = rng.uniform() < 0.5 ? Polarization::transverse
                                                 : Polarization::longitudinal;
    const CorrelatorSpec sa{FieldKind::A, pol, Representation::momentum_density};
    const CorrelatorSpec sp{FieldKind::Pi, pol, Representation::momentum_density};
    const double aa = momentum_density(st, sa, k);
    const double pp = momentum_density(st, sp, k);
    REQUIRE(std::abs(aa * pp - 0.25) <= 1e-13);
  }
}

TEST_CASE("flow quadrature tracks the closed form at random points") {
  Rng rng(0x5ca1ab1e0ddba11ULL);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = rng.integer(1, 3);
    const double lambda = rng.log_uniform(0.3, 3.0);
    const auto prof =
        n == 1 ? magic_profile(lambda) : generalized_profile(lambda, n);
    ModelParams p;
    p.lambda = lambda;
    p.n = n;
    const double s = 10.0 * rng.uniform();
    p.s = Scale::finite(s);
    const auto st =
        n == 1 ? magic_cmera_state(p) : generalized_cmera_state(p);
    const double k = rng.log_uniform(1e-3 * lambda, 1e3 * lambda);
    const Polarization pol = rng.uniform() < 0.5 ? Polarization::transverse
                                                 : Polarization::longitudinal;
    const double q = flow_alpha_quadrature(prof, pol, k, s, 1e-12);
    const double c = eval_alpha(st, pol, k);
    REQUIRE(std::abs(q - c) <= 1e-8 * c);
  }
}

TEST_CASE("Wynn epsilon sums classic alternating series") {
  // sum (-1)^{j+1}/j = ln 2 and sum (-1)^j/(2j+1) = pi/4, both far beyond
  // the reach of 25 plain terms
  detail::WynnEpsilon ln2;
  double partial = 0.0;
  for (int j = 1; j <= 25; ++j) {
    partial += (j % 2 == 1 ? 1.0 : -1.0) / j;
    ln2.push(partial);
  }
  CHECK(ln2.estimate() == Catch::Approx(std::log(2.0)).epsilon(1e-12));

  detail::WynnEpsilon pi4;
  partial = 0.0;
  for (int j = 0; j <= 24; ++j) {
    partial += (j % 2 == 0 ? 1.0 : -1.0) / (2.0 * j + 1.0);
    pi4.push(partial);
  }
  CHECK(pi4.estimate() == Catch::Approx(M_PI / 4.0).epsilon(1e-12));
}

TEST_CASE("quadrature integrates random cubics exactly") {
  Rng rng(0xdeadbeef12345678ULL);
  for (int trial = 0; trial < 50; ++trial) {
    const double c0 = rng.uniform(), c1 = rng.uniform(), c2 = rng.uniform(),
                 c3 = rng.uniform();
    const double a = -2.0 * rng.uniform(), b = 3.0 * rng.uniform() + 0.1;
    auto f = [=](double x) {
      return c0 + x * (c1 + x * (c2 + x * c3));
    };
    auto F = [=](double x) {
      return x * (c0 + x * (c1 / 2 + x * (c2 / 3 + x * c3 / 4)));
    };
    const auto r = integrate(f, a, b, 1e-13);
    REQUIRE(r.value == Catch::Approx(F(b) - F(a)).epsilon(1e-13).margin(1e-14));
  }
}

TEST_CASE("radial transform scaling law at random parameters") {
  // T[F(k/L)](x; d) = L^d T[F](L x; d): check with the Lorentzian family
  Rng rng(0xabcdef0123456789ULL);
  for (int trial = 0; trial < 10; ++trial) {
    const double L = rng.log_uniform(0.5, 2.0);
    const int d = rng.integer(1, 3);
    const double x = rng.log_uniform(0.5, 3.0);
    RadialFunction scaled;
    scaled.eval = [L](double k) { return 1.0 / (k * k / (L * L) + 1.0); };
    scaled.decay_exponent = 2.0;
    RadialFunction base;
    base.eval = [](double k) { return 1.0 / (k * k + 1.0); };
    base.decay_exponent = 2.0;
    const double lhs = radial_fourier(scaled, d, x, 1e-11);
    const double rhs =
        std::pow(L, d) * radial_fourier(base, d, L * x, 1e-11);
    REQUIRE(lhs == Catch::Approx(rhs).epsilon(1e-8).margin(1e-11));
  }
}
