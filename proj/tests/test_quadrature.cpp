#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "gcmera/quadrature.hpp"

using namespace gcmera;

TEST_CASE("polynomial and trig integrals") {
  auto r = integrate([](double x) { return x * x; }, 0.0, 1.0, 1e-14);
  CHECK(r.value == Catch::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(r.converged);

  r = integrate([](double x) { return std::sin(x); }, 0.0, M_PI, 1e-14);
  CHECK(r.value == Catch::Approx(2.0).epsilon(1e-14));

  // oscillatory but smooth
  r = integrate([](double x) { return std::cos(10.0 * x); }, 0.0, 5.0, 1e-13);
  CHECK(r.value == Catch::Approx(std::sin(50.0) / 10.0).margin(1e-13));
}

TEST_CASE("error estimate is honest") {
  auto r = integrate([](double x) { return std::exp(-x * x / 2.0); }, 0.0,
                     8.0, 1e-12);
  const double exact = std::sqrt(M_PI / 2.0);  // erf(8/sqrt2) ~ 1
  CHECK(std::abs(r.value - exact) <= 1e-11);
  CHECK(std::abs(r.value - exact) <= 10.0 * r.error + 1e-15);
}

TEST_CASE("budget exhaustion throws numerical_error with achieved estimate") {
  // integrable endpoint singularity, tiny budget
  auto f = [](double x) { return 1.0 / std::sqrt(x); };
  try {
    integrate(f, 1e-300, 1.0, 1e-14, 0.0, 8);
    FAIL("expected numerical_error");
  } catch (const numerical_error& e) {
    CHECK(e.achieved > 1e-14);
  }
}

TEST_CASE("segmented integration") {
  auto r = integrate_segments([](double x) { return 1.0 / (1.0 + x * x); },
                              {0.0, 1.0, 10.0, 1000.0}, 1e-12);
  CHECK(r.value == Catch::Approx(std::atan(1000.0)).epsilon(1e-13));
}
