#pragma once

// Adaptive quadrature built on an embedded Gauss-Legendre 7/15 pair, in the
// Gauss-Kronrod style: each interval gets a 15-point value and a 7-vs-15
// difference as error estimate, and the worst interval is bisected until the
// tolerance is met. Nodes and weights are generated once at startup by Newton
// iteration on the Legendre polynomials.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include "gcmera/params.hpp"

namespace gcmera {

namespace detail {

template <int N>
struct GaussRule {
  std::array<double, N> node;    // on [-1, 1]
  std::array<double, N> weight;
};

// Legendre P_N and P_N' by the three-term recurrence.
inline void legendre_eval(int n, double x, double* p, double* dp) {
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  *p = p1;
  *dp = n * (x * p1 - p0) / (x * x - 1.0);
}

template <int N>
inline GaussRule<N> make_gauss_rule() {
  GaussRule<N> rule;
  for (int i = 0; i < N; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (N + 0.5));
    double p, dp;
    for (int it = 0; it < 60; ++it) {
      legendre_eval(N, x, &p, &dp);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    legendre_eval(N, x, &p, &dp);
    rule.node[i] = x;
    rule.weight[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

inline const GaussRule<7>& gauss7() {
  static const GaussRule<7> rule = make_gauss_rule<7>();
  return rule;
}
inline const GaussRule<15>& gauss15() {
  static const GaussRule<15> rule = make_gauss_rule<15>();
  return rule;
}

}  // namespace detail

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;     // estimated absolute error
  int evaluations = 0;
  bool converged = false;
};

// 15-point Gauss value with embedded 7-point error estimate on [a, b].
inline QuadratureResult gauss_panel(const std::function<double(double)>& f,
                                    double a, double b) {
  const auto& g7 = detail::gauss7();
  const auto& g15 = detail::gauss15();
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double v7 = 0.0, v15 = 0.0;
  for (int i = 0; i < 7; ++i) v7 += g7.weight[i] * f(mid + half * g7.node[i]);
  for (int i = 0; i < 15; ++i)
    v15 += g15.weight[i] * f(mid + half * g15.node[i]);
  QuadratureResult r;
  r.value = v15 * half;
  r.error = std::abs(v15 - v7) * std::abs(half);
  r.evaluations = 22;
  r.converged = true;
  return r;
}

// Adaptive integration of f over [a, b] to absolute tolerance abs_tol
// (plus rel_tol relative to the running value). Throws numerical_error with
// the achieved estimate when the interval budget runs out.
inline QuadratureResult integrate(const std::function<double(double)>& f,
                                  double a, double b, double abs_tol,
                                  double rel_tol = 0.0,
                                  int max_intervals = 4000) {
  struct Interval {
    double a, b, value, error;
  };
  QuadratureResult first = gauss_panel(f, a, b);
  std::vector<Interval> heap{{a, b, first.value, first.error}};
  auto cmp = [](const Interval& x, const Interval& y) {
    return x.error < y.error;
  };
  int evals = first.evaluations;
  int splits = 0;
  while (true) {
    double total = 0.0, err = 0.0;
    for (const auto& iv : heap) {
      total += iv.value;
      err += iv.error;
    }
    if (err <= abs_tol + rel_tol * std::abs(total)) {
      return {total, err, evals, true};
    }
    if (static_cast<int>(heap.size()) >= max_intervals) {
      throw numerical_error(
          "adaptive quadrature: tolerance not reached within interval budget",
          err);
    }
    std::pop_heap(heap.begin(), heap.end(), cmp);
    Interval worst = heap.back();
    heap.pop_back();
    const double m = 0.5 * (worst.a + worst.b);
    QuadratureResult l = gauss_panel(f, worst.a, m);
    QuadratureResult r = gauss_panel(f, m, worst.b);
    evals += l.evaluations + r.evaluations;
    heap.push_back({worst.a, m, l.value, l.error});
    std::push_heap(heap.begin(), heap.end(), cmp);
    heap.push_back({m, worst.b, r.value, r.error});
    std::push_heap(heap.begin(), heap.end(), cmp);
    ++splits;
  }
}

// Convenience wrapper with breakpoints, integrating each piece adaptively.
inline QuadratureResult integrate_segments(
    const std::function<double(double)>& f, const std::vector<double>& pts,
    double abs_tol, double rel_tol = 0.0) {
  QuadratureResult total;
  total.converged = true;
  const double per = abs_tol / std::max<std::size_t>(1, pts.size() - 1);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    QuadratureResult r = integrate(f, pts[i], pts[i + 1], per, rel_tol);
    total.value += r.value;
    total.error += r.error;
    total.evaluations += r.evaluations;
  }
  return total;
}

}  // namespace gcmera
