#pragma once

// Model parameters and error taxonomy shared by every module.

#include <cmath>
#include <stdexcept>
#include <string>

namespace gcmera {

// Bad constructor/CLI inputs.
struct validation_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Query outside a state's domain (k <= 0, pure-gauge sector, ...).
struct domain_error : std::domain_error {
  using std::domain_error::domain_error;
};

// A numerical routine failed to meet its tolerance. Carries the achieved
// error estimate so callers can report diagnostics.
struct numerical_error : std::runtime_error {
  explicit numerical_error(const std::string& msg, double achieved_error = 0.0)
      : std::runtime_error(msg), achieved(achieved_error) {}
  double achieved;
};

enum class Polarization { longitudinal, transverse };

// Scale parameter s >= 0 of the entangling evolution, extended with an
// explicit infinity marker for the fixed point (exact formulas exist there,
// so a large float stand-in is never used).
class Scale {
 public:
  static Scale finite(double s) {
    if (!(s >= 0.0) || !std::isfinite(s))
      throw validation_error("scale s must be finite and >= 0");
    return Scale(s, false);
  }
  static Scale infinity() { return Scale(0.0, true); }

  bool is_infinite() const { return infinite_; }
  double value() const {
    if (infinite_) throw domain_error("scale is infinite");
    return value_;
  }

 private:
  Scale(double v, bool inf) : value_(v), infinite_(inf) {}
  double value_;
  bool infinite_;
};

// The knobs of every formula: spatial dimension d, UV cutoff Lambda,
// scale s, and regularity order n (n = 1 is the magic entangler family,
// n > 1 the higher-derivative one).
struct ModelParams {
  int d = 3;
  double lambda = 1.0;
  Scale s = Scale::finite(0.0);
  int n = 1;

  void validate() const {
    if (d < 1) throw validation_error("dimension d must be >= 1");
    if (!(lambda > 0.0) || !std::isfinite(lambda))
      throw validation_error("cutoff lambda must be positive and finite");
    if (n < 1) throw validation_error("regularity order n must be >= 1");
  }

  // m(s) = Lambda e^{-s}; 0 < m <= Lambda for finite s, m = 0 at s = inf.
  double mass() const {
    if (s.is_infinite()) return 0.0;
    return lambda * std::exp(-s.value());
  }

  // m(s)/Lambda, the internal nondimensional mass.
  double mu() const {
    if (s.is_infinite()) return 0.0;
    return std::exp(-s.value());
  }
};

namespace detail {

// x^k for small non-negative integer k by repeated multiplication.
// Exact for x = 1, which the s = 0 identities rely on.
inline double pow_int(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

}  // namespace detail

}  // namespace gcmera
