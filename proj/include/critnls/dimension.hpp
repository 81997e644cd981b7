#pragma once

#include <cmath>

#include "critnls/errors.hpp"

namespace critnls {

// Exponents in the energy-critical power nonlinearity are rationals in the
// dimension; they are kept as exact integer pairs so that integer powers can
// be dispatched to multiply-only code paths.
struct Rational {
  int num = 0;
  int den = 1;

  double value() const { return static_cast<double>(num) / den; }
  bool isInteger() const { return den == 1; }
};

// Spatial dimension N of the radial problem, restricted to 3, 4, 5: the
// nonlinearity |u|^{4/(N-2)} u is energy-critical exactly there (for N >= 3)
// and 3..5 keeps every exponent table finite and explicit.
class Dimension {
 public:
  explicit Dimension(int n) : n_(n) {
    if (n < 3 || n > 5) throw SchemaError("dimension must be 3, 4 or 5");
  }

  int n() const { return n_; }

  // p = 4/(N-2), nonlinearity power in |u|^p u.
  Rational criticalPower() const {
    switch (n_) {
      case 3: return {4, 1};
      case 4: return {2, 1};
      default: return {4, 3};
    }
  }

  // 2* = 2N/(N-2), critical Sobolev exponent.
  Rational twoStar() const {
    switch (n_) {
      case 3: return {6, 1};
      case 4: return {4, 1};
      default: return {10, 3};
    }
  }

  // 2*/2 = N/(N-2): |u|^{2*} = (|u|^2)^{N/(N-2)}.
  Rational twoStarHalf() const {
    switch (n_) {
      case 3: return {3, 1};
      case 4: return {2, 1};
      default: return {5, 3};
    }
  }

  // Spacetime scattering-norm exponent 2(N+2)/(N-2).
  Rational scatteringExponent() const {
    switch (n_) {
      case 3: return {10, 1};
      case 4: return {6, 1};
      default: return {14, 3};
    }
  }

  // Surface measure of the unit sphere S^{N-1}.
  double surfaceMeasure() const {
    const double pi = 3.14159265358979323846;
    switch (n_) {
      case 3: return 4.0 * pi;
      case 4: return 2.0 * pi * pi;
      default: return 8.0 * pi * pi / 3.0;
    }
  }

  // N(N-2), the squared length scale in the ground state profile.
  double wScaleSq() const { return static_cast<double>(n_ * (n_ - 2)); }

  bool operator==(const Dimension& o) const { return n_ == o.n_; }

 private:
  int n_;
};

}  // namespace critnls
