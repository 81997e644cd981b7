#pragma once

#include <array>

#include "critnls/dimension.hpp"
#include "critnls/errors.hpp"

namespace critnls {

// Radial cutoff weights used by the localized virial and mass identities.
// Each weight matches its core profile for r <= R, vanishes identically for
// r >= 2R, and bridges the two on [R, 2R] with the minimal-degree (degree 9)
// two-point Hermite polynomial matching value and four derivatives at both
// joins, so phi is C^4 and the bi-Laplacian stays bounded.
class CutoffWeight {
 public:
  enum class Kind {
    MassCutoff,    // phi == 1 on the core
    VirialWeight,  // phi == r^2 on the core
  };

  CutoffWeight(Kind kind, double R);

  Kind kind() const { return kind_; }
  double R() const { return R_; }

  double phi(double r) const;
  double dphi(double r) const;
  double d2phi(double r) const;
  double d3phi(double r) const;
  double d4phi(double r) const;

  // Delta phi = phi'' + (N-1)/r phi' (limit value at r = 0).
  double laplacianPhi(double r, Dimension dim) const;

  // Delta^2 phi = phi'''' + 2(N-1)/r phi''' + (N-1)(N-3)/r^2 phi''
  //               - (N-1)(N-3)/r^3 phi'.
  double bilaplacianPhi(double r, Dimension dim) const;

 private:
  // Bridge polynomial q(x), x = (r-R)/R in [0,1]; phi = scale * q on the
  // bridge with scale = 1 (mass) or R^2 (virial).
  double q(int deriv, double x) const;

  Kind kind_;
  double R_;
  double scale_;
  std::array<double, 10> coeff_{};  // monomial coefficients of q
};

}  // namespace critnls
