#include "critnls/cutoff.hpp"

#include <cmath>

namespace critnls {

namespace {

// Expand (1-x)^5 (c0 + c1 x + c2 x^2 + c3 x^3 + c4 x^4) into monomials. The
// quintic factor kills value and four derivatives at x = 1; the c's are fixed
// by the left-end Taylor data, so the product is the minimal-degree C^4
// two-point Hermite bridge.
std::array<double, 10> bridgeCoeffs(const std::array<double, 5>& c) {
  // (1-x)^5 coefficients
  const double binom[6] = {1.0, -5.0, 10.0, -10.0, 5.0, -1.0};
  std::array<double, 10> out{};
  for (int i = 0; i <= 5; ++i) {
    for (int k = 0; k <= 4; ++k) out[i + k] += binom[i] * c[k];
  }
  return out;
}

}  // namespace

CutoffWeight::CutoffWeight(Kind kind, double R) : kind_(kind), R_(R) {
  if (!(R > 0.0)) throw SchemaError("cutoff radius must be positive");
  if (kind == Kind::MassCutoff) {
    scale_ = 1.0;
    // Left Taylor target 1 (all derivatives zero): c matches 1/(1-x)^5 series.
    coeff_ = bridgeCoeffs({1.0, 5.0, 15.0, 35.0, 70.0});
  } else {
    // phi = r^2 = R^2 (1+x)^2 on the core side: target 1 + 2x + x^2.
    scale_ = R * R;
    coeff_ = bridgeCoeffs({1.0, 7.0, 26.0, 70.0, 155.0});
  }
}

// Horner evaluation of the deriv-th derivative of the monomial expansion,
// with the falling-factorial factors folded into the coefficients.
double CutoffWeight::q(int deriv, double x) const {
  double acc = 0.0;
  for (int k = 9; k >= deriv; --k) {
    double fac = 1.0;
    for (int m = 0; m < deriv; ++m) fac *= static_cast<double>(k - m);
    acc = acc * x + fac * coeff_[static_cast<std::size_t>(k)];
  }
  return acc;
}

double CutoffWeight::phi(double r) const {
  if (r <= R_) return kind_ == Kind::MassCutoff ? 1.0 : r * r;
  if (r >= 2.0 * R_) return 0.0;
  return scale_ * q(0, (r - R_) / R_);
}

double CutoffWeight::dphi(double r) const {
  if (r <= R_) return kind_ == Kind::MassCutoff ? 0.0 : 2.0 * r;
  if (r >= 2.0 * R_) return 0.0;
  return scale_ / R_ * q(1, (r - R_) / R_);
}

double CutoffWeight::d2phi(double r) const {
  if (r <= R_) return kind_ == Kind::MassCutoff ? 0.0 : 2.0;
  if (r >= 2.0 * R_) return 0.0;
  return scale_ / (R_ * R_) * q(2, (r - R_) / R_);
}

double CutoffWeight::d3phi(double r) const {
  if (r <= R_ || r >= 2.0 * R_) return 0.0;
  return scale_ / (R_ * R_ * R_) * q(3, (r - R_) / R_);
}

double CutoffWeight::d4phi(double r) const {
  if (r <= R_ || r >= 2.0 * R_) return 0.0;
  return scale_ / (R_ * R_ * R_ * R_) * q(4, (r - R_) / R_);
}

double CutoffWeight::laplacianPhi(double r, Dimension dim) const {
  if (r == 0.0) {
    return kind_ == Kind::MassCutoff ? 0.0 : 2.0 * dim.n();
  }
  return d2phi(r) + (dim.n() - 1) / r * dphi(r);
}

double CutoffWeight::bilaplacianPhi(double r, Dimension dim) const {
  if (r <= R_ || r >= 2.0 * R_) return 0.0;  // core profiles are biharmonic
  const double n1 = dim.n() - 1.0;
  const double n3 = dim.n() - 3.0;
  return d4phi(r) + 2.0 * n1 / r * d3phi(r) + n1 * n3 / (r * r) * d2phi(r) -
         n1 * n3 / (r * r * r) * dphi(r);
}

}  // namespace critnls
