#include "critnls/grid.hpp"

#include <cmath>

namespace critnls {

std::vector<double> nodeQuadWeights(const RadialGrid& grid) {
  const int n = grid.dim().n();
  const double omega = grid.dim().surfaceMeasure();
  const double h = grid.h();
  std::vector<double> w(grid.nNodes());
  for (std::size_t j = 0; j < w.size(); ++j) {
    w[j] = omega * std::pow(grid.r(j), n - 1) * h;
  }
  w.front() *= 0.5;  // trapezoid ends; the r^{N-1} factor already zeroes w[0]
  w.back() *= 0.5;
  return w;
}

// Face coefficients solving G(j)(2j+1) - G(j-1)(2j-1) = 2N j^{N-1} with
// G(0) = 0: the unique flux form that is self-adjoint in the r^{N-1} node
// weights, exact on quadratics at every node, and decoupled from the origin.
double fluxFaceCoeff(int j, Dimension dim) {
  const double x = static_cast<double>(j);
  switch (dim.n()) {
    case 3:
      return x * (x + 1.0);
    case 4:
      return x * x * x + 1.5 * x * x + 0.25 * x - 0.125 +
             1.0 / (8.0 * (2.0 * x + 1.0));
    default: {
      const double m = x * (x + 1.0);
      return m * m - m / 3.0;
    }
  }
}

std::vector<double> faceQuadWeights(const RadialGrid& grid) {
  const int n = grid.dim().n();
  const double omega = grid.dim().surfaceMeasure();
  const double h = grid.h();
  const double scale = omega * std::pow(h, n - 2);
  std::vector<double> fw(grid.nNodes() - 1);
  for (std::size_t j = 0; j < fw.size(); ++j) {
    fw[j] = scale * fluxFaceCoeff(static_cast<int>(j), grid.dim());
  }
  return fw;
}

double RadialField::maxAbs() const {
  double m = 0.0;
  for (const auto& z : values_) m = std::max(m, std::abs(z));
  return m;
}

void RadialField::validate() const {
  for (const auto& z : values_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw Error("radial field contains non-finite values");
    }
  }
  if (values_.back() != std::complex<double>(0.0, 0.0)) {
    throw Error("radial field violates the Dirichlet condition at rMax");
  }
  const double amp = maxAbs();
  if (amp > 0.0) {
    // A C^2 radial sample has |u_1 - u_0| = O(h^2); anything of order the
    // field amplitude signals a kink or jump at the origin.
    const double bound = 50.0 * grid_.h() * amp;
    if (std::abs(values_[1] - values_[0]) > std::max(bound, 1e-14 * amp)) {
      throw Error("radial field fails the origin regularity estimate");
    }
  }
}

}  // namespace critnls
