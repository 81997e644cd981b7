#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "critnls/dimension.hpp"
#include "critnls/errors.hpp"

namespace critnls {

// Uniform radial grid r_j = j h, j = 0..nPoints, h = rMax/nPoints, with a
// homogeneous Dirichlet condition at r = rMax.
class RadialGrid {
 public:
  RadialGrid(Dimension dim, double rMax, int nPoints)
      : dim_(dim), rMax_(rMax), nPoints_(nPoints) {
    if (!(rMax > 0.0)) throw SchemaError("rMax must be positive");
    if (nPoints < 16) throw SchemaError("nPoints must be at least 16");
    h_ = rMax / nPoints;
  }

  Dimension dim() const { return dim_; }
  double rMax() const { return rMax_; }
  int nPoints() const { return nPoints_; }
  double h() const { return h_; }
  std::size_t nNodes() const { return static_cast<std::size_t>(nPoints_) + 1; }
  double r(std::size_t j) const { return h_ * static_cast<double>(j); }

  bool operator==(const RadialGrid& o) const {
    return dim_ == o.dim_ && rMax_ == o.rMax_ && nPoints_ == o.nPoints_;
  }

 private:
  Dimension dim_;
  double rMax_;
  int nPoints_;
  double h_;
};

// Node weights of the discrete radial measure: w_j = omega_N r_j^{N-1} h with
// trapezoid halving at the two ends (w_0 vanishes anyway since r_0 = 0).
std::vector<double> nodeQuadWeights(const RadialGrid& grid);

// Face coefficient G(j) of the symmetrized radial Laplacian
//   (A u)_j = [G(j)(u_{j+1}-u_j) - G(j-1)(u_j-u_{j-1})] / (j^{N-1} h^2),
// chosen so that A is self-adjoint in the node weights above, exact on
// quadratics at every node, and G(0) = 0 (the origin value decouples; the
// regularity limit Delta u(0) = N u''(0) is recovered by extrapolation).
double fluxFaceCoeff(int j, Dimension dim);

// Weights omega_N G(j) h^{N-2} of the discrete Dirichlet form
//   gradSq(u) = sum_j faceW_j |u_{j+1} - u_j|^2,
// one entry per face j = 0..nPoints-1. This is exactly <-A u, u> in the node
// weights, i.e. the quadratic form the Crank-Nicolson step conserves.
std::vector<double> faceQuadWeights(const RadialGrid& grid);

// Complex radial profile sampled on a RadialGrid.
class RadialField {
 public:
  explicit RadialField(const RadialGrid& grid)
      : grid_(grid), values_(grid.nNodes(), {0.0, 0.0}) {}

  RadialField(const RadialGrid& grid,
              const std::function<std::complex<double>(double)>& f)
      : grid_(grid), values_(grid.nNodes()) {
    for (std::size_t j = 0; j < values_.size(); ++j) values_[j] = f(grid_.r(j));
    values_.back() = {0.0, 0.0};  // Dirichlet wall
  }

  const RadialGrid& grid() const { return grid_; }
  std::vector<std::complex<double>>& values() { return values_; }
  const std::vector<std::complex<double>>& values() const { return values_; }
  std::complex<double>& operator[](std::size_t j) { return values_[j]; }
  const std::complex<double>& operator[](std::size_t j) const {
    return values_[j];
  }
  std::size_t size() const { return values_.size(); }

  double maxAbs() const;

  // Checks finiteness, the Dirichlet condition at rMax, and a coarse
  // grid-dependent smoothness bound at the origin (|u_1 - u_0| stays well
  // below the field amplitude for any C^2 radial sample).
  void validate() const;

 private:
  RadialGrid grid_;
  std::vector<std::complex<double>> values_;
};

}  // namespace critnls
