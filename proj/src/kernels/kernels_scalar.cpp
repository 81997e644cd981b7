#include "critnls/kernels.hpp"

namespace critnls::kernels {
namespace scalar {

void abs2(const std::complex<double>* u, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = u[i].real() * u[i].real() + u[i].imag() * u[i].imag();
  }
}

double weightedSum(const double* x, const double* w, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += w[i] * x[i];
  return acc;
}

double weightedPowSum(const double* x, const double* w, std::size_t n, int p) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double v = x[i];
    double pw = v;
    for (int k = 1; k < p; ++k) pw *= v;
    acc += w[i] * pw;
  }
  return acc;
}

double faceDiffAbs2Sum(const std::complex<double>* u, const double* fw,
                       std::size_t nFaces) {
  double acc = 0.0;
  for (std::size_t j = 0; j < nFaces; ++j) {
    const double dr = u[j + 1].real() - u[j].real();
    const double di = u[j + 1].imag() - u[j].imag();
    acc += fw[j] * (dr * dr + di * di);
  }
  return acc;
}

void cnRhs(const std::complex<double>* u, const double* sub, const double* diag,
           const double* sup, double tau, std::complex<double>* out,
           std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    std::complex<double> s = diag[j] * u[j];
    if (j > 0) s += sub[j] * u[j - 1];
    if (j + 1 < n) s += sup[j] * u[j + 1];
    // + i tau s
    out[j] = {u[j].real() - tau * s.imag(), u[j].imag() + tau * s.real()};
  }
}

}  // namespace scalar

const Ops& scalarOps() {
  static const Ops ops = {"scalar",           scalar::abs2,
                          scalar::weightedSum, scalar::weightedPowSum,
                          scalar::faceDiffAbs2Sum, scalar::cnRhs};
  return ops;
}

}  // namespace critnls::kernels
