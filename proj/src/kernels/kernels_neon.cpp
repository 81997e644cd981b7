// NEON variants (aarch64): one 128-bit lane holds one complex double, so the
// loops run two lanes per iteration where it pays off.

#include "critnls/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

namespace critnls::kernels {
namespace neon {

void abs2(const std::complex<double>* u, double* out, std::size_t n) {
  const double* p = reinterpret_cast<const double*>(u);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t z0 = vld1q_f64(p + 2 * i);
    const float64x2_t z1 = vld1q_f64(p + 2 * i + 2);
    out[i] = vaddvq_f64(vmulq_f64(z0, z0));
    out[i + 1] = vaddvq_f64(vmulq_f64(z1, z1));
  }
  for (; i < n; ++i) {
    out[i] = u[i].real() * u[i].real() + u[i].imag() * u[i].imag();
  }
}

double weightedSum(const double* x, const double* w, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    acc = vfmaq_f64(acc, vld1q_f64(w + i), vld1q_f64(x + i));
  }
  double tail = 0.0;
  for (; i < n; ++i) tail += w[i] * x[i];
  return vaddvq_f64(acc) + tail;
}

double weightedPowSum(const double* x, const double* w, std::size_t n, int p) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t v = vld1q_f64(x + i);
    float64x2_t pw = v;
    for (int k = 1; k < p; ++k) pw = vmulq_f64(pw, v);
    acc = vfmaq_f64(acc, vld1q_f64(w + i), pw);
  }
  double tail = 0.0;
  for (; i < n; ++i) {
    double v = x[i], pw = v;
    for (int k = 1; k < p; ++k) pw *= v;
    tail += w[i] * pw;
  }
  return vaddvq_f64(acc) + tail;
}

double faceDiffAbs2Sum(const std::complex<double>* u, const double* fw,
                       std::size_t nFaces) {
  const double* p = reinterpret_cast<const double*>(u);
  double acc = 0.0;
  for (std::size_t j = 0; j < nFaces; ++j) {
    const float64x2_t d =
        vsubq_f64(vld1q_f64(p + 2 * j + 2), vld1q_f64(p + 2 * j));
    acc += fw[j] * vaddvq_f64(vmulq_f64(d, d));
  }
  return acc;
}

}  // namespace neon

const Ops* neonOpsOrNull() {
  // cnRhs stays on the scalar path on this architecture.
  static const Ops ops = {"neon",            neon::abs2,
                          neon::weightedSum, neon::weightedPowSum,
                          neon::faceDiffAbs2Sum, scalarOps().cnRhs};
  return &ops;
}

}  // namespace critnls::kernels

#else

namespace critnls::kernels {
const Ops* neonOpsOrNull() { return nullptr; }
}  // namespace critnls::kernels

#endif
