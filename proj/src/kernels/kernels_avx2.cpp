// AVX2 + FMA variants of the dispatch-table kernels. Complex arrays are
// interleaved (re, im), so a 256-bit lane holds two complex values.

#include "critnls/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace critnls::kernels {
namespace avx2 {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

// (a0,a1,b0,b1) from the pairwise |.|^2 of two vectors of two complex each.
inline __m256d pairAbs2(__m256d z0, __m256d z1) {
  const __m256d m0 = _mm256_mul_pd(z0, z0);
  const __m256d m1 = _mm256_mul_pd(z1, z1);
  // hadd: (m0[0]+m0[1], m1[0]+m1[1], m0[2]+m0[3], m1[2]+m1[3])
  const __m256d h = _mm256_hadd_pd(m0, m1);
  // reorder to (z0 pair0, z0 pair1, z1 pair0, z1 pair1)
  return _mm256_permute4x64_pd(h, _MM_SHUFFLE(3, 1, 2, 0));
}

}  // namespace

void abs2(const std::complex<double>* u, double* out, std::size_t n) {
  const double* p = reinterpret_cast<const double*>(u);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d z0 = _mm256_loadu_pd(p + 2 * i);
    const __m256d z1 = _mm256_loadu_pd(p + 2 * i + 4);
    _mm256_storeu_pd(out + i, pairAbs2(z0, z1));
  }
  for (; i < n; ++i) {
    out[i] = u[i].real() * u[i].real() + u[i].imag() * u[i].imag();
  }
}

double weightedSum(const double* x, const double* w, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(x + i), acc);
  }
  double tail = 0.0;
  for (; i < n; ++i) tail += w[i] * x[i];
  return hsum(acc) + tail;
}

double weightedPowSum(const double* x, const double* w, std::size_t n, int p) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    __m256d pw = v;
    for (int k = 1; k < p; ++k) pw = _mm256_mul_pd(pw, v);
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), pw, acc);
  }
  double tail = 0.0;
  for (; i < n; ++i) {
    double v = x[i], pw = v;
    for (int k = 1; k < p; ++k) pw *= v;
    tail += w[i] * pw;
  }
  return hsum(acc) + tail;
}

double faceDiffAbs2Sum(const std::complex<double>* u, const double* fw,
                       std::size_t nFaces) {
  const double* p = reinterpret_cast<const double*>(u);
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= nFaces; j += 4) {
    const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(p + 2 * j + 2),
                                     _mm256_loadu_pd(p + 2 * j));
    const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(p + 2 * j + 6),
                                     _mm256_loadu_pd(p + 2 * j + 4));
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(fw + j), pairAbs2(d0, d1), acc);
  }
  double tail = 0.0;
  for (; j < nFaces; ++j) {
    const double dr = u[j + 1].real() - u[j].real();
    const double di = u[j + 1].imag() - u[j].imag();
    tail += fw[j] * (dr * dr + di * di);
  }
  return hsum(acc) + tail;
}

void cnRhs(const std::complex<double>* u, const double* sub, const double* diag,
           const double* sup, double tau, std::complex<double>* out,
           std::size_t n) {
  if (n < 4) {
    scalarOps().cnRhs(u, sub, diag, sup, tau, out, n);
    return;
  }
  const double* p = reinterpret_cast<const double*>(u);
  double* q = reinterpret_cast<double*>(out);
  // lane signs for z -> i z on (re, im) pairs: (-im, re)
  const __m256d sgn = _mm256_set_pd(1.0, -1.0, 1.0, -1.0);
  const __m256d vtau = _mm256_set1_pd(tau);

  auto pairDup = [](const double* c) {
    // (c0, c0, c1, c1)
    const __m256d t = _mm256_castpd128_pd256(_mm_loadu_pd(c));
    return _mm256_permute4x64_pd(t, _MM_SHUFFLE(1, 1, 0, 0));
  };

  // interior pairs j, j+1 with 1 <= j and j+1 <= n-2
  std::size_t j = 1;
  for (; j + 2 <= n - 1; j += 2) {
    const __m256d um = _mm256_loadu_pd(p + 2 * (j - 1));
    const __m256d uc = _mm256_loadu_pd(p + 2 * j);
    const __m256d up = _mm256_loadu_pd(p + 2 * (j + 1));
    __m256d s = _mm256_mul_pd(pairDup(diag + j), uc);
    s = _mm256_fmadd_pd(pairDup(sub + j), um, s);
    s = _mm256_fmadd_pd(pairDup(sup + j), up, s);
    // i s = swap pairs, negate new real lane
    const __m256d is =
        _mm256_mul_pd(_mm256_permute_pd(s, 0x5), sgn);
    _mm256_storeu_pd(q + 2 * j, _mm256_fmadd_pd(vtau, is, uc));
  }
  // edges (and any leftover interior node) via the reference path
  auto one = [&](std::size_t k) {
    std::complex<double> s = diag[k] * u[k];
    if (k > 0) s += sub[k] * u[k - 1];
    if (k + 1 < n) s += sup[k] * u[k + 1];
    out[k] = {u[k].real() - tau * s.imag(), u[k].imag() + tau * s.real()};
  };
  one(0);
  for (; j < n; ++j) one(j);
}

}  // namespace avx2

const Ops* avx2OpsOrNull() {
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
    static const Ops ops = {"avx2",            avx2::abs2,
                            avx2::weightedSum, avx2::weightedPowSum,
                            avx2::faceDiffAbs2Sum, avx2::cnRhs};
    return &ops;
  }
  return nullptr;
}

}  // namespace critnls::kernels

#else

namespace critnls::kernels {
const Ops* avx2OpsOrNull() { return nullptr; }
}  // namespace critnls::kernels

#endif
