#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace critnls::kernels {

// Data-parallel inner loops of the solver and diagnostics. Every operation has
// a scalar reference implementation plus optional SIMD variants; one variant
// is selected at startup (CRITNLS_KERNELS overrides the CPU-based default) and
// the variants are equivalence-tested against the scalar reference.
//
// Sequential pieces (the tridiagonal solve, the transcendental phase rotation)
// are deliberately not part of this table; they are identical in all builds.
struct Ops {
  const char* name;

  // out[i] = |u[i]|^2
  void (*abs2)(const std::complex<double>* u, double* out, std::size_t n);

  // sum_i w[i] x[i]
  double (*weightedSum)(const double* x, const double* w, std::size_t n);

  // sum_i w[i] x[i]^p for small integer p >= 1 (multiply-only powers)
  double (*weightedPowSum)(const double* x, const double* w, std::size_t n,
                           int p);

  // sum_j fw[j] |u[j+1] - u[j]|^2 over nFaces faces (discrete Dirichlet form)
  double (*faceDiffAbs2Sum)(const std::complex<double>* u, const double* fw,
                            std::size_t nFaces);

  // out[j] = u[j] + i tau (sub[j] u[j-1] + diag[j] u[j] + sup[j] u[j+1]),
  // with u[-1] and u[n] read as 0 (Crank-Nicolson right-hand side).
  void (*cnRhs)(const std::complex<double>* u, const double* sub,
                const double* diag, const double* sup, double tau,
                std::complex<double>* out, std::size_t n);
};

const Ops& scalarOps();

// Null when the named variant is unknown or unusable on this CPU.
const Ops* opsByName(const std::string& name);

std::vector<std::string> availableNames();

// Resolved once per process: CRITNLS_KERNELS if set (hard error when the
// requested variant is unavailable), otherwise the best variant the CPU
// supports. Stable across reruns of the same build on the same machine.
const Ops& active();

}  // namespace critnls::kernels
