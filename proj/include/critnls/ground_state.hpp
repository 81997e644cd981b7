#pragma once

#include "critnls/dimension.hpp"
#include "critnls/grid.hpp"

namespace critnls {

// Static quantities of the Aubin-Talenti profile
//   W(r) = (1 + r^2/(N(N-2)))^{-(N-2)/2},
// the radial ground state of Delta W + |W|^{4/(N-2)} W = 0.
struct GroundStateProfile {
  int dim = 0;
  double gradNormSq = 0.0;       // int |grad W|^2 = C_N^{-N}  (Pohozaev)
  double potentialNormSq = 0.0;  // int |W|^{2*}, equal to gradNormSq
  double energy = 0.0;           // E(W) = gradNormSq / N
  double sobolevConst = 0.0;     // sharp C_N = gradNormSq^{-1/N}
  double quadErrorBound = 0.0;   // absolute, summed over both integrals
};

double evalW(double r, Dimension dim);
double evalWPrime(double r, Dimension dim);

// W'' + (N-1)/r W' + W^{(N+2)/(N-2)}, identically zero for the exact profile;
// evaluating it probes only rounding in the independent power evaluations.
double residualEllipticW(double r, Dimension dim);

// Integrates |grad W|^2 and |W|^{2*} over R^N by adaptive Gauss-Kronrod after
// the substitution r = sqrt(N(N-2)) tan(s), which maps [0, inf) to [0, pi/2)
// and makes both integrands bounded. The energy is cross-checked against the
// independently accumulated (1/2) grad - (1/2*) potential combination.
GroundStateProfile computeConstants(Dimension dim, double quadTol = 1e-10);

// computeConstants at the default tolerance, evaluated once per dimension.
const GroundStateProfile& cachedProfile(Dimension dim);

// Samples e^{i theta} lambda^{(N-2)/2} W(lambda r) on the grid (the critical
// rescaling, which leaves gradNormSq and energy invariant in the continuum).
// The Dirichlet node at rMax is zeroed.
RadialField rescaledGroundState(double theta, double lambda,
                                const RadialGrid& grid);

}  // namespace critnls
