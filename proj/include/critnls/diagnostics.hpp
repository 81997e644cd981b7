#pragma once

#include <vector>

#include "critnls/cutoff.hpp"
#include "critnls/grid.hpp"
#include "critnls/ground_state.hpp"
#include "critnls/trajectory.hpp"

namespace critnls {

// All field functionals use the discrete measures of grid.hpp: trapezoid node
// weights for |u|-integrands and the solver's face Dirichlet form for
// gradient integrands, so that ledger identities close exactly and the
// reported energy is the one the split-step flow nearly conserves.

// Precomputed weights + scratch for repeated evaluation on one grid (the
// solver's record loop); the free functions below build one per call.
class DiagnosticsWorkspace {
 public:
  explicit DiagnosticsWorkspace(const RadialGrid& grid);

  const RadialGrid& grid() const { return grid_; }

  double mass(const RadialField& f) const;
  double gradSq(const RadialField& f) const;
  double potSq(const RadialField& f) const;
  double energy(const RadialField& f) const;
  double sIncrement(const RadialField& f, double dt) const;
  double localGradSq(const RadialField& f, double R) const;
  double tailMassFraction(const RadialField& f) const;
  double weightedMass(const RadialField& f, const CutoffWeight& w) const;
  double virialFirstRHS(const RadialField& f, const CutoffWeight& w) const;
  double virialSecondRHS(const RadialField& f, const CutoffWeight& w) const;

  const std::vector<double>& nodeWeights() const { return nodeW_; }
  const std::vector<double>& faceWeights() const { return faceW_; }

 private:
  const std::vector<double>& abs2(const RadialField& f) const;

  RadialGrid grid_;
  std::vector<double> nodeW_;
  std::vector<double> faceW_;
  mutable std::vector<double> scratch_;
};

double massNorm(const RadialField& f);
double gradNormSq(const RadialField& f);
double potNormSq(const RadialField& f);

// (1/2) gradNormSq - (1/2*) potNormSq, assembled from the two calls above.
double energy(const RadialField& f);

// dt * int |u|^{2(N+2)/(N-2)} dx: one left-endpoint slab of the scattering
// spacetime integral.
double sNormIncrement(const RadialField& f, double dt);

// int_{r <= R} |grad u|^2 (faces with midpoint below R).
double localGradSq(const RadialField& f, double R);

// Mass fraction in r > rMax/2 (Dirichlet-wall hygiene monitor).
double tailMassFraction(const RadialField& f);

// int |u|^2 phi dx for a cutoff weight.
double weightedMass(const RadialField& f, const CutoffWeight& w);

// First virial identity RHS: 2 Im int conj(u) (d_r u) phi' dx.
double virialFirstRHS(const RadialField& f, const CutoffWeight& w);

// Second virial identity RHS for a radial weight:
//   4 int phi'' |d_r u|^2 - int Delta^2 phi |u|^2 - (4/N) int Delta phi |u|^{2*}.
// With the r^2-core weight and the field supported in r <= R this reduces
// algebraically to 8 (gradNormSq - potNormSq) in the discrete functionals.
double virialSecondRHS(const RadialField& f, const CutoffWeight& w);

// Centered-difference d/dt of a recorded yR series minus the recorded yRdot
// series; one residual per interior record. Throws InsufficientSamples when
// fewer than 3 records are available. Works on nonuniform record times.
std::vector<double> virialFirstIdentityResidual(
    const std::vector<double>& times, const std::vector<double>& yR,
    const std::vector<double>& yRdot);
std::vector<double> virialFirstIdentityResidual(const TrajectoryRecord& traj);

struct ConcentrationReport {
  double R = 0.0;
  double localGradSq = 0.0;
  double ratioToLiminfBound = 0.0;  // localGradSq / ((2/N) int |grad W|^2)
  double ratioToFullNorm = 0.0;     // localGradSq / int |grad W|^2
  bool meetsLiminfBound = false;
  bool exceedsFullNorm = false;
};

// Compares the gradient content of a window r <= R against the concentration
// levels (2/N) int |grad W|^2 and int |grad W|^2 (observational only).
ConcentrationReport concentrationWindow(const RadialField& f, double R,
                                        const GroundStateProfile& profile);

enum class ScatterVerdict { Dispersing, Inconclusive, Trivial };

struct ScatteringAssessment {
  ScatterVerdict verdict = ScatterVerdict::Inconclusive;
  double tailFraction = 0.0;         // S-norm accumulated in the final window
  double localGradDecayFactor = 0.0; // max/final local gradient, smallest probe
  int window = 0;
};

std::string to_string(ScatterVerdict v);

// Finite-horizon dispersal proxy on a completed run: "dispersing" when the
// final `window` records contribute < 1% of the accumulated S-norm AND the
// local gradient at the smallest probe radius has decayed at least 5x from its
// running maximum. A zero trajectory is "trivial". window <= 0 selects
// max(2, records/10). Throws WrongTermination unless the run reached tEnd.
ScatteringAssessment scatteringVerdict(const TrajectoryRecord& traj,
                                       int window = 0);

}  // namespace critnls
