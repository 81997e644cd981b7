#pragma once

#include <optional>
#include <vector>

#include "critnls/grid.hpp"
#include "critnls/ground_state.hpp"
#include "critnls/trajectory.hpp"

namespace critnls {

// Split-step integrator for the radial focusing energy-critical equation
//   i u_t + Delta u + |u|^{4/(N-2)} u = 0
// on [0, rMax] with a Dirichlet wall: Strang composition of the Crank-Nicolson
// linear flow (Cayley transform of the symmetrized radial Laplacian, hence
// exactly mass-conserving) and the exact pointwise nonlinear phase rotation.
struct EvolutionConfig {
  double dtInit = 1e-3;
  double dtMin = 1e-9;
  double tEnd = 1.0;
  double blowupFactor = 10.0;  // detect when gradSq >= factor * int |grad W|^2
  double safety = 0.5;         // dt <= safety / max(1, max|u|^{4/(N-2)})
  int recordEvery = 10;
  bool nonlinearity = true;    // false: free Schroedinger evolution

  void validate() const;
};

// Recording choices for evolve (independent of the stepping itself).
struct RecordingConfig {
  double virialR = 0.0;              // 0: use rMax/4
  std::vector<double> probeRadii;    // empty: {2, 8} clipped to the grid
};

// Second-order symmetrized discrete Laplacian as an explicit operator
// (diagnostic form: centered stencil at interior nodes, regularity limit
// N u''(0) at the origin, zero at the Dirichlet node).
std::vector<std::complex<double>> laplacianRadial(const RadialField& f);

// Exact flow of the nonlinear part: u <- u exp(i dt |u|^{4/(N-2)}).
void nonlinearPhaseStep(RadialField& f, double dt);

// One Crank-Nicolson step of the linear part:
//   (I - i dt/2 A) u+ = (I + i dt/2 A) u
// with A the symmetrized radial Laplacian; the origin value is refreshed from
// the interior by even-regularity extrapolation.
void linearStep(RadialField& f, double dt);

// Strang composition: linear dt/2, phase dt, linear dt/2 (with the
// nonlinearity disabled, exactly the two linear half-steps).
void strangStep(RadialField& f, double dt, bool nonlinearity = true);

// Runs the adaptive loop until tEnd, blow-up detection (discrete gradSq
// crossing blowupFactor * profile.gradNormSq, checked every step) or a time
// step underflow. Records the diagnostics ledger, virial series and
// scattering probes every recordEvery steps, plus the initial and final
// states.
TrajectoryRecord evolve(const RadialField& u0, const EvolutionConfig& cfg,
                        const GroundStateProfile& profile,
                        const RecordingConfig& rec = {});

}  // namespace critnls
