#pragma once

#include <string>

#include "critnls/dimension.hpp"
#include "critnls/ground_state.hpp"
#include "critnls/trajectory.hpp"

namespace critnls {

// Scalar comparison functions behind the threshold classification, written in
// terms of the sharp Sobolev constant C_N:
//   f1(y) = y/2 - (C_N^{2*}/2*) y^{2*/2},   g1(y) = y - C_N^{2*} y^{N/(N-2)}.
// f1 increases on [0, y_C] to its maximum f1(y_C) = E(W) at y_C = C_N^{-N};
// g1 is positive between its zeros 0 and y_C.
double f1(double y, Dimension dim, const GroundStateProfile& profile);
double g1(double y, Dimension dim, const GroundStateProfile& profile);

struct CoercivityBounds {
  double delta0 = 0.0;   // energy deficit: E(u) <= (1 - delta0) E(W)
  double deltaBar = 0.0; // sharp gradient-trapping constant
  double yStar = 0.0;    // (1 - deltaBar) y_C, the trapped gradient ceiling
};

// Sharp deltaBar for a given energy deficit: bisection for the root y* of
// f1(y) = (1 - delta0) E(W) on [0, y_C), then deltaBar = 1 - y*/y_C.
// deltaBar(1) = 1 exactly; deltaBar ~ sqrt(delta0) as delta0 -> 0.
CoercivityBounds deltaBar(double delta0, Dimension dim,
                          const GroundStateProfile& profile);

struct ThresholdPair {
  double energy = 0.0;
  double gradSq = 0.0;
};

enum class SideCondition { None, FiniteVariance, L2 };
enum class Region {
  ScatteringRegion,
  BlowupRegionCertified,
  BlowupRegionExpected,
  AboveThreshold,
};

std::string to_string(Region r);
std::string to_string(SideCondition s);

// Threshold classification of an (energy, gradSq) pair:
//   energy >= E(W)                    -> AboveThreshold (no claim)
//   energy <  E(W), gradSq < y_C      -> ScatteringRegion
//   energy <  E(W), gradSq > y_C      -> BlowupRegionCertified when a decay
//                                        side condition is supplied, else
//                                        BlowupRegionExpected
// Pairs with energy < E(W) and gradSq exactly y_C, or below the sharp Sobolev
// envelope f1 on [0, y_C], cannot arise from functions: InfeasiblePair.
Region classify(const ThresholdPair& pair, Dimension dim,
                const GroundStateProfile& profile, SideCondition side);

// Variance ceiling in the certified blow-up region:
//   d^2/dt^2 int |x|^2 |u|^2 <= 8 * bound,  bound = -2 deltaBar / ((N-2) C_N^N).
// Throws RegionMismatch unless the pair is classified in a blow-up region with
// E(u) <= (1 - delta0) E(W).
double blowupVirialBound(const ThresholdPair& pair, Dimension dim,
                         const GroundStateProfile& profile,
                         const CoercivityBounds& bounds,
                         SideCondition side = SideCondition::FiniteVariance);

struct TrappingReport {
  bool clean = true;
  double margin = 0.0;
  int firstViolationIndex = -1;
  std::string inequality;  // which bound failed first, empty when clean
  double lhs = 0.0;
  double rhs = 0.0;
};

// Verifies the trapping bounds along a recorded sub-threshold trajectory:
//   gradSq(t) <= (1 - deltaBar) y_C
//   gradSq(t) - potSq(t) >= deltaBar gradSq(t)
//   energy(t) >= 0
// each with an additive margin of 10x the run's absolute energy-drift bound
// (discretization noise must not produce false violations).
TrappingReport energyTrappingCheck(const TrajectoryRecord& traj,
                                   const CoercivityBounds& bounds,
                                   const GroundStateProfile& profile);

struct ComparabilityReport {
  bool vacuous = false;  // zero trajectory
  double c1 = 0.0;
  double c2 = 0.5;
  double minRatio = 0.0;
  double maxRatio = 0.0;
  bool within = false;
  int violations = 0;
};

// Energy-gradient comparability on a trapped trajectory:
//   c1 gradSq <= energy <= c2 gradSq,  c2 = 1/2,
//   c1 = deltaBar/2* + (1/2 - 1/2*) - margin.
ComparabilityReport comparabilityCheck(const TrajectoryRecord& traj,
                                       const CoercivityBounds& bounds);

}  // namespace critnls
