#pragma once

#include <string>
#include <vector>

#include "critnls/dimension.hpp"

namespace critnls {

enum class TerminationTag {
  ReachedTEnd,
  BlowupDetected,
  StepUnderflow,
};

struct TerminationReason {
  TerminationTag tag = TerminationTag::ReachedTEnd;
  double tStop = 0.0;
  std::string detail;
};

std::string to_string(TerminationTag tag);

// Conserved-quantity ledger, sampled at the recorded times.
struct ConservedLedger {
  std::vector<double> times;
  std::vector<double> mass;    // int |u|^2
  std::vector<double> energy;  // (1/2) gradSq - (1/2*) potSq
  std::vector<double> gradSq;  // int |grad u|^2
  std::vector<double> potSq;   // int |u|^{2*}
};

// Localized virial series for one cutoff radius R.
struct VirialSeries {
  double R = 0.0;
  std::vector<double> yR;            // int |u|^2 phi_R  (mass cutoff)
  std::vector<double> yRdot;         // 2 Im int conj(u) u' phi_R' dx
  std::vector<double> zRsecondRHS;   // second virial identity RHS, r^2-core weight
  std::vector<double> globalRHS;     // 8 (gradSq - potSq)
};

// Scattering-side observables.
struct ScatteringProbe {
  std::vector<double> sNormAccum;          // cumulative int int |u|^{2(N+2)/(N-2)}
  std::vector<double> probeRadii;
  // localGradAtR[k][i]: int_{r<=probeRadii[k]} |grad u|^2 at record i
  std::vector<std::vector<double>> localGradAtR;
};

struct TrajectoryRecord {
  Dimension dim;
  ConservedLedger ledger;
  VirialSeries virial;
  ScatteringProbe probe;
  std::vector<double> tailMassFrac;  // mass fraction in r > rMax/2
  TerminationReason termination;

  std::size_t stepsTaken = 0;
  double massDriftRel = 0.0;
  double energyDriftRel = 0.0;
  double energyDriftAbs = 0.0;
  double maxTailMassFrac = 0.0;
  bool truncationHygienic = false;  // maxTailMassFrac < 1e-6

  std::size_t records() const { return ledger.times.size(); }
};

}  // namespace critnls
