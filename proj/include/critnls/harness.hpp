#pragma once

#include <map>
#include <string>
#include <vector>

#include "critnls/solver.hpp"
#include "critnls/variational.hpp"

namespace critnls {

enum class InitialFamily {
  ScaledGroundState,  // a * W, smoothly truncated at 0.8 rMax
  Gaussian,           // a * exp(-r^2/sigma^2)
  GaussianChirped,    // a * exp(-r^2/sigma^2) exp(i b r^2)
};

std::string to_string(InitialFamily f);
InitialFamily initialFamilyFromString(const std::string& s);

struct InitialDataSpec {
  InitialFamily family = InitialFamily::Gaussian;
  std::map<std::string, double> params;  // validated per family
};

// Full description of one run. Parsed from strict JSON: unknown keys anywhere
// raise SchemaError.
struct ExperimentConfig {
  Dimension dim{3};
  double rMax = 40.0;
  int nPoints = 4096;
  EvolutionConfig stepping;
  InitialDataSpec initialData;
  std::vector<double> probes;  // empty -> {2, 8}
  double virialR = 0.0;        // 0 -> rMax/4
  std::string trajectoryCsv;   // empty -> derived from out dir
  std::string summaryJson;

  static ExperimentConfig fromJsonFile(const std::string& path);
  static ExperimentConfig fromJsonText(const std::string& text);

  RadialGrid grid() const { return RadialGrid(dim, rMax, nPoints); }
  RecordingConfig recording() const;
};

struct BuiltInitialData {
  RadialField field;
  ThresholdPair pair;       // discrete energy and gradSq of the sample
  SideCondition side = SideCondition::FiniteVariance;
};

// Samples the family on the grid (families are compactly supported or
// Schwartz, so the Dirichlet wall sees zero data) and measures the threshold
// pair with the discrete functionals; the truncation-induced shift of the
// pair is thereby computed, never assumed.
BuiltInitialData buildInitialData(const InitialDataSpec& spec,
                                  const RadialGrid& grid);

struct DichotomyRow {
  double amplitude = 0.0;
  std::string family;
  double energy = 0.0;
  double gradSq = 0.0;
  double energyOverEW = 0.0;
  double gradSqOverYC = 0.0;
  std::string predictedRegion;
  std::string observedTermination;
  double tStop = 0.0;
  std::string verdict;  // dispersing / inconclusive / trivial / blowup / n/a
  bool consistent = true;
  double massDriftRel = 0.0;
  double energyDriftRel = 0.0;
  double sNormTotal = 0.0;
};

struct DichotomyReport {
  std::vector<DichotomyRow> rows;
  int inconsistentCount() const;
};

// Runs one classification + evolution per amplitude (the template's family
// amplitude is replaced row by row) and marks each row consistent when the
// predicted region matches the observed outcome: ScatteringRegion demands
// ReachedTEnd with a dispersing verdict, the blow-up regions demand
// BlowupDetected, AboveThreshold makes no claim. Rows are never dropped.
// CRITNLS_THREADS caps the number of parallel rows.
DichotomyReport runDichotomySweep(const ExperimentConfig& configTemplate,
                                  const std::vector<double>& amplitudes);

// Byte-stable emission: identical reports serialize to identical bytes.
std::string dichotomyCsv(const DichotomyReport& report);
std::string dichotomyJson(const DichotomyReport& report);
DichotomyReport parseDichotomyCsv(const std::string& text);

std::string trajectoryCsv(const TrajectoryRecord& traj, double virialR);
std::string trajectorySummaryJson(const TrajectoryRecord& traj,
                                  const ExperimentConfig& cfg);

struct ParsedTrajectorySeries {
  std::vector<double> times, yR, yRdot;
  double virialR = 0.0;  // from the header comment when present
};
ParsedTrajectorySeries parseTrajectoryCsv(const std::string& text);

void writeFile(const std::string& path, const std::string& contents);
std::string readFile(const std::string& path);

}  // namespace critnls
