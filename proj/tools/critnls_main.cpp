#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "critnls/diagnostics.hpp"
#include "critnls/harness.hpp"

namespace {

using critnls::Dimension;

int runGroundState(int dim, double quadTol, bool asJson) {
  const auto profile = critnls::computeConstants(Dimension(dim), quadTol);
  if (asJson) {
    nlohmann::ordered_json j;
    j["dim"] = profile.dim;
    j["gradNormSq"] = profile.gradNormSq;
    j["potentialNormSq"] = profile.potentialNormSq;
    j["energy"] = profile.energy;
    j["sobolevConst"] = profile.sobolevConst;
    j["quadErrorBound"] = profile.quadErrorBound;
    std::cout << j.dump(2) << "\n";
  } else {
    std::printf("dim             %d\n", profile.dim);
    std::printf("gradNormSq      %.17g\n", profile.gradNormSq);
    std::printf("potentialNormSq %.17g\n", profile.potentialNormSq);
    std::printf("energy          %.17g\n", profile.energy);
    std::printf("sobolevConst    %.17g\n", profile.sobolevConst);
    std::printf("quadErrorBound  %.3g\n", profile.quadErrorBound);
  }
  return 0;
}

int runClassify(int dim, double energy, double gradSq, const std::string& side,
                double delta0) {
  const Dimension d(dim);
  const auto& profile = critnls::cachedProfile(d);
  critnls::SideCondition sc = critnls::SideCondition::FiniteVariance;
  if (side == "none") {
    sc = critnls::SideCondition::None;
  } else if (side == "l2") {
    sc = critnls::SideCondition::L2;
  } else if (side != "finite-variance") {
    throw critnls::SchemaError("side must be none, finite-variance or l2");
  }

  const critnls::ThresholdPair pair{energy, gradSq};
  const critnls::Region region = critnls::classify(pair, d, profile, sc);
  std::printf("region        %s\n", critnls::to_string(region).c_str());
  std::printf("energy/E(W)   %.12g\n", energy / profile.energy);
  std::printf("gradSq/yC     %.12g\n", gradSq / profile.gradNormSq);

  if (delta0 > 0.0) {
    const auto bounds = critnls::deltaBar(delta0, d, profile);
    std::printf("deltaBar      %.12g  (delta0 %.12g)\n", bounds.deltaBar,
                delta0);
    if (region == critnls::Region::BlowupRegionCertified ||
        region == critnls::Region::BlowupRegionExpected) {
      const double bound =
          critnls::blowupVirialBound(pair, d, profile, bounds, sc);
      std::printf("virial bound  d2/dt2 int r^2|u|^2 <= %.12g\n", 8.0 * bound);
    }
  }
  return 0;
}

int runEvolve(const std::string& configPath, const std::string& outDir) {
  auto cfg = critnls::ExperimentConfig::fromJsonFile(configPath);
  if (cfg.trajectoryCsv.empty()) cfg.trajectoryCsv = outDir + "/trajectory.csv";
  if (cfg.summaryJson.empty()) cfg.summaryJson = outDir + "/summary.json";

  const auto grid = cfg.grid();
  const auto& profile = critnls::cachedProfile(cfg.dim);
  const auto data = critnls::buildInitialData(cfg.initialData, grid);
  const auto region = critnls::classify(data.pair, cfg.dim, profile, data.side);
  std::printf("initial energy %.12g (E/E(W) %.6g), gradSq %.12g (g/yC %.6g)\n",
              data.pair.energy, data.pair.energy / profile.energy,
              data.pair.gradSq, data.pair.gradSq / profile.gradNormSq);
  std::printf("predicted      %s\n", critnls::to_string(region).c_str());

  const auto traj =
      critnls::evolve(data.field, cfg.stepping, profile, cfg.recording());
  std::printf("termination    %s at t=%.12g  (%zu steps, %zu records)\n",
              critnls::to_string(traj.termination.tag).c_str(),
              traj.termination.tStop, traj.stepsTaken, traj.records());
  if (!traj.termination.detail.empty()) {
    std::printf(" detail        %s\n", traj.termination.detail.c_str());
  }
  std::printf("mass drift     %.3g rel, energy drift %.3g rel\n",
              traj.massDriftRel, traj.energyDriftRel);

  critnls::writeFile(cfg.trajectoryCsv,
                     critnls::trajectoryCsv(traj, traj.virial.R));
  critnls::writeFile(cfg.summaryJson,
                     critnls::trajectorySummaryJson(traj, cfg));
  std::printf("wrote          %s\n", cfg.trajectoryCsv.c_str());
  std::printf("wrote          %s\n", cfg.summaryJson.c_str());
  return 0;
}

int runSweep(const std::string& configPath, std::vector<double> amplitudes,
             const std::string& outDir) {
  const auto cfg = critnls::ExperimentConfig::fromJsonFile(configPath);
  if (amplitudes.empty()) {
    throw critnls::SchemaError("dichotomy-sweep needs at least one amplitude");
  }
  const auto report = critnls::runDichotomySweep(cfg, amplitudes);

  critnls::writeFile(outDir + "/dichotomy.csv", critnls::dichotomyCsv(report));
  critnls::writeFile(outDir + "/dichotomy.json",
                     critnls::dichotomyJson(report));

  for (const auto& r : report.rows) {
    std::printf("a=%-10.6g %-22s -> %-15s %-12s %s\n", r.amplitude,
                r.predictedRegion.c_str(), r.observedTermination.c_str(),
                r.verdict.c_str(), r.consistent ? "ok" : "INCONSISTENT");
  }
  const int bad = report.inconsistentCount();
  std::printf("rows %zu, inconsistent %d\n", report.rows.size(), bad);
  std::printf("wrote %s/dichotomy.csv and %s/dichotomy.json\n", outDir.c_str(),
              outDir.c_str());
  return bad > 0 ? 1 : 0;
}

int runVirialCheck(const std::string& trajPath, double tol) {
  const auto series =
      critnls::parseTrajectoryCsv(critnls::readFile(trajPath));
  const auto residual = critnls::virialFirstIdentityResidual(
      series.times, series.yR, series.yRdot);

  double maxRes = 0.0, maxRate = 1.0;
  for (double r : residual) maxRes = std::max(maxRes, std::abs(r));
  for (double v : series.yRdot) maxRate = std::max(maxRate, std::abs(v));
  const double rel = maxRes / maxRate;

  std::printf("records        %zu (virialR %.6g)\n", series.times.size(),
              series.virialR);
  std::printf("max residual   %.6g abs, %.6g relative to the rate scale\n",
              maxRes, rel);
  const bool pass = rel <= tol;
  std::printf("first virial identity %s (tol %.3g)\n",
              pass ? "holds" : "VIOLATED", tol);
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"radial simulator for the focusing energy-critical Schrodinger "
               "equation"};
  app.require_subcommand(1);

  int dim = 3;
  double quadTol = 1e-10;
  std::string outDir = ".";

  auto* gs = app.add_subcommand(
      "ground-state", "print the ground-state constants for one dimension");
  bool gsJson = false;
  gs->add_option("--dim", dim, "space dimension (3, 4 or 5)");
  gs->add_option("--quad-tol", quadTol, "quadrature relative tolerance");
  gs->add_flag("--json", gsJson, "emit JSON instead of aligned text");

  auto* cl = app.add_subcommand(
      "classify", "classify an (energy, gradSq) pair against the threshold");
  double energy = 0.0, gradSq = 0.0, delta0 = 0.0;
  std::string side = "finite-variance";
  cl->add_option("--dim", dim, "space dimension (3, 4 or 5)");
  cl->add_option("--energy", energy, "conserved energy of the pair")
      ->required();
  cl->add_option("--grad-sq", gradSq, "squared gradient norm of the pair")
      ->required();
  cl->add_option("--side", side, "decay side condition: none, finite-variance, l2");
  cl->add_option("--delta0", delta0,
                 "energy deficit for the coercivity bounds (0: skip)");

  auto* ev = app.add_subcommand("evolve", "run one experiment from a JSON config");
  std::string configPath;
  ev->add_option("--config", configPath, "experiment JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  ev->add_option("--out-dir", outDir, "directory for derived output paths");

  auto* sw = app.add_subcommand(
      "dichotomy-sweep",
      "classify and evolve one run per amplitude, checking consistency");
  std::vector<double> amplitudes;
  sw->add_option("--config", configPath, "experiment JSON template")
      ->required()
      ->check(CLI::ExistingFile);
  sw->add_option("--amplitudes", amplitudes, "amplitude list")
      ->required()
      ->delimiter(',');
  sw->add_option("--out-dir", outDir, "directory for dichotomy.csv / .json");

  auto* vc = app.add_subcommand(
      "virial-check",
      "check the first virial identity on a recorded trajectory CSV");
  std::string trajPath;
  double vcTol = 1e-2;
  vc->add_option("--trajectory", trajPath, "trajectory CSV file")
      ->required()
      ->check(CLI::ExistingFile);
  vc->add_option("--tol", vcTol, "relative residual tolerance");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gs->parsed()) return runGroundState(dim, quadTol, gsJson);
    if (cl->parsed()) return runClassify(dim, energy, gradSq, side, delta0);
    if (ev->parsed()) return runEvolve(configPath, outDir);
    if (sw->parsed()) return runSweep(configPath, amplitudes, outDir);
    if (vc->parsed()) return runVirialCheck(trajPath, vcTol);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
