#include "critnls/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "critnls/cutoff.hpp"
#include "critnls/diagnostics.hpp"
#include "critnls/kernels.hpp"

namespace critnls {

namespace {

using ojson = nlohmann::ordered_json;

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void requireKeys(const ojson& obj, const std::vector<std::string>& allowed,
                 const std::string& where) {
  for (const auto& item : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) ==
        allowed.end()) {
      throw SchemaError("unknown key \"" + item.key() + "\" in " + where);
    }
  }
}

double asNumber(const ojson& v, const std::string& where) {
  if (!v.is_number()) throw SchemaError(where + " must be a number");
  return v.get<double>();
}

int asInt(const ojson& v, const std::string& where) {
  if (!v.is_number_integer()) throw SchemaError(where + " must be an integer");
  return v.get<int>();
}

}  // namespace

std::string to_string(InitialFamily f) {
  switch (f) {
    case InitialFamily::ScaledGroundState: return "scaled-ground-state";
    case InitialFamily::Gaussian: return "gaussian";
    default: return "gaussian-chirped";
  }
}

InitialFamily initialFamilyFromString(const std::string& s) {
  if (s == "scaled-ground-state") return InitialFamily::ScaledGroundState;
  if (s == "gaussian") return InitialFamily::Gaussian;
  if (s == "gaussian-chirped") return InitialFamily::GaussianChirped;
  throw SchemaError("unknown initial family \"" + s + "\"");
}

ExperimentConfig ExperimentConfig::fromJsonFile(const std::string& path) {
  return fromJsonText(readFile(path));
}

ExperimentConfig ExperimentConfig::fromJsonText(const std::string& text) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw SchemaError("config root must be an object");
  requireKeys(j,
              {"dim", "rMax", "nPoints", "stepping", "initialData", "probes",
               "virialR", "trajectoryCsv", "summaryJson"},
              "config");

  ExperimentConfig cfg;
  if (j.contains("dim")) cfg.dim = Dimension(asInt(j["dim"], "dim"));
  if (j.contains("rMax")) cfg.rMax = asNumber(j["rMax"], "rMax");
  if (j.contains("nPoints")) cfg.nPoints = asInt(j["nPoints"], "nPoints");

  if (j.contains("stepping")) {
    const ojson& s = j["stepping"];
    if (!s.is_object()) throw SchemaError("stepping must be an object");
    requireKeys(s,
                {"dtInit", "dtMin", "tEnd", "blowupFactor", "safety",
                 "recordEvery", "nonlinearity"},
                "stepping");
    if (s.contains("dtInit"))
      cfg.stepping.dtInit = asNumber(s["dtInit"], "stepping.dtInit");
    if (s.contains("dtMin"))
      cfg.stepping.dtMin = asNumber(s["dtMin"], "stepping.dtMin");
    if (s.contains("tEnd"))
      cfg.stepping.tEnd = asNumber(s["tEnd"], "stepping.tEnd");
    if (s.contains("blowupFactor"))
      cfg.stepping.blowupFactor =
          asNumber(s["blowupFactor"], "stepping.blowupFactor");
    if (s.contains("safety"))
      cfg.stepping.safety = asNumber(s["safety"], "stepping.safety");
    if (s.contains("recordEvery"))
      cfg.stepping.recordEvery = asInt(s["recordEvery"], "stepping.recordEvery");
    if (s.contains("nonlinearity")) {
      if (!s["nonlinearity"].is_boolean()) {
        throw SchemaError("stepping.nonlinearity must be a boolean");
      }
      cfg.stepping.nonlinearity = s["nonlinearity"].get<bool>();
    }
  }

  if (j.contains("initialData")) {
    const ojson& d = j["initialData"];
    if (!d.is_object()) throw SchemaError("initialData must be an object");
    requireKeys(d, {"family", "params"}, "initialData");
    if (!d.contains("family") || !d["family"].is_string()) {
      throw SchemaError("initialData.family must be a string");
    }
    cfg.initialData.family = initialFamilyFromString(d["family"]);
    cfg.initialData.params.clear();
    if (d.contains("params")) {
      if (!d["params"].is_object()) {
        throw SchemaError("initialData.params must be an object");
      }
      for (const auto& item : d["params"].items()) {
        cfg.initialData.params[item.key()] =
            asNumber(item.value(), "initialData.params." + item.key());
      }
    }
  }

  if (j.contains("probes")) {
    if (!j["probes"].is_array()) throw SchemaError("probes must be an array");
    cfg.probes.clear();
    for (const auto& v : j["probes"]) {
      cfg.probes.push_back(asNumber(v, "probes entry"));
    }
  }
  if (j.contains("virialR")) cfg.virialR = asNumber(j["virialR"], "virialR");
  if (j.contains("trajectoryCsv")) {
    if (!j["trajectoryCsv"].is_string())
      throw SchemaError("trajectoryCsv must be a string");
    cfg.trajectoryCsv = j["trajectoryCsv"].get<std::string>();
  }
  if (j.contains("summaryJson")) {
    if (!j["summaryJson"].is_string())
      throw SchemaError("summaryJson must be a string");
    cfg.summaryJson = j["summaryJson"].get<std::string>();
  }

  cfg.grid();            // range checks rMax / nPoints
  cfg.stepping.validate();
  return cfg;
}

RecordingConfig ExperimentConfig::recording() const {
  return RecordingConfig{virialR, probes};
}

namespace {

double requireParam(const InitialDataSpec& spec, const std::string& name) {
  auto it = spec.params.find(name);
  if (it == spec.params.end()) {
    throw SchemaError("initial family " + to_string(spec.family) +
                      " requires parameter \"" + name + "\"");
  }
  return it->second;
}

void allowParams(const InitialDataSpec& spec,
                 const std::vector<std::string>& allowed) {
  for (const auto& [key, value] : spec.params) {
    (void)value;
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw SchemaError("initial family " + to_string(spec.family) +
                        " does not take parameter \"" + key + "\"");
    }
  }
}

}  // namespace

BuiltInitialData buildInitialData(const InitialDataSpec& spec,
                                  const RadialGrid& grid) {
  RadialField field(grid);
  switch (spec.family) {
    case InitialFamily::ScaledGroundState: {
      allowParams(spec, {"amplitude"});
      const double a = requireParam(spec, "amplitude");
      const CutoffWeight bridge(CutoffWeight::Kind::MassCutoff,
                                0.4 * grid.rMax());
      const Dimension dim = grid.dim();
      field = RadialField(grid, [&](double r) {
        return std::complex<double>(a * evalW(r, dim) * bridge.phi(r), 0.0);
      });
      break;
    }
    case InitialFamily::Gaussian: {
      allowParams(spec, {"amplitude", "sigma"});
      const double a = requireParam(spec, "amplitude");
      const double sigma = requireParam(spec, "sigma");
      if (!(sigma > 0.0)) throw SchemaError("sigma must be positive");
      field = RadialField(grid, [&](double r) {
        return std::complex<double>(a * std::exp(-r * r / (sigma * sigma)),
                                    0.0);
      });
      break;
    }
    case InitialFamily::GaussianChirped: {
      allowParams(spec, {"amplitude", "sigma", "chirp"});
      const double a = requireParam(spec, "amplitude");
      const double sigma = requireParam(spec, "sigma");
      const double b = requireParam(spec, "chirp");
      if (!(sigma > 0.0)) throw SchemaError("sigma must be positive");
      field = RadialField(grid, [&](double r) {
        return std::polar(a * std::exp(-r * r / (sigma * sigma)), b * r * r);
      });
      break;
    }
  }
  field.validate();

  DiagnosticsWorkspace ws(grid);
  BuiltInitialData out{std::move(field), {}, SideCondition::FiniteVariance};
  out.pair.energy = ws.energy(out.field);
  out.pair.gradSq = ws.gradSq(out.field);
  return out;
}

int DichotomyReport::inconsistentCount() const {
  int n = 0;
  for (const auto& r : rows) {
    if (!r.consistent) ++n;
  }
  return n;
}

DichotomyReport runDichotomySweep(const ExperimentConfig& configTemplate,
                                  const std::vector<double>& amplitudes) {
  const RadialGrid grid = configTemplate.grid();
  const GroundStateProfile& profile = cachedProfile(configTemplate.dim);
  kernels::active();  // resolve dispatch before any worker starts

  DichotomyReport report;
  report.rows.resize(amplitudes.size());

  auto runOne = [&](std::size_t i) {
    DichotomyRow row;
    row.amplitude = amplitudes[i];
    row.family = to_string(configTemplate.initialData.family);
    try {
      InitialDataSpec spec = configTemplate.initialData;
      spec.params["amplitude"] = amplitudes[i];
      BuiltInitialData data = buildInitialData(spec, grid);
      row.energy = data.pair.energy;
      row.gradSq = data.pair.gradSq;
      row.energyOverEW = data.pair.energy / profile.energy;
      row.gradSqOverYC = data.pair.gradSq / profile.gradNormSq;

      const Region region =
          classify(data.pair, configTemplate.dim, profile, data.side);
      row.predictedRegion = to_string(region);

      TrajectoryRecord traj = evolve(data.field, configTemplate.stepping,
                                     profile, configTemplate.recording());
      row.observedTermination = to_string(traj.termination.tag);
      row.tStop = traj.termination.tStop;
      row.massDriftRel = traj.massDriftRel;
      row.energyDriftRel = traj.energyDriftRel;
      row.sNormTotal =
          traj.probe.sNormAccum.empty() ? 0.0 : traj.probe.sNormAccum.back();

      switch (traj.termination.tag) {
        case TerminationTag::BlowupDetected:
          row.verdict = "blowup";
          break;
        case TerminationTag::StepUnderflow:
          row.verdict = "underflow";
          break;
        default:
          row.verdict = to_string(scatteringVerdict(traj).verdict);
          break;
      }

      switch (region) {
        case Region::ScatteringRegion:
          row.consistent = traj.termination.tag == TerminationTag::ReachedTEnd &&
                           (row.verdict == "dispersing" ||
                            row.verdict == "trivial");
          break;
        case Region::BlowupRegionCertified:
        case Region::BlowupRegionExpected:
          row.consistent =
              traj.termination.tag == TerminationTag::BlowupDetected;
          break;
        default:
          row.verdict = row.verdict.empty() ? "n/a" : row.verdict;
          row.consistent = true;
          break;
      }
    } catch (const Error& e) {
      row.predictedRegion =
          row.predictedRegion.empty() ? "error" : row.predictedRegion;
      row.observedTermination = "error";
      row.verdict = e.what();
      std::replace(row.verdict.begin(), row.verdict.end(), ',', ';');
      row.consistent = false;
    }
    report.rows[i] = std::move(row);
  };

  std::size_t nThreads = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("CRITNLS_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) nThreads = static_cast<std::size_t>(v);
  }
  nThreads = std::min(nThreads, amplitudes.size());

  if (nThreads <= 1) {
    for (std::size_t i = 0; i < amplitudes.size(); ++i) runOne(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(nThreads);
    for (std::size_t w = 0; w < nThreads; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < amplitudes.size();
             i = next.fetch_add(1)) {
          runOne(i);
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  return report;
}

std::string dichotomyCsv(const DichotomyReport& report) {
  std::string out =
      "amplitude,family,energy,gradSq,energyOverEW,gradSqOverYC,"
      "predictedRegion,observedTermination,tStop,verdict,consistent,"
      "massDriftRel,energyDriftRel,sNormTotal\n";
  for (const auto& r : report.rows) {
    out += fmt(r.amplitude) + ',' + r.family + ',' + fmt(r.energy) + ',' +
           fmt(r.gradSq) + ',' + fmt(r.energyOverEW) + ',' +
           fmt(r.gradSqOverYC) + ',' + r.predictedRegion + ',' +
           r.observedTermination + ',' + fmt(r.tStop) + ',' + r.verdict + ',' +
           (r.consistent ? '1' : '0') + ',' + fmt(r.massDriftRel) + ',' +
           fmt(r.energyDriftRel) + ',' + fmt(r.sNormTotal) + '\n';
  }
  return out;
}

std::string dichotomyJson(const DichotomyReport& report) {
  ojson j;
  j["inconsistent"] = report.inconsistentCount();
  j["rows"] = ojson::array();
  for (const auto& r : report.rows) {
    ojson row;
    row["amplitude"] = r.amplitude;
    row["family"] = r.family;
    row["energy"] = r.energy;
    row["gradSq"] = r.gradSq;
    row["energyOverEW"] = r.energyOverEW;
    row["gradSqOverYC"] = r.gradSqOverYC;
    row["predictedRegion"] = r.predictedRegion;
    row["observedTermination"] = r.observedTermination;
    row["tStop"] = r.tStop;
    row["verdict"] = r.verdict;
    row["consistent"] = r.consistent;
    row["massDriftRel"] = r.massDriftRel;
    row["energyDriftRel"] = r.energyDriftRel;
    row["sNormTotal"] = r.sNormTotal;
    j["rows"].push_back(std::move(row));
  }
  return j.dump(2) + "\n";
}

DichotomyReport parseDichotomyCsv(const std::string& text) {
  DichotomyReport report;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    std::vector<std::string> fields;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) fields.push_back(cell);
    if (fields.size() != 14) {
      throw SchemaError("dichotomy CSV row with " +
                        std::to_string(fields.size()) + " fields");
    }
    DichotomyRow r;
    r.amplitude = std::strtod(fields[0].c_str(), nullptr);
    r.family = fields[1];
    r.energy = std::strtod(fields[2].c_str(), nullptr);
    r.gradSq = std::strtod(fields[3].c_str(), nullptr);
    r.energyOverEW = std::strtod(fields[4].c_str(), nullptr);
    r.gradSqOverYC = std::strtod(fields[5].c_str(), nullptr);
    r.predictedRegion = fields[6];
    r.observedTermination = fields[7];
    r.tStop = std::strtod(fields[8].c_str(), nullptr);
    r.verdict = fields[9];
    r.consistent = fields[10] == "1";
    r.massDriftRel = std::strtod(fields[11].c_str(), nullptr);
    r.energyDriftRel = std::strtod(fields[12].c_str(), nullptr);
    r.sNormTotal = std::strtod(fields[13].c_str(), nullptr);
    report.rows.push_back(std::move(r));
  }
  return report;
}

std::string trajectoryCsv(const TrajectoryRecord& traj, double virialR) {
  std::string out = "# virialR=" + fmt(virialR) + "\n";
  out +=
      "t,mass,energy,gradSq,potSq,sNormAccum,yR,yRdot,zRsecondRHS,globalRHS,"
      "tailMassFrac";
  for (double p : traj.probe.probeRadii) out += ",localGrad@" + fmt(p);
  out += '\n';

  for (std::size_t i = 0; i < traj.records(); ++i) {
    out += fmt(traj.ledger.times[i]) + ',' + fmt(traj.ledger.mass[i]) + ',' +
           fmt(traj.ledger.energy[i]) + ',' + fmt(traj.ledger.gradSq[i]) +
           ',' + fmt(traj.ledger.potSq[i]) + ',' +
           fmt(traj.probe.sNormAccum[i]) + ',' + fmt(traj.virial.yR[i]) + ',' +
           fmt(traj.virial.yRdot[i]) + ',' + fmt(traj.virial.zRsecondRHS[i]) +
           ',' + fmt(traj.virial.globalRHS[i]) + ',' +
           fmt(traj.tailMassFrac[i]);
    for (const auto& series : traj.probe.localGradAtR) {
      out += ',' + fmt(series[i]);
    }
    out += '\n';
  }
  return out;
}

std::string trajectorySummaryJson(const TrajectoryRecord& traj,
                                  const ExperimentConfig& cfg) {
  ojson j;
  j["dim"] = traj.dim.n();
  j["rMax"] = cfg.rMax;
  j["nPoints"] = cfg.nPoints;
  j["initialFamily"] = to_string(cfg.initialData.family);
  ojson params;
  for (const auto& [key, value] : cfg.initialData.params) params[key] = value;
  j["initialParams"] = std::move(params);

  j["termination"] = {{"tag", to_string(traj.termination.tag)},
                      {"tStop", traj.termination.tStop},
                      {"detail", traj.termination.detail}};
  j["records"] = traj.records();
  j["stepsTaken"] = traj.stepsTaken;
  j["massDriftRel"] = traj.massDriftRel;
  j["energyDriftRel"] = traj.energyDriftRel;
  j["energyDriftAbs"] = traj.energyDriftAbs;
  j["maxTailMassFrac"] = traj.maxTailMassFrac;
  j["truncationHygienic"] = traj.truncationHygienic;

  const std::size_t last = traj.records() - 1;
  j["final"] = {{"t", traj.ledger.times[last]},
                {"mass", traj.ledger.mass[last]},
                {"energy", traj.ledger.energy[last]},
                {"gradSq", traj.ledger.gradSq[last]},
                {"potSq", traj.ledger.potSq[last]},
                {"sNormTotal", traj.probe.sNormAccum[last]}};

  if (traj.termination.tag == TerminationTag::ReachedTEnd) {
    const ScatteringAssessment a = scatteringVerdict(traj);
    j["scattering"] = {{"verdict", to_string(a.verdict)},
                       {"tailFraction", a.tailFraction},
                       {"localGradDecayFactor", a.localGradDecayFactor},
                       {"window", a.window}};
  }
  return j.dump(2) + "\n";
}

ParsedTrajectorySeries parseTrajectoryCsv(const std::string& text) {
  ParsedTrajectorySeries out;
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> header;
  int tCol = -1, yCol = -1, ydCol = -1;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string tag = "virialR=";
      auto pos = line.find(tag);
      if (pos != std::string::npos) {
        out.virialR = std::strtod(line.c_str() + pos + tag.size(), nullptr);
      }
      continue;
    }
    std::vector<std::string> fields;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) fields.push_back(cell);

    if (header.empty()) {
      header = fields;
      for (int c = 0; c < static_cast<int>(header.size()); ++c) {
        if (header[c] == "t") tCol = c;
        if (header[c] == "yR") yCol = c;
        if (header[c] == "yRdot") ydCol = c;
      }
      if (tCol < 0 || yCol < 0 || ydCol < 0) {
        throw SchemaError("trajectory CSV is missing t/yR/yRdot columns");
      }
      continue;
    }
    if (fields.size() != header.size()) {
      throw SchemaError("trajectory CSV row width mismatch");
    }
    out.times.push_back(std::strtod(fields[tCol].c_str(), nullptr));
    out.yR.push_back(std::strtod(fields[yCol].c_str(), nullptr));
    out.yRdot.push_back(std::strtod(fields[ydCol].c_str(), nullptr));
  }
  if (header.empty()) throw SchemaError("trajectory CSV has no header");
  return out;
}

void writeFile(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path + " for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error("short write to " + path);
}

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace critnls
