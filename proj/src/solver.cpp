#include "critnls/solver.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "critnls/cutoff.hpp"
#include "critnls/diagnostics.hpp"
#include "critnls/kernels.hpp"

namespace critnls {

namespace {

// |u|^{4/(N-2)} from abs2 = |u|^2.
double critPower(double abs2, int n) {
  switch (n) {
    case 3: return abs2 * abs2;
    case 4: return abs2;
    default: return std::cbrt(abs2 * abs2);
  }
}

// Interior tridiagonal rows of the symmetrized radial Laplacian, unknowns
// j = 1..nPoints-1 (the origin decouples since G(0) = 0, the wall is pinned),
// plus reusable scratch for the Crank-Nicolson sweep.
struct LinearPropagator {
  RadialGrid grid;
  std::vector<double> sub, diag, sup;
  std::vector<std::complex<double>> rhs, cprime, interior;

  explicit LinearPropagator(const RadialGrid& g) : grid(g) {
    const int nP = g.nPoints();
    const double h2 = g.h() * g.h();
    const int dim = g.dim().n();
    const std::size_t m = static_cast<std::size_t>(nP) - 1;
    sub.resize(m);
    diag.resize(m);
    sup.resize(m);
    rhs.resize(m);
    cprime.resize(m);
    interior.resize(m);
    for (int j = 1; j < nP; ++j) {
      const double inv = 1.0 / (std::pow(static_cast<double>(j), dim - 1) * h2);
      const double gLo = fluxFaceCoeff(j - 1, g.dim());
      const double gHi = fluxFaceCoeff(j, g.dim());
      sub[j - 1] = gLo * inv;
      diag[j - 1] = -(gLo + gHi) * inv;
      sup[j - 1] = gHi * inv;
    }
  }

  // (I - i tau A) u+ = (I + i tau A) u, then even-regularity refresh of u_0.
  void step(RadialField& f, double dt) {
    const double tau = 0.5 * dt;
    const std::size_t m = diag.size();
    auto& u = f.values();
    std::copy(u.begin() + 1, u.begin() + 1 + m, interior.begin());

    kernels::active().cnRhs(interior.data(), sub.data(), diag.data(),
                            sup.data(), tau, rhs.data(), m);

    // Thomas sweep on b_k = 1 - i tau diag_k, a_k = -i tau sub_k,
    // c_k = -i tau sup_k; strictly dominant since |b_k|^2 = 1 + (tau diag_k)^2.
    const std::complex<double> itau(0.0, tau);
    std::complex<double> piv = 1.0 - itau * diag[0];
    if (std::abs(piv) < 1e-300) throw SolveFailure("singular pivot in CN sweep");
    cprime[0] = -itau * sup[0] / piv;
    interior[0] = rhs[0] / piv;
    for (std::size_t k = 1; k < m; ++k) {
      const std::complex<double> a = -itau * sub[k];
      piv = (1.0 - itau * diag[k]) - a * cprime[k - 1];
      if (std::abs(piv) < 1e-300) {
        throw SolveFailure("singular pivot in CN sweep");
      }
      cprime[k] = -itau * sup[k] / piv;
      interior[k] = (rhs[k] - a * interior[k - 1]) / piv;
    }
    for (std::size_t k = m - 1; k-- > 0;) {
      interior[k] -= cprime[k] * interior[k + 1];
    }

    std::copy(interior.begin(), interior.end(), u.begin() + 1);
    u[0] = (4.0 * u[1] - u[2]) / 3.0;
    u.back() = {0.0, 0.0};
  }
};

LinearPropagator& propagatorFor(const RadialGrid& grid) {
  thread_local std::optional<LinearPropagator> cached;
  if (!cached || !(cached->grid == grid)) cached.emplace(grid);
  return *cached;
}

}  // namespace

void EvolutionConfig::validate() const {
  if (!(dtInit > 0.0) || !(dtMin > 0.0) || dtMin > dtInit) {
    throw SchemaError("time steps must satisfy 0 < dtMin <= dtInit");
  }
  if (!(tEnd > 0.0)) throw SchemaError("tEnd must be positive");
  if (!(blowupFactor > 1.0)) throw SchemaError("blowupFactor must exceed 1");
  if (!(safety > 0.0)) throw SchemaError("safety must be positive");
  if (recordEvery < 1) throw SchemaError("recordEvery must be at least 1");
}

std::vector<std::complex<double>> laplacianRadial(const RadialField& f) {
  const RadialGrid& g = f.grid();
  const int nP = g.nPoints();
  const double h2 = g.h() * g.h();
  const Dimension dim = g.dim();
  const auto& u = f.values();
  std::vector<std::complex<double>> out(u.size(), {0.0, 0.0});

  out[0] = 2.0 * dim.n() * (u[1] - u[0]) / h2;  // N u''(0) by even regularity
  for (int j = 1; j < nP; ++j) {
    const double inv = 1.0 / (std::pow(static_cast<double>(j), dim.n() - 1) * h2);
    const double gLo = fluxFaceCoeff(j - 1, dim);
    const double gHi = fluxFaceCoeff(j, dim);
    out[j] = (gHi * (u[j + 1] - u[j]) - gLo * (u[j] - u[j - 1])) * inv;
  }
  return out;
}

void nonlinearPhaseStep(RadialField& f, double dt) {
  const int n = f.grid().dim().n();
  for (auto& v : f.values()) {
    const double a2 = std::norm(v);
    if (a2 == 0.0) continue;
    v *= std::polar(1.0, dt * critPower(a2, n));
  }
}

void linearStep(RadialField& f, double dt) { propagatorFor(f.grid()).step(f, dt); }

void strangStep(RadialField& f, double dt, bool nonlinearity) {
  linearStep(f, 0.5 * dt);
  if (nonlinearity) nonlinearPhaseStep(f, dt);
  linearStep(f, 0.5 * dt);
}

TrajectoryRecord evolve(const RadialField& u0, const EvolutionConfig& cfg,
                        const GroundStateProfile& profile,
                        const RecordingConfig& rec) {
  cfg.validate();
  u0.validate();
  const RadialGrid& grid = u0.grid();
  if (grid.dim().n() != profile.dim) {
    throw SchemaError("evolve: profile dimension does not match the grid");
  }

  double virialR = rec.virialR > 0.0 ? rec.virialR : 0.25 * grid.rMax();
  if (!(2.0 * virialR <= grid.rMax())) {
    throw SchemaError("virial cutoff radius must satisfy 2R <= rMax");
  }
  std::vector<double> probes = rec.probeRadii;
  if (probes.empty()) probes = {2.0, 8.0};
  for (double& p : probes) p = std::clamp(p, grid.h(), grid.rMax());

  const CutoffWeight massC(CutoffWeight::Kind::MassCutoff, virialR);
  const CutoffWeight virialW(CutoffWeight::Kind::VirialWeight, virialR);
  DiagnosticsWorkspace ws(grid);

  TrajectoryRecord traj{grid.dim(), {}, {}, {}, {}, {}};
  traj.virial.R = virialR;
  traj.probe.probeRadii = probes;
  traj.probe.localGradAtR.resize(probes.size());

  RadialField u = u0;
  double t = 0.0;
  double sAccum = 0.0;
  const double twoStarInv = 1.0 / grid.dim().twoStar().value();

  auto record = [&](double tNow) {
    const double g = ws.gradSq(u);
    const double p = ws.potSq(u);
    traj.ledger.times.push_back(tNow);
    traj.ledger.mass.push_back(ws.mass(u));
    traj.ledger.gradSq.push_back(g);
    traj.ledger.potSq.push_back(p);
    traj.ledger.energy.push_back(0.5 * g - twoStarInv * p);
    traj.virial.yR.push_back(ws.weightedMass(u, massC));
    traj.virial.yRdot.push_back(ws.virialFirstRHS(u, massC));
    traj.virial.zRsecondRHS.push_back(ws.virialSecondRHS(u, virialW));
    traj.virial.globalRHS.push_back(8.0 * (g - p));
    traj.probe.sNormAccum.push_back(sAccum);
    for (std::size_t k = 0; k < probes.size(); ++k) {
      traj.probe.localGradAtR[k].push_back(ws.localGradSq(u, probes[k]));
    }
    traj.tailMassFrac.push_back(ws.tailMassFraction(u));
  };

  const double blowupThreshold = cfg.blowupFactor * profile.gradNormSq;
  double lastGradSq = ws.gradSq(u);
  record(0.0);

  auto finish = [&](TerminationTag tag, std::string detail) {
    if (traj.ledger.times.empty() || traj.ledger.times.back() != t) record(t);
    traj.termination = {tag, t, std::move(detail)};
  };

  if (lastGradSq >= blowupThreshold) {
    std::ostringstream os;
    os << "initial gradSq " << lastGradSq << " already exceeds "
       << cfg.blowupFactor << " * " << profile.gradNormSq;
    finish(TerminationTag::BlowupDetected, os.str());
  } else {
    const double tEps = 1e-14 * cfg.tEnd;
    while (t < cfg.tEnd - tEps) {
      const double amp = u.maxAbs();
      if (!std::isfinite(amp)) {
        throw SolveFailure("non-finite field values during evolution");
      }
      const double dtRaw =
          std::min(cfg.dtInit,
                   cfg.safety / std::max(1.0, critPower(amp * amp,
                                                        grid.dim().n())));
      if (dtRaw < cfg.dtMin) {
        std::ostringstream os;
        os << "adaptive step " << dtRaw << " fell below dtMin " << cfg.dtMin;
        finish(TerminationTag::StepUnderflow, os.str());
        break;
      }
      const double dt = std::min(dtRaw, cfg.tEnd - t);

      strangStep(u, dt, cfg.nonlinearity);
      t += dt;
      ++traj.stepsTaken;
      sAccum += ws.sIncrement(u, dt);

      const double g = ws.gradSq(u);
      if (!std::isfinite(g)) {
        throw SolveFailure("non-finite gradient norm during evolution");
      }
      if (g >= blowupThreshold) {
        std::ostringstream os;
        os << "gradSq " << g << " crossed " << cfg.blowupFactor
           << " * " << profile.gradNormSq << "; growth factor over last step "
           << (lastGradSq > 0.0 ? g / lastGradSq : 0.0);
        finish(TerminationTag::BlowupDetected, os.str());
        break;
      }
      lastGradSq = g;

      if (traj.stepsTaken % static_cast<std::size_t>(cfg.recordEvery) == 0) {
        record(t);
      }
      if (t >= cfg.tEnd - tEps) {
        finish(TerminationTag::ReachedTEnd, "");
        break;
      }
    }
    if (traj.termination.tag == TerminationTag::ReachedTEnd &&
        traj.termination.tStop == 0.0 && t > 0.0) {
      finish(TerminationTag::ReachedTEnd, "");
    }
  }

  const auto& led = traj.ledger;
  const double mass0 = led.mass.front();
  const double e0 = led.energy.front();
  for (std::size_t i = 0; i < led.times.size(); ++i) {
    const double dm = std::abs(led.mass[i] - mass0);
    traj.massDriftRel =
        std::max(traj.massDriftRel, mass0 > 0.0 ? dm / mass0 : dm);
    traj.energyDriftAbs = std::max(traj.energyDriftAbs,
                                   std::abs(led.energy[i] - e0));
    traj.maxTailMassFrac = std::max(traj.maxTailMassFrac, traj.tailMassFrac[i]);
  }
  traj.energyDriftRel = traj.energyDriftAbs / std::max(std::abs(e0), 1e-300);
  traj.truncationHygienic = traj.maxTailMassFrac < 1e-6;
  return traj;
}

std::string to_string(TerminationTag tag) {
  switch (tag) {
    case TerminationTag::ReachedTEnd: return "ReachedTEnd";
    case TerminationTag::BlowupDetected: return "BlowupDetected";
    default: return "StepUnderflow";
  }
}

}  // namespace critnls
