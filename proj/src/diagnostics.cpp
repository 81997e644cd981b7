#include "critnls/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "critnls/kernels.hpp"

namespace critnls {

namespace {

// sum_i w_i x_i^q with q an exponent table rational; integer q goes through
// the dispatched multiply-only kernel, fractional q (N=5) through std::pow.
double weightedRationalPowSum(const double* x, const double* w, std::size_t n,
                              Rational q) {
  if (q.isInteger()) {
    return kernels::active().weightedPowSum(x, w, n, q.num);
  }
  const double e = q.value();
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += w[i] * std::pow(x[i], e);
  return acc;
}

}  // namespace

DiagnosticsWorkspace::DiagnosticsWorkspace(const RadialGrid& grid)
    : grid_(grid),
      nodeW_(nodeQuadWeights(grid)),
      faceW_(faceQuadWeights(grid)),
      scratch_(grid.nNodes()) {}

const std::vector<double>& DiagnosticsWorkspace::abs2(
    const RadialField& f) const {
  kernels::active().abs2(f.values().data(), scratch_.data(), f.size());
  return scratch_;
}

double DiagnosticsWorkspace::mass(const RadialField& f) const {
  const auto& a = abs2(f);
  return kernels::active().weightedSum(a.data(), nodeW_.data(), a.size());
}

double DiagnosticsWorkspace::gradSq(const RadialField& f) const {
  return kernels::active().faceDiffAbs2Sum(f.values().data(), faceW_.data(),
                                           faceW_.size());
}

double DiagnosticsWorkspace::potSq(const RadialField& f) const {
  const auto& a = abs2(f);
  return weightedRationalPowSum(a.data(), nodeW_.data(), a.size(),
                                grid_.dim().twoStarHalf());
}

double DiagnosticsWorkspace::energy(const RadialField& f) const {
  return 0.5 * gradSq(f) - potSq(f) / grid_.dim().twoStar().value();
}

double DiagnosticsWorkspace::sIncrement(const RadialField& f,
                                        double dt) const {
  const auto& a = abs2(f);
  Rational s = grid_.dim().scatteringExponent();
  // |u|^s = (|u|^2)^{s/2}
  Rational half{s.num, 2 * s.den};
  if (half.num % half.den == 0) half = {half.num / half.den, 1};
  return dt * weightedRationalPowSum(a.data(), nodeW_.data(), a.size(), half);
}

double DiagnosticsWorkspace::localGradSq(const RadialField& f,
                                         double R) const {
  // faces whose midpoint (j + 1/2) h lies inside the window
  const double h = grid_.h();
  const long long cnt = static_cast<long long>(std::floor(R / h + 0.5));
  const std::size_t nFaces =
      std::clamp<long long>(cnt, 0, static_cast<long long>(faceW_.size()));
  if (nFaces == 0) return 0.0;
  return kernels::active().faceDiffAbs2Sum(f.values().data(), faceW_.data(),
                                           nFaces);
}

double DiagnosticsWorkspace::tailMassFraction(const RadialField& f) const {
  const auto& a = abs2(f);
  const double total =
      kernels::active().weightedSum(a.data(), nodeW_.data(), a.size());
  if (total <= 0.0) return 0.0;
  std::size_t first = 0;
  while (first < a.size() && grid_.r(first) <= 0.5 * grid_.rMax()) ++first;
  const double tail = kernels::active().weightedSum(
      a.data() + first, nodeW_.data() + first, a.size() - first);
  return tail / total;
}

double DiagnosticsWorkspace::weightedMass(const RadialField& f,
                                          const CutoffWeight& w) const {
  const auto& a = abs2(f);
  double acc = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    acc += nodeW_[j] * w.phi(grid_.r(j)) * a[j];
  }
  return acc;
}

double DiagnosticsWorkspace::virialFirstRHS(const RadialField& f,
                                            const CutoffWeight& w) const {
  const auto& u = f.values();
  const std::size_t last = u.size() - 1;
  const double h = grid_.h();
  double acc = 0.0;
  for (std::size_t j = 1; j < last; ++j) {
    const double dp = w.dphi(grid_.r(j));
    if (dp == 0.0) continue;
    const std::complex<double> du = (u[j + 1] - u[j - 1]) / (2.0 * h);
    acc += nodeW_[j] * dp * std::imag(std::conj(u[j]) * du);
  }
  // r = 0 contributes nothing (w_0 = 0, phi'(0) = 0); the Dirichlet node
  // carries u = 0.
  return 2.0 * acc;
}

double DiagnosticsWorkspace::virialSecondRHS(const RadialField& f,
                                             const CutoffWeight& w) const {
  const auto& u = f.values();
  const auto& a = abs2(f);
  const Dimension dim = grid_.dim();
  const double h = grid_.h();

  // 4 int phi'' |d_r u|^2, face-sampled so that phi'' == 2 reduces it to
  // exactly 8 gradSq
  double term1 = 0.0;
  for (std::size_t j = 0; j < faceW_.size(); ++j) {
    const double d2 = w.d2phi(h * (static_cast<double>(j) + 0.5));
    if (d2 == 0.0) continue;
    const double dr = u[j + 1].real() - u[j].real();
    const double di = u[j + 1].imag() - u[j].imag();
    term1 += faceW_[j] * d2 * (dr * dr + di * di);
  }
  term1 *= 4.0;

  double term2 = 0.0;  // - int Delta^2 phi |u|^2
  double term3 = 0.0;  // - (4/N) int Delta phi |u|^{2*}
  const double q = dim.twoStarHalf().value();
  const bool qInt = dim.twoStarHalf().isInteger();
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j] == 0.0 || nodeW_[j] == 0.0) continue;
    const double r = grid_.r(j);
    term2 -= nodeW_[j] * w.bilaplacianPhi(r, dim) * a[j];
    const double lap = w.laplacianPhi(r, dim);
    if (lap != 0.0) {
      double pw;
      if (qInt) {
        pw = a[j];
        for (int k = 1; k < dim.twoStarHalf().num; ++k) pw *= a[j];
      } else {
        pw = std::pow(a[j], q);
      }
      term3 -= lap * nodeW_[j] * pw;
    }
  }
  term3 *= 4.0 / dim.n();

  return term1 + term2 + term3;
}

double massNorm(const RadialField& f) {
  return DiagnosticsWorkspace(f.grid()).mass(f);
}
double gradNormSq(const RadialField& f) {
  return DiagnosticsWorkspace(f.grid()).gradSq(f);
}
double potNormSq(const RadialField& f) {
  return DiagnosticsWorkspace(f.grid()).potSq(f);
}
double energy(const RadialField& f) {
  return DiagnosticsWorkspace(f.grid()).energy(f);
}
double sNormIncrement(const RadialField& f, double dt) {
  return DiagnosticsWorkspace(f.grid()).sIncrement(f, dt);
}
double localGradSq(const RadialField& f, double R) {
  return DiagnosticsWorkspace(f.grid()).localGradSq(f, R);
}
double tailMassFraction(const RadialField& f) {
  return DiagnosticsWorkspace(f.grid()).tailMassFraction(f);
}
double weightedMass(const RadialField& f, const CutoffWeight& w) {
  return DiagnosticsWorkspace(f.grid()).weightedMass(f, w);
}
double virialFirstRHS(const RadialField& f, const CutoffWeight& w) {
  return DiagnosticsWorkspace(f.grid()).virialFirstRHS(f, w);
}
double virialSecondRHS(const RadialField& f, const CutoffWeight& w) {
  return DiagnosticsWorkspace(f.grid()).virialSecondRHS(f, w);
}

std::vector<double> virialFirstIdentityResidual(
    const std::vector<double>& times, const std::vector<double>& yR,
    const std::vector<double>& yRdot) {
  const std::size_t n = times.size();
  if (n < 3 || yR.size() != n || yRdot.size() != n) {
    throw InsufficientSamples(
        "virial first-identity residual needs >= 3 aligned samples");
  }
  std::vector<double> res(n - 2);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double dm = times[i] - times[i - 1];
    const double dp = times[i + 1] - times[i];
    if (!(dm > 0.0) || !(dp > 0.0)) {
      throw InsufficientSamples("record times must be strictly increasing");
    }
    // three-point first derivative on a nonuniform stencil
    const double dydt = -dp / (dm * (dm + dp)) * yR[i - 1] +
                        (dp - dm) / (dm * dp) * yR[i] +
                        dm / (dp * (dm + dp)) * yR[i + 1];
    res[i - 1] = dydt - yRdot[i];
  }
  return res;
}

std::vector<double> virialFirstIdentityResidual(const TrajectoryRecord& traj) {
  return virialFirstIdentityResidual(traj.ledger.times, traj.virial.yR,
                                     traj.virial.yRdot);
}

ConcentrationReport concentrationWindow(const RadialField& f, double R,
                                        const GroundStateProfile& profile) {
  ConcentrationReport rep;
  rep.R = R;
  rep.localGradSq = localGradSq(f, R);
  const double liminfBound = 2.0 / profile.dim * profile.gradNormSq;
  rep.ratioToLiminfBound = rep.localGradSq / liminfBound;
  rep.ratioToFullNorm = rep.localGradSq / profile.gradNormSq;
  rep.meetsLiminfBound = rep.localGradSq >= liminfBound;
  rep.exceedsFullNorm = rep.localGradSq > profile.gradNormSq;
  return rep;
}

std::string to_string(ScatterVerdict v) {
  switch (v) {
    case ScatterVerdict::Dispersing: return "dispersing";
    case ScatterVerdict::Trivial: return "trivial";
    default: return "inconclusive";
  }
}

ScatteringAssessment scatteringVerdict(const TrajectoryRecord& traj,
                                       int window) {
  if (traj.termination.tag != TerminationTag::ReachedTEnd) {
    throw WrongTermination(
        "scattering verdict requires a run that reached tEnd, got " +
        to_string(traj.termination.tag));
  }
  const auto& acc = traj.probe.sNormAccum;
  if (acc.empty()) {
    throw InsufficientSamples("trajectory carries no S-norm series");
  }

  ScatteringAssessment out;
  const double total = acc.back();
  if (total <= 0.0) {
    out.verdict = ScatterVerdict::Trivial;
    return out;
  }

  const int records = static_cast<int>(acc.size());
  if (window <= 0) window = std::max(2, records / 10);
  out.window = std::clamp(window, 1, records - 1);
  const double tailStart = acc[static_cast<std::size_t>(records - 1 - out.window)];
  out.tailFraction = (total - tailStart) / total;

  if (traj.probe.probeRadii.empty()) {
    throw InsufficientSamples("trajectory carries no local-gradient probes");
  }
  std::size_t smallest = 0;
  for (std::size_t k = 1; k < traj.probe.probeRadii.size(); ++k) {
    if (traj.probe.probeRadii[k] < traj.probe.probeRadii[smallest])
      smallest = k;
  }
  const auto& series = traj.probe.localGradAtR[smallest];
  const double peak = *std::max_element(series.begin(), series.end());
  const double last = series.back();
  out.localGradDecayFactor = last > 0.0 ? peak / last : 1e300;

  const bool dispersing =
      out.tailFraction < 0.01 && out.localGradDecayFactor >= 5.0;
  out.verdict =
      dispersing ? ScatterVerdict::Dispersing : ScatterVerdict::Inconclusive;
  return out;
}

}  // namespace critnls
