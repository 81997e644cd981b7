#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "critnls/cutoff.hpp"
#include "critnls/diagnostics.hpp"
#include "critnls/ground_state.hpp"
#include "critnls/harness.hpp"
#include "critnls/solver.hpp"

using namespace critnls;
using cd = std::complex<double>;

namespace {

double centralDerivative(const std::function<double(double)>& f, double x,
                         double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace

TEST_CASE("cutoff weights join with four continuous derivatives") {
  for (auto kind :
       {CutoffWeight::Kind::MassCutoff, CutoffWeight::Kind::VirialWeight}) {
    const double R = 3.0;
    const CutoffWeight w(kind, R);
    const bool isMass = kind == CutoffWeight::Kind::MassCutoff;

    // Exact values at the two joins.
    CHECK(w.phi(R) == doctest::Approx(isMass ? 1.0 : R * R).epsilon(1e-13));
    CHECK(w.dphi(R) == doctest::Approx(isMass ? 0.0 : 2.0 * R).epsilon(1e-12));
    CHECK(w.d2phi(R) == doctest::Approx(isMass ? 0.0 : 2.0).epsilon(1e-11));
    CHECK(std::abs(w.d3phi(R)) <= 1e-10);
    CHECK(std::abs(w.d4phi(R)) <= 1e-9);
    CHECK(w.phi(2.0 * R) == 0.0);
    CHECK(w.dphi(2.0 * R) == 0.0);
    CHECK(w.d2phi(2.0 * R) == 0.0);
    CHECK(w.d3phi(2.0 * R) == 0.0);
    CHECK(w.d4phi(2.0 * R) == 0.0);

    // One-sided continuity across both joins.
    for (double x : {R, 2.0 * R}) {
      const double eps = 1e-7;
      CHECK(std::abs(w.phi(x - eps) - w.phi(x + eps)) <= 1e-5);
      CHECK(std::abs(w.dphi(x - eps) - w.dphi(x + eps)) <= 1e-4);
      CHECK(std::abs(w.d2phi(x - eps) - w.d2phi(x + eps)) <= 1e-3);
    }

    // Derivative chain inside the bridge against central differences.
    for (double r : {1.05 * R, 1.4 * R, 1.83 * R}) {
      const double h = 1e-5 * R;
      CHECK(w.dphi(r) ==
            doctest::Approx(centralDerivative([&](double x) { return w.phi(x); },
                                              r, h))
                .epsilon(1e-6));
      CHECK(w.d2phi(r) ==
            doctest::Approx(
                centralDerivative([&](double x) { return w.dphi(x); }, r, h))
                .epsilon(1e-6));
      CHECK(w.d3phi(r) ==
            doctest::Approx(
                centralDerivative([&](double x) { return w.d2phi(x); }, r, h))
                .epsilon(1e-5));
      CHECK(w.d4phi(r) ==
            doctest::Approx(
                centralDerivative([&](double x) { return w.d3phi(x); }, r, h))
                .epsilon(1e-4));
    }
  }
}

TEST_CASE("radial laplacian and bilaplacian of the cutoff weights") {
  const double R = 2.5;
  const Dimension dim(4);
  const CutoffWeight w(CutoffWeight::Kind::VirialWeight, R);

  // Core: laplacian of r^2 is 2N, bilaplacian vanishes.
  CHECK(w.laplacianPhi(0.0, dim) == doctest::Approx(2.0 * dim.n()));
  CHECK(w.laplacianPhi(0.5 * R, dim) == doctest::Approx(2.0 * dim.n()));
  CHECK(w.bilaplacianPhi(0.5 * R, dim) == 0.0);
  CHECK(w.bilaplacianPhi(3.0 * R, dim) == 0.0);

  for (double r : {1.1 * R, 1.5 * R, 1.9 * R}) {
    const double expected =
        w.d2phi(r) + (dim.n() - 1) * w.dphi(r) / r;
    CHECK(w.laplacianPhi(r, dim) == doctest::Approx(expected).epsilon(1e-12));

    // Bilaplacian against a finite difference of the radial laplacian.
    const double h = 1e-4;
    const double fd =
        (w.laplacianPhi(r + h, dim) - 2.0 * w.laplacianPhi(r, dim) +
         w.laplacianPhi(r - h, dim)) /
            (h * h) +
        (dim.n() - 1) *
            (w.laplacianPhi(r + h, dim) - w.laplacianPhi(r - h, dim)) /
            (2.0 * h * r);
    CHECK(w.bilaplacianPhi(r, dim) == doctest::Approx(fd).epsilon(1e-4));
  }
}

TEST_CASE("workspace functionals agree with the free functions") {
  const RadialGrid grid(Dimension(3), 30.0, 1024);
  const RadialField f(grid, [](double r) {
    return std::polar(0.8 * std::exp(-0.2 * r * r), 0.15 * r * r);
  });
  DiagnosticsWorkspace ws(grid);
  CHECK(ws.mass(f) == massNorm(f));
  CHECK(ws.gradSq(f) == gradNormSq(f));
  CHECK(ws.potSq(f) == potNormSq(f));
  CHECK(ws.energy(f) == energy(f));
  CHECK(ws.tailMassFraction(f) == tailMassFraction(f));
  CHECK(ws.localGradSq(f, 5.0) == localGradSq(f, 5.0));
  CHECK(ws.sIncrement(f, 0.25) == sNormIncrement(f, 0.25));
}

TEST_CASE("energy assembles from its two discrete pieces") {
  const RadialGrid grid(Dimension(4), 25.0, 768);
  const RadialField f(grid,
                      [](double r) { return cd(1.1 * std::exp(-r * r), 0.0); });
  const double g = gradNormSq(f);
  const double p = potNormSq(f);
  CHECK(energy(f) == doctest::Approx(0.5 * g - 0.25 * p).epsilon(1e-14));
}

TEST_CASE("discrete mass of a Gaussian matches the continuum value") {
  const Dimension dim(3);
  const RadialGrid grid(dim, 30.0, 2048);
  const RadialField f(grid,
                      [](double r) { return cd(std::exp(-r * r), 0.0); });
  // int |u|^2 = omega_3 int_0^inf e^{-2r^2} r^2 dr = pi^{3/2} / 2^{3/2}.
  const double exact = std::pow(M_PI, 1.5) / std::pow(2.0, 1.5);
  CHECK(massNorm(f) == doctest::Approx(exact).epsilon(1e-8));
}

TEST_CASE("local gradient content is monotone and exhaustive in the radius") {
  const RadialGrid grid(Dimension(3), 20.0, 512);
  const RadialField f(grid, [](double r) {
    return cd(std::exp(-0.5 * (r - 4.0) * (r - 4.0)), 0.0);
  });
  double prev = -1.0;
  for (double R : {1.0, 3.0, 5.0, 10.0, 20.0}) {
    const double v = localGradSq(f, R);
    CHECK(v >= prev);
    prev = v;
  }
  CHECK(localGradSq(f, grid.rMax()) ==
        doctest::Approx(gradNormSq(f)).epsilon(1e-13));
}

TEST_CASE("tail mass fraction splits at half the domain radius") {
  const RadialGrid grid(Dimension(3), 40.0, 1024);
  const RadialField core(grid,
                         [](double r) { return cd(std::exp(-r * r), 0.0); });
  CHECK(tailMassFraction(core) <= 1e-12);

  const RadialField shell(grid, [](double r) {
    return cd(std::exp(-0.5 * (r - 30.0) * (r - 30.0)), 0.0);
  });
  CHECK(tailMassFraction(shell) >= 0.99);
}

TEST_CASE("S-norm increment matches an explicit pow loop") {
  const Dimension dim(3);
  const RadialGrid grid(dim, 20.0, 512);
  const RadialField f(grid, [](double r) {
    return std::polar(0.9 * std::exp(-0.3 * r * r), 0.2 * r);
  });
  const auto w = nodeQuadWeights(grid);
  double ref = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    ref += w[j] * std::pow(std::abs(f[j]), 10.0);  // 2(N+2)/(N-2) = 10
  }
  const double dt = 0.37;
  CHECK(sNormIncrement(f, dt) == doctest::Approx(dt * ref).epsilon(1e-12));
}

TEST_CASE("weighted mass reduces to plain mass for core-supported fields") {
  const RadialGrid grid(Dimension(3), 40.0, 1024);
  const RadialField f(grid,
                      [](double r) { return cd(std::exp(-r * r), 0.0); });
  const CutoffWeight w(CutoffWeight::Kind::MassCutoff, 10.0);
  CHECK(weightedMass(f, w) == doctest::Approx(massNorm(f)).epsilon(1e-12));
}

TEST_CASE("second virial identity closes onto 8(gradSq - potSq) in the core") {
  for (int n : {3, 4, 5}) {
    const Dimension dim(n);
    const RadialGrid grid(dim, 40.0, 2048);
    const RadialField f(grid, [](double r) {
      return std::polar(1.3 * std::exp(-r * r), -0.1 * r * r);
    });
    const CutoffWeight w(CutoffWeight::Kind::VirialWeight, 10.0);
    const double rhs = virialSecondRHS(f, w);
    const double global = 8.0 * (gradNormSq(f) - potNormSq(f));
    CHECK(rhs == doctest::Approx(global).epsilon(1e-10));
  }
}

TEST_CASE("first virial identity residual shrinks with the record spacing") {
  const Dimension dim(3);
  const RadialGrid grid(dim, 40.0, 1024);
  const auto& profile = cachedProfile(dim);
  const auto data = buildInitialData(
      {InitialFamily::Gaussian, {{"amplitude", 0.6}, {"sigma", 1.5}}}, grid);

  auto residualFor = [&](int recordEvery) {
    EvolutionConfig cfg;
    cfg.tEnd = 1.0;
    cfg.recordEvery = recordEvery;
    const auto traj = evolve(data.field, cfg, profile);
    const auto res = virialFirstIdentityResidual(traj);
    double worst = 0.0;
    for (double v : res) worst = std::max(worst, std::abs(v));
    return worst;
  };

  const double coarse = residualFor(40);
  const double fine = residualFor(20);
  CHECK(coarse / fine > 2.5);
  CHECK(coarse / fine < 6.0);
}

TEST_CASE("first virial identity needs at least three usable samples") {
  CHECK_THROWS_AS(virialFirstIdentityResidual({0.0, 1.0}, {0.0, 0.0},
                                              {0.0, 0.0}),
                  InsufficientSamples);
  CHECK_THROWS_AS(virialFirstIdentityResidual({0.0, 1.0, 0.5},
                                              {0.0, 0.0, 0.0},
                                              {0.0, 0.0, 0.0}),
                  InsufficientSamples);
}

TEST_CASE("concentration window ratios normalize against the profile") {
  const Dimension dim(3);
  const RadialGrid grid(dim, 40.0, 1024);
  const auto& profile = cachedProfile(dim);
  const RadialField f(grid, [&](double r) { return cd(evalW(r, dim), 0.0); });

  const auto rep = concentrationWindow(f, 5.0, profile);
  CHECK(rep.R == 5.0);
  CHECK(rep.localGradSq == doctest::Approx(localGradSq(f, 5.0)));
  CHECK(rep.ratioToFullNorm ==
        doctest::Approx(rep.localGradSq / profile.gradNormSq).epsilon(1e-12));
  CHECK(rep.ratioToLiminfBound ==
        doctest::Approx(rep.localGradSq /
                        ((2.0 / dim.n()) * profile.gradNormSq))
            .epsilon(1e-12));
  // W's gradient tail decays like 1/r^2, so r <= 5 holds a clear majority of
  // the norm but far from all of it.
  CHECK(rep.ratioToFullNorm > 0.4);
  CHECK(rep.ratioToFullNorm < 0.9);
}

namespace {

TrajectoryRecord syntheticCompleted(const std::vector<double>& sAccum,
                                    const std::vector<double>& probeSeries) {
  TrajectoryRecord traj{Dimension(3), {}, {}, {}, {}, {}};
  traj.termination.tag = TerminationTag::ReachedTEnd;
  traj.termination.tStop = 1.0;
  for (std::size_t i = 0; i < sAccum.size(); ++i) {
    traj.ledger.times.push_back(double(i));
  }
  traj.probe.sNormAccum = sAccum;
  traj.probe.probeRadii = {2.0, 8.0};
  traj.probe.localGradAtR = {probeSeries, probeSeries};
  return traj;
}

}  // namespace

TEST_CASE("scattering verdict paths on synthetic records") {
  // Early S-norm accumulation plus strong local decay: dispersing.
  {
    std::vector<double> acc, probe;
    for (int i = 0; i < 40; ++i) {
      acc.push_back(1.0 - std::exp(-2.0 * i));
      probe.push_back(std::exp(-0.5 * i) + 1e-6);
    }
    const auto a = scatteringVerdict(syntheticCompleted(acc, probe));
    CHECK(a.verdict == ScatterVerdict::Dispersing);
    CHECK(a.tailFraction < 0.01);
    CHECK(a.localGradDecayFactor >= 5.0);
  }
  // Still accumulating at the end: inconclusive.
  {
    std::vector<double> acc, probe;
    for (int i = 0; i < 40; ++i) {
      acc.push_back(double(i));
      probe.push_back(1.0);
    }
    const auto a = scatteringVerdict(syntheticCompleted(acc, probe));
    CHECK(a.verdict == ScatterVerdict::Inconclusive);
  }
  // No S-norm at all: trivial.
  {
    const std::vector<double> acc(10, 0.0), probe(10, 0.0);
    const auto a = scatteringVerdict(syntheticCompleted(acc, probe));
    CHECK(a.verdict == ScatterVerdict::Trivial);
  }
  // Wrong termination is rejected.
  {
    auto traj = syntheticCompleted({0.0, 0.5, 1.0}, {1.0, 1.0, 1.0});
    traj.termination.tag = TerminationTag::BlowupDetected;
    CHECK_THROWS_AS(scatteringVerdict(traj), WrongTermination);
  }
}

TEST_CASE("explicit window override steers the tail fraction") {
  std::vector<double> acc, probe;
  for (int i = 0; i < 30; ++i) {
    acc.push_back(i < 15 ? double(i) : 15.0);  // flat after the midpoint
    probe.push_back(std::exp(-i));
  }
  const auto narrow = scatteringVerdict(syntheticCompleted(acc, probe), 5);
  const auto wide = scatteringVerdict(syntheticCompleted(acc, probe), 20);
  CHECK(narrow.window == 5);
  CHECK(wide.window == 20);
  CHECK(narrow.tailFraction <= wide.tailFraction);
  CHECK(narrow.verdict == ScatterVerdict::Dispersing);
}
