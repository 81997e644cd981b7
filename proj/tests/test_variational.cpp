#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "critnls/variational.hpp"

using namespace critnls;

TEST_CASE("f1 matches its dimensionless closed form") {
  for (int n = 3; n <= 5; ++n) {
    const Dimension dim(n);
    const auto& p = cachedProfile(dim);
    CHECK(f1(0.0, dim, p) == 0.0);
    CHECK(f1(p.gradNormSq, dim, p) ==
          doctest::Approx(p.energy).epsilon(1e-10));

    // With s = y/y_C and a = 2*/2: f1(y)/E(W) = (N/2) s - (N/2 - 1) s^a.
    std::mt19937 gen(42 + n);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double a = dim.twoStarHalf().value();
    for (int i = 0; i < 200; ++i) {
      const double s = unit(gen);
      const double expected =
          (0.5 * n * s - (0.5 * n - 1.0) * std::pow(s, a)) * p.energy;
      CHECK(f1(s * p.gradNormSq, dim, p) ==
            doctest::Approx(expected).epsilon(1e-10));
    }
  }
}

TEST_CASE("f1 increases strictly on the trapped interval") {
  for (int n = 3; n <= 5; ++n) {
    const Dimension dim(n);
    const auto& p = cachedProfile(dim);
    double prev = -1.0;
    for (int i = 0; i <= 500; ++i) {
      const double y = p.gradNormSq * i / 501.0;  // stay below y_C
      const double v = f1(y, dim, p);
      CHECK(v > prev);
      prev = v;
    }
  }
}

TEST_CASE("g1 vanishes exactly at the endpoints and is positive between") {
  for (int n = 3; n <= 5; ++n) {
    const Dimension dim(n);
    const auto& p = cachedProfile(dim);
    CHECK(g1(0.0, dim, p) == 0.0);
    CHECK(std::abs(g1(p.gradNormSq, dim, p)) <= 1e-9 * p.gradNormSq);
    for (int i = 1; i < 60; ++i) {
      const double y = p.gradNormSq * i / 60.0;
      CHECK(g1(y, dim, p) > 0.0);
    }
    CHECK(g1(1.5 * p.gradNormSq, dim, p) < 0.0);
  }
}

TEST_CASE("deltaBar against a dense-grid root oracle") {
  const Dimension dim(3);
  const auto& p = cachedProfile(dim);

  for (double delta0 : {0.9, 0.5, 0.25, 0.1, 1e-2, 1e-4}) {
    const auto b = deltaBar(delta0, dim, p);
    const double target = (1.0 - delta0) * p.energy;

    const int grid = 1'000'000;
    int hit = grid;
    for (int i = 1; i <= grid; ++i) {
      const double y = p.gradNormSq * i / grid;
      if (f1(y, dim, p) >= target) {
        hit = i;
        break;
      }
    }
    const double oracle = 1.0 - double(hit) / grid;
    CHECK(std::abs(b.deltaBar - oracle) <= 3e-6);
    CHECK(b.yStar == doctest::Approx((1.0 - b.deltaBar) * p.gradNormSq)
                         .epsilon(1e-9));
  }
}

TEST_CASE("deltaBar endpoint and square-root scaling") {
  for (int n = 3; n <= 5; ++n) {
    const Dimension dim(n);
    const auto& p = cachedProfile(dim);
    const auto full = deltaBar(1.0, dim, p);
    CHECK(full.deltaBar == 1.0);
    CHECK(full.yStar == 0.0);

    for (double delta0 = 1e-6; delta0 <= 1.0; delta0 *= 10.0) {
      const auto b = deltaBar(delta0, dim, p);
      const double ratio = b.deltaBar / std::sqrt(delta0);
      CHECK(ratio > 0.3);
      CHECK(ratio < 3.0);
    }
  }
}

TEST_CASE("deltaBar root satisfies the defining cubic in three dimensions") {
  const Dimension dim(3);
  const auto& p = cachedProfile(dim);
  std::mt19937 gen(99);
  std::uniform_real_distribution<double> unit(1e-4, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double delta0 = unit(gen);
    const auto b = deltaBar(delta0, dim, p);
    const double s = 1.0 - b.deltaBar;
    // f1(s y_C) = (1 - delta0) E(W) becomes 1.5 s - 0.5 s^3 = 1 - delta0.
    CHECK(1.5 * s - 0.5 * s * s * s ==
          doctest::Approx(1.0 - delta0).epsilon(1e-9));
  }
}

TEST_CASE("deltaBar input guard") {
  const Dimension dim(3);
  const auto& p = cachedProfile(dim);
  CHECK_THROWS_AS(deltaBar(0.0, dim, p), SchemaError);
  CHECK_THROWS_AS(deltaBar(-0.2, dim, p), SchemaError);
  CHECK_THROWS_AS(deltaBar(1.5, dim, p), SchemaError);
}

TEST_CASE("classification of representative pairs") {
  const Dimension dim(3);
  const auto& p = cachedProfile(dim);

  CHECK(classify({2.5, 5.0}, dim, p, SideCondition::FiniteVariance) ==
        Region::ScatteringRegion);
  CHECK(classify({2.0, 30.0}, dim, p, SideCondition::FiniteVariance) ==
        Region::BlowupRegionCertified);
  CHECK(classify({2.0, 30.0}, dim, p, SideCondition::L2) ==
        Region::BlowupRegionCertified);
  CHECK(classify({2.0, 30.0}, dim, p, SideCondition::None) ==
        Region::BlowupRegionExpected);
  CHECK(classify({p.energy, 5.0}, dim, p, SideCondition::None) ==
        Region::AboveThreshold);  // boundary energy makes no claim
  CHECK(classify({50.0, 5.0}, dim, p, SideCondition::None) ==
        Region::AboveThreshold);
  CHECK(classify({0.0, 0.0}, dim, p, SideCondition::None) ==
        Region::ScatteringRegion);  // zero data scatters trivially
}

TEST_CASE("infeasible pairs are rejected") {
  const Dimension dim(3);
  const auto& p = cachedProfile(dim);
  CHECK_THROWS_AS(classify({2.0, 5.0}, dim, p, SideCondition::None),
                  InfeasiblePair);  // below the envelope f1
  CHECK_THROWS_AS(
      classify({0.5 * p.energy, p.gradNormSq}, dim, p, SideCondition::None),
      InfeasiblePair);  // pinned gradient at y_C with sub-threshold energy
  CHECK_THROWS_AS(
      classify({std::nan(""), 1.0}, dim, p, SideCondition::None), SchemaError);
  CHECK_THROWS_AS(classify({1.0, -1.0}, dim, p, SideCondition::None),
                  SchemaError);
}

TEST_CASE("feasibility border tracks f1 within its slack") {
  const Dimension dim(4);
  const auto& p = cachedProfile(dim);
  for (int i = 1; i < 20; ++i) {
    const double y = p.gradNormSq * i / 20.0;
    const double env = f1(y, dim, p);
    CHECK(classify({env + 1e-6, y}, dim, p, SideCondition::None) ==
          Region::ScatteringRegion);
    if (env - 1e-6 > 0.0) {
      CHECK_THROWS_AS(classify({env - 1e-6, y}, dim, p, SideCondition::None),
                      InfeasiblePair);
    }
  }
}

TEST_CASE("blow-up variance ceiling and its guards") {
  const Dimension dim(3);
  const auto& p = cachedProfile(dim);

  // Non-positive energy admits delta0 = 1, whose ceiling is
  // -2 / ((N-2) C_N^N) = -2 int |grad W|^2 in three dimensions.
  const auto full = deltaBar(1.0, dim, p);
  const double bound =
      blowupVirialBound({-1.0, 2.0 * p.gradNormSq}, dim, p, full);
  CHECK(bound == doctest::Approx(-2.0 * p.gradNormSq).epsilon(1e-12));

  for (int n = 3; n <= 5; ++n) {
    const Dimension d(n);
    const auto& pr = cachedProfile(d);
    const auto b = deltaBar(0.5, d, pr);
    const double v = blowupVirialBound(
        {0.25 * pr.energy, 2.0 * pr.gradNormSq}, d, pr, b);
    CHECK(v == doctest::Approx(-2.0 * b.deltaBar * pr.gradNormSq / (n - 2))
                   .epsilon(1e-12));
    CHECK(v < 0.0);
  }

  CHECK_THROWS_AS(blowupVirialBound({2.5, 5.0}, dim, p, full), RegionMismatch);
  const auto half = deltaBar(0.5, dim, p);
  CHECK_THROWS_AS(
      blowupVirialBound({0.9 * p.energy, 2.0 * p.gradNormSq}, dim, p, half),
      RegionMismatch);  // deficit smaller than the supplied delta0
}

namespace {

TrajectoryRecord syntheticTrajectory(const Dimension& dim,
                                     const std::vector<double>& gradSq,
                                     const std::vector<double>& potSq) {
  TrajectoryRecord traj{dim, {}, {}, {}, {}, {}};
  const double twoStar = dim.twoStar().value();
  for (std::size_t i = 0; i < gradSq.size(); ++i) {
    traj.ledger.times.push_back(0.1 * double(i));
    traj.ledger.gradSq.push_back(gradSq[i]);
    traj.ledger.potSq.push_back(potSq[i]);
    traj.ledger.energy.push_back(0.5 * gradSq[i] - potSq[i] / twoStar);
    traj.ledger.mass.push_back(1.0);
  }
  traj.energyDriftAbs = 1e-12;
  return traj;
}

}  // namespace

TEST_CASE("trapping verification on synthetic ledgers") {
  const Dimension dim(3);
  const auto& p = cachedProfile(dim);
  const auto b = deltaBar(0.5, dim, p);

  // Comfortably trapped: small gradient, tiny potential term.
  const auto good = syntheticTrajectory(dim, {1.0, 1.1, 0.9}, {0.1, 0.1, 0.05});
  const auto repGood = energyTrappingCheck(good, b, p);
  CHECK(repGood.clean);
  CHECK(repGood.firstViolationIndex == -1);

  // Gradient pushed above the trapped ceiling mid-run.
  const auto ceiling = syntheticTrajectory(
      dim, {1.0, (1.0 - b.deltaBar) * p.gradNormSq * 1.01, 1.0},
      {0.1, 0.1, 0.1});
  const auto repCeiling = energyTrappingCheck(ceiling, b, p);
  CHECK_FALSE(repCeiling.clean);
  CHECK(repCeiling.firstViolationIndex == 1);
  CHECK(repCeiling.inequality == "gradSq <= (1-deltaBar) yC");

  // Potential term too large for the coercivity gap.
  const auto gap =
      syntheticTrajectory(dim, {1.0, 1.0}, {0.1, (1.0 - b.deltaBar) * 1.2});
  const auto repGap = energyTrappingCheck(gap, b, p);
  CHECK_FALSE(repGap.clean);
  CHECK(repGap.firstViolationIndex == 1);
  CHECK(repGap.inequality == "gradSq - potSq >= deltaBar gradSq");
}

TEST_CASE("comparability constants bracket trapped ledgers") {
  const Dimension dim(3);
  const auto& p = cachedProfile(dim);
  const auto b = deltaBar(0.5, dim, p);

  const auto traj =
      syntheticTrajectory(dim, {1.0, 1.2, 0.8}, {0.05, 0.08, 0.02});
  const auto rep = comparabilityCheck(traj, b);
  CHECK_FALSE(rep.vacuous);
  CHECK(rep.within);
  CHECK(rep.violations == 0);
  CHECK(rep.c2 == 0.5);
  CHECK(rep.c1 > 0.3);
  CHECK(rep.minRatio >= rep.c1);
  CHECK(rep.maxRatio <= rep.c2 + 1e-12);

  const auto zero = syntheticTrajectory(dim, {0.0, 0.0}, {0.0, 0.0});
  const auto repZero = comparabilityCheck(zero, b);
  CHECK(repZero.vacuous);
  CHECK(repZero.within);

  // Energy below the comparability floor (potential term too heavy).
  const auto heavy = syntheticTrajectory(dim, {1.0}, {0.9});
  const auto repHeavy = comparabilityCheck(heavy, b);
  CHECK_FALSE(repHeavy.within);
  CHECK(repHeavy.violations == 1);
}
