#include "critnls/variational.hpp"

#include <algorithm>
#include <cmath>

namespace critnls {

double f1(double y, Dimension dim, const GroundStateProfile& profile) {
  const double twoStar = dim.twoStar().value();
  const double cPow = std::pow(profile.sobolevConst, twoStar);
  return 0.5 * y - cPow / twoStar * std::pow(y, dim.twoStarHalf().value());
}

double g1(double y, Dimension dim, const GroundStateProfile& profile) {
  const double cPow = std::pow(profile.sobolevConst, dim.twoStar().value());
  return y - cPow * std::pow(y, dim.twoStarHalf().value());
}

CoercivityBounds deltaBar(double delta0, Dimension dim,
                          const GroundStateProfile& profile) {
  if (!(delta0 > 0.0) || delta0 > 1.0) {
    throw SchemaError("delta0 must lie in (0, 1]");
  }
  const double yC = profile.gradNormSq;
  const double target = (1.0 - delta0) * profile.energy;

  CoercivityBounds out;
  out.delta0 = delta0;

  // f1 rises strictly from 0 to E(W) on [0, yC]; bisect for the root of
  // f1(y) = target. delta0 = 1 pins the root at zero exactly.
  double lo = 0.0, hi = yC;
  double flo = -target;
  const double fhi = profile.energy - target;
  if (flo > 0.0 || fhi < 0.0) {
    throw RootBracketFailure("deltaBar: target not bracketed on [0, yC]");
  }
  if (target == 0.0) {
    out.deltaBar = 1.0;
    out.yStar = 0.0;
    return out;
  }
  while (hi - lo > 1e-12 * yC) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f1(mid, dim, profile) - target;
    if (fm < 0.0) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  const double yStar = 0.5 * (lo + hi);
  out.yStar = yStar;
  out.deltaBar = 1.0 - yStar / yC;
  return out;
}

std::string to_string(Region r) {
  switch (r) {
    case Region::ScatteringRegion: return "ScatteringRegion";
    case Region::BlowupRegionCertified: return "BlowupRegionCertified";
    case Region::BlowupRegionExpected: return "BlowupRegionExpected";
    default: return "AboveThreshold";
  }
}

std::string to_string(SideCondition s) {
  switch (s) {
    case SideCondition::None: return "none";
    case SideCondition::FiniteVariance: return "finite-variance";
    default: return "l2";
  }
}

Region classify(const ThresholdPair& pair, Dimension dim,
                const GroundStateProfile& profile, SideCondition side) {
  if (!std::isfinite(pair.energy) || !std::isfinite(pair.gradSq) ||
      pair.gradSq < 0.0) {
    throw SchemaError("classify: pair must be finite with gradSq >= 0");
  }
  const double eW = profile.energy;
  const double yC = profile.gradNormSq;

  if (pair.energy >= eW) return Region::AboveThreshold;

  if (pair.gradSq == yC) {
    // Below-threshold energy pins gradSq strictly away from yC.
    throw InfeasiblePair("classify: energy < E(W) with gradSq exactly at yC");
  }
  if (pair.gradSq < yC) {
    // Sharp Sobolev forces E >= f1(gradSq) on the trapped side.
    if (pair.energy < f1(pair.gradSq, dim, profile) - 1e-9) {
      throw InfeasiblePair(
          "classify: pair lies below the sharp Sobolev envelope");
    }
    return Region::ScatteringRegion;
  }
  return side == SideCondition::None ? Region::BlowupRegionExpected
                                     : Region::BlowupRegionCertified;
}

double blowupVirialBound(const ThresholdPair& pair, Dimension dim,
                         const GroundStateProfile& profile,
                         const CoercivityBounds& bounds, SideCondition side) {
  const Region region = classify(pair, dim, profile, side);
  if (region != Region::BlowupRegionCertified &&
      region != Region::BlowupRegionExpected) {
    throw RegionMismatch("blowupVirialBound: pair is not in a blow-up region");
  }
  if (pair.energy > (1.0 - bounds.delta0) * profile.energy) {
    throw RegionMismatch(
        "blowupVirialBound: energy deficit smaller than the supplied delta0");
  }
  // -2 deltaBar / ((N-2) C_N^N); C_N^{-N} is gradNormSq, so C_N^N is its
  // reciprocal.
  return -2.0 * bounds.deltaBar * profile.gradNormSq / (dim.n() - 2);
}

TrappingReport energyTrappingCheck(const TrajectoryRecord& traj,
                                   const CoercivityBounds& bounds,
                                   const GroundStateProfile& profile) {
  TrappingReport rep;
  rep.margin = 10.0 * traj.energyDriftAbs + 1e-12 * profile.gradNormSq;
  const double ceiling = (1.0 - bounds.deltaBar) * profile.gradNormSq;

  const auto& led = traj.ledger;
  for (std::size_t i = 0; i < led.times.size(); ++i) {
    const double g = led.gradSq[i];
    const double p = led.potSq[i];
    const double e = led.energy[i];
    if (g > ceiling + rep.margin) {
      rep.clean = false;
      rep.firstViolationIndex = static_cast<int>(i);
      rep.inequality = "gradSq <= (1-deltaBar) yC";
      rep.lhs = g;
      rep.rhs = ceiling;
      return rep;
    }
    if (g - p < bounds.deltaBar * g - rep.margin) {
      rep.clean = false;
      rep.firstViolationIndex = static_cast<int>(i);
      rep.inequality = "gradSq - potSq >= deltaBar gradSq";
      rep.lhs = g - p;
      rep.rhs = bounds.deltaBar * g;
      return rep;
    }
    if (e < -rep.margin) {
      rep.clean = false;
      rep.firstViolationIndex = static_cast<int>(i);
      rep.inequality = "energy >= 0";
      rep.lhs = e;
      rep.rhs = 0.0;
      return rep;
    }
  }
  return rep;
}

ComparabilityReport comparabilityCheck(const TrajectoryRecord& traj,
                                       const CoercivityBounds& bounds) {
  ComparabilityReport rep;
  const double twoStar = traj.dim.twoStar().value();
  rep.c2 = 0.5;

  const auto& led = traj.ledger;
  const double margin = 10.0 * traj.energyDriftAbs + 1e-14;
  rep.c1 = bounds.deltaBar / twoStar + (0.5 - 1.0 / twoStar) - margin;

  bool any = false;
  rep.within = true;
  for (std::size_t i = 0; i < led.times.size(); ++i) {
    const double g = led.gradSq[i];
    const double e = led.energy[i];
    if (g <= 0.0) continue;
    const double ratio = e / g;
    if (!any) {
      rep.minRatio = rep.maxRatio = ratio;
      any = true;
    } else {
      rep.minRatio = std::min(rep.minRatio, ratio);
      rep.maxRatio = std::max(rep.maxRatio, ratio);
    }
    if (e < rep.c1 * g || e > rep.c2 * g + margin) {
      rep.within = false;
      ++rep.violations;
    }
  }
  rep.vacuous = !any;
  if (rep.vacuous) rep.within = true;
  return rep;
}

}  // namespace critnls
