#pragma once

#include <functional>

namespace critnls {

struct QuadResult {
  double value = 0.0;
  double errorBound = 0.0;  // absolute
  int intervals = 0;
};

// Adaptive Gauss-Kronrod 15(7) on [a, b]. Bisects the worst interval until the
// summed |K15 - G7| bound drops below max(absFloor, relTol * |integral|).
// relTol must be positive and finite (SchemaError otherwise). Throws
// QuadratureNonConvergence when the interval budget is exhausted or an
// interval can no longer be split in double precision.
QuadResult integrateAdaptiveGK15(const std::function<double(double)>& f,
                                 double a, double b, double relTol,
                                 double absFloor = 1e-300,
                                 int maxIntervals = 4000);

}  // namespace critnls
