#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "critnls/errors.hpp"
#include "critnls/quadrature.hpp"

using critnls::integrateAdaptiveGK15;

TEST_CASE("smooth integrands at tight tolerance") {
  auto r1 = integrateAdaptiveGK15([](double x) { return x * x; }, 0.0, 1.0,
                                  1e-12);
  CHECK(r1.value == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(std::abs(r1.value - 1.0 / 3.0) <= r1.errorBound + 1e-15);

  auto r2 = integrateAdaptiveGK15([](double x) { return std::sin(x); }, 0.0,
                                  M_PI, 1e-12);
  CHECK(r2.value == doctest::Approx(2.0).epsilon(1e-13));

  auto r3 = integrateAdaptiveGK15([](double x) { return std::cos(10.0 * x); },
                                  0.0, 10.0, 1e-12);
  CHECK(r3.value == doctest::Approx(std::sin(100.0) / 10.0).epsilon(1e-11));
  CHECK(r3.intervals >= 1);
}

TEST_CASE("reported error bound covers the true error") {
  // Integrand with a sharp interior peak forces real subdivision work.
  auto f = [](double x) { return 1.0 / (1e-4 + (x - 0.3) * (x - 0.3)); };
  const double exact =
      (std::atan(0.7 / 1e-2) + std::atan(0.3 / 1e-2)) / 1e-2;
  auto r = integrateAdaptiveGK15(f, 0.0, 1.0, 1e-10);
  CHECK(std::abs(r.value - exact) <= 10.0 * r.errorBound + 1e-10 * exact);
  CHECK(r.intervals > 4);
}

TEST_CASE("random polynomials up to degree 13 integrate exactly") {
  // The embedded 7-point Gauss rule is exact to degree 13; both estimates then
  // agree and the result is exact up to rounding.
  std::mt19937 gen(12345);
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  for (int trial = 0; trial < 25; ++trial) {
    std::array<double, 14> c{};
    for (auto& v : c) v = coeff(gen);
    auto poly = [&](double x) {
      double acc = 0.0;
      for (int k = 13; k >= 0; --k) acc = acc * x + c[k];
      return acc;
    };
    double exact = 0.0;
    for (int k = 0; k <= 13; ++k) {
      exact += c[k] * (std::pow(2.0, k + 1) - std::pow(-1.0, k + 1)) / (k + 1);
    }
    auto r = integrateAdaptiveGK15(poly, -1.0, 2.0, 1e-12);
    CHECK(r.value == doctest::Approx(exact).epsilon(1e-11));
  }
}

TEST_CASE("interval budget exhaustion raises the dedicated error") {
  auto rough = [](double x) { return 1.0 / std::sqrt(std::abs(x - 1.0 / M_PI)); };
  CHECK_THROWS_AS(integrateAdaptiveGK15(rough, 0.0, 1.0, 1e-14, 1e-300, 8),
                  critnls::QuadratureNonConvergence);
}

TEST_CASE("degenerate interval integrates to zero") {
  auto r = integrateAdaptiveGK15([](double x) { return x; }, 2.0, 2.0, 1e-12);
  CHECK(r.value == 0.0);
}
