#include <cmath>
#include <numbers>

#include "doctest.h"
#include "tnlab/curve.hpp"
#include "tnlab/errors.hpp"

using namespace tnlab;
using namespace std::complex_literals;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// exp1 evaluated straight from its defining sums, tail cut at 200 terms
// (remainder below 1e-9).
Complex exp1_reference(double theta) {
  const Symbol band = presets::exp1_band();
  Complex sum = 0.0;
  for (int nu = -4; nu <= 4; ++nu) sum += band.coefficient(nu) * std::polar(1.0, -nu * theta);
  for (int nu = 1; nu <= 200; ++nu) {
    const double a = nu;
    sum += (-2.0i * std::pow(a, -5.0) + 0.5 * std::pow(a, -9.0)) * std::polar(1.0, -nu * theta);
    sum += (0.7 * std::pow(a, -5.0) + 1.0i * std::pow(a, -9.0)) * std::polar(1.0, nu * theta);
  }
  return sum;
}

// Winding by summing principal-branch argument increments on a uniform grid.
int dense_winding(Complex z, std::size_t points) {
  double total = 0.0;
  Complex prev = exp1_reference(0.0) - z;
  for (std::size_t j = 1; j <= points; ++j) {
    const Complex cur = exp1_reference(kTwoPi * j / points) - z;
    total += std::arg(cur / prev);
    prev = cur;
  }
  return static_cast<int>(std::lround(total / kTwoPi));
}

Symbol single(int nu) { return Symbol(BandCoefficients{{nu, 1.0}}, {}); }

}  // namespace

TEST_CASE("winding number of the unit circle in both orientations") {
  CHECK(winding_number(single(-1), 0.0) == 1);
  CHECK(winding_number(single(1), 0.0) == -1);
  CHECK(winding_number(single(-1), 3.0) == 0);
  CHECK(winding_number(single(-3), 0.2 + 0.1i) == 3);
}

TEST_CASE("exp1 winding numbers against a dense argument oracle") {
  const SymbolCurve curve(presets::exp1(), 4096);
  for (Complex z : {0.0 + 0i, 5.0 + 0i, -3.0 + 2.0i, 20.0 + 0i, 1.0 - 6.0i}) {
    if (curve.distance(z) < 0.05) continue;
    CHECK(curve.winding(z) == dense_winding(z, std::size_t{1} << 20));
  }
}

TEST_CASE("winding is antisymmetric under reflection") {
  for (const Symbol& s : {presets::exp1(), presets::exp1_2(), presets::bidiagonal(2.0, 0.5)}) {
    const Symbol r = s.reflected();
    for (Complex z : {0.0 + 0i, 1.0 + 1.0i, -2.5 + 0.3i, 4.0 - 1.0i}) {
      if (curve_distance(s, z) < 1e-3) continue;
      CHECK(winding_number(r, z) == -winding_number(s, z));
    }
  }
}

TEST_CASE("winding is locally constant off the curve") {
  const Symbol s = presets::exp1();
  for (Complex z : {0.0 + 0i, 5.0 + 0i, -3.0 + 2.0i, 2.0 - 2.0i}) {
    if (curve_distance(s, z) < 0.01) continue;
    CHECK(winding_number(s, z) == winding_number(s, z + 1e-3 * (1.0 + 1.0i)));
  }
}

TEST_CASE("points on the curve are rejected") {
  const Symbol s = presets::exp1();
  CHECK_THROWS_AS(winding_number(s, s.eval(1.234)), PointOnCurve);
}

TEST_CASE("argument winding stops at the sample cap") {
  auto circle = [](double t) { return std::polar(1.0, t); };
  const std::vector<Complex> coarse{circle(0.0), circle(kTwoPi / 3), circle(2 * kTwoPi / 3)};
  CHECK(argument_winding(circle, kTwoPi, coarse, 0.0) == 1);
  CHECK_THROWS_AS(argument_winding(circle, kTwoPi, coarse, 0.0, 3), NonConvergent);
}

TEST_CASE("curve distance examples") {
  CHECK(curve_distance(single(-1), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(curve_distance(single(-1), 3.0) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("exp1 distance to the origin against a dense grid") {
  const std::size_t points = std::size_t{1} << 18;
  double best = INFINITY;
  for (std::size_t j = 0; j < points; ++j) best = std::min(best, std::abs(exp1_reference(kTwoPi * j / points)));
  const double d = curve_distance(presets::exp1(), 0.0);
  CHECK(d <= best + 1e-9);
  CHECK(d >= best - 1e-6);
}

TEST_CASE("distance vanishes on the curve") {
  const Symbol s = presets::exp1_2();
  const SymbolCurve curve(s, 4096);
  for (double theta : {0.0, 0.123, 1.7, 3.3, 6.0}) CHECK(curve.distance(s.eval(theta)) < 1e-9);
}

TEST_CASE("distance does not increase with the grid size") {
  const Symbol s = presets::exp1();
  for (Complex z : {0.0 + 0i, 3.0 + 1.0i, -7.0 + 0i}) {
    double prev = INFINITY;
    for (std::size_t g : {64u, 256u, 1024u, 4096u}) {
      const double d = curve_distance(s, z, g);
      CHECK(d <= prev + 1e-10);
      prev = d;
    }
  }
}

TEST_CASE("sampled curve matches pointwise evaluation") {
  const Symbol s = presets::exp1();
  const auto samples = sample_curve(s, 512);
  REQUIRE(samples.size() == 512);
  for (std::size_t j = 0; j < 512; j += 37) CHECK(std::abs(samples[j] - s.eval(kTwoPi * j / 512)) < 1e-11);
  const auto truncated = sample_curve(s, 100, 7);
  for (std::size_t j = 0; j < 100; j += 9) CHECK(std::abs(truncated[j] - s.eval(kTwoPi * j / 100, 7)) < 1e-12);
}

TEST_CASE("closest parameter and diameter") {
  const SymbolCurve circle(single(-1), 1024);
  CHECK(circle.diameter() == doctest::Approx(2.0).epsilon(1e-6));
  const double theta = circle.closest_theta(2.0i);
  CHECK(std::abs(std::polar(1.0, theta) - 1.0i) < 1e-7);
  CHECK_THROWS_AS(SymbolCurve(single(1), 16), InvalidArgument);
}
