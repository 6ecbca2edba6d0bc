#include <cmath>
#include <numbers>

#include "doctest.h"
#include "tnlab/domain.hpp"
#include "tnlab/errors.hpp"

using namespace tnlab;
using namespace std::complex_literals;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Even-odd ray casting against a closed polyline.
bool ray_cast(const std::vector<Complex>& poly, Complex z) {
  bool inside = false;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    const Complex a = poly[i];
    const Complex b = poly[j];
    if ((a.imag() > z.imag()) != (b.imag() > z.imag())) {
      const double x = a.real() + (z.imag() - a.imag()) * (b.real() - a.real()) / (b.imag() - a.imag());
      if (z.real() < x) inside = !inside;
    }
  }
  return inside;
}

std::vector<Complex> squareish() { return {{1.0, 0.0}, {1.0, 1.0}, {0.0, 1.2}, {-1.0, 1.0}, {-1.1, 0.0}, {-1.0, -1.0}, {0.0, -0.9}, {1.0, -1.0}}; }

}  // namespace

TEST_CASE("disc membership") {
  const Domain d = Domain::disc(0.0, 1.0);
  CHECK(d.contains(0.5));
  CHECK_FALSE(d.contains(2.0));
  CHECK_FALSE(d.contains(1.0));
  CHECK_FALSE(d.contains(1.0 - 1e-13));
  CHECK(d.contains(1.0 - 1e-9));
  CHECK(d.signed_distance(0.25) == doctest::Approx(-0.75));
  CHECK(d.signed_distance(3.0i) == doctest::Approx(2.0));
  CHECK_THROWS_AS(Domain::disc(0.0, 0.0), InvalidArgument);
  CHECK_THROWS_AS(Domain::disc(0.0, -1.0), InvalidArgument);
}

TEST_CASE("disc boundary parametrization") {
  const Domain d = Domain::disc(1.0 + 1.0i, 2.0);
  CHECK(std::abs(d.boundary(0.0) - (3.0 + 1.0i)) < 1e-15);
  CHECK(std::abs(d.boundary_tangent(0.0) - 2.0i) < 1e-15);
  CHECK(d.closest_boundary_parameter(1.0 + 5.0i) == doctest::Approx(std::numbers::pi / 2));
  CHECK(d.boundary_distance(1.0 + 1.5i) == doctest::Approx(1.5));
}

TEST_CASE("parametric membership agrees with ray casting") {
  const Domain d = Domain::parametric(squareish());
  std::vector<Complex> poly;
  for (int j = 0; j < 8192; ++j) poly.push_back(d.boundary(kTwoPi * j / 8192));
  int checked = 0;
  for (int a = 0; a < 41; ++a)
    for (int b = 0; b < 41; ++b) {
      const Complex z(-1.5 + 3.0 * a / 40, -1.5 + 3.0 * b / 40);
      if (d.boundary_distance(z) < 1e-3) continue;
      CHECK(d.contains(z) == ray_cast(poly, z));
      ++checked;
    }
  CHECK(checked > 1500);
}

TEST_CASE("parametric boundary interpolates the control points") {
  const auto pts = squareish();
  const Domain d = Domain::parametric(pts);
  for (std::size_t i = 0; i < pts.size(); ++i)
    CHECK(std::abs(d.boundary(kTwoPi * i / pts.size()) - pts[i]) < 1e-12);
  CHECK(d.control_points().size() == pts.size());
  CHECK_FALSE(d.is_disc());
}

TEST_CASE("parametric tangent matches finite differences") {
  const Domain d = Domain::parametric(squareish());
  const double h = 1e-6;
  for (double t : {0.1, 1.0, 2.5, 4.0, 6.0}) {
    const Complex fd = (d.boundary(t + h) - d.boundary(t - h)) / (2 * h);
    CHECK(std::abs(d.boundary_tangent(t) - fd) < 1e-5 * (1 + std::abs(fd)));
  }
}

TEST_CASE("parametric signed distance") {
  const Domain d = Domain::parametric(squareish());
  CHECK(d.signed_distance(0.0) < 0.0);
  CHECK(d.signed_distance(3.0) == doctest::Approx(2.0).epsilon(0.1));
  const Complex on = d.boundary(1.3);
  CHECK(std::abs(d.signed_distance(on)) < 1e-9);
  CHECK_FALSE(d.contains(on));
}

TEST_CASE("self-intersecting or degenerate control polygons are rejected") {
  // figure eight
  CHECK_THROWS_AS(Domain::parametric({{1, 1}, {-1, -1}, {-1, 1}, {1, -1}}), InvalidArgument);
  CHECK_THROWS_AS(Domain::parametric({{0, 0}, {1, 0}}), InvalidArgument);
}

TEST_CASE("parametric circle approximates the disc") {
  std::vector<Complex> pts;
  for (int j = 0; j < 32; ++j) pts.push_back(std::polar(1.0, kTwoPi * j / 32));
  const Domain d = Domain::parametric(pts);
  CHECK(d.contains(0.9));
  CHECK_FALSE(d.contains(1.1));
  CHECK(std::abs(d.center()) < 1e-12);
  CHECK(d.radius() == doctest::Approx(1.0).epsilon(1e-4));
}
