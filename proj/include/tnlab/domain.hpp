#pragma once

#include <complex>
#include <optional>
#include <vector>

namespace tnlab {

using Complex = std::complex<double>;

/// Periodic cubic interpolating spline through control points, parameter
/// u in [0, n) with the control points at integer u.
class ClosedSpline {
 public:
  explicit ClosedSpline(std::vector<Complex> points);

  [[nodiscard]] std::size_t size() const { return points_.size(); }
  [[nodiscard]] const std::vector<Complex>& points() const { return points_; }
  [[nodiscard]] Complex at(double u) const;
  [[nodiscard]] Complex derivative(double u) const;

 private:
  std::vector<Complex> points_;
  std::vector<Complex> second_;  // second derivatives at the knots
};

/// Bounded simply connected region with smooth boundary: a disc or the
/// interior of a closed spline.
class Domain {
 public:
  static Domain disc(Complex center, double radius);
  /// Throws InvalidArgument for fewer than 3 points or a self-intersecting
  /// interpolated boundary.
  static Domain parametric(std::vector<Complex> control_points);

  [[nodiscard]] bool is_disc() const { return !spline_.has_value(); }
  [[nodiscard]] Complex center() const { return center_; }
  [[nodiscard]] double radius() const { return radius_; }
  [[nodiscard]] const std::vector<Complex>& control_points() const;

  /// Strict interior; points within 1e-12 of the boundary are outside.
  [[nodiscard]] bool contains(Complex z) const;

  /// Boundary parametrized over t in [0, 2 pi), positively oriented for discs.
  [[nodiscard]] Complex boundary(double t) const;
  [[nodiscard]] Complex boundary_tangent(double t) const;
  /// Parameter t of the boundary point closest to z.
  [[nodiscard]] double closest_boundary_parameter(Complex z) const;
  [[nodiscard]] double boundary_distance(Complex z) const;
  /// Distance to the boundary, negative inside.
  [[nodiscard]] double signed_distance(Complex z) const;

 private:
  Domain() = default;

  Complex center_{};
  double radius_ = 0.0;
  std::optional<ClosedSpline> spline_;
  std::vector<Complex> boundary_samples_;  // uniform in t, parametric only
};

}  // namespace tnlab
