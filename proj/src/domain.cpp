#include "tnlab/domain.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "tnlab/curve.hpp"
#include "tnlab/errors.hpp"

namespace tnlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kBoundaryTolerance = 1e-12;
constexpr std::size_t kSamplesPerSegment = 64;

double cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }

bool segments_intersect(Complex p1, Complex p2, Complex q1, Complex q2) {
  const double d1 = cross(q2 - q1, p1 - q1);
  const double d2 = cross(q2 - q1, p2 - q1);
  const double d3 = cross(p2 - p1, q1 - p1);
  const double d4 = cross(p2 - p1, q2 - p1);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

}  // namespace

ClosedSpline::ClosedSpline(std::vector<Complex> points) : points_(std::move(points)) {
  const auto n = static_cast<Eigen::Index>(points_.size());
  if (n < 3) throw InvalidArgument("closed spline needs at least 3 control points");
  // M_{i-1} + 4 M_i + M_{i+1} = 6 (P_{i+1} - 2 P_i + P_{i-1}), cyclic
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXcd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    a(i, i) += 4.0;
    a(i, (i + 1) % n) += 1.0;
    a(i, (i + n - 1) % n) += 1.0;
    rhs(i) = 6.0 * (points_[(i + 1) % n] - 2.0 * points_[i] + points_[(i + n - 1) % n]);
  }
  const Eigen::VectorXcd m = a.cast<Complex>().partialPivLu().solve(rhs);
  second_.assign(m.data(), m.data() + n);
}

Complex ClosedSpline::at(double u) const {
  const double n = static_cast<double>(points_.size());
  u = std::fmod(u, n);
  if (u < 0) u += n;
  const auto i = static_cast<std::size_t>(std::floor(u)) % points_.size();
  const std::size_t j = (i + 1) % points_.size();
  const double s = u - std::floor(u);
  const double r = 1.0 - s;
  return r * points_[i] + s * points_[j] + ((r * r * r - r) * second_[i] + (s * s * s - s) * second_[j]) / 6.0;
}

Complex ClosedSpline::derivative(double u) const {
  const double n = static_cast<double>(points_.size());
  u = std::fmod(u, n);
  if (u < 0) u += n;
  const auto i = static_cast<std::size_t>(std::floor(u)) % points_.size();
  const std::size_t j = (i + 1) % points_.size();
  const double s = u - std::floor(u);
  const double r = 1.0 - s;
  return points_[j] - points_[i] + ((1.0 - 3.0 * r * r) * second_[i] + (3.0 * s * s - 1.0) * second_[j]) / 6.0;
}

Domain Domain::disc(Complex center, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw InvalidArgument("disc radius must be positive and finite");
  Domain d;
  d.center_ = center;
  d.radius_ = radius;
  return d;
}

Domain Domain::parametric(std::vector<Complex> control_points) {
  Domain d;
  d.spline_.emplace(std::move(control_points));
  const std::size_t total = d.spline_->size() * kSamplesPerSegment;
  d.boundary_samples_.resize(total);
  for (std::size_t j = 0; j < total; ++j) d.boundary_samples_[j] = d.boundary(kTwoPi * j / total);

  // pairwise check of the sampled polyline, adjacent segments excluded
  const auto& s = d.boundary_samples_;
  for (std::size_t i = 0; i < total; ++i)
    for (std::size_t j = i + 2; j < total; ++j) {
      if (i == 0 && j == total - 1) continue;
      if (segments_intersect(s[i], s[(i + 1) % total], s[j], s[(j + 1) % total]))
        throw InvalidArgument("parametric domain boundary self-intersects");
    }

  Complex centroid{};
  for (const Complex& p : s) centroid += p;
  d.center_ = centroid / static_cast<double>(total);
  for (const Complex& p : s) d.radius_ = std::max(d.radius_, std::abs(p - d.center_));
  return d;
}

const std::vector<Complex>& Domain::control_points() const {
  static const std::vector<Complex> none;
  return spline_ ? spline_->points() : none;
}

Complex Domain::boundary(double t) const {
  if (!spline_) return center_ + std::polar(radius_, t);
  return spline_->at(t * static_cast<double>(spline_->size()) / kTwoPi);
}

Complex Domain::boundary_tangent(double t) const {
  if (!spline_) return Complex{0.0, radius_} * std::polar(1.0, t);
  const double scale = static_cast<double>(spline_->size()) / kTwoPi;
  return scale * spline_->derivative(t * scale);
}

double Domain::closest_boundary_parameter(Complex z) const {
  if (!spline_) {
    const double t = std::arg(z - center_);
    return t < 0 ? t + kTwoPi : t;
  }
  const auto& s = boundary_samples_;
  const std::size_t n = s.size();
  std::size_t best = 0;
  for (std::size_t j = 1; j < n; ++j)
    if (std::abs(z - s[j]) < std::abs(z - s[best])) best = j;
  const double h = kTwoPi / static_cast<double>(n);
  // golden section on [t - h, t + h]
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  auto f = [&](double t) { return std::abs(z - boundary(t)); };
  double a = h * static_cast<double>(best) - h;
  double b = h * static_cast<double>(best) + h;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < 80 && b - a > 1e-15; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  double t = fc < fd ? c : d;
  t = std::fmod(t, kTwoPi);
  return t < 0 ? t + kTwoPi : t;
}

double Domain::boundary_distance(Complex z) const {
  if (!spline_) return std::abs(std::abs(z - center_) - radius_);
  return std::abs(z - boundary(closest_boundary_parameter(z)));
}

double Domain::signed_distance(Complex z) const {
  if (!spline_) return std::abs(z - center_) - radius_;
  const double d = boundary_distance(z);
  if (d == 0.0) return 0.0;
  const int w = argument_winding([this](double t) { return boundary(t); }, kTwoPi, boundary_samples_, z);
  return w != 0 ? -d : d;
}

bool Domain::contains(Complex z) const {
  if (!spline_) return radius_ - std::abs(z - center_) > kBoundaryTolerance;
  // cheap rejection outside the circumscribed disc
  if (std::abs(z - center_) > radius_ + 1e-9) return false;
  return signed_distance(z) < -kBoundaryTolerance;
}

}  // namespace tnlab
