#include "tnlab/curve.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include "tnlab/errors.hpp"

namespace tnlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// The FFTW planner is not reentrant; execution is.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

struct GoldenResult {
  double theta;
  double distance;
};

GoldenResult golden_minimize(const Symbol& symbol, int truncation, Complex z, double lo, double hi) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  auto f = [&](double t) { return std::abs(z - symbol.eval(t, truncation)); };
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < 80 && (b - a) > 1e-14; ++it) {
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
  return fc < fd ? GoldenResult{c, fc} : GoldenResult{d, fd};
}

}  // namespace

std::vector<Complex> sample_curve(const Symbol& symbol, std::size_t points, int truncation) {
  if (points == 0) throw InvalidArgument("sample_curve needs at least one point");
  const auto a = symbol.dense_coefficients(truncation);
  const long r = (static_cast<long>(a.size()) - 1) / 2;
  const long n = static_cast<long>(points);
  std::vector<Complex> folded(points);
  for (long nu = -r; nu <= r; ++nu) folded[((nu % n) + n) % n] += a[nu + r];

  std::vector<Complex> out(points);
  auto* in_ptr = reinterpret_cast<fftw_complex*>(folded.data());
  auto* out_ptr = reinterpret_cast<fftw_complex*>(out.data());
  fftw_plan plan;
  {
    std::lock_guard lock(fftw_planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(points), in_ptr, out_ptr, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

int argument_winding(const std::function<Complex(double)>& curve, double period,
                     const std::vector<Complex>& samples, Complex z, std::size_t max_samples) {
  const std::size_t n = samples.size();
  if (n < 3) throw InvalidArgument("argument_winding needs at least 3 samples");
  std::size_t evaluations = n;
  const double h = period / static_cast<double>(n);
  const double min_width = period * 1e-15;

  auto increment = [&](auto&& self, double t0, Complex w0, double t1, Complex w1) -> double {
    const double d = std::arg((w1 - z) / (w0 - z));
    if (std::abs(d) <= std::numbers::pi / 2) return d;
    if (t1 - t0 < min_width || evaluations >= max_samples)
      throw NonConvergent("winding refinement exceeded " + std::to_string(max_samples) + " samples");
    const double tm = 0.5 * (t0 + t1);
    const Complex wm = curve(tm);
    ++evaluations;
    return self(self, t0, w0, tm, wm) + self(self, tm, wm, t1, w1);
  };

  double total = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t next = (j + 1) % n;
    total += increment(increment, h * static_cast<double>(j), samples[j], h * static_cast<double>(j + 1),
                       samples[next]);
  }
  return static_cast<int>(std::lround(total / kTwoPi));
}

SymbolCurve::SymbolCurve(const Symbol& symbol, std::size_t grid_size, int truncation)
    : symbol_(symbol), truncation_(truncation) {
  if (grid_size < 64) throw InvalidArgument("curve grid_size must be >= 64");
  samples_ = sample_curve(symbol_, grid_size, truncation_);
}

double SymbolCurve::theta(std::size_t j) const {
  return kTwoPi * static_cast<double>(j) / static_cast<double>(samples_.size());
}

namespace {

std::pair<double, double> nearest_point(const SymbolCurve& curve, const Symbol& symbol, int truncation, Complex z) {
  const auto& s = curve.samples();
  const std::size_t n = s.size();
  std::vector<double> dist(n);
  for (std::size_t j = 0; j < n; ++j) dist[j] = std::abs(z - s[j]);

  // best few local minima of the sampled distance
  std::vector<std::size_t> minima;
  for (std::size_t j = 0; j < n; ++j) {
    const double prev = dist[(j + n - 1) % n];
    const double next = dist[(j + 1) % n];
    if (dist[j] <= prev && dist[j] <= next) minima.push_back(j);
  }
  constexpr std::size_t kCandidates = 4;
  if (minima.size() > kCandidates) {
    std::partial_sort(minima.begin(), minima.begin() + kCandidates, minima.end(),
                      [&](std::size_t a, std::size_t b) { return dist[a] < dist[b]; });
    minima.resize(kCandidates);
  }

  std::size_t best = 0;
  for (std::size_t j = 1; j < n; ++j)
    if (dist[j] < dist[best]) best = j;
  double best_theta = curve.theta(best);
  double best_dist = dist[best];
  const double h = kTwoPi / static_cast<double>(n);
  for (std::size_t j : minima) {
    const double t = curve.theta(j);
    const auto refined = golden_minimize(symbol, truncation, z, t - h, t + h);
    if (refined.distance < best_dist) {
      best_dist = refined.distance;
      best_theta = refined.theta;
    }
  }
  best_theta = std::fmod(best_theta, kTwoPi);
  if (best_theta < 0) best_theta += kTwoPi;
  return {best_theta, best_dist};
}

}  // namespace

double SymbolCurve::distance(Complex z) const { return nearest_point(*this, symbol_, truncation_, z).second; }

double SymbolCurve::closest_theta(Complex z) const { return nearest_point(*this, symbol_, truncation_, z).first; }

int SymbolCurve::winding(Complex z) const {
  const double d = distance(z);
  if (d < 1e-10 * (1.0 + std::abs(z)))
    throw PointOnCurve("point lies on the symbol curve (distance " + std::to_string(d) + ")");
  return argument_winding([this](double t) { return symbol_.eval(t, truncation_); }, kTwoPi, samples_, z);
}

double SymbolCurve::diameter() const {
  const std::size_t stride = std::max<std::size_t>(1, samples_.size() / 4096);
  double diam = 0.0;
  for (std::size_t i = 0; i < samples_.size(); i += stride)
    for (std::size_t j = i + stride; j < samples_.size(); j += stride)
      diam = std::max(diam, std::abs(samples_[i] - samples_[j]));
  return diam;
}

int winding_number(const Symbol& symbol, Complex z, std::size_t grid_size) {
  return SymbolCurve(symbol, grid_size).winding(z);
}

double curve_distance(const Symbol& symbol, Complex z, std::size_t grid_size) {
  return SymbolCurve(symbol, grid_size).distance(z);
}

}  // namespace tnlab
