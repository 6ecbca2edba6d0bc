#include "tnlab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "tnlab/errors.hpp"
#include "tnlab/matrix.hpp"

namespace tnlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kRadToDeg = 180.0 / std::numbers::pi;

double wrap_angle(double t) {
  t = std::fmod(t, kTwoPi);
  return t < 0 ? t + kTwoPi : t;
}

// Root of f on [a, b] given f(a) < 0 <= f(b) or the reverse.
template <typename F>
double bisect(F&& f, double a, double b, double fa, double tolerance) {
  for (int it = 0; it < 200 && b - a > tolerance; ++it) {
    const double mid = 0.5 * (a + b);
    const double fm = f(mid);
    if ((fm < 0) == (fa < 0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

template <typename F>
std::pair<double, double> golden(F&& f, double a, double b) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < 80 && b - a > 1e-14; ++it) {
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
  return fc < fd ? std::pair{c, fc} : std::pair{d, fd};
}

double circular_gap(double a, double b) {
  const double d = std::abs(wrap_angle(a) - wrap_angle(b));
  return std::min(d, kTwoPi - d);
}

}  // namespace

double preimage_arc_measure(const SymbolCurve& curve, const Domain& domain) {
  const auto& samples = curve.samples();
  const std::size_t n = samples.size();
  if (n < 1024) throw InvalidArgument("preimage_arc_measure: grid_size must be >= 1024");
  const Symbol& symbol = curve.symbol();
  const double h = kTwoPi / static_cast<double>(n);

  std::vector<double> sd(n);
  for (std::size_t j = 0; j < n; ++j) sd[j] = domain.signed_distance(samples[j]);
  auto f = [&](double t) { return domain.signed_distance(symbol.eval(t)); };

  double measure = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double a = h * static_cast<double>(j);
    const double fa = sd[j];
    const double fb = sd[(j + 1) % n];
    const bool in_a = fa < 0;
    const bool in_b = fb < 0;
    if (in_a && in_b) {
      measure += h;
    } else if (in_a != in_b) {
      const double crossing = bisect(f, a, a + h, fa, 1e-13);
      measure += in_a ? crossing - a : a + h - crossing;
    }
  }
  return measure;
}

double preimage_arc_measure(const Symbol& symbol, const Domain& domain, std::size_t grid_size) {
  if (grid_size < 1024) throw InvalidArgument("preimage_arc_measure: grid_size must be >= 1024");
  return preimage_arc_measure(SymbolCurve(symbol, grid_size), domain);
}

DomainConditionsReport check_domain_conditions(const Symbol& symbol, const Domain& domain,
                                               const ConditionThresholds& thresholds) {
  const SymbolCurve curve(symbol, thresholds.grid_size);
  const auto& samples = curve.samples();
  const std::size_t n = samples.size();
  const double h = kTwoPi / static_cast<double>(n);
  double scale = 1.0;
  for (const Complex& w : samples) scale = std::max(scale, 1.0 + std::abs(w));

  std::vector<double> sd(n);
  for (std::size_t j = 0; j < n; ++j) sd[j] = domain.signed_distance(samples[j]);
  auto f = [&](double t) { return domain.signed_distance(symbol.eval(t)); };

  DomainConditionsReport report;
  std::vector<std::pair<double, bool>> roots;  // (theta, tangential)
  for (std::size_t j = 0; j < n; ++j) {
    const double fa = sd[j];
    const double fb = sd[(j + 1) % n];
    if ((fa < 0) != (fb < 0)) {
      roots.emplace_back(wrap_angle(bisect(f, h * j, h * (j + 1), fa, 1e-14)), false);
      continue;
    }
    // touching points: local minimum of |sd| without a sign change
    const double before = sd[(j + n - 1) % n];
    if ((before < 0) != (fa < 0)) continue;
    const double here = std::abs(fa);
    if (here <= std::abs(before) && here < std::abs(fb) && here < 1e-3 * scale) {
      const auto [t, value] = golden([&](double t) { return std::abs(f(t)); }, h * (j - 1.0), h * (j + 1.0));
      if (value < 1e-9 * scale) roots.emplace_back(wrap_angle(t), true);
    }
  }

  for (const auto& [theta, tangential] : roots) {
    CurveBoundaryIntersection x;
    x.theta = theta;
    x.tangential = tangential;
    x.point = symbol.eval(theta);
    const Complex dp = symbol.derivative(theta);
    x.speed = std::abs(dp);
    x.boundary_t = domain.closest_boundary_parameter(x.point);
    const Complex db = domain.boundary_tangent(x.boundary_t);
    if (x.speed > 0 && std::abs(db) > 0) {
      const double c = std::abs((std::conj(dp) * db).real()) / (x.speed * std::abs(db));
      x.angle_deg = std::acos(std::min(1.0, c)) * kRadToDeg;
    }
    report.intersections.push_back(x);
  }

  const std::size_t count = report.intersections.size();
  report.finite.passed = count < n / 8;
  report.finite.detail = std::to_string(count) + " intersection(s) at grid " + std::to_string(n);

  // (2): the curve must not come back through an intersection point
  const std::size_t window = 16;
  int self_hits = 0;
  for (const auto& x : report.intersections) {
    std::size_t best = n;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      if (circular_gap(curve.theta(j), x.theta) <= window * h) continue;
      const double d = std::abs(samples[j] - x.point);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    if (best == n) continue;
    const double t0 = curve.theta(best);
    const auto refined = golden([&](double t) { return std::abs(symbol.eval(t) - x.point); }, t0 - h, t0 + h);
    if (std::min(best_d, refined.second) < 1e-6 * scale) ++self_hits;
  }
  report.no_self_intersection.passed = self_hits == 0;
  report.no_self_intersection.detail = std::to_string(self_hits) + " self-intersection(s) at crossing points";

  int critical = 0;
  int shallow = 0;
  double min_speed = std::numeric_limits<double>::infinity();
  double min_angle = 90.0;
  for (const auto& x : report.intersections) {
    min_speed = std::min(min_speed, x.speed);
    min_angle = std::min(min_angle, x.tangential ? 0.0 : x.angle_deg);
    if (x.speed < thresholds.min_derivative) ++critical;
    if (x.tangential || x.angle_deg < thresholds.min_angle_deg) ++shallow;
  }
  report.non_critical.passed = critical == 0;
  report.non_critical.detail = count == 0 ? "no intersections" : "min |p'| = " + std::to_string(min_speed);
  report.transversal.passed = shallow == 0;
  report.transversal.detail = count == 0 ? "no intersections" : "min angle = " + std::to_string(min_angle) + " deg";
  return report;
}

int count_in_domain(const SpectrumResult& eigs, const Domain& domain) {
  return static_cast<int>(
      std::count_if(eigs.eigenvalues.begin(), eigs.eigenvalues.end(), [&](Complex z) { return domain.contains(z); }));
}

int circulant_count(const Symbol& symbol, int n, int m, const Domain& domain) {
  const auto lambda = circulant_spectrum(symbol, n, m);
  return static_cast<int>(std::count_if(lambda.begin(), lambda.end(), [&](Complex z) { return domain.contains(z); }));
}

double log_potential_empirical(const SpectrumResult& eigs, Complex z) {
  if (eigs.eigenvalues.empty()) throw InvalidArgument("log_potential_empirical: empty spectrum");
  double sum = 0.0;
  for (const Complex& lambda : eigs.eigenvalues) {
    const double d = std::abs(z - lambda);
    if (!(d >= 1e-300)) throw AtomCollision("z coincides with an eigenvalue");
    sum += std::log(d);
  }
  return -sum / static_cast<double>(eigs.eigenvalues.size());
}

PotentialEstimate log_potential_limit(const Symbol& symbol, Complex z, std::size_t quadrature_size) {
  if (quadrature_size < 64) throw InvalidArgument("log_potential_limit: quadrature_size must be >= 64");
  if (curve_distance(symbol, z) < 1e-10 * (1.0 + std::abs(z)))
    throw TooCloseToCurve("log_potential_limit: z lies on the symbol curve");

  auto trapezoid = [&](std::size_t nodes) {
    double sum = 0.0;
    for (const Complex& w : sample_curve(symbol, nodes)) sum += std::log(std::abs(z - w));
    return -sum / static_cast<double>(nodes);
  };
  constexpr std::size_t kMaxNodes = std::size_t{1} << 22;
  PotentialEstimate est;
  std::size_t nodes = quadrature_size;
  double coarse = trapezoid(nodes);
  while (true) {
    const double fine = trapezoid(2 * nodes);
    est.value = fine;
    est.error_estimate = std::abs(fine - coarse);
    est.nodes = 2 * nodes;
    if (est.error_estimate <= 1e-10 || 2 * nodes >= kMaxNodes) break;
    coarse = fine;
    nodes *= 2;
  }
  return est;
}

WeylSetup prepare_weyl(const Symbol& symbol, const Domain& domain, const ConditionThresholds& thresholds) {
  WeylSetup setup;
  setup.conditions = check_domain_conditions(symbol, domain, thresholds);
  if (!setup.conditions.all_passed()) {
    std::string why;
    for (const auto* c : {&setup.conditions.finite, &setup.conditions.no_self_intersection,
                          &setup.conditions.non_critical, &setup.conditions.transversal})
      if (!c->passed) why += (why.empty() ? "" : "; ") + c->detail;
    throw DomainConditionsFailed("domain violates the boundary conditions: " + why);
  }
  setup.arc_measure = preimage_arc_measure(symbol, domain, thresholds.grid_size);
  return setup;
}

WeylReport weyl_report(const WeylSetup& setup, const Symbol& symbol, int n, int m, double delta, std::uint64_t seed,
                       const Domain& domain) {
  if (!(delta >= 0.0)) throw InvalidArgument("weyl_report: delta must be >= 0");
  WeylReport r;
  r.n = n;
  r.delta = delta;
  r.seed = seed;
  r.conditions = setup.conditions;
  const auto sample = sample_gaussian(n, seed);
  r.hs_norm = sample.hs_norm;
  r.spectrum = eigenvalues(perturb(build_toeplitz(symbol, n), sample.q, delta));
  r.count_in_domain = count_in_domain(r.spectrum, domain);
  r.weyl_prediction = static_cast<double>(n) * setup.arc_measure / kTwoPi;
  r.normalized_error = std::abs(r.count_in_domain - r.weyl_prediction) / static_cast<double>(n);
  r.circulant_count = circulant_count(symbol, n, m, domain);
  return r;
}

WeylReport weyl_report(const Symbol& symbol, int n, int m, double delta, std::uint64_t seed, const Domain& domain) {
  return weyl_report(prepare_weyl(symbol, domain), symbol, n, m, delta, seed, domain);
}

double default_delta(int n) { return std::min(1e-8, 1.0 / (static_cast<double>(n) * n)); }

}  // namespace tnlab
