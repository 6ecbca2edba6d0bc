#include "tnlab/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

#include "tnlab/errors.hpp"
#include "tnlab/grushin.hpp"
#include "tnlab/matrix.hpp"

namespace tnlab {

int thread_count_from_env() {
  if (const char* env = std::getenv("TNLAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(std::min<long>(v, 1024));
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body) {
  const auto workers = static_cast<std::size_t>(std::max(1, threads));
  if (workers == 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < std::min(workers, count); ++w) pool.emplace_back(run);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

double quantile(std::vector<double> values, double level) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const double pos = std::clamp(level, 0.0, 1.0) * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

DistanceHistogram make_distance_histogram(const std::vector<double>& distances, double diameter, int bins) {
  if (bins < 1) throw InvalidArgument("histogram needs at least one bin");
  DistanceHistogram h;
  const double lo = 1e-6;
  const double hi = std::max(diameter, 10 * lo);
  const double step = std::log(hi / lo) / bins;
  h.edges.resize(bins + 1);
  for (int i = 0; i <= bins; ++i) h.edges[i] = lo * std::exp(step * i);
  h.edges.back() = hi;
  h.counts.assign(bins, 0);
  for (double d : distances) {
    if (d < lo) {
      ++h.underflow;
    } else if (d >= hi) {
      ++h.overflow;
    } else {
      auto i = static_cast<int>(std::log(d / lo) / step);
      i = std::clamp(i, 0, bins - 1);
      // guard against rounding at the edges
      while (i > 0 && d < h.edges[i]) --i;
      while (i < bins - 1 && d >= h.edges[i + 1]) ++i;
      ++h.counts[i];
    }
  }
  return h;
}

MonteCarloReport monte_carlo(const MonteCarloConfig& config) {
  if (config.trials < 1) throw InvalidArgument("monte_carlo: trials must be >= 1");
  if (config.sizes.empty()) throw InvalidArgument("monte_carlo: empty size list");
  for (int n : config.sizes)
    if (n < 1) throw InvalidArgument("monte_carlo: sizes must be >= 1");
  if (config.m < 1) throw InvalidArgument("monte_carlo: M must be >= 1");

  const WeylSetup setup = prepare_weyl(config.symbol, config.domain, config.thresholds);
  const SymbolCurve curve(config.symbol, config.curve_grid);

  MonteCarloReport report;
  report.arc_measure = setup.arc_measure;
  report.curve_diameter = curve.diameter();
  report.conditions = setup.conditions;

  const std::size_t per_size = static_cast<std::size_t>(config.trials);
  const std::size_t total = config.sizes.size() * per_size;
  report.trials.resize(total);
  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;

  parallel_for(total, config.threads, [&](std::size_t idx) {
    TrialOutcome& out = report.trials[idx];
    out.n = config.sizes[idx / per_size];
    out.trial = static_cast<int>(idx % per_size);
    out.seed = config.seed0 + static_cast<std::uint64_t>(out.trial);
    const double delta = config.delta.value_or(default_delta(out.n));
    try {
      out.report = weyl_report(setup, config.symbol, out.n, config.m, delta, out.seed, config.domain);
      out.distances.reserve(out.report.spectrum.eigenvalues.size());
      for (const Complex& lambda : out.report.spectrum.eigenvalues) out.distances.push_back(curve.distance(lambda));
      out.ok = true;
    } catch (const Error& e) {
      out.ok = false;
      out.error = e.what();
    }
    const std::size_t finished = ++done;
    if (config.progress) {
      std::lock_guard lock(progress_mutex);
      config.progress(finished, total);
    }
  });

  for (std::size_t s = 0; s < config.sizes.size(); ++s) {
    SizeAggregate agg;
    agg.n = config.sizes[s];
    agg.delta = config.delta.value_or(default_delta(agg.n));
    agg.trials = config.trials;
    agg.weyl_prediction = static_cast<double>(agg.n) * setup.arc_measure / (2.0 * std::numbers::pi);
    std::vector<double> distances;
    int ok = 0;
    int successes = 0;
    for (std::size_t t = 0; t < per_size; ++t) {
      const TrialOutcome& out = report.trials[s * per_size + t];
      if (!out.ok) {
        ++agg.failures;
        continue;
      }
      ++ok;
      agg.mean_count += out.report.count_in_domain;
      agg.mean_error += out.report.normalized_error;
      agg.mean_circulant_count += out.report.circulant_count;
      agg.max_error = std::max(agg.max_error, out.report.normalized_error);
      if (out.report.normalized_error <= config.error_threshold) ++successes;
      distances.insert(distances.end(), out.distances.begin(), out.distances.end());
    }
    if (ok > 0) {
      agg.mean_count /= ok;
      agg.mean_error /= ok;
      agg.mean_circulant_count /= ok;
    }
    agg.success_fraction = static_cast<double>(successes) / config.trials;
    std::vector<double> sorted = distances;
    std::sort(sorted.begin(), sorted.end());
    for (double level : agg.quantile_levels) agg.distance_quantiles.push_back(quantile(sorted, level));
    const double near = config.near_curve_factor * report.curve_diameter;
    if (!distances.empty())
      agg.near_curve_fraction = static_cast<double>(std::count_if(distances.begin(), distances.end(),
                                                                  [&](double d) { return d <= near; })) /
                                static_cast<double>(distances.size());
    agg.histogram = make_distance_histogram(distances, report.curve_diameter, config.histogram_bins);
    report.sizes.push_back(std::move(agg));
  }
  return report;
}

LowerBoundFrequency lower_bound_frequency(const Symbol& symbol, int n, int m, Complex z, double delta, int trials,
                                          std::uint64_t seed0, double eps0) {
  if (trials < 1) throw InvalidArgument("lower_bound_frequency: trials must be >= 1");
  LowerBoundFrequency out;
  out.n = n;
  out.trials = trials;
  out.threshold = -std::pow(static_cast<double>(n), eps0);
  for (int i = 0; i < trials; ++i) {
    const auto sample = sample_gaussian(n, seed0 + static_cast<std::uint64_t>(i));
    const LadderReport ladder = determinant_ladder(symbol, n, m, z, delta, sample.q);
    out.k = ladder.k;
    const double value = 2.0 * ladder.ln_det_g_delta;
    out.values.push_back(value);
    if (value >= out.threshold) ++out.hits;
  }
  return out;
}

}  // namespace tnlab
