#pragma once

// Seeded Monte Carlo over N-ladders of perturbed Toeplitz spectra.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tnlab/analysis.hpp"

namespace tnlab {

/// Worker count: TNLAB_THREADS when set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
int thread_count_from_env();

/// Runs body(i) for i in [0, count) on up to `threads` workers. The first
/// exception thrown by a body is rethrown after all workers stop.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body);

struct MonteCarloConfig {
  Symbol symbol;
  std::vector<int> sizes{128, 256, 512};
  int m = 8;
  std::optional<double> delta;  // default_delta(N) when empty
  Domain domain = Domain::disc({0.0, 0.0}, 1.0);
  int trials = 10;
  std::uint64_t seed0 = 42;
  double error_threshold = 0.1;
  double near_curve_factor = 0.05;  // eigenvalue "near" the curve within factor * diam
  std::size_t curve_grid = 4096;
  int histogram_bins = 24;
  int threads = 1;
  ConditionThresholds thresholds;
  std::function<void(std::size_t done, std::size_t total)> progress;
};

/// Log-spaced bins [edges[i], edges[i+1]) from 1e-6 to diam(curve).
struct DistanceHistogram {
  std::vector<double> edges;
  std::vector<std::size_t> counts;
  std::size_t underflow = 0;  // below edges.front()
  std::size_t overflow = 0;   // at or above edges.back()
};

DistanceHistogram make_distance_histogram(const std::vector<double>& distances, double diameter, int bins);

struct TrialOutcome {
  int n = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  WeylReport report;
  std::vector<double> distances;  // eigenvalue -> curve, spectrum order
};

struct SizeAggregate {
  int n = 0;
  double delta = 0.0;
  int trials = 0;
  int failures = 0;
  double weyl_prediction = 0.0;
  double mean_count = 0.0;
  double mean_error = 0.0;
  double max_error = 0.0;
  double success_fraction = 0.0;  // error <= threshold, over all trials
  double mean_circulant_count = 0.0;
  std::vector<double> quantile_levels{0.1, 0.5, 0.9, 0.99};
  std::vector<double> distance_quantiles;
  double near_curve_fraction = 0.0;
  DistanceHistogram histogram;
};

struct MonteCarloReport {
  double arc_measure = 0.0;
  double curve_diameter = 0.0;
  DomainConditionsReport conditions;
  std::vector<SizeAggregate> sizes;
  std::vector<TrialOutcome> trials;  // size-major, then trial index
};

/// Trial i at size N uses seed seed0 + i, so the same Q_seed recurs across
/// the ladder. Throws DomainConditionsFailed up front; per-trial failures
/// are recorded in the outcome.
MonteCarloReport monte_carlo(const MonteCarloConfig& config);

/// Empirical quantile with linear interpolation; `values` need not be sorted.
double quantile(std::vector<double> values, double level);

/// Frequency over seeds of the event 2 ln|det G^delta_{-+}(z)| >= -N^{eps0}.
struct LowerBoundFrequency {
  int n = 0;
  int trials = 0;
  int hits = 0;
  int k = 0;  // border size of the second problem
  double threshold = 0.0;  // -N^{eps0}
  std::vector<double> values;  // 2 ln|det G^delta_{-+}| per trial
  [[nodiscard]] double frequency() const { return trials == 0 ? 0.0 : static_cast<double>(hits) / trials; }
};

LowerBoundFrequency lower_bound_frequency(const Symbol& symbol, int n, int m, Complex z, double delta, int trials,
                                          std::uint64_t seed0, double eps0 = 0.5);

}  // namespace tnlab
