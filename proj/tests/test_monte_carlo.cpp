#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "doctest.h"
#include "tnlab/errors.hpp"
#include "tnlab/monte_carlo.hpp"

using namespace tnlab;
using namespace std::complex_literals;

namespace {

Symbol circle_symbol() { return Symbol(BandCoefficients{{-1, 1.0}}, {}); }

}  // namespace

TEST_CASE("parallel_for visits every index once") {
  for (int threads : {1, 3, 8}) {
    std::vector<std::atomic<int>> hits(100);
    parallel_for(hits.size(), threads, [&](std::size_t i) { hits[i].fetch_add(1); });
    for (const auto& h : hits) CHECK(h.load() == 1);
  }
  parallel_for(0, 4, [](std::size_t) { FAIL("body called for an empty range"); });
}

TEST_CASE("parallel_for rethrows the first failure") {
  CHECK_THROWS_AS(parallel_for(50, 4,
                               [](std::size_t i) {
                                 if (i == 17) throw std::runtime_error("boom");
                               }),
                  std::runtime_error);
}

TEST_CASE("thread count from the environment") {
  ::setenv("TNLAB_THREADS", "3", 1);
  CHECK(thread_count_from_env() == 3);
  ::setenv("TNLAB_THREADS", "zero", 1);
  CHECK(thread_count_from_env() >= 1);
  ::unsetenv("TNLAB_THREADS");
  CHECK(thread_count_from_env() >= 1);
}

TEST_CASE("quantile") {
  CHECK(quantile({3.0, 1.0, 2.0}, 0.5) == 2.0);
  CHECK(quantile({0.0, 10.0}, 0.25) == doctest::Approx(2.5));
  CHECK(quantile({5.0}, 0.99) == 5.0);
  CHECK(quantile({1.0, 2.0, 3.0, 4.0}, 0.0) == 1.0);
  CHECK(quantile({1.0, 2.0, 3.0, 4.0}, 1.0) == 4.0);
}

TEST_CASE("distance histogram bins are logarithmic and conserve counts") {
  const std::vector<double> d{1e-9, 1e-6, 1e-4, 0.5, 0.99, 1.0, 3.0};
  const auto h = make_distance_histogram(d, 1.0, 6);
  REQUIRE(h.edges.size() == 7);
  REQUIRE(h.counts.size() == 6);
  CHECK(h.edges.front() == doctest::Approx(1e-6));
  CHECK(h.edges.back() == doctest::Approx(1.0));
  for (std::size_t i = 0; i + 1 < h.edges.size(); ++i) CHECK(h.edges[i + 1] / h.edges[i] == doctest::Approx(10.0));
  std::size_t total = h.underflow + h.overflow;
  for (auto c : h.counts) total += c;
  CHECK(total == d.size());
  CHECK(h.underflow == 1);
  CHECK(h.overflow == 2);
  CHECK(h.counts[0] == 1);
  CHECK(h.counts[2] == 1);
  CHECK(h.counts[5] == 2);
}

TEST_CASE("unperturbed trials are identical") {
  MonteCarloConfig config;
  config.symbol = presets::exp1_2();
  config.sizes = {48};
  config.delta = 0.0;
  config.domain = Domain::disc(0.0, 2.0);
  config.trials = 3;
  const auto r = monte_carlo(config);
  REQUIRE(r.trials.size() == 3);
  for (const auto& t : r.trials) {
    CHECK(t.ok);
    CHECK(t.report.spectrum.eigenvalues == r.trials[0].report.spectrum.eigenvalues);
    CHECK(t.report.count_in_domain == r.trials[0].report.count_in_domain);
  }
  CHECK(r.trials[1].seed == 43);
  CHECK(r.sizes[0].max_error == doctest::Approx(r.sizes[0].mean_error));
}

TEST_CASE("Monte Carlo runs are reproducible and thread-count independent") {
  MonteCarloConfig config;
  config.symbol = presets::exp1_2();
  config.sizes = {32, 64};
  config.domain = Domain::disc(0.0, 2.0);
  config.trials = 4;
  const auto a = monte_carlo(config);
  config.threads = 3;
  std::size_t calls = 0;
  config.progress = [&](std::size_t done, std::size_t total) {
    ++calls;
    CHECK(done <= total);
  };
  const auto b = monte_carlo(config);
  CHECK(calls == 8);
  REQUIRE(a.trials.size() == 8);
  for (std::size_t i = 0; i < a.trials.size(); ++i) {
    CHECK(a.trials[i].n == b.trials[i].n);
    CHECK(a.trials[i].seed == b.trials[i].seed);
    CHECK(a.trials[i].report.spectrum.eigenvalues == b.trials[i].report.spectrum.eigenvalues);
  }
  for (std::size_t s = 0; s < a.sizes.size(); ++s) {
    CHECK(a.sizes[s].mean_error == b.sizes[s].mean_error);
    CHECK(a.sizes[s].distance_quantiles == b.sizes[s].distance_quantiles);
    CHECK(a.sizes[s].delta == default_delta(a.sizes[s].n));
  }
}

TEST_CASE("aggregate statistics agree with the per-trial reports") {
  MonteCarloConfig config;
  config.symbol = presets::exp1_2();
  config.sizes = {64};
  config.domain = Domain::disc(0.0, 2.0);
  config.trials = 5;
  config.error_threshold = 0.05;
  const auto r = monte_carlo(config);
  const auto& agg = r.sizes[0];
  double mean = 0.0;
  double worst = 0.0;
  int good = 0;
  std::vector<double> all;
  for (const auto& t : r.trials) {
    mean += t.report.normalized_error / 5;
    worst = std::max(worst, t.report.normalized_error);
    good += t.report.normalized_error <= 0.05 ? 1 : 0;
    CHECK(t.distances.size() == 64);
    all.insert(all.end(), t.distances.begin(), t.distances.end());
  }
  CHECK(agg.mean_error == doctest::Approx(mean));
  CHECK(agg.max_error == worst);
  CHECK(agg.success_fraction == doctest::Approx(good / 5.0));
  CHECK(agg.failures == 0);
  REQUIRE(agg.distance_quantiles.size() == 4);
  CHECK(agg.distance_quantiles[1] == doctest::Approx(quantile(all, 0.5)));
  CHECK(agg.weyl_prediction == doctest::Approx(64 * r.arc_measure / (2 * std::numbers::pi)));
  CHECK(r.conditions.all_passed());
}

TEST_CASE("failing domain conditions stop the run up front") {
  MonteCarloConfig config;
  config.symbol = circle_symbol();
  config.sizes = {16};
  config.domain = Domain::disc(2.0, 1.0);
  CHECK_THROWS_AS(monte_carlo(config), DomainConditionsFailed);
}

TEST_CASE("circle symbol: mean normalized error decreases along the N ladder") {
  MonteCarloConfig config;
  config.symbol = circle_symbol();
  config.sizes = {128, 256, 512};
  config.delta = 1e-8;
  config.domain = Domain::disc(0.0, 0.9);
  config.trials = 10;
  const auto r = monte_carlo(config);
  REQUIRE(r.sizes.size() == 3);
  CHECK(r.sizes[0].weyl_prediction == 0.0);
  CHECK(r.sizes[1].mean_error < r.sizes[0].mean_error);
  CHECK(r.sizes[2].mean_error <= r.sizes[1].mean_error);
  CHECK(r.sizes[2].near_curve_fraction >= 0.9);
}

TEST_CASE("lower-bound event frequency") {
  const auto f = lower_bound_frequency(presets::exp1_2(), 64, 4, 0.5 + 0.5i, 1e-8, 6, 11);
  CHECK(f.trials == 6);
  CHECK(f.values.size() == 6);
  CHECK(f.threshold == doctest::Approx(-std::sqrt(64.0)));
  int hits = 0;
  for (double v : f.values) hits += v >= f.threshold ? 1 : 0;
  CHECK(f.hits == hits);
  CHECK(f.frequency() == doctest::Approx(hits / 6.0));
  CHECK(LowerBoundFrequency{}.frequency() == 0.0);
}
