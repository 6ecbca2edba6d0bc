#include "tnlab/app/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

#include "CLI11.hpp"
#include "tnlab/analysis.hpp"
#include "tnlab/curve.hpp"
#include "tnlab/errors.hpp"
#include "tnlab/grushin.hpp"
#include "tnlab/linalg.hpp"
#include "tnlab/matrix.hpp"
#include "tnlab/monte_carlo.hpp"

namespace tnlab::app {

namespace fs = std::filesystem;

namespace {

void prepare_output(const RunConfig& config) {
  std::error_code ec;
  fs::create_directories(config.out, ec);
  if (ec) throw ConfigError("cannot create output directory '" + config.out.string() + "': " + ec.message());
  write_json_file(config.out / "manifest.json", make_manifest(config));
}

std::string suffixed(const std::string& stem, const std::string& ext, int n, bool many) {
  return many ? stem + "_N" + std::to_string(n) + ext : stem + ext;
}

Domain require_domain(const RunConfig& config) {
  if (!config.domain) throw ConfigError("this command needs --domain");
  return domain_from_json(*config.domain);
}

double delta_for(const RunConfig& config, int n) { return config.delta.value_or(default_delta(n)); }

void check_common(const RunConfig& config) {
  for (int n : config.sizes)
    if (n < 1) throw ConfigError("N must be >= 1");
  if (config.m < 1) throw ConfigError("M must be >= 1");
  if (config.trials < 1) throw ConfigError("trials must be >= 1");
  if (config.delta && !(*config.delta >= 0.0)) throw ConfigError("delta must be >= 0");
  if (config.curve_samples < 64) throw ConfigError("curve samples must be >= 64");
  if (!(config.alpha > 0.0)) throw ConfigError("alpha must be > 0");
  if (config.tau && !(*config.tau > 0.0)) throw ConfigError("tau must be > 0");
}

void write_histogram_csv(const fs::path& path, const DistanceHistogram& h) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write '" + path.string() + "'");
  out << "lo,hi,count\n";
  out << "0," << format_double(h.edges.front()) << ',' << h.underflow << '\n';
  for (std::size_t i = 0; i < h.counts.size(); ++i)
    out << format_double(h.edges[i]) << ',' << format_double(h.edges[i + 1]) << ',' << h.counts[i] << '\n';
  out << format_double(h.edges.back()) << ",inf," << h.overflow << '\n';
}

Json histogram_json(const DistanceHistogram& h) {
  return {{"edges", h.edges}, {"counts", h.counts}, {"underflow", h.underflow}, {"overflow", h.overflow}};
}

Json conditions_json(const DomainConditionsReport& r) {
  Json points = Json::array();
  for (const auto& x : r.intersections)
    points.push_back({{"theta", x.theta},
                      {"boundary_t", x.boundary_t},
                      {"re", x.point.real()},
                      {"im", x.point.imag()},
                      {"speed", x.speed},
                      {"angle_deg", x.angle_deg},
                      {"tangential", x.tangential}});
  auto outcome = [](const ConditionOutcome& c) { return Json{{"passed", c.passed}, {"detail", c.detail}}; };
  return {{"intersections", points},
          {"finite", outcome(r.finite)},
          {"no_self_intersection", outcome(r.no_self_intersection)},
          {"non_critical", outcome(r.non_critical)},
          {"transversal", outcome(r.transversal)},
          {"all_passed", r.all_passed()}};
}

std::string trial_stem(int n, std::uint64_t seed) { return "N" + std::to_string(n) + "_seed" + std::to_string(seed); }

}  // namespace

void cmd_spectrum(const RunConfig& config, std::ostream& log) {
  check_common(config);
  const Symbol symbol = resolve_symbol(config);
  prepare_output(config);
  const SymbolCurve curve(symbol, config.curve_samples);
  const double diameter = curve.diameter();

  {
    std::ofstream out(config.out / "curve.csv");
    if (!out) throw FormatError("cannot write curve.csv");
    out << "theta,re,im\n";
    for (std::size_t j = 0; j < curve.grid_size(); ++j)
      out << format_double(curve.theta(j)) << ',' << format_double(curve.samples()[j].real()) << ','
          << format_double(curve.samples()[j].imag()) << '\n';
  }

  const bool many = config.sizes.size() > 1;
  for (int n : config.sizes) {
    const double delta = delta_for(config, n);
    log << "[spectrum] N=" << n << " delta=" << delta << '\n';
    const auto sample = sample_gaussian(n, config.seed);
    const DenseComplexMatrix a = perturb(build_toeplitz(symbol, n), sample.q, delta);
    if (config.dump_matrix == "csv") write_matrix_csv(config.out / suffixed("matrix", ".csv", n, many), a);
    if (config.dump_matrix == "binary") write_matrix_binary(config.out / suffixed("matrix", ".bin", n, many), a);
    const SpectrumResult eig = eigenvalues(a);
    write_points_csv(config.out / suffixed("eigenvalues", ".csv", n, many), eig.eigenvalues);
    std::vector<double> distances;
    distances.reserve(eig.eigenvalues.size());
    for (const Complex& lambda : eig.eigenvalues) distances.push_back(curve.distance(lambda));
    write_histogram_csv(config.out / suffixed("distances", ".csv", n, many),
                        make_distance_histogram(distances, diameter, 24));
  }
  log << "[spectrum] wrote " << config.out.string() << '\n';
}

void cmd_weyl(const RunConfig& config, std::ostream& log) {
  check_common(config);
  MonteCarloConfig mc;
  mc.symbol = resolve_symbol(config);
  mc.domain = require_domain(config);
  mc.sizes = config.sizes;
  mc.m = config.m;
  mc.delta = config.delta;
  mc.trials = config.trials;
  mc.seed0 = config.seed;
  mc.error_threshold = config.error_threshold;
  mc.curve_grid = config.curve_samples;
  mc.threads = thread_count_from_env();
  mc.progress = [&log](std::size_t done, std::size_t total) {
    log << "[weyl] trial " << done << '/' << total << '\n';
  };
  prepare_output(config);
  log << "[weyl] " << mc.sizes.size() * static_cast<std::size_t>(mc.trials) << " trials on " << mc.threads
      << " thread(s)\n";
  const MonteCarloReport report = monte_carlo(mc);

  fs::create_directories(config.out / "trials");
  Json failures = Json::array();
  for (const TrialOutcome& t : report.trials) {
    Json j = {{"N", t.n}, {"trial", t.trial}, {"seed", t.seed}, {"ok", t.ok}};
    if (t.ok) {
      const WeylReport& w = t.report;
      j["delta"] = w.delta;
      j["count_in_domain"] = w.count_in_domain;
      j["weyl_prediction"] = w.weyl_prediction;
      j["normalized_error"] = w.normalized_error;
      j["hs_norm"] = w.hs_norm;
      j["circulant_count"] = w.circulant_count;
      j["backend"] = w.spectrum.backend_info;
      write_points_csv(config.out / "trials" / (trial_stem(t.n, t.seed) + "_eigenvalues.csv"),
                       w.spectrum.eigenvalues);
    } else {
      j["error"] = t.error;
      failures.push_back({{"N", t.n}, {"seed", t.seed}, {"error", t.error}});
    }
    write_json_file(config.out / "trials" / (trial_stem(t.n, t.seed) + ".json"), j);
  }

  Json sizes = Json::array();
  for (const SizeAggregate& s : report.sizes) {
    Json q = Json::object();
    for (std::size_t i = 0; i < s.quantile_levels.size(); ++i)
      q[format_double(s.quantile_levels[i])] = s.distance_quantiles[i];
    sizes.push_back({{"N", s.n},
                     {"delta", s.delta},
                     {"trials", s.trials},
                     {"failures", s.failures},
                     {"weyl_prediction", s.weyl_prediction},
                     {"mean_count", s.mean_count},
                     {"mean_normalized_error", s.mean_error},
                     {"max_normalized_error", s.max_error},
                     {"success_fraction", s.success_fraction},
                     {"mean_circulant_count", s.mean_circulant_count},
                     {"distance_quantiles", q},
                     {"near_curve_fraction", s.near_curve_fraction},
                     {"distance_histogram", histogram_json(s.histogram)}});
  }
  const Json aggregate = {{"arc_measure", report.arc_measure},
                          {"curve_diameter", report.curve_diameter},
                          {"error_threshold", config.error_threshold},
                          {"conditions", conditions_json(report.conditions)},
                          {"sizes", sizes},
                          {"failures", failures}};
  write_json_file(config.out / "aggregate.json", aggregate);
  log << "[weyl] wrote " << config.out.string() << '\n';
}

void cmd_grushin_verify(const RunConfig& config, std::ostream& log) {
  check_common(config);
  for (int n : config.sizes)
    if (n > 256) throw ConfigError("grushin-verify is limited to N <= 256");
  if (config.grid < 1) throw ConfigError("grid must be >= 1");
  const Symbol symbol = resolve_symbol(config);
  const SymbolCurve curve(symbol, config.curve_samples);

  std::vector<Complex> candidates = config.z;
  if (candidates.empty()) {
    double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
    for (const Complex& w : curve.samples()) {
      x0 = std::min(x0, w.real());
      x1 = std::max(x1, w.real());
      y0 = std::min(y0, w.imag());
      y1 = std::max(y1, w.imag());
    }
    const int g = config.grid;
    for (int a = 0; a < g; ++a)
      for (int b = 0; b < g; ++b) {
        const double u = g == 1 ? 0.5 : static_cast<double>(a) / (g - 1);
        const double v = g == 1 ? 0.5 : static_cast<double>(b) / (g - 1);
        candidates.emplace_back(x0 - 1.0 + u * (x1 - x0 + 2.0), y0 - 1.0 + v * (y1 - y0 + 2.0));
      }
  }
  std::vector<Complex> points;
  for (const Complex& z : candidates)
    if (curve.distance(z) >= config.alpha) points.push_back(z);
  prepare_output(config);
  log << "[grushin-verify] " << points.size() << " of " << candidates.size() << " z-points with margin >= "
      << config.alpha << '\n';

  struct Cell {
    int n;
    Complex z;
    Json record;
  };
  std::vector<Cell> cells;
  for (int n : config.sizes)
    for (const Complex& z : points) cells.push_back({n, z, {}});
  std::vector<GaussianSample> samples;
  for (int n : config.sizes) samples.push_back(sample_gaussian(n, config.seed));

  parallel_for(cells.size(), thread_count_from_env(), [&](std::size_t i) {
    Cell& c = cells[i];
    const auto which = static_cast<std::size_t>(
        std::find(config.sizes.begin(), config.sizes.end(), c.n) - config.sizes.begin());
    Json r = {{"z_re", c.z.real()}, {"z_im", c.z.imag()}, {"N", c.n}, {"M", config.m}};
    try {
      const LadderReport l =
          determinant_ladder(symbol, c.n, config.m, c.z, delta_for(config, c.n), samples[which].q, config.tau);
      r["tau"] = l.tau;
      r["k"] = l.k;
      r["residual_a"] = l.residual_a;
      r["residual_b"] = l.residual_b;
      r["residual_c"] = l.residual_c;
      r["r_of_z"] = l.r_of_z;
      r["dN"] = l.d_n;
      r["epsM"] = l.epsilon_m;
    } catch (const Error& e) {
      r["error"] = e.what();
    }
    c.record = std::move(r);
  });

  std::ofstream out(config.out / "residuals.jsonl");
  if (!out) throw FormatError("cannot write residuals.jsonl");
  for (const Cell& c : cells) out << c.record.dump() << '\n';
  log << "[grushin-verify] wrote " << cells.size() << " records\n";
}

void cmd_potential(const RunConfig& config, std::ostream& log) {
  check_common(config);
  if (config.z.empty()) throw ConfigError("potential needs at least one --z");
  const Symbol symbol = resolve_symbol(config);
  for (const Complex& z : config.z)
    if (curve_distance(symbol, z) <= 1e-10 * (1.0 + std::abs(z)))
      throw ConfigError("z = " + format_double(z.real()) + "," + format_double(z.imag()) + " lies on the curve");
  prepare_output(config);

  std::vector<PotentialEstimate> limits;
  for (const Complex& z : config.z) limits.push_back(log_potential_limit(symbol, z));

  struct Cell {
    int n;
    int trial;
    std::vector<double> empirical;
    std::vector<double> via_det;
  };
  std::vector<Cell> cells;
  for (int n : config.sizes)
    for (int t = 0; t < config.trials; ++t) cells.push_back({n, t, {}, {}});
  const int threads = thread_count_from_env();
  parallel_for(cells.size(), threads, [&](std::size_t i) {
    Cell& c = cells[i];
    const auto sample = sample_gaussian(c.n, config.seed + static_cast<std::uint64_t>(c.trial));
    const DenseComplexMatrix a = perturb(build_toeplitz(symbol, c.n), sample.q, delta_for(config, c.n));
    const SpectrumResult eig = eigenvalues(a);
    for (const Complex& z : config.z) {
      c.empirical.push_back(log_potential_empirical(eig, z));
      const DenseComplexMatrix shifted = a - z * DenseComplexMatrix::Identity(c.n, c.n);
      c.via_det.push_back(-log_abs_det(shifted) / c.n);
    }
  });
  log << "[potential] " << cells.size() << " spectra\n";

  std::ofstream out(config.out / "potential.csv");
  if (!out) throw FormatError("cannot write potential.csv");
  out << "z_re,z_im,N,trials,U_empirical,U_logdet,U_limit,difference\n";
  for (int n : config.sizes)
    for (std::size_t k = 0; k < config.z.size(); ++k) {
      double emp = 0.0;
      double det = 0.0;
      for (const Cell& c : cells)
        if (c.n == n) {
          emp += c.empirical[k];
          det += c.via_det[k];
        }
      emp /= config.trials;
      det /= config.trials;
      out << format_double(config.z[k].real()) << ',' << format_double(config.z[k].imag()) << ',' << n << ','
          << config.trials << ',' << format_double(emp) << ',' << format_double(det) << ','
          << format_double(limits[k].value) << ',' << format_double(emp - limits[k].value) << '\n';
    }
  log << "[potential] wrote " << config.out.string() << '\n';
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectra of randomly perturbed non-normal Toeplitz matrices", "tnlab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  struct Flags {
    std::string preset, symbol_file, sizes, domain, config_file, out, dump;
    int m = 0, trials = 0, grid = 0;
    double delta = 0, tau = 0, alpha = 0, threshold = 0;
    std::uint64_t seed = 0;
    std::size_t curve_samples = 0;
    std::vector<std::string> z;
    bool reflect = false;
  } f;

  struct Bound {
    CLI::App* cmd;
    std::map<std::string, CLI::Option*> opt;
  };
  std::vector<Bound> commands;
  auto add = [&](const std::string& name, const std::string& help) {
    CLI::App* c = app.add_subcommand(name, help);
    Bound b{c, {}};
    auto* preset = c->add_option("--preset", f.preset, "symbol preset: jordan, bidiag(a,b), exp1, exp1_2");
    auto* symbol = c->add_option("--symbol", f.symbol_file, "symbol JSON file");
    preset->excludes(symbol);
    b.opt["preset"] = preset;
    b.opt["symbol"] = symbol;
    b.opt["N"] = c->add_option("--N", f.sizes, "matrix sizes, comma separated");
    b.opt["M"] = c->add_option("--M", f.m, "border size of the circulant embedding");
    b.opt["delta"] = c->add_option("--delta", f.delta, "perturbation strength (default min(1e-8, N^-2))");
    b.opt["seed"] = c->add_option("--seed", f.seed, "master seed (trial i uses seed + i)");
    b.opt["trials"] = c->add_option("--trials", f.trials, "number of seeds");
    b.opt["domain"] = c->add_option("--domain", f.domain, "domain JSON text or file");
    b.opt["out"] = c->add_option("--out", f.out, "output directory");
    b.opt["tau"] = c->add_option("--tau", f.tau, "singular value threshold");
    b.opt["alpha"] = c->add_option("--alpha", f.alpha, "curve margin for z-grids");
    b.opt["z"] = c->add_option("--z", f.z, "evaluation point 're' or 're,im'; repeatable");
    b.opt["grid"] = c->add_option("--grid", f.grid, "z-grid points per axis");
    b.opt["curve_samples"] = c->add_option("--curve-samples", f.curve_samples, "symbol curve sample count");
    b.opt["threshold"] = c->add_option("--error-threshold", f.threshold, "success threshold on the normalized error");
    b.opt["dump"] = c->add_option("--dump-matrix", f.dump, "also dump P_N^delta as csv or binary")
                        ->check(CLI::IsMember({"csv", "binary"}));
    b.opt["reflect"] = c->add_flag("--reflect-tail", f.reflect, "reflect the analytic tail (nu -> -nu)");
    b.opt["config"] = c->add_option("--config", f.config_file, "experiment config JSON");
    commands.push_back(std::move(b));
  };
  add("spectrum", "eigenvalues of P_N + delta Q with the symbol curve");
  add("weyl", "Monte Carlo eigenvalue counts against the Weyl prediction");
  add("grushin-verify", "determinant identities of the Grushin problems on a z-grid");
  add("potential", "empirical and limiting logarithmic potentials");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    const auto it = std::find_if(commands.begin(), commands.end(), [](const Bound& b) { return b.cmd->parsed(); });
    const Bound& b = *it;
    auto given = [&](const char* key) { return b.opt.at(key)->count() > 0; };

    RunConfig config;
    config.command = b.cmd->get_name();
    if (given("config")) config = RunConfig::from_json(read_json_file(f.config_file), config);
    config.command = b.cmd->get_name();
    if (given("preset")) config.symbol = f.preset;
    if (given("symbol")) config.symbol = read_json_file(f.symbol_file);
    if (given("reflect") && f.reflect) config.reflect_tail = true;
    if (given("N")) config.sizes = parse_size_list(f.sizes);
    if (given("M")) config.m = f.m;
    if (given("delta")) config.delta = f.delta;
    if (given("seed")) config.seed = f.seed;
    if (given("trials")) config.trials = f.trials;
    if (given("domain")) {
      const auto first = f.domain.find_first_not_of(" \t\n");
      if (first != std::string::npos && f.domain[first] == '{') {
        try {
          config.domain = Json::parse(f.domain);
        } catch (const Json::exception& e) {
          throw ConfigError(std::string("invalid --domain JSON: ") + e.what());
        }
      } else {
        config.domain = read_json_file(f.domain);
      }
    }
    if (given("out")) config.out = f.out;
    if (given("tau")) config.tau = f.tau;
    if (given("alpha")) config.alpha = f.alpha;
    if (given("z")) {
      config.z.clear();
      for (const auto& s : f.z) config.z.push_back(parse_complex(s));
    }
    if (given("grid")) config.grid = f.grid;
    if (given("curve_samples")) config.curve_samples = f.curve_samples;
    if (given("threshold")) config.error_threshold = f.threshold;
    if (given("dump")) config.dump_matrix = f.dump;
    // validate the symbol and domain before any work starts
    (void)resolve_symbol(config);
    if (config.domain) (void)domain_from_json(*config.domain);

    if (config.command == "spectrum") cmd_spectrum(config, err);
    if (config.command == "weyl") cmd_weyl(config, err);
    if (config.command == "grushin-verify") cmd_grushin_verify(config, err);
    if (config.command == "potential") cmd_potential(config, err);
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "tnlab: configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InvalidArgument& e) {
    err << "tnlab: invalid argument: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DomainConditionsFailed& e) {
    err << "tnlab: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "tnlab: solver error: " << e.what() << '\n';
    return kExitSolver;
  }
}

}  // namespace tnlab::app
