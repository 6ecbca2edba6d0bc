#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tnlab/io.hpp"
#include "tnlab/symbol.hpp"

namespace tnlab::app {

inline constexpr const char* kToolVersion = "1.0.0";

/// Effective parameters of one CLI run, after merging the config file and
/// the command-line flags.
struct RunConfig {
  std::string command;
  Json symbol = "jordan";  // preset name or symbol object
  bool reflect_tail = false;
  std::vector<int> sizes{256};
  int m = 8;
  std::optional<double> delta;  // "auto" = min(1e-8, N^-2)
  std::uint64_t seed = 1;
  int trials = 1;
  std::optional<Json> domain;
  std::filesystem::path out = ".";
  std::optional<double> tau;
  double alpha = 0.5;
  std::vector<Complex> z;
  int grid = 9;                  // z-grid points per axis for grushin-verify
  std::size_t curve_samples = 4096;
  double error_threshold = 0.1;
  std::string dump_matrix;       // "", "csv" or "binary"

  /// Every field with defaults materialized; from_json(to_json()) is the
  /// identity on the fields above (out excluded).
  [[nodiscard]] Json to_json() const;
  /// Reads the experiment config keys (symbol, N, M, delta, trials, seed0,
  /// domain, ...) on top of `base`. Throws ConfigError.
  static RunConfig from_json(const Json& j, RunConfig base);
  static RunConfig from_json(const Json& j) { return from_json(j, RunConfig{}); }
};

/// The configured symbol, reflected when reflect_tail is set.
Symbol resolve_symbol(const RunConfig& config);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes);

/// {tool, version, command, config_hash, seed, timestamp, config}.
Json make_manifest(const RunConfig& config);

/// Parses "re" or "re,im", e.g. "2" or "1.5,-0.3".
Complex parse_complex(const std::string& text);

/// Parses "128,256,512".
std::vector<int> parse_size_list(const std::string& text);

}  // namespace tnlab::app
