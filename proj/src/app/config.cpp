#include "tnlab/app/config.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <sstream>

#include "tnlab/errors.hpp"

namespace tnlab::app {

namespace {

double to_double(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::logic_error&) {
  }
  throw ConfigError("not a number: '" + s + "'");
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

template <typename T>
T get(const Json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    throw ConfigError(std::string("config field '") + key + "' has the wrong type");
  }
}

}  // namespace

Json RunConfig::to_json() const {
  Json z_list = Json::array();
  for (const Complex& p : z) z_list.push_back({p.real(), p.imag()});
  Json j = {
      {"command", command},
      {"symbol", symbol},
      {"reflect_tail", reflect_tail},
      {"N", sizes},
      {"M", m},
      {"delta", delta ? Json(*delta) : Json("auto")},
      {"seed0", seed},
      {"trials", trials},
      {"domain", domain ? *domain : Json(nullptr)},
      {"tau", tau ? Json(*tau) : Json("auto")},
      {"alpha", alpha},
      {"z", z_list},
      {"grid", grid},
      {"curve_samples", curve_samples},
      {"error_threshold", error_threshold},
      {"dump_matrix", dump_matrix},
  };
  return j;
}

RunConfig RunConfig::from_json(const Json& j, RunConfig base) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  RunConfig c = std::move(base);
  if (j.contains("command")) c.command = get<std::string>(j, "command");
  if (j.contains("symbol")) {
    if (!j["symbol"].is_string() && !j["symbol"].is_object()) throw ConfigError("'symbol' must be a name or object");
    c.symbol = j["symbol"];
  }
  if (j.contains("reflect_tail")) c.reflect_tail = get<bool>(j, "reflect_tail");
  if (j.contains("N")) {
    c.sizes = j["N"].is_array() ? get<std::vector<int>>(j, "N") : std::vector<int>{get<int>(j, "N")};
  }
  if (j.contains("M")) c.m = get<int>(j, "M");
  if (j.contains("delta")) {
    if (j["delta"].is_string() && j["delta"] == "auto") {
      c.delta.reset();
    } else {
      c.delta = get<double>(j, "delta");
    }
  }
  if (j.contains("seed0")) c.seed = get<std::uint64_t>(j, "seed0");
  if (j.contains("seed")) c.seed = get<std::uint64_t>(j, "seed");
  if (j.contains("trials")) c.trials = get<int>(j, "trials");
  if (j.contains("domain")) {
    if (j["domain"].is_null()) {
      c.domain.reset();
    } else {
      c.domain = j["domain"];
    }
  }
  if (j.contains("tau")) {
    if (j["tau"].is_string() && j["tau"] == "auto") {
      c.tau.reset();
    } else {
      c.tau = get<double>(j, "tau");
    }
  }
  if (j.contains("alpha")) c.alpha = get<double>(j, "alpha");
  if (j.contains("z")) {
    c.z.clear();
    for (const Json& p : j["z"]) {
      if (p.is_number()) {
        c.z.emplace_back(p.get<double>(), 0.0);
      } else if (p.is_array() && p.size() == 2 && p[0].is_number() && p[1].is_number()) {
        c.z.emplace_back(p[0].get<double>(), p[1].get<double>());
      } else {
        throw ConfigError("'z' entries must be numbers or [re, im] pairs");
      }
    }
  }
  if (j.contains("grid")) c.grid = get<int>(j, "grid");
  if (j.contains("curve_samples")) c.curve_samples = get<std::size_t>(j, "curve_samples");
  if (j.contains("error_threshold")) c.error_threshold = get<double>(j, "error_threshold");
  if (j.contains("dump_matrix")) c.dump_matrix = get<std::string>(j, "dump_matrix");
  return c;
}

Symbol resolve_symbol(const RunConfig& config) {
  const Symbol s = symbol_from_json(config.symbol);
  return config.reflect_tail ? s.with_reflected_tail() : s;
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Json make_manifest(const RunConfig& config) {
  const Json effective = config.to_json();
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(fnv1a(effective.dump())));
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return {{"tool", "tnlab"},
          {"version", kToolVersion},
          {"command", config.command},
          {"config_hash", hash},
          {"seed", config.seed},
          {"timestamp", stamp},
          {"config", effective}};
}

Complex parse_complex(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) return {to_double(trim(text)), 0.0};
  return {to_double(trim(text.substr(0, comma))), to_double(trim(text.substr(comma + 1)))};
}

std::vector<int> parse_size_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const double v = to_double(trim(item));
    if (v < 1 || v != static_cast<int>(v)) throw ConfigError("N must be a positive integer, got '" + item + "'");
    out.push_back(static_cast<int>(v));
  }
  if (out.empty()) throw ConfigError("empty N list");
  return out;
}

}  // namespace tnlab::app
