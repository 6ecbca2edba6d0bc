#include "tnlab/io.hpp"

#include <bit>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "tnlab/errors.hpp"

namespace tnlab {

namespace {

constexpr char kMagic[4] = {'T', 'N', 'L', 'B'};
constexpr std::uint32_t kBinaryVersion = 1;

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode = {}) {
  std::ofstream out(path, mode | std::ios::out | std::ios::trunc);
  if (!out) throw FormatError("cannot open '" + path.string() + "' for writing");
  return out;
}

std::ifstream open_in(const std::filesystem::path& path, std::ios::openmode mode = {}) {
  std::ifstream in(path, mode | std::ios::in);
  if (!in) throw FormatError("cannot open '" + path.string() + "'");
  return in;
}

void put_u32(std::ostream& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_f64(std::ostream& out, double x) {
  const auto v = std::bit_cast<std::uint64_t>(x);
  for (int i = 0; i < 8; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xFF));
}

std::uint64_t get_le(std::istream& in, int bytes) {
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) {
    const int c = in.get();
    if (c == std::char_traits<char>::eof()) throw FormatError("truncated binary matrix");
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(c)) << (8 * i);
  }
  return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, sep)) out.push_back(cell);
  return out;
}

double parse_double(const std::string& s) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ptr != end || (ec != std::errc{} && ec != std::errc::result_out_of_range) || s.empty())
    throw FormatError("bad number '" + s + "'");
  if (ec == std::errc::result_out_of_range) v = std::strtod(s.c_str(), nullptr);
  return v;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

template <typename T>
T require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ConfigError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    throw ConfigError(std::string("field '") + key + "' has the wrong type");
  }
}

std::vector<PowerTerm> terms_from_json(const Json& list) {
  if (!list.is_array()) throw ConfigError("tail side must be an array");
  std::vector<PowerTerm> out;
  for (const Json& t : list)
    out.push_back({Complex{require<double>(t, "re"), require<double>(t, "im")}, require<double>(t, "s")});
  return out;
}

Json terms_to_json(const std::vector<PowerTerm>& terms) {
  Json out = Json::array();
  for (const PowerTerm& t : terms)
    out.push_back({{"re", t.coefficient.real()}, {"im", t.coefficient.imag()}, {"s", t.exponent}});
  return out;
}

}  // namespace

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_matrix_csv(const std::filesystem::path& path, const DenseComplexMatrix& a) {
  auto out = open_out(path);
  out << "row,col,re,im\n";
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c)
      out << r << ',' << c << ',' << format_double(a(r, c).real()) << ',' << format_double(a(r, c).imag()) << '\n';
  if (!out) throw FormatError("write failed for '" + path.string() + "'");
}

DenseComplexMatrix read_matrix_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw FormatError("empty matrix CSV");
  strip_cr(line);
  if (line != "row,col,re,im") throw FormatError("matrix CSV header must be 'row,col,re,im'");
  std::vector<std::tuple<long, long, Complex>> entries;
  long rows = 0;
  long cols = 0;
  while (std::getline(in, line)) {
    strip_cr(line);
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != 4) throw FormatError("matrix CSV line needs 4 fields: '" + line + "'");
    const double r = parse_double(cells[0]);
    const double c = parse_double(cells[1]);
    if (r < 0 || c < 0 || r != std::floor(r) || c != std::floor(c)) throw FormatError("bad matrix index");
    entries.emplace_back(static_cast<long>(r), static_cast<long>(c), Complex{parse_double(cells[2]), parse_double(cells[3])});
    rows = std::max(rows, static_cast<long>(r) + 1);
    cols = std::max(cols, static_cast<long>(c) + 1);
  }
  if (static_cast<std::size_t>(rows * cols) != entries.size()) throw FormatError("matrix CSV is not a full grid");
  DenseComplexMatrix a = DenseComplexMatrix::Zero(rows, cols);
  for (const auto& [r, c, v] : entries) a(r, c) = v;
  return a;
}

void write_matrix_binary(const std::filesystem::path& path, const DenseComplexMatrix& a) {
  auto out = open_out(path, std::ios::binary);
  out.write(kMagic, 4);
  put_u32(out, static_cast<std::uint32_t>(a.rows()));
  put_u32(out, static_cast<std::uint32_t>(a.cols()));
  put_u32(out, kBinaryVersion);
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      put_f64(out, a(r, c).real());
      put_f64(out, a(r, c).imag());
    }
  if (!out) throw FormatError("write failed for '" + path.string() + "'");
}

DenseComplexMatrix read_matrix_binary(const std::filesystem::path& path) {
  auto in = open_in(path, std::ios::binary);
  char magic[4];
  if (!in.read(magic, 4) || !std::equal(magic, magic + 4, kMagic)) throw FormatError("missing TNLB magic");
  const auto rows = static_cast<Eigen::Index>(get_le(in, 4));
  const auto cols = static_cast<Eigen::Index>(get_le(in, 4));
  if (get_le(in, 4) != kBinaryVersion) throw FormatError("unsupported binary matrix version");
  DenseComplexMatrix a(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) {
      const double re = std::bit_cast<double>(get_le(in, 8));
      const double im = std::bit_cast<double>(get_le(in, 8));
      a(r, c) = {re, im};
    }
  return a;
}

void write_points_csv(const std::filesystem::path& path, const std::vector<Complex>& points) {
  auto out = open_out(path);
  out << "re,im\n";
  for (const Complex& z : points) out << format_double(z.real()) << ',' << format_double(z.imag()) << '\n';
  if (!out) throw FormatError("write failed for '" + path.string() + "'");
}

std::vector<Complex> read_points_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw FormatError("empty CSV");
  strip_cr(line);
  if (line != "re,im") throw FormatError("CSV header must be 're,im'");
  std::vector<Complex> points;
  while (std::getline(in, line)) {
    strip_cr(line);
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != 2) throw FormatError("CSV line needs 2 fields: '" + line + "'");
    points.emplace_back(parse_double(cells[0]), parse_double(cells[1]));
  }
  return points;
}

Json symbol_to_json(const Symbol& symbol) {
  Json band = Json::array();
  for (const auto& [nu, a] : symbol.band().entries()) band.push_back({{"nu", nu}, {"re", a.real()}, {"im", a.imag()}});
  Json tail;
  if (symbol.tail().empty()) {
    tail = {{"kind", "none"}};
  } else {
    tail = {{"kind", "power_decay"},
            {"neg", terms_to_json(symbol.tail().negative)},
            {"pos", terms_to_json(symbol.tail().positive)}};
  }
  return {{"band", band}, {"tail", tail}};
}

Symbol symbol_from_json(const Json& j) {
  if (j.is_string()) return presets::by_name(j.get<std::string>());
  if (!j.is_object()) throw ConfigError("symbol must be a preset name or an object");
  BandCoefficients band;
  if (j.contains("band")) {
    if (!j["band"].is_array()) throw ConfigError("'band' must be an array");
    for (const Json& e : j["band"]) {
      const double nu = require<double>(e, "nu");
      if (nu != std::floor(nu) || std::abs(nu) > 1e9) throw ConfigError("band index must be an integer");
      try {
        band.insert(static_cast<int>(nu), {require<double>(e, "re"), require<double>(e, "im")});
      } catch (const InvalidArgument& err) {
        throw ConfigError(err.what());
      }
    }
  }
  TailRule tail;
  if (j.contains("tail") && !j["tail"].is_null()) {
    const Json& t = j["tail"];
    const auto kind = require<std::string>(t, "kind");
    if (kind == "power_decay") {
      if (t.contains("neg")) tail.negative = terms_from_json(t["neg"]);
      if (t.contains("pos")) tail.positive = terms_from_json(t["pos"]);
    } else if (kind != "none") {
      throw ConfigError("unknown tail kind '" + kind + "'");
    }
  }
  try {
    return Symbol(std::move(band), std::move(tail));
  } catch (const InvalidArgument& err) {
    throw ConfigError(err.what());
  }
}

Json domain_to_json(const Domain& domain) {
  if (domain.is_disc())
    return {{"disc", {{"cx", domain.center().real()}, {"cy", domain.center().imag()}, {"r", domain.radius()}}}};
  Json points = Json::array();
  for (const Complex& p : domain.control_points()) points.push_back({p.real(), p.imag()});
  return {{"parametric", {{"points", points}}}};
}

Domain domain_from_json(const Json& j) {
  try {
    if (j.is_object() && j.contains("disc")) {
      const Json& d = j["disc"];
      return Domain::disc({require<double>(d, "cx"), require<double>(d, "cy")}, require<double>(d, "r"));
    }
    if (j.is_object() && j.contains("parametric")) {
      const Json& pts = j["parametric"].at("points");
      std::vector<Complex> points;
      for (const Json& p : pts) {
        if (!p.is_array() || p.size() != 2) throw ConfigError("parametric points must be [x, y] pairs");
        points.emplace_back(p[0].get<double>(), p[1].get<double>());
      }
      return Domain::parametric(std::move(points));
    }
  } catch (const InvalidArgument& err) {
    throw ConfigError(err.what());
  } catch (const Json::exception& err) {
    throw ConfigError(std::string("bad domain: ") + err.what());
  }
  throw ConfigError("domain must have a 'disc' or 'parametric' key");
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& err) {
    throw ConfigError("invalid JSON in '" + path.string() + "': " + err.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  auto out = open_out(path);
  out << j.dump(2) << '\n';
  if (!out) throw FormatError("write failed for '" + path.string() + "'");
}

}  // namespace tnlab
