#pragma once

// File formats: matrix dumps, eigenvalue and curve tables, and the JSON
// encodings of symbols and domains.

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "tnlab/domain.hpp"
#include "tnlab/matrix.hpp"
#include "tnlab/symbol.hpp"

namespace tnlab {

using Json = nlohmann::json;

/// "%.17g": shortest form that round-trips every double.
std::string format_double(double x);

/// CSV with header `row,col,re,im`, one line per entry, row-major.
void write_matrix_csv(const std::filesystem::path& path, const DenseComplexMatrix& a);
DenseComplexMatrix read_matrix_csv(const std::filesystem::path& path);

/// 16-byte header: "TNLB", uint32 rows, uint32 cols, uint32 version (= 1),
/// then rows*cols little-endian (re, im) f64 pairs in row-major order.
void write_matrix_binary(const std::filesystem::path& path, const DenseComplexMatrix& a);
DenseComplexMatrix read_matrix_binary(const std::filesystem::path& path);

/// CSV `re,im`.
void write_points_csv(const std::filesystem::path& path, const std::vector<Complex>& points);
std::vector<Complex> read_points_csv(const std::filesystem::path& path);

/// {"band": [{"nu","re","im"}...], "tail": {"kind": "power_decay"|"none", "neg": [...], "pos": [...]}}
Json symbol_to_json(const Symbol& symbol);
/// Accepts the object form or a preset name string. Throws ConfigError.
Symbol symbol_from_json(const Json& j);

/// {"disc": {"cx","cy","r"}} or {"parametric": {"points": [[x, y], ...]}}.
Json domain_to_json(const Domain& domain);
Domain domain_from_json(const Json& j);

/// Throws ConfigError when the file cannot be read or parsed.
Json read_json_file(const std::filesystem::path& path);
/// Pretty-printed with two-space indent and a trailing newline.
void write_json_file(const std::filesystem::path& path, const Json& j);

}  // namespace tnlab
