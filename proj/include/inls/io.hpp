#pragma once

#include <filesystem>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "inls/diagnostics.hpp"
#include "inls/exponents.hpp"
#include "inls/grid.hpp"
#include "inls/sim_config.hpp"

namespace inls::io {

enum class InitialType { gaussian, ground_state_scaled, file };
std::string initial_type_name(InitialType t);

struct InitialSpec {
  InitialType type = InitialType::gaussian;
  /// Gaussian A·exp(-|x|²/(2w²)).
  double amplitude = 1.0;
  double width = 1.0;
  /// c·W_b with W_b at scale parameter eps, shifted so it vanishes at the
  /// domain edge.
  double scale_c = 1.0;
  double eps = 1.0;
  /// Field dump for type = file.
  std::string path;
};

struct OutputSpec {
  std::string directory = "runs";
  bool dump_fields = false;
};

/// Parsed run configuration. Sections: params, grid, weight, time, initial,
/// output. σ = "auto" is resolved on parsing to the critical power, so the
/// canonical form always carries an explicit "num/den".
struct RunConfigFile {
  exponents::CriticalityParams params;
  double lambda = -1.0;
  GridKind grid_kind = GridKind::tensor;
  double extent = 0.0;
  std::size_t points = 0;
  /// Radial cell-width ratio (1 = uniform).
  double stretch = 1.0;
  bool dealias = false;
  /// nullopt means one grid spacing.
  std::optional<double> delta;
  double dt_init = 1e-3;
  double dt_min = 1e-12;
  double t_end = 1.0;
  int record_every = 1;
  double blowup_ratio = 1e3;
  double safety = 0.1;
  std::optional<double> virial_radius;
  InitialSpec initial;
  OutputSpec output;

  const Rational& sigma() const { return *params.sigma; }
  GridSpec grid() const;
  SimConfig sim_config() const;
};

/// Throws ParseError naming the offending key for unknown or malformed keys.
RunConfigFile parse_config(const std::string& text);
RunConfigFile load_config(const std::filesystem::path& path);
/// Canonical JSON text; parse_config(serialize_config(c)) reproduces c.
std::string serialize_config(const RunConfigFile& cfg);

/// Initial field described by cfg.initial on cfg.grid().
Field make_initial(const RunConfigFile& cfg);

/// Field dump: one JSON header line, then size() little-endian binary64
/// (re, im) pairs.
void write_field(std::ostream& os, const Field& u);
Field read_field(std::istream& is);
void save_field(const std::filesystem::path& path, const Field& u);
Field load_field(const std::filesystem::path& path);

extern const std::vector<std::string> kCsvColumns;
std::string csv_header();
std::string csv_row(const diagnostics::DiagnosticsRecord& rec);
void write_series(std::ostream& os, const std::vector<diagnostics::DiagnosticsRecord>& series);

/// A CSV table of doubles; empty cells read as NaN.
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  /// Index of a column; throws ParseError when missing.
  std::size_t column(const std::string& name) const;
  std::vector<double> values(const std::string& name) const;
};
CsvTable read_csv(std::istream& is);

/// Formats a double with 17 significant digits ("null" when not finite).
std::string format_double(double x);
/// JSON text with every floating-point number at 17 significant digits.
std::string dump_json(const nlohmann::ordered_json& j, int indent = 2);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(const std::string& text);
/// Creates <root>/<UTC timestamp>-<config hash> (with a numeric suffix when
/// that already exists) and returns it. Never reuses a directory.
std::filesystem::path create_run_directory(const std::filesystem::path& root, const std::string& canonical_config);

}  // namespace inls::io
