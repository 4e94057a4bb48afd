#include "inls/io.hpp"

#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

#include "inls/errors.hpp"
#include "inls/ground_state.hpp"

namespace inls::io {

using ojson = nlohmann::ordered_json;

std::string initial_type_name(InitialType t) {
  switch (t) {
    case InitialType::gaussian: return "gaussian";
    case InitialType::ground_state_scaled: return "ground_state_scaled";
    case InitialType::file: return "file";
  }
  return "unknown";
}

namespace {

InitialType parse_initial_type(const std::string& name) {
  if (name == "gaussian") return InitialType::gaussian;
  if (name == "ground_state_scaled") return InitialType::ground_state_scaled;
  if (name == "file") return InitialType::file;
  throw ParseError("initial.type: unknown initial data '" + name + "'");
}

// Walks one config section and rejects keys outside `allowed`.
class Section {
 public:
  Section(const nlohmann::json& root, const std::string& name, const std::set<std::string>& allowed,
          bool required)
      : name_(name) {
    const auto it = root.find(name);
    if (it == root.end()) {
      if (required) throw ParseError("missing section '" + name + "'");
      return;
    }
    if (!it->is_object()) throw ParseError("section '" + name + "' must be an object");
    node_ = &*it;
    for (const auto& [key, value] : it->items()) {
      if (!allowed.contains(key)) throw ParseError("unknown key '" + name + "." + key + "'");
    }
  }

  bool has(const std::string& key) const { return node_ && node_->contains(key); }

  const nlohmann::json& at(const std::string& key) const {
    if (!has(key)) throw ParseError("missing key '" + path(key) + "'");
    return node_->at(key);
  }

  std::string path(const std::string& key) const { return name_ + "." + key; }

  double real(const std::string& key, std::optional<double> fallback = std::nullopt) const {
    if (!has(key)) {
      if (fallback) return *fallback;
      throw ParseError("missing key '" + path(key) + "'");
    }
    const auto& v = at(key);
    if (!v.is_number()) throw ParseError("key '" + path(key) + "' must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ParseError("key '" + path(key) + "' must be finite");
    return x;
  }

  long integer(const std::string& key, std::optional<long> fallback = std::nullopt) const {
    if (!has(key)) {
      if (fallback) return *fallback;
      throw ParseError("missing key '" + path(key) + "'");
    }
    const auto& v = at(key);
    if (!v.is_number_integer()) throw ParseError("key '" + path(key) + "' must be an integer");
    return v.get<long>();
  }

  std::string text(const std::string& key, std::optional<std::string> fallback = std::nullopt) const {
    if (!has(key)) {
      if (fallback) return *fallback;
      throw ParseError("missing key '" + path(key) + "'");
    }
    const auto& v = at(key);
    if (!v.is_string()) throw ParseError("key '" + path(key) + "' must be a string");
    return v.get<std::string>();
  }

  bool flag(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const auto& v = at(key);
    if (!v.is_boolean()) throw ParseError("key '" + path(key) + "' must be true or false");
    return v.get<bool>();
  }

  Rational rational(const std::string& key, std::optional<Rational> fallback = std::nullopt) const {
    if (!has(key)) {
      if (fallback) return *fallback;
      throw ParseError("missing key '" + path(key) + "'");
    }
    const auto& v = at(key);
    try {
      if (v.is_string()) return Rational::parse(v.get<std::string>());
      if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
      if (v.is_number_float()) {
        // shortest round-trip text, so 0.25 arrives as "0.25"
        std::array<char, 64> buf{};
        const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v.get<double>());
        return Rational::parse(std::string_view(buf.data(), static_cast<std::size_t>(res.ptr - buf.data())));
      }
    } catch (const ParseError& e) {
      throw ParseError("key '" + path(key) + "': " + e.what());
    }
    throw ParseError("key '" + path(key) + "' must be a rational (\"p/q\" or a number)");
  }

 private:
  std::string name_;
  const nlohmann::json* node_ = nullptr;
};

}  // namespace

GridSpec RunConfigFile::grid() const {
  return grid_kind == GridKind::radial ? GridSpec::radial(params.n, extent, points, stretch)
                                       : GridSpec::tensor(params.n, extent, points);
}

SimConfig RunConfigFile::sim_config() const {
  const GridSpec g = grid();
  const double b = params.b.to_double();
  SimConfig cfg{
      .grid = g,
      .weight = delta ? PotentialWeight{b, *delta} : PotentialWeight::with_default_delta(b, g),
      .sigma = sigma().to_double(),
      .lambda = lambda,
      .dt_init = dt_init,
      .t_end = t_end,
      .dt_min = dt_min,
      .blowup_ratio = blowup_ratio,
      .safety = safety,
      .record_every = record_every,
      .virial_radius = virial_radius,
      .dealias = dealias,
  };
  validate(cfg);
  return cfg;
}

RunConfigFile parse_config(const std::string& text) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ParseError("config must be a JSON object");
  const std::set<std::string> sections{"params", "grid", "weight", "time", "initial", "output"};
  for (const auto& [key, value] : root.items()) {
    if (!sections.contains(key)) throw ParseError("unknown key '" + key + "'");
  }

  RunConfigFile cfg;
  const Section params(root, "params", {"n", "s", "b", "sigma", "lambda"}, true);
  const long n = params.integer("n");
  if (n < 1 || n > 64) throw ParseError("params.n must be a positive dimension");
  cfg.params.n = static_cast<int>(n);
  cfg.params.s = params.rational("s", Rational(1));
  cfg.params.b = params.rational("b");
  cfg.lambda = params.real("lambda", -1.0);
  cfg.params.coupling = cfg.lambda < 0.0 ? exponents::Coupling::focusing : exponents::Coupling::defocusing;
  const bool sigma_auto = !params.has("sigma") || (params.at("sigma").is_string() &&
                                                   params.at("sigma").get<std::string>() == "auto");
  if (!sigma_auto) cfg.params.sigma = params.rational("sigma");
  exponents::validate(cfg.params);
  if (sigma_auto) {
    const ExtendedRational crit = exponents::sigma_critical(cfg.params.n, cfg.params.s, cfg.params.b);
    if (crit.is_infinite()) {
      throw ParseError("params.sigma: \"auto\" needs s < n/2 (the critical power is infinite otherwise)");
    }
    if (crit.value().sign() <= 0) throw ParseError("params.sigma: \"auto\" gives a non-positive power");
    cfg.params.sigma = crit.value();
  }

  const Section grid(root, "grid", {"kind", "extent", "r_max", "points", "stretch", "dealias"}, true);
  cfg.grid_kind = parse_grid_kind(grid.text("kind"));
  const char* extent_key = cfg.grid_kind == GridKind::radial ? "r_max" : "extent";
  const char* other_key = cfg.grid_kind == GridKind::radial ? "extent" : "r_max";
  if (grid.has(other_key)) {
    throw ParseError("key 'grid." + std::string(other_key) + "' does not apply to a " +
                     grid_kind_name(cfg.grid_kind) + " grid");
  }
  cfg.extent = grid.real(extent_key);
  const long points = grid.integer("points");
  if (points < 1) throw ParseError("grid.points must be positive");
  cfg.points = static_cast<std::size_t>(points);
  cfg.dealias = grid.flag("dealias", false);
  if (grid.has("stretch") && cfg.grid_kind != GridKind::radial) {
    throw ParseError("key 'grid.stretch' does not apply to a tensor grid");
  }
  cfg.stretch = grid.real("stretch", 1.0);
  (void)cfg.grid();  // shape validation

  const Section weight(root, "weight", {"delta"}, false);
  if (weight.has("delta")) {
    const auto& d = weight.at("delta");
    if (d.is_string()) {
      if (d.get<std::string>() != "auto") throw ParseError("weight.delta must be \"auto\" or a number");
    } else {
      cfg.delta = weight.real("delta");
      if (*cfg.delta < 0.0) throw ParseError("weight.delta must be >= 0");
    }
  }

  const Section time(root, "time",
                     {"dt_init", "dt_min", "t_end", "record_every", "blowup_ratio", "safety", "virial_radius"}, true);
  cfg.dt_init = time.real("dt_init");
  cfg.t_end = time.real("t_end");
  cfg.dt_min = time.real("dt_min", cfg.dt_init * 1e-9);
  cfg.record_every = static_cast<int>(time.integer("record_every", 1));
  cfg.blowup_ratio = time.real("blowup_ratio", 1e3);
  cfg.safety = time.real("safety", 0.1);
  if (time.has("virial_radius")) cfg.virial_radius = time.real("virial_radius");

  const Section initial(root, "initial", {"type", "amplitude", "width", "scale_c", "eps", "path"}, false);
  cfg.initial.type = parse_initial_type(initial.text("type", "gaussian"));
  cfg.initial.amplitude = initial.real("amplitude", 1.0);
  cfg.initial.width = initial.real("width", 1.0);
  cfg.initial.scale_c = initial.real("scale_c", 1.0);
  cfg.initial.eps = initial.real("eps", 1.0);
  cfg.initial.path = initial.text("path", "");
  if (cfg.initial.type == InitialType::file && cfg.initial.path.empty()) {
    throw ParseError("initial.path is required for file initial data");
  }
  if (!(cfg.initial.width > 0.0)) throw ParseError("initial.width must be > 0");
  if (!(cfg.initial.eps > 0.0)) throw ParseError("initial.eps must be > 0");

  const Section output(root, "output", {"directory", "dump_fields"}, false);
  cfg.output.directory = output.text("directory", "runs");
  cfg.output.dump_fields = output.flag("dump_fields", false);

  (void)cfg.sim_config();  // cross-field validation
  return cfg;
}

RunConfigFile load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const RunConfigFile& cfg) {
  ojson j;
  j["params"] = {{"n", cfg.params.n},
                 {"s", cfg.params.s.str()},
                 {"b", cfg.params.b.str()},
                 {"sigma", cfg.sigma().str()},
                 {"lambda", cfg.lambda}};
  ojson grid = {{"kind", grid_kind_name(cfg.grid_kind)}};
  grid[cfg.grid_kind == GridKind::radial ? "r_max" : "extent"] = cfg.extent;
  grid["points"] = cfg.points;
  if (cfg.grid_kind == GridKind::radial) grid["stretch"] = cfg.stretch;
  grid["dealias"] = cfg.dealias;
  j["grid"] = grid;
  j["weight"] = {{"delta", cfg.delta ? ojson(*cfg.delta) : ojson("auto")}};
  ojson time = {{"dt_init", cfg.dt_init},         {"dt_min", cfg.dt_min},
                {"t_end", cfg.t_end},             {"record_every", cfg.record_every},
                {"blowup_ratio", cfg.blowup_ratio}, {"safety", cfg.safety}};
  if (cfg.virial_radius) time["virial_radius"] = *cfg.virial_radius;
  j["time"] = time;
  j["initial"] = {{"type", initial_type_name(cfg.initial.type)},
                  {"amplitude", cfg.initial.amplitude},
                  {"width", cfg.initial.width},
                  {"scale_c", cfg.initial.scale_c},
                  {"eps", cfg.initial.eps},
                  {"path", cfg.initial.path}};
  j["output"] = {{"directory", cfg.output.directory}, {"dump_fields", cfg.output.dump_fields}};
  return dump_json(j);
}

Field make_initial(const RunConfigFile& cfg) {
  const GridSpec g = cfg.grid();
  const InitialSpec& ini = cfg.initial;
  switch (ini.type) {
    case InitialType::gaussian: {
      const double a = ini.amplitude;
      const double two_w2 = 2.0 * ini.width * ini.width;
      return Field::sample(g, [a, two_w2](std::span<const double> x) {
        double r2 = 0.0;
        for (double c : x) r2 += c * c;
        return cplx(a * std::exp(-r2 / two_w2), 0.0);
      });
    }
    case InitialType::ground_state_scaled: {
      if (cfg.params.n < 3) throw ParseError("ground_state_scaled initial data needs n >= 3");
      const ground_state::GroundStateProfile profile(cfg.params.n, cfg.params.b.to_double(), ini.eps);
      const double edge = g.is_radial() ? g.extent() : 0.5 * g.extent();
      const double shift = ground_state::w_eval(profile, edge);
      const double c = ini.scale_c;
      return Field::sample(g, [&profile, shift, c](std::span<const double> x) {
        double r2 = 0.0;
        for (double v : x) r2 += v * v;
        return cplx(c * std::max(ground_state::w_eval(profile, std::sqrt(r2)) - shift, 0.0), 0.0);
      });
    }
    case InitialType::file: {
      Field u = load_field(ini.path);
      if (!(u.grid == g)) throw ParseError("initial.path: field dump grid differs from the configured grid");
      return u;
    }
  }
  throw std::logic_error("unhandled initial type");
}

namespace {

void put_le(std::ostream& os, double x) {
  std::uint64_t bits = 0;
  std::memcpy(&bits, &x, sizeof bits);
  std::array<char, 8> bytes{};
  for (int i = 0; i < 8; ++i) bytes[static_cast<std::size_t>(i)] = static_cast<char>((bits >> (8 * i)) & 0xffu);
  os.write(bytes.data(), 8);
}

double get_le(std::istream& is) {
  std::array<unsigned char, 8> bytes{};
  is.read(reinterpret_cast<char*>(bytes.data()), 8);
  if (is.gcount() != 8) throw ParseError("field dump: truncated payload");
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(bytes[static_cast<std::size_t>(i)]) << (8 * i);
  double x = 0.0;
  std::memcpy(&x, &bits, sizeof x);
  return x;
}

}  // namespace

void write_field(std::ostream& os, const Field& u) {
  ojson header = {{"format", "inls-field"},
                  {"version", 1},
                  {"kind", grid_kind_name(u.grid.kind())},
                  {"dim", u.grid.dim()},
                  {"extent", u.grid.extent()},
                  {"points", u.grid.points()},
                  {"time", u.time_tag},
                  {"stretch", u.grid.stretch()},
                  {"count", u.values.size()},
                  {"encoding", "f64le re,im"}};
  os << dump_json(header, -1) << '\n';
  for (const cplx& z : u.values) {
    put_le(os, z.real());
    put_le(os, z.imag());
  }
  if (!os) throw std::runtime_error("field dump: write failed");
}

Field read_field(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ParseError("field dump: missing header");
  nlohmann::json h;
  try {
    h = nlohmann::json::parse(line);
    if (h.at("format") != "inls-field" || h.at("version") != 1) throw ParseError("field dump: unknown format");
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("field dump: bad header: ") + e.what());
  }
  const GridKind kind = parse_grid_kind(h.at("kind").get<std::string>());
  const int dim = h.at("dim").get<int>();
  const double extent = h.at("extent").get<double>();
  const auto points = h.at("points").get<std::size_t>();
  const GridSpec g = kind == GridKind::radial ? GridSpec::radial(dim, extent, points, h.value("stretch", 1.0))
                                              : GridSpec::tensor(dim, extent, points);
  if (h.at("count").get<std::size_t>() != g.size()) throw ParseError("field dump: count does not match grid");
  std::vector<cplx> values(g.size());
  for (cplx& z : values) {
    const double re = get_le(is);
    const double im = get_le(is);
    z = cplx(re, im);
  }
  return Field(g, std::move(values), h.at("time").get<double>());
}

void save_field(const std::filesystem::path& path, const Field& u) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write field dump '" + path.string() + "'");
  write_field(out, u);
}

Field load_field(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open field dump '" + path.string() + "'");
  return read_field(in);
}

const std::vector<std::string> kCsvColumns{
    "t",          "mass",           "energy",  "h1dot_sq", "weighted_potential", "variance",
    "virial_rhs", "localized_virial", "boundary_mass_fraction", "dt", "max_amp"};

std::string csv_header() {
  std::string out;
  for (std::size_t i = 0; i < kCsvColumns.size(); ++i) {
    if (i) out += ',';
    out += kCsvColumns[i];
  }
  return out;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::array<char, 40> buf{};
  std::snprintf(buf.data(), buf.size(), "%.17g", x);
  return buf.data();
}

std::string csv_row(const diagnostics::DiagnosticsRecord& rec) {
  auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
  std::string out;
  const std::array<std::string, 11> cells{format_double(rec.t),
                                          format_double(rec.mass),
                                          format_double(rec.energy),
                                          format_double(rec.h1dot_sq),
                                          format_double(rec.weighted_potential),
                                          opt(rec.variance),
                                          format_double(rec.virial_rhs),
                                          opt(rec.localized_virial),
                                          format_double(rec.boundary_mass_fraction),
                                          format_double(rec.dt),
                                          format_double(rec.max_amp)};
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += cells[i];
  }
  return out;
}

void write_series(std::ostream& os, const std::vector<diagnostics::DiagnosticsRecord>& series) {
  os << csv_header() << '\n';
  for (const auto& rec : series) os << csv_row(rec) << '\n';
}

namespace {

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string trim(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && s[i] == ' ') ++i;
  return s.substr(i);
}

}  // namespace

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw ParseError("missing column '" + name + "'");
}

std::vector<double> CsvTable::values(const std::string& name) const {
  const std::size_t c = column(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(row[c]);
  return out;
}

CsvTable read_csv(std::istream& is) {
  CsvTable table;
  std::string line;
  if (!std::getline(is, line)) throw ParseError("empty CSV");
  for (auto& c : split_commas(line)) table.columns.push_back(trim(c));
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto cells = split_commas(line);
    if (cells.size() != table.columns.size()) {
      throw ParseError("CSV line " + std::to_string(lineno) + ": expected " + std::to_string(table.columns.size()) +
                       " cells");
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& raw : cells) {
      const std::string cell = trim(raw);
      if (cell.empty()) {
        row.push_back(std::numeric_limits<double>::quiet_NaN());
        continue;
      }
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end != cell.c_str() + cell.size()) {
        throw ParseError("CSV line " + std::to_string(lineno) + ": not a number: '" + cell + "'");
      }
      row.push_back(v);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

namespace {

void emit(std::string& out, const ojson& j, int indent, int level) {
  const bool pretty = indent >= 0;
  auto newline = [&](int lvl) {
    if (!pretty) return;
    out += '\n';
    out.append(static_cast<std::size_t>(lvl * indent), ' ');
  };
  switch (j.type()) {
    case ojson::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(level + 1);
        out += ojson(it.key()).dump();
        out += pretty ? ": " : ":";
        emit(out, it.value(), indent, level + 1);
      }
      newline(level);
      out += '}';
      return;
    }
    case ojson::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ',';
        first = false;
        newline(level + 1);
        emit(out, v, indent, level + 1);
      }
      newline(level);
      out += ']';
      return;
    }
    case ojson::value_t::number_float: {
      const double x = j.get<double>();
      out += std::isfinite(x) ? format_double(x) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump_json(const ojson& j, int indent) {
  std::string out;
  emit(out, j, indent, 0);
  return out;
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::filesystem::path create_run_directory(const std::filesystem::path& root, const std::string& canonical_config) {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::array<char, 32> stamp{};
  std::strftime(stamp.data(), stamp.size(), "%Y%m%dT%H%M%SZ", &tm);
  std::ostringstream name;
  name << stamp.data() << '-' << std::hex << std::setw(16) << std::setfill('0') << fnv1a(canonical_config);
  std::filesystem::create_directories(root);
  const std::string base = name.str();
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const auto dir = root / (attempt == 0 ? base : base + "-" + std::to_string(attempt));
    if (std::filesystem::create_directory(dir)) return dir;
  }
  throw std::runtime_error("could not allocate a fresh run directory under " + root.string());
}

}  // namespace inls::io
