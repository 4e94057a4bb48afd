#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "inls/errors.hpp"
#include "inls/field_ops.hpp"
#include "inls/io.hpp"

using namespace inls;
using namespace inls::io;
using doctest::Approx;
namespace fs = std::filesystem;

namespace {

const char* kRadial = R"({
  "params": {"n": 3, "s": "1", "b": "1/2", "sigma": "auto", "lambda": -1},
  "grid": {"kind": "radial", "r_max": 10, "points": 256, "stretch": 1.002},
  "weight": {"delta": 0},
  "time": {"dt_init": 1e-3, "dt_min": 1e-9, "t_end": 0.5, "record_every": 5, "virial_radius": 3},
  "initial": {"type": "ground_state_scaled", "scale_c": 0.5, "eps": 2},
  "output": {"directory": "out", "dump_fields": true}
})";

const char* kTensor = R"({
  "params": {"n": 2, "b": 0.25, "sigma": "3/2", "lambda": 1},
  "grid": {"kind": "tensor", "extent": 12.5, "points": 32, "dealias": true},
  "time": {"dt_init": 0.01, "t_end": 1}
})";

std::string replace(std::string text, const std::string& from, const std::string& to) {
  const auto pos = text.find(from);
  REQUIRE(pos != std::string::npos);
  return text.replace(pos, from.size(), to);
}

fs::path scratch_dir(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("inls_test_io_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("parse a radial configuration") {
  const auto c = parse_config(kRadial);
  CHECK(c.params.n == 3);
  CHECK(c.sigma() == Rational(3));  // (4 - 1)/(3 - 2)
  CHECK(c.grid_kind == GridKind::radial);
  CHECK(c.stretch == 1.002);
  REQUIRE(c.delta.has_value());
  CHECK(*c.delta == 0.0);
  CHECK(c.record_every == 5);
  CHECK(c.initial.type == InitialType::ground_state_scaled);
  CHECK(c.initial.eps == 2.0);
  CHECK(c.output.dump_fields);
  const auto sim = c.sim_config();
  CHECK(sim.sigma == 3.0);
  CHECK(sim.weight.b == 0.5);
  CHECK(sim.grid == GridSpec::radial(3, 10.0, 256, 1.002));
  CHECK(sim.virial_radius == 3.0);
}

TEST_CASE("parse a tensor configuration with defaults") {
  const auto c = parse_config(kTensor);
  CHECK(c.params.s == Rational(1));
  CHECK(c.params.b == Rational(1, 4));
  CHECK(c.sigma() == Rational(3, 2));
  CHECK(c.lambda == 1.0);
  CHECK(c.dealias);
  CHECK_FALSE(c.delta.has_value());
  const auto sim = c.sim_config();
  CHECK(sim.weight.delta == Approx(12.5 / 32));
  CHECK(c.initial.type == InitialType::gaussian);
  CHECK(c.output.directory == "runs");
}

TEST_CASE("configuration round trip") {
  for (const char* text : {kRadial, kTensor}) {
    const auto a = parse_config(text);
    const std::string canon = serialize_config(a);
    const auto b = parse_config(canon);
    CHECK(serialize_config(b) == canon);
    CHECK(b.sigma() == a.sigma());
    CHECK(b.params.b == a.params.b);
    CHECK(b.sim_config().grid == a.sim_config().grid);
    CHECK(b.dt_min == a.dt_min);
  }
  CHECK(serialize_config(parse_config(kRadial)).find("\"3/1\"") != std::string::npos);
}

TEST_CASE("configuration errors name the key") {
  try {
    parse_config(replace(kRadial, "\"lambda\": -1", "\"lambda\": -1, \"lamda\": 2"));
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("lamda") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config(replace(kRadial, "\"output\"", "\"outptu\"")), ParseError);
  CHECK_THROWS_AS(parse_config("{not json"), ParseError);
  CHECK_THROWS_AS(parse_config(replace(kRadial, "r_max", "extent")), ParseError);
  CHECK_THROWS_AS(parse_config(replace(kTensor, "\"dealias\": true", "\"stretch\": 1.1")), ParseError);
  CHECK_THROWS_AS(parse_config(replace(kTensor, "\"points\": 32", "\"points\": 30")), ParseError);
  CHECK_THROWS_AS(parse_config(replace(kRadial, "\"s\": \"1\"", "\"s\": \"2\"")), ParseError);
  CHECK_THROWS_AS(parse_config(replace(kRadial, "\"type\": \"ground_state_scaled\"", "\"type\": \"file\"")),
                  ParseError);
}

TEST_CASE("initial data") {
  auto c = parse_config(kTensor);
  c.initial.amplitude = 2.0;
  c.initial.width = 1.5;
  const auto u = make_initial(c);
  // ‖A e^{-r²/(2w²)}‖² = A² π w² in two dimensions
  CHECK(mass(u) == Approx(4.0 * M_PI * 2.25).epsilon(1e-6));

  const auto r = parse_config(kRadial);
  const auto v = make_initial(r);
  const ground_state::GroundStateProfile w(3, 0.5, 2.0);
  const double edge = ground_state::w_eval(w, 10.0);
  for (std::size_t j : {0UL, 50UL, 255UL}) {
    const double x = r.grid().coordinate(j);
    CHECK(v.values[j].real() == Approx(0.5 * (ground_state::w_eval(w, x) - edge)));
  }
}

TEST_CASE("field dumps round trip exactly") {
  auto c = parse_config(kRadial);
  Field u = make_initial(c);
  u.values[7] = {-1.0 / 3.0, 1e-300};
  u.time_tag = 0.125;
  std::stringstream ss;
  write_field(ss, u);
  const std::string text = ss.str();
  CHECK(text.substr(0, text.find('\n')).find("\"inls-field\"") != std::string::npos);
  const Field back = read_field(ss);
  CHECK(back.grid == u.grid);
  CHECK(back.time_tag == 0.125);
  CHECK(back.values == u.values);

  const auto t = make_initial(parse_config(kTensor));
  const auto dir = scratch_dir("dump");
  save_field(dir / "f.bin", t);
  const Field tb = load_field(dir / "f.bin");
  CHECK(tb.grid == t.grid);
  CHECK(tb.values == t.values);

  std::stringstream broken(text.substr(0, text.size() - 5));
  CHECK_THROWS_AS(read_field(broken), ParseError);
}

TEST_CASE("csv output") {
  CHECK(csv_header() ==
        "t,mass,energy,h1dot_sq,weighted_potential,variance,virial_rhs,localized_virial,boundary_mass_fraction,dt,"
        "max_amp");
  diagnostics::DiagnosticsRecord rec;
  rec.t = 0.1;
  rec.mass = 1.0 / 3.0;
  rec.variance = 2.0;
  const std::string row = csv_row(rec);
  CHECK(row.rfind("0.10000000000000001,0.33333333333333331,", 0) == 0);
  // localized_virial is absent: an empty cell
  CHECK(row.find(",,") != std::string::npos);

  std::stringstream ss;
  write_series(ss, {rec, rec});
  const auto table = read_csv(ss);
  CHECK(table.columns == kCsvColumns);
  REQUIRE(table.rows.size() == 2);
  CHECK(table.values("mass")[1] == 1.0 / 3.0);
  CHECK(std::isnan(table.values("localized_virial")[0]));
  CHECK_THROWS_AS(table.column("nope"), ParseError);
}

TEST_CASE("number formatting") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(std::nan("")) == "nan");
  CHECK(format_double(-INFINITY) == "-inf");
  nlohmann::ordered_json j;
  j["x"] = 1.0 / 3.0;
  j["bad"] = std::nan("");
  j["n"] = 3;
  const std::string s = dump_json(j, -1);
  CHECK(s.find("0.33333333333333331") != std::string::npos);
  CHECK(s.find("null") != std::string::npos);
  CHECK(nlohmann::json::parse(s)["x"].get<double>() == 1.0 / 3.0);
}

TEST_CASE("run directories are never reused") {
  const auto root = scratch_dir("runs");
  std::set<fs::path> seen;
  for (int i = 0; i < 5; ++i) {
    const auto d = create_run_directory(root, "same config");
    CHECK(fs::is_directory(d));
    CHECK(seen.insert(d).second);
  }
  CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cULL);
}
