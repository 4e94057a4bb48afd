#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "inls/diagnostics.hpp"
#include "inls/errors.hpp"
#include "inls/field_ops.hpp"

using namespace inls;
using namespace inls::diagnostics;
using doctest::Approx;
using exponents::Symmetry;

namespace {

Field gaussian(const GridSpec& g, double amp) {
  return Field::sample(g, [=](std::span<const double> x) {
    double r2 = 0.0;
    for (double v : x) r2 += v * v;
    return cplx(amp * std::exp(-r2), 0.0);
  });
}

const ground_state::GroundStateQuantities& gs_3_half() {
  static const auto q = ground_state::compute_quantities(ground_state::GroundStateProfile(3, 0.5, 1.0));
  return q;
}

}  // namespace

TEST_CASE("energy and virial right-hand side") {
  CHECK(energy_from(4.0, 3.0, 1.0, -1.0) == Approx(2.0 - 1.0));
  CHECK(energy_from(4.0, 3.0, 1.0, 1.0) == Approx(3.0));
  // 8·2 - 4(3·1 + 1)/3 · 3
  CHECK(virial_rhs_from(2.0, 3.0, 3, 1.0, 0.5, -1.0) == Approx(16.0 - 16.0));
  CHECK(virial_rhs_from(2.0, 3.0, 3, 1.0, 0.5, 0.0) == Approx(16.0));
  // energy-critical σ = 3 (n = 3, b = 1/2): 4(nσ+2b)/(σ+2) = 8
  CHECK(virial_rhs_from(5.0, 7.0, 3, 3.0, 0.5, -1.0) == Approx(8.0 * (5.0 - 7.0)));
}

TEST_CASE("record fields") {
  SimConfig cfg{.grid = GridSpec::radial(3, 8.0, 400)};
  cfg.weight = {0.5, 0.0};
  cfg.sigma = 1.0;
  cfg.virial_radius = 2.0;
  const auto u = gaussian(cfg.grid, 0.8);
  const auto r = make_record(u, cfg, 0.25, 1e-3);
  CHECK(r.t == 0.25);
  CHECK(r.dt == 1e-3);
  CHECK(r.mass == Approx(mass(u)));
  CHECK(r.energy == Approx(energy(u, cfg)));
  CHECK(r.virial_rhs == Approx(virial_rhs(u, cfg)));
  REQUIRE(r.variance.has_value());
  REQUIRE(r.localized_virial.has_value());
  CHECK(*r.localized_virial < *r.variance);
  CHECK(r.max_amp == Approx(0.8).epsilon(1e-3));
  cfg.virial_radius.reset();
  CHECK_FALSE(make_record(u, cfg, 0.0, 1.0).localized_virial.has_value());
}

TEST_CASE("cutoff profile") {
  const auto a = theta_cutoff(0.5);
  CHECK(a.value == Approx(0.25));
  CHECK(a.first_derivative == Approx(1.0));
  CHECK(a.second_derivative == Approx(2.0));
  const auto b = theta_cutoff(1.5);
  CHECK(b.value == Approx(1.75));
  CHECK(b.first_derivative == Approx(1.0));
  CHECK(b.second_derivative == Approx(-2.0));
  const auto c = theta_cutoff(3.0);
  CHECK(c.value == 2.0);
  CHECK(c.first_derivative == 0.0);
  // C¹ at both joints
  for (double r0 : {1.0, 2.0}) {
    const auto lo = theta_cutoff(r0 - 1e-9), hi = theta_cutoff(r0 + 1e-9);
    CHECK(lo.value == Approx(hi.value).epsilon(1e-8));
    CHECK(lo.first_derivative == Approx(hi.first_derivative).epsilon(1e-7));
  }
  for (double r = 0.0; r < 4.0; r += 0.01) CHECK(theta_cutoff(r).second_derivative <= 2.0);
  CHECK_THROWS(theta_cutoff(-1.0));
}

TEST_CASE("localized weights") {
  const std::vector<double> x{3.0, 4.0};
  CHECK(phi_R_weight(x, 10.0) == Approx(25.0));
  CHECK(phi_R_weight(x, 2.0) == Approx(8.0));
  CHECK(cylindrical_phi_R(std::vector<double>{3.0}, 5.0, 10.0) == Approx(9.0 + 25.0));
  CHECK_THROWS(phi_R_weight(x, 1.0));
}

TEST_CASE("localized virial matches the variance for a compact field") {
  const auto g = GridSpec::radial(3, 6.0, 600);
  const auto u = gaussian(g, 1.0);
  CHECK(localized_virial(u, 5.0) == Approx(variance(u)).epsilon(1e-12));
  CHECK(localized_virial(u, 1.1) < variance(u));
  CHECK_THROWS(localized_virial(u, 5.0, true));
  const auto t = GridSpec::tensor(3, 10.0, 32);
  const auto v = gaussian(t, 1.0);
  CHECK(localized_virial(v, 4.0, true) == Approx(variance(v)).epsilon(1e-12));
}

TEST_CASE("ground-state threshold function") {
  const auto& gs = gs_3_half();
  CHECK(g_threshold(gs.h1dot(), gs) == Approx(gs.energy).epsilon(1e-9));
  CHECK(g_threshold(0.9 * gs.h1dot(), gs) < gs.energy);
  CHECK(g_threshold(1.1 * gs.h1dot(), gs) < gs.energy);
  CHECK_THROWS(g_threshold(-1.0, gs));
}

TEST_CASE("classification from scalars") {
  const auto& gs = gs_3_half();
  CHECK(classify_scalars(-1.0, 1.0, gs, Symmetry::radial).blowup_case == BlowupCase::negative_energy);
  const auto r = classify_scalars(0.5 * gs.energy, 1.2 * gs.h1dot(), gs, Symmetry::radial);
  CHECK(r.blowup_case == BlowupCase::below_ground_state_above_norm);
  REQUIRE(r.delta.has_value());
  CHECK(*r.delta == Approx(0.5));
  CHECK(classify_scalars(0.5 * gs.energy, 0.8 * gs.h1dot(), gs, Symmetry::radial).blowup_case ==
        BlowupCase::no_verdict);
  CHECK(classify_scalars(1.1 * gs.energy, 1.2 * gs.h1dot(), gs, Symmetry::radial).blowup_case ==
        BlowupCase::no_verdict);
  CHECK_THROWS_AS(classify_scalars(-1.0, 1.0, gs, Symmetry::cylindrical), HypothesisError);
  CHECK(case_name(BlowupCase::negative_energy) != case_name(BlowupCase::no_verdict));
}

TEST_CASE("classification needs the focusing energy-critical setting") {
  SimConfig cfg{.grid = GridSpec::radial(3, 10.0, 200)};
  cfg.weight = {0.5, 0.0};
  cfg.sigma = 3.0;
  const auto u = gaussian(cfg.grid, 1.0);
  CHECK_NOTHROW(classify_blowup(u, cfg, gs_3_half(), Symmetry::radial));
  auto bad = cfg;
  bad.lambda = 1.0;
  CHECK_THROWS_AS(classify_blowup(u, bad, gs_3_half(), Symmetry::radial), HypothesisError);
  bad = cfg;
  bad.sigma = 2.0;
  CHECK_THROWS_AS(classify_blowup(u, bad, gs_3_half(), Symmetry::radial), HypothesisError);
  const auto other = ground_state::compute_quantities(ground_state::GroundStateProfile(3, 1.0, 1.0));
  CHECK_THROWS_AS(classify_blowup(u, cfg, other, Symmetry::radial), std::invalid_argument);
  // a large Gaussian has negative energy
  CHECK(classify_blowup(gaussian(cfg.grid, 3.0), cfg, gs_3_half(), Symmetry::radial).blowup_case ==
        BlowupCase::negative_energy);
}

TEST_CASE("second differences") {
  const std::vector<double> t{0.0, 0.1, 0.3, 0.35, 0.8};
  std::vector<double> v;
  for (double s : t) v.push_back(3.0 * s * s - s + 2.0);
  const auto d = second_differences(t, v);
  REQUIRE(d.size() == 3);
  for (double x : d) CHECK(x == Approx(6.0).epsilon(1e-10));
  CHECK_THROWS_WITH(second_differences(std::vector<double>{0, 1}, std::vector<double>{0, 1}),
                    "need >= 3 samples");
  CHECK_THROWS(second_differences(std::vector<double>{0, 1, 1}, std::vector<double>{0, 1, 2}));
}
