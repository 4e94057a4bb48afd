#include "inls/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

#include "inls/errors.hpp"
#include "inls/field_ops.hpp"
#include "inls/kernels.hpp"

namespace inls::diagnostics {

double energy_from(double h1dot_sq, double weighted_potential, double sigma, double lambda) {
  return 0.5 * h1dot_sq + lambda / (sigma + 2.0) * weighted_potential;
}

double energy(const Field& u, const SimConfig& cfg) {
  const double pot = cfg.lambda == 0.0 ? 0.0 : weighted_potential_integral(u, cfg.weight, cfg.sigma);
  return energy_from(h1dot_sq(u), pot, cfg.sigma, cfg.lambda);
}

double virial_rhs_from(double h1dot_sq, double weighted_potential, int n, double sigma, double b,
                       double lambda) {
  return 8.0 * h1dot_sq + lambda * 4.0 * (n * sigma + 2.0 * b) / (sigma + 2.0) * weighted_potential;
}

double virial_rhs(const Field& u, const SimConfig& cfg) {
  const double pot = cfg.lambda == 0.0 ? 0.0 : weighted_potential_integral(u, cfg.weight, cfg.sigma);
  return virial_rhs_from(h1dot_sq(u), pot, cfg.dim(), cfg.sigma, cfg.weight.b, cfg.lambda);
}

DiagnosticsRecord make_record(const Field& u, const SimConfig& cfg, double t, double dt) {
  DiagnosticsRecord rec;
  rec.t = t;
  rec.dt = dt;
  rec.mass = mass(u);
  rec.h1dot_sq = h1dot_sq(u);
  rec.weighted_potential = weighted_potential_integral(u, cfg.weight, cfg.sigma);
  rec.energy = energy_from(rec.h1dot_sq, rec.weighted_potential, cfg.sigma, cfg.lambda);
  rec.variance = variance(u);
  rec.virial_rhs = virial_rhs_from(rec.h1dot_sq, rec.weighted_potential, cfg.dim(), cfg.sigma, cfg.weight.b,
                                   cfg.lambda);
  if (cfg.virial_radius) rec.localized_virial = localized_virial(u, *cfg.virial_radius);
  rec.boundary_mass_fraction = boundary_mass_fraction(u);
  rec.max_amp = kernels::max_abs(u.span());
  return rec;
}

CutoffValue theta_cutoff(double r) {
  if (r < 0.0) throw std::invalid_argument("theta_cutoff needs r >= 0");
  if (r <= 1.0) return {r * r, 2.0 * r, 2.0};
  if (r <= 2.0) return {-r * r + 4.0 * r - 2.0, -2.0 * r + 4.0, -2.0};
  return {2.0, 0.0, 0.0};
}

namespace {

double euclid(std::span<const double> x) {
  double s = 0.0;
  for (double c : x) s += c * c;
  return std::sqrt(s);
}

void require_radius(double R) {
  if (!(R > 1.0)) throw std::invalid_argument("cutoff radius must be > 1");
}

}  // namespace

double phi_R_weight(std::span<const double> x, double R) {
  require_radius(R);
  return R * R * theta_cutoff(euclid(x) / R).value;
}

double cylindrical_phi_R(std::span<const double> y, double x_n, double R) {
  require_radius(R);
  return R * R * theta_cutoff(euclid(y) / R).value + x_n * x_n;
}

double localized_virial(const Field& u, double R, bool cylindrical) {
  require_radius(R);
  if (cylindrical) {
    if (u.grid.is_radial()) throw std::invalid_argument("cylindrical weight needs a tensor grid");
    const int n = u.grid.dim();
    return weighted_quadratic(u, [R, n](std::span<const double> x) {
      return cylindrical_phi_R(x.first(static_cast<std::size_t>(n - 1)), x[static_cast<std::size_t>(n - 1)], R);
    });
  }
  return weighted_quadratic(u, [R](std::span<const double> x) { return phi_R_weight(x, R); });
}

std::string case_name(BlowupCase c) {
  switch (c) {
    case BlowupCase::negative_energy: return "negative_energy";
    case BlowupCase::below_ground_state_above_norm: return "below_ground_state_above_norm";
    case BlowupCase::no_verdict: return "no_verdict";
  }
  return "unknown";
}

ThresholdReport classify_scalars(double e0, double h1_0, const ground_state::GroundStateQuantities& gs,
                                 exponents::Symmetry symmetry) {
  if (symmetry == exponents::Symmetry::cylindrical && gs.b < 4.0 - gs.n) {
    throw HypothesisError("b >= 4 - n", "cylindrical symmetry needs b >= 4 - n");
  }
  ThresholdReport rep;
  rep.e0 = e0;
  rep.h1_0 = h1_0;
  rep.e_w = gs.energy;
  rep.h1_w = gs.h1dot();
  rep.symmetry = symmetry;
  if (e0 < 0.0) {
    rep.blowup_case = BlowupCase::negative_energy;
  } else if (e0 < rep.e_w && h1_0 > rep.h1_w) {
    rep.blowup_case = BlowupCase::below_ground_state_above_norm;
    rep.delta = 1.0 - e0 / rep.e_w;
  }
  return rep;
}

ThresholdReport classify_blowup(const Field& u0, const SimConfig& cfg,
                                const ground_state::GroundStateQuantities& gs, exponents::Symmetry symmetry) {
  const int n = cfg.dim();
  if (n < 3) throw HypothesisError("n >= 3", "blow-up classification needs n >= 3");
  if (cfg.lambda != -1.0) throw HypothesisError("lambda = -1", "blow-up classification needs the focusing sign");
  const double sigma1 = (4.0 - 2.0 * cfg.weight.b) / (n - 2.0);
  if (std::abs(cfg.sigma - sigma1) > 1e-12 * sigma1) {
    throw HypothesisError("sigma = (4 - 2b)/(n - 2)", "blow-up classification needs the energy-critical power");
  }
  if (gs.n != n || std::abs(gs.b - cfg.weight.b) > 1e-15) {
    throw std::invalid_argument("ground-state quantities belong to a different (n, b)");
  }
  const double h1 = h1dot_sq(u0);
  const double pot = weighted_potential_integral(u0, cfg.weight, cfg.sigma);
  return classify_scalars(energy_from(h1, pot, cfg.sigma, cfg.lambda), std::sqrt(h1), gs, symmetry);
}

double g_threshold(double y, const ground_state::GroundStateQuantities& gs) {
  if (y < 0.0) throw std::invalid_argument("g_threshold needs y >= 0");
  const double p = gs.sigma1 + 2.0;
  return 0.5 * y * y - std::pow(gs.c_hs * y, p) / p;
}

std::vector<double> second_differences(std::span<const double> t, std::span<const double> v) {
  if (t.size() != v.size()) throw std::invalid_argument("time and value columns differ in length");
  if (t.size() < 3) throw std::invalid_argument("need >= 3 samples");
  std::vector<double> out(t.size() - 2);
  for (std::size_t i = 1; i + 1 < t.size(); ++i) {
    const double hm = t[i] - t[i - 1];
    const double hp = t[i + 1] - t[i];
    if (!(hm > 0.0 && hp > 0.0)) throw std::invalid_argument("sample times must increase strictly");
    out[i - 1] = 2.0 * ((v[i + 1] - v[i]) / hp - (v[i] - v[i - 1]) / hm) / (hp + hm);
  }
  return out;
}

}  // namespace inls::diagnostics
