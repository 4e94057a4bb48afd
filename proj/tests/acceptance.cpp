// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances are pinned here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "inls/diagnostics.hpp"
#include "inls/dynamics.hpp"
#include "inls/exponents.hpp"
#include "inls/field_ops.hpp"
#include "inls/ground_state.hpp"
#include "inls/parallel.hpp"
#include "oracle.hpp"

using namespace inls;
namespace ex = inls::exponents;
namespace gs = inls::ground_state;
namespace dg = inls::diagnostics;
namespace dy = inls::dynamics;
using oracle::Frac;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Frac to_frac(const Rational& q) {
  return Frac(std::stoll(q.numerator().str()), std::stoll(q.denominator().str()));
}

Field gaussian(const GridSpec& g, double amp, double width) {
  return Field::sample(g, [=](std::span<const double> x) {
    double r2 = 0.0;
    for (double v : x) r2 += v * v;
    return cplx(amp * std::exp(-r2 / (2 * width * width)), 0.0);
  });
}

double l2_diff(const Field& a, const Field& b) {
  const auto w = a.grid.quadrature_weights();
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * std::norm(a.values[i] - b.values[i]);
  return std::sqrt(s);
}

// ---------------------------------------------------------------- 1

void exponent_suite(Outcome& o) {
  const ex::CriticalityParams base{3, Rational(1), Rational(1), std::nullopt, ex::Coupling::focusing};
  const auto w = ex::working_r(base);
  o.require(ex::resolved_sigma(base) == ExtendedRational(2), "sigma_s = 2");
  o.require(w.r == Rational(18, 7), "r = 18/7");
  o.require(ex::gamma_of(w.r, 3) == ExtendedRational(6), "gamma(r) = 6");

  std::mt19937_64 rng(1234);
  std::uniform_int_distribution<int> dn(1, 7), dden(1, 16);
  int tested = 0, failures = 0;
  while (tested < 2000) {
    const int n = dn(rng);
    const int sd = dden(rng);
    std::uniform_int_distribution<int> sn(0, n * sd);
    const Rational s(sn(rng), 2 * sd);
    const int bd = dden(rng);
    std::uniform_int_distribution<int> bn(1, 8 * bd);
    const Rational b(bn(rng), 4 * bd);  // b in (0, 2]
    ex::CriticalityParams p{n, s, b, std::nullopt, ex::Coupling::focusing};
    if (!ex::theorem_hypotheses(ex::Theorem::local_critical, p).holds) continue;
    ++tested;
    const auto wr = ex::working_r(p);
    bool ok = ex::is_admissible(wr.r, n) && wr.r.reciprocal() > s / Rational(n) &&
              ex::dual_pair_identity(p, wr.r, wr.epsilon) && ex::holder_time_identity(p, wr.r, wr.epsilon);

    // independent recomputation of both identities in 128-bit fractions
    const Frac fn(n), fs = to_frac(s), fb = to_frac(b);
    const Frac sigma = (Frac(4) - Frac(2) * fb) / (fn - Frac(2) * fs);
    const Frac inv_r = Frac(1) / to_frac(wr.r);
    Frac inv_rbar;
    if (n >= 3) {
      inv_rbar = (fn - Frac(2)) / (Frac(2) * fn);
    } else {
      const Frac eps = oracle::min(fn - fs - fb, fn / Frac(2)) / Frac(2);
      ok = ok && wr.epsilon && to_frac(*wr.epsilon) == eps;
      inv_rbar = eps / fn;
    }
    const Frac lhs = Frac(1) - inv_rbar;
    ok = ok && lhs == sigma * (inv_r - fs / fn) + inv_r + fb / fn;
    // 1/γ(r̄)' = (σ+1)/γ(r) with 2/γ(p) = n/2 - n/p
    const Frac inv_gamma_r = (fn / Frac(2) - fn * inv_r) / Frac(2);
    const Frac inv_gamma_rbar = (fn / Frac(2) - fn * inv_rbar) / Frac(2);
    ok = ok && Frac(1) - inv_gamma_rbar == (sigma + Frac(1)) * inv_gamma_r;
    if (!ok) ++failures;
  }
  o.require(failures == 0, std::to_string(failures) + " tuples break an identity");
  o.detail << " tuples=" << tested << " identity_failures=" << failures;
}

// ---------------------------------------------------------------- 2

double golden_argmax(const std::function<double(double)>& f, double a, double b) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - phi * (b - a), d = a + phi * (b - a);
  const double scale = b;
  while (b - a > 1e-12 * scale) {
    if (f(c) > f(d)) b = d;
    else a = c;
    c = b - phi * (b - a);
    d = a + phi * (b - a);
  }
  return 0.5 * (a + b);
}

void ground_state_suite(Outcome& o) {
  double worst_pohozaev = 0, worst_spread = 0, worst_chain = 0, worst_argmax = 0;
  int cases = 0;
  for (int n : {3, 4, 5}) {
    for (double b : {0.0, 0.25, 0.5, 1.0, 1.5}) {
      std::vector<double> c_hs;
      for (double eps : {0.5, 1.0, 2.0}) {
        const auto q = gs::compute_quantities(gs::GroundStateProfile(n, b, eps));
        ++cases;
        worst_pohozaev = std::max(worst_pohozaev, q.pohozaev_residual());
        c_hs.push_back(q.c_hs);
        const double h1_closed = std::pow(q.c_hs, -2.0 * (n - b) / (2.0 - b));
        const double e_closed = (2.0 - b) / (2.0 * (n - b)) * h1_closed;
        worst_chain = std::max({worst_chain, std::abs(q.h1dot_sq - h1_closed) / h1_closed,
                                std::abs(q.energy - e_closed) / e_closed});
        const double y = golden_argmax([&](double v) { return dg::g_threshold(v, q); }, 0.0, 2.0 * q.h1dot());
        worst_argmax = std::max(worst_argmax, std::abs(y - q.h1dot()) / q.h1dot());
      }
      const auto [lo, hi] = std::minmax_element(c_hs.begin(), c_hs.end());
      worst_spread = std::max(worst_spread, (*hi - *lo) / *lo);
    }
  }
  o.require(worst_pohozaev <= 1e-8, "pohozaev <= 1e-8");
  o.require(worst_spread <= 1e-8, "C_HS spread <= 1e-8");
  o.require(worst_chain <= 1e-6, "closed-form chain <= 1e-6");
  o.require(worst_argmax <= 1e-6, "argmax g <= 1e-6");
  o.detail << " cases=" << cases << " pohozaev=" << worst_pohozaev << " spread=" << worst_spread
           << " chain=" << worst_chain << " argmax=" << worst_argmax;
}

// ---------------------------------------------------------------- 3

template <class MakeStepper>
double observed_order(MakeStepper&& make, const Field& u0, double T, int base) {
  auto solve = [&](int steps) {
    auto step = make(u0);
    Field u = u0;
    for (int i = 0; i < steps; ++i) step(u, T / steps);
    return u;
  };
  const Field ref = solve(16 * base);
  return std::log2(l2_diff(solve(base), ref) / l2_diff(solve(2 * base), ref));
}

SimConfig tensor_config(double L, std::size_t N, double lambda) {
  SimConfig c{.grid = GridSpec::tensor(2, L, N)};
  c.weight = PotentialWeight::with_default_delta(0.5, c.grid);
  c.sigma = 1.0;
  c.lambda = lambda;
  return c;
}

SimConfig radial_config(double R, std::size_t N, double lambda, double sigma, double stretch = 1.0) {
  SimConfig c{.grid = GridSpec::radial(3, R, N, stretch)};
  c.weight = PotentialWeight{0.5, 0.0};
  c.sigma = sigma;
  c.lambda = lambda;
  return c;
}

void integrator_suite(Outcome& o) {
  // split step, 256², focusing σ = 1
  const auto tc = tensor_config(20.0, 256, -1.0);
  const Field t0 = gaussian(tc.grid, 1.0, 1.0);
  dy::SplitStepStepper split(tc);
  Field u = t0;
  for (int i = 0; i < 1000; ++i) split.step(u, 1e-3);
  const double split_drift = std::abs(mass(u) - mass(t0)) / mass(t0);
  // orders on a smooth weight (δ = 1); see the unit tests for why
  auto smooth_t = tc;
  smooth_t.weight.delta = 1.0;
  const double split_order = observed_order(
      [&](const Field&) {
        auto st = std::make_shared<dy::SplitStepStepper>(smooth_t);
        return [st](Field& v, double dt) { st->step(v, dt); };
      },
      t0, 0.2, 10);

  // radial relaxation, 4096 nodes
  const auto rc = radial_config(20.0, 4096, -1.0, 1.0);
  const Field r0 = gaussian(rc.grid, 1.0, 1.0);
  dy::RadialRelaxationStepper cn(rc, r0);
  Field v = r0;
  for (int i = 0; i < 1000; ++i) cn.step(v, 1e-3);
  const double cn_drift = std::abs(mass(v) - mass(r0)) / mass(r0);
  auto smooth_r = rc;
  smooth_r.weight.delta = 1.0;
  const double cn_order = observed_order(
      [&](const Field& start) {
        auto st = std::make_shared<dy::RadialRelaxationStepper>(smooth_r, start);
        return [st](Field& w, double dt) { st->step(w, dt); };
      },
      r0, 0.2, 10);

  // free propagator forward then backward
  const auto fc = tensor_config(20.0, 256, 0.0);
  const Field f0 = Field::sample(fc.grid, [](std::span<const double> x) {
    return std::exp(cplx(-(x[0] * x[0] + x[1] * x[1]) / 2.0, 1.5 * x[0]));
  });
  dy::SplitStepStepper free(fc);
  Field f = f0;
  for (int i = 0; i < 100; ++i) free.step(f, 1e-2);
  for (int i = 0; i < 100; ++i) free.step(f, -1e-2);
  const double reversal = l2_diff(f, f0) / std::sqrt(mass(f0));

  o.require(split_drift <= 1e-9, "split-step mass drift <= 1e-9");
  o.require(split_order >= 1.8 && split_order <= 2.2, "split-step order in [1.8, 2.2]");
  o.require(cn_drift <= 1e-9, "radial mass drift <= 1e-9");
  o.require(cn_order >= 1.8 && cn_order <= 2.2, "radial order in [1.8, 2.2]");
  o.require(reversal <= 1e-12, "time reversal <= 1e-12");
  o.detail << " split_drift=" << split_drift << " split_order=" << split_order << " cn_drift=" << cn_drift
           << " cn_order=" << cn_order << " reversal=" << reversal;
}

// ---------------------------------------------------------------- 4

void virial_suite(Outcome& o) {
  // free real Gaussian: V(t) = V(0) + 4 t² ‖u0‖²_{Ḣ¹}
  const auto fc = tensor_config(40.0, 256, 0.0);
  const Field f0 = gaussian(fc.grid, 1.0, 1.0);
  const double v0 = variance(f0), k0 = h1dot_sq(f0);
  double worst_free = 0.0, worst_boundary = 0.0;
  for (double t : {0.25, 0.5, 1.0, 2.0}) {
    const Field f = dy::strang_step(f0, fc, t);
    const double expected = v0 + 4.0 * t * t * k0;
    worst_free = std::max(worst_free, std::abs(variance(f) - expected) / expected);
    worst_boundary = std::max(worst_boundary, boundary_mass_fraction(f));
  }

  // focusing smooth radial run, δ = 0, uniform steps
  auto rc = radial_config(20.0, 2000, -1.0, 1.0);
  rc.dt_init = 1e-3;
  rc.dt_min = 1e-6;
  rc.t_end = 0.5;
  rc.safety = 0.99;
  const auto run = dy::run(rc, gaussian(rc.grid, 0.8, 1.0));
  std::vector<double> t, var;
  for (const auto& r : run.series) {
    t.push_back(r.t);
    var.push_back(*r.variance);
  }
  const auto d2 = dg::second_differences(t, var);
  double worst_nl = 0.0;
  for (std::size_t i = 0; i < d2.size(); ++i) {
    const double rhs = run.series[i + 1].virial_rhs;
    worst_nl = std::max(worst_nl, std::abs(d2[i] - rhs) / std::abs(rhs));
  }
  o.require(worst_free <= 1e-4, "free variance law <= 1e-4");
  o.require(worst_boundary < 1e-6, "boundary mass fraction < 1e-6");
  o.require(run.termination == dy::Termination::completed, "nonlinear run completes");
  o.require(worst_nl <= 1e-3, "nonlinear virial residual <= 1e-3");
  o.detail << " free_rel=" << worst_free << " boundary=" << worst_boundary << " nonlinear_rel=" << worst_nl
           << " samples=" << d2.size();
}

// ---------------------------------------------------------------- 5

Field scaled_ground_state(const GridSpec& g, const gs::GroundStateProfile& w, double c) {
  const double edge = gs::w_eval(w, g.extent());
  return Field::sample(g, [&](std::span<const double> x) {
    return cplx(c * std::max(gs::w_eval(w, x[0]) - edge, 0.0), 0.0);
  });
}

SimConfig blowup_config() {
  auto c = radial_config(10.0, 4096, -1.0, 3.0);
  c.dt_init = 1e-3;
  c.dt_min = 1e-8;
  c.t_end = 1.0;
  c.blowup_ratio = 1e3;
  c.record_every = 1000;
  return c;
}

void blowup_suite(Outcome& o) {
  const gs::GroundStateProfile w(3, 0.5, 1.0);
  const auto q = gs::compute_quantities(w);
  const auto cfg = blowup_config();

  // (a) negative-energy Gaussian
  const Field a0 = gaussian(cfg.grid, 3.0, 1.0 / std::sqrt(2.0));
  const double ea = dg::energy(a0, cfg);
  const auto ra = dy::run(cfg, a0);
  const bool a_ok = ea < 0.0 && ra.termination == dy::Termination::blowup_detected && ra.t_final < 1.0;
  o.detail << " (a) E0=" << ea << " end=" << dy::termination_name(ra.termination) << " t=" << ra.t_final
           << " max_h1_ratio=" << ra.max_h1_ratio;
  o.require(a_ok, "(a) negative energy run ends blowup_detected");

  // (b) 1.2·W: classifier on a geometric grid reaching 10^7 core radii
  auto fine = radial_config(1e7 * w.core_radius(), 40000, -1.0, 3.0, 1.00035);
  const auto rb = dg::classify_blowup(scaled_ground_state(fine.grid, w, 1.2), fine, q, ex::Symmetry::radial);
  const double ratio = rb.e0 / (rb.h1_w * rb.h1_w);
  const double expected = 1.2 * 1.2 / 2.0 - std::pow(1.2, 5.0) / 5.0;  // 0.222336
  const double ratio_err = std::abs(ratio - expected) / expected;
  const double ew_ratio = rb.e_w / (rb.h1_w * rb.h1_w);
  const auto rb_run = dy::run(cfg, scaled_ground_state(cfg.grid, w, 1.2));
  o.detail << " (b) case=" << dg::case_name(rb.blowup_case) << " E_ratio=" << ratio << " rel_err=" << ratio_err
           << " E(W)_ratio=" << ew_ratio << " end=" << dy::termination_name(rb_run.termination)
           << " t=" << rb_run.t_final << " max_h1_ratio=" << rb_run.max_h1_ratio;
  o.require(rb.blowup_case == dg::BlowupCase::below_ground_state_above_norm, "(b) classifier case");
  o.require(ratio_err <= 1e-4, "(b) energy ratio within 1e-4");
  o.require(std::abs(ew_ratio - 0.3) <= 1e-4 * 0.3, "(b) E(W) ratio 0.3");
  o.require(rb_run.termination == dy::Termination::blowup_detected, "(b) run ends blowup_detected");

  // (c) 0.5·W stays bounded
  const Field c0 = scaled_ground_state(cfg.grid, w, 0.5);
  const auto rc_case = dg::classify_blowup(c0, cfg, q, ex::Symmetry::radial);
  const auto rc_run = dy::run(cfg, c0);
  o.detail << " (c) case=" << dg::case_name(rc_case.blowup_case) << " end=" << dy::termination_name(rc_run.termination)
           << " max_h1_ratio=" << rc_run.max_h1_ratio;
  o.require(rc_case.blowup_case == dg::BlowupCase::no_verdict, "(c) no_verdict");
  o.require(rc_run.termination == dy::Termination::completed && rc_run.t_final == cfg.t_end, "(c) run completes");
  o.require(rc_run.max_h1_ratio <= 2.0, "(c) H1 ratio <= 2");
}

// ---------------------------------------------------------------- 6

// Bisection for the c where verdict(c) changes, given verdict(lo) != verdict(hi).
double bisect_flip(const std::function<dg::BlowupCase(double)>& verdict, double lo, double hi) {
  const auto left = verdict(lo);
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    (verdict(mid) == left ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

void classifier_boundary(Outcome& o) {
  const auto q = gs::compute_quantities(gs::GroundStateProfile(3, 0.5, 1.0));
  const double sigma = q.sigma1;
  // u0 = cW scales exactly: ‖cW‖² = c²‖W‖², ∫ w|cW|^{σ+2} = c^{σ+2} ∫ w W^{σ+2}
  const auto verdict = [&](double c) {
    const double e0 = 0.5 * c * c * q.h1dot_sq - std::pow(c, sigma + 2.0) / (sigma + 2.0) * q.potential_integral;
    return dg::classify_scalars(e0, c * q.h1dot(), q, ex::Symmetry::radial).blowup_case;
  };
  const bool sides = verdict(0.9) == dg::BlowupCase::no_verdict &&
                     verdict(1.1) == dg::BlowupCase::below_ground_state_above_norm &&
                     verdict(2.0) == dg::BlowupCase::negative_energy;
  const double c_norm = bisect_flip(verdict, 0.5, 1.2);
  const double c_energy = bisect_flip(verdict, 1.1, 2.0);

  // independent Newton iteration on c²/2 - c^{σ+2}/(σ+2) = 0
  double c = 2.0;
  for (int i = 0; i < 100; ++i) {
    const double f = c * c / 2.0 - std::pow(c, sigma + 2.0) / (sigma + 2.0);
    const double df = c - std::pow(c, sigma + 1.0);
    const double step = f / df;
    c -= step;
    if (std::abs(step) < 1e-15) break;
  }
  o.require(sides, "verdicts on either side of the flips");
  o.require(std::abs(c_norm - 1.0) <= 1e-6, "norm flip at c = 1");
  o.require(std::abs(c_energy - c) <= 1e-6, "energy flip at c*");
  o.detail << " c_norm=" << c_norm << " c_energy=" << c_energy << " newton=" << c;
}

}  // namespace

int main() {
  std::setvbuf(stdout, nullptr, _IOLBF, 0);
  parallel::configure_threads();
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    void (*fn)(Outcome&);
  };
  const Criterion all[] = {
      {1, "exponent identities", 5.0, exponent_suite},
      {2, "ground-state quadrature", 60.0, ground_state_suite},
      {3, "integrators", 120.0, integrator_suite},
      {4, "virial identities", 120.0, virial_suite},
      {5, "blow-up evidence", 600.0, blowup_suite},
      {6, "classifier boundary", 5.0, classifier_boundary},
  };
  bool all_pass = true;
  for (const auto& c : all) {
    Outcome o;
    const auto t0 = Clock::now();
    try {
      c.fn(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double dt = seconds_since(t0);
    o.require(dt <= c.budget_s, "runtime budget " + std::to_string(c.budget_s) + " s");
    all_pass = all_pass && o.pass;
    std::printf("criterion %d %-24s %s  (%.1f s)%s\n", c.id, c.name, o.pass ? "PASS" : "FAIL", dt,
                o.detail.str().c_str());
  }
  return all_pass ? 0 : 1;
}
