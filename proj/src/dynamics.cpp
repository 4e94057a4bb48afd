#include "inls/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "inls/errors.hpp"
#include "inls/kernels.hpp"

namespace inls {

void validate(const SimConfig& cfg) {
  auto bad = [](const std::string& what) { throw ParseError("invalid run configuration: " + what); };
  if (!(cfg.sigma > 0.0) || !std::isfinite(cfg.sigma)) bad("sigma must be a finite positive number");
  if (!std::isfinite(cfg.lambda)) bad("lambda must be finite");
  if (!(cfg.dt_init > 0.0)) bad("dt_init must be > 0");
  if (!(cfg.dt_min > 0.0)) bad("dt_min must be > 0");
  if (!(cfg.dt_min < cfg.dt_init)) bad("dt_min must be < dt_init");
  if (!(cfg.t_end > 0.0)) bad("t_end must be > 0");
  if (!(cfg.blowup_ratio > 1.0)) bad("blowup_ratio must be > 1");
  if (!(cfg.safety > 0.0 && cfg.safety < 1.0)) bad("safety must lie in (0, 1)");
  if (cfg.record_every < 1) bad("record_every must be a positive integer");
  if (cfg.weight.b < 0.0 || cfg.weight.delta < 0.0) bad("weight needs b >= 0 and delta >= 0");
  if (cfg.virial_radius && !(*cfg.virial_radius > 1.0)) bad("virial radius must be > 1");
  if (cfg.grid.is_radial() && cfg.dealias) bad("dealiasing applies to tensor grids only");
}

}  // namespace inls

namespace inls::dynamics {

namespace {

void require_finite(const Field& u, const char* where) {
  if (!u.all_finite()) throw NumericError(std::string("non-finite values after ") + where);
}

}  // namespace

SplitStepStepper::SplitStepStepper(const SimConfig& cfg)
    : cfg_(cfg),
      plan_(nullptr),
      weight_(cfg.weight.sample(cfg.grid)),
      xi2_(cfg.grid.is_radial() ? std::vector<double>{} : cfg.grid.wavenumber_squared()) {
  if (cfg.grid.is_radial()) throw std::invalid_argument("split-step integrator needs a tensor grid");
  plan_ = FftPlan::for_grid(cfg.grid);
  if (cfg.dealias) {
    // keep |k| <= N/3 on every axis
    const std::size_t np = cfg.grid.points();
    const auto dim = static_cast<std::size_t>(cfg.grid.dim());
    const long cut = static_cast<long>(np) / 3;
    dealias_mask_.assign(cfg.grid.size(), 1.0);
    for (std::size_t flat = 0; flat < dealias_mask_.size(); ++flat) {
      std::size_t rest = flat;
      for (std::size_t a = 0; a < dim; ++a) {
        const std::size_t idx = rest % np;
        rest /= np;
        if (std::labs(cfg.grid.mode_index(idx)) > cut) dealias_mask_[flat] = 0.0;
      }
    }
  }
}

void SplitStepStepper::step(Field& u, double dt) {
  if (!(u.grid == cfg_.grid)) throw std::invalid_argument("field is not on the run grid");
  const double half = 0.5 * dt * cfg_.lambda;
  if (cfg_.lambda != 0.0) kernels::apply_nonlinear_phase(u.span(), weight_, half, cfg_.sigma);
  plan_->forward(u.span());
  kernels::apply_phase(u.span(), xi2_, dt);
  if (!dealias_mask_.empty()) {
    for (std::size_t i = 0; i < dealias_mask_.size(); ++i) u.values[i] *= dealias_mask_[i];
  }
  plan_->backward(u.span());
  if (cfg_.lambda != 0.0) kernels::apply_nonlinear_phase(u.span(), weight_, half, cfg_.sigma);
  u.time_tag += dt;
  require_finite(u, "split step");
}

RadialRelaxationStepper::RadialRelaxationStepper(const SimConfig& cfg, const Field& u0)
    : cfg_(cfg), stencil_(cfg.grid), weight_(cfg.weight.sample(cfg.grid)) {
  if (!cfg.grid.is_radial()) throw std::invalid_argument("relaxation integrator needs a radial grid");
  if (!(u0.grid == cfg.grid)) throw std::invalid_argument("field is not on the run grid");
  const std::size_t n = cfg.grid.points();
  phi_half_.resize(n);
  for (std::size_t j = 0; j < n; ++j) phi_half_[j] = weight_[j] * std::pow(std::abs(u0.values[j]), cfg.sigma);
  c_prime_.resize(n);
  rhs_.resize(n);
}

void RadialRelaxationStepper::step(Field& u, double dt) {
  if (!(u.grid == cfg_.grid)) throw std::invalid_argument("field is not on the run grid");
  auto& v = u.values;
  const std::size_t n = v.size();
  const auto& vol = stencil_.volume;
  const auto& face = stencil_.face;

  const double ratio = dt_prev_ > 0.0 ? dt / dt_prev_ : 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double phi_now = weight_[j] * std::pow(std::abs(v[j]), cfg_.sigma);
    phi_half_[j] = phi_now + ratio * (phi_now - phi_half_[j]);
  }
  dt_prev_ = dt;

  // Multiplied by the cell volumes the system is complex symmetric:
  //   [V - i dt/2 (L - λVφ)] u⁺ = [V + i dt/2 (L - λVφ)] u
  const cplx ih(0.0, 0.5 * dt);
  auto face_at = [&](std::size_t j) { return j + 1 < n ? face[j] : 0.0; };
  for (std::size_t j = 0; j < n; ++j) {
    cplx lu = 0.0;
    if (j + 1 < n) lu += face[j] * (v[j + 1] - v[j]);
    else lu -= stencil_.outer * v[j];
    if (j > 0) lu -= face[j - 1] * (v[j] - v[j - 1]);
    const double pot = cfg_.lambda * vol[j] * phi_half_[j];
    rhs_[j] = vol[j] * v[j] + ih * (lu - pot * v[j]);
  }

  // Thomas sweep; off-diagonals -i dt/2 face[j].
  cplx prev_c = 0.0;
  cplx prev_d = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double sum_faces = face_at(j) + (j > 0 ? face[j - 1] : 0.0) + (j + 1 == n ? stencil_.outer : 0.0);
    const cplx diag = vol[j] + ih * (sum_faces + cfg_.lambda * vol[j] * phi_half_[j]);
    const cplx lower = j > 0 ? -ih * face[j - 1] : cplx(0.0);
    const cplx upper = j + 1 < n ? -ih * face[j] : cplx(0.0);
    const cplx pivot = diag - lower * prev_c;
    if (!(std::abs(pivot) > 0.0) || !std::isfinite(std::abs(pivot))) {
      throw NumericError("singular tridiagonal system in radial step");
    }
    prev_c = upper / pivot;
    prev_d = (rhs_[j] - lower * prev_d) / pivot;
    c_prime_[j] = prev_c;
    rhs_[j] = prev_d;
  }
  v[n - 1] = rhs_[n - 1];
  for (std::size_t j = n - 1; j-- > 0;) v[j] = rhs_[j] - c_prime_[j] * v[j + 1];
  u.time_tag += dt;
  require_finite(u, "radial step");
}

Field strang_step(const Field& u, const SimConfig& cfg, double dt) {
  SplitStepStepper stepper(cfg);
  Field out = u;
  stepper.step(out, dt);
  return out;
}

Field radial_cn_step(const Field& u, const SimConfig& cfg, double dt, RadialRelaxationStepper& state) {
  (void)cfg;
  Field out = u;
  state.step(out, dt);
  return out;
}

double adapt_dt(const Field& u, const SimConfig& cfg, double dt_prev) {
  (void)dt_prev;
  if (cfg.lambda == 0.0) return cfg.dt_init;
  const std::vector<double> w = cfg.weight.sample(u.grid);
  const double rate = std::abs(cfg.lambda) * kernels::max_weighted_power(u.span(), w, cfg.sigma);
  if (!(rate > 0.0)) return cfg.dt_init;
  return std::clamp(std::min(cfg.dt_init, cfg.safety / rate), cfg.dt_min, cfg.dt_init);
}

std::string termination_name(Termination t) {
  switch (t) {
    case Termination::completed: return "completed";
    case Termination::blowup_detected: return "blowup_detected";
    case Termination::dt_underflow: return "dt_underflow";
    case Termination::non_finite: return "non_finite";
  }
  return "unknown";
}

RunOutcome run(const SimConfig& cfg, const Field& u0) {
  validate(cfg);
  if (!(u0.grid == cfg.grid)) throw std::invalid_argument("initial field is not on the run grid");
  if (!u0.all_finite()) throw NumericError("initial field has non-finite values");

  std::unique_ptr<SplitStepStepper> split;
  std::unique_ptr<RadialRelaxationStepper> radial;
  if (cfg.grid.is_radial()) radial = std::make_unique<RadialRelaxationStepper>(cfg, u0);
  else split = std::make_unique<SplitStepStepper>(cfg);

  RunOutcome out{.final_field = u0};
  Field& u = out.final_field;
  u.time_tag = 0.0;
  const double h1_0 = std::sqrt(h1dot_sq(u0));

  double t = 0.0;
  double dt = cfg.dt_init;
  int pinned = 0;
  out.series.push_back(diagnostics::make_record(u, cfg, t, adapt_dt(u, cfg, dt)));

  while (t < cfg.t_end) {
    dt = adapt_dt(u, cfg, dt);
    if (dt <= cfg.dt_min) {
      if (++pinned >= 10) {
        out.termination = Termination::dt_underflow;
        break;
      }
    } else {
      pinned = 0;
    }
    const double remaining = cfg.t_end - t;
    const bool last = dt >= remaining;
    const double step = last ? remaining : dt;
    try {
      if (radial) radial->step(u, step);
      else split->step(u, step);
    } catch (const NumericError&) {
      out.termination = Termination::non_finite;
      break;
    }
    t = last ? cfg.t_end : t + step;
    u.time_tag = t;
    ++out.steps;

    const double h1 = std::sqrt(h1dot_sq(u));
    const double ratio = h1_0 > 0.0 ? h1 / h1_0 : 1.0;
    if (!std::isfinite(ratio)) {
      out.termination = Termination::non_finite;
      break;
    }
    out.max_h1_ratio = std::max(out.max_h1_ratio, ratio);
    const bool blowup = ratio >= cfg.blowup_ratio;
    if (out.steps % cfg.record_every == 0 || blowup || t >= cfg.t_end) {
      out.series.push_back(diagnostics::make_record(u, cfg, t, step));
    }
    if (blowup) {
      out.termination = Termination::blowup_detected;
      break;
    }
  }
  out.t_final = t;
  if (out.termination == Termination::completed && t < cfg.t_end) {
    throw std::logic_error("run loop exited early without a termination reason");
  }
  return out;
}

}  // namespace inls::dynamics
