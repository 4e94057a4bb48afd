#pragma once

#include <memory>
#include <string>
#include <vector>

#include "inls/diagnostics.hpp"
#include "inls/fft.hpp"
#include "inls/field_ops.hpp"
#include "inls/sim_config.hpp"

namespace inls::dynamics {

/// Strang splitting on a periodic tensor grid: half nonlinear phase, exact
/// spectral free propagator e^{-i dt |ξ|²}, half nonlinear phase.
class SplitStepStepper {
 public:
  explicit SplitStepStepper(const SimConfig& cfg);
  /// Advances in place; throws NumericError if the result is not finite.
  void step(Field& u, double dt);

 private:
  SimConfig cfg_;
  std::shared_ptr<const FftPlan> plan_;
  std::vector<double> weight_;
  std::vector<double> xi2_;
  std::vector<double> dealias_mask_;
};

/// Linearly implicit Crank-Nicolson with a relaxed nonlinear density on a
/// radial grid. The density lives at half steps,
///   φ^{k+1/2} = φ_k + (dt_k/dt_{k-1}) (φ_k - φ^{k-1/2}),  φ_k = w |u^k|^σ,
/// which is the usual 2φ_k - φ^{k-1/2} for uniform steps. Each step solves one
/// complex tridiagonal system, so discrete mass is conserved exactly up to
/// round-off.
class RadialRelaxationStepper {
 public:
  /// Cold start: φ^{-1/2} = w |u0|^σ.
  RadialRelaxationStepper(const SimConfig& cfg, const Field& u0);
  void step(Field& u, double dt);

  const std::vector<double>& density() const { return phi_half_; }

 private:
  SimConfig cfg_;
  RadialStencil stencil_;
  std::vector<double> weight_;
  std::vector<double> phi_half_;
  double dt_prev_ = 0.0;
  // scratch for the Thomas sweep
  std::vector<cplx> c_prime_;
  std::vector<cplx> rhs_;
};

/// One Strang step from u; u itself is unchanged.
Field strang_step(const Field& u, const SimConfig& cfg, double dt);

/// One relaxation step with an explicit density state (updated in place).
Field radial_cn_step(const Field& u, const SimConfig& cfg, double dt, RadialRelaxationStepper& state);

/// clamp(min(dt_init, safety / max |λ| w |u|^σ), dt_min, dt_init)
double adapt_dt(const Field& u, const SimConfig& cfg, double dt_prev);

enum class Termination { completed, blowup_detected, dt_underflow, non_finite };
std::string termination_name(Termination t);

struct RunOutcome {
  Termination termination = Termination::completed;
  double t_final = 0.0;
  long steps = 0;
  /// Largest ‖u(t)‖_{Ḣ¹}/‖u0‖_{Ḣ¹} seen during the run.
  double max_h1_ratio = 1.0;
  std::vector<diagnostics::DiagnosticsRecord> series{};
  Field final_field;
};

/// Integrates from t = 0 to cfg.t_end. Records every `record_every` steps
/// (plus the initial and final states) and stops early on Ḣ¹ growth beyond
/// `blowup_ratio`, ten consecutive dt_min steps, or non-finite values.
RunOutcome run(const SimConfig& cfg, const Field& u0);

}  // namespace inls::dynamics
