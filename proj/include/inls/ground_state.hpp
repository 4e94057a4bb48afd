#pragma once

#include <functional>

namespace inls::ground_state {

/// Explicit ground state of Δ W + |x|^{-b} W^{σ₁+1} = 0,
///   W(r) = [ε(n-b)(n-2)]^{(n-2)/(4-2b)} / (ε + r^{2-b})^{(n-2)/(2-b)},
/// with σ₁ = (4-2b)/(n-2) derived from (n, b).
class GroundStateProfile {
 public:
  /// Requires n >= 3, 0 <= b < 2, ε > 0; throws std::invalid_argument.
  GroundStateProfile(int n, double b, double epsilon);

  int n() const { return n_; }
  double b() const { return b_; }
  double epsilon() const { return epsilon_; }
  double sigma1() const { return sigma1_; }
  /// Numerator constant [ε(n-b)(n-2)]^{(n-2)/(4-2b)}.
  double amplitude() const { return amplitude_; }
  /// Decay exponent k = (n-2)/(2-b) of the denominator.
  double decay_exponent() const { return k_; }
  /// ε^{1/(2-b)}: the radius where the profile turns over.
  double core_radius() const;

 private:
  int n_;
  double b_;
  double epsilon_;
  double sigma1_;
  double amplitude_;
  double k_;
};

double w_eval(const GroundStateProfile& profile, double r);

/// dW/dr. At r = 0 returns 0 for b < 1 and -A(2-b)k ε^{-k-1} for b = 1;
/// throws std::domain_error for b > 1 where the slope is unbounded.
double w_grad_eval(const GroundStateProfile& profile, double r);

/// Area of the unit sphere S^{n-1}: 2π^{n/2}/Γ(n/2).
double unit_sphere_area(int n);

struct QuadratureSpec {
  /// Relative tolerance per panel of the adaptive Gauss-Legendre rule.
  double rel_tol = 1e-14;
  /// Outer cutoff in units of the core radius; 0 picks it so the analytic
  /// tail is below `tail_fraction` of the total.
  double r_max = 0.0;
  double tail_fraction = 1e-12;
  /// Log-spaced panels per decade before adaptive refinement.
  int panels_per_decade = 4;
  int max_depth = 30;
};

struct GroundStateQuantities {
  double h1dot_sq = 0.0;           ///< ‖W‖²_{Ḣ¹}
  double potential_integral = 0.0; ///< ∫ |x|^{-b} W^{σ₁+2}
  double c_hs = 0.0;               ///< sharp Hardy-Sobolev constant
  double energy = 0.0;             ///< E(W) with the focusing sign
  double sigma1 = 0.0;
  int n = 0;
  double b = 0.0;

  double h1dot() const;
  /// |h1dot_sq - potential_integral| / h1dot_sq
  double pohozaev_residual() const;
};

/// Adaptive composite Gauss-Legendre over log-spaced panels of [lo, hi].
/// Throws QuadratureError if a panel fails to converge within max_depth.
double integrate_log_panels(const std::function<double(double)>& f, double lo, double hi,
                            const QuadratureSpec& spec);

/// Throws QuadratureError on non-convergence.
GroundStateQuantities compute_quantities(const GroundStateProfile& profile,
                                         const QuadratureSpec& spec = {});

/// For u₀ = c·W: E(cW)/‖W‖²_{Ḣ¹} = c²/2 - c^{σ₁+2}/(σ₁+2) and the Ḣ¹ ratio c.
struct ScaledRatios {
  double energy_ratio;
  double h1_ratio;
};

ScaledRatios scaled_energy_ratio(double c, const GroundStateQuantities& quantities);

}  // namespace inls::ground_state
