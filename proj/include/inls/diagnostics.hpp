#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "inls/exponents.hpp"
#include "inls/ground_state.hpp"
#include "inls/grid.hpp"
#include "inls/sim_config.hpp"

namespace inls::diagnostics {

/// One time sample of the run's observables.
struct DiagnosticsRecord {
  double t = 0.0;
  double mass = 0.0;
  double energy = 0.0;
  double h1dot_sq = 0.0;
  double weighted_potential = 0.0;
  std::optional<double> variance;
  double virial_rhs = 0.0;
  std::optional<double> localized_virial;
  double boundary_mass_fraction = 0.0;
  double dt = 0.0;
  double max_amp = 0.0;
};

DiagnosticsRecord make_record(const Field& u, const SimConfig& cfg, double t, double dt);

/// E(u) = ½‖u‖²_{Ḣ¹} + λ/(σ+2) ∫ w |u|^{σ+2}
double energy(const Field& u, const SimConfig& cfg);
double energy_from(double h1dot_sq, double weighted_potential, double sigma, double lambda);

/// d²/dt² ‖xu‖² = 8‖u‖²_{Ḣ¹} + λ·4(nσ+2b)/(σ+2) ∫ w|u|^{σ+2}; for λ = -1 this
/// is the focusing virial identity, for λ = 0 just 8‖u‖²_{Ḣ¹}.
double virial_rhs(const Field& u, const SimConfig& cfg);
double virial_rhs_from(double h1dot_sq, double weighted_potential, int n, double sigma, double b,
                       double lambda);

struct CutoffValue {
  double value;
  double first_derivative;
  double second_derivative;
};

/// θ(r) = r² on [0,1], -r² + 4r - 2 on [1,2], 2 on [2,∞). C¹ with θ'' ≤ 2.
CutoffValue theta_cutoff(double r);

/// φ_R(x) = R² θ(|x|/R).
double phi_R_weight(std::span<const double> x, double R);
/// φ_R(y, x_n) = R² θ(|y|/R) + x_n².
double cylindrical_phi_R(std::span<const double> y, double x_n, double R);

/// V_{φ_R} = ∫ φ_R |u|². With `cylindrical`, the cutoff acts on the first
/// n-1 coordinates and the last one enters as x_n² (tensor grids only).
double localized_virial(const Field& u, double R, bool cylindrical = false);

enum class BlowupCase { negative_energy, below_ground_state_above_norm, no_verdict };
std::string case_name(BlowupCase c);

struct ThresholdReport {
  double e0 = 0.0;    ///< E(u0)
  double h1_0 = 0.0;  ///< ‖u0‖_{Ḣ¹}
  double e_w = 0.0;   ///< E(W_b)
  double h1_w = 0.0;  ///< ‖W_b‖_{Ḣ¹}
  BlowupCase blowup_case = BlowupCase::no_verdict;
  exponents::Symmetry symmetry = exponents::Symmetry::none;
  /// 1 - E(u0)/E(W_b): the largest δ with E(u0) <= (1-δ)E(W_b).
  std::optional<double> delta;
};

/// Blow-up classification from the two scalars. Throws HypothesisError for
/// a cylindrical claim with b < 4 - n.
ThresholdReport classify_scalars(double e0, double h1_0, const ground_state::GroundStateQuantities& gs,
                                 exponents::Symmetry symmetry);

/// Evaluates E(u0), ‖u0‖_{Ḣ¹} on the grid and classifies. Requires the
/// focusing energy-critical configuration (λ = -1, σ = (4-2b)/(n-2)).
ThresholdReport classify_blowup(const Field& u0, const SimConfig& cfg,
                                const ground_state::GroundStateQuantities& gs, exponents::Symmetry symmetry);

/// g(y) = y²/2 - C_HS^{σ₁+2} y^{σ₁+2}/(σ₁+2)
double g_threshold(double y, const ground_state::GroundStateQuantities& gs);

/// Centered three-point second derivative of a sampled series, valid for
/// non-uniform spacing. Entry i corresponds to sample i+1.
std::vector<double> second_differences(std::span<const double> t, std::span<const double> v);

}  // namespace inls::diagnostics
