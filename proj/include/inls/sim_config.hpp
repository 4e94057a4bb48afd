#pragma once

#include <optional>

#include "inls/grid.hpp"

namespace inls {

/// Run parameters for i u_t + Δu = λ w(x) |u|^σ u with w the (regularized)
/// |x|^{-b}. λ = -1 is the focusing equation, λ = +1 defocusing. The
/// dimension comes from the grid and b from the weight.
struct SimConfig {
  GridSpec grid;
  PotentialWeight weight{};
  double sigma = 1.0;
  double lambda = -1.0;
  double dt_init = 1e-3;
  double t_end = 1.0;
  double dt_min = 1e-12;
  /// Ḣ¹ growth factor that flags blow-up.
  double blowup_ratio = 1e3;
  /// Cap on the nonlinear phase rotation per step, in radians.
  double safety = 0.1;
  int record_every = 1;
  /// When set, every record also carries the localized virial V_{φ_R}.
  std::optional<double> virial_radius{};
  /// 2/3-rule dealiasing after each linear substep (tensor grids).
  bool dealias = false;

  int dim() const { return grid.dim(); }
  double b() const { return weight.b; }
};

/// Throws ParseError on inconsistent settings.
void validate(const SimConfig& cfg);

}  // namespace inls
