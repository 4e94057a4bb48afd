#pragma once

#include <functional>
#include <span>
#include <vector>

#include "inls/grid.hpp"

namespace inls {

/// ‖u‖²_{L²} by the grid's quadrature.
double mass(const Field& u);

/// ‖u‖_{Ḣ^s}. Tensor grids use the spectral multiplier |ξ|^{2s}; radial
/// grids support s = 0 and s = 1 (finite-volume gradient) only.
double hs_norm(const Field& u, double s);

/// ‖u‖²_{Ḣ¹}; the radial version is the exact quadratic form of the radial
/// Laplacian, so -⟨Δu, u⟩ = h1dot_sq(u) holds to round-off.
double h1dot_sq(const Field& u);

/// ∫ weight(x) |u|^{σ+2} dx.
double weighted_potential_integral(const Field& u, const PotentialWeight& w, double sigma);

/// ‖x u‖²_{L²}
double variance(const Field& u);

/// Fraction of the mass in the outer 10% of the domain: |x|_∞ > 0.45 L on
/// tensor grids, r > 0.9 r_max on radial grids.
double boundary_mass_fraction(const Field& u);

/// Spatial weight a(x). Tensor grids pass Cartesian coordinates; radial
/// grids pass {r}.
using SpatialWeight = std::function<double(std::span<const double>)>;

/// V_a = ∫ a(x) |u|² dx.
double weighted_quadratic(const Field& u, const SpatialWeight& a);

/// Δu: spectral -|ξ|² on tensor grids; conservative second-order stencil of
/// ∂_rr + (n-1)/r ∂_r on radial grids (zero flux at the origin, u = 0 at r_max).
Field laplacian_apply(const Field& u);

/// Coefficients of the radial finite-volume operator. For node j the flux
/// operator is (L u)_j = face[j](u_{j+1}-u_j) - face[j-1](u_j-u_{j-1}), with
/// face[-1] = 0 and the outer face coupling to the Dirichlet value through
/// `outer`. Δu = (L u)/volume.
struct RadialStencil {
  std::vector<double> volume;  ///< shell volume per node
  std::vector<double> face;    ///< S f^{n-1}/(r_{j+1} - r_j) for the face f between j and j+1
  double outer = 0.0;          ///< S r_max^{n-1}/(r_max - r_{N-1}), coefficient of the boundary face

  explicit RadialStencil(const GridSpec& grid);
};

}  // namespace inls
