#include "inls/field_ops.hpp"

#include <cmath>
#include <stdexcept>

#include "inls/errors.hpp"
#include "inls/fft.hpp"
#include "inls/ground_state.hpp"
#include "inls/kernels.hpp"

namespace inls {

RadialStencil::RadialStencil(const GridSpec& grid) : volume(grid.quadrature_weights()) {
  if (!grid.is_radial()) throw std::logic_error("radial stencil on a tensor grid");
  const std::size_t n = grid.points();
  const double area = ground_state::unit_sphere_area(grid.dim());
  face.resize(n - 1);
  if (grid.stretch() == 1.0) {
    const double h = grid.spacing();
    for (std::size_t j = 0; j + 1 < n; ++j) {
      face[j] = area * std::pow((static_cast<double>(j) + 1.0) * h, grid.dim() - 1) / h;
    }
    outer = 2.0 * area * std::pow(grid.extent(), grid.dim() - 1) / h;
    return;
  }
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double gap = grid.coordinate(j + 1) - grid.coordinate(j);
    face[j] = area * std::pow(grid.radial_face(j + 1), grid.dim() - 1) / gap;
  }
  outer = area * std::pow(grid.extent(), grid.dim() - 1) / (grid.extent() - grid.coordinate(n - 1));
}

double mass(const Field& u) {
  const std::vector<double> w = u.grid.quadrature_weights();
  return kernels::weighted_norm_sq(u.span(), w);
}

double h1dot_sq(const Field& u) {
  if (u.grid.is_radial()) {
    const RadialStencil st(u.grid);
    const auto& v = u.values;
    const std::size_t n = v.size();
    double sum = 0.0;
    for (std::size_t j = 0; j + 1 < n; ++j) sum += st.face[j] * std::norm(v[j + 1] - v[j]);
    sum += st.outer * std::norm(v[n - 1]);
    return sum;
  }
  const double s = hs_norm(u, 1.0);
  return s * s;
}

double hs_norm(const Field& u, double s) {
  if (s < 0.0) throw std::invalid_argument("hs_norm needs s >= 0");
  if (s == 0.0) return std::sqrt(mass(u));
  if (u.grid.is_radial()) {
    if (s != 1.0) throw std::invalid_argument("radial grids support only s = 0 and s = 1");
    return std::sqrt(h1dot_sq(u));
  }
  const auto plan = FftPlan::for_grid(u.grid);
  std::vector<cplx> spec = u.values;
  plan->forward(spec);
  std::vector<double> mult = u.grid.wavenumber_squared();
  if (s != 1.0) {
    for (double& m : mult) m = std::pow(m, s);
  }
  // Parseval: Σ|u|² hⁿ = (hⁿ/Nᵈ) Σ|û|².
  const double h_n = std::pow(u.grid.spacing(), u.grid.dim());
  const double scale = h_n / static_cast<double>(u.grid.size());
  return std::sqrt(scale * kernels::weighted_norm_sq(spec, mult));
}

double weighted_potential_integral(const Field& u, const PotentialWeight& w, double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("weighted potential needs sigma > 0");
  std::vector<double> q = u.grid.quadrature_weights();
  const std::vector<double> weight = w.sample(u.grid);
  for (std::size_t i = 0; i < q.size(); ++i) q[i] *= weight[i];
  return kernels::weighted_power_sum(u.span(), q, sigma + 2.0);
}

double variance(const Field& u) {
  std::vector<double> q = u.grid.quadrature_weights();
  const std::vector<double> r2 = u.grid.radius_squared();
  for (std::size_t i = 0; i < q.size(); ++i) q[i] *= r2[i];
  return kernels::weighted_norm_sq(u.span(), q);
}

double boundary_mass_fraction(const Field& u) {
  const double total = mass(u);
  if (total == 0.0) return 0.0;
  std::vector<double> q = u.grid.quadrature_weights();
  if (u.grid.is_radial()) {
    const double cut = 0.9 * u.grid.extent();
    for (std::size_t j = 0; j < q.size(); ++j) {
      if (u.grid.coordinate(j) <= cut) q[j] = 0.0;
    }
  } else {
    const double cut = 0.45 * u.grid.extent();
    for (std::size_t i = 0; i < q.size(); ++i) {
      const auto x = u.grid.node(i);
      const double inf_norm = std::max({std::abs(x[0]), std::abs(x[1]), std::abs(x[2])});
      if (inf_norm <= cut) q[i] = 0.0;
    }
  }
  return kernels::weighted_norm_sq(u.span(), q) / total;
}

double weighted_quadratic(const Field& u, const SpatialWeight& a) {
  std::vector<double> q = u.grid.quadrature_weights();
  if (u.grid.is_radial()) {
    for (std::size_t j = 0; j < q.size(); ++j) {
      const double r = u.grid.coordinate(j);
      q[j] *= a(std::span<const double>(&r, 1));
    }
  } else {
    const auto dim = static_cast<std::size_t>(u.grid.dim());
    for (std::size_t i = 0; i < q.size(); ++i) {
      const auto x = u.grid.node(i);
      q[i] *= a(std::span<const double>(x.data(), dim));
    }
  }
  return kernels::weighted_norm_sq(u.span(), q);
}

Field laplacian_apply(const Field& u) {
  Field out(u.grid, u.values, u.time_tag);
  if (u.grid.is_radial()) {
    const RadialStencil st(u.grid);
    const auto& v = u.values;
    const std::size_t n = v.size();
    for (std::size_t j = 0; j < n; ++j) {
      cplx flux = 0.0;
      if (j + 1 < n) flux += st.face[j] * (v[j + 1] - v[j]);
      else flux -= st.outer * v[j];
      if (j > 0) flux -= st.face[j - 1] * (v[j] - v[j - 1]);
      out.values[j] = flux / st.volume[j];
    }
    return out;
  }
  const auto plan = FftPlan::for_grid(u.grid);
  plan->forward(out.values);
  const std::vector<double> xi2 = u.grid.wavenumber_squared();
  for (std::size_t i = 0; i < xi2.size(); ++i) out.values[i] *= -xi2[i];
  plan->backward(out.values);
  return out;
}

}  // namespace inls
