#include "inls/grid.hpp"

#include <cmath>
#include <numbers>

#include "inls/errors.hpp"
#include "inls/ground_state.hpp"

namespace inls {

std::string grid_kind_name(GridKind kind) { return kind == GridKind::tensor ? "tensor" : "radial"; }

GridKind parse_grid_kind(const std::string& name) {
  if (name == "tensor") return GridKind::tensor;
  if (name == "radial") return GridKind::radial;
  throw ParseError("unknown grid kind '" + name + "'");
}

GridSpec GridSpec::tensor(int dim, double extent, std::size_t points) {
  if (dim < 1 || dim > 3) throw ParseError("tensor grids support n = 1, 2, 3");
  if (!(extent > 0.0) || !std::isfinite(extent)) throw ParseError("tensor extent must be positive");
  if (points < 8 || (points & (points - 1)) != 0) {
    throw ParseError("tensor points per axis must be a power of two >= 8");
  }
  return GridSpec(GridKind::tensor, dim, extent, points);
}

GridSpec GridSpec::radial(int dim, double r_max, std::size_t points, double stretch) {
  if (dim < 3) throw ParseError("radial grids need n >= 3");
  if (!(r_max > 0.0) || !std::isfinite(r_max)) throw ParseError("radial r_max must be positive");
  if (points < 8) throw ParseError("radial grids need at least 8 nodes");
  if (!(stretch >= 1.0 && stretch < 1.5)) throw ParseError("radial stretch must lie in [1, 1.5)");
  const GridSpec g(GridKind::radial, dim, r_max, points, stretch);
  if (!(g.spacing() > 0.0)) throw ParseError("radial stretch too large for this node count");
  return g;
}

double GridSpec::spacing() const {
  const double n = static_cast<double>(points_);
  if (stretch_ == 1.0) return extent_ / n;
  return extent_ * (stretch_ - 1.0) / std::expm1(n * std::log(stretch_));
}

double GridSpec::radial_face(std::size_t j) const {
  if (j >= points_) return extent_;
  const double jd = static_cast<double>(j);
  if (stretch_ == 1.0) return jd * spacing();
  return spacing() * std::expm1(jd * std::log(stretch_)) / (stretch_ - 1.0);
}

std::size_t GridSpec::size() const {
  if (kind_ == GridKind::radial) return points_;
  std::size_t total = 1;
  for (int d = 0; d < dim_; ++d) total *= points_;
  return total;
}

double GridSpec::coordinate(std::size_t i) const {
  const double h = spacing();
  if (kind_ == GridKind::radial) {
    if (stretch_ == 1.0) return (static_cast<double>(i) + 0.5) * h;
    return 0.5 * (radial_face(i) + radial_face(i + 1));
  }
  return -0.5 * extent_ + static_cast<double>(i) * h;
}

std::array<double, 3> GridSpec::node(std::size_t flat) const {
  std::array<double, 3> x{0.0, 0.0, 0.0};
  for (int d = dim_ - 1; d >= 0; --d) {
    x[d] = coordinate(flat % points_);
    flat /= points_;
  }
  return x;
}

long GridSpec::mode_index(std::size_t i) const {
  const long k = static_cast<long>(i);
  const long n = static_cast<long>(points_);
  return k < n / 2 ? k : k - n;
}

double GridSpec::wavenumber(std::size_t i) const {
  return 2.0 * std::numbers::pi * static_cast<double>(mode_index(i)) / extent_;
}

std::vector<double> GridSpec::quadrature_weights() const {
  const double h = spacing();
  if (kind_ == GridKind::tensor) return std::vector<double>(size(), std::pow(h, dim_));
  // Exact shell volumes S_{n-1} (f_{j+1}^n - f_j^n) / n.
  std::vector<double> w(points_);
  const double area = ground_state::unit_sphere_area(dim_);
  if (stretch_ == 1.0) {
    const double scale = area * std::pow(h, dim_) / dim_;
    for (std::size_t j = 0; j < points_; ++j) {
      const double jd = static_cast<double>(j);
      w[j] = scale * (std::pow(jd + 1.0, dim_) - std::pow(jd, dim_));
    }
    return w;
  }
  for (std::size_t j = 0; j < points_; ++j) {
    w[j] = area / dim_ * (std::pow(radial_face(j + 1), dim_) - std::pow(radial_face(j), dim_));
  }
  return w;
}

std::vector<double> GridSpec::radius_squared() const {
  std::vector<double> r2(size());
  if (kind_ == GridKind::radial) {
    for (std::size_t j = 0; j < points_; ++j) r2[j] = coordinate(j) * coordinate(j);
    return r2;
  }
  for (std::size_t f = 0; f < r2.size(); ++f) {
    const auto x = node(f);
    r2[f] = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
  }
  return r2;
}

std::vector<double> GridSpec::wavenumber_squared() const {
  if (kind_ != GridKind::tensor) throw std::logic_error("wavenumbers exist on tensor grids only");
  std::vector<double> xi2(size());
  for (std::size_t f = 0; f < xi2.size(); ++f) {
    std::size_t rest = f;
    double sum = 0.0;
    for (int d = 0; d < dim_; ++d) {
      const double k = wavenumber(rest % points_);
      sum += k * k;
      rest /= points_;
    }
    xi2[f] = sum;
  }
  return xi2;
}

double PotentialWeight::operator()(double radius_sq) const {
  if (b == 0.0) return 1.0;
  return std::pow(radius_sq + delta * delta, -0.5 * b);
}

std::vector<double> PotentialWeight::sample(const GridSpec& grid) const {
  if (b < 0.0 || delta < 0.0) throw ParseError("potential weight needs b >= 0 and delta >= 0");
  if (grid.kind() == GridKind::tensor && b > 0.0 && delta == 0.0) {
    throw ParseError("delta = 0 is only allowed on radial grids");
  }
  std::vector<double> w = grid.radius_squared();
  for (double& v : w) v = (*this)(v);
  return w;
}

PotentialWeight PotentialWeight::with_default_delta(double b, const GridSpec& grid) {
  return {b, grid.spacing()};
}

Field::Field(const GridSpec& g, std::vector<cplx> v, double t) : grid(g), values(std::move(v)), time_tag(t) {
  if (values.size() != grid.size()) throw ParseError("field value count does not match its grid");
}

Field Field::sample(const GridSpec& g, const std::function<cplx(std::span<const double>)>& f) {
  Field u(g);
  if (g.is_radial()) {
    for (std::size_t j = 0; j < g.points(); ++j) {
      const double r = g.coordinate(j);
      u.values[j] = f(std::span<const double>(&r, 1));
    }
    return u;
  }
  for (std::size_t i = 0; i < u.values.size(); ++i) {
    const auto x = g.node(i);
    u.values[i] = f(std::span<const double>(x.data(), static_cast<std::size_t>(g.dim())));
  }
  return u;
}

bool Field::all_finite() const {
  for (const cplx& z : values) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

}  // namespace inls
