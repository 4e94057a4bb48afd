#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace inls {

using cplx = std::complex<double>;

enum class GridKind { tensor, radial };

std::string grid_kind_name(GridKind kind);
GridKind parse_grid_kind(const std::string& name);

/// Either a periodic tensor box [-L/2, L/2)^n (n <= 3, N a power of two per
/// axis) or a cell-centered radial line on [0, r_max]. Radial cells have
/// widths h0·q^j; q = 1 is the uniform grid r_j = (j + 1/2) h, h = r_max/N,
/// q > 1 a geometric grid that stays fine near the origin and reaches far out.
class GridSpec {
 public:
  /// Throws ParseError on invalid shapes.
  static GridSpec tensor(int dim, double extent, std::size_t points);
  /// `stretch` is the cell-width ratio q, 1 <= q < 1.5.
  static GridSpec radial(int dim, double r_max, std::size_t points, double stretch = 1.0);

  GridKind kind() const { return kind_; }
  bool is_radial() const { return kind_ == GridKind::radial; }
  int dim() const { return dim_; }
  /// Box side L for tensor grids, r_max for radial grids.
  double extent() const { return extent_; }
  /// Points per axis (tensor) or radial node count.
  std::size_t points() const { return points_; }
  /// Total number of nodes.
  std::size_t size() const;
  /// Uniform spacing; on a stretched radial grid the innermost cell width.
  double spacing() const;
  /// Cell-width ratio of a radial grid (1 for uniform and tensor grids).
  double stretch() const { return stretch_; }
  /// Position of radial cell face j, 0 <= j <= points (face 0 is the origin).
  double radial_face(std::size_t j) const;

  /// 1-D node coordinate along an axis (tensor) or radius of node i (radial),
  /// the midpoint of its cell.
  double coordinate(std::size_t i) const;
  /// Cartesian coordinates of a flattened tensor node; unused axes are 0.
  std::array<double, 3> node(std::size_t flat) const;
  /// Angular wavenumber 2πk/L of axis index i, k in {-N/2, ..., N/2-1}.
  double wavenumber(std::size_t i) const;
  /// Integer mode number k of axis index i.
  long mode_index(std::size_t i) const;

  /// Quadrature weight per node: h^n on tensor grids, shell volume on radial.
  std::vector<double> quadrature_weights() const;
  /// |x|² per node.
  std::vector<double> radius_squared() const;
  /// |ξ|² per flattened spectral index (tensor only).
  std::vector<double> wavenumber_squared() const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  GridSpec(GridKind kind, int dim, double extent, std::size_t points, double stretch = 1.0)
      : kind_(kind), dim_(dim), extent_(extent), points_(points), stretch_(stretch) {}
  GridKind kind_;
  int dim_;
  double extent_;
  std::size_t points_;
  double stretch_;
};

/// Regularized inhomogeneity (|x|² + δ²)^{-b/2}. δ = 0 is only allowed on
/// radial grids, which have no node at the origin.
struct PotentialWeight {
  double b = 0.0;
  double delta = 0.0;

  double operator()(double radius_sq) const;
  /// Samples the weight on every node; throws ParseError for δ = 0 on a
  /// tensor grid with b > 0.
  std::vector<double> sample(const GridSpec& grid) const;
  /// δ equal to one grid spacing.
  static PotentialWeight with_default_delta(double b, const GridSpec& grid);
};

/// Complex amplitude on a grid. Row-major for tensor grids.
struct Field {
  GridSpec grid;
  std::vector<cplx> values;
  double time_tag = 0.0;

  explicit Field(const GridSpec& g) : grid(g), values(g.size()) {}
  Field(const GridSpec& g, std::vector<cplx> v, double t = 0.0);

  /// Samples f at every node. Tensor grids pass Cartesian coordinates
  /// (length n); radial grids pass {r}.
  static Field sample(const GridSpec& g, const std::function<cplx(std::span<const double>)>& f);

  std::span<const cplx> span() const { return values; }
  std::span<cplx> span() { return values; }
  bool all_finite() const;
};

}  // namespace inls
