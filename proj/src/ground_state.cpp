#include "inls/ground_state.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

#include "inls/errors.hpp"

namespace inls::ground_state {

GroundStateProfile::GroundStateProfile(int n, double b, double epsilon) : n_(n), b_(b), epsilon_(epsilon) {
  if (n < 3) throw std::invalid_argument("ground state needs n >= 3");
  if (!(b >= 0.0 && b < 2.0)) throw std::invalid_argument("ground state needs 0 <= b < 2");
  if (!(epsilon > 0.0)) throw std::invalid_argument("ground state needs epsilon > 0");
  sigma1_ = (4.0 - 2.0 * b) / (n - 2);
  k_ = (n - 2) / (2.0 - b);
  amplitude_ = std::pow(epsilon * (n - b) * (n - 2), (n - 2) / (4.0 - 2.0 * b));
}

double GroundStateProfile::core_radius() const { return std::pow(epsilon_, 1.0 / (2.0 - b_)); }

double w_eval(const GroundStateProfile& p, double r) {
  if (r < 0.0) throw std::domain_error("w_eval needs r >= 0");
  return p.amplitude() * std::pow(p.epsilon() + std::pow(r, 2.0 - p.b()), -p.decay_exponent());
}

double w_grad_eval(const GroundStateProfile& p, double r) {
  if (r < 0.0) throw std::domain_error("w_grad_eval needs r >= 0");
  const double k = p.decay_exponent();
  const double two_minus_b = 2.0 - p.b();
  if (r == 0.0) {
    if (p.b() > 1.0) throw std::domain_error("dW/dr is unbounded at r = 0 for b > 1");
    if (p.b() < 1.0) return 0.0;
    return -p.amplitude() * k * two_minus_b * std::pow(p.epsilon(), -k - 1.0);
  }
  return -p.amplitude() * k * two_minus_b * std::pow(r, 1.0 - p.b()) *
         std::pow(p.epsilon() + std::pow(r, two_minus_b), -k - 1.0);
}

double unit_sphere_area(int n) {
  return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

double GroundStateQuantities::h1dot() const { return std::sqrt(h1dot_sq); }

double GroundStateQuantities::pohozaev_residual() const {
  return std::abs(h1dot_sq - potential_integral) / h1dot_sq;
}

namespace {

using Rule = boost::math::quadrature::gauss<double, 20>;

struct PanelIntegrator {
  const std::function<double(double)>& g;  // integrand in x = log r
  const QuadratureSpec& spec;
  double floor;  // absolute tolerance floor relative to the coarse total

  double refine(double a, double b, double whole, int depth) const {
    const double m = 0.5 * (a + b);
    const double left = Rule::integrate(g, a, m);
    const double right = Rule::integrate(g, m, b);
    const double halves = left + right;
    if (std::abs(halves - whole) <= spec.rel_tol * std::max(std::abs(halves), floor)) return halves;
    if (depth >= spec.max_depth) {
      throw QuadratureError("adaptive Gauss-Legendre failed to converge on [" + std::to_string(std::exp(a)) +
                            ", " + std::to_string(std::exp(b)) + "]");
    }
    return refine(a, m, left, depth + 1) + refine(m, b, right, depth + 1);
  }
};

}  // namespace

double integrate_log_panels(const std::function<double(double)>& f, double lo, double hi,
                            const QuadratureSpec& spec) {
  if (!(lo > 0.0 && hi > lo)) throw std::invalid_argument("integrate_log_panels needs 0 < lo < hi");
  const double x0 = std::log(lo);
  const double x1 = std::log(hi);
  const std::function<double(double)> g = [&f](double x) {
    const double r = std::exp(x);
    return f(r) * r;
  };
  const int panels = std::max(1, static_cast<int>(std::ceil((x1 - x0) / std::log(10.0) * spec.panels_per_decade)));
  const double width = (x1 - x0) / panels;

  std::vector<double> coarse(panels);
  double coarse_total = 0.0;
  for (int i = 0; i < panels; ++i) {
    coarse[i] = Rule::integrate(g, x0 + i * width, x0 + (i + 1) * width);
    coarse_total += std::abs(coarse[i]);
  }
  const PanelIntegrator integrator{g, spec, 1e-3 * coarse_total / panels};
  double total = 0.0;
  for (int i = 0; i < panels; ++i) {
    total += integrator.refine(x0 + i * width, x0 + (i + 1) * width, coarse[i], 0);
  }
  return total;
}

GroundStateQuantities compute_quantities(const GroundStateProfile& p, const QuadratureSpec& spec) {
  const int n = p.n();
  const double b = p.b();
  const double eps = p.epsilon();
  const double k = p.decay_exponent();
  const double sigma = p.sigma1();
  const double A = p.amplitude();
  const double rc = p.core_radius();
  const double area = unit_sphere_area(n);

  // Ḣ¹ tail decays like R^{2-n}; choose R so it sits near tail_fraction.
  double r_max = spec.r_max > 0.0 ? spec.r_max * rc
                                  : rc * std::pow(spec.tail_fraction, -1.0 / (n - 2)) * 10.0;
  const double r_min = rc * 1e-12;

  auto h1_integrand = [&](double r) {
    const double dw = w_grad_eval(p, r);
    return dw * dw * std::pow(r, n - 1);
  };
  auto pot_integrand = [&](double r) {
    return std::pow(r, n - 1 - b) * std::pow(w_eval(p, r), sigma + 2.0);
  };

  const double h1_body = integrate_log_panels(h1_integrand, r_min, r_max, spec);
  const double pot_body = integrate_log_panels(pot_integrand, r_min, r_max, spec);

  // Near 0 the integrands behave like r^{n+1-2b} and r^{n-1-b}.
  const double h1_head = h1_integrand(r_min) * r_min / (n + 2.0 - 2.0 * b);
  const double pot_head = pot_integrand(r_min) * r_min / (n - b);

  // Two leading terms of the large-r expansion.
  const double m = 2.0 * (n - b) / (2.0 - b);
  const double pot_tail = std::pow(A, sigma + 2.0) *
                          (std::pow(r_max, b - n) / (n - b) -
                           m * eps * std::pow(r_max, 2.0 * b - n - 2.0) / (n + 2.0 - 2.0 * b));
  const double c_grad = A * A * k * k * (2.0 - b) * (2.0 - b);
  const double h1_tail = c_grad * (std::pow(r_max, 2.0 - n) / (n - 2.0) -
                                   (2.0 * k + 2.0) * eps * std::pow(r_max, b - n) / (n - b));

  GroundStateQuantities q;
  q.n = n;
  q.b = b;
  q.sigma1 = sigma;
  q.h1dot_sq = area * (h1_head + h1_body + h1_tail);
  q.potential_integral = area * (pot_head + pot_body + pot_tail);
  if (!(q.h1dot_sq > 0.0) || !(q.potential_integral > 0.0) || !std::isfinite(q.h1dot_sq) ||
      !std::isfinite(q.potential_integral)) {
    throw QuadratureError("ground-state integrals are not finite and positive");
  }
  q.c_hs = std::pow(q.potential_integral, 1.0 / (sigma + 2.0)) / std::sqrt(q.h1dot_sq);
  q.energy = 0.5 * q.h1dot_sq - q.potential_integral / (sigma + 2.0);
  return q;
}

ScaledRatios scaled_energy_ratio(double c, const GroundStateQuantities& q) {
  const double s2 = q.sigma1 + 2.0;
  return {0.5 * c * c - std::pow(c, s2) / s2, c};
}

}  // namespace inls::ground_state
