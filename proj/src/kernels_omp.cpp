#include "inls/kernels.hpp"

#include <cmath>
#include <cstddef>

namespace inls::kernels {

// Loop indices are signed for OpenMP; sizes fit comfortably.

double weighted_norm_sq(std::span<const cplx> u, std::span<const double> w) {
  const auto n = static_cast<std::ptrdiff_t>(u.size());
  double sum = 0.0;
#pragma omp parallel for reduction(+ : sum) schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) sum += w[i] * std::norm(u[i]);
  return sum;
}

double weighted_power_sum(std::span<const cplx> u, std::span<const double> w, double p) {
  const auto n = static_cast<std::ptrdiff_t>(u.size());
  const double half_p = 0.5 * p;
  double sum = 0.0;
#pragma omp parallel for reduction(+ : sum) schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) sum += w[i] * std::pow(std::norm(u[i]), half_p);
  return sum;
}

double max_weighted_power(std::span<const cplx> u, std::span<const double> w, double p) {
  const auto n = static_cast<std::ptrdiff_t>(u.size());
  const double half_p = 0.5 * p;
  double best = 0.0;
#pragma omp parallel for reduction(max : best) schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double v = w[i] * std::pow(std::norm(u[i]), half_p);
    if (v > best) best = v;
  }
  return best;
}

double max_abs(std::span<const cplx> u) {
  const auto n = static_cast<std::ptrdiff_t>(u.size());
  double best = 0.0;
#pragma omp parallel for reduction(max : best) schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double v = std::norm(u[i]);
    if (v > best) best = v;
  }
  return std::sqrt(best);
}

void apply_nonlinear_phase(std::span<cplx> u, std::span<const double> w, double coeff, double sigma) {
  const auto n = static_cast<std::ptrdiff_t>(u.size());
  const double half_sigma = 0.5 * sigma;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double angle = -coeff * w[i] * std::pow(std::norm(u[i]), half_sigma);
    u[i] *= cplx(std::cos(angle), std::sin(angle));
  }
}

void multiply(std::span<cplx> u, std::span<const cplx> m) {
  const auto n = static_cast<std::ptrdiff_t>(u.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) u[i] *= m[i];
}

void apply_phase(std::span<cplx> u, std::span<const double> k, double coeff) {
  const auto n = static_cast<std::ptrdiff_t>(u.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double angle = -coeff * k[i];
    u[i] *= cplx(std::cos(angle), std::sin(angle));
  }
}

}  // namespace inls::kernels
