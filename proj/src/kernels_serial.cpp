#include <cmath>
#include <cstddef>

#include "inls/kernels.hpp"

namespace inls::kernels::serial {

double weighted_norm_sq(std::span<const cplx> u, std::span<const double> w) {
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) sum += w[i] * std::norm(u[i]);
  return sum;
}

double weighted_power_sum(std::span<const cplx> u, std::span<const double> w, double p) {
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) sum += w[i] * std::pow(std::abs(u[i]), p);
  return sum;
}

double max_weighted_power(std::span<const cplx> u, std::span<const double> w, double p) {
  double best = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) best = std::max(best, w[i] * std::pow(std::abs(u[i]), p));
  return best;
}

double max_abs(std::span<const cplx> u) {
  double best = 0.0;
  for (const cplx& z : u) best = std::max(best, std::abs(z));
  return best;
}

void apply_nonlinear_phase(std::span<cplx> u, std::span<const double> w, double coeff, double sigma) {
  for (std::size_t i = 0; i < u.size(); ++i) {
    u[i] *= std::polar(1.0, -coeff * w[i] * std::pow(std::abs(u[i]), sigma));
  }
}

void multiply(std::span<cplx> u, std::span<const cplx> m) {
  for (std::size_t i = 0; i < u.size(); ++i) u[i] *= m[i];
}

void apply_phase(std::span<cplx> u, std::span<const double> k, double coeff) {
  for (std::size_t i = 0; i < u.size(); ++i) u[i] *= std::polar(1.0, -coeff * k[i]);
}

}  // namespace inls::kernels::serial
