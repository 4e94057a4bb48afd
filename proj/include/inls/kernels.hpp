#pragma once

// Data-parallel inner loops. The functions in `inls::kernels` are the
// OpenMP versions used by the library; `inls::kernels::serial` holds plain
// loops with identical signatures that serve as the reference in tests and
// benchmarks. All spans of one call must have equal length.

#include <complex>
#include <span>

namespace inls::kernels {

using cplx = std::complex<double>;

/// Σ w_i |u_i|²
double weighted_norm_sq(std::span<const cplx> u, std::span<const double> w);
/// Σ w_i |u_i|^p
double weighted_power_sum(std::span<const cplx> u, std::span<const double> w, double p);
/// max_i w_i |u_i|^p (0 for empty input)
double max_weighted_power(std::span<const cplx> u, std::span<const double> w, double p);
/// max_i |u_i|
double max_abs(std::span<const cplx> u);
/// u_i ← u_i · exp(-i · coeff · w_i |u_i|^σ); the modulus is untouched.
void apply_nonlinear_phase(std::span<cplx> u, std::span<const double> w, double coeff, double sigma);
/// u_i ← u_i · m_i
void multiply(std::span<cplx> u, std::span<const cplx> m);
/// u_i ← u_i · exp(-i · coeff · k_i)
void apply_phase(std::span<cplx> u, std::span<const double> k, double coeff);

namespace serial {
double weighted_norm_sq(std::span<const cplx> u, std::span<const double> w);
double weighted_power_sum(std::span<const cplx> u, std::span<const double> w, double p);
double max_weighted_power(std::span<const cplx> u, std::span<const double> w, double p);
double max_abs(std::span<const cplx> u);
void apply_nonlinear_phase(std::span<cplx> u, std::span<const double> w, double coeff, double sigma);
void multiply(std::span<cplx> u, std::span<const cplx> m);
void apply_phase(std::span<cplx> u, std::span<const double> k, double coeff);
}  // namespace serial

}  // namespace inls::kernels
