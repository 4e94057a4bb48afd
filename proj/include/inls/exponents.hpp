#pragma once

// Exact exponent bookkeeping for the H^s-critical inhomogeneous NLS
//   i u_t + Δu = λ |x|^{-b} f(u),   f(u) ~ |u|^σ u.
// Everything here is rational arithmetic; nothing touches floating point
// except the optional `to_double` used for display.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "inls/rational.hpp"

namespace inls::exponents {

enum class Coupling { focusing, defocusing, complex };

/// The tuple (n, s, b, σ). `sigma == std::nullopt` marks "critical": σ is
/// resolved to σ_s on demand.
struct CriticalityParams {
  int n = 3;
  Rational s{1};
  Rational b{1};
  std::optional<Rational> sigma;
  Coupling coupling = Coupling::focusing;
};

/// Validates n >= 1, s >= 0, b > 0 and an explicit σ > 0; throws ParseError.
void validate(const CriticalityParams& params);

/// σ_s = (4 - 2b)/(n - 2s) for s < n/2, infinity otherwise.
ExtendedRational sigma_critical(int n, const Rational& s, const Rational& b);

/// σ itself, or σ_s when the params carry the critical marker.
ExtendedRational resolved_sigma(const CriticalityParams& params);

/// 1/γ(p) from 2/γ = n/2 - n/p; `p` may be infinite. Throws for p < 2.
Rational inverse_gamma(const ExtendedRational& p, int n);

/// γ(p), infinite when the right side vanishes (p = 2). Throws for p < 2.
ExtendedRational gamma_of(const ExtendedRational& p, int n);

/// Range test: [2, 2n/(n-2)] for n >= 3, [2, ∞) for n = 2, [2, ∞] for n = 1.
bool is_admissible(const ExtendedRational& p, int n);

struct AdmissiblePair {
  ExtendedRational p;
  ExtendedRational gamma;
};

/// Throws HypothesisError when `p` is outside the admissible range.
AdmissiblePair admissible_pair(const ExtendedRational& p, int n);

struct WorkingExponent {
  Rational r;
  /// Set for n <= 2 only: the shift ε in r = (σn+n)/(σs+n-b-ε).
  std::optional<Rational> epsilon;
};

/// Working Lebesgue exponent r of the well-posedness space. For n <= 2 the
/// shift is ε = min{n-s-b, n/2}/2. Throws HypothesisError (naming the first
/// failing condition) when the well-posedness hypotheses fail.
WorkingExponent working_r(const CriticalityParams& params);

/// The companion exponent r̄: 2n/(n-2) for n >= 3, n/ε for n <= 2. When ε is
/// absent for n <= 2, r̄ is recovered from the duality relation itself.
ExtendedRational dual_exponent(const CriticalityParams& params, const Rational& r,
                               const std::optional<Rational>& epsilon = std::nullopt);

/// 1/r̄' = σ(1/r - s/n) + 1/r + b/n together with 1/r > s/n, exactly.
bool dual_pair_identity(const CriticalityParams& params, const Rational& r,
                        const std::optional<Rational>& epsilon = std::nullopt);

/// 1/γ(r̄)' = (σ+1)/γ(r). Throws HypothesisError when the well-posedness
/// hypotheses fail.
bool holder_time_identity(const CriticalityParams& params, const Rational& r,
                          const std::optional<Rational>& epsilon = std::nullopt);

/// Exponent p of the nonlinear estimate, 1/p = σ(1/r - s/n) + 1/r.
/// Returns nullopt (infeasible) when 1/r <= s/n, p <= 1, r <= 1, or p = ∞.
std::optional<Rational> nonlinear_estimate_p(const Rational& r, const Rational& s,
                                             const Rational& sigma, int n);

enum class Theorem { local_subcritical, local_critical, continuous_dependence, blowup };

/// "T1.3", "T1.7", "T1.10", "T1.13".
std::string theorem_id(Theorem t);
/// Inverse of theorem_id; throws ParseError for unknown ids.
Theorem parse_theorem(const std::string& id);

enum class Symmetry { none, finite_variance, radial, cylindrical };
std::string symmetry_name(Symmetry s);
Symmetry parse_symmetry(const std::string& name);

struct HypothesisOptions {
  /// Nonlinearity declared to be a polynomial in z, z̄ of degree 1+σ.
  bool polynomial = false;
  Symmetry symmetry = Symmetry::none;
};

struct Check {
  std::string condition;
  bool holds = false;
  /// Exact quantities compared by this condition, by name.
  std::vector<std::pair<std::string, ExtendedRational>> values;
};

struct Verdict {
  Theorem theorem;
  bool holds = false;
  std::vector<Check> checks;

  /// First failing condition, or nullptr.
  const Check* first_failure() const;
};

/// Every hypothesis of the chosen theorem, all evaluated (no short circuit).
Verdict theorem_hypotheses(Theorem theorem, const CriticalityParams& params,
                           const HypothesisOptions& options = {});

enum class RegionClass { both, extended_only, prior_only, neither };
std::string region_name(RegionClass c);

/// Compares the earlier well-posedness range (0 <= s <= 1, s < n/2,
/// 0 < b < min{2, n-2s}) with the extended one (0 <= s < n/2,
/// 0 < b < min{2, n-s, 1+(n-2s)/2}).
struct RegionReport {
  RegionClass region;
  bool prior = false;
  bool extended = false;
  Rational prior_b_bound;
  Rational extended_b_bound;
};

RegionReport region_comparison(const CriticalityParams& params);

}  // namespace inls::exponents
