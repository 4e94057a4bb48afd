#include "inls/exponents.hpp"

#include "inls/errors.hpp"

namespace inls::exponents {

namespace {

const Rational kZero{0};
const Rational kOne{1};
const Rational kTwo{2};

Rational half(const Rational& q) { return q / kTwo; }

/// min{2, n-s, 1+(n-2s)/2}
Rational b_upper_bound(int n, const Rational& s) {
  return min(kTwo, min(Rational(n) - s, kOne + half(Rational(n) - kTwo * s)));
}

bool is_even_integer(const ExtendedRational& q) {
  if (q.is_infinite() || !q.value().is_integer()) return false;
  return q.value().numerator() % 2 == 0;
}

Check compare(std::string condition, bool holds,
              std::vector<std::pair<std::string, ExtendedRational>> values) {
  return Check{std::move(condition), holds, std::move(values)};
}

/// The shared part of every well-posedness theorem: the b-range.
void add_b_range(std::vector<Check>& checks, int n, const Rational& s, const Rational& b) {
  checks.push_back(compare("0 < b", b > kZero, {{"b", b}}));
  checks.push_back(compare("b < 2", b < kTwo, {{"b", b}, {"2", kTwo}}));
  checks.push_back(compare("b < n - s", b < Rational(n) - s, {{"b", b}, {"n - s", Rational(n) - s}}));
  const Rational third = kOne + half(Rational(n) - kTwo * s);
  checks.push_back(compare("b < 1 + (n - 2s)/2", b < third, {{"b", b}, {"1 + (n - 2s)/2", third}}));
}

void add_critical_power(std::vector<Check>& checks, const CriticalityParams& p) {
  const ExtendedRational sigma_s = sigma_critical(p.n, p.s, p.b);
  const ExtendedRational sigma = resolved_sigma(p);
  checks.push_back(compare("sigma = sigma_s", sigma_s.is_finite() && sigma == sigma_s,
                           {{"sigma", sigma}, {"sigma_s", sigma_s}}));
}

Rational ceil_rational(const Rational& q) {
  return Rational::parse(q.ceil().str());
}

}  // namespace

void validate(const CriticalityParams& params) {
  if (params.n < 1) throw ParseError("dimension n must be >= 1");
  if (params.s < kZero) throw ParseError("regularity s must be >= 0");
  if (params.b <= kZero) throw ParseError("decay b must be > 0");
  if (params.sigma && *params.sigma <= kZero) throw ParseError("power sigma must be > 0");
}

ExtendedRational sigma_critical(int n, const Rational& s, const Rational& b) {
  const Rational n_half = half(Rational(n));
  if (s >= n_half) return ExtendedRational::infinity();
  return (Rational(4) - kTwo * b) / (Rational(n) - kTwo * s);
}

ExtendedRational resolved_sigma(const CriticalityParams& params) {
  if (params.sigma) return *params.sigma;
  return sigma_critical(params.n, params.s, params.b);
}

Rational inverse_gamma(const ExtendedRational& p, int n) {
  if (p.is_finite() && p.value() < kTwo) {
    throw HypothesisError("p >= 2", "p = " + p.str());
  }
  const Rational n_over_p = p.is_infinite() ? kZero : Rational(n) / p.value();
  return half(half(Rational(n)) - n_over_p);
}

ExtendedRational gamma_of(const ExtendedRational& p, int n) {
  const Rational inv = inverse_gamma(p, n);
  if (inv.is_zero()) return ExtendedRational::infinity();
  return inv.reciprocal();
}

bool is_admissible(const ExtendedRational& p, int n) {
  if (n < 1) return false;
  if (p.is_finite() && p.value() < kTwo) return false;
  if (n == 1) return true;
  if (n == 2) return p.is_finite();
  if (p.is_infinite()) return false;
  return p.value() <= Rational(2 * n, n - 2);
}

AdmissiblePair admissible_pair(const ExtendedRational& p, int n) {
  if (!is_admissible(p, n)) {
    throw HypothesisError("admissible p", "p = " + p.str() + ", n = " + std::to_string(n));
  }
  return {p, gamma_of(p, n)};
}

WorkingExponent working_r(const CriticalityParams& params) {
  const Verdict verdict = theorem_hypotheses(Theorem::local_critical, params);
  if (!verdict.holds) {
    throw HypothesisError(verdict.first_failure()->condition, "working exponent needs T1.7");
  }
  const Rational n(params.n);
  const Rational& s = params.s;
  const Rational& b = params.b;
  const Rational sigma = resolved_sigma(params).value();
  if (params.n >= 3) {
    return {(kTwo * n * sigma + kTwo * n) / (n + kTwo + kTwo * sigma * s - kTwo * b), std::nullopt};
  }
  const Rational eps = half(min(n - s - b, half(n)));
  return {(sigma * n + n) / (sigma * s + n - b - eps), eps};
}

ExtendedRational dual_exponent(const CriticalityParams& params, const Rational& r,
                               const std::optional<Rational>& epsilon) {
  const int n = params.n;
  if (n >= 3) return Rational(2 * n, n - 2);
  if (epsilon) return Rational(n) / *epsilon;
  const Rational sigma = resolved_sigma(params).value();
  const Rational inv_dual_prime =
      sigma * (r.reciprocal() - params.s / Rational(n)) + r.reciprocal() + params.b / Rational(n);
  const Rational inv_dual = kOne - inv_dual_prime;
  if (inv_dual <= kZero) return ExtendedRational::infinity();
  return inv_dual.reciprocal();
}

bool dual_pair_identity(const CriticalityParams& params, const Rational& r,
                        const std::optional<Rational>& epsilon) {
  const ExtendedRational sigma_ext = resolved_sigma(params);
  if (sigma_ext.is_infinite() || r <= kZero) return false;
  const Rational& sigma = sigma_ext.value();
  const Rational n(params.n);
  const Rational inv_r = r.reciprocal();
  if (!(inv_r > params.s / n)) return false;

  const ExtendedRational dual = dual_exponent(params, r, epsilon);
  if (dual.is_infinite() || !is_admissible(dual, params.n) || !(dual.value() > kTwo)) return false;
  const Rational inv_dual_prime = kOne - dual.value().reciprocal();
  return inv_dual_prime == sigma * (inv_r - params.s / n) + inv_r + params.b / n;
}

bool holder_time_identity(const CriticalityParams& params, const Rational& r,
                          const std::optional<Rational>& epsilon) {
  const Verdict verdict = theorem_hypotheses(Theorem::local_critical, params);
  if (!verdict.holds) {
    throw HypothesisError(verdict.first_failure()->condition, "time exponents need T1.7");
  }
  if (!is_admissible(r, params.n)) return false;
  const ExtendedRational dual = dual_exponent(params, r, epsilon);
  if (!is_admissible(dual, params.n)) return false;
  const Rational sigma = resolved_sigma(params).value();
  // 1/γ(r̄)' = 1 - 1/γ(r̄)
  return kOne - inverse_gamma(dual, params.n) == (sigma + kOne) * inverse_gamma(r, params.n);
}

std::optional<Rational> nonlinear_estimate_p(const Rational& r, const Rational& s,
                                             const Rational& sigma, int n) {
  if (r <= kOne) return std::nullopt;
  const Rational inv_r = r.reciprocal();
  const Rational gap = inv_r - s / Rational(n);
  if (gap <= kZero) return std::nullopt;
  const Rational inv_p = sigma * gap + inv_r;
  if (inv_p <= kZero || inv_p >= kOne) return std::nullopt;
  return inv_p.reciprocal();
}

std::string theorem_id(Theorem t) {
  switch (t) {
    case Theorem::local_subcritical: return "T1.3";
    case Theorem::local_critical: return "T1.7";
    case Theorem::continuous_dependence: return "T1.10";
    case Theorem::blowup: return "T1.13";
  }
  return "?";
}

Theorem parse_theorem(const std::string& id) {
  for (Theorem t : {Theorem::local_subcritical, Theorem::local_critical,
                    Theorem::continuous_dependence, Theorem::blowup}) {
    if (theorem_id(t) == id) return t;
  }
  throw ParseError("unknown theorem id '" + id + "' (expected T1.3, T1.7, T1.10 or T1.13)");
}

std::string symmetry_name(Symmetry s) {
  switch (s) {
    case Symmetry::none: return "none";
    case Symmetry::finite_variance: return "finite_variance";
    case Symmetry::radial: return "radial";
    case Symmetry::cylindrical: return "cylindrical";
  }
  return "?";
}

Symmetry parse_symmetry(const std::string& name) {
  for (Symmetry s : {Symmetry::none, Symmetry::finite_variance, Symmetry::radial, Symmetry::cylindrical}) {
    if (symmetry_name(s) == name) return s;
  }
  throw ParseError("unknown symmetry '" + name + "'");
}

const Check* Verdict::first_failure() const {
  for (const Check& c : checks) {
    if (!c.holds) return &c;
  }
  return nullptr;
}

Verdict theorem_hypotheses(Theorem theorem, const CriticalityParams& p, const HypothesisOptions& options) {
  Verdict v{theorem, false, {}};
  auto& checks = v.checks;
  const Rational n(p.n);
  const Rational n_half = half(n);
  const ExtendedRational sigma = resolved_sigma(p);

  switch (theorem) {
    case Theorem::local_subcritical: {
      const Rational s_cap = min(n, n_half + kOne);
      checks.push_back(compare("n >= 1", p.n >= 1, {{"n", n}}));
      checks.push_back(compare("0 <= s", p.s >= kZero, {{"s", p.s}}));
      checks.push_back(compare("s < min{n, n/2 + 1}", p.s < s_cap, {{"s", p.s}, {"min{n, n/2 + 1}", s_cap}}));
      add_b_range(checks, p.n, p.s, p.b);
      const ExtendedRational sigma_s = sigma_critical(p.n, p.s, p.b);
      checks.push_back(compare("0 < sigma < sigma_s", sigma > ExtendedRational(0) && sigma < sigma_s,
                               {{"sigma", sigma}, {"sigma_s", sigma_s}}));
      const Rational floor_bound = ceil_rational(p.s) - kOne;
      checks.push_back(compare("model case: sigma even integer or sigma > ceil(s) - 1",
                               is_even_integer(sigma) || sigma > ExtendedRational(floor_bound),
                               {{"sigma", sigma}, {"ceil(s) - 1", floor_bound}}));
      break;
    }
    case Theorem::local_critical: {
      checks.push_back(compare("n >= 1", p.n >= 1, {{"n", n}}));
      checks.push_back(compare("0 <= s", p.s >= kZero, {{"s", p.s}}));
      checks.push_back(compare("s < n/2", p.s < n_half, {{"s", p.s}, {"n/2", n_half}}));
      add_b_range(checks, p.n, p.s, p.b);
      add_critical_power(checks, p);
      const Rational floor_bound = ceil_rational(p.s) - kOne;
      checks.push_back(compare("model case: sigma even integer or sigma > ceil(s) - 1",
                               is_even_integer(sigma) || sigma > ExtendedRational(floor_bound),
                               {{"sigma", sigma}, {"ceil(s) - 1", floor_bound}}));
      break;
    }
    case Theorem::continuous_dependence: {
      checks.push_back(compare("n >= 1", p.n >= 1, {{"n", n}}));
      checks.push_back(compare("0 < s", p.s > kZero, {{"s", p.s}}));
      checks.push_back(compare("s < n/2", p.s < n_half, {{"s", p.s}, {"n/2", n_half}}));
      add_b_range(checks, p.n, p.s, p.b);
      add_critical_power(checks, p);
      const Rational ceil_s = ceil_rational(p.s);
      const bool fractional_branch = p.s > kZero && p.s < kOne && sigma > ExtendedRational(1);
      const bool integer_branch = p.s >= kOne && sigma >= ExtendedRational(ceil_s);
      checks.push_back(compare(
          "dependence clause: polynomial, sigma even integer, (0<s<1 and sigma>1) or (s>=1 and sigma>=ceil(s))",
          options.polynomial || is_even_integer(sigma) || fractional_branch || integer_branch,
          {{"sigma", sigma}, {"s", p.s}, {"ceil(s)", ceil_s}}));
      break;
    }
    case Theorem::blowup: {
      checks.push_back(compare("n >= 3", p.n >= 3, {{"n", n}}));
      checks.push_back(compare("0 < b", p.b > kZero, {{"b", p.b}}));
      checks.push_back(compare("b < 2", p.b < kTwo, {{"b", p.b}, {"2", kTwo}}));
      checks.push_back(compare("b < n/2", p.b < n_half, {{"b", p.b}, {"n/2", n_half}}));
      const ExtendedRational sigma_1 = p.n >= 3 ? ExtendedRational((Rational(4) - kTwo * p.b) / (n - kTwo))
                                                : ExtendedRational::infinity();
      checks.push_back(compare("sigma = (4 - 2b)/(n - 2)", sigma_1.is_finite() && sigma == sigma_1,
                               {{"sigma", sigma}, {"(4 - 2b)/(n - 2)", sigma_1}}));
      if (options.symmetry == Symmetry::cylindrical) {
        const Rational bound = Rational(4) - n;
        checks.push_back(compare("b >= 4 - n", p.b >= bound, {{"b", p.b}, {"4 - n", bound}}));
      }
      break;
    }
  }

  v.holds = true;
  for (const Check& c : checks) v.holds = v.holds && c.holds;
  return v;
}

std::string region_name(RegionClass c) {
  switch (c) {
    case RegionClass::both: return "both";
    case RegionClass::extended_only: return "extended_only";
    case RegionClass::prior_only: return "prior_only";
    case RegionClass::neither: return "neither";
  }
  return "?";
}

RegionReport region_comparison(const CriticalityParams& p) {
  const Rational n(p.n);
  RegionReport report{};
  report.prior_b_bound = min(kTwo, n - kTwo * p.s);
  report.extended_b_bound = b_upper_bound(p.n, p.s);
  const bool s_in_range = p.s >= kZero && p.s < half(n);
  report.prior = s_in_range && p.s <= kOne && p.b > kZero && p.b < report.prior_b_bound;
  report.extended = s_in_range && p.b > kZero && p.b < report.extended_b_bound;
  if (report.prior && report.extended) {
    report.region = RegionClass::both;
  } else if (report.extended) {
    report.region = RegionClass::extended_only;
  } else if (report.prior) {
    report.region = RegionClass::prior_only;
  } else {
    report.region = RegionClass::neither;
  }
  return report;
}

}  // namespace inls::exponents
