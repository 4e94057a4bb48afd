#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace inls {

/// Exact rational number with arbitrary-precision numerator and denominator.
///
/// Always held in lowest terms with a positive denominator. There is no
/// implicit conversion from floating point: a double can only enter through
/// `parse`, which accepts decimal strings whose reduced denominator is small.
class Rational {
 public:
  using Integer = boost::multiprecision::cpp_int;

  Rational() = default;
  Rational(std::int64_t value) : value_(value) {}  // NOLINT: integers are exact
  Rational(std::int64_t num, std::int64_t den);

  /// Accepts "p", "p/q", and decimals such as "0.25" or "-1.5e-2". Decimals are
  /// admitted only when the reduced denominator is at most `max_decimal_den`.
  static Rational parse(std::string_view text, std::int64_t max_decimal_den = 1'000'000);

  Integer numerator() const;
  Integer denominator() const;

  bool is_integer() const;
  bool is_zero() const { return value_ == 0; }
  int sign() const { return value_.sign(); }

  /// Smallest integer >= *this.
  Integer ceil() const;
  Rational abs() const;
  Rational reciprocal() const;
  double to_double() const;

  /// "num/den", always with an explicit denominator ("2/1").
  std::string str() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  using Value = boost::multiprecision::cpp_rational;
  explicit Rational(Value v) : value_(std::move(v)) {}
  Value value_{0};
};

Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

std::ostream& operator<<(std::ostream& os, const Rational& q);

/// A rational or the distinguished value +infinity. Infinity is never
/// approximated by a large rational.
class ExtendedRational {
 public:
  ExtendedRational(Rational value) : finite_(true), value_(std::move(value)) {}  // NOLINT
  ExtendedRational(std::int64_t value) : finite_(true), value_(value) {}        // NOLINT
  static ExtendedRational infinity() { return ExtendedRational(); }

  bool is_infinite() const { return !finite_; }
  bool is_finite() const { return finite_; }
  /// Throws std::logic_error when infinite.
  const Rational& value() const;
  std::string str() const;
  double to_double() const;

  friend bool operator==(const ExtendedRational& a, const ExtendedRational& b);
  friend std::strong_ordering operator<=>(const ExtendedRational& a, const ExtendedRational& b);

 private:
  ExtendedRational() : finite_(false) {}
  bool finite_;
  Rational value_;
};

std::ostream& operator<<(std::ostream& os, const ExtendedRational& q);

}  // namespace inls
