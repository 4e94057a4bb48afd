#include "inls/rational.hpp"

#include <cctype>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "inls/errors.hpp"

namespace inls {

namespace {

using Integer = Rational::Integer;

Integer parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw ParseError("not a rational: '" + std::string(whole) + "'");
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw ParseError("not a rational: '" + std::string(whole) + "'");
    }
  }
  // cpp_int reads a leading 0 as an octal prefix
  const auto first = digits.find_first_not_of('0');
  return first == std::string_view::npos ? Integer(0) : Integer(std::string(digits.substr(first)));
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  // Boost 1.74 rejects a negative denominator in the two-argument form
  value_ = den < 0 ? Value(-Integer(num), -Integer(den)) : Value(Integer(num), Integer(den));
}

Rational Rational::parse(std::string_view text, std::int64_t max_decimal_den) {
  const std::string_view whole = trim(text);
  std::string_view s = whole;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) throw ParseError("not a rational: '" + std::string(whole) + "'");

  Value v;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(s.substr(0, slash), whole);
    Integer den = parse_integer(s.substr(slash + 1), whole);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(whole) + "'");
    v = Value(num, den);
  } else {
    // Decimal with optional fraction and exponent.
    std::string_view mantissa = s;
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
      mantissa = s.substr(0, e);
      std::string_view exp_text = s.substr(e + 1);
      bool exp_negative = false;
      if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
        exp_negative = exp_text.front() == '-';
        exp_text.remove_prefix(1);
      }
      if (exp_text.empty() || exp_text.size() > 4) {
        throw ParseError("bad exponent in '" + std::string(whole) + "'");
      }
      exponent = std::stol(std::string(parse_integer(exp_text, whole).str()));
      if (exp_negative) exponent = -exponent;
    }
    std::string digits;
    long fraction_digits = 0;
    if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
      std::string_view int_part = mantissa.substr(0, dot);
      std::string_view frac_part = mantissa.substr(dot + 1);
      if (int_part.empty() && frac_part.empty()) {
        throw ParseError("not a rational: '" + std::string(whole) + "'");
      }
      digits = std::string(int_part) + std::string(frac_part);
      fraction_digits = static_cast<long>(frac_part.size());
    } else {
      digits = std::string(mantissa);
    }
    Integer num = parse_integer(digits, whole);
    long scale = fraction_digits - exponent;
    if (scale > 40 || scale < -40) throw ParseError("exponent out of range in '" + std::string(whole) + "'");
    Integer ten_power = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(scale < 0 ? -scale : scale));
    v = scale >= 0 ? Value(num, ten_power) : Value(num * ten_power);
    if (boost::multiprecision::denominator(v) > max_decimal_den) {
      throw ParseError("decimal '" + std::string(whole) + "' needs a denominator above " +
                       std::to_string(max_decimal_den) + "; write it as p/q");
    }
  }
  return Rational(negative ? Value(-v) : v);
}

Rational::Integer Rational::numerator() const { return boost::multiprecision::numerator(value_); }
Rational::Integer Rational::denominator() const { return boost::multiprecision::denominator(value_); }

bool Rational::is_integer() const { return denominator() == 1; }

Rational::Integer Rational::ceil() const {
  Integer num = numerator();
  Integer den = denominator();
  Integer q = num / den;  // truncates toward zero
  if (num > 0 && q * den != num) q += 1;
  return q;
}

Rational Rational::abs() const { return value_ < 0 ? Rational(Value(-value_)) : *this; }

Rational Rational::reciprocal() const {
  if (value_ == 0) throw std::domain_error("reciprocal of zero");
  return Rational(Value(1) / value_);
}

double Rational::to_double() const { return value_.convert_to<double>(); }

std::string Rational::str() const { return numerator().str() + "/" + denominator().str(); }

Rational Rational::operator-() const { return Rational(Value(-value_)); }
Rational& Rational::operator+=(const Rational& rhs) { value_ += rhs.value_; return *this; }
Rational& Rational::operator-=(const Rational& rhs) { value_ -= rhs.value_; return *this; }
Rational& Rational::operator*=(const Rational& rhs) { value_ *= rhs.value_; return *this; }
Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.value_ == 0) throw std::domain_error("division by zero rational");
  value_ /= rhs.value_;
  return *this;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (a.value_ < b.value_) return std::strong_ordering::less;
  if (b.value_ < a.value_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

const Rational& ExtendedRational::value() const {
  if (!finite_) throw std::logic_error("value() of infinite exponent");
  return value_;
}

std::string ExtendedRational::str() const { return finite_ ? value_.str() : "inf"; }

double ExtendedRational::to_double() const {
  return finite_ ? value_.to_double() : std::numeric_limits<double>::infinity();
}

bool operator==(const ExtendedRational& a, const ExtendedRational& b) {
  if (a.finite_ != b.finite_) return false;
  return !a.finite_ || a.value_ == b.value_;
}

std::strong_ordering operator<=>(const ExtendedRational& a, const ExtendedRational& b) {
  if (!a.finite_ && !b.finite_) return std::strong_ordering::equal;
  if (!a.finite_) return std::strong_ordering::greater;
  if (!b.finite_) return std::strong_ordering::less;
  return a.value_ <=> b.value_;
}

std::ostream& operator<<(std::ostream& os, const ExtendedRational& q) { return os << q.str(); }

}  // namespace inls
