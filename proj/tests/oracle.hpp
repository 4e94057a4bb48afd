#pragma once

// Independent reference arithmetic for the tests: a small fraction type on
// 128-bit integers, unrelated to the library's Rational.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace oracle {

struct Frac {
  __int128 p = 0;
  __int128 q = 1;

  Frac() = default;
  Frac(long long v) : p(v), q(1) {}  // NOLINT
  Frac(long long num, long long den) : p(num), q(den) { normalize(); }

  void normalize() {
    if (q == 0) throw std::domain_error("zero denominator");
    if (q < 0) {
      p = -p;
      q = -q;
    }
    __int128 a = p < 0 ? -p : p;
    __int128 b = q;
    while (b != 0) {
      const __int128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      p /= a;
      q /= a;
    }
  }

  static Frac raw(__int128 num, __int128 den) {
    Frac f;
    f.p = num;
    f.q = den;
    f.normalize();
    return f;
  }

  friend Frac operator+(Frac a, Frac b) { return raw(a.p * b.q + b.p * a.q, a.q * b.q); }
  friend Frac operator-(Frac a, Frac b) { return raw(a.p * b.q - b.p * a.q, a.q * b.q); }
  friend Frac operator*(Frac a, Frac b) { return raw(a.p * b.p, a.q * b.q); }
  friend Frac operator/(Frac a, Frac b) { return raw(a.p * b.q, a.q * b.p); }
  friend bool operator==(Frac a, Frac b) { return a.p == b.p && a.q == b.q; }
  friend bool operator<(Frac a, Frac b) { return a.p * b.q < b.p * a.q; }

  std::string str() const {
    auto s = [](__int128 v) {
      if (v == 0) return std::string("0");
      std::string out;
      const bool neg = v < 0;
      if (neg) v = -v;
      while (v > 0) {
        out.insert(out.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
      }
      return neg ? "-" + out : out;
    };
    return s(p) + "/" + s(q);
  }
};

inline Frac min(Frac a, Frac b) { return a < b ? a : b; }

}  // namespace oracle
