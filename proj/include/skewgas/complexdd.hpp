#pragma once
// Minimal complex arithmetic over dd: just what the complex log-gamma and
// terminating hypergeometric sums need.
#include "skewgas/dd.hpp"

namespace skewgas::numeric {

struct cdd {
  dd re{}, im{};

  constexpr cdd() = default;
  constexpr cdd(dd r) : re(r) {}
  constexpr cdd(double r) : re(r) {}
  constexpr cdd(dd r, dd i) : re(r), im(i) {}
};

inline cdd operator+(cdd a, cdd b) { return {a.re + b.re, a.im + b.im}; }
inline cdd operator-(cdd a, cdd b) { return {a.re - b.re, a.im - b.im}; }
inline cdd operator-(cdd a) { return {-a.re, -a.im}; }
inline cdd operator*(cdd a, cdd b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline cdd operator*(cdd a, dd b) { return {a.re * b, a.im * b}; }
inline cdd operator*(dd a, cdd b) { return b * a; }
inline dd abs2(cdd a) { return sqr(a.re) + sqr(a.im); }
inline cdd conj(cdd a) { return {a.re, -a.im}; }
inline cdd operator/(cdd a, cdd b) {
  dd d = abs2(b);
  cdd n = a * conj(b);
  return {n.re / d, n.im / d};
}
inline cdd operator/(cdd a, dd b) { return {a.re / b, a.im / b}; }
inline cdd& operator+=(cdd& a, cdd b) { a = a + b; return a; }
inline cdd& operator-=(cdd& a, cdd b) { a = a - b; return a; }
inline cdd& operator*=(cdd& a, cdd b) { a = a * b; return a; }
inline cdd& operator/=(cdd& a, cdd b) { a = a / b; return a; }

// principal log: log|z| + i arg z
inline cdd clog(cdd z) {
  return {mul_pwr2(log(abs2(z)), 0.5), atan2(z.im, z.re)};
}

}  // namespace skewgas::numeric

namespace skewgas { using numeric::cdd; }
