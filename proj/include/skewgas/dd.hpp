#pragma once
// Double-double arithmetic: a value is the unevaluated sum hi + lo of two
// doubles with |lo| <= ulp(hi)/2, giving ~106 significand bits (~32 decimal
// digits).  Error-free transforms are the classical Dekker/Knuth ones; the
// algorithm set follows the QD library conventions.  two_prod relies on a
// correctly rounded fma.
#include <cmath>
#include <cstdint>
#include <string>

namespace skewgas::numeric {

struct dd {
  double hi = 0.0;
  double lo = 0.0;

  constexpr dd() = default;
  constexpr dd(double h) : hi(h) {}
  constexpr dd(double h, double l) : hi(h), lo(l) {}
  constexpr dd(int v) : hi(v) {}
  constexpr dd(long v) : hi(static_cast<double>(v)) {}

  explicit operator double() const { return hi + lo; }
};

// s + err == a + b exactly
inline dd two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

// requires |a| >= |b| (or a == 0)
inline dd quick_two_sum(double a, double b) {
  double s = a + b;
  return {s, b - (s - a)};
}

// p + err == a * b exactly
inline dd two_prod(double a, double b) {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline dd operator+(dd a, dd b) {
  dd s = two_sum(a.hi, b.hi);
  dd t = two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline dd operator+(dd a, double b) {
  dd s = two_sum(a.hi, b);
  s.lo += a.lo;
  return quick_two_sum(s.hi, s.lo);
}
inline dd operator+(double a, dd b) { return b + a; }

inline dd operator-(dd a) { return {-a.hi, -a.lo}; }
inline dd operator-(dd a, dd b) { return a + (-b); }
inline dd operator-(dd a, double b) { return a + (-b); }
inline dd operator-(double a, dd b) { return (-b) + a; }

inline dd operator*(dd a, dd b) {
  dd p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p.hi, p.lo);
}

inline dd operator*(dd a, double b) {
  dd p = two_prod(a.hi, b);
  p.lo += a.lo * b;
  return quick_two_sum(p.hi, p.lo);
}
inline dd operator*(double a, dd b) { return b * a; }

// exact scaling by a power of two
inline dd mul_pwr2(dd a, double p2) { return {a.hi * p2, a.lo * p2}; }

inline dd operator/(dd a, dd b) {
  double q1 = a.hi / b.hi;
  dd r = a - b * q1;
  double q2 = r.hi / b.hi;
  r = r - b * q2;
  double q3 = r.hi / b.hi;
  dd q = quick_two_sum(q1, q2);
  return q + q3;
}
inline dd operator/(dd a, double b) { return a / dd(b); }
inline dd operator/(double a, dd b) { return dd(a) / b; }

inline dd& operator+=(dd& a, dd b) { a = a + b; return a; }
inline dd& operator-=(dd& a, dd b) { a = a - b; return a; }
inline dd& operator*=(dd& a, dd b) { a = a * b; return a; }
inline dd& operator/=(dd& a, dd b) { a = a / b; return a; }
inline dd& operator+=(dd& a, double b) { a = a + b; return a; }
inline dd& operator-=(dd& a, double b) { a = a - b; return a; }
inline dd& operator*=(dd& a, double b) { a = a * b; return a; }
inline dd& operator/=(dd& a, double b) { a = a / dd(b); return a; }

inline bool operator==(dd a, dd b) { return a.hi == b.hi && a.lo == b.lo; }
inline bool operator!=(dd a, dd b) { return !(a == b); }
inline bool operator<(dd a, dd b) {
  return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}
inline bool operator>(dd a, dd b) { return b < a; }
inline bool operator<=(dd a, dd b) { return !(b < a); }
inline bool operator>=(dd a, dd b) { return !(a < b); }
inline bool operator==(dd a, double b) { return a == dd(b); }
inline bool operator<(dd a, double b) { return a < dd(b); }
inline bool operator>(dd a, double b) { return a > dd(b); }
inline bool operator<=(dd a, double b) { return a <= dd(b); }
inline bool operator>=(dd a, double b) { return a >= dd(b); }

inline dd fabs(dd a) { return a.hi < 0.0 ? -a : a; }
inline dd sqr(dd a) {
  dd p = two_prod(a.hi, a.hi);
  p.lo += 2.0 * a.hi * a.lo;
  return quick_two_sum(p.hi, p.lo);
}
inline bool isfinite(dd a) { return std::isfinite(a.hi); }

inline dd floor(dd a) {
  double f = std::floor(a.hi);
  if (f == a.hi) return quick_two_sum(f, std::floor(a.lo));
  return {f, 0.0};
}
inline dd round_nearest(dd a) { return floor(a + dd(0.5)); }

inline dd ldexp(dd a, int n) { return {std::ldexp(a.hi, n), std::ldexp(a.lo, n)}; }

// ~2^-104, the relative rounding unit of dd
inline constexpr double dd_eps = 4.93038065763132e-32;

inline constexpr dd k_pi{3.141592653589793, 1.2246467991473532e-16};
inline constexpr dd k_pi_2{1.5707963267948966, 6.123233995736766e-17};
inline constexpr dd k_pi_4{0.7853981633974483, 3.061616997868383e-17};
inline constexpr dd k_2pi{6.283185307179586, 2.4492935982947064e-16};
inline constexpr dd k_ln2{0.6931471805599453, 2.3190468138462996e-17};
inline constexpr dd k_ln10{2.302585092994046, -2.1707562233822494e-16};
inline constexpr dd k_half_ln_2pi{0.9189385332046728, -3.8782941580672414e-17};

dd exp(dd a);
dd log(dd a);    // a > 0
dd sqrt(dd a);   // a >= 0
void sincos(dd a, dd& s, dd& c);
dd sin(dd a);
dd cos(dd a);
dd tan(dd a);
dd sinpi(dd a);  // sin(pi*a), reduced on a
dd atan(dd x);
dd atan2(dd y, dd x);
dd sinh(dd a);
dd cosh(dd a);
dd powi(dd a, long n);
dd pow(dd a, dd b);  // a > 0

// round-trip capable decimal form, "-d.dddd...e+xx"
std::string to_string(dd a, int digits = 32);
dd from_string(const std::string& s);

}  // namespace skewgas::numeric

namespace skewgas { using numeric::dd; }
