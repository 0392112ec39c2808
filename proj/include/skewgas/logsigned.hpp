#pragma once
// Sign-and-log representation for quantities built from products of gamma
// values and norms: value = sign * exp(logmag).  Only multiplicative
// structure is supported; additive combinations happen after scaling back
// to dd (see logsigned_sum).
#include <cassert>
#include <span>
#include <vector>

#include "skewgas/dd.hpp"

namespace skewgas::numeric {

struct LogSigned {
  dd logmag{};
  int sign = 0;  // -1, 0, +1; logmag is meaningless when sign == 0

  static LogSigned zero() { return {}; }
  static LogSigned one() { return {dd(0.0), 1}; }
  static LogSigned from_log(dd lm, int s) {
    assert(s == -1 || s == 0 || s == 1);
    return {lm, s};
  }
  static LogSigned from_dd(dd v) {
    if (v.hi == 0.0 && v.lo == 0.0) return zero();
    return {log(fabs(v)), v.hi > 0.0 ? 1 : -1};
  }

  bool is_zero() const { return sign == 0; }

  dd to_dd() const {
    if (sign == 0) return dd(0.0);
    assert(logmag.hi < 700.0);
    dd m = exp(logmag);
    return sign > 0 ? m : -m;
  }

  friend LogSigned operator*(LogSigned a, LogSigned b) {
    if (a.sign == 0 || b.sign == 0) return zero();
    return {a.logmag + b.logmag, a.sign * b.sign};
  }
  friend LogSigned operator/(LogSigned a, LogSigned b) {
    assert(b.sign != 0);
    if (a.sign == 0) return zero();
    return {a.logmag - b.logmag, a.sign * b.sign};
  }
  LogSigned operator-() const { return {logmag, -sign}; }
  LogSigned pow_int(long n) const {
    if (n == 0) return one();
    if (sign == 0) return zero();
    int s = (sign < 0 && (n % 2 != 0)) ? -1 : 1;
    return {logmag * static_cast<double>(n), s};
  }
  LogSigned& operator*=(LogSigned b) { *this = *this * b; return *this; }
  LogSigned& operator/=(LogSigned b) { *this = *this / b; return *this; }

  // compare by signed value
  friend bool operator<(LogSigned a, LogSigned b) {
    if (a.sign != b.sign) return a.sign < b.sign;
    if (a.sign == 0) return false;
    return a.sign > 0 ? a.logmag < b.logmag : b.logmag < a.logmag;
  }
  friend bool operator>(LogSigned a, LogSigned b) { return b < a; }
};

// |a/b - 1| as a double, for tolerance checks; b must be nonzero
inline double rel_diff(LogSigned a, LogSigned b) {
  assert(b.sign != 0);
  if (a.sign == 0) return 1.0;
  if (a.sign != b.sign) return 2.0;
  dd d = a.logmag - b.logmag;
  if (std::fabs(d.hi) > 1.0) return 2.0;
  dd r = exp(d) - 1.0;
  return std::fabs(static_cast<double>(r));
}

// sum of terms, evaluated after factoring out the largest magnitude
inline LogSigned logsigned_sum(std::span<const LogSigned> terms) {
  dd m;
  bool any = false;
  for (const auto& t : terms)
    if (t.sign != 0 && (!any || t.logmag > m)) { m = t.logmag; any = true; }
  if (!any) return LogSigned::zero();
  dd acc(0.0);
  for (const auto& t : terms) {
    if (t.sign == 0) continue;
    dd v = exp(t.logmag - m);
    acc += (t.sign > 0) ? v : -v;
  }
  LogSigned r = LogSigned::from_dd(acc);
  if (r.sign != 0) r.logmag += m;
  return r;
}

}  // namespace skewgas::numeric

namespace skewgas { using numeric::LogSigned; }
