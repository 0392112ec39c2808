#include "skewgas/dd.hpp"

#include <cassert>
#include <cctype>
#include <cstdio>
#include <stdexcept>
#include <vector>

namespace skewgas::numeric {

namespace {
constexpr dd inv_fact[] = {
    {0.5, 0.0},
    {0.16666666666666666, 9.25185853854297e-18},
    {0.041666666666666664, 2.3129646346357427e-18},
    {0.008333333333333333, 1.1564823173178714e-19},
    {0.001388888888888889, -5.300543954373577e-20},
    {0.0001984126984126984, 1.7209558293420705e-22},
    {2.48015873015873e-05, 2.1511947866775882e-23},
    {2.7557319223985893e-06, -1.858393274046472e-22},
    {2.755731922398589e-07, 2.3767714622250297e-23},
    {2.505210838544172e-08, -1.448814070935912e-24},
    {2.08767569878681e-09, -1.20734505911326e-25},
    {1.6059043836821613e-10, 1.2585294588752098e-26},
    {1.1470745597729725e-11, 2.0655512752830745e-28},
    {7.647163731819816e-13, 7.03872877733453e-30},
    {4.779477332387385e-14, 4.399205485834081e-31},
    {2.8114572543455206e-15, 1.6508842730861433e-31},
    {1.5619206968586225e-16, 1.1910679660273754e-32},
    {8.22063524662433e-18, 2.2141894119604265e-34},
    {4.110317623312165e-19, 1.4412973378659527e-36},
    {1.9572941063391263e-20, -1.3643503830087908e-36},
    {8.896791392450574e-22, -7.911402614872376e-38},
    {3.868170170630684e-23, -8.843177655482344e-40},
    {1.6117375710961184e-24, -3.6846573564509766e-41},
    {6.446950284384474e-26, -1.9330404233703465e-42},
    {2.4795962632247976e-27, -1.2953730964765229e-43},
    {9.183689863795546e-29, 1.4303150396787322e-45},
    {3.279889237069838e-30, 1.5117542744029879e-46},
    {1.1309962886447716e-31, 1.0498015412959506e-47},
    {3.7699876288159054e-33, 2.5870347832750324e-49},
    {1.216125041553518e-34, 5.586290567888806e-51},
    {3.8003907548547434e-36, 1.7457158024652518e-52},
    {1.151633562077195e-37, -6.09957445788454e-54},
};  // 1/2! .. 1/33!
}  // namespace

dd exp(dd a) {
  // e^a = 2^m (e^r)^512 with r = (a - m ln2)/512, |r| <= ln2/1024
  if (a.hi <= -709.0) return dd(0.0);
  if (a.hi >= 709.0) return dd(HUGE_VAL);
  if (a.hi == 0.0 && a.lo == 0.0) return dd(1.0);
  double m = std::floor(a.hi / k_ln2.hi + 0.5);
  dd r = mul_pwr2(a - k_ln2 * m, 1.0 / 512.0);
  dd p = sqr(r);
  dd s = r + mul_pwr2(p, 0.5);  // e^r - 1 so far
  dd t;
  int i = 1;  // index into inv_fact: next factor 1/3!
  do {
    p = p * r;
    t = p * inv_fact[i++];
    s = s + t;
  } while (std::fabs(t.hi) > 5e-35 && i < 16);
  // unscale: e^{2r}-1 = 2(e^r-1) + (e^r-1)^2, nine times
  for (int k = 0; k < 9; ++k) s = mul_pwr2(s, 2.0) + sqr(s);
  s = s + 1.0;
  return ldexp(s, static_cast<int>(m));
}

dd log(dd a) {
  assert(a.hi > 0.0);
  // Newton on x -> x + a e^{-x} - 1 from the double seed (quadratic, so one
  // iteration reaches dd accuracy; do two for safety)
  dd x(std::log(a.hi));
  x = x + a * exp(-x) - 1.0;
  x = x + a * exp(-x) - 1.0;
  return x;
}

dd sqrt(dd a) {
  assert(a.hi >= 0.0);
  if (a.hi == 0.0) return dd(0.0);
  double s0 = std::sqrt(a.hi);
  // one dd Newton step from the double seed
  dd s(s0);
  s = s + (a - sqr(s)) / mul_pwr2(s, 2.0);
  s = s + (a - sqr(s)) / mul_pwr2(s, 2.0);
  return s;
}

namespace {
// Taylor sin/cos for |r| <= pi/4 + eps
dd sin_taylor(dd r) {
  if (r.hi == 0.0 && r.lo == 0.0) return dd(0.0);
  dd x2 = sqr(r);
  dd s = r;
  dd num = r;
  for (int m = 1; m <= 16; ++m) {
    num = num * x2;
    dd t = num * inv_fact[2 * m - 1];  // 1/(2m+1)!
    if (m % 2 == 1) s = s - t; else s = s + t;
    if (std::fabs(t.hi) < 1e-35) break;
  }
  return s;
}

dd cos_taylor(dd r) {
  dd x2 = sqr(r);
  dd s(1.0);
  dd num(1.0);
  for (int m = 1; m <= 16; ++m) {
    num = num * x2;
    dd t = num * inv_fact[2 * m - 2];  // 1/(2m)!
    if (m % 2 == 1) s = s - t; else s = s + t;
    if (std::fabs(t.hi) < 1e-35) break;
  }
  return s;
}
}  // namespace

void sincos(dd a, dd& s, dd& c) {
  // reduce modulo pi/2; adequate for the moderate arguments used here
  dd k = round_nearest(a / k_pi_2);
  double kd = k.hi;
  dd r = a - k_pi_2 * kd;
  long j = (static_cast<long>(kd) % 4 + 4) % 4;
  dd sr = sin_taylor(r), cr = cos_taylor(r);
  switch (j) {
    case 0: s = sr; c = cr; break;
    case 1: s = cr; c = -sr; break;
    case 2: s = -sr; c = -cr; break;
    default: s = -cr; c = sr; break;
  }
}

dd sin(dd a) { dd s, c; sincos(a, s, c); return s; }
dd cos(dd a) { dd s, c; sincos(a, s, c); return c; }
dd tan(dd a) { dd s, c; sincos(a, s, c); return s / c; }

dd sinpi(dd a) {
  // reduce on the exact argument a: sin(pi a) with a = n + f, |f| <= 1/2
  dd n = round_nearest(a);
  dd f = a - n;
  dd s = sin_taylor(k_pi * f);  // |pi f| <= pi/2; Taylor still accurate there
  // Taylor at pi/2 needs a few more terms; fold through cos for |f|>1/4
  if (std::fabs(f.hi) > 0.25) {
    dd g = (f.hi > 0 ? dd(0.5) - f : dd(-0.5) - f);
    s = cos_taylor(k_pi * g);
    if (f.hi < 0) s = -s;
  }
  long ni = static_cast<long>(n.hi);
  return (ni % 2 == 0) ? s : -s;
}

dd atan(dd x) {
  if (x.hi == 0.0 && x.lo == 0.0) return dd(0.0);
  // double seed + one correction step:
  // atan x = t0 + atan(eps), eps = (x - tan t0)/(1 + x tan t0) ~ 1e-16
  double t0 = std::atan(x.hi);
  dd s, c;
  sincos(dd(t0), s, c);
  dd tt = s / c;
  dd eps = (x - tt) / (1.0 + x * tt);
  return dd(t0) + eps;  // atan(eps) = eps to dd accuracy
}

dd atan2(dd y, dd x) {
  if (x.hi == 0.0 && x.lo == 0.0) {
    assert(!(y.hi == 0.0 && y.lo == 0.0));
    return y.hi > 0.0 ? k_pi_2 : -k_pi_2;
  }
  dd a = atan(y / x);
  if (x.hi > 0.0) return a;
  return y.hi >= 0.0 ? a + k_pi : a - k_pi;
}

dd sinh(dd a) {
  if (std::fabs(a.hi) < 0.05) {
    // Taylor to avoid cancellation near 0
    dd x2 = sqr(a);
    dd s = a, num = a;
    for (int m = 1; m <= 8; ++m) {
      num = num * x2;
      dd t = num * inv_fact[2 * m - 1];
      s = s + t;
      if (std::fabs(t.hi) < 1e-35) break;
    }
    return s;
  }
  dd e = exp(a);
  return mul_pwr2(e - 1.0 / e, 0.5);
}

dd cosh(dd a) {
  dd e = exp(a);
  return mul_pwr2(e + 1.0 / e, 0.5);
}

dd powi(dd a, long n) {
  if (n == 0) return dd(1.0);
  bool invert = n < 0;
  unsigned long m = invert ? -static_cast<unsigned long>(n) : static_cast<unsigned long>(n);
  dd r(1.0), b = a;
  while (m) {
    if (m & 1) r = r * b;
    m >>= 1;
    if (m) b = sqr(b);
  }
  return invert ? dd(1.0) / r : r;
}

dd pow(dd a, dd b) {
  assert(a.hi > 0.0);
  return exp(b * log(a));
}

std::string to_string(dd a, int digits) {
  if (digits < 1) digits = 1;
  if (digits > 34) digits = 34;
  if (!std::isfinite(a.hi)) return a.hi > 0 ? "inf" : (a.hi < 0 ? "-inf" : "nan");
  bool neg = a.hi < 0.0;
  dd r = fabs(a);
  if (r.hi == 0.0) {
    std::string z = "0.";
    z.append(digits - 1, '0');
    return z + "e+00";
  }
  int e = static_cast<int>(std::floor(std::log10(r.hi)));
  r = r / powi(dd(10.0), e);
  if (r >= dd(10.0)) { r = r / 10.0; ++e; }
  if (r < dd(1.0)) { r = r * 10.0; --e; }
  int nd = digits + 1;  // one guard digit for rounding
  std::vector<int> dig(nd);
  for (int i = 0; i < nd; ++i) {
    int d = static_cast<int>(r.hi);
    r = (r - dd(static_cast<double>(d))) * 10.0;
    dig[i] = d;
  }
  for (int i = nd - 1; i > 0; --i) {  // fix digit over/underflow
    if (dig[i] < 0) { dig[i - 1] -= 1; dig[i] += 10; }
    if (dig[i] > 9) { dig[i - 1] += 1; dig[i] -= 10; }
  }
  if (dig[nd - 1] >= 5) {  // round the guard digit
    dig[nd - 2] += 1;
    int i = nd - 2;
    while (i > 0 && dig[i] > 9) { dig[i] -= 10; dig[i - 1] += 1; --i; }
  }
  if (dig[0] > 9) {  // carried past the leading digit (9.99... -> 10.0)
    ++e;
    dig[0] = 1;
    for (int i = 1; i < digits; ++i) dig[i] = 0;
  }
  std::string out;
  if (neg) out += '-';
  out += static_cast<char>('0' + dig[0]);
  out += '.';
  for (int i = 1; i < digits; ++i) out += static_cast<char>('0' + dig[i]);
  char buf[16];
  std::snprintf(buf, sizeof buf, "e%+03d", e);
  out += buf;
  return out;
}

dd from_string(const std::string& s) {
  const char* p = s.c_str();
  while (std::isspace(static_cast<unsigned char>(*p))) ++p;
  int sign = 1;
  if (*p == '+') ++p;
  else if (*p == '-') { sign = -1; ++p; }
  dd v(0.0);
  int exp10 = 0;
  bool seen_digit = false, seen_point = false;
  for (; *p; ++p) {
    char c = *p;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      v = v * 10.0 + static_cast<double>(c - '0');
      if (seen_point) --exp10;
      seen_digit = true;
    } else if (c == '.') {
      if (seen_point) throw std::invalid_argument("bad dd literal: " + s);
      seen_point = true;
    } else if (c == 'e' || c == 'E') {
      exp10 += std::atoi(p + 1);
      break;
    } else {
      throw std::invalid_argument("bad dd literal: " + s);
    }
  }
  if (!seen_digit) throw std::invalid_argument("bad dd literal: " + s);
  if (exp10 != 0) v = v * powi(dd(10.0), exp10);
  return sign < 0 ? -v : v;
}

}  // namespace skewgas::numeric
