#include "skewgas/gammafn.hpp"

#include <cassert>
#include <cmath>

namespace skewgas::numeric {

namespace {
// B_{2k} / (2k (2k-1)) for k = 1..18
constexpr dd stirling_c[] = {
    {0.08333333333333333, 4.625929269271485e-18},
    {-0.002777777777777778, 1.0601087908747154e-19},
    {0.0007936507936507937, 6.883823317368282e-22},
    {-0.0005952380952380953, 5.36938218754726e-20},
    {0.0008417508417508417, 3.6870174889237694e-20},
    {-0.0019175269175269176, 1.0675702776872475e-19},
    {0.00641025641025641, 2.2240044563805217e-19},
    {-0.029550653594771242, 4.861760957508855e-19},
    {0.17964437236883057, -6.401600482710946e-19},
    {-1.3924322169059011, 1.5837056989230303e-17},
    {13.402864044168393, -6.154114101993966e-16},
    {-156.84828462600203, 9.391823141715389e-15},
    {2193.1033333333335, -1.3339255626002948e-13},
    {-36108.77125372499, 5.897583353514365e-13},
    {691472.268851313, 2.5585296305158e-11},
    {-15238221.539407415, -8.76774522490625e-10},
    {382900751.39141417, -2.4082684757733585e-08},
    {-10882266035.784391, 3.141830930219749e-07},
};
constexpr double shift_to = 32.0;

// Stirling series, valid for x >= shift_to
dd stirling(dd x) {
  dd lg = (x - dd(0.5)) * log(x) - x + k_half_ln_2pi;
  dd x2inv = dd(1.0) / sqr(x);
  dd t = dd(1.0) / x;
  for (const dd& c : stirling_c) {
    dd term = c * t;
    lg += term;
    if (std::fabs(term.hi) < 1e-36 * std::fabs(lg.hi)) break;
    t = t * x2inv;
  }
  return lg;
}

cdd stirling(cdd z) {
  cdd lg = (z - cdd(dd(0.5))) * clog(z) - z + cdd(k_half_ln_2pi);
  cdd z2inv = cdd(dd(1.0)) / (z * z);
  cdd t = cdd(dd(1.0)) / z;
  for (const dd& c : stirling_c) {
    cdd term = t * c;
    lg += term;
    if (std::fabs(term.re.hi) + std::fabs(term.im.hi) < 1e-36) break;
    t = t * z2inv;
  }
  return lg;
}
}  // namespace

dd log_gamma_real(dd x) {
  assert(x.hi > 0.0);
  if (x.hi >= shift_to) return stirling(x);
  // logGamma(x) = logGamma(x+m) - sum log(x+i)
  int m = static_cast<int>(shift_to - x.hi) + 1;
  dd s(0.0);
  dd prod(1.0);
  dd xi = x;
  for (int i = 0; i < m; ++i) {
    prod *= xi;
    if (prod.hi > 1e290 || (i == m - 1)) {
      s += log(prod);
      prod = dd(1.0);
    }
    xi += 1.0;
  }
  return stirling(x + static_cast<double>(m)) - s;
}

LogSigned gamma_signed(dd x) {
  if (x.hi >= 0.5) return LogSigned::from_log(log_gamma_real(x), 1);
  // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
  dd sp = sinpi(x);
  assert(std::fabs(sp.hi) > 1e-30 && "gamma pole");
  dd lg = log(k_pi / fabs(sp)) - log_gamma_real(dd(1.0) - x);
  return LogSigned::from_log(lg, sp.hi > 0.0 ? 1 : -1);
}

cdd log_gamma_complex(cdd z) {
  assert(z.re.hi > 0.0);
  if (z.im.hi == 0.0 && z.im.lo == 0.0) return {log_gamma_real(z.re), dd(0.0)};
  if (z.im.hi < 0.0) {  // Schwarz reflection
    cdd r = log_gamma_complex(conj(z));
    return conj(r);
  }
  if (z.re.hi >= shift_to) return stirling(z);
  int m = static_cast<int>(shift_to - z.re.hi) + 1;
  cdd s{};
  cdd zi = z;
  for (int i = 0; i < m; ++i) {
    s += clog(zi);
    zi = zi + cdd(dd(1.0));
  }
  return stirling(zi) - s;
}

LogSigned pochhammer(dd a, int n) {
  assert(n >= 0);
  LogSigned r = LogSigned::one();
  dd prod(1.0);
  dd ai = a;
  for (int i = 0; i < n; ++i) {
    prod *= ai;
    if (std::fabs(prod.hi) > 1e280 || i == n - 1) {
      r = r * LogSigned::from_dd(prod);
      prod = dd(1.0);
    }
    ai += 1.0;
  }
  return r;
}

}  // namespace skewgas::numeric
