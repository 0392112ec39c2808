#include "skewgas/sop.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "skewgas/gammafn.hpp"

namespace skewgas::sop {

using classical::Kind;
using numeric::log_gamma_complex;
using numeric::log_gamma_real;

namespace {

cdd cexp(cdd z) {
  dd m = exp(z.re);
  return {m * cos(z.im), m * sin(z.im)};
}

cdd mul_half(cdd z) { return {mul_pwr2(z.re, 0.5), mul_pwr2(z.im, 0.5)}; }

dd factorial(int n) {
  dd f(1.0);
  for (int k = 2; k <= n; ++k) f = f * static_cast<double>(k);
  return f;
}

}  // namespace

dd hyp_terminating(std::span<const dd> a, std::span<const dd> b, dd z,
                   int nterms) {
  dd sum(1.0), t(1.0);
  for (int k = 0; k + 1 < nterms; ++k) {
    for (const dd& ai : a) t = t * (ai + static_cast<double>(k));
    for (const dd& bi : b) t = t / (bi + static_cast<double>(k));
    t = t * z / static_cast<double>(k + 1);
    sum += t;
  }
  return sum;
}

cdd hyp_terminating(std::span<const cdd> a, std::span<const cdd> b, cdd z,
                    int nterms) {
  cdd sum(1.0), t(1.0);
  for (int k = 0; k + 1 < nterms; ++k) {
    for (const cdd& ai : a) t = t * (ai + cdd(static_cast<double>(k)));
    for (const cdd& bi : b) t = t / (bi + cdd(static_cast<double>(k)));
    t = t * z / dd(static_cast<double>(k + 1));
    sum += t;
  }
  return sum;
}

AlphaXi recurrence_alpha_xi(const WeightFamily& w, dd X, int jmax) {
  if (jmax < 0)
    throw std::invalid_argument("recurrence_alpha_xi: jmax must be >= 0");
  AlphaXi r;
  r.alpha.assign(jmax + 1, dd(0.0));
  r.xi.assign(jmax + 1, dd(0.0));
  r.alpha[0] = r.xi[0] = dd(1.0);
  if (jmax == 0) return r;

  classical::SkewData sd = classical::skew_data(w, jmax);
  auto h4 = [&](int k) { return sd.h4[k].to_dd(); };
  dd X2 = X * X;
  for (int j = 0; j + 1 <= jmax; ++j) {
    dd t = X2 * sd.h1[j].to_dd() + h4(2 * j);
    if (j >= 1) t += sd.zeta[j] * h4(2 * j - 1);
    dd na = t * r.alpha[j];
    dd nx = t * r.xi[j];
    if (j >= 1) {
      na -= sd.zeta[j] * h4(2 * j - 2) * r.alpha[j - 1];
      nx -= h4(2 * j - 1) * r.xi[j - 1];
    }
    r.alpha[j + 1] = na / h4(2 * j + 1);
    r.xi[j + 1] = nx / (sd.zeta[j + 1] * h4(2 * j));
  }
  return r;
}

dd c_factor(const WeightFamily& w, int j) {
  switch (w.kind) {
    case Kind::gaussian:
    case Kind::laguerre:
      return dd(1.0);
    case Kind::jacobi: {
      dd s = w.a + w.b;
      return (s + 2.0) / (s + static_cast<double>(4 * j) + 2.0);
    }
    default: {
      dd den = w.a - static_cast<double>(2 * j + 1);
      if (den.hi <= 0.0)
        throw std::domain_error("c_factor: requires p > 2j + 1");
      return (w.a - 1.0) / den;
    }
  }
}

dd closed_form_alpha(const WeightFamily& w, dd X, int j) {
  if (j < 0) throw std::invalid_argument("closed_form_alpha: j must be >= 0");
  const dd jd(static_cast<double>(j));
  switch (w.kind) {
    case Kind::gaussian: {
      const dd a[] = {-jd};
      const dd b[] = {dd(0.5)};
      return hyp_terminating(a, b, -(X * X), j + 1) / factorial(j);
    }
    case Kind::laguerre: {
      dd h = mul_pwr2(w.a + 1.0, 0.5);
      const dd a[] = {-jd, h - X, h + X};
      const dd b[] = {h + 0.5, h};
      return hyp_terminating(a, b, dd(1.0), j + 1) / factorial(2 * j);
    }
    case Kind::jacobi: {
      dd s = w.a + w.b;
      const dd a[] = {-jd, jd + mul_pwr2(s + 1.0, 0.5),
                      mul_pwr2(w.a + 1.0 - X, 0.5),
                      mul_pwr2(w.a + 1.0 + X, 0.5)};
      const dd b[] = {mul_pwr2(w.a + 1.0, 0.5), mul_pwr2(w.a + 2.0, 0.5),
                      mul_pwr2(s + 2.0, 0.5)};
      dd hyp = hyp_terminating(a, b, dd(1.0), j + 1);
      dd lr = log_gamma_real(s + static_cast<double>(4 * j) + 2.0) +
              log_gamma_real(w.b + 1.0) -
              log_gamma_real(dd(static_cast<double>(2 * j + 1))) -
              log_gamma_real(w.b + static_cast<double>(2 * j + 1)) -
              log_gamma_real(s + 2.0);
      return ldexp(exp(lr), -2 * j) * hyp;
    }
    default: {
      const dd p = w.a, q = w.b;
      if (!(p.hi > 2.0 * j) || !(mul_pwr2(p, 2.0).hi > 4 * j + 1))
        throw std::domain_error("closed_form_alpha: gencauchy needs p > 2j");
      const cdd cbar(-p, -q);
      const cdd iX(dd(0.0), X);
      const cdd a[] = {cdd(-jd), cdd(jd - p + 0.5),
                       mul_half(cbar + cdd(1.0) + iX),
                       mul_half(cbar + cdd(1.0) - iX)};
      const cdd b[] = {cdd(dd(1.0) - p), mul_half(cbar + cdd(2.0)),
                       mul_half(cbar + cdd(1.0))};
      cdd hyp = hyp_terminating(a, b, cdd(1.0), j + 1);
      cdd lg = log_gamma_complex(cdd(p - static_cast<double>(2 * j), -q)) -
               log_gamma_complex(cdd(p, -q));
      dd lr = log_gamma_real(mul_pwr2(p, 2.0) - 1.0) -
              log_gamma_real(mul_pwr2(p, 2.0) - static_cast<double>(4 * j) -
                             1.0) -
              log_gamma_real(dd(static_cast<double>(2 * j + 1)));
      cdd val = cexp(lg + cdd(lr)) * hyp;
      dd re = ldexp(val.re, -2 * j);
      dd im = ldexp(val.im, -2 * j);
      if (std::fabs(im.hi) > 1e-10 * std::fabs(re.hi))
        throw std::runtime_error(
            "closed_form_alpha: imaginary residue in gencauchy sum");
      return (j % 2 == 0) ? re : -re;
    }
  }
}

SopFamily build_Q(const WeightFamily& w, dd X, int N) {
  if (N < 1) throw std::invalid_argument("build_Q: N must be >= 1");
  AlphaXi ax = recurrence_alpha_xi(w, X, N);
  classical::SkewData sd = classical::skew_data(w, N);

  std::vector<Polynomial> p;
  p.reserve(2 * N);
  for (int k = 0; k < 2 * N; ++k) p.push_back(classical::monic_op(w, k).p);

  SopFamily out;
  out.alpha = ax.alpha;
  out.xi = ax.xi;
  out.Q.reserve(2 * N);
  for (int m = 0; m < N; ++m) {
    std::vector<dd> we;
    std::vector<Polynomial> basis;
    for (int k = 0; k <= m; ++k) {
      we.push_back(ax.alpha[k] / ax.alpha[m]);
      basis.push_back(p[2 * k]);
    }
    out.Q.push_back(poly::linear_combine(we, basis));

    we.clear();
    basis.clear();
    for (int k = 0; k <= m; ++k) {
      we.push_back(ax.xi[k] / ax.xi[m]);
      basis.push_back(k == 0 ? p[1] : p[2 * k + 1] - sd.zeta[k] * p[2 * k - 1]);
    }
    out.Q.push_back(poly::linear_combine(we, basis));
  }
  for (int n = 0; n < N; ++n)
    out.u.push_back(LogSigned::from_dd(ax.alpha[n + 1] / ax.alpha[n]) *
                    sd.h4[2 * n + 1]);
  return out;
}

}  // namespace skewgas::sop
