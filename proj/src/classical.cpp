#include "skewgas/classical.hpp"

#include <cmath>
#include <stdexcept>

#include "skewgas/gammafn.hpp"
#include "skewgas/quadrature.hpp"

namespace skewgas::classical {

using numeric::cdd;
using poly::MonicPolynomial;
using poly::Polynomial;

namespace {

dd log_pi() { return log(numeric::k_pi); }

LogSigned pos(dd logv) { return LogSigned::from_log(logv, 1); }

// 2^e as LogSigned
LogSigned pow2(dd e) { return pos(e * numeric::k_ln2); }

LogSigned lgam(dd x) { return numeric::gamma_signed(x); }

// |Gamma(x + iy)|^2, x > 0
LogSigned abs_gamma_sq(dd x, dd y) { return pos(numeric::log_abs_gamma_sq({x, y})); }

[[noreturn]] void bad_param(const std::string& msg) { throw std::invalid_argument(msg); }

}  // namespace

WeightFamily WeightFamily::laguerre(dd a) {
  if (!(a > dd(-1.0))) bad_param("laguerre: requires a > -1");
  return {Kind::laguerre, a, dd(0.0)};
}

WeightFamily WeightFamily::jacobi(dd a, dd b) {
  if (!(a > dd(-1.0)) || !(b > dd(-1.0))) bad_param("jacobi: requires a, b > -1");
  return {Kind::jacobi, a, b};
}

WeightFamily WeightFamily::gencauchy(dd p, dd q) {
  if (!(p > dd(1.5))) bad_param("gencauchy: requires p > 3/2");
  return {Kind::gencauchy, p, q};
}

double WeightFamily::support_lo() const {
  switch (kind) {
    case Kind::laguerre: return 0.0;
    case Kind::jacobi: return -1.0;
    default: return -HUGE_VAL;
  }
}

double WeightFamily::support_hi() const {
  return kind == Kind::jacobi ? 1.0 : HUGE_VAL;
}

std::string WeightFamily::name() const {
  switch (kind) {
    case Kind::gaussian: return "gaussian";
    case Kind::laguerre: return "laguerre";
    case Kind::jacobi: return "jacobi";
    case Kind::gencauchy: return "gencauchy";
  }
  return "?";
}

bool WeightFamily::admits_matrix_dim(int two_n) const {
  if (kind != Kind::gencauchy) return true;
  return a > dd(static_cast<double>(two_n + 1));
}

PearsonPair pearson_pair(const WeightFamily& w) {
  auto P = [](std::vector<dd> c) { return Polynomial{std::move(c)}; };
  switch (w.kind) {
    case Kind::gaussian: return {P({dd(1.0)}), P({dd(0.0), dd(2.0)})};
    case Kind::laguerre: return {P({dd(0.0), dd(1.0)}), P({-w.a, dd(1.0)})};
    case Kind::jacobi:
      return {P({dd(1.0), dd(0.0), dd(-1.0)}), P({w.a - w.b, w.a + w.b})};
    case Kind::gencauchy:
      return {P({dd(1.0), dd(0.0), dd(1.0)}), P({w.b * -2.0, w.a * 2.0})};
  }
  throw std::logic_error("pearson_pair");
}

dd log_weight(const WeightFamily& w, Channel ch, dd z) {
  switch (w.kind) {
    case Kind::gaussian: {
      dd z2 = sqr(z);
      return ch == Channel::w1 ? -mul_pwr2(z2, 0.5) : -z2;
    }
    case Kind::laguerre: {
      if (!(z > dd(0.0))) throw std::domain_error("laguerre weight: z must be > 0");
      dd lz = log(z);
      switch (ch) {
        case Channel::w2: return w.a * lz - z;
        case Channel::w1: return mul_pwr2(w.a - 1.0, 0.5) * lz - mul_pwr2(z, 0.5);
        case Channel::w4: return (w.a + 1.0) * lz - z;
      }
      break;
    }
    case Kind::jacobi: {
      if (!(z > dd(-1.0)) || !(z < dd(1.0)))
        throw std::domain_error("jacobi weight: z must be in (-1, 1)");
      dd lm = log(dd(1.0) - z), lp = log(dd(1.0) + z);
      switch (ch) {
        case Channel::w2: return w.a * lm + w.b * lp;
        case Channel::w1:
          return mul_pwr2(w.a - 1.0, 0.5) * lm + mul_pwr2(w.b - 1.0, 0.5) * lp;
        case Channel::w4: return (w.a + 1.0) * lm + (w.b + 1.0) * lp;
      }
      break;
    }
    case Kind::gencauchy: {
      dd L = log(dd(1.0) + sqr(z)), t = atan(z);
      switch (ch) {
        case Channel::w2: return -w.a * L + mul_pwr2(w.b * t, 2.0);
        case Channel::w1: return -mul_pwr2(w.a + 1.0, 0.5) * L + w.b * t;
        case Channel::w4: return -(w.a - 1.0) * L + mul_pwr2(w.b * t, 2.0);
      }
      break;
    }
  }
  throw std::logic_error("log_weight");
}

dd weight(const WeightFamily& w, Channel ch, dd z) { return exp(log_weight(w, ch, z)); }

namespace {

Recurrence hermite_rec(bool half_variance, int nmax) {
  // weight e^{-z^2} (B_k = k/2) or e^{-z^2/2} (B_k = k)
  Recurrence r;
  r.A.assign(nmax + 1, dd(0.0));
  r.B.assign(nmax + 1, dd(0.0));
  for (int k = 1; k <= nmax; ++k)
    r.B[k] = half_variance ? dd(static_cast<double>(k)) : mul_pwr2(dd(static_cast<double>(k)), 0.5);
  r.mu0 = half_variance ? sqrt(mul_pwr2(numeric::k_pi, 2.0)) : sqrt(numeric::k_pi);
  return r;
}

Recurrence laguerre_rec(dd c, dd s, int nmax) {
  // weight z^c e^{-z/s} on (0, inf)
  Recurrence r;
  r.A.resize(nmax + 1);
  r.B.assign(nmax + 1, dd(0.0));
  for (int k = 0; k <= nmax; ++k) {
    dd kk(static_cast<double>(k));
    r.A[k] = s * (mul_pwr2(kk, 2.0) + c + 1.0);
    if (k >= 1) r.B[k] = sqr(s) * kk * (kk + c);
  }
  r.mu0 = exp((c + 1.0) * log(s) + numeric::log_gamma_real(c + 1.0));
  return r;
}

Recurrence jacobi_rec(dd al, dd be, int nmax) {
  // weight (1-z)^al (1+z)^be on (-1, 1)
  Recurrence r;
  r.A.resize(nmax + 1);
  r.B.assign(nmax + 1, dd(0.0));
  dd s = al + be;
  r.A[0] = (be - al) / (s + 2.0);
  for (int k = 1; k <= nmax; ++k) {
    dd kk(static_cast<double>(k));
    dd t = mul_pwr2(kk, 2.0) + s;
    r.A[k] = (be - al) * (be + al) / (t * (t + 2.0));
    r.B[k] = (k == 1)
                 ? dd(4.0) * (al + 1.0) * (be + 1.0) / (sqr(s + 2.0) * (s + 3.0))
                 : dd(4.0) * kk * (kk + al) * (kk + be) * (kk + s) /
                       (sqr(t) * (t + 1.0) * (t - 1.0));
  }
  r.mu0 = exp((s + 1.0) * numeric::k_ln2 + numeric::log_gamma_real(al + 1.0) +
              numeric::log_gamma_real(be + 1.0) - numeric::log_gamma_real(s + 2.0));
  return r;
}

Recurrence rr_rec(dd P, dd Q, int nmax) {
  // weight (1+z^2)^{-P} e^{2Q atan z}; only finitely many moments exist, so
  // the chain is capped at n < P - 1/2
  if (!(dd(static_cast<double>(nmax)) < P - 0.5))
    throw std::domain_error("gencauchy recurrence: degree cap n < P - 1/2 exceeded");
  Recurrence r;
  r.A.resize(nmax + 1);
  r.B.assign(nmax + 1, dd(0.0));
  for (int n = 0; n <= nmax; ++n) {
    dd nn(static_cast<double>(n));
    dd d = (nn - P) * 2.0;  // 2n - 2P
    r.A[n] = dd(4.0) * P * Q / (d * (d + 2.0));
    if (n >= 1)
      r.B[n] = nn * (sqr(nn - P) + sqr(Q)) * (P * 2.0 - nn) /
               (sqr(nn - P) * (d + 1.0) * (d - 1.0));
  }
  r.mu0 = exp((dd(2.0) - P * 2.0) * numeric::k_ln2 + log_pi() +
              numeric::log_gamma_real(P * 2.0 - 1.0) -
              numeric::log_abs_gamma_sq({P, Q}));
  return r;
}

// (P, Q) such that w_ch(z) = (1+z^2)^{-P} e^{2Q atan z} for GenCauchy(p, q)
std::pair<dd, dd> rr_channel_params(const WeightFamily& w, Channel ch) {
  switch (ch) {
    case Channel::w2: return {w.a, w.b};
    case Channel::w1: return {mul_pwr2(w.a + 1.0, 0.5), mul_pwr2(w.b, 0.5)};
    case Channel::w4: return {w.a - 1.0, w.b};
  }
  throw std::logic_error("rr_channel_params");
}

}  // namespace

Recurrence monic_recurrence(const WeightFamily& w, Channel ch, int nmax) {
  if (nmax < 0) throw std::invalid_argument("monic_recurrence: nmax < 0");
  switch (w.kind) {
    case Kind::gaussian: return hermite_rec(ch == Channel::w1, nmax);
    case Kind::laguerre:
      switch (ch) {
        case Channel::w2: return laguerre_rec(w.a, dd(1.0), nmax);
        case Channel::w1: return laguerre_rec(mul_pwr2(w.a - 1.0, 0.5), dd(2.0), nmax);
        case Channel::w4: return laguerre_rec(w.a + 1.0, dd(1.0), nmax);
      }
      break;
    case Kind::jacobi:
      switch (ch) {
        case Channel::w2: return jacobi_rec(w.a, w.b, nmax);
        case Channel::w1:
          return jacobi_rec(mul_pwr2(w.a - 1.0, 0.5), mul_pwr2(w.b - 1.0, 0.5), nmax);
        case Channel::w4: return jacobi_rec(w.a + 1.0, w.b + 1.0, nmax);
      }
      break;
    case Kind::gencauchy: {
      auto [P, Q] = rr_channel_params(w, ch);
      return rr_rec(P, Q, nmax);
    }
  }
  throw std::logic_error("monic_recurrence");
}

MonicPolynomial monic_op(const WeightFamily& w, int n) {
  if (n < 0) return MonicPolynomial::sentinel();
  if (w.kind == Kind::gencauchy && !(dd(static_cast<double>(n)) < w.a))
    throw std::domain_error("gencauchy monic_op: requires n < p");
  if (n == 0) return MonicPolynomial::one();
  Recurrence rec = monic_recurrence(w, Channel::w2, n - 1);
  Polynomial pm1, p0 = Polynomial::constant(dd(1.0));
  Polynomial z = Polynomial::monomial(1);
  for (int k = 0; k < n; ++k) {
    Polynomial p1 = (z - Polynomial::constant(rec.A[k])) * p0 - rec.B[k] * pm1;
    pm1 = std::move(p0);
    p0 = std::move(p1);
  }
  return MonicPolynomial{std::move(p0)};
}

LogSigned norm_h(const WeightFamily& w, int n) {
  if (n < 0) throw std::invalid_argument("norm_h: n < 0");
  dd nn(static_cast<double>(n));
  switch (w.kind) {
    case Kind::gaussian:
      return pow2(-nn) * pos(mul_pwr2(log_pi(), 0.5)) * lgam(nn + 1.0);
    case Kind::laguerre:
      return lgam(nn + 1.0) * lgam(nn + w.a + 1.0);
    case Kind::jacobi: {
      dd s = w.a + w.b, tn = nn * 2.0;
      return pow2(s + tn + 1.0) * lgam(nn + 1.0) * lgam(nn + w.a + 1.0) *
             lgam(nn + w.b + 1.0) * lgam(nn + s + 1.0) /
             (lgam(tn + s + 1.0) * lgam(tn + s + 2.0));
    }
    case Kind::gencauchy: {
      dd p = w.a, q = w.b;
      if (!(nn < p - 1.0))
        throw std::domain_error("gencauchy norm_h: requires n < p - 1");
      dd tp = p * 2.0, tn = nn * 2.0;
      return pow2(tn - tp + 2.0) * pos(log_pi()) * lgam(nn + 1.0) * lgam(tp - tn) *
             lgam(tp - tn - 1.0) / (lgam(tp - nn) * abs_gamma_sq(p - nn, q));
    }
  }
  throw std::logic_error("norm_h");
}

SkewData skew_data(const WeightFamily& w, int jmax) {
  if (jmax < 0) throw std::invalid_argument("skew_data: jmax < 0");
  if (w.kind == Kind::gencauchy && !(dd(static_cast<double>(2 * jmax + 2)) < w.a - 1.0))
    throw std::domain_error("gencauchy skew_data: requires 2*jmax + 2 < p - 1");
  SkewData sd;
  sd.zeta.resize(jmax + 1);
  sd.h1.resize(jmax + 1);
  sd.h4.resize(2 * jmax + 2);
  dd half_log_pi = mul_pwr2(log_pi(), 0.5);
  for (int j = 0; j <= jmax; ++j) {
    dd jj(static_cast<double>(j));
    dd tj = jj * 2.0, fj = jj * 4.0;
    switch (w.kind) {
      case Kind::gaussian:
        sd.zeta[j] = jj;
        sd.h1[j] = pow2(-tj) * pos(half_log_pi) * lgam(tj + 1.0);
        break;
      case Kind::laguerre:
        sd.zeta[j] = tj * (tj + w.a);
        sd.h1[j] = pow2(dd(1.0)) * lgam(tj + 1.0) * lgam(tj + w.a + 1.0);
        break;
      case Kind::jacobi: {
        dd s = w.a + w.b;
        sd.zeta[j] = (j == 0) ? dd(0.0)
                              : dd(8.0) * jj * (tj + w.a) * (tj + w.b) * (tj + s) /
                                    ((fj + s - 1.0) * (fj + s) * (fj + s + 1.0) *
                                     (fj + s + 2.0));
        sd.h1[j] = pow2(s + fj + 2.0) * lgam(tj + 1.0) * lgam(tj + w.a + 1.0) *
                   lgam(tj + w.b + 1.0) * lgam(tj + s + 1.0) /
                   (lgam(fj + s + 1.0) * lgam(fj + s + 3.0));
        break;
      }
      case Kind::gencauchy: {
        dd p = w.a, q = w.b, tp = p * 2.0;
        sd.zeta[j] = (j == 0) ? dd(0.0)
                              : dd(16.0) * jj * (p - jj) * (sqr(p - tj) + sqr(q)) /
                                    ((tp - fj - 2.0) * (tp - fj - 1.0) * (tp - fj) *
                                     (tp - fj + 1.0));
        sd.h1[j] = pow2(fj - tp + 3.0) * pos(log_pi()) * lgam(tj + 1.0) *
                   lgam(tp - fj) * lgam(tp - fj - 2.0) /
                   (lgam(tp - tj) * abs_gamma_sq(p - tj, q));
        break;
      }
    }
  }
  for (int j = 0; j < 2 * jmax + 2; ++j) {
    dd jj(static_cast<double>(j));
    switch (w.kind) {
      case Kind::gaussian:
        sd.h4[j] = pow2(-jj - 1.0) * pos(half_log_pi) * lgam(jj + 2.0);
        break;
      case Kind::laguerre:
        sd.h4[j] = pow2(dd(-1.0)) * lgam(jj + 2.0) * lgam(jj + w.a + 2.0);
        break;
      case Kind::jacobi: {
        dd s = w.a + w.b, tj = jj * 2.0;
        sd.h4[j] = pow2(s + tj + 2.0) * lgam(jj + 2.0) * lgam(jj + w.a + 2.0) *
                   lgam(jj + w.b + 2.0) * lgam(jj + s + 2.0) /
                   (lgam(tj + s + 2.0) * lgam(tj + s + 4.0));
        break;
      }
      case Kind::gencauchy:
        sd.h4[j] = LogSigned::from_dd(w.a - 1.0 - jj) * norm_h(w, j + 1);
        break;
    }
  }
  return sd;
}

StructureCoeffs structure_coeffs(const WeightFamily& w, int n) {
  if (n < 0) throw std::invalid_argument("structure_coeffs: n < 0");
  PearsonPair pp = pearson_pair(w);
  MonicPolynomial pn = monic_op(w, n);
  MonicPolynomial pup = monic_op(w, n + 1);
  MonicPolynomial pdn = monic_op(w, n - 1);
  Polynomial lhs = pp.f * pn.p.derivative();

  moments::QuadratureRule rule =
      (w.kind == Kind::gencauchy)
          ? moments::channel_rule(w, Channel::w2, 96)
          : moments::gauss_rule(monic_recurrence(w, Channel::w2, n + 2), n + 2);
  auto inner2 = [&rule](const Polynomial& u, const Polynomial& v) {
    dd s(0.0);
    for (std::size_t i = 0; i < rule.x.size(); ++i)
      s += rule.w[i] * u.eval(rule.x[i]) * v.eval(rule.x[i]);
    return s;
  };

  StructureCoeffs sc;
  sc.a = inner2(lhs, pup.p) / norm_h(w, n + 1).to_dd();
  sc.b = inner2(lhs, pn.p) / norm_h(w, n).to_dd();
  sc.c = (n >= 1) ? inner2(lhs, pdn.p) / norm_h(w, n - 1).to_dd() : dd(0.0);

  Polynomial resid = lhs - sc.a * pup.p - sc.b * pn.p;
  if (n >= 1) resid = resid - sc.c * pdn.p;
  double scale = 1.0, rmax = 0.0;
  for (const auto& c : lhs.c) scale = std::max(scale, std::fabs(c.hi));
  for (const auto& c : resid.c) rmax = std::max(rmax, std::fabs(c.hi));
  if (rmax > 1e-10 * scale)
    throw std::runtime_error("structure_coeffs: projection residual too large");
  return sc;
}

Polynomial apply_operator_A(const WeightFamily& w, const Polynomial& p) {
  PearsonPair pp = pearson_pair(w);
  return pp.f * p.derivative() + dd(0.5) * ((pp.f.derivative() - pp.g) * p);
}

MonicPolynomial beta1_sop(const WeightFamily& w, int n) {
  if (n < 0) throw std::invalid_argument("beta1_sop: n < 0");
  if (n % 2 == 0 || n == 1) return monic_op(w, n);
  int j = (n - 1) / 2;

  moments::QuadratureRule rule =
      (w.kind == Kind::gencauchy)
          ? moments::channel_rule(w, Channel::w2, 96)
          : moments::gauss_rule(monic_recurrence(w, Channel::w2, n + 3), n + 3);
  // kappa_k = <p_k, A p_{k+1}>_2, the beta = 4 skew norm h4_k
  auto kappa = [&](int k) {
    Polynomial lhs = apply_operator_A(w, monic_op(w, k + 1).p);
    Polynomial pk = monic_op(w, k).p;
    dd s(0.0);
    for (std::size_t i = 0; i < rule.x.size(); ++i)
      s += rule.w[i] * pk.eval(rule.x[i]) * lhs.eval(rule.x[i]);
    return LogSigned::from_dd(s);
  };
  LogSigned g_lo = kappa(2 * j - 1) / (norm_h(w, 2 * j) * norm_h(w, 2 * j - 1));
  LogSigned g_hi = kappa(2 * j) / (norm_h(w, 2 * j + 1) * norm_h(w, 2 * j));
  LogSigned ratio = g_lo / g_hi;
  dd zeta = skew_data(w, j).zeta[j];
  if (rel_diff(ratio, LogSigned::from_dd(zeta)) > 1e-10)
    throw std::runtime_error("beta1_sop: gamma ratio disagrees with zeta");
  Polynomial q = monic_op(w, 2 * j + 1).p - ratio.to_dd() * monic_op(w, 2 * j - 1).p;
  return MonicPolynomial{std::move(q)};
}

}  // namespace skewgas::classical
