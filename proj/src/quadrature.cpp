#include "skewgas/quadrature.hpp"

#include <Eigen/Dense>
#include <cassert>
#include <cmath>
#include <map>
#include <stdexcept>

namespace skewgas::moments {

namespace {

// normalized recurrence values phat_k(x) = p_k(x)/sqrt(B_1...B_k) and the
// derivative dhat_n; returns phat_n, and the Christoffel sum of phat_k^2
// over k = 0..n-1
struct ChainEval {
  dd pn, dpn, christoffel;
};

ChainEval eval_chain(const classical::Recurrence& rec, const std::vector<dd>& sb,
                     int n, dd x) {
  dd pm1(0.0), p0(1.0), dm1(0.0), d0(0.0);
  dd sum = dd(1.0);
  for (int k = 0; k < n; ++k) {
    dd p1 = ((x - rec.A[k]) * p0 - sb[k] * pm1) / sb[k + 1];
    dd d1 = (p0 + (x - rec.A[k]) * d0 - sb[k] * dm1) / sb[k + 1];
    pm1 = p0;
    p0 = p1;
    dm1 = d0;
    d0 = d1;
    if (k + 1 < n) sum += sqr(p0);
  }
  return {p0, d0, sum};
}

}  // namespace

QuadratureRule gauss_rule(const classical::Recurrence& rec, int n) {
  if (n < 1) throw std::invalid_argument("gauss_rule: n < 1");
  if (static_cast<int>(rec.A.size()) < n + 1)
    throw std::invalid_argument("gauss_rule: recurrence too short");
  std::vector<dd> sb(n + 1);
  sb[0] = dd(1.0);
  for (int k = 1; k <= n; ++k) {
    assert(rec.B[k].hi > 0.0);
    sb[k] = sqrt(rec.B[k]);
  }

  Eigen::VectorXd diag(n), sub(std::max(n - 1, 0));
  for (int k = 0; k < n; ++k) diag[k] = rec.A[k].hi + rec.A[k].lo;
  for (int k = 0; k < n - 1; ++k) sub[k] = static_cast<double>(sb[k + 1]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);

  QuadratureRule rule;
  rule.x.resize(n);
  rule.w.resize(n);
  for (int i = 0; i < n; ++i) {
    dd x(es.eigenvalues()[i]);
    for (int it = 0; it < 3; ++it) {
      ChainEval ce = eval_chain(rec, sb, n, x);
      x -= ce.pn / ce.dpn;
    }
    ChainEval ce = eval_chain(rec, sb, n, x);
    rule.x[i] = x;
    rule.w[i] = rec.mu0 / ce.christoffel;
  }
  return rule;
}

const QuadratureRule& gauss_legendre(int n) {
  static std::map<int, QuadratureRule> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  classical::Recurrence rec;
  rec.A.assign(n + 1, dd(0.0));
  rec.B.assign(n + 1, dd(0.0));
  for (int k = 1; k <= n; ++k) {
    dd kk(static_cast<double>(k));
    rec.B[k] = sqr(kk) / (sqr(kk) * 4.0 - 1.0);
  }
  rec.mu0 = dd(2.0);
  return cache.emplace(n, gauss_rule(rec, n)).first->second;
}

QuadratureRule channel_rule(const classical::WeightFamily& w, classical::Channel ch,
                            int n) {
  using classical::Channel;
  if (w.kind != classical::Kind::gencauchy)
    return gauss_rule(monic_recurrence(w, ch, n), n);

  // z = tan(theta/2) turns int f w_ch dz into
  // (1/2) int_{-pi}^{pi} f(tan(theta/2)) cos(theta/2)^{2P-2} e^{Q theta} dtheta
  dd P, Q;
  switch (ch) {
    case Channel::w2: P = w.a; Q = w.b; break;
    case Channel::w1: P = mul_pwr2(w.a + 1.0, 0.5); Q = mul_pwr2(w.b, 0.5); break;
    case Channel::w4: P = w.a - 1.0; Q = w.b; break;
  }
  const QuadratureRule& gl = gauss_legendre(n);
  QuadratureRule rule;
  rule.x.resize(n);
  rule.w.resize(n);
  for (int i = 0; i < n; ++i) {
    dd theta = numeric::k_pi * gl.x[i];
    dd half = mul_pwr2(theta, 0.5);
    rule.x[i] = tan(half);
    dd logw = (P * 2.0 - 2.0) * log(cos(half)) + Q * theta;
    rule.w[i] = mul_pwr2(numeric::k_pi * gl.w[i], 0.5) * exp(logw);
  }
  return rule;
}

dd tanh_sinh(const std::function<dd(dd)>& f, dd a, dd b, double rel_tol) {
  dd c = mul_pwr2(a + b, 0.5), s = mul_pwr2(b - a, 0.5);
  if (s.hi <= 0.0) return dd(0.0);

  // at t: u = tanh((pi/2) sinh t); em = 1 - |u| held to full precision so the
  // abscissa can hug the endpoint; node skipped once em underflows the
  // representable endpoint distance
  auto node = [&](double t, dd& em, dd& wt) -> bool {
    dd X = mul_pwr2(numeric::k_pi, 0.5) * sinh(dd(t));
    if (X.hi > 40.0) return false;
    em = dd(2.0) / (exp(mul_pwr2(X, 2.0)) + 1.0);
    if (em.hi < 1e-30) return false;
    wt = mul_pwr2(numeric::k_pi, 0.5) * cosh(dd(t)) * em * (dd(2.0) - em);
    return true;
  };

  double h = 0.5;
  dd em, wt;
  node(0.0, em, wt);
  dd sum = wt * f(c);
  for (int k = 1;; ++k) {
    if (!node(k * h, em, wt)) break;
    sum += wt * (f(b - s * em) + f(a + s * em));
  }
  dd result = s * sum * h;
  for (int lev = 1; lev <= 10; ++lev) {
    h *= 0.5;
    for (int k = 1;; k += 2) {
      if (!node(k * h, em, wt)) break;
      sum += wt * (f(b - s * em) + f(a + s * em));
    }
    dd next = s * sum * h;
    dd change = fabs(next - result);
    result = next;
    if (lev >= 3 && change.hi <= rel_tol * std::fabs(result.hi)) break;
  }
  return result;
}

}  // namespace skewgas::moments
