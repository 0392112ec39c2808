#include "skewgas/inner.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "skewgas/quadrature.hpp"

namespace skewgas::moments {

using classical::Channel;
using classical::Kind;
using numeric::mul_pwr2;

namespace {

// ---------------------------------------------------------------------------
// vector quadrature helpers.  Integrands write all components at once so the
// weight evaluation (the expensive part) is shared across monomials / pairs.
// ---------------------------------------------------------------------------

template <class F>
void gl_pass(const F& f, dd a, dd b, std::vector<dd>& out) {
  const QuadratureRule& gl = gauss_legendre(20);
  dd c = mul_pwr2(a + b, 0.5), s = mul_pwr2(b - a, 0.5);
  std::vector<dd> vals(out.size());
  for (dd& o : out) o = dd(0.0);
  for (size_t i = 0; i < gl.x.size(); ++i) {
    f(c + s * gl.x[i], vals);
    dd wt = s * gl.w[i];
    for (size_t m = 0; m < out.size(); ++m) out[m] += wt * vals[m];
  }
}

// whole-vs-halves Gauss-Legendre refinement with per-component tolerance
template <class F>
void adaptive_gl(const F& f, dd a, dd b, std::vector<dd>& acc, double tol,
                 int depth) {
  std::vector<dd> whole(acc.size()), left(acc.size()), right(acc.size());
  gl_pass(f, a, b, whole);
  dd mid = mul_pwr2(a + b, 0.5);
  gl_pass(f, a, mid, left);
  gl_pass(f, mid, b, right);
  bool ok = true;
  for (size_t m = 0; m < acc.size(); ++m) {
    double h = std::fabs(left[m].hi + right[m].hi);
    double diff = std::fabs((whole[m] - left[m] - right[m]).hi);
    if (diff > tol * h + 1e-30) ok = false;
  }
  if (ok || depth >= 8) {
    for (size_t m = 0; m < acc.size(); ++m) acc[m] += left[m] + right[m];
    return;
  }
  adaptive_gl(f, a, mid, acc, tol, depth + 1);
  adaptive_gl(f, mid, b, acc, tol, depth + 1);
}

// vector tanh-sinh on (a, b); node layout matches the scalar tanh_sinh
template <class F>
void ts_vec(const F& f, dd a, dd b, std::vector<dd>& acc, double rel_tol) {
  dd c = mul_pwr2(a + b, 0.5), s = mul_pwr2(b - a, 0.5);
  if (s.hi <= 0.0) return;
  auto node = [&](double t, dd& em, dd& wt) -> bool {
    dd X = mul_pwr2(numeric::k_pi, 0.5) * sinh(dd(t));
    if (X.hi > 40.0) return false;
    em = dd(2.0) / (exp(mul_pwr2(X, 2.0)) + 1.0);
    if (em.hi < 1e-30) return false;
    wt = mul_pwr2(numeric::k_pi, 0.5) * cosh(dd(t)) * em * (dd(2.0) - em);
    return true;
  };

  const size_t n = acc.size();
  std::vector<dd> sum(n, dd(0.0)), vals(n), result(n, dd(0.0));
  double h = 0.5;
  dd em, wt;
  node(0.0, em, wt);
  f(c, vals);
  for (size_t m = 0; m < n; ++m) sum[m] = wt * vals[m];
  for (int k = 1;; ++k) {
    if (!node(k * h, em, wt)) break;
    f(b - s * em, vals);
    for (size_t m = 0; m < n; ++m) sum[m] += wt * vals[m];
    f(a + s * em, vals);
    for (size_t m = 0; m < n; ++m) sum[m] += wt * vals[m];
  }
  for (size_t m = 0; m < n; ++m) result[m] = s * sum[m] * h;
  for (int lev = 1; lev <= 10; ++lev) {
    h *= 0.5;
    for (int k = 1;; k += 2) {
      if (!node(k * h, em, wt)) break;
      f(b - s * em, vals);
      for (size_t m = 0; m < n; ++m) sum[m] += wt * vals[m];
      f(a + s * em, vals);
      for (size_t m = 0; m < n; ++m) sum[m] += wt * vals[m];
    }
    bool done = lev >= 3;
    for (size_t m = 0; m < n; ++m) {
      dd next = s * sum[m] * h;
      if (std::fabs((next - result[m]).hi) >
          rel_tol * std::fabs(next.hi) + 1e-30)
        done = lev >= 10;
      result[m] = next;
    }
    if (done) break;
  }
  for (size_t m = 0; m < n; ++m) acc[m] += result[m];
}

// ---------------------------------------------------------------------------
// beta = 1 gram: panel layout and cumulative G machinery
// ---------------------------------------------------------------------------

struct PanelGrid {
  std::vector<dd> pts;          // ascending checkpoints, endpoints finite
  bool left_singular = false;   // pts.front() is a finite support edge
  bool right_singular = false;  // pts.back() is a finite support edge
  bool left_tail = false;       // mass beyond pts.front()  (gencauchy)
  bool right_tail = false;      // mass beyond pts.back()   (gencauchy)
};

PanelGrid make_grid(const WeightFamily& w, int dim) {
  PanelGrid g;
  std::vector<double> p;
  switch (w.kind) {
    case Kind::gaussian: {
      // e^{-z^2/2}: truncation error beyond +-hi is below e^{-200}
      double hi = std::max(20.0, 6.0 + dim);
      std::vector<double> pos = {1.0, 2.0,  3.0,  4.0,  5.0, 6.0,
                                 7.5, 9.0, 11.0, 13.5, 16.5};
      p.push_back(0.0);
      for (double v : pos) p.push_back(v);
      p.push_back(hi);
      for (double v : pos) p.push_back(-v);
      p.push_back(-hi);
      break;
    }
    case Kind::laguerre: {
      double hi = 510.0 + 20.0 * dim;
      p = {0.0, 0.005, 0.05, 0.25, 1.0,   2.5,   5.0,   8.0,
           12.0, 17.0, 23.0, 30.0, 40.0,  55.0,  75.0,  100.0,
           130.0, 170.0, 220.0, 280.0, 350.0};
      double last = p.back();
      while (last * 1.28 < hi) {
        last *= 1.28;
        p.push_back(last);
      }
      p.push_back(hi);
      g.left_singular = true;
      break;
    }
    case Kind::jacobi:
      p = {-1.0, -0.995, -0.96, -0.85, -0.6, -0.3, 0.0,
           0.3,  0.6,    0.85,  0.96,  0.995, 1.0};
      g.left_singular = true;
      g.right_singular = true;
      break;
    case Kind::gencauchy: {
      double hi = std::max(8.0, static_cast<double>(dim));
      std::vector<double> pos = {0.3, 0.6, 0.9, 1.3, 1.8, 2.5, 3.5, 5.0};
      while (pos.back() * 1.45 < hi) pos.push_back(pos.back() * 1.45);
      pos.push_back(hi);
      p.push_back(0.0);
      for (double v : pos) {
        p.push_back(v);
        p.push_back(-v);
      }
      g.left_tail = true;
      g.right_tail = true;
      break;
    }
  }
  std::sort(p.begin(), p.end());
  g.pts.reserve(p.size());
  for (double v : p) g.pts.push_back(dd(v));
  return g;
}

PanelGrid split_grid(const PanelGrid& g) {
  PanelGrid h = g;
  h.pts.clear();
  for (size_t k = 0; k + 1 < g.pts.size(); ++k) {
    h.pts.push_back(g.pts[k]);
    h.pts.push_back(mul_pwr2(g.pts[k] + g.pts[k + 1], 0.5));
  }
  h.pts.push_back(g.pts.back());
  return h;
}

// guarded w1 evaluation; exp underflows to zero well before the cutoff
struct W1Eval {
  const WeightFamily* w;
  dd operator()(dd z) const {
    dd lw = classical::log_weight(*w, Channel::w1, z);
    if (lw.hi < -1e5) return dd(0.0);
    return exp(lw);
  }
};

// vals[m] = z^m w1(z), m < M
struct MonoFn {
  const W1Eval* w1;
  void operator()(dd z, std::vector<dd>& vals) const {
    dd wv = (*w1)(z);
    if (wv.hi == 0.0) {
      for (dd& v : vals) v = dd(0.0);
      return;
    }
    dd p = wv;
    for (size_t m = 0; m < vals.size(); ++m) {
      vals[m] = p;
      p = p * z;
    }
  }
};

// int_{Z}^{inf} z^m w1 dz (right) or int_{-inf}^{-Z} z^m w1 dz (left),
// mapped through z = +-1/u onto u in (0, 1/Z)
std::vector<dd> tail_moments(const W1Eval& w1, dd Z, int M, bool right) {
  auto f = [&](dd u, std::vector<dd>& vals) {
    dd y = (right ? dd(1.0) : dd(-1.0)) / u;
    dd wv = w1(y);
    if (wv.hi == 0.0) {
      for (dd& v : vals) v = dd(0.0);
      return;
    }
    dd p = wv / (u * u);
    for (int m = 0; m < M; ++m) {
      vals[m] = p;
      p = p * y;
    }
  };
  std::vector<dd> out(M, dd(0.0));
  ts_vec(f, dd(0.0), dd(1.0) / Z, out, 1e-16);
  return out;
}

struct Gram1Result {
  std::vector<std::vector<dd>> g;  // dim x dim, antisymmetric
  std::vector<dd> abs_scale;       // sum_panels |Delta G_m|: natural magnitude
};

Gram1Result gram1_impl(const WeightFamily& fam, int dim,
                       const PanelGrid& grid) {
  const int M = dim;
  const size_t K = grid.pts.size() - 1;  // panel count
  W1Eval w1{&fam};
  MonoFn mono{&w1};

  // cumulative G_m at checkpoints
  std::vector<std::vector<dd>> Gc(K + 1, std::vector<dd>(M, dd(0.0)));
  std::vector<dd> LT, RT;
  if (grid.left_tail) {
    LT = tail_moments(w1, -grid.pts.front(), M, false);
    Gc[0] = LT;
  }
  std::vector<dd> abs_scale(M, dd(0.0));
  for (size_t k = 0; k < K; ++k) {
    std::vector<dd> seg(M, dd(0.0));
    if ((k == 0 && grid.left_singular) ||
        (k == K - 1 && grid.right_singular))
      ts_vec(mono, grid.pts[k], grid.pts[k + 1], seg, 1e-16);
    else
      adaptive_gl(mono, grid.pts[k], grid.pts[k + 1], seg, 1e-18, 0);
    for (int m = 0; m < M; ++m) {
      Gc[k + 1][m] = Gc[k][m] + seg[m];
      abs_scale[m] += fabs(seg[m]);
    }
  }
  if (grid.right_tail) RT = tail_moments(w1, grid.pts.back(), M, true);
  std::vector<dd> T = Gc[K];
  if (grid.right_tail)
    for (int m = 0; m < M; ++m) T[m] += RT[m];
  for (int m = 0; m < M; ++m)
    abs_scale[m] += (LT.empty() ? dd(0.0) : fabs(LT[m])) +
                    (RT.empty() ? dd(0.0) : fabs(RT[m]));

  // outer pass: acc[t] = sum over panels of
  //   int (1/2) (z^j G_i(z) - z^i G_j(z)) w1(z) dz  for pairs t = (i, j), i < j
  const size_t P = static_cast<size_t>(M) * (M - 1) / 2;
  std::vector<dd> acc(P, dd(0.0));
  for (size_t k = 0; k < K; ++k) {
    const bool lb = (k == 0 && grid.left_singular);
    const bool rb = (k == K - 1 && grid.right_singular);
    const std::vector<dd>& base = Gc[k];
    auto outer = [&](dd z, std::vector<dd>& vals) {
      std::vector<dd> G(M, dd(0.0));
      if (lb) {
        ts_vec(mono, grid.pts.front(), z, G, 1e-15);
      } else if (rb) {
        // approach the singular edge from inside: G = T_panel_end - tail piece
        ts_vec(mono, z, grid.pts.back(), G, 1e-15);
        for (int m = 0; m < M; ++m) G[m] = Gc[K][m] - G[m];
      } else {
        adaptive_gl(mono, grid.pts[k], z, G, 1e-18, 4);
        for (int m = 0; m < M; ++m) G[m] += base[m];
      }
      dd wv = w1(z);
      std::vector<dd> zp(M, dd(1.0));
      for (int m = 1; m < M; ++m) zp[m] = zp[m - 1] * z;
      size_t t = 0;
      for (int i = 0; i < M; ++i)
        for (int j = i + 1; j < M; ++j)
          vals[t++] = mul_pwr2(wv * (zp[j] * G[i] - zp[i] * G[j]), 0.5);
    };
    if (lb || rb)
      ts_vec(outer, grid.pts[k], grid.pts[k + 1], acc, 1e-14);
    else
      adaptive_gl(outer, grid.pts[k], grid.pts[k + 1], acc, 1e-15, 0);
  }
  // beyond the right cutoff G_m is T_m to ~Z^{-2(p-dim)}; the left tail
  // contributes O(LT^2) and is dropped
  if (grid.right_tail) {
    size_t t = 0;
    for (int i = 0; i < M; ++i)
      for (int j = i + 1; j < M; ++j)
        acc[t++] += mul_pwr2(RT[j] * T[i] - RT[i] * T[j], 0.5);
  }

  Gram1Result r;
  r.g.assign(M, std::vector<dd>(M, dd(0.0)));
  size_t t = 0;
  for (int i = 0; i < M; ++i)
    for (int j = i + 1; j < M; ++j) {
      r.g[i][j] = acc[t];
      r.g[j][i] = -acc[t];
      ++t;
    }
  r.abs_scale = abs_scale;
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// MomentEngine
// ---------------------------------------------------------------------------

MomentEngine::MomentEngine(const WeightFamily& w, int dim)
    : fam_(w), dim_(dim) {
  if (dim < 1) throw std::invalid_argument("MomentEngine: dim must be >= 1");
  if (fam_.kind == Kind::gencauchy && !fam_.admits_matrix_dim(dim))
    throw std::invalid_argument(
        "MomentEngine: generalised Cauchy moment matrix needs p > dim + 1");

  PanelGrid grid = make_grid(fam_, dim_);
  Gram1Result base = gram1_impl(fam_, dim_, grid);
  Gram1Result fine = gram1_impl(fam_, dim_, split_grid(grid));
  g1_ = fine.g;

  double err = 0.0;
  for (int i = 0; i < dim_; ++i)
    for (int j = i + 1; j < dim_; ++j) {
      double scale =
          std::max(std::fabs(fine.g[i][j].hi),
                   1e-4 * base.abs_scale[i].hi * base.abs_scale[j].hi);
      if (scale == 0.0) continue;
      err = std::max(err,
                     std::fabs((fine.g[i][j] - base.g[i][j]).hi) / scale);
    }

  // beta = 4 gram from w4 monomial moments
  const int n_mu = std::max(0, 2 * dim_ - 2);
  std::vector<dd> mu4(n_mu, dd(0.0));
  if (n_mu > 0) {
    auto moments_with = [&](int nodes) {
      QuadratureRule r = channel_rule(fam_, Channel::w4, nodes);
      std::vector<dd> mu(n_mu, dd(0.0));
      for (size_t q = 0; q < r.x.size(); ++q) {
        dd p = r.w[q];
        for (int k = 0; k < n_mu; ++k) {
          mu[k] += p;
          p = p * r.x[q];
        }
      }
      return mu;
    };
    if (fam_.kind == Kind::gencauchy) {
      mu4 = moments_with(128);
      std::vector<dd> mu4b = moments_with(192);
      for (int k = 0; k < n_mu; ++k) {
        double scale = std::max(std::fabs(mu4[k].hi), 1e-30);
        err = std::max(err, std::fabs((mu4[k] - mu4b[k]).hi) / scale);
        mu4[k] = mu4b[k];
      }
    } else {
      mu4 = moments_with(dim_ + 2);
    }
  }
  refine_err_ = err;
  if (refine_err_ > 1e-10)
    throw std::runtime_error("MomentEngine: gram refinement check failed");

  g4_.assign(dim_, std::vector<dd>(dim_, dd(0.0)));
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      if (i != j) g4_[i][j] = mul_pwr2(mu4[i + j - 1] * (j - i), 0.5);
}

dd MomentEngine::bilinear(const std::vector<std::vector<dd>>& g,
                          const Polynomial& phi, const Polynomial& psi) const {
  if (phi.is_zero() || psi.is_zero()) return dd(0.0);
  assert(phi.degree() < dim_ && psi.degree() < dim_);
  dd s(0.0);
  for (int i = 0; i <= phi.degree(); ++i) {
    dd ci = phi.coeff(i);
    if (ci.hi == 0.0 && ci.lo == 0.0) continue;
    dd row(0.0);
    for (int j = 0; j <= psi.degree(); ++j) row += psi.coeff(j) * g[i][j];
    s += ci * row;
  }
  return s;
}

dd MomentEngine::inner1(const Polynomial& phi, const Polynomial& psi) const {
  return bilinear(g1_, phi, psi);
}

dd MomentEngine::inner4(const Polynomial& phi, const Polynomial& psi) const {
  return bilinear(g4_, phi, psi);
}

dd MomentEngine::skew_inner(const Polynomial& phi, const Polynomial& psi,
                            dd X) const {
  return X * X * inner1(phi, psi) + inner4(phi, psi);
}

std::vector<std::vector<dd>> MomentEngine::moment_matrix(dd X) const {
  std::vector<std::vector<dd>> m(dim_, std::vector<dd>(dim_, dd(0.0)));
  dd X2 = X * X;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) m[i][j] = X2 * g1_[i][j] + g4_[i][j];
  return m;
}

// ---------------------------------------------------------------------------
// free one-shot inner products
// ---------------------------------------------------------------------------

dd inner2(const WeightFamily& w, const Polynomial& phi, const Polynomial& psi) {
  if (phi.is_zero() || psi.is_zero()) return dd(0.0);
  int d = phi.degree() + psi.degree();
  QuadratureRule rule;
  if (w.kind == Kind::gencauchy) {
    rule = channel_rule(w, Channel::w2, 96 + 4 * d);
  } else {
    int n = d / 2 + 2;
    rule = gauss_rule(classical::monic_recurrence(w, Channel::w2, n), n);
  }
  dd s(0.0);
  for (size_t i = 0; i < rule.x.size(); ++i)
    s += rule.w[i] * phi.eval(rule.x[i]) * psi.eval(rule.x[i]);
  return s;
}

dd inner4(const WeightFamily& w, const Polynomial& phi, const Polynomial& psi) {
  if (phi.is_zero() || psi.is_zero()) return dd(0.0);
  int d = std::max(0, phi.degree() + psi.degree() - 1);
  QuadratureRule rule;
  if (w.kind == Kind::gencauchy) {
    rule = channel_rule(w, Channel::w4, 96 + 4 * d);
  } else {
    int n = d / 2 + 2;
    rule = gauss_rule(classical::monic_recurrence(w, Channel::w4, n), n);
  }
  Polynomial dphi = phi.derivative(), dpsi = psi.derivative();
  dd s(0.0);
  for (size_t i = 0; i < rule.x.size(); ++i) {
    dd z = rule.x[i];
    s += rule.w[i] * (phi.eval(z) * dpsi.eval(z) - dphi.eval(z) * psi.eval(z));
  }
  return mul_pwr2(s, 0.5);
}

dd inner1(const WeightFamily& w, const Polynomial& phi, const Polynomial& psi) {
  if (phi.is_zero() || psi.is_zero()) return dd(0.0);
  int dim = std::max(phi.degree(), psi.degree()) + 1;
  MomentEngine engine(w, std::max(dim, 2));
  return engine.inner1(phi, psi);
}

}  // namespace skewgas::moments
