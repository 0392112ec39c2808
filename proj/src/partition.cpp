#include "skewgas/partition.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "skewgas/quadrature.hpp"
#include "skewgas/skewlinalg.hpp"
#include "skewgas/sop.hpp"

namespace skewgas::partition {

using classical::Channel;
using classical::Kind;

namespace {

struct MapPoint {
  double z, g;  // g = w1(z(t)) z'(t)
};

// increasing map t in (0,1) -> support, with the pulled-back w1 measure
// smooth at the endpoints: linear truncation for gaussian, a quartic map
// absorbing the z^{(a-1)/2} edge for laguerre, a C^3 smoothstep angle map
// absorbing both (1 -+ z) edges for jacobi, the tangent map for gencauchy
MapPoint eval_map(const WeightFamily& w, double t) {
  switch (w.kind) {
    case Kind::gaussian: {
      const double R = 8.0;
      double z = R * (2.0 * t - 1.0);
      return {z, 2.0 * R * std::exp(-0.5 * z * z)};
    }
    case Kind::laguerre: {
      const double zmax = 160.0;
      double t2 = t * t, z = zmax * t2 * t2;
      double ah = 0.5 * (w.a.hi - 1.0);
      double lt = std::log(t);
      double lg = ah * (std::log(zmax) + 4.0 * lt) - 0.5 * z +
                  std::log(4.0 * zmax) + 3.0 * lt;
      return {z, lg < -700.0 ? 0.0 : std::exp(lg)};
    }
    case Kind::jacobi: {
      // 7th order smoothstep; the reflected form keeps sig <= 1 exactly
      auto sstep = [](double s) {
        return s * s * s * s * (35.0 + s * (-84.0 + s * (70.0 - 20.0 * s)));
      };
      double u = 1.0 - t;
      double t3 = t * t * t;
      double sig = t < 0.5 ? sstep(t) : 1.0 - sstep(u);
      double dsig = 140.0 * t3 * u * u * u;
      double th = M_PI * sig;
      double z = -std::cos(th);
      double lc = std::log(std::cos(0.5 * th)), ls = std::log(std::sin(0.5 * th));
      double ah = 0.5 * (w.a.hi - 1.0), bh = 0.5 * (w.b.hi - 1.0);
      double lg = ah * (M_LN2 + 2.0 * lc) + bh * (M_LN2 + 2.0 * ls) +
                  std::log(M_PI * dsig) + M_LN2 + ls + lc;
      return {z, lg < -700.0 ? 0.0 : std::exp(lg)};
    }
    default: {  // gencauchy
      double phi = M_PI * (t - 0.5);
      double z = std::tan(phi);
      double lg = (w.a.hi - 1.0) * std::log(std::cos(phi)) + w.b.hi * phi +
                  std::log(M_PI);
      return {z, lg < -700.0 ? 0.0 : std::exp(lg)};
    }
  }
}

struct BruteCtx {
  const WeightFamily* w;
  std::vector<double> gt, gw;  // Gauss-Legendre remapped to [0,1]
  std::vector<double> mx, mw;  // w4 channel rule
  std::vector<double> d4;      // (mx_j - mx_k)^4
  std::vector<double> cr;      // scratch: cross factors per mu node
};

// tensor w4 quadrature of prod_{i<j} (mu_i - mu_j)^4 prod_{i,m} (lam_m - mu_i)^2
// divided by M!; the diagonal mu_i = mu_j drops out through the d4 factor
double mu_block(BruteCtx& c, const double* lam, int L, int M) {
  if (M == 0) return 1.0;
  const std::size_t n = c.mx.size();
  for (std::size_t j = 0; j < n; ++j) {
    double p = c.mw[j];
    for (int m = 0; m < L; ++m) {
      double d = lam[m] - c.mx[j];
      p *= d * d;
    }
    c.cr[j] = p;
  }
  double s = 0.0;
  if (M == 1) {
    for (std::size_t j = 0; j < n; ++j) s += c.cr[j];
    return s;
  }
  if (M == 2) {
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += c.cr[k] * c.d4[j * n + k];
      s += c.cr[j] * acc;
    }
    return s / 2.0;
  }
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k) {
      double pjk = c.cr[j] * c.cr[k] * c.d4[j * n + k];
      if (pjk == 0.0) continue;
      double acc = 0.0;
      for (std::size_t l = 0; l < n; ++l)
        acc += c.cr[l] * c.d4[j * n + l] * c.d4[k * n + l];
      s += pjk * acc;
    }
  return s / 3.0;  // ordered pair (j,k) doubles 2! of 3!
}

// ordered simplex t0 < t_1 < ... < t_L in map coordinates; pref carries the
// Jacobians, w1 factors, and the positive charge-1 differences
void lam_rec(BruteCtx& c, int L, int M, int lvl, double t0, double pref,
             double* lam, double& acc) {
  if (lvl == L) {
    acc += pref * mu_block(c, lam, L, M);
    return;
  }
  double len = 1.0 - t0;
  for (std::size_t k = 0; k < c.gt.size(); ++k) {
    double t = t0 + len * c.gt[k];
    MapPoint mp = eval_map(*c.w, t);
    double f = mp.g;
    for (int m = 0; m < lvl; ++m) f *= mp.z - lam[m];
    double next = pref * len * c.gw[k] * f;
    if (next == 0.0) continue;
    lam[lvl] = mp.z;
    lam_rec(c, L, M, lvl + 1, t, next, lam, acc);
  }
}

double brute_value(const WeightFamily& w, int N, double X, int pts) {
  BruteCtx c;
  c.w = &w;
  const auto& gl = moments::gauss_legendre(pts);
  c.gt.resize(gl.x.size());
  c.gw.resize(gl.x.size());
  for (std::size_t i = 0; i < gl.x.size(); ++i) {
    c.gt[i] = 0.5 * (gl.x[i].hi + 1.0);
    c.gw[i] = 0.5 * gl.w[i].hi;
  }
  auto mu = moments::channel_rule(w, Channel::w4, pts + 12);
  const std::size_t n = mu.x.size();
  c.mx.resize(n);
  c.mw.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    c.mx[i] = mu.x[i].hi;
    c.mw[i] = mu.w[i].hi;
  }
  c.d4.resize(n * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      double d = c.mx[j] - c.mx[k];
      c.d4[j * n + k] = (d * d) * (d * d);
    }
  c.cr.resize(n);
  double total = 0.0;
  double lam[6];
  for (int M = N; M >= 0; --M) {
    int L = 2 * (N - M);
    if (X == 0.0 && L > 0) continue;
    double acc = 0.0;
    lam_rec(c, L, M, 0, 0.0, 1.0, lam, acc);
    total += std::pow(X, L) * acc;
  }
  return total;
}

LogSigned pow2n(int N) {
  return LogSigned::from_log(dd(static_cast<double>(N)) * numeric::k_ln2, 1);
}

}  // namespace

LogSigned z_pfaffian(const moments::MomentEngine& engine, dd X) {
  int dim = engine.dim();
  if (dim < 2 || dim % 2 != 0)
    throw std::invalid_argument("z_pfaffian: engine dim must be even");
  auto m = engine.moment_matrix(X);
  return skewlinalg::pfaffian(m) * pow2n(dim / 2);
}

LogSigned z_pfaffian(const WeightFamily& w, int N, dd X) {
  if (N < 1) throw std::invalid_argument("z_pfaffian: N must be >= 1");
  moments::MomentEngine engine(w, 2 * N);
  return z_pfaffian(engine, X);
}

LogSigned z_product(const WeightFamily& w, int N, dd X) {
  if (N < 1) throw std::invalid_argument("z_product: N must be >= 1");
  auto ax = sop::recurrence_alpha_xi(w, X, N);
  auto sd = classical::skew_data(w, N);
  LogSigned z = LogSigned::from_dd(ax.alpha[static_cast<std::size_t>(N)]);
  for (int j = 0; j < N; ++j) z *= sd.h4[static_cast<std::size_t>(2 * j + 1)];
  return z * pow2n(N);
}

BruteResult z_bruteforce(const WeightFamily& w, int N, double X, int pts) {
  if (N < 1 || N > 3)
    throw std::invalid_argument("z_bruteforce: N must be in 1..3");
  if (pts < 8 || pts > 64)
    throw std::invalid_argument("z_bruteforce: pts must be in 8..64");
  if (!w.admits_matrix_dim(2 * N))
    throw std::invalid_argument("z_bruteforce: weight lacks finite moments");
  double v1 = brute_value(w, N, X, pts);
  double v0 = brute_value(w, N, X, (2 * pts) / 3);
  return {v1, std::fabs(v1 - v0)};
}

std::vector<SweepPoint> z_sweep(const WeightFamily& w, int N,
                                std::span<const dd> Xs) {
  if (N < 1) throw std::invalid_argument("z_sweep: N must be >= 1");
  moments::MomentEngine engine(w, 2 * N);
  std::vector<SweepPoint> out;
  out.reserve(Xs.size());
  for (dd X : Xs) {
    SweepPoint p;
    p.X = X;
    p.pf = z_pfaffian(engine, X);
    p.prod = z_product(w, N, X);
    p.rel = numeric::rel_diff(p.pf, p.prod);
    out.push_back(p);
  }
  return out;
}

}  // namespace skewgas::partition
