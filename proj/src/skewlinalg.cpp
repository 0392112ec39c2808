#include "skewgas/skewlinalg.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace skewgas::skewlinalg {

namespace {

double max_abs(const Matrix& m) {
  double s = 0.0;
  for (const auto& row : m)
    for (const dd& v : row) s = std::max(s, std::fabs(v.hi));
  return s;
}

void require_skew(const Matrix& m) {
  const size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n)
      throw std::invalid_argument("pfaffian: matrix is not square");
  double scale = max_abs(m);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i; j < n; ++j)
      if (std::fabs((m[i][j] + m[j][i]).hi) > 1e-20 * scale)
        throw std::invalid_argument("pfaffian: matrix is not skew-symmetric");
}

}  // namespace

LogSigned pfaffian(Matrix m) {
  const size_t n = m.size();
  if (n % 2 != 0)
    throw std::invalid_argument("pfaffian: dimension must be even");
  require_skew(m);
  if (n == 0) return LogSigned::one();
  const double scale = max_abs(m);
  if (scale == 0.0) return LogSigned::zero();

  LogSigned pf = LogSigned::one();
  for (size_t k = 0; k + 1 < n; k += 2) {
    size_t p = k + 1;
    for (size_t i = k + 2; i < n; ++i)
      if (std::fabs(m[i][k].hi) > std::fabs(m[p][k].hi)) p = i;
    if (std::fabs(m[p][k].hi) < 1e-25 * scale) return LogSigned::zero();
    if (p != k + 1) {
      std::swap(m[p], m[k + 1]);
      for (size_t i = 0; i < n; ++i) std::swap(m[i][p], m[i][k + 1]);
      pf = -pf;
    }
    pf *= LogSigned::from_dd(m[k][k + 1]);
    if (k + 2 == n) break;
    // congruence E = I - sum_i mu_i e_i e_{k+1}^T clears column k below k+1;
    // rows and columns k, k+1 drop out of the remaining minor
    std::vector<dd> mu(n, dd(0.0)), v(n, dd(0.0));
    for (size_t i = k + 2; i < n; ++i) {
      mu[i] = m[i][k] / m[k + 1][k];
      v[i] = m[k + 1][i];
    }
    for (size_t i = k + 2; i < n; ++i)
      for (size_t j = k + 2; j < n; ++j)
        m[i][j] += mu[j] * v[i] - mu[i] * v[j];
  }
  return pf;
}

SkewBasis skew_tridiagonalize(const Matrix& B) {
  const size_t n = B.size();
  for (const auto& row : B)
    if (row.size() != n)
      throw std::invalid_argument("skew_tridiagonalize: matrix is not square");
  const double scale = max_abs(B);

  auto form = [&](const std::vector<dd>& x, const std::vector<dd>& y) {
    dd s(0.0);
    for (size_t i = 0; i < n; ++i) {
      if (x[i].hi == 0.0 && x[i].lo == 0.0) continue;
      dd row(0.0);
      for (size_t j = 0; j < n; ++j) row += B[i][j] * y[j];
      s += x[i] * row;
    }
    return s;
  };

  SkewBasis out;
  out.q.reserve(n);
  for (size_t m = 0; m < n; ++m) {
    std::vector<dd> q(n, dd(0.0));
    q[m] = dd(1.0);
    for (size_t j = 0; 2 * j + 1 < m; ++j) {
      dd a = form(q, out.q[2 * j + 1]) / out.u[j];
      dd b = form(q, out.q[2 * j]) / out.u[j];
      for (size_t i = 0; i < n; ++i)
        q[i] += b * out.q[2 * j + 1][i] - a * out.q[2 * j][i];
    }
    if (m % 2 == 1) {
      // gauge: no component on the even partner
      dd c = q[m - 1];
      for (size_t i = 0; i < n; ++i) q[i] -= c * out.q[m - 1][i];
      dd u = form(out.q[m - 1], q);
      if (std::fabs(u.hi) < 1e-25 * scale)
        throw std::runtime_error("skew_tridiagonalize: pair norm collapsed");
      out.u.push_back(u);
    }
    out.q.push_back(std::move(q));
  }
  return out;
}

SopExtraction extract_sop(const classical::WeightFamily& w, const Matrix& m) {
  const size_t n = m.size();
  std::vector<poly::Polynomial> p;
  p.reserve(n);
  for (size_t k = 0; k < n; ++k)
    p.push_back(classical::monic_op(w, static_cast<int>(k)).p);

  Matrix B(n, std::vector<dd>(n, dd(0.0)));
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b) {
      dd s(0.0);
      for (size_t i = 0; i <= a; ++i) {
        dd ci = p[a].coeff(static_cast<int>(i));
        if (ci.hi == 0.0 && ci.lo == 0.0) continue;
        dd row(0.0);
        for (size_t j = 0; j <= b; ++j)
          row += m[i][j] * p[b].coeff(static_cast<int>(j));
        s += ci * row;
      }
      B[a][b] = s;
    }

  SkewBasis basis = skew_tridiagonalize(B);
  SopExtraction out;
  out.u = std::move(basis.u);
  out.Q.reserve(n);
  for (size_t k = 0; k < n; ++k)
    out.Q.push_back(poly::linear_combine(
        std::span<const dd>(basis.q[k].data(), k + 1),
        std::span<const poly::Polynomial>(p.data(), k + 1)));
  return out;
}

}  // namespace skewgas::skewlinalg
