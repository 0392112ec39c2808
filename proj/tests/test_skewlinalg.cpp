#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "skewgas/inner.hpp"
#include "skewgas/skewlinalg.hpp"

using skewgas::numeric::dd;
using skewgas::numeric::LogSigned;
using skewgas::numeric::rel_diff;
using skewgas::skewlinalg::Matrix;
using skewgas::skewlinalg::pfaffian;
using skewgas::skewlinalg::SkewBasis;

namespace {

Matrix zeros(size_t n) { return Matrix(n, std::vector<dd>(n, dd(0.0))); }

LogSigned det_lu(Matrix m) {
  const size_t n = m.size();
  LogSigned d = LogSigned::one();
  for (size_t k = 0; k < n; ++k) {
    size_t p = k;
    for (size_t i = k + 1; i < n; ++i)
      if (std::fabs(m[i][k].hi) > std::fabs(m[p][k].hi)) p = i;
    if (std::fabs(m[p][k].hi) == 0.0) return LogSigned::zero();
    if (p != k) {
      std::swap(m[p], m[k]);
      d = -d;
    }
    d *= LogSigned::from_dd(m[k][k]);
    for (size_t i = k + 1; i < n; ++i) {
      dd f = m[i][k] / m[k][k];
      for (size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  return d;
}

Matrix random_skew(std::mt19937_64& rng, size_t n) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  Matrix a = zeros(n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      a[i][j] = dd(U(rng));
      a[j][i] = -a[i][j];
    }
  return a;
}

Matrix random_general(std::mt19937_64& rng, size_t n) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  Matrix b = zeros(n);
  for (auto& row : b)
    for (dd& v : row) v = dd(U(rng));
  return b;
}

dd form(const Matrix& B, const std::vector<dd>& x, const std::vector<dd>& y) {
  dd s(0.0);
  for (size_t i = 0; i < B.size(); ++i)
    for (size_t j = 0; j < B.size(); ++j) s += x[i] * B[i][j] * y[j];
  return s;
}

}  // namespace

TEST_CASE("pfaffian closed forms and guards") {
  Matrix two = zeros(2);
  two[0][1] = dd(1.75);
  two[1][0] = dd(-1.75);
  LogSigned pf2 = pfaffian(two);
  CHECK(pf2.sign == 1);
  CHECK(rel_diff(pf2, LogSigned::from_dd(dd(1.75))) < 1e-28);

  std::mt19937_64 rng(20240811u);
  Matrix a = random_skew(rng, 4);
  dd closed = a[0][1] * a[2][3] - a[0][2] * a[1][3] + a[0][3] * a[1][2];
  CHECK(rel_diff(pfaffian(a), LogSigned::from_dd(closed)) < 1e-14);

  // direct sum of pair blocks
  Matrix blocks = zeros(6);
  double u[3] = {2.0, -3.0, 5.0};
  for (int j = 0; j < 3; ++j) {
    blocks[2 * j][2 * j + 1] = dd(u[j]);
    blocks[2 * j + 1][2 * j] = dd(-u[j]);
  }
  LogSigned pfb = pfaffian(blocks);
  CHECK(pfb.sign == -1);
  CHECK(rel_diff(pfb, LogSigned::from_dd(dd(-30.0))) < 1e-28);

  CHECK(pfaffian(zeros(4)).is_zero());
  // rank-deficient: row/column 2 identically zero
  Matrix sing = random_skew(rng, 4);
  for (size_t i = 0; i < 4; ++i) sing[2][i] = sing[i][2] = dd(0.0);
  CHECK(pfaffian(sing).is_zero());

  CHECK_THROWS_AS(pfaffian(zeros(3)), std::invalid_argument);
  Matrix notskew = zeros(2);
  notskew[0][1] = dd(1.0);
  notskew[1][0] = dd(1.0);
  CHECK_THROWS_AS(pfaffian(notskew), std::invalid_argument);
}

TEST_CASE("pfaffian squared equals the determinant") {
  std::mt19937_64 rng(0x5eed2024u);
  const size_t dims[] = {2, 4, 6, 8, 10, 12};
  for (int t = 0; t < 200; ++t) {
    Matrix a = random_skew(rng, dims[t % 6]);
    LogSigned pf = pfaffian(a);
    LogSigned det = det_lu(a);
    REQUIRE(!det.is_zero());
    CHECK(pf.sign * pf.sign == 1);
    CHECK(rel_diff(pf.pow_int(2), det) < 1e-20);
  }
}

TEST_CASE("pfaffian congruence covariance") {
  std::mt19937_64 rng(7u);
  const size_t n = 8;
  Matrix a = random_skew(rng, n);
  Matrix b = random_general(rng, n);
  Matrix c = zeros(n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      dd s(0.0);
      for (size_t k = 0; k < n; ++k) {
        dd row(0.0);
        for (size_t l = 0; l < n; ++l) row += a[k][l] * b[j][l];
        s += b[i][k] * row;
      }
      c[i][j] = s;
    }
  CHECK(rel_diff(pfaffian(c), det_lu(b) * pfaffian(a)) < 1e-18);
}

TEST_CASE("skew Gram-Schmidt canonical form") {
  std::mt19937_64 rng(42u);
  const size_t n = 10;
  Matrix B = random_skew(rng, n);
  SkewBasis sb = skewgas::skewlinalg::skew_tridiagonalize(B);
  REQUIRE(sb.q.size() == n);
  REQUIRE(sb.u.size() == n / 2);

  for (size_t m = 0; m < n; ++m) {
    CHECK((sb.q[m][m] - dd(1.0)).hi == 0.0);
    for (size_t i = m + 1; i < n; ++i) CHECK(sb.q[m][i].hi == 0.0);
    if (m % 2 == 1) CHECK(sb.q[m][m - 1].hi == 0.0);
  }
  for (size_t m = 0; m < n; ++m)
    for (size_t k = m + 1; k < n; ++k) {
      dd v = form(B, sb.q[m], sb.q[k]);
      if (k == m + 1 && m % 2 == 0)
        CHECK(std::fabs((v - sb.u[m / 2]).hi) < 1e-24);
      else
        CHECK(std::fabs(v.hi) < 1e-22);
    }
  LogSigned prod = LogSigned::one();
  for (dd u : sb.u) prod *= LogSigned::from_dd(u);
  CHECK(rel_diff(pfaffian(B), prod) < 1e-18);
}

TEST_CASE("extract_sop yields skew orthogonal monic polynomials") {
  using skewgas::classical::WeightFamily;
  WeightFamily w = WeightFamily::gaussian();
  skewgas::moments::MomentEngine engine(w, 6);
  dd X = dd(0.5);
  skewgas::skewlinalg::SopExtraction ext =
      skewgas::skewlinalg::extract_sop(w, engine.moment_matrix(X));
  REQUIRE(ext.Q.size() == 6);
  REQUIRE(ext.u.size() == 3);

  double umax = 0.0;
  for (dd u : ext.u) umax = std::max(umax, std::fabs(u.hi));
  for (size_t a = 0; a < 6; ++a) {
    CHECK(ext.Q[a].degree() == static_cast<int>(a));
    CHECK((ext.Q[a].leading() - dd(1.0)).hi == 0.0);
    for (size_t b = a + 1; b < 6; ++b) {
      dd v = engine.skew_inner(ext.Q[a], ext.Q[b], X);
      if (b == a + 1 && a % 2 == 0)
        CHECK(std::fabs((v - ext.u[a / 2]).hi) < 1e-12 * umax);
      else
        CHECK(std::fabs(v.hi) < 1e-12 * umax);
    }
  }
  // gauge: Q_{2j+1} carries no p_{2j} component
  for (int j = 0; j <= 2; ++j) {
    skewgas::poly::Polynomial p2j = skewgas::classical::monic_op(w, 2 * j).p;
    dd c = skewgas::moments::inner2(w, ext.Q[2 * j + 1], p2j) /
           skewgas::classical::norm_h(w, 2 * j).to_dd();
    CHECK(std::fabs(c.hi) < 1e-12);
  }
}
