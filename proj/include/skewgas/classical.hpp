#pragma once
// The four classical weight families of the two-component log-gas: supports,
// Pearson pairs, weight channels w2 = e^{-2V}, w1 = e^{-V}/sqrt(f),
// w4 = e^{-2V} f, monic orthogonal polynomials, norms h_n, and the
// closed-form skew data (zeta_j, h1_j, h4_j).
#include <stdexcept>
#include <string>
#include <vector>

#include "skewgas/dd.hpp"
#include "skewgas/logsigned.hpp"
#include "skewgas/poly.hpp"

namespace skewgas::classical {

using numeric::dd;
using numeric::LogSigned;

enum class Kind { gaussian, laguerre, jacobi, gencauchy };

// weight channel: the beta = 2 weight w2 and the derived beta = 1 / beta = 4
// channels w1, w4
enum class Channel { w2, w1, w4 };

struct WeightFamily {
  Kind kind = Kind::gaussian;
  dd a{}, b{};  // laguerre: a; jacobi: a,b; gencauchy: p=a, q=b

  static WeightFamily gaussian() { return {Kind::gaussian, dd(0.0), dd(0.0)}; }
  static WeightFamily laguerre(dd a);
  static WeightFamily jacobi(dd a, dd b);
  static WeightFamily gencauchy(dd p, dd q);

  // support endpoints; +-HUGE_VAL for infinite ends
  double support_lo() const;
  double support_hi() const;
  std::string name() const;
  // integrability guard for a 2N-dimensional moment matrix
  bool admits_matrix_dim(int two_n) const;
};

struct PearsonPair {
  poly::Polynomial f;  // deg <= 2
  poly::Polynomial g;  // deg <= 1; 2V' = g/f
};

struct SkewData {
  std::vector<dd> zeta;        // zeta_0 .. zeta_jmax, zeta_0 = 0
  std::vector<LogSigned> h1;   // h1_0 .. h1_jmax
  std::vector<LogSigned> h4;   // h4_0 .. h4_{2*jmax+1}
};

struct StructureCoeffs {
  dd a, b, c;  // f p_n' = a p_{n+1} + b p_n + c p_{n-1}
};

// monic three-term recurrence p_{k+1} = (z - A_k) p_k - B_k p_{k-1} along
// with mu0 = integral of the weight
struct Recurrence {
  std::vector<dd> A;
  std::vector<dd> B;  // B[0] unused
  dd mu0;
};

PearsonPair pearson_pair(const WeightFamily& w);

// log of the channel weight at z (domain-checked)
dd log_weight(const WeightFamily& w, Channel ch, dd z);
dd weight(const WeightFamily& w, Channel ch, dd z);

// recurrence of the classical weight underlying the given channel
// (w1/w4 are themselves classical weights at shifted parameters);
// for GenCauchy valid only while the degree cap holds
Recurrence monic_recurrence(const WeightFamily& w, Channel ch, int nmax);

poly::MonicPolynomial monic_op(const WeightFamily& w, int n);

// h_n = <p_n, p_n>_{2,V}
LogSigned norm_h(const WeightFamily& w, int n);

SkewData skew_data(const WeightFamily& w, int jmax);

// coefficients of f p_n' = a_n p_{n+1} + b_n p_n + c_n p_{n-1}, computed by
// quadrature projection; residual asserted < 1e-10
StructureCoeffs structure_coeffs(const WeightFamily& w, int n);

// A = f d/dz + (f' - g)/2
poly::Polynomial apply_operator_A(const WeightFamily& w, const poly::Polynomial& p);

// beta = 1 skew orthogonal polynomials from the operator route:
// q_{2j} = p_{2j}, q_{2j+1} = p_{2j+1} - (gamma_{2j-1}/gamma_{2j}) p_{2j-1};
// the ratio is checked against zeta_j from skew_data to 1e-10
poly::MonicPolynomial beta1_sop(const WeightFamily& w, int n);

}  // namespace skewgas::classical
