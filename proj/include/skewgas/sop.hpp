#pragma once
// Skew orthogonal polynomials of the two-component gas: the alpha / xi
// coefficient recurrences in the classical OP basis, their terminating
// hypergeometric closed forms, and assembly of the monic family Q_n with
// pair norms u_n.
#include <span>
#include <vector>

#include "skewgas/classical.hpp"
#include "skewgas/complexdd.hpp"
#include "skewgas/logsigned.hpp"
#include "skewgas/poly.hpp"

namespace skewgas::sop {

using classical::WeightFamily;
using numeric::cdd;
using numeric::dd;
using numeric::LogSigned;
using poly::Polynomial;

// terminating pFq(a; b; z) summed by term recursion; nterms = j + 1 when
// some upper parameter is -j
dd hyp_terminating(std::span<const dd> a, std::span<const dd> b, dd z,
                   int nterms);
cdd hyp_terminating(std::span<const cdd> a, std::span<const cdd> b, cdd z,
                    int nterms);

// alpha_0..alpha_jmax and xi_0..xi_jmax at fixed fugacity X:
//   alpha_{j+1} = [(X^2 h1_j + h4_{2j} + zeta_j h4_{2j-1}) alpha_j
//                  - zeta_j h4_{2j-2} alpha_{j-1}] / h4_{2j+1}
//   xi_{j+1}    = [(X^2 h1_j + h4_{2j} + zeta_j h4_{2j-1}) xi_j
//                  - h4_{2j-1} xi_{j-1}] / (zeta_{j+1} h4_{2j})
struct AlphaXi {
  std::vector<dd> alpha, xi;
};
AlphaXi recurrence_alpha_xi(const WeightFamily& w, dd X, int jmax);

// xi_j c_j = alpha_j
dd c_factor(const WeightFamily& w, int j);

// hypergeometric closed form for alpha_j (gencauchy evaluates in cdd)
dd closed_form_alpha(const WeightFamily& w, dd X, int j);

// monic skew orthogonal family at X:
//   Q_{2m}   = (1/alpha_m) sum_{k<=m} alpha_k p_{2k}
//   Q_{2m+1} = (1/xi_m)    sum_{k<=m} xi_k (p_{2k+1} - zeta_k p_{2k-1})
// with pair norms u_n = (alpha_{n+1}/alpha_n) h4_{2n+1}
struct SopFamily {
  std::vector<Polynomial> Q;  // 0..2N-1
  std::vector<dd> alpha, xi;  // 0..N
  std::vector<LogSigned> u;   // 0..N-1
};
SopFamily build_Q(const WeightFamily& w, dd X, int N);

}  // namespace skewgas::sop
