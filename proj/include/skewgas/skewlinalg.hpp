#pragma once
// Skew-symmetric linear algebra: Pfaffians, canonical-form reduction, and
// recovery of the skew orthogonal polynomials from a moment matrix.
#include <vector>

#include "skewgas/classical.hpp"
#include "skewgas/logsigned.hpp"
#include "skewgas/poly.hpp"

namespace skewgas::skewlinalg {

using numeric::dd;
using numeric::LogSigned;

using Matrix = std::vector<std::vector<dd>>;

// Pfaffian by Parlett-Reid congruence elimination with partial pivoting.
// Throws std::invalid_argument for odd dimension or a non-skew input; a
// pivot below 1e-25 * max|m| reports an (effectively) singular matrix as
// sign 0.
LogSigned pfaffian(Matrix m);

// Unpivoted skew Gram-Schmidt: unit lower-triangular rows q[n] (q[n][n] = 1)
// with q B q^T equal to the direct sum of blocks [[0, u_j], [-u_j, 0]].
// The pair gauge is fixed by q[2j+1][2j] = 0.  Throws std::runtime_error
// when a pair norm collapses below 1e-25 * max|B|.
struct SkewBasis {
  std::vector<std::vector<dd>> q;
  std::vector<dd> u;
};
SkewBasis skew_tridiagonalize(const Matrix& B);

// Skew orthogonal polynomials of the moment matrix m (monomial basis,
// m_{ij} = X^2 <z^i,z^j>_1 + <z^i,z^j>_4): Gram-Schmidt runs on P m P^T
// where the rows of P hold the monic orthogonal polynomials of w2, and the
// gauge removes the p_{2j} component from Q_{2j+1}.
struct SopExtraction {
  std::vector<poly::Polynomial> Q;  // monic, degree n
  std::vector<dd> u;                // u[j] = <Q_{2j}, Q_{2j+1}>_X
};
SopExtraction extract_sop(const classical::WeightFamily& w, const Matrix& m);

}  // namespace skewgas::skewlinalg
