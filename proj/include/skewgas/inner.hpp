#pragma once
// The three inner products of the two-component gas and the cached monomial
// Gram matrices feeding the moment matrix m_{ij}(X) = X^2 <z^i,z^j>_1 +
// <z^i,z^j>_4.
#include <vector>

#include "skewgas/classical.hpp"
#include "skewgas/poly.hpp"

namespace skewgas::moments {

using classical::WeightFamily;
using numeric::dd;
using poly::Polynomial;

// <phi, psi>_2 = int phi psi w2
dd inner2(const WeightFamily& w, const Polynomial& phi, const Polynomial& psi);

// Cached monomial Grams for 0 <= i, j < dim of
//   <z^i, z^j>_1 = (1/2) intint y^i z^j sgn(z - y) w1(y) w1(z) dy dz
//   <z^i, z^j>_4 = (1/2) int (z^i (z^j)' - (z^i)' z^j) w4 = ((j-i)/2) mu4_{i+j-1}
// The beta = 1 gram integrates the cumulative G_m(z) = int_lo^z y^m w1 dy
// against w1 over adaptive panels, tanh-sinh at singular endpoints.
// Construction recomputes the gram on split panels and fails if the two
// passes disagree beyond 1e-10.
class MomentEngine {
 public:
  MomentEngine(const WeightFamily& w, int dim);

  const WeightFamily& family() const { return fam_; }
  int dim() const { return dim_; }
  double refinement_error() const { return refine_err_; }

  dd inner1(int i, int j) const { return g1_[i][j]; }
  dd inner4(int i, int j) const { return g4_[i][j]; }
  dd inner1(const Polynomial& phi, const Polynomial& psi) const;
  dd inner4(const Polynomial& phi, const Polynomial& psi) const;
  dd skew_inner(const Polynomial& phi, const Polynomial& psi, dd X) const;

  std::vector<std::vector<dd>> moment_matrix(dd X) const;

 private:
  dd bilinear(const std::vector<std::vector<dd>>& g, const Polynomial& phi,
              const Polynomial& psi) const;

  WeightFamily fam_;
  int dim_;
  double refine_err_ = 0.0;
  std::vector<std::vector<dd>> g1_, g4_;
};

// convenience single evaluations (build a small engine / rule per call)
dd inner1(const WeightFamily& w, const Polynomial& phi, const Polynomial& psi);
dd inner4(const WeightFamily& w, const Polynomial& phi, const Polynomial& psi);

}  // namespace skewgas::moments
