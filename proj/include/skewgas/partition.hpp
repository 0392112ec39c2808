#pragma once
// The grand-canonical partition function Z_N(X) of the two-component gas by
// three routes: 2^N Pf of the monomial moment matrix, the telescoped product
// 2^N alpha_N prod h4_{2j+1}, and brute-force configuration integrals summed
// over charge sectors (L, M) with L + 2M = 2N.
#include <span>
#include <vector>

#include "skewgas/classical.hpp"
#include "skewgas/dd.hpp"
#include "skewgas/inner.hpp"
#include "skewgas/logsigned.hpp"

namespace skewgas::partition {

using classical::WeightFamily;
using numeric::dd;
using numeric::LogSigned;

// 2^N Pf(m(X)) over the monomial basis z^0..z^{2N-1}; the engine overload
// reuses a prebuilt gram (engine dim must be even, N = dim / 2)
LogSigned z_pfaffian(const moments::MomentEngine& engine, dd X);
LogSigned z_pfaffian(const WeightFamily& w, int N, dd X);

// 2^N alpha_N(X) prod_{j<N} h4_{2j+1}; requires skew data up to jmax = N,
// for gencauchy p > 2N + 3 (one pair beyond the Pfaffian route's p > 2N + 1)
LogSigned z_product(const WeightFamily& w, int N, dd X);

// direct configuration integrals in double precision: the charge-1 block is
// integrated over the ordered simplex in a per-family smooth map coordinate,
// the charge-2 block by tensor Gauss rules for w4; err_est compares two
// quadrature resolutions; cost grows as pts^{2N}, so N <= 3
struct BruteResult {
  double value;
  double err_est;
};
BruteResult z_bruteforce(const WeightFamily& w, int N, double X, int pts = 32);

// Pfaffian and product routes across fugacities, sharing one gram
struct SweepPoint {
  dd X;
  LogSigned pf;
  LogSigned prod;
  double rel;
};
std::vector<SweepPoint> z_sweep(const WeightFamily& w, int N,
                                std::span<const dd> Xs);

}  // namespace skewgas::partition
