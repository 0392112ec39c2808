#pragma once
// Quadrature engines: Gauss rules from monic recurrences (Golub-Welsch seeds
// polished in extended precision), cached Gauss-Legendre, channel rules that
// absorb the family weight, and tanh-sinh for endpoint singularities.
#include <functional>
#include <vector>

#include "skewgas/classical.hpp"
#include "skewgas/dd.hpp"

namespace skewgas::moments {

using numeric::dd;

// sum_i w[i] f(x[i]) approximates the integral of f against the rule's weight
struct QuadratureRule {
  std::vector<dd> x;
  std::vector<dd> w;
};

// n-point Gauss rule for the weight behind a monic three-term recurrence
QuadratureRule gauss_rule(const classical::Recurrence& rec, int n);

// Gauss-Legendre on [-1,1]; cached per n
const QuadratureRule& gauss_legendre(int n);

// rule integrating f(z) * w_ch(z) over the family support; for GenCauchy the
// substitution z = tan(theta/2) turns the integrand into a smooth one on
// (-pi, pi) handled by Gauss-Legendre
QuadratureRule channel_rule(const classical::WeightFamily& w, classical::Channel ch, int n);

// tanh-sinh quadrature of f over a finite interval [a, b]; tolerates
// integrable endpoint singularities
dd tanh_sinh(const std::function<dd(dd)>& f, dd a, dd b, double rel_tol = 1e-28);

inline dd integrate(const QuadratureRule& rule, const std::function<dd(dd)>& f) {
  dd s(0.0);
  for (std::size_t i = 0; i < rule.x.size(); ++i) s += rule.w[i] * f(rule.x[i]);
  return s;
}

}  // namespace skewgas::moments
