#pragma once
// Dense univariate polynomials over dd, coefficient c[k] on z^k.  The empty
// coefficient vector is the zero polynomial (degree -1); MonicPolynomial
// additionally allows that sentinel to stand for p_{-1} in recurrences.
#include <cassert>
#include <span>
#include <vector>

#include "skewgas/dd.hpp"

namespace skewgas::poly {

using numeric::dd;

struct Polynomial {
  std::vector<dd> c;

  Polynomial() = default;
  explicit Polynomial(std::vector<dd> coeffs) : c(std::move(coeffs)) { trim(); }
  static Polynomial zero() { return {}; }
  static Polynomial constant(dd v) {
    return (v.hi == 0.0 && v.lo == 0.0) ? zero() : Polynomial{{v}};
  }
  static Polynomial monomial(int k, dd coef = dd(1.0)) {
    std::vector<dd> v(k + 1, dd(0.0));
    v[k] = coef;
    return Polynomial{std::move(v)};
  }

  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
  dd coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(c.size())) ? c[k] : dd(0.0);
  }
  dd leading() const { return c.empty() ? dd(0.0) : c.back(); }

  dd eval(dd z) const {
    dd r(0.0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * z + *it;
    return r;
  }

  Polynomial derivative() const {
    if (c.size() <= 1) return zero();
    std::vector<dd> d(c.size() - 1);
    for (size_t k = 1; k < c.size(); ++k) d[k - 1] = c[k] * static_cast<double>(k);
    return Polynomial{std::move(d)};
  }

  void trim() {
    while (!c.empty() && c.back().hi == 0.0 && c.back().lo == 0.0) c.pop_back();
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<dd> r(std::max(a.c.size(), b.c.size()), dd(0.0));
    for (size_t k = 0; k < a.c.size(); ++k) r[k] += a.c[k];
    for (size_t k = 0; k < b.c.size(); ++k) r[k] += b.c[k];
    return Polynomial{std::move(r)};
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<dd> r(std::max(a.c.size(), b.c.size()), dd(0.0));
    for (size_t k = 0; k < a.c.size(); ++k) r[k] += a.c[k];
    for (size_t k = 0; k < b.c.size(); ++k) r[k] -= b.c[k];
    return Polynomial{std::move(r)};
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return zero();
    std::vector<dd> r(a.c.size() + b.c.size() - 1, dd(0.0));
    for (size_t i = 0; i < a.c.size(); ++i)
      for (size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
    return Polynomial{std::move(r)};
  }
  friend Polynomial operator*(const Polynomial& a, dd s) {
    Polynomial r = a;
    for (auto& x : r.c) x *= s;
    r.trim();
    return r;
  }
  friend Polynomial operator*(dd s, const Polynomial& a) { return a * s; }
};

// Monic polynomial of degree n (leading coefficient exactly 1), or the
// sentinel standing for p_{-1} = 0 in three-term recurrences.
struct MonicPolynomial {
  Polynomial p;

  MonicPolynomial() = default;  // sentinel
  explicit MonicPolynomial(Polynomial q) : p(std::move(q)) {
    assert(p.is_zero() || p.leading() == dd(1.0));
  }
  static MonicPolynomial sentinel() { return {}; }
  static MonicPolynomial one() { return MonicPolynomial{Polynomial::constant(dd(1.0))}; }

  bool is_sentinel() const { return p.is_zero(); }
  int degree() const { return p.degree(); }
  dd eval(dd z) const { return p.eval(z); }
  dd coeff(int k) const { return p.coeff(k); }
};

// sum_i w[i] * ps[i]
Polynomial linear_combine(std::span<const dd> w, std::span<const Polynomial> ps);

}  // namespace skewgas::poly
