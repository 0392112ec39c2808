#include "skewgas/poly.hpp"

namespace skewgas::poly {

Polynomial linear_combine(std::span<const dd> w, std::span<const Polynomial> ps) {
  assert(w.size() == ps.size());
  Polynomial r;
  for (size_t i = 0; i < w.size(); ++i) r = r + ps[i] * w[i];
  return r;
}

}  // namespace skewgas::poly
