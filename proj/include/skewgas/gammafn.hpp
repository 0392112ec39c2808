#pragma once
// Log-gamma over dd reals and complex points, via the Stirling series with
// Bernoulli coefficients after shifting the argument to Re >= 32, and the
// reflection formula below 1/2.
#include "skewgas/complexdd.hpp"
#include "skewgas/dd.hpp"
#include "skewgas/logsigned.hpp"

namespace skewgas::numeric {

// log Gamma(x) for x > 0
dd log_gamma_real(dd x);

// Gamma(x) for any non-pole real x, as sign and log-magnitude
LogSigned gamma_signed(dd x);

// log Gamma(z) for Re z > 0 (principal continuation along the shift chain);
// the imaginary part is branch-consistent with the recurrence
// logGamma(z) = logGamma(z+1) - log z, which is all the library relies on
cdd log_gamma_complex(cdd z);

// log |Gamma(z)|^2 for Re z > 0
inline dd log_abs_gamma_sq(cdd z) { return mul_pwr2(log_gamma_complex(z).re, 2.0); }

// (a)_n = a(a+1)...(a+n-1), n >= 0
LogSigned pochhammer(dd a, int n);

}  // namespace skewgas::numeric
