// specfun.hpp — complex gamma and parabolic cylinder functions
#pragma once

#include "oscamp/errors.hpp"
#include "oscamp/types.hpp"

namespace oscamp {

// Γ(z) for complex z.  Lanczos rational approximation (15 terms, g = 607/128)
// with the reflection formula for Re z < 0.5.  Relative error ≤ 1e−12 for
// |z| ≤ 50 away from the pole lines.  Throws PoleError when z is within
// 1e−14 of a nonpositive integer; throws ParameterError on non-finite input.
Complex gamma_complex(Complex z);

// 1/Γ(z), entire; returns 0 exactly at the nonpositive integers instead of
// throwing, which is the limit the connection formulas need.
Complex reciprocal_gamma(Complex z);

// Weber's parabolic cylinder function D_ν(z) for complex order and argument,
// normalized by D_ν(0) = 2^{ν/2}√π / Γ((1−ν)/2).  Satisfies
//   D_ν″(z) + (ν + 1/2 − z²/4) D_ν(z) = 0.
//
// Evaluation: power-series (Kummer) branch in compensated double-double
// arithmetic for |z| ≤ 10; Poincaré asymptotic series for |z| > 10 when
// |arg z| ≤ π/2; connection formulas mapping back sectors onto the
// asymptotic half-plane otherwise.  Certified relative accuracy 1e−9 for
// |ν| ≤ 10, |z| ≤ 40.  Throws AccuracyError (carrying the achieved error
// estimate) if the internal error estimate exceeds the target, and
// ParameterError on non-finite input.
Complex pcf_d(Complex nu, Complex z);

}  // namespace oscamp
