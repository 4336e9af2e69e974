#pragma once

#include <vector>

namespace rotodiff::special {

// Largest argument accepted by the unscaled modified Bessel function.
inline constexpr double kBesselOverflowGuard = 700.0;

// I_ell(x) for integer ell >= 0. Negative x is handled through
// I_ell(-x) = (-1)^ell I_ell(x). Throws NumericalError when |x| exceeds
// kBesselOverflowGuard; use the scaled variant there.
double modified_bessel_I(int ell, double x);

// exp(-|x|) I_ell(x); valid for any finite x.
double modified_bessel_I_scaled(int ell, double x);

// exp(-|x|) I_ell(x) for ell = 0..ell_max, computed together by Miller's
// backward recurrence normalized with exp(-x)[I_0 + 2 sum_k I_k] = 1.
std::vector<double> scaled_bessel_sequence(int ell_max, double x);

// Spherical Bessel j_ell(x) for ell in {0, 1, 2}. Closed forms, switching to
// the power series for |x| < 1 where the closed forms cancel.
double spherical_bessel_j(int ell, double x);

}  // namespace rotodiff::special
