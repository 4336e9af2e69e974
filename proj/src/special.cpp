#include "rotodiff/special.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "rotodiff/error.hpp"

namespace rotodiff::special {

namespace {

// exp(-x) I_ell(x) by the ascending series; used for x <= 1.
std::vector<double> scaled_series(int ell_max, double x) {
  std::vector<double> out(static_cast<std::size_t>(ell_max) + 1, 0.0);
  const double half = 0.5 * x;
  const double q = half * half;
  const double damp = std::exp(-x);
  double lead = 1.0;  // (x/2)^ell / ell!
  for (int ell = 0; ell <= ell_max; ++ell) {
    if (ell > 0) lead *= half / ell;
    if (lead == 0.0) break;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 60; ++k) {
      term *= q / (static_cast<double>(k) * (k + ell));
      sum += term;
      if (term < 1e-18 * sum) break;
    }
    out[ell] = damp * lead * sum;
  }
  return out;
}

}  // namespace

std::vector<double> scaled_bessel_sequence(int ell_max, double x) {
  if (ell_max < 0) throw std::invalid_argument("scaled_bessel_sequence: ell_max < 0");
  if (!std::isfinite(x)) throw std::invalid_argument("scaled_bessel_sequence: x not finite");
  const bool negative = x < 0.0;
  const double ax = std::abs(x);

  std::vector<double> out;
  if (ax <= 1.0) {
    out = scaled_series(ell_max, ax);
  } else {
    // Start far enough above both ell_max and the bulk of the I_k(x) mass
    // (I_k/I_0 ~ exp(-k^2 / 2x) for large x).
    const int start = std::max(ell_max, static_cast<int>(ax)) + 40 +
                      static_cast<int>(10.0 * std::sqrt(ax));
    out.assign(static_cast<std::size_t>(ell_max) + 1, 0.0);
    double next = 0.0;  // b_{k+1}
    double cur = 1e-280;  // b_k
    double norm = 0.0;  // sum_{k>=1} b_k
    constexpr double big = 1e250;
    for (int k = start; k >= 1; --k) {
      if (k <= ell_max) out[k] = cur;
      norm += cur;
      const double prev = (2.0 * k / ax) * cur + next;  // b_{k-1}
      next = cur;
      cur = prev;
      if (std::abs(cur) > big) {
        cur /= big;
        next /= big;
        norm /= big;
        for (int j = 1; j <= ell_max; ++j) out[j] /= big;
      }
    }
    out[0] = cur;
    const double total = cur + 2.0 * norm;
    for (double& v : out) v /= total;
  }
  if (negative) {
    for (int ell = 1; ell <= ell_max; ell += 2) out[ell] = -out[ell];
  }
  return out;
}

double modified_bessel_I_scaled(int ell, double x) {
  if (ell < 0) ell = -ell;
  return scaled_bessel_sequence(ell, x).back();
}

double modified_bessel_I(int ell, double x) {
  if (std::abs(x) > kBesselOverflowGuard) {
    throw NumericalError("modified_bessel_I: |x| = " + std::to_string(x) +
                             " exceeds the overflow guard; use the scaled variant",
                         std::abs(x));
  }
  return std::exp(std::abs(x)) * modified_bessel_I_scaled(ell, x);
}

double spherical_bessel_j(int ell, double x) {
  if (ell < 0 || ell > 2) {
    throw std::invalid_argument("spherical_bessel_j: only ell <= 2 is supported");
  }
  const double ax = std::abs(x);
  if (ax < 1.0) {
    // x^ell / (2 ell + 1)!! * sum_k (-x^2/2)^k / (k! (2ell+3)(2ell+5)...(2ell+2k+1))
    double lead = 1.0;
    for (int j = 1; j <= ell; ++j) lead *= x / (2.0 * j + 1.0);
    const double q = -0.5 * x * x;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 30; ++k) {
      term *= q / (k * (2.0 * ell + 2.0 * k + 1.0));
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return lead * sum;
  }
  const double s = std::sin(x), c = std::cos(x);
  switch (ell) {
    case 0:
      return s / x;
    case 1:
      return s / (x * x) - c / x;
    default:
      return (3.0 / (x * x) - 1.0) * s / x - 3.0 * c / (x * x);
  }
}

}  // namespace rotodiff::special
