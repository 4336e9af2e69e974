#include "rotodiff/micro.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include "rotodiff/error.hpp"
#include "rotodiff/special.hpp"

namespace rotodiff::micro {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Adaptive 61-point Gauss-Kronrod (QUADPACK qag). Failure to reach rel_tol is
// reported with the achieved relative error.
template <class F>
double integrate(F f, double a, double b, const QuadratureSpec& quad, const char* what) {
  if (b <= a) return 0.0;
  static const bool silenced = [] {
    gsl_set_error_handler_off();
    return true;
  }();
  (void)silenced;
  const std::size_t limit = std::max<std::size_t>(quad.max_intervals, 1);
  std::unique_ptr<gsl_integration_workspace, decltype(&gsl_integration_workspace_free)> ws(
      gsl_integration_workspace_alloc(limit), &gsl_integration_workspace_free);
  gsl_function fn;
  fn.function = [](double x, void* p) { return (*static_cast<F*>(p))(x); };
  fn.params = &f;
  // Integrals that cancel far below their L1 norm cannot be resolved beyond
  // round-off of that norm; this sets the absolute floor.
  double rough = 0.0, rough_error = 0.0, resabs = 0.0, resasc = 0.0;
  gsl_integration_qk61(&fn, a, b, &rough, &rough_error, &resabs, &resasc);
  const double abs_floor = 100.0 * std::numeric_limits<double>::epsilon() * resabs;
  double value = 0.0, error = 0.0;
  const int status = gsl_integration_qag(&fn, a, b, abs_floor, quad.rel_tol, limit,
                                         GSL_INTEG_GAUSS61, ws.get(), &value, &error);
  const double achieved = value != 0.0 ? error / std::abs(value) : error;
  const double target = std::max(abs_floor, quad.rel_tol * std::abs(value));
  const bool ok = status == GSL_SUCCESS || (status == GSL_EROUND && error <= target);
  if (!ok || !std::isfinite(value)) {
    throw NumericalError(std::string(what) + ": quadrature did not converge (" +
                             gsl_strerror(status) + ", relative error " +
                             std::to_string(achieved) + ")",
                         achieved);
  }
  return value;
}

void check_radial(double r_cut, const char* what) {
  if (!(r_cut > 0.0) || !std::isfinite(r_cut)) {
    throw std::invalid_argument(std::string(what) + ": r_cut must be positive");
  }
}

void check_ell(int ell, const char* what) {
  if (ell < 0 || ell > 2) {
    throw std::invalid_argument(std::string(what) + ": only l <= 2 is supported");
  }
}

Complex i_pow(int ell) {
  switch (ell % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

}  // namespace

RadialProfile RadialProfile::from_real(RadialFunction f) {
  auto fn = std::move(f.v);
  return {[fn](double r) { return Complex(fn(r), 0.0); }, f.r_cut};
}

RadialProfile RadialProfile::scaled(const RadialFunction& f, Complex c) {
  auto fn = f.v;
  return {[fn, c](double r) { return c * fn(r); }, f.r_cut};
}

void PotentialExpansion::set(int ell, int m, RadialProfile profile) {
  check_ell(ell, "PotentialExpansion::set");
  if (std::abs(m) > ell) throw std::invalid_argument("PotentialExpansion::set: |m| > l");
  check_radial(profile.r_cut, "PotentialExpansion::set");
  terms_[{ell, m}] = std::move(profile);
}

const RadialProfile* PotentialExpansion::find(int ell, int m) const {
  auto it = terms_.find({ell, m});
  return it == terms_.end() ? nullptr : &it->second;
}

double PotentialExpansion::realness_defect(const std::vector<double>& r_samples) const {
  double worst = 0.0;
  for (int ell = 0; ell <= 2; ++ell) {
    for (int m = 0; m <= ell; ++m) {
      const RadialProfile* plus = find(ell, m);
      const RadialProfile* minus = find(ell, -m);
      const double sign = (m % 2 == 0) ? 1.0 : -1.0;
      for (double r : r_samples) {
        const Complex vp = plus ? plus->v(r) : Complex(0.0);
        const Complex vm = minus ? minus->v(r) : Complex(0.0);
        worst = std::max(worst, std::abs(vm - sign * std::conj(vp)));
      }
    }
  }
  return worst;
}

PotentialExpansion PotentialExpansion::azimuthal(const RadialFunction& v, double a1,
                                                 double a2) {
  // cos = sqrt(4pi/3) Y10, cos^2 = 1/3 + (4/3) sqrt(pi/5) Y20, 1 = sqrt(4pi) Y00
  PotentialExpansion out;
  const double s5 = std::sqrt(5.0);
  out.set(0, 0, RadialProfile::scaled(v, std::sqrt(4.0 * kPi) * (1.0 + s5 * a2 / 6.0)));
  if (a1 != 0.0) out.set(1, 0, RadialProfile::scaled(v, a1 * std::sqrt(4.0 * kPi / 3.0)));
  if (a2 != 0.0) out.set(2, 0, RadialProfile::scaled(v, 2.0 * std::sqrt(kPi) * a2 / 3.0));
  return out;
}

void GasParams::validate() const {
  for (double x : {n_g, m_gas, T, hbar, k_B}) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw std::invalid_argument("GasParams: n_g, m_gas, T, hbar, k_B must be positive");
    }
  }
}

void PhotonEnvironment::validate() const {
  for (double x : {V0, E0, k, epsilon0, hbar}) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw std::invalid_argument("PhotonEnvironment: V0, E0, k, epsilon0, hbar must be positive");
    }
  }
  for (double c : chi) {
    if (!std::isfinite(c)) throw std::invalid_argument("PhotonEnvironment: chi not finite");
  }
}

std::size_t BornCoefficients::index(int ell, int m) {
  check_ell(ell, "BornCoefficients");
  if (std::abs(m) > ell) throw std::out_of_range("BornCoefficients: |m| > l");
  return static_cast<std::size_t>(ell * ell + ell + m);
}

Complex born_coefficient(const RadialProfile& v_lm, int ell, double p, double theta,
                         double mass, double hbar, const QuadratureSpec& quad) {
  check_ell(ell, "born_coefficient");
  check_radial(v_lm.r_cut, "born_coefficient");
  if (!(p >= 0.0) || !(mass > 0.0) || !(hbar > 0.0)) {
    throw std::invalid_argument("born_coefficient: need p >= 0, mass > 0, hbar > 0");
  }
  if (!(theta >= 0.0 && theta <= kPi)) {
    throw std::invalid_argument("born_coefficient: theta must lie in [0, pi]");
  }
  const double q = 2.0 * p * std::sin(0.5 * theta) / hbar;
  if (ell > 0 && q == 0.0) return {0.0, 0.0};
  auto kernel = [&](double r) { return r * r * special::spherical_bessel_j(ell, q * r); };
  const double re = integrate([&](double r) { return kernel(r) * v_lm.v(r).real(); }, 0.0,
                              v_lm.r_cut, quad, "born_coefficient");
  const double im = integrate([&](double r) { return kernel(r) * v_lm.v(r).imag(); }, 0.0,
                              v_lm.r_cut, quad, "born_coefficient");
  return -(2.0 * mass / (hbar * hbar)) * i_pow(ell) * Complex(re, im);
}

BornCoefficients born_coefficients(const PotentialExpansion& potential, double p,
                                   double theta, double mass, double hbar,
                                   const QuadratureSpec& quad) {
  BornCoefficients out;
  for (int ell = 0; ell <= 2; ++ell) {
    for (int m = -ell; m <= ell; ++m) {
      if (const RadialProfile* v = potential.find(ell, m)) {
        out.at(ell, m) = born_coefficient(*v, ell, p, theta, mass, hbar, quad);
      }
    }
  }
  return out;
}

ComplexVec3 assemble_A0(const BornCoefficients& f) {
  const Complex i(0.0, 1.0);
  const double pre = std::sqrt(3.0 / (8.0 * kPi));
  ComplexVec3 a;
  a << f.at(1, -1) - f.at(1, 1), -i * (f.at(1, 1) + f.at(1, -1)),
      std::sqrt(2.0) * f.at(1, 0);
  return pre * a;
}

ComplexMat3 assemble_B0(const BornCoefficients& f) {
  const Complex i(0.0, 1.0);
  const double pre = std::sqrt(15.0 / (32.0 * kPi));
  const double r23 = std::sqrt(2.0 / 3.0);
  const Complex f22 = f.at(2, 2), f2m2 = f.at(2, -2);
  const Complex f21 = f.at(2, 1), f2m1 = f.at(2, -1), f20 = f.at(2, 0);
  ComplexMat3 b;
  b(0, 0) = f22 + f2m2 - r23 * f20;
  b(1, 1) = -f2m2 - f22 - r23 * f20;
  b(2, 2) = std::sqrt(8.0 / 3.0) * f20;
  b(0, 1) = b(1, 0) = i * (f22 - f2m2);
  b(0, 2) = b(2, 0) = f2m1 - f21;
  b(1, 2) = b(2, 1) = -i * (f21 + f2m1);
  return pre * b;
}

double form_factor(const RadialFunction& v, int ell, double k, const QuadratureSpec& quad) {
  check_ell(ell, "form_factor");
  check_radial(v.r_cut, "form_factor");
  if (!(k >= 0.0)) throw std::invalid_argument("form_factor: k must be >= 0");
  if (ell > 0 && k == 0.0) return 0.0;
  return integrate(
      [&](double r) { return r * r * v.v(r) * special::spherical_bessel_j(ell, k * r); }, 0.0,
      v.r_cut, quad, "form_factor");
}

DiffusionPair thermal_diffusion_constants(const RadialFunction& v, double a1, double a2,
                                          const GasParams& gas, const QuadratureSpec& quad) {
  gas.validate();
  check_radial(v.r_cut, "thermal_diffusion_constants");
  const double thermal_p = std::sqrt(2.0 * gas.m_gas * gas.k_B * gas.T);
  const double xi_max = std::sqrt(18.0 * std::log(10.0));  // e^{-xi^2} = 1e-18
  const double pre = std::sqrt(2.0 * kPi * gas.m_gas * gas.k_B * gas.T) * 32.0 * gas.n_g *
                     gas.m_gas / (3.0 * gas.hbar * gas.hbar);
  auto constant = [&](int ell, double a) {
    if (a == 0.0) return 0.0;
    const double integral = integrate(
        [&](double xi) {
          const double g = form_factor(v, ell, 2.0 * xi * thermal_p / gas.hbar, quad);
          return xi * std::exp(-xi * xi) * g * g;
        },
        0.0, xi_max, quad, "thermal_diffusion_constants");
    return pre * a * a * integral;
  };
  return {constant(1, a1), constant(2, a2)};
}

std::array<double, 3> rayleigh_gans_diffusion(const PhotonEnvironment& env) {
  env.validate();
  const double pre = env.epsilon0 * env.hbar * env.V0 * env.V0 * env.E0 * env.E0 * env.k *
                     env.k * env.k / (36.0 * kPi);
  std::array<double, 3> out{};
  for (int i = 0; i < 3; ++i) {
    const double d = env.chi[(i + 1) % 3] - env.chi[(i + 2) % 3];
    out[i] = pre * d * d;
  }
  return out;
}

namespace testing {

DiffusionPair sharp_momentum_diffusion(const RadialFunction& v, double a1, double a2,
                                       const GasParams& gas, double p,
                                       const QuadratureSpec& quad) {
  gas.validate();
  if (!(p > 0.0)) throw std::invalid_argument("sharp_momentum_diffusion: p must be positive");
  const double q_max = 2.0 * p / gas.hbar;
  auto constant = [&](int ell, double a) {
    if (a == 0.0) return 0.0;
    const double integral = integrate(
        [&](double q) {
          const double g = form_factor(v, ell, q, quad);
          return q * g * g;
        },
        0.0, q_max, quad, "sharp_momentum_diffusion");
    return 4.0 * kPi / 3.0 * gas.n_g * gas.m_gas * a * a / p * integral;
  };
  return {constant(1, a1), constant(2, a2)};
}

}  // namespace testing

}  // namespace rotodiff::micro
