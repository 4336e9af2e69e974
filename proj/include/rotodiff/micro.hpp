#pragma once

// Microscopic diffusion constants: gas scattering in the Born approximation
// and Rayleigh-Gans photon scattering. Quantities here carry units (SI or
// whatever the caller is consistent in); nothing assumes hbar = 1.

#include <array>
#include <complex>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace rotodiff::micro {

using Complex = std::complex<double>;
using ComplexVec3 = Eigen::Matrix<Complex, 3, 1>;
using ComplexMat3 = Eigen::Matrix<Complex, 3, 3>;

struct QuadratureSpec {
  double rel_tol = 1e-10;
  std::size_t max_intervals = 4000;
};

// Real radial function v(r), negligible beyond r_cut.
struct RadialFunction {
  std::function<double(double)> v;
  double r_cut = 0.0;
};

// Complex radial coefficient V_lm(r), negligible beyond r_cut.
struct RadialProfile {
  std::function<Complex(double)> v;
  double r_cut = 0.0;

  static RadialProfile from_real(RadialFunction f);
  // c * f(r)
  static RadialProfile scaled(const RadialFunction& f, Complex c);
};

// V(r, Omega) = sum_{l <= 2, |m| <= l} V_lm(r) Y_lm(R^T e_r), Condon-Shortley
// phase. Missing terms are zero.
class PotentialExpansion {
 public:
  void set(int ell, int m, RadialProfile profile);
  const RadialProfile* find(int ell, int m) const;

  // max over samples and (l, m) of |V_{l,-m} - (-1)^m V*_{lm}|; zero for a
  // real potential.
  double realness_defect(const std::vector<double>& r_samples) const;

  // v(r)[1 + a1 m.e_r + (sqrt5 a2 / 2)(m.e_r)^2] with m = e_z.
  static PotentialExpansion azimuthal(const RadialFunction& v, double a1, double a2);

 private:
  std::map<std::pair<int, int>, RadialProfile> terms_;
};

struct GasParams {
  double n_g = 0.0;
  double m_gas = 0.0;
  double T = 0.0;
  double hbar = 1.054571817e-34;
  double k_B = 1.380649e-23;

  void validate() const;
};

struct PhotonEnvironment {
  double V0 = 0.0;
  double E0 = 0.0;
  double k = 0.0;
  std::array<double, 3> chi{};
  double epsilon0 = 8.8541878128e-12;
  double hbar = 1.054571817e-34;

  void validate() const;
};

// f_lm(p, theta) for l <= 2, index l^2 + l + m.
struct BornCoefficients {
  std::array<Complex, 9> f{};

  Complex& at(int ell, int m) { return f[index(ell, m)]; }
  Complex at(int ell, int m) const { return f[index(ell, m)]; }
  static std::size_t index(int ell, int m);
};

// f_lm = -(2 m i^l / hbar^2) int_0^inf dr r^2 V_lm(r) j_l(2 p r sin(theta/2) / hbar),
// m being the gas mass. Throws NumericalError when the quadrature misses
// its tolerance.
Complex born_coefficient(const RadialProfile& v_lm, int ell, double p, double theta,
                         double mass, double hbar, const QuadratureSpec& quad = {});

BornCoefficients born_coefficients(const PotentialExpansion& potential, double p,
                                   double theta, double mass, double hbar,
                                   const QuadratureSpec& quad = {});

ComplexVec3 assemble_A0(const BornCoefficients& f);
ComplexMat3 assemble_B0(const BornCoefficients& f);

// g_l(k) = int_0^inf dr r^2 v(r) j_l(k r)
double form_factor(const RadialFunction& v, int ell, double k,
                   const QuadratureSpec& quad = {});

struct DiffusionPair {
  double d1 = 0.0;
  double d2 = 0.0;
};

// Thermal gas at temperature T, potential v(r)[1 + a1 m.e_r + (sqrt5 a2/2)(m.e_r)^2]:
//   D^(1,2) = sqrt(2 pi m kT) (32 n m a^2 / 3 hbar^2)
//             int_0^inf dxi xi e^{-xi^2} g_{1,2}^2(2 xi sqrt(2 m kT) / hbar).
// The xi integral stops where e^{-xi^2} < 1e-18.
DiffusionPair thermal_diffusion_constants(const RadialFunction& v, double a1, double a2,
                                          const GasParams& gas,
                                          const QuadratureSpec& quad = {});

// D_i^(2) = (eps0 hbar V0^2 E0^2 k^3 / 36 pi)(chi_j - chi_k)^2, (i, j, k) cyclic.
std::array<double, 3> rayleigh_gans_diffusion(const PhotonEnvironment& env);

namespace testing {

// Diffusion constants for a gas whose momenta all have magnitude p
// (distribution normalized over d^3p):
//   D^(1,2)(p) = (4 pi / 3)(n m a^2 / p) int_0^{2p/hbar} dq q g_{1,2}^2(q).
// Averaging over the Maxwell distribution reproduces
// thermal_diffusion_constants.
DiffusionPair sharp_momentum_diffusion(const RadialFunction& v, double a1, double a2,
                                       const GasParams& gas, double p,
                                       const QuadratureSpec& quad = {});

}  // namespace testing

}  // namespace rotodiff::micro
