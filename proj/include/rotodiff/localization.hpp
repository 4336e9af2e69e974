#pragma once

// Orientational decoherence and angular momentum diffusion data for the
// linear (vector A) and quadratic (tensor B) environment couplings.
//
// The environment is described in the body frame by A0 = A a0 and
// B0 = sum_i B_i b_i b_i^T; at orientation Omega these rotate as
// A(Omega) = R A0 and B(Omega) = R B0 R^T. Rates and tensors below depend only
// on gauge-invariant combinations, so degenerate B eigenvalues are harmless.

#include <array>

#include "rotodiff/rotor.hpp"

namespace rotodiff::localization {

struct AnisotropySpec {
  double amplitude = 0.0;  // A >= 0
  UnitVector a0{0.0, 0.0, 1.0};
  std::array<double, 3> b_eigenvalues{0.0, 0.0, 0.0};
  Mat3 b_axes = Mat3::Identity();  // columns b_i, body frame

  // Throws std::invalid_argument on A < 0 or non-orthonormal axes.
  void validate() const;
};

struct DiffusionCoefficients {
  double d1 = 0.0;
  std::array<double, 3> d2{0.0, 0.0, 0.0};

  // f_i = sum_j D2_j - 2 D2_i, the weights entering F2.
  std::array<double, 3> f2_weights() const;
};

// D1 = hbar^2 A^2 / 6, D2_i = (2 hbar^2 / 15)(B_j - B_k)^2 with (i,j,k)
// cyclic.
DiffusionCoefficients diffusion_constants(const AnisotropySpec& spec, double hbar);

// a(Omega) and b_i(Omega).
Vec3 linear_axis(const AnisotropySpec& spec, const RotationMatrix& r);
std::array<Vec3, 3> quadratic_axes(const AnisotropySpec& spec,
                                   const RotationMatrix& r);

// F1 = (2 D1 / hbar^2)[1 - a(Omega) . a(Omega')]
double localization_rate_F1(const AnisotropySpec& spec, const EulerAngles& omega,
                            const EulerAngles& omega_prime, double hbar);
double localization_rate_F1(const AnisotropySpec& spec, const RotationMatrix& r,
                            const RotationMatrix& r_prime, double hbar);

// F2 = (1 / 2 hbar^2) sum_i f_i |b_i(Omega) x b_i(Omega')|^2
double localization_rate_F2(const AnisotropySpec& spec, const EulerAngles& omega,
                            const EulerAngles& omega_prime, double hbar);
double localization_rate_F2(const AnisotropySpec& spec, const RotationMatrix& r,
                            const RotationMatrix& r_prime, double hbar);

struct RatePair {
  double f1 = 0.0;
  double f2 = 0.0;
};

// Azimuthally symmetric rotor with symmetry axis m.
RatePair localization_rate_symmetric(double d1, double d2, const UnitVector& m,
                                     const UnitVector& m_prime, double hbar);

// Planar rotor: F1 = (4 D1/hbar^2) sin^2((a - a')/2), F2 = (D2/hbar^2) sin^2(a - a').
RatePair localization_rate_planar(double d1, double d2, double alpha,
                                  double alpha_prime, double hbar);

// D1(Omega) = D1 [1 - a a^T]
Mat3 diffusion_tensor_D1(const AnisotropySpec& spec, const EulerAngles& omega,
                         double hbar);
Mat3 diffusion_tensor_D1(const AnisotropySpec& spec, const RotationMatrix& r,
                         double hbar);

// D2(Omega) = sum_i D2_i b_i b_i^T
Mat3 diffusion_tensor_D2(const AnisotropySpec& spec, const EulerAngles& omega,
                         double hbar);
Mat3 diffusion_tensor_D2(const AnisotropySpec& spec, const RotationMatrix& r,
                         double hbar);

// Body-frame total D1(0) + D2(0); the classical module rotates it.
Mat3 body_frame_diffusion(const AnisotropySpec& spec, double hbar);

}  // namespace rotodiff::localization
