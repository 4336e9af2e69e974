#include "rotodiff/localization.hpp"

#include <cmath>
#include <stdexcept>

namespace rotodiff::localization {

void AnisotropySpec::validate() const {
  if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) {
    throw std::invalid_argument("AnisotropySpec: amplitude must be >= 0");
  }
  for (double b : b_eigenvalues) {
    if (!std::isfinite(b)) throw std::invalid_argument("AnisotropySpec: B not finite");
  }
  if ((b_axes.transpose() * b_axes - Mat3::Identity()).norm() > 1e-10) {
    throw std::invalid_argument("AnisotropySpec: B axes must be orthonormal");
  }
}

std::array<double, 3> DiffusionCoefficients::f2_weights() const {
  const double total = d2[0] + d2[1] + d2[2];
  return {total - 2.0 * d2[0], total - 2.0 * d2[1], total - 2.0 * d2[2]};
}

DiffusionCoefficients diffusion_constants(const AnisotropySpec& spec, double hbar) {
  const double h2 = hbar * hbar;
  const auto& b = spec.b_eigenvalues;
  DiffusionCoefficients out;
  out.d1 = h2 * spec.amplitude * spec.amplitude / 6.0;
  for (int i = 0; i < 3; ++i) {
    const double diff = b[(i + 1) % 3] - b[(i + 2) % 3];
    out.d2[i] = 2.0 * h2 / 15.0 * diff * diff;
  }
  return out;
}

Vec3 linear_axis(const AnisotropySpec& spec, const RotationMatrix& r) {
  return r * spec.a0.vec();
}

std::array<Vec3, 3> quadratic_axes(const AnisotropySpec& spec,
                                   const RotationMatrix& r) {
  return {r * Vec3(spec.b_axes.col(0)), r * Vec3(spec.b_axes.col(1)),
          r * Vec3(spec.b_axes.col(2))};
}

double localization_rate_F1(const AnisotropySpec& spec, const RotationMatrix& r,
                            const RotationMatrix& r_prime, double hbar) {
  const double d1 = diffusion_constants(spec, hbar).d1;
  // 1 - a.a' as |a - a'|^2 / 2: no cancellation near coincidence
  const Vec3 diff = linear_axis(spec, r) - linear_axis(spec, r_prime);
  return d1 / (hbar * hbar) * diff.squaredNorm();
}

double localization_rate_F1(const AnisotropySpec& spec, const EulerAngles& omega,
                            const EulerAngles& omega_prime, double hbar) {
  return localization_rate_F1(spec, rotation_from_euler(omega),
                              rotation_from_euler(omega_prime), hbar);
}

double localization_rate_F2(const AnisotropySpec& spec, const RotationMatrix& r,
                            const RotationMatrix& r_prime, double hbar) {
  const auto weights = diffusion_constants(spec, hbar).f2_weights();
  const auto b = quadratic_axes(spec, r);
  const auto bp = quadratic_axes(spec, r_prime);
  double sum = 0.0;
  for (int i = 0; i < 3; ++i) sum += weights[i] * b[i].cross(bp[i]).squaredNorm();
  return sum / (2.0 * hbar * hbar);
}

double localization_rate_F2(const AnisotropySpec& spec, const EulerAngles& omega,
                            const EulerAngles& omega_prime, double hbar) {
  return localization_rate_F2(spec, rotation_from_euler(omega),
                              rotation_from_euler(omega_prime), hbar);
}

RatePair localization_rate_symmetric(double d1, double d2, const UnitVector& m,
                                     const UnitVector& m_prime, double hbar) {
  const double h2 = hbar * hbar;
  return {d1 / h2 * (m.vec() - m_prime.vec()).squaredNorm(),
          d2 / h2 * m.vec().cross(m_prime.vec()).squaredNorm()};
}

RatePair localization_rate_planar(double d1, double d2, double alpha,
                                  double alpha_prime, double hbar) {
  const double h2 = hbar * hbar;
  const double half = std::sin(0.5 * (alpha - alpha_prime));
  const double full = std::sin(alpha - alpha_prime);
  return {4.0 * d1 / h2 * half * half, d2 / h2 * full * full};
}

Mat3 diffusion_tensor_D1(const AnisotropySpec& spec, const RotationMatrix& r,
                         double hbar) {
  const Vec3 a = linear_axis(spec, r);
  return diffusion_constants(spec, hbar).d1 * (Mat3::Identity() - a * a.transpose());
}

Mat3 diffusion_tensor_D1(const AnisotropySpec& spec, const EulerAngles& omega,
                         double hbar) {
  return diffusion_tensor_D1(spec, rotation_from_euler(omega), hbar);
}

Mat3 diffusion_tensor_D2(const AnisotropySpec& spec, const RotationMatrix& r,
                         double hbar) {
  const auto d2 = diffusion_constants(spec, hbar).d2;
  const auto b = quadratic_axes(spec, r);
  Mat3 out = Mat3::Zero();
  for (int i = 0; i < 3; ++i) out += d2[i] * b[i] * b[i].transpose();
  return out;
}

Mat3 diffusion_tensor_D2(const AnisotropySpec& spec, const EulerAngles& omega,
                         double hbar) {
  return diffusion_tensor_D2(spec, rotation_from_euler(omega), hbar);
}

Mat3 body_frame_diffusion(const AnisotropySpec& spec, double hbar) {
  const RotationMatrix identity;
  return diffusion_tensor_D1(spec, identity, hbar) +
         diffusion_tensor_D2(spec, identity, hbar);
}

}  // namespace rotodiff::localization
