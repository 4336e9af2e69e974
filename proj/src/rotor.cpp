#include "rotodiff/rotor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rotodiff/error.hpp"

namespace rotodiff {

double wrap_two_pi(double angle) {
  double r = std::fmod(angle, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod of a tiny negative number can round up to exactly 2pi
  if (r >= kTwoPi) r = 0.0;
  return r;
}

EulerAngles::EulerAngles(double alpha, double beta, double gamma)
    : alpha_(wrap_two_pi(alpha)), beta_(beta), gamma_(wrap_two_pi(gamma)) {
  constexpr double slack = 1e-12;
  if (!(beta >= -slack && beta <= kPi + slack)) {
    throw std::invalid_argument("EulerAngles: beta must lie in [0, pi]");
  }
  beta_ = std::clamp(beta, 0.0, kPi);
}

UnitVector::UnitVector(const Vec3& v) {
  const double n = v.norm();
  if (!(n > 1e-300) || !std::isfinite(n)) {
    throw std::invalid_argument("UnitVector: cannot normalize a zero vector");
  }
  v_ = v / n;
}

RotationMatrix RotationMatrix::checked(const Mat3& m, double tol) {
  RotationMatrix r(m);
  if (r.orthogonality_defect() > tol || std::abs(m.determinant() - 1.0) > tol) {
    throw std::invalid_argument("RotationMatrix: matrix is not in SO(3)");
  }
  return r;
}

double RotationMatrix::orthogonality_defect() const {
  return (m_.transpose() * m_ - Mat3::Identity()).norm();
}

void InertiaTensor::validate() const {
  for (double i : moments) {
    if (!(i > 0.0) || !std::isfinite(i)) {
      throw std::invalid_argument("InertiaTensor: moments must be positive");
    }
  }
  if ((axes.transpose() * axes - Mat3::Identity()).norm() > 1e-10) {
    throw std::invalid_argument("InertiaTensor: axes must be orthonormal");
  }
}

Mat3 InertiaTensor::body_frame() const {
  const Vec3 d(moments[0], moments[1], moments[2]);
  return axes * d.asDiagonal() * axes.transpose();
}

Mat3 InertiaTensor::body_frame_inverse() const {
  const Vec3 d(1.0 / moments[0], 1.0 / moments[1], 1.0 / moments[2]);
  return axes * d.asDiagonal() * axes.transpose();
}

namespace {

Mat3 rot_z(double a) {
  const double c = std::cos(a), s = std::sin(a);
  Mat3 m;
  m << c, -s, 0, s, c, 0, 0, 0, 1;
  return m;
}

Mat3 rot_y(double b) {
  const double c = std::cos(b), s = std::sin(b);
  Mat3 m;
  m << c, 0, s, 0, 1, 0, -s, 0, c;
  return m;
}

}  // namespace

RotationMatrix rotation_from_euler(const EulerAngles& angles) {
  return RotationMatrix::trusted(rot_z(angles.alpha()) * rot_y(angles.beta()) *
                                 rot_z(angles.gamma()));
}

EulerAngles euler_from_rotation(const RotationMatrix& r) {
  const Mat3& m = r.matrix();
  const double sin_beta = std::hypot(m(0, 2), m(1, 2));
  const double beta = std::atan2(sin_beta, m(2, 2));
  if (sin_beta > 1e-12) {
    return {std::atan2(m(1, 2), m(0, 2)), beta, std::atan2(m(2, 1), -m(2, 0))};
  }
  if (m(2, 2) > 0.0) {
    // R = Rz(alpha + gamma)
    return {std::atan2(m(1, 0), m(0, 0)), 0.0, 0.0};
  }
  // R = Rz(alpha) diag(-1, 1, -1) Rz(gamma): R00 = -cos(a - g), R10 = -sin(a - g)
  return {std::atan2(-m(1, 0), -m(0, 0)), kPi, 0.0};
}

UnitVector nodal_line(double alpha) {
  return UnitVector(-std::sin(alpha), std::cos(alpha), 0.0);
}

std::array<UnitVector, 3> body_axes(const EulerAngles& angles) {
  const RotationMatrix r = rotation_from_euler(angles);
  return {UnitVector(r.column(0)), UnitVector(r.column(1)),
          UnitVector(r.column(2))};
}

EulerAngles sample_uniform_orientation(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double alpha = kTwoPi * unit(rng);
  const double cos_beta = 2.0 * unit(rng) - 1.0;
  const double gamma = kTwoPi * unit(rng);
  return {alpha, std::acos(std::clamp(cos_beta, -1.0, 1.0)), gamma};
}

RotationMatrix reorthonormalize(const Mat3& m) {
  const double det = m.determinant();
  if (!(det > 0.0)) {
    throw NumericalError("reorthonormalize: determinant is not positive", det);
  }
  Eigen::SelfAdjointEigenSolver<Mat3> eig(m.transpose() * m);
  const Vec3 lambda = eig.eigenvalues();
  if (!(lambda.minCoeff() > 0.0)) {
    throw NumericalError("reorthonormalize: singular matrix", lambda.minCoeff());
  }
  const Vec3 inv_sqrt = lambda.cwiseSqrt().cwiseInverse();
  const Mat3 inv_root =
      eig.eigenvectors() * inv_sqrt.asDiagonal() * eig.eigenvectors().transpose();
  const Mat3 r = m * inv_root;
  if (!(r.determinant() > 0.0)) {
    throw NumericalError("reorthonormalize: projection is improper",
                         r.determinant());
  }
  return RotationMatrix::trusted(r);
}

Mat3 skew(const Vec3& v) {
  Mat3 s;
  s << 0, -v.z(), v.y(), v.z(), 0, -v.x(), -v.y(), v.x(), 0;
  return s;
}

RotationMatrix rotation_exp(const Vec3& w) {
  const double theta = w.norm();
  const Mat3 k = skew(w);
  double a, b;  // sin(t)/t, (1 - cos(t))/t^2
  if (theta < 1e-4) {
    const double t2 = theta * theta;
    a = 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
    b = 0.5 - t2 / 24.0 + t2 * t2 / 720.0;
  } else {
    a = std::sin(theta) / theta;
    b = (1.0 - std::cos(theta)) / (theta * theta);
  }
  return RotationMatrix::trusted(Mat3::Identity() + a * k + b * k * k);
}

RotationMatrix axis_angle_rotation(const Vec3& axis, double angle) {
  return rotation_exp(axis.normalized() * angle);
}

std::mt19937_64 make_substream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32), 0x52444946u};
  return std::mt19937_64(seq);
}

}  // namespace rotodiff
