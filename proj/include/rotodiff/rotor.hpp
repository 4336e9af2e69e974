#pragma once

// Orientation representation shared by every other module.
//
// Euler angles follow the z-y'-z'' convention: an alpha-rotation about e_z,
// then a beta-rotation about the nodal line, then a gamma-rotation about the
// body axis n3. In fixed-axis form R(alpha, beta, gamma) = Rz(alpha) Ry(beta)
// Rz(gamma).

#include <array>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace rotodiff {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Reduce an angle to [0, 2pi).
double wrap_two_pi(double angle);

class EulerAngles {
 public:
  EulerAngles() = default;
  // alpha and gamma are reduced mod 2pi; beta must lie in [0, pi].
  EulerAngles(double alpha, double beta, double gamma);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double gamma() const { return gamma_; }

 private:
  double alpha_ = 0.0;
  double beta_ = 0.0;
  double gamma_ = 0.0;
};

class UnitVector {
 public:
  UnitVector() : v_(Vec3::UnitZ()) {}
  // Normalizes; throws std::invalid_argument on a (near) zero vector.
  explicit UnitVector(const Vec3& v);
  UnitVector(double x, double y, double z) : UnitVector(Vec3(x, y, z)) {}

  const Vec3& vec() const { return v_; }
  operator const Vec3&() const { return v_; }
  double operator[](int i) const { return v_[i]; }

 private:
  Vec3 v_;
};

class RotationMatrix {
 public:
  RotationMatrix() : m_(Mat3::Identity()) {}

  // Accepts m only if orthogonal with det +1 to within tol; throws
  // std::invalid_argument otherwise.
  static RotationMatrix checked(const Mat3& m, double tol = 1e-10);
  // No validation. For integrator internals that control drift themselves.
  static RotationMatrix trusted(const Mat3& m) { return RotationMatrix(m); }

  const Mat3& matrix() const { return m_; }
  Vec3 operator*(const Vec3& v) const { return m_ * v; }
  RotationMatrix operator*(const RotationMatrix& other) const {
    return RotationMatrix(m_ * other.m_);
  }
  RotationMatrix transpose() const { return RotationMatrix(m_.transpose()); }
  Vec3 column(int i) const { return m_.col(i); }

  // Frobenius norm of R^T R - 1.
  double orthogonality_defect() const;

 private:
  explicit RotationMatrix(const Mat3& m) : m_(m) {}
  Mat3 m_;
};

// Principal moments with their body-frame axes (columns of `axes`).
struct InertiaTensor {
  std::array<double, 3> moments{1.0, 1.0, 1.0};
  Mat3 axes = Mat3::Identity();

  // Throws std::invalid_argument unless moments > 0 and axes orthonormal.
  void validate() const;
  Mat3 body_frame() const;
  Mat3 body_frame_inverse() const;
};

RotationMatrix rotation_from_euler(const EulerAngles& angles);

// Inverse of rotation_from_euler. At beta = 0 or pi only alpha +/- gamma is
// determined; gamma is then set to 0.
EulerAngles euler_from_rotation(const RotationMatrix& r);

// e_nu(alpha) = -e_x sin(alpha) + e_y cos(alpha)
UnitVector nodal_line(double alpha);

// n_i = R(angles) e_i.
std::array<UnitVector, 3> body_axes(const EulerAngles& angles);

// Haar-uniform orientation: alpha, gamma uniform on [0, 2pi), cos(beta)
// uniform on [-1, 1].
EulerAngles sample_uniform_orientation(std::mt19937_64& rng);

// Nearest rotation in Frobenius norm, via the polar decomposition
// M (M^T M)^{-1/2}. Throws NumericalError if det M <= 0 or M is singular.
RotationMatrix reorthonormalize(const Mat3& m);

Mat3 skew(const Vec3& v);

// exp([w]x): rotation by |w| about w (Rodrigues).
RotationMatrix rotation_exp(const Vec3& w);

RotationMatrix axis_angle_rotation(const Vec3& axis, double angle);

// Independent per-index random stream. Streams are keyed by (seed, index)
// so results do not depend on the order in which indices are processed.
std::mt19937_64 make_substream(std::uint64_t seed, std::uint64_t index);

}  // namespace rotodiff
