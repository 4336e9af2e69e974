#include <doctest.h>

#include "approx.hpp"

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "rotodiff/localization.hpp"
#include "rotodiff/rotor.hpp"

using namespace rotodiff;
using namespace rotodiff::localization;

namespace {

EulerAngles random_angles(std::mt19937_64& rng) {
  return sample_uniform_orientation(rng);
}

AnisotropySpec generic_spec() {
  AnisotropySpec s;
  s.amplitude = 1.3;
  s.a0 = UnitVector(0.2, -0.5, 0.8);
  s.b_eigenvalues = {-0.4, 0.9, 2.5};
  s.b_axes = rotation_from_euler({0.3, 1.1, -0.7}).matrix();
  return s;
}

Vec3 sorted_eigenvalues(const Mat3& m) {
  Eigen::SelfAdjointEigenSolver<Mat3> es(m);
  return es.eigenvalues();
}

// F2 from the relative rotation: |b_i x b_i'|^2 = 1 - (b_i . b_i')^2, with
// b_i . b_i' = (Q^T R^T R' Q)_ii, Q the body-frame B axes.
double f2_oracle(const AnisotropySpec& s, const Mat3& r, const Mat3& rp, double hbar) {
  const Mat3 rel = s.b_axes.transpose() * r.transpose() * rp * s.b_axes;
  const auto& b = s.b_eigenvalues;
  double d[3];
  for (int i = 0; i < 3; ++i) {
    const double diff = b[(i + 1) % 3] - b[(i + 2) % 3];
    d[i] = 2.0 * hbar * hbar * diff * diff / 15.0;
  }
  double sum = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double f = d[0] + d[1] + d[2] - 2.0 * d[i];
    sum += f * (1.0 - rel(i, i) * rel(i, i));
  }
  return sum / (2.0 * hbar * hbar);
}

}  // namespace

TEST_CASE("diffusion constants: examples") {
  AnisotropySpec iso;
  iso.b_eigenvalues = {0.7, 0.7, 0.7};
  auto c = diffusion_constants(iso, 1.0);
  CHECK(c.d1 == 0.0);
  for (double d : c.d2) CHECK(d == 0.0);

  AnisotropySpec sym;
  sym.b_eigenvalues = {0, 0, 3.0};
  c = diffusion_constants(sym, 2.0);
  CHECK(c.d2[0] == approx(2.0 * 4.0 * 9.0 / 15.0));
  CHECK(c.d2[1] == approx(2.0 * 4.0 * 9.0 / 15.0));
  CHECK(c.d2[2] == 0.0);

  AnisotropySpec b124;
  b124.b_eigenvalues = {1, 2, 4};
  b124.amplitude = 3.0;
  c = diffusion_constants(b124, 1.0);
  CHECK(c.d1 == approx(1.5));
  CHECK(c.d2[0] == approx(2.0 / 15.0 * 4.0));
  CHECK(c.d2[1] == approx(2.0 / 15.0 * 9.0));
  CHECK(c.d2[2] == approx(2.0 / 15.0 * 1.0));
}

TEST_CASE("diffusion constants: at most one negative F2 weight") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> g;
  for (int n = 0; n < 10000; ++n) {
    AnisotropySpec s;
    s.b_eigenvalues = {g(rng), g(rng), g(rng)};
    const auto f = diffusion_constants(s, 1.0).f2_weights();
    int negative = 0;
    for (double x : f) negative += x < -1e-15;
    CHECK(negative <= 1);
  }
}

TEST_CASE("spec validation") {
  AnisotropySpec s;
  s.amplitude = -1.0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s.amplitude = 1.0;
  s.b_axes(0, 1) = 0.5;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  CHECK_NOTHROW(generic_spec().validate());
}

TEST_CASE("F1: coincidence, antipodes, relative-orientation invariance") {
  const auto s = generic_spec();
  const double d1 = diffusion_constants(s, 1.0).d1;
  const EulerAngles om(0.4, 1.0, 2.0);
  CHECK(localization_rate_F1(s, om, om, 1.0) == 0.0);

  // pi rotation about an axis orthogonal to a(Omega) flips it
  const auto r = rotation_from_euler(om);
  const Vec3 a = r * s.a0.vec();
  const Vec3 perp = a.unitOrthogonal();
  const auto rp = axis_angle_rotation(perp, kPi) * r;
  CHECK(localization_rate_F1(s, r, rp, 1.0) == approx(4.0 * d1));

  std::mt19937_64 rng(4);
  for (int n = 0; n < 2000; ++n) {
    const auto x = rotation_from_euler(random_angles(rng));
    const auto y = rotation_from_euler(random_angles(rng));
    const auto left = rotation_from_euler(random_angles(rng));
    const double f = localization_rate_F1(s, x, y, 1.0);
    CHECK(f >= -1e-12);
    CHECK(std::abs(localization_rate_F1(s, left * x, left * y, 1.0) - f) < 1e-12);
  }
}

TEST_CASE("F2: matches relative-rotation oracle; zero for pi rotation about b3") {
  const auto s = generic_spec();
  std::mt19937_64 rng(8);
  for (int n = 0; n < 2000; ++n) {
    const auto x = rotation_from_euler(random_angles(rng));
    const auto y = rotation_from_euler(random_angles(rng));
    const double f = localization_rate_F2(s, x, y, 0.7);
    CHECK(f == approx(f2_oracle(s, x.matrix(), y.matrix(), 0.7)).epsilon(1e-12));
    CHECK(f >= -1e-12);

    const Vec3 b3 = x * Vec3(s.b_axes.col(2));
    const auto flipped = axis_angle_rotation(b3, kPi) * x;
    CHECK(std::abs(localization_rate_F2(s, x, flipped, 0.7)) < 1e-12);
  }
  const EulerAngles om(1.0, 0.5, 0.1);
  CHECK(localization_rate_F2(s, om, om, 1.0) == 0.0);
}

TEST_CASE("symmetric rotor rates: examples and agreement with the general form") {
  const UnitVector z(0, 0, 1);
  auto p = localization_rate_symmetric(1.5, 0.8, z, z, 1.0);
  CHECK(p.f1 == 0.0);
  CHECK(p.f2 == 0.0);
  p = localization_rate_symmetric(1.5, 0.8, z, UnitVector(0, 0, -1), 1.0);
  CHECK(p.f1 == approx(6.0));
  CHECK(p.f2 == 0.0);
  p = localization_rate_symmetric(1.5, 0.8, z, UnitVector(1, 0, 0), 1.0);
  CHECK(p.f1 == approx(3.0));
  CHECK(p.f2 == approx(0.8));

  // B = (0, 0, beta), a0 = e_z: D2_1 = D2_2 = d, D2_3 = 0, and m = b3
  AnisotropySpec s;
  s.amplitude = 1.1;
  s.b_eigenvalues = {0, 0, 1.7};
  const auto c = diffusion_constants(s, 1.0);
  std::mt19937_64 rng(21);
  for (int n = 0; n < 500; ++n) {
    const auto x = rotation_from_euler(random_angles(rng));
    const auto y = rotation_from_euler(random_angles(rng));
    const auto q = localization_rate_symmetric(c.d1, c.d2[0], UnitVector(x * Vec3::UnitZ()),
                                               UnitVector(y * Vec3::UnitZ()), 1.0);
    CHECK(q.f1 == approx(localization_rate_F1(s, x, y, 1.0)).epsilon(1e-12));
    CHECK(std::abs(q.f2 - localization_rate_F2(s, x, y, 1.0)) < 1e-12);
  }
}

TEST_CASE("planar rates: examples, periodicity, consistency with the symmetric form") {
  auto p = localization_rate_planar(2.0, 3.0, kPi, 0.0, 1.0);
  CHECK(p.f1 == approx(8.0));
  CHECK(std::abs(p.f2) < 1e-14);
  p = localization_rate_planar(2.0, 3.0, 0.3, 0.3, 1.0);
  CHECK(p.f1 == 0.0);
  CHECK(p.f2 == 0.0);
  p = localization_rate_planar(2.0, 3.0, kPi / 2, 0.0, 1.0);
  CHECK(p.f1 == approx(4.0));
  CHECK(p.f2 == approx(3.0));

  for (double d : {0.1, 0.9, 2.2, 4.0}) {
    const auto a = localization_rate_planar(1.0, 1.0, d, 0.0, 1.0);
    const auto b = localization_rate_planar(1.0, 1.0, d + kTwoPi, 0.0, 1.0);
    const auto c = localization_rate_planar(1.0, 1.0, d + kPi, 0.0, 1.0);
    CHECK(a.f1 == approx(b.f1));
    CHECK(a.f2 == approx(b.f2));
    CHECK(a.f2 == approx(c.f2));
    // axis in the plane at angle alpha
    const auto s = localization_rate_symmetric(1.0, 1.0, UnitVector(std::cos(d), std::sin(d), 0),
                                               UnitVector(1, 0, 0), 1.0);
    CHECK(a.f1 == approx(s.f1));
    CHECK(a.f2 == approx(s.f2));
  }
}

TEST_CASE("diffusion tensors: identity orientation, trace, spectrum") {
  const auto s = generic_spec();
  const auto c = diffusion_constants(s, 1.0);
  const EulerAngles id(0, 0, 0);

  const Mat3 d1_body = c.d1 * (Mat3::Identity() - s.a0.vec() * s.a0.vec().transpose());
  CHECK((diffusion_tensor_D1(s, id, 1.0) - d1_body).norm() < 1e-15);
  Mat3 d2_body = Mat3::Zero();
  for (int i = 0; i < 3; ++i) d2_body += c.d2[i] * s.b_axes.col(i) * s.b_axes.col(i).transpose();
  CHECK((diffusion_tensor_D2(s, id, 1.0) - d2_body).norm() < 1e-14);
  CHECK((body_frame_diffusion(s, 1.0) - d1_body - d2_body).norm() < 1e-14);

  const Vec3 ev1 = sorted_eigenvalues(d1_body);
  const Vec3 ev2 = sorted_eigenvalues(d2_body);
  std::mt19937_64 rng(31);
  for (int n = 0; n < 1000; ++n) {
    const auto om = random_angles(rng);
    const Mat3 t1 = diffusion_tensor_D1(s, om, 1.0);
    const Mat3 t2 = diffusion_tensor_D2(s, om, 1.0);
    CHECK((t1 - t1.transpose()).norm() == 0.0);
    CHECK(t1.trace() == approx(2.0 * c.d1).epsilon(1e-13));
    CHECK((t1 + t2).trace() ==
          approx(2.0 * c.d1 + c.d2[0] + c.d2[1] + c.d2[2]).epsilon(1e-13));
    CHECK((sorted_eigenvalues(t1) - ev1).norm() < 1e-12);
    CHECK((sorted_eigenvalues(t2) - ev2).norm() < 1e-12);
    // a(Omega) is the null direction of D1(Omega)
    const Vec3 a = rotation_from_euler(om) * s.a0.vec();
    CHECK((t1 * a).norm() < 1e-13);
  }
}

TEST_CASE("orthonormal-set identity: sum_i |b_i x c|^2 = 2") {
  const auto s = generic_spec();
  std::mt19937_64 rng(12);
  std::normal_distribution<double> g;
  for (int n = 0; n < 1000; ++n) {
    const auto b = quadratic_axes(s, rotation_from_euler(random_angles(rng)));
    const Vec3 c = Vec3(g(rng), g(rng), g(rng)).normalized();
    double sum = 0.0;
    for (const auto& bi : b) sum += bi.cross(c).squaredNorm();
    CHECK(std::abs(sum - 2.0) < 1e-12);
  }
}
