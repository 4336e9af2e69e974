#pragma once

// Classical angular momentum diffusion of a free rigid rotor.
//
//   dJ = sqrt(2 D(Omega)) dW,      dR = [I^{-1}(Omega) J]x R dt,
//
// with D(Omega) = R D0 R^T and I(Omega) = R I0 R^T. Integrated with
// Euler-Maruyama for J and the exponential map for R.

#include <cstdint>
#include <functional>
#include <random>
#include <utility>
#include <vector>

#include "rotodiff/localization.hpp"
#include "rotodiff/rotor.hpp"

namespace rotodiff::classical {

struct ClassicalParams {
  InertiaTensor inertia;
  Mat3 body_diffusion = Mat3::Zero();  // D0, symmetric PSD
  double dt = 1e-3;
  std::uint64_t seed = 0;

  // D0 = D1(0) + D2(0) from a localization spec.
  static ClassicalParams from_spec(const InertiaTensor& inertia,
                                   const localization::AnisotropySpec& spec,
                                   double hbar, double dt, std::uint64_t seed);

  void validate() const;
};

struct RigidBodyState {
  RotationMatrix r;
  Vec3 j = Vec3::Zero();
  double t = 0.0;
  std::uint64_t steps = 0;
  // Steps where |I^{-1} J| dt reached 0.1 rad.
  std::uint64_t coarse_steps = 0;
};

inline constexpr int kReorthonormalizeEvery = 100;
inline constexpr double kCoarseRotationAngle = 0.1;

// Symmetric PSD square root. Eigenvalues in [-1e-9, 0) are clamped to zero;
// anything more negative throws NumericalError.
Mat3 matrix_sqrt_psd(const Mat3& d);

// D(Omega) = R D0 R^T.
Mat3 diffusion_at(const ClassicalParams& params, const RotationMatrix& r);

// I^{-1}(Omega) J.
Vec3 angular_velocity(const ClassicalParams& params, const RigidBodyState& state);

// 1/2 J . I^{-1}(Omega) J
double kinetic_energy(const ClassicalParams& params, const RigidBodyState& state);

// Precomputed pieces of one integrator; shared by all trajectories.
class Stepper {
 public:
  explicit Stepper(const ClassicalParams& params);

  // One Euler-Maruyama step. Drift and noise amplitude are evaluated at the
  // start of the step; R is reorthonormalized every kReorthonormalizeEvery
  // steps.
  void step(RigidBodyState& state, std::mt19937_64& rng) const;

  const ClassicalParams& params() const { return params_; }

 private:
  ClassicalParams params_;
  Mat3 inverse_inertia_;  // body frame
  Mat3 noise_root_;       // sqrt(2 D0), body frame
  bool noiseless_;
};

RigidBodyState sde_step(const RigidBodyState& state, const ClassicalParams& params,
                        std::mt19937_64& rng);

using InitialSampler =
    std::function<std::pair<RotationMatrix, Vec3>(std::mt19937_64&)>;

InitialSampler delta_initial(const RotationMatrix& r0, const Vec3& j0);
// Haar-uniform orientation, fixed J.
InitialSampler haar_initial(const Vec3& j0);

// Per-trajectory J samples, laid out [trajectory][sample][component].
struct EnsembleSamples {
  std::vector<double> times;
  std::size_t n_traj = 0;
  std::vector<double> j;
  std::uint64_t coarse_steps = 0;

  const double* at(std::size_t traj, std::size_t sample) const {
    return j.data() + 3 * (traj * times.size() + sample);
  }
};

struct MomentSeries {
  std::vector<double> times;
  std::size_t n_traj = 0;
  std::vector<Vec3> mean_j;
  std::vector<Vec3> mean_j_se;
  std::vector<Mat3> second_moment;     // <J J^T>
  std::vector<Mat3> second_moment_se;
};

struct EnsembleOptions {
  std::size_t n_traj = 1000;
  double t_final = 1.0;
  std::vector<double> sample_times;  // ascending, within [0, t_final]
  unsigned threads = 1;
};

// Samples are taken at the step nearest to each requested time; the reported
// times are the step times actually used.
EnsembleSamples sample_ensemble(const ClassicalParams& params,
                                const EnsembleOptions& options,
                                const InitialSampler& initial);

MomentSeries moments(const EnsembleSamples& samples);

MomentSeries simulate_ensemble(const ClassicalParams& params,
                               const EnsembleOptions& options,
                               const InitialSampler& initial);

// Slope of <J J^T>(t), estimated per trajectory by least squares over the
// sample times and averaged; the standard error comes from the spread across
// independent trajectories.
struct SlopeEstimate {
  Mat3 slope = Mat3::Zero();
  Mat3 standard_error = Mat3::Zero();
};
SlopeEstimate second_moment_slope(const EnsembleSamples& samples);

}  // namespace rotodiff::classical
