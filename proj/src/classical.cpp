#include "rotodiff/classical.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "rotodiff/error.hpp"

namespace rotodiff::classical {

ClassicalParams ClassicalParams::from_spec(const InertiaTensor& inertia,
                                           const localization::AnisotropySpec& spec,
                                           double hbar, double dt,
                                           std::uint64_t seed) {
  ClassicalParams p;
  p.inertia = inertia;
  p.body_diffusion = localization::body_frame_diffusion(spec, hbar);
  p.dt = dt;
  p.seed = seed;
  return p;
}

void ClassicalParams::validate() const {
  inertia.validate();
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw std::invalid_argument("ClassicalParams: dt must be positive");
  }
  if ((body_diffusion - body_diffusion.transpose()).norm() >
      1e-12 * std::max(1.0, body_diffusion.norm())) {
    throw std::invalid_argument("ClassicalParams: D0 must be symmetric");
  }
  // throws on a negative eigenvalue
  (void)matrix_sqrt_psd(body_diffusion);
}

Mat3 matrix_sqrt_psd(const Mat3& d) {
  const Mat3 sym = 0.5 * (d + d.transpose());
  Eigen::SelfAdjointEigenSolver<Mat3> eig(sym);
  Vec3 lambda = eig.eigenvalues();
  if (lambda.minCoeff() < -1e-9) {
    throw NumericalError("matrix_sqrt_psd: matrix is not positive semidefinite",
                         lambda.minCoeff());
  }
  lambda = lambda.cwiseMax(0.0).cwiseSqrt();
  return eig.eigenvectors() * lambda.asDiagonal() * eig.eigenvectors().transpose();
}

Mat3 diffusion_at(const ClassicalParams& params, const RotationMatrix& r) {
  return r.matrix() * params.body_diffusion * r.matrix().transpose();
}

Vec3 angular_velocity(const ClassicalParams& params, const RigidBodyState& state) {
  const Mat3& r = state.r.matrix();
  return r * (params.inertia.body_frame_inverse() * (r.transpose() * state.j));
}

double kinetic_energy(const ClassicalParams& params, const RigidBodyState& state) {
  return 0.5 * state.j.dot(angular_velocity(params, state));
}

Stepper::Stepper(const ClassicalParams& params)
    : params_(params),
      inverse_inertia_(params.inertia.body_frame_inverse()),
      noise_root_(matrix_sqrt_psd(2.0 * params.body_diffusion)),
      noiseless_(params.body_diffusion.isZero(0.0)) {
  params_.validate();
}

void Stepper::step(RigidBodyState& state, std::mt19937_64& rng) const {
  const double dt = params_.dt;
  const Mat3& r = state.r.matrix();
  const Vec3 body_j = r.transpose() * state.j;
  const Vec3 omega = r * (inverse_inertia_ * body_j);
  if (omega.norm() * dt >= kCoarseRotationAngle) ++state.coarse_steps;

  if (!noiseless_) {
    // sqrt(2 D(Omega)) = R sqrt(2 D0) R^T
    std::normal_distribution<double> normal(0.0, 1.0);
    Vec3 xi;
    xi.x() = normal(rng);
    xi.y() = normal(rng);
    xi.z() = normal(rng);
    state.j += std::sqrt(dt) * (r * (noise_root_ * (r.transpose() * xi)));
  }
  state.r = rotation_exp(omega * dt) * state.r;
  ++state.steps;
  state.t += dt;
  if (state.steps % kReorthonormalizeEvery == 0) {
    state.r = reorthonormalize(state.r.matrix());
  }
}

RigidBodyState sde_step(const RigidBodyState& state, const ClassicalParams& params,
                        std::mt19937_64& rng) {
  RigidBodyState next = state;
  Stepper(params).step(next, rng);
  return next;
}

InitialSampler delta_initial(const RotationMatrix& r0, const Vec3& j0) {
  return [r0, j0](std::mt19937_64&) { return std::make_pair(r0, j0); };
}

InitialSampler haar_initial(const Vec3& j0) {
  return [j0](std::mt19937_64& rng) {
    return std::make_pair(rotation_from_euler(sample_uniform_orientation(rng)), j0);
  };
}

EnsembleSamples sample_ensemble(const ClassicalParams& params,
                                const EnsembleOptions& options,
                                const InitialSampler& initial) {
  if (options.n_traj < 2) {
    throw std::invalid_argument("sample_ensemble: need at least two trajectories");
  }
  if (!(options.t_final >= 0.0)) {
    throw std::invalid_argument("sample_ensemble: t_final must be >= 0");
  }
  const Stepper stepper(params);
  const double dt = params.dt;

  std::vector<std::uint64_t> sample_steps;
  EnsembleSamples out;
  for (double t : options.sample_times) {
    if (t < 0.0 || t > options.t_final * (1.0 + 1e-12)) {
      throw std::invalid_argument("sample_ensemble: sample time outside [0, t_final]");
    }
    const auto k = static_cast<std::uint64_t>(std::llround(t / dt));
    if (!sample_steps.empty() && k < sample_steps.back()) {
      throw std::invalid_argument("sample_ensemble: sample times must be ascending");
    }
    sample_steps.push_back(k);
    out.times.push_back(static_cast<double>(k) * dt);
  }
  const std::size_t n_samples = sample_steps.size();
  out.n_traj = options.n_traj;
  out.j.assign(3 * options.n_traj * n_samples, 0.0);
  std::vector<std::uint64_t> coarse(options.n_traj, 0);

  auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t traj = begin; traj < end; ++traj) {
      std::mt19937_64 rng = make_substream(params.seed, traj);
      RigidBodyState state;
      std::tie(state.r, state.j) = initial(rng);
      double* dst = out.j.data() + 3 * traj * n_samples;
      for (std::size_t s = 0; s < n_samples; ++s) {
        while (state.steps < sample_steps[s]) stepper.step(state, rng);
        dst[3 * s + 0] = state.j.x();
        dst[3 * s + 1] = state.j.y();
        dst[3 * s + 2] = state.j.z();
      }
      coarse[traj] = state.coarse_steps;
    }
  };

  const unsigned threads =
      std::max(1u, std::min<unsigned>(options.threads,
                                      static_cast<unsigned>(options.n_traj)));
  if (threads == 1) {
    run_range(0, options.n_traj);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (options.n_traj + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(options.n_traj, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(run_range, begin, end);
    }
    for (auto& th : pool) th.join();
  }
  for (auto c : coarse) out.coarse_steps += c;
  return out;
}

MomentSeries moments(const EnsembleSamples& samples) {
  const std::size_t n = samples.n_traj;
  const std::size_t n_samples = samples.times.size();
  const double inv_n = 1.0 / static_cast<double>(n);
  const double inv_nm1 = 1.0 / static_cast<double>(n - 1);

  MomentSeries out;
  out.times = samples.times;
  out.n_traj = n;
  for (std::size_t s = 0; s < n_samples; ++s) {
    // fixed trajectory order keeps the reduction deterministic
    Vec3 mean = Vec3::Zero();
    Mat3 second = Mat3::Zero();
    for (std::size_t k = 0; k < n; ++k) {
      const Vec3 j = Eigen::Map<const Vec3>(samples.at(k, s));
      mean += j;
      second += j * j.transpose();
    }
    mean *= inv_n;
    second *= inv_n;

    Vec3 var_mean = Vec3::Zero();
    Mat3 var_second = Mat3::Zero();
    for (std::size_t k = 0; k < n; ++k) {
      const Vec3 j = Eigen::Map<const Vec3>(samples.at(k, s));
      var_mean += (j - mean).cwiseAbs2();
      var_second += (j * j.transpose() - second).cwiseAbs2();
    }
    out.mean_j.push_back(mean);
    out.mean_j_se.push_back((var_mean * inv_nm1 * inv_n).cwiseSqrt());
    out.second_moment.push_back(second);
    out.second_moment_se.push_back((var_second * inv_nm1 * inv_n).cwiseSqrt());
  }
  return out;
}

MomentSeries simulate_ensemble(const ClassicalParams& params,
                               const EnsembleOptions& options,
                               const InitialSampler& initial) {
  return moments(sample_ensemble(params, options, initial));
}

SlopeEstimate second_moment_slope(const EnsembleSamples& samples) {
  const std::size_t n = samples.n_traj;
  const std::size_t n_samples = samples.times.size();
  if (n_samples < 2) {
    throw std::invalid_argument("second_moment_slope: need at least two sample times");
  }
  double t_mean = 0.0;
  for (double t : samples.times) t_mean += t;
  t_mean /= static_cast<double>(n_samples);
  double sxx = 0.0;
  for (double t : samples.times) sxx += (t - t_mean) * (t - t_mean);
  if (!(sxx > 0.0)) {
    throw std::invalid_argument("second_moment_slope: sample times must differ");
  }

  std::vector<Mat3> slopes(n, Mat3::Zero());
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t s = 0; s < n_samples; ++s) {
      const Vec3 j = Eigen::Map<const Vec3>(samples.at(k, s));
      slopes[k] += (samples.times[s] - t_mean) * (j * j.transpose());
    }
    slopes[k] /= sxx;
  }
  SlopeEstimate out;
  for (const auto& m : slopes) out.slope += m;
  out.slope /= static_cast<double>(n);
  Mat3 var = Mat3::Zero();
  for (const auto& m : slopes) var += (m - out.slope).cwiseAbs2();
  out.standard_error =
      (var / (static_cast<double>(n - 1) * static_cast<double>(n))).cwiseSqrt();
  return out;
}

}  // namespace rotodiff::classical
