// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "rotodiff/classical.hpp"
#include "rotodiff/cli.hpp"
#include "rotodiff/localization.hpp"
#include "rotodiff/micro.hpp"
#include "rotodiff/planar.hpp"

namespace fs = std::filesystem;
using namespace rotodiff;
using rotodiff::cli::Json;

namespace {

constexpr double kPiD = 3.14159265358979323846;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// ---- oracles ---------------------------------------------------------------

// sum_k (x/2)^{2k+n} / (k! (k+n)!) in long double
long double bessel_series(int n, long double x) {
  long double term = 1.0L;
  for (int k = 1; k <= n; ++k) term *= (x / 2.0L) / k;
  long double sum = term;
  for (int k = 1; k < 600; ++k) {
    term *= (x / 2.0L) * (x / 2.0L) / (static_cast<long double>(k) * (k + n));
    sum += term;
    if (term < sum * 1e-22L) break;
  }
  return sum;
}

double p_closed_form(int m, double x) {
  return static_cast<double>(std::exp(-static_cast<long double>(x)) *
                             bessel_series(std::abs(m), x));
}

double max_p_error(const planar::PlanarWignerState& s, double x) {
  const auto p = planar::momentum_distribution(s);
  double err = 0.0;
  for (int m = -s.m_max(); m <= s.m_max(); ++m) {
    err = std::max(err, std::abs(p[m + s.m_max()] - p_closed_form(m, x)));
  }
  return err;
}

planar::PlanarParams planar_params(double d1, double d2 = 0.0) {
  planar::PlanarParams p;
  p.d1 = d1;
  p.d2 = d2;
  return p;
}

planar::PlanarWignerState smooth_state(int n_alpha, int m_max) {
  planar::PlanarWignerState s(n_alpha, m_max);
  for (int m = -m_max; m <= m_max; ++m) {
    const double g = std::exp(-0.5 * (m - 1) * (m - 1) / 4.0);
    for (int j = 0; j < n_alpha; ++j) {
      const double a = s.alpha(j);
      s.at(m, j) = g * (1.0 + 0.3 * std::cos(a - 0.2 * m) + 0.1 * std::sin(3 * a));
    }
  }
  const double total = s.total();
  for (auto& v : s.values()) v /= total;
  return s;
}

// Dense RK4 on the phase-space master equation; spectral alpha derivative,
// zero values beyond |m| = M.
planar::PlanarWignerState rk4_oracle(const planar::PlanarWignerState& s0,
                                     const planar::PlanarParams& p, double t, int steps) {
  const int n = s0.n_alpha();
  const int mm = s0.m_max();
  std::vector<double> deriv(static_cast<std::size_t>(n) * n, 0.0);
  for (int j = 0; j < n; ++j) {
    for (int l = 0; l < n; ++l) {
      double sum = 0.0;
      for (int k = -n / 2 + 1; k < n / 2; ++k) sum -= k * std::sin(2.0 * kPiD * k * (j - l) / n);
      deriv[static_cast<std::size_t>(j) * n + l] = sum / n;
    }
  }
  auto value = [&](const std::vector<double>& w, int m, int j) {
    return std::abs(m) > mm ? 0.0 : w[static_cast<std::size_t>(m + mm) * n + j];
  };
  auto rhs = [&](const std::vector<double>& w) {
    std::vector<double> out(w.size());
    for (int m = -mm; m <= mm; ++m) {
      for (int j = 0; j < n; ++j) {
        double d = 0.0;
        for (int l = 0; l < n; ++l) d += deriv[static_cast<std::size_t>(j) * n + l] * value(w, m, l);
        const double c = value(w, m, j);
        out[static_cast<std::size_t>(m + mm) * n + j] =
            -p.hbar * m / p.inertia * d +
            p.d1 / (p.hbar * p.hbar) * (value(w, m + 1, j) - 2 * c + value(w, m - 1, j)) +
            p.d2 / (4 * p.hbar * p.hbar) * (value(w, m + 2, j) - 2 * c + value(w, m - 2, j));
      }
    }
    return out;
  };
  auto axpy = [](const std::vector<double>& a, double c, const std::vector<double>& b) {
    std::vector<double> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + c * b[i];
    return r;
  };
  std::vector<double> w = s0.values();
  const double h = t / steps;
  for (int s = 0; s < steps; ++s) {
    const auto k1 = rhs(w);
    const auto k2 = rhs(axpy(w, h / 2, k1));
    const auto k3 = rhs(axpy(w, h / 2, k2));
    const auto k4 = rhs(axpy(w, h, k3));
    for (std::size_t i = 0; i < w.size(); ++i) w[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
  }
  planar::PlanarWignerState out = s0;
  out.values() = w;
  out.t = s0.t + t;
  return out;
}

localization::AnisotropySpec anisotropic_spec() {
  localization::AnisotropySpec s;
  s.amplitude = 1.2;
  s.a0 = UnitVector(0.3, -0.2, 0.9);
  s.b_eigenvalues = {0.0, 0.7, 2.0};
  s.b_axes = rotation_from_euler({0.3, 1.1, -0.7}).matrix();
  return s;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Every file in a and b identical; manifests compared without the wall clock.
bool same_outputs(const fs::path& a, const fs::path& b, std::string& why) {
  std::vector<std::string> names_a, names_b;
  for (const auto& e : fs::directory_iterator(a)) names_a.push_back(e.path().filename().string());
  for (const auto& e : fs::directory_iterator(b)) names_b.push_back(e.path().filename().string());
  std::sort(names_a.begin(), names_a.end());
  std::sort(names_b.begin(), names_b.end());
  if (names_a != names_b) {
    why = "file sets differ";
    return false;
  }
  for (const auto& name : names_a) {
    if (name.find("_manifest.json") != std::string::npos) {
      Json ma = Json::parse(slurp(a / name)), mb = Json::parse(slurp(b / name));
      ma.erase("wall_clock_seconds");
      mb.erase("wall_clock_seconds");
      if (ma != mb) {
        why = name;
        return false;
      }
    } else if (slurp(a / name) != slurp(b / name)) {
      why = name;
      return false;
    }
  }
  return true;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / "rotodiff_acceptance" / name;
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

// ---- criteria --------------------------------------------------------------

void criterion_1(Outcome& o) {
  const double d1 = 10.0;
  const auto g = planar::ground_state(512, 128);
  double worst_a = 0.0, worst_n = 0.0;
  for (double x : {0.1, 1.0, 10.0}) {
    const double t = x / (2 * d1);
    worst_a = std::max(worst_a, max_p_error(planar::evolve_analytic(g, planar_params(d1), t), x));
    worst_n = std::max(worst_n,
                       max_p_error(planar::evolve_numeric(g, planar_params(d1), t, 2.5e-4), x));
  }
  o.detail << "max|dp| analytic=" << worst_a << " numeric=" << worst_n;
  o.require(worst_a < 1e-8, "analytic < 1e-8");
  o.require(worst_n < 1e-6, "numeric < 1e-6");
}

void criterion_2(Outcome& o) {
  const auto g = planar::ground_state(512, 128);
  double worst_a = 0.0;
  for (double t : {0.005, 0.05, 0.5}) {
    const auto p = planar_params(10.0);
    const double e = planar::mean_energy(planar::evolve_analytic(g, p, t), p);
    worst_a = std::max(worst_a, std::abs(e / (p.d1 * t / p.inertia) - 1.0));
  }
  const auto p = planar_params(10.0, 5.0);
  const double t = 0.3;
  const double e = planar::mean_energy(planar::evolve_numeric(g, p, t, 2.5e-4), p);
  const double rel_n = std::abs(e / ((p.d1 + p.d2) * t / p.inertia) - 1.0);
  o.detail << "rel err analytic=" << worst_a << " numeric(D2>0)=" << rel_n;
  o.require(worst_a < 1e-8, "analytic < 1e-8");
  o.require(rel_n < 1e-6, "numeric < 1e-6");
}

void criterion_3(Outcome& o) {
  const double d1 = 10.0;
  const auto g = planar::ground_state(512, 128);
  const auto packets = planar::wigner_from_wavefunction(planar::packet_pair_wavefunction(512, 0.06), 128);
  double worst = 0.0;
  for (double f : {0.1, 0.5, 1.0}) {
    const double t = f * kPiD / d1;
    for (const auto* s : {&g, &packets}) {
      worst = std::max(worst, planar::l1_distance(planar::evolve_analytic(*s, planar_params(d1), t),
                                                  planar::evolve_numeric(*s, planar_params(d1), t, 2.5e-4)));
    }
  }
  const auto s0 = smooth_state(64, 16);
  const auto p = planar_params(0.5, 0.3);
  const double rk4 = planar::l1_distance(planar::evolve_numeric(s0, p, 0.5, 1e-3), rk4_oracle(s0, p, 0.5, 500));
  o.detail << "L1 analytic/numeric=" << worst << " numeric/RK4(64x33)=" << rk4;
  o.require(worst < 1e-6, "analytic vs numeric < 1e-6");
  o.require(rk4 < 1e-5, "numeric vs RK4 < 1e-5");
}

void criterion_4(Outcome& o) {
  const double d1 = 10.0, sigma = 0.06;
  const double ta = 3.75 * kPiD / d1, tb = 0.5 * kPiD / d1;
  const auto w0 = planar::wigner_from_wavefunction(planar::packet_pair_wavefunction(512, sigma), 128);
  // all four snapshots through the scenario runner, which aborts on truncation
  Json config = {{"kind", "planar-evolve"},
                 {"output_prefix", "fig1"},
                 {"planar",
                  {{"d1", d1},
                   {"initial", "packet-pair"},
                   {"sigma_alpha", sigma},
                   {"method", "analytic"},
                   {"times", {0.0, ta / 10, tb, ta}}}}};
  const auto manifest = cli::run_scenario(config, {fresh_dir("c4"), 1, std::nullopt});
  o.require(manifest["files"].size() >= 4, "snapshots emitted");

  const auto wb = planar::evolve_analytic(w0, planar_params(d1), tb);
  const double contrast = planar::coherence_contrast(wb, w0, sigma);
  double retention = 1.0;
  for (double c : {kPiD / 2, 3 * kPiD / 2}) {
    retention = std::min(retention, planar::window_mass(wb, c, kPiD / 2) / planar::window_mass(w0, c, kPiD / 2));
  }
  const double boundary = planar::evolve_analytic(w0, planar_params(d1), ta).boundary_mass();
  o.detail << "contrast(t_b)=" << contrast << " retention=" << retention
           << " boundary(t_a)=" << boundary;
  o.require(contrast < 0.1, "contrast < 0.1");
  o.require(retention > 0.9, "retention > 0.9");
}

void criterion_5(Outcome& o) {
  const double sigma = 0.06;
  const auto w0 = planar::wigner_from_wavefunction(planar::packet_pair_wavefunction(512, sigma), 128);
  const double fidelity = planar::revival_fidelity(planar::evolve_analytic(w0, planar_params(0.0), 2 * kPiD), w0);
  const double free_c = planar::coherence_contrast(planar::evolve_analytic(w0, planar_params(0.0), kPiD), w0, sigma);
  double worst_ratio = 0.0;
  for (double d1 : {1.0, 1.5, 3.0, 10.0}) {
    const double c = planar::coherence_contrast(planar::evolve_analytic(w0, planar_params(d1), kPiD), w0, sigma);
    worst_ratio = std::max(worst_ratio, c / free_c);
  }
  o.detail << "revival fidelity=" << fidelity << " free contrast(pi)=" << free_c
           << " max damped/free=" << worst_ratio;
  o.require(fidelity > 0.999, "fidelity > 0.999");
  o.require(worst_ratio <= 0.5, "reduction >= 50%");
}

void criterion_6(Outcome& o) {
  const auto spec = anisotropic_spec();
  InertiaTensor inertia;
  inertia.moments = {1.0, 2.0, 3.0};
  const auto params = classical::ClassicalParams::from_spec(inertia, spec, 1.0, 1e-3, 7);

  classical::EnsembleOptions opt;
  opt.n_traj = 10000;
  opt.t_final = 1.0;
  for (int i = 0; i <= 10; ++i) opt.sample_times.push_back(0.1 * i);
  opt.threads = std::max(1u, std::thread::hardware_concurrency());
  const auto samples = classical::sample_ensemble(params, opt, classical::haar_initial(Vec3::Zero()));
  const auto slope = classical::second_moment_slope(samples);
  const auto mom = classical::moments(samples);

  // independent Haar average of D(Omega), different stream
  const int n_mc = 100000;
  std::mt19937_64 rng(20240611);
  Mat3 sum = Mat3::Zero(), sum2 = Mat3::Zero();
  for (int i = 0; i < n_mc; ++i) {
    const Mat3 d = classical::diffusion_at(params, rotation_from_euler(sample_uniform_orientation(rng)));
    sum += d;
    sum2 += d.cwiseProduct(d);
  }
  const Mat3 mean = sum / n_mc;
  const Mat3 se = ((sum2 / n_mc - mean.cwiseProduct(mean)).cwiseMax(0.0) / (n_mc - 1)).cwiseSqrt();

  double worst_z = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      const double err = std::hypot(slope.standard_error(i, j), 2 * se(i, j));
      worst_z = std::max(worst_z, std::abs(slope.slope(i, j) - 2 * mean(i, j)) / err);
    }
  }
  double worst_drift = 0.0;
  for (std::size_t k = 1; k < mom.times.size(); ++k) {
    for (int i = 0; i < 3; ++i) {
      worst_drift = std::max(worst_drift, std::abs(mom.mean_j[k](i)) / mom.mean_j_se[k](i));
    }
  }
  o.detail << "max |slope - 2<D>|/SE=" << worst_z << " max |<J>|/SE=" << worst_drift
           << " tr(2<D>)=" << 2 * mean.trace();
  o.require(worst_z < 3.0, "slope within 3 SE");
  o.require(worst_drift < 3.0, "drift within 3 sigma");
}

void criterion_7(Outcome& o) {
  const auto s = anisotropic_spec();
  std::mt19937_64 rng(99);
  double min_f = 0.0, coincide = 0.0, invariance = 0.0, flip = 0.0;
  for (int n = 0; n < 10000; ++n) {
    const auto x = rotation_from_euler(sample_uniform_orientation(rng));
    const auto y = rotation_from_euler(sample_uniform_orientation(rng));
    const auto left = rotation_from_euler(sample_uniform_orientation(rng));
    const double f1 = localization::localization_rate_F1(s, x, y, 1.0);
    const double f2 = localization::localization_rate_F2(s, x, y, 1.0);
    min_f = std::min({min_f, f1, f2});
    coincide = std::max({coincide, std::abs(localization::localization_rate_F1(s, x, x, 1.0)),
                         std::abs(localization::localization_rate_F2(s, x, x, 1.0))});
    invariance = std::max(
        {invariance, std::abs(localization::localization_rate_F1(s, left * x, left * y, 1.0) - f1),
         std::abs(localization::localization_rate_F2(s, left * x, left * y, 1.0) - f2)});
    const Vec3 b3 = x * Vec3(s.b_axes.col(2));
    flip = std::max(flip, std::abs(localization::localization_rate_F2(s, x, axis_angle_rotation(b3, kPiD) * x, 1.0)));
  }
  o.detail << "min F=" << min_f << " coincidence=" << coincide << " invariance=" << invariance
           << " F2(pi about b3)=" << flip;
  o.require(min_f >= -1e-12, "nonnegative");
  o.require(coincide == 0.0, "zero at coincidence");
  o.require(invariance <= 1e-12, "invariance");
  o.require(flip <= 1e-12, "pi rotation about b3");
}

void criterion_8(Outcome& o) {
  std::vector<double> tvds;
  for (double x : {1.0, 10.0, 100.0}) {
    const auto w = planar::evolve_analytic(planar::ground_state(64, 256), planar_params(1.0), x / 2.0);
    const auto p = planar::momentum_distribution(w);
    double norm = 0.0;
    for (int m = -256; m <= 256; ++m) norm += std::exp(-0.5 * m * m / x);
    double tvd = 0.0;
    for (int m = -256; m <= 256; ++m) tvd += std::abs(p[m + 256] - std::exp(-0.5 * m * m / x) / norm);
    tvds.push_back(0.5 * tvd);
  }
  o.detail << "TVD at 1,10,100 = " << tvds[0] << ", " << tvds[1] << ", " << tvds[2];
  o.require(tvds[0] > tvds[1] && tvds[1] > tvds[2], "decreasing");
  o.require(tvds[2] < 0.01, "< 0.01 at 100");
}

void criterion_9(Outcome& o) {
  using namespace rotodiff::micro;
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  double trace = 0.0;
  for (int n = 0; n < 10000; ++n) {
    BornCoefficients f;
    for (auto& c : f.f) c = Complex(g(rng), g(rng));
    trace = std::max(trace, std::abs(assemble_B0(f).trace()));
  }

  double realness = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    PotentialExpansion pot;
    for (int ell = 0; ell <= 2; ++ell) {
      const double r0 = 0.5 + std::abs(g(rng));
      const RadialFunction radial{[=](double r) { return std::exp(-r / r0) * (1.0 + r); }, 60.0 * r0};
      pot.set(ell, 0, RadialProfile::scaled(radial, g(rng)));
      for (int m = 1; m <= ell; ++m) {
        const Complex c(g(rng), g(rng));
        pot.set(ell, m, RadialProfile::scaled(radial, c));
        pot.set(ell, -m, RadialProfile::scaled(radial, (m % 2 ? -1.0 : 1.0) * std::conj(c)));
      }
    }
    const auto f = born_coefficients(pot, 0.5 + std::abs(g(rng)), 0.3 + 2.5 * std::abs(std::sin(g(rng))), 1.0, 1.0);
    const auto a = assemble_A0(f);
    const auto b = assemble_B0(f);
    realness = std::max({realness, a.real().norm() / a.norm(), b.imag().norm() / b.norm()});
  }

  PhotonEnvironment env;
  env.V0 = 4.2e-21;
  env.E0 = 1e-3;
  env.k = 8e6;
  env.chi = {1.5, 1.5, 1.5};
  double iso = 0.0;
  for (double d : rayleigh_gans_diffusion(env)) iso = std::max(iso, std::abs(d));
  env.chi = {1.5, 1.7, 2.2};
  const auto base = rayleigh_gans_diffusion(env);
  auto twice_k = env;
  twice_k.k *= 2;
  auto twice_aniso = env;
  // chi_i - chi_j doubled for every pair
  for (int i = 0; i < 3; ++i) twice_aniso.chi[i] = 1.5 + 2 * (env.chi[i] - 1.5);
  const auto dk = rayleigh_gans_diffusion(twice_k);
  const auto da = rayleigh_gans_diffusion(twice_aniso);
  double scaling = 0.0;
  for (int i = 0; i < 3; ++i) {
    scaling = std::max({scaling, std::abs(dk[i] / base[i] - 8.0) / 8.0, std::abs(da[i] / base[i] - 4.0) / 4.0});
  }
  o.detail << "|tr B0|=" << trace << " realness=" << realness << " isotropic=" << iso
           << " scaling rel=" << scaling;
  o.require(trace <= 1e-14, "traceless");
  o.require(realness <= 1e-12, "A0 imaginary, B0 real");
  o.require(iso == 0.0, "isotropic zeros");
  o.require(scaling <= 4 * std::numeric_limits<double>::epsilon(), "scalings");
}

void criterion_10(Outcome& o) {
  const fs::path configs = fs::path(ROTODIFF_SOURCE_DIR) / "configs";
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(configs)) files.push_back(e.path());
  std::sort(files.begin(), files.end());

  bool identical = true;
  double run_total = 0.0, overhead_total = 0.0, worst_ratio = 0.0;
  std::string worst_name;
  for (const auto& path : files) {
    const std::string name = path.stem().string();
    const Json config = cli::load_config(path);
    const fs::path a = fresh_dir("c10_" + name + "_a"), b = fresh_dir("c10_" + name + "_b");
    // min over repeats on both sides, to keep scheduler noise out of the ratio
    auto start = Clock::now();
    const Json manifest = cli::run_scenario(config, {a, 1, std::nullopt});
    double run_s = seconds_since(start);
    start = Clock::now();
    cli::run_scenario(config, {b, 4, std::nullopt});
    run_s = std::min(run_s, seconds_since(start));
    std::string why;
    if (!same_outputs(a, b, why)) {
      identical = false;
      o.detail << " differs:" << name << "/" << why;
    }

    // the manifest's own work: hash every output and write the manifest
    std::vector<std::string> contents;
    for (const auto& f : manifest["files"]) contents.push_back(slurp(a / f["name"].get<std::string>()));
    Json redo;
    double over_s = 1e300;
    for (int rep = 0; rep < 3; ++rep) {
      const auto hs = Clock::now();
      redo = manifest;
      for (std::size_t i = 0; i < contents.size(); ++i) redo["files"][i]["sha256"] = cli::sha256_hex(contents[i]);
      std::ofstream(a / "overhead_probe.json", std::ios::binary) << redo.dump(2);
      over_s = std::min(over_s, seconds_since(hs));
    }
    if (redo != manifest) {
      identical = false;
      o.detail << " checksum mismatch:" << name;
    }
    run_total += run_s;
    overhead_total += over_s;
    if (over_s / run_s > worst_ratio) {
      worst_ratio = over_s / run_s;
      worst_name = name;
    }
  }

  // and through the executable, same seed twice
  const fs::path c1 = fresh_dir("c10_cli_1"), c2 = fresh_dir("c10_cli_2");
  const std::string cfg = (configs / "classical_anisotropic.json").string();
  for (const auto& d : {c1, c2}) {
    const std::string cmd = std::string(ROTODIFF_EXE) + " run " + cfg + " --seed 11 --out " + d.string();
    const int status = std::system(cmd.c_str());
    o.require(WIFEXITED(status) && WEXITSTATUS(status) == 0, "cli run exit 0");
  }
  std::string why;
  const bool cli_same = same_outputs(c1, c2, why);

  const double ratio = overhead_total / run_total;
  o.detail << "scenarios=" << files.size() << " identical=" << (identical && cli_same)
           << " overhead=" << 100 * ratio << "% of " << run_total << " s (largest single: "
           << 100 * worst_ratio << "% " << worst_name << ")";
  o.require(identical, "in-process runs identical");
  o.require(cli_same, "cli runs identical");
  o.require(ratio < 0.01, "overhead < 1%");
}

}  // namespace

int main() {
  struct Entry {
    int id;
    std::function<void(Outcome&)> run;
    double budget_s;  // 0: no runtime bound
  };
  const std::vector<Entry> entries = {
      {1, criterion_1, 10.0}, {2, criterion_2, 0.0},   {3, criterion_3, 60.0},
      {4, criterion_4, 0.0},  {5, criterion_5, 0.0},   {6, criterion_6, 120.0},
      {7, criterion_7, 0.0},  {8, criterion_8, 0.0},   {9, criterion_9, 0.0},
      {10, criterion_10, 0.0},
  };
  int failures = 0;
  for (const auto& e : entries) {
    Outcome o;
    o.detail.precision(3);
    const auto start = Clock::now();
    try {
      e.run(o);
    } catch (const std::exception& ex) {
      o.pass = false;
      o.detail << " [exception: " << ex.what() << "]";
    }
    const double elapsed = seconds_since(start);
    if (e.budget_s > 0.0 && elapsed >= e.budget_s) {
      o.pass = false;
      o.detail << " [failed: runtime budget " << e.budget_s << " s]";
    }
    failures += !o.pass;
    std::printf("criterion %d: %s (%.2f s) %s\n", e.id, o.pass ? "PASS" : "FAIL", elapsed,
                o.detail.str().c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
