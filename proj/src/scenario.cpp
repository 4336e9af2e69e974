#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <openssl/evp.h>

#include "rotodiff/classical.hpp"
#include "rotodiff/cli.hpp"
#include "rotodiff/localization.hpp"
#include "rotodiff/micro.hpp"
#include "rotodiff/planar.hpp"
#include "rotodiff/rotor.hpp"

namespace rotodiff::cli {

namespace fs = std::filesystem;

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

std::string format_alpha(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

std::string hex(const unsigned char* data, unsigned n) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(2 * n);
  for (unsigned i = 0; i < n; ++i) {
    out += digits[data[i] >> 4];
    out += digits[data[i] & 15];
  }
  return out;
}

// Collects every emitted file with its checksum; single writer.
class OutputSet {
 public:
  OutputSet(fs::path dir, std::string prefix) : dir_(std::move(dir)), prefix_(std::move(prefix)) {
    fs::create_directories(dir_);
  }

  std::string name(const std::string& suffix) const { return prefix_ + "_" + suffix; }

  void write(const std::string& suffix, const std::string& content) {
    const std::string file = name(suffix);
    std::ofstream out(dir_ / file, std::ios::binary | std::ios::trunc);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.close();
    if (!out) throw std::runtime_error("cannot write " + (dir_ / file).string());
    files_.push_back({file, sha256_hex(content), content.size()});
  }

  void write_json(const std::string& suffix, const Json& j) { write(suffix, j.dump(2) + "\n"); }

  const std::vector<EmittedFile>& files() const { return files_; }
  const fs::path& dir() const { return dir_; }

 private:
  fs::path dir_;
  std::string prefix_;
  std::vector<EmittedFile> files_;
};

Vec3 vec3(const Json& j) { return Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>()); }

// rows of j become the columns of the matrix
Mat3 columns(const Json& j) {
  Mat3 m;
  for (int c = 0; c < 3; ++c) m.col(c) = vec3(j[c]);
  return m;
}

Mat3 rows(const Json& j) {
  Mat3 m;
  for (int r = 0; r < 3; ++r) m.row(r) = vec3(j[r]).transpose();
  return m;
}

Json to_json(const Mat3& m) {
  Json out = Json::array();
  for (int r = 0; r < 3; ++r) out.push_back({m(r, 0), m(r, 1), m(r, 2)});
  return out;
}

EulerAngles euler(const Json& j, const std::string& ptr) {
  try {
    return EulerAngles(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
  } catch (const std::invalid_argument& e) {
    throw ValidationError(ptr, ptr + ": " + e.what());
  }
}

localization::AnisotropySpec anisotropy(const Json& j, const std::string& ptr) {
  localization::AnisotropySpec spec;
  try {
    spec.amplitude = j.at("amplitude").get<double>();
    spec.a0 = UnitVector(vec3(j.at("a0")));
    const auto& b = j.at("b_eigenvalues");
    spec.b_eigenvalues = {b[0].get<double>(), b[1].get<double>(), b[2].get<double>()};
    spec.b_axes = columns(j.at("b_axes"));
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw ValidationError(ptr, ptr + ": " + e.what());
  }
  return spec;
}

void run_classical(const Json& c, std::uint64_t seed, const RunOptions& options,
                   OutputSet& out) {
  const std::string ptr = "/classical";
  classical::ClassicalParams params;
  const auto& moments = c.at("inertia_moments");
  params.inertia.moments = {moments[0].get<double>(), moments[1].get<double>(),
                            moments[2].get<double>()};
  params.inertia.axes = columns(c.at("inertia_axes"));
  params.dt = c.at("dt").get<double>();
  params.seed = seed;
  if (c.contains("body_diffusion")) {
    params.body_diffusion = rows(c.at("body_diffusion"));
  } else {
    params.body_diffusion = localization::body_frame_diffusion(
        anisotropy(c.at("anisotropy"), ptr + "/anisotropy"), c.at("hbar").get<double>());
  }
  try {
    params.validate();
  } catch (const std::invalid_argument& e) {
    throw ValidationError(ptr, ptr + ": " + e.what());
  }

  classical::EnsembleOptions opts;
  opts.n_traj = c.at("n_traj").get<std::size_t>();
  opts.t_final = c.at("t_final").get<double>();
  opts.threads = std::max(1u, options.threads);
  const auto n_samples = c.at("n_samples").get<std::size_t>();
  for (std::size_t i = 0; i < n_samples; ++i) {
    opts.sample_times.push_back(opts.t_final * static_cast<double>(i) /
                                static_cast<double>(n_samples - 1));
  }
  const Vec3 j0 = vec3(c.at("initial_j"));
  const auto& orientation = c.at("initial_orientation");
  const auto initial =
      orientation.is_string()
          ? classical::haar_initial(j0)
          : classical::delta_initial(
                rotation_from_euler(euler(orientation, ptr + "/initial_orientation")), j0);

  const auto samples = classical::sample_ensemble(params, opts, initial);
  const auto series = classical::moments(samples);

  std::string csv = "t";
  const char* axes = "xyz";
  for (const char* tag : {"mean_j", "se_mean_j"}) {
    for (int a = 0; a < 3; ++a) csv += std::string(",") + tag + axes[a];
  }
  for (const char* tag : {"jj_", "se_jj_"}) {
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) csv += std::string(",") + tag + axes[a] + axes[b];
    }
  }
  csv += "\n";
  for (std::size_t s = 0; s < series.times.size(); ++s) {
    csv += format_double(series.times[s]);
    for (const Vec3* v : {&series.mean_j[s], &series.mean_j_se[s]}) {
      for (int a = 0; a < 3; ++a) csv += "," + format_double((*v)[a]);
    }
    for (const Mat3* m : {&series.second_moment[s], &series.second_moment_se[s]}) {
      for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) csv += "," + format_double((*m)(a, b));
      }
    }
    csv += "\n";
  }
  out.write("moments.csv", csv);

  Json summary;
  summary["n_traj"] = samples.n_traj;
  summary["sample_times"] = samples.times;
  summary["body_diffusion"] = to_json(params.body_diffusion);
  summary["coarse_steps"] = samples.coarse_steps;
  if (samples.times.back() > samples.times.front()) {
    const auto slope = classical::second_moment_slope(samples);
    summary["second_moment_slope"] = to_json(slope.slope);
    summary["second_moment_slope_se"] = to_json(slope.standard_error);
  }
  out.write_json("summary.json", summary);
}

void run_planar(const Json& c, OutputSet& out) {
  const std::string ptr = "/planar";
  planar::PlanarParams params;
  params.inertia = c.at("inertia").get<double>();
  params.hbar = c.at("hbar").get<double>();
  params.d1 = c.at("d1").get<double>();
  params.d2 = c.at("d2").get<double>();
  const int n_alpha = c.at("n_alpha").get<int>();
  const int m_max = c.at("m_max").get<int>();
  const bool analytic = c.at("method").get<std::string>() == "analytic";
  const bool packets = c.at("initial").get<std::string>() == "packet-pair";
  const double sigma = c.at("sigma_alpha").get<double>();
  const double dt = c.at("dt").get<double>();
  const auto times = c.at("times").get<std::vector<double>>();
  if (!std::is_sorted(times.begin(), times.end())) {
    throw ValidationError(ptr + "/times", ptr + "/times: must be ascending");
  }
  if (analytic && params.d2 != 0.0) {
    throw ValidationError(ptr + "/method", ptr + "/method: analytic propagation requires d2 = 0");
  }

  const planar::PlanarWignerState w0 =
      packets ? planar::wigner_from_wavefunction(
                    planar::packet_pair_wavefunction(n_alpha, sigma), m_max)
              : planar::ground_state(n_alpha, m_max);
  planar::PlanarParams free_params = params;
  free_params.d1 = free_params.d2 = 0.0;

  Json snapshots = Json::array();
  std::string p_csv = "t,m,p\n";
  planar::PlanarWignerState current = w0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double t = times[i];
    if (analytic) {
      current = planar::evolve_analytic(w0, params, t);
    } else if (t > current.t) {
      current = planar::evolve_numeric(current, params, t - current.t, dt);
      current.t = t;
    }
    const std::string suffix = "w_" + std::to_string(i) + ".csv";
    out.write(suffix, wigner_csv(current));

    const auto p = planar::momentum_distribution(current);
    for (int m = -m_max; m <= m_max; ++m) {
      p_csv += format_double(t) + "," + std::to_string(m) + "," + format_double(p[m + m_max]) + "\n";
    }
    Json snap;
    snap["index"] = i;
    snap["t"] = t;
    snap["file"] = out.name(suffix);
    snap["total"] = current.total();
    snap["mean_energy"] = planar::mean_energy(current, params);
    snap["boundary_mass"] = current.boundary_mass();
    if (packets) {
      const auto free = planar::evolve_analytic(w0, free_params, t);
      const double half = kPi / 2.0;
      double retention = 1.0, overlap = 1.0;
      for (double center : {kPi / 2.0, 3.0 * kPi / 2.0}) {
        retention = std::min(retention, planar::window_mass(current, center, half) /
                                            planar::window_mass(w0, center, half));
        overlap = std::min(overlap, planar::window_overlap(current, free, center, half));
      }
      snap["coherence_contrast"] = planar::coherence_contrast(current, w0, sigma);
      snap["packet_retention"] = retention;
      snap["free_marginal_overlap"] = overlap;
    }
    snapshots.push_back(snap);
  }
  out.write("p.csv", p_csv);
  out.write_json("summary.json", Json{{"snapshots", snapshots}});
}

void run_rates(const Json& c, OutputSet& out) {
  const double hbar = c.at("hbar").get<double>();
  const auto spec = anisotropy(c.at("anisotropy"), "/rates/anisotropy");
  const auto dc = localization::diffusion_constants(spec, hbar);
  Json pairs = Json::array();
  const auto& list = c.at("pairs");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string base = "/rates/pairs/" + std::to_string(i);
    const auto omega = euler(list[i].at("omega"), base + "/omega");
    const auto omega_prime = euler(list[i].at("omega_prime"), base + "/omega_prime");
    pairs.push_back({{"omega", list[i].at("omega")},
                     {"omega_prime", list[i].at("omega_prime")},
                     {"f1", localization::localization_rate_F1(spec, omega, omega_prime, hbar)},
                     {"f2", localization::localization_rate_F2(spec, omega, omega_prime, hbar)}});
  }
  Json result;
  result["d1"] = dc.d1;
  result["d2"] = dc.d2;
  result["f2_weights"] = dc.f2_weights();
  result["body_diffusion"] = to_json(localization::body_frame_diffusion(spec, hbar));
  result["pairs"] = pairs;
  out.write_json("rates.json", result);
}

void run_micro_gas(const Json& c, OutputSet& out) {
  const auto& pot = c.at("potential");
  const double v0 = pot.at("v0").get<double>();
  const double r0 = pot.at("r0").get<double>();
  const bool gaussian = pot.at("shape").get<std::string>() == "gaussian";
  micro::RadialFunction v;
  v.r_cut = pot.contains("r_cut") ? pot.at("r_cut").get<double>() : 40.0 * r0;
  if (gaussian) {
    v.v = [v0, r0](double r) { return v0 * std::exp(-r * r / (2.0 * r0 * r0)); };
  } else {
    v.v = [v0, r0](double r) { return v0 * std::exp(-r / r0); };
  }
  const auto& g = c.at("gas");
  micro::GasParams gas;
  gas.n_g = g.at("n_g").get<double>();
  gas.m_gas = g.at("m_gas").get<double>();
  gas.T = g.at("T").get<double>();
  gas.hbar = g.at("hbar").get<double>();
  gas.k_B = g.at("k_B").get<double>();
  micro::QuadratureSpec quad;
  quad.rel_tol = c.at("rel_tol").get<double>();
  const double a1 = c.at("a1").get<double>();
  const double a2 = c.at("a2").get<double>();
  const auto d = micro::thermal_diffusion_constants(v, a1, a2, gas, quad);
  out.write_json("rates.json", Json{{"d1", d.d1}, {"d2", d.d2}});
}

void run_micro_photon(const Json& c, OutputSet& out) {
  micro::PhotonEnvironment env;
  env.V0 = c.at("V0").get<double>();
  env.E0 = c.at("E0").get<double>();
  env.k = c.at("k").get<double>();
  const auto& chi = c.at("chi");
  env.chi = {chi[0].get<double>(), chi[1].get<double>(), chi[2].get<double>()};
  env.epsilon0 = c.at("epsilon0").get<double>();
  env.hbar = c.at("hbar").get<double>();
  out.write_json("rates.json", Json{{"d2", micro::rayleigh_gans_diffusion(env)}});
}

}  // namespace

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256: digest failed");
  }
  return hex(digest, length);
}

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return sha256_hex(buf.str());
}

std::string wigner_csv(const planar::PlanarWignerState& state) {
  std::string out = "alpha,m,w\n";
  out.reserve(out.size() + static_cast<std::size_t>(state.rows()) * state.n_alpha() * 40);
  std::vector<std::string> alphas;
  for (int j = 0; j < state.n_alpha(); ++j) alphas.push_back(format_alpha(state.alpha(j)));
  for (int m = -state.m_max(); m <= state.m_max(); ++m) {
    const std::string m_text = std::to_string(m);
    const auto row = state.row(m);
    for (int j = 0; j < state.n_alpha(); ++j) {
      out += alphas[j];
      out += ',';
      out += m_text;
      out += ',';
      out += format_double(row[j]);
      out += '\n';
    }
  }
  return out;
}

void emit_wigner_csv(const planar::PlanarWignerState& state, const fs::path& path) {
  const std::string text = wigner_csv(state);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.close();
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

Json load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("", "cannot open config file " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ValidationError("", std::string("config is not valid JSON: ") + e.what());
  }
}

Json error_json(const std::string& kind, const std::string& message) {
  return Json{{"error", kind}, {"message", message}};
}

Json run_scenario(const Json& config, const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  Json raw = config;
  if (options.seed && raw.is_object()) raw["seed"] = *options.seed;
  const Json canonical = canonicalize(raw);

  OutputSet out(options.out_dir, canonical.at("output_prefix").get<std::string>());
  const std::string kind = canonical.at("kind").get<std::string>();
  const auto seed = canonical.at("seed").get<std::uint64_t>();
  if (kind == "classical-ensemble") {
    run_classical(canonical.at("classical"), seed, options, out);
  } else if (kind == "planar-evolve") {
    run_planar(canonical.at("planar"), out);
  } else if (kind == "rates") {
    run_rates(canonical.at("rates"), out);
  } else if (kind == "micro-gas") {
    run_micro_gas(canonical.at("micro_gas"), out);
  } else {
    run_micro_photon(canonical.at("micro_photon"), out);
  }

  Json files = Json::array();
  for (const auto& f : out.files()) {
    files.push_back({{"name", f.name}, {"sha256", f.sha256}, {"bytes", f.bytes}});
  }
  Json manifest;
  manifest["artifact"] = "rotodiff";
  manifest["version"] = kVersion;
  manifest["config"] = canonical;
  manifest["files"] = files;
  manifest["wall_clock_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const std::string name = out.name("manifest.json");
  std::ofstream mf(out.dir() / name, std::ios::binary | std::ios::trunc);
  mf << manifest.dump(2) << "\n";
  mf.close();
  if (!mf) throw std::runtime_error("cannot write " + (out.dir() / name).string());
  return manifest;
}

}  // namespace rotodiff::cli
