#include "rotodiff/planar.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/FFT>

#include "rotodiff/error.hpp"
#include "rotodiff/special.hpp"

namespace rotodiff::planar {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

int wrap_index(int k, int n) { return ((k % n) + n) % n; }

double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

void check_health(const PlanarWignerState& state, const char* where) {
  const double edge = state.boundary_mass();
  if (!(edge <= kBoundaryMassLimit)) {
    throw TruncationError(std::string(where) +
                              ": grid too small, mass at |m| = M is " +
                              std::to_string(edge),
                          edge);
  }
}

// Row-wise transform between w(alpha_j, m) and the non-negative Fourier modes
// w_k(m), k = 0..n/2, stored mode-major: [k][m + M].
class ModeTransform {
 public:
  explicit ModeTransform(int n_alpha, int rows)
      : n_(n_alpha), rows_(rows), time_(n_alpha), freq_(n_alpha) {}

  int modes() const { return n_ / 2 + 1; }

  std::vector<Complex> forward(const PlanarWignerState& state) {
    std::vector<Complex> out(static_cast<std::size_t>(modes()) * rows_);
    const double inv_n = 1.0 / n_;
    for (int r = 0; r < rows_; ++r) {
      const int m = r - state.m_max();
      const auto row = state.row(m);
      for (int j = 0; j < n_; ++j) time_[j] = Complex(row[j], 0.0);
      fft_.fwd(freq_, time_);
      for (int k = 0; k < modes(); ++k) out[k * rows_ + r] = freq_[k] * inv_n;
    }
    return out;
  }

  void inverse(const std::vector<Complex>& in, PlanarWignerState& state) {
    const int half = n_ / 2;
    for (int r = 0; r < rows_; ++r) {
      const int m = r - state.m_max();
      freq_[0] = Complex(in[r].real(), 0.0) * static_cast<double>(n_);
      for (int k = 1; k < half; ++k) {
        const Complex c = in[k * rows_ + r] * static_cast<double>(n_);
        freq_[k] = c;
        freq_[n_ - k] = std::conj(c);
      }
      freq_[half] = Complex(in[half * rows_ + r].real(), 0.0) * static_cast<double>(n_);
      fft_.inv(time_, freq_);
      auto row = state.row(m);
      for (int j = 0; j < n_; ++j) row[j] = time_[j].real();
    }
  }

 private:
  int n_;
  int rows_;
  Eigen::FFT<double> fft_;
  std::vector<Complex> time_;
  std::vector<Complex> freq_;
};

// Multiply mode k, row m by exp(-i k hbar m dt / I).
std::vector<Complex> shear_phases(int modes, int m_max, double rate_dt) {
  const int rows = 2 * m_max + 1;
  std::vector<Complex> out(static_cast<std::size_t>(modes) * rows);
  for (int k = 0; k < modes; ++k) {
    for (int r = 0; r < rows; ++r) {
      const double phase = -static_cast<double>(k) * (r - m_max) * rate_dt;
      out[k * rows + r] = std::polar(1.0, phase);
    }
  }
  return out;
}

void apply_phases(std::vector<Complex>& modes, const std::vector<Complex>& phases) {
  for (std::size_t i = 0; i < modes.size(); ++i) modes[i] *= phases[i];
}

// Symmetric kernel (index |dm|) convolved along m for every mode; values
// beyond |m| = M are treated as zero.
void convolve_rows(std::vector<Complex>& modes, int n_modes, int rows,
                   const std::vector<double>& kernel, std::vector<Complex>& scratch) {
  const int reach = static_cast<int>(kernel.size()) - 1;
  scratch.resize(static_cast<std::size_t>(rows));
  for (int k = 0; k < n_modes; ++k) {
    Complex* col = modes.data() + static_cast<std::size_t>(k) * rows;
    for (int r = 0; r < rows; ++r) {
      Complex acc = kernel[0] * col[r];
      const int lo = std::max(0, r - reach);
      const int hi = std::min(rows - 1, r + reach);
      for (int s = lo; s < r; ++s) acc += kernel[r - s] * col[s];
      for (int s = r + 1; s <= hi; ++s) acc += kernel[s - r] * col[s];
      scratch[r] = acc;
    }
    std::copy(scratch.begin(), scratch.end(), col);
  }
}

// One-sided D1 kernel convolved with the stride-2 D2 kernel.
std::vector<double> diffusion_kernel(const PlanarParams& params, double dt) {
  const double h2 = params.hbar * params.hbar;
  const auto k1 = lattice_heat_kernel(params.d1 * dt / h2);
  const auto k2_half = lattice_heat_kernel(params.d2 * dt / (4.0 * h2));
  if (k2_half.size() == 1) return k1;

  const int r1 = static_cast<int>(k1.size()) - 1;
  const int r2 = 2 * (static_cast<int>(k2_half.size()) - 1);
  auto two_sided = [](const std::vector<double>& one, int stride) {
    const int reach = stride * (static_cast<int>(one.size()) - 1);
    std::vector<double> full(2 * reach + 1, 0.0);
    for (int i = 0; i < static_cast<int>(one.size()); ++i) {
      full[reach + stride * i] = one[i];
      full[reach - stride * i] = one[i];
    }
    return full;
  };
  const auto f1 = two_sided(k1, 1);
  const auto f2 = two_sided(k2_half, 2);
  const int reach = r1 + r2;
  std::vector<double> out(reach + 1, 0.0);
  for (int a = -r1; a <= r1; ++a) {
    for (int b = -r2; b <= r2; ++b) {
      const int d = a + b;
      if (d >= 0) out[d] += f1[a + r1] * f2[b + r2];
    }
  }
  return out;
}

}  // namespace

void PlanarParams::validate() const {
  if (!(inertia > 0.0) || !std::isfinite(inertia)) {
    throw std::invalid_argument("PlanarParams: inertia must be positive");
  }
  if (!(hbar > 0.0) || !std::isfinite(hbar)) {
    throw std::invalid_argument("PlanarParams: hbar must be positive");
  }
  if (!(d1 >= 0.0) || !(d2 >= 0.0) || !std::isfinite(d1) || !std::isfinite(d2)) {
    throw std::invalid_argument("PlanarParams: D1 and D2 must be >= 0");
  }
}

PlanarWignerState::PlanarWignerState(int n_alpha, int m_max)
    : n_alpha_(n_alpha), m_max_(m_max) {
  if (!is_power_of_two(n_alpha) || n_alpha < 4) {
    throw std::invalid_argument("PlanarWignerState: n_alpha must be a power of two >= 4");
  }
  if (m_max < 1) throw std::invalid_argument("PlanarWignerState: m_max must be >= 1");
  values_.assign(static_cast<std::size_t>(rows()) * n_alpha, 0.0);
}

double PlanarWignerState::d_alpha() const { return kTwoPi / n_alpha_; }

double PlanarWignerState::alpha(int j) const { return kTwoPi * j / n_alpha_; }

std::span<double> PlanarWignerState::row(int m) {
  return {values_.data() + index(m, 0), static_cast<std::size_t>(n_alpha_)};
}

std::span<const double> PlanarWignerState::row(int m) const {
  return {values_.data() + index(m, 0), static_cast<std::size_t>(n_alpha_)};
}

double PlanarWignerState::total() const {
  double sum = 0.0;
  for (double v : values_) sum += v;
  return sum * d_alpha();
}

double PlanarWignerState::boundary_mass() const {
  double sum = 0.0;
  for (int j = 0; j < n_alpha_; ++j) {
    sum += std::abs(at(-m_max_, j)) + std::abs(at(m_max_, j));
  }
  return sum * d_alpha();
}

PlanarWignerState ground_state(int n_alpha, int m_max) {
  PlanarWignerState s(n_alpha, m_max);
  for (double& v : s.row(0)) v = 1.0 / kTwoPi;
  return s;
}

std::vector<Complex> packet_pair_wavefunction(int n_alpha, double sigma_alpha) {
  if (!(sigma_alpha > 0.0)) {
    throw std::invalid_argument("packet_pair_wavefunction: sigma_alpha must be positive");
  }
  std::vector<Complex> psi(static_cast<std::size_t>(n_alpha));
  double norm = 0.0;
  for (int j = 0; j < n_alpha; ++j) {
    const double c = std::cos(kTwoPi * j / n_alpha);
    const double v = std::exp(-c * c / (4.0 * sigma_alpha * sigma_alpha));
    psi[j] = v;
    norm += v * v;
  }
  const double scale = 1.0 / std::sqrt(norm * kTwoPi / n_alpha);
  for (auto& v : psi) v *= scale;
  return psi;
}

PlanarWignerState wigner_from_wavefunction(std::span<const Complex> psi, int m_max) {
  const int n = static_cast<int>(psi.size());
  PlanarWignerState out(n, m_max);
  const double da = kTwoPi / n;

  double norm = 0.0;
  for (const auto& v : psi) norm += std::norm(v);
  norm *= da;
  if (std::abs(norm - 1.0) > 1e-9) {
    throw std::invalid_argument("wigner_from_wavefunction: psi is not normalized (norm " +
                                std::to_string(norm) + ")");
  }

  // Momentum amplitudes c_k, psi(alpha) = sum_k c_k e^{ik alpha} / sqrt(2pi),
  // for k in [-n/2, n/2).
  Eigen::FFT<double> fft;
  std::vector<Complex> time(psi.begin(), psi.end()), freq(n);
  fft.fwd(freq, time);
  const int k_lo = -n / 2, k_hi = n / 2 - 1;
  std::vector<Complex> c(n);
  const double scale = std::sqrt(kTwoPi) / n;
  double outside = 0.0;
  for (int k = k_lo; k <= k_hi; ++k) {
    c[k - k_lo] = freq[wrap_index(k, n)] * scale;
    if (std::abs(k) > m_max) outside += std::norm(c[k - k_lo]);
  }
  if (outside > 1e-8) {
    throw TruncationError(
        "wigner_from_wavefunction: momentum probability beyond |m| = M is " +
            std::to_string(outside),
        outside);
  }
  auto amp = [&](int k) -> Complex {
    return (k < k_lo || k > k_hi) ? Complex(0.0) : c[k - k_lo];
  };

  const int rows = out.rows();
  std::vector<Complex> grid(static_cast<std::size_t>(rows) * n, Complex(0.0));

  // k + k' = 2m: (1/2pi) sum_s c_{m+s} c*_{m-s} e^{2 i s alpha}
  std::vector<Complex> coeff(n);
  for (int r = 0; r < rows; ++r) {
    const int m = r - m_max;
    std::fill(coeff.begin(), coeff.end(), Complex(0.0));
    bool any = false;
    for (int s = -n; s <= n; ++s) {
      const Complex a = amp(m + s), b = amp(m - s);
      if (a == Complex(0.0) || b == Complex(0.0)) continue;
      coeff[wrap_index(2 * s, n)] += a * std::conj(b);
      any = true;
    }
    if (!any) continue;
    fft.inv(time, coeff);
    for (int j = 0; j < n; ++j) grid[r * n + j] += time[j] * (n / kTwoPi);
  }

  // Odd k + k' = S: weight (-1)^{(2m-S-1)/2} / (pi^2 (2m - S)), which is the
  // integral of e^{i(m - S/2) alpha'} over [-pi, pi) times 1/(2pi)^2.
  for (int sum = 2 * k_lo + 1; sum <= 2 * k_hi - 1; sum += 2) {
    std::fill(coeff.begin(), coeff.end(), Complex(0.0));
    double largest = 0.0;
    for (int k = std::max(k_lo, sum - k_hi); k <= std::min(k_hi, sum - k_lo); ++k) {
      const Complex prod = amp(k) * std::conj(amp(sum - k));
      coeff[wrap_index(2 * k - sum, n)] += prod;
      largest = std::max(largest, std::abs(prod));
    }
    if (largest < 1e-18) continue;
    fft.inv(time, coeff);
    for (int r = 0; r < rows; ++r) {
      const int m = r - m_max;
      const int odd = 2 * m - sum;
      const int parity = (((odd - 1) / 2) % 2 + 2) % 2;
      const double weight = (parity == 0 ? 1.0 : -1.0) / (kPi * kPi * odd) * n;
      for (int j = 0; j < n; ++j) grid[r * n + j] += weight * time[j];
    }
  }

  double residue = 0.0;
  for (const auto& v : grid) residue = std::max(residue, std::abs(v.imag()));
  if (residue > 1e-8) {
    throw NumericalError("wigner_from_wavefunction: imaginary residue " +
                             std::to_string(residue),
                         residue);
  }
  auto& values = out.values();
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = grid[i].real();
  const double total = out.total();
  for (double& v : values) v /= total;
  return out;
}

std::vector<double> lattice_heat_kernel(double tau) {
  if (!(tau >= 0.0)) throw std::invalid_argument("lattice_heat_kernel: tau < 0");
  if (tau == 0.0) return {1.0};
  const double x = 2.0 * tau;
  int reach = 16 + static_cast<int>(x + 12.0 * std::sqrt(x));
  auto seq = special::scaled_bessel_sequence(reach, x);
  int cut = reach;
  while (cut > 0 && seq[cut] < 1e-16) --cut;
  seq.resize(static_cast<std::size_t>(cut) + 1);
  return seq;
}

PlanarWignerState evolve_numeric(const PlanarWignerState& state,
                                 const PlanarParams& params, double t_final,
                                 double dt) {
  params.validate();
  if (!(dt > 0.0)) throw std::invalid_argument("evolve_numeric: dt must be positive");
  if (!(t_final >= 0.0)) throw std::invalid_argument("evolve_numeric: t_final < 0");
  check_health(state, "evolve_numeric");
  PlanarWignerState out = state;
  if (t_final == 0.0) return out;

  const auto n_steps = static_cast<long>(std::ceil(t_final / dt - 1e-9));
  const double h = t_final / static_cast<double>(n_steps);
  const int rows = state.rows();
  ModeTransform transform(state.n_alpha(), rows);
  const int n_modes = transform.modes();

  const double rate = params.hbar / params.inertia;
  const auto half = shear_phases(n_modes, state.m_max(), rate * 0.5 * h);
  const auto full = shear_phases(n_modes, state.m_max(), rate * h);
  const auto kernel = diffusion_kernel(params, h);
  const bool diffusive = kernel.size() > 1;

  auto modes = transform.forward(state);
  std::vector<Complex> scratch;
  apply_phases(modes, half);
  for (long s = 0; s < n_steps; ++s) {
    if (diffusive) convolve_rows(modes, n_modes, rows, kernel, scratch);
    apply_phases(modes, s + 1 < n_steps ? full : half);
  }
  transform.inverse(modes, out);
  out.t = state.t + t_final;
  check_health(out, "evolve_numeric");
  return out;
}

PlanarKernel::PlanarKernel(const PlanarParams& params, double t, int n_alpha)
    : params_(params), t_(t), n_alpha_(n_alpha), ell_max_(0) {
  params.validate();
  if (params.d2 != 0.0) {
    throw std::invalid_argument("PlanarKernel: closed form requires D2 = 0");
  }
  if (!(t >= 0.0)) throw std::invalid_argument("PlanarKernel: t must be >= 0");
  if (!is_power_of_two(n_alpha)) {
    throw std::invalid_argument("PlanarKernel: n_alpha must be a power of two");
  }
  const double tau = params.d1 * t / (params.hbar * params.hbar);
  const double x0 = 2.0 * tau;
  // The k = 0 mode carries the widest lag distribution.
  const int reach = 16 + static_cast<int>(x0 + 12.0 * std::sqrt(x0));
  {
    const auto seq = special::scaled_bessel_sequence(reach, x0);
    int cut = reach;
    while (cut > 0 && seq[cut] < 1e-17) --cut;
    ell_max_ = cut;
  }
  const int half = n_alpha / 2;
  const int width = 2 * ell_max_ + 1;
  modes_.assign(static_cast<std::size_t>(n_alpha + 1) * width, Complex(0.0));
  const double theta_per_k = params.hbar * t / params.inertia;
  for (int k = 0; k <= half; ++k) {
    const double theta = theta_per_k * k;
    const double x = x0 * sinc(0.5 * theta);
    const auto seq = special::scaled_bessel_sequence(ell_max_, x);
    const double damp = std::exp(std::abs(x) - x0);
    for (int ell = -ell_max_; ell <= ell_max_; ++ell) {
      const double bessel = damp * seq[std::abs(ell)];  // I_{-l} = I_l
      const Complex value = bessel * std::polar(1.0, 0.5 * ell * theta);
      modes_[(k + half) * width + (ell + ell_max_)] = value;
      modes_[(half - k) * width + (ell + ell_max_)] = std::conj(value);
    }
  }
}

Complex PlanarKernel::mode(int k, int ell) const {
  const int half = n_alpha_ / 2;
  if (std::abs(k) > half) throw std::out_of_range("PlanarKernel::mode: k beyond grid");
  if (std::abs(ell) > ell_max_) return Complex(0.0);
  return modes_[(k + half) * (2 * ell_max_ + 1) + (ell + ell_max_)];
}

std::vector<double> PlanarKernel::table(int ell) const {
  const int n = n_alpha_;
  std::vector<Complex> freq(n), time(n);
  for (int k = -n / 2 + 1; k < n / 2; ++k) freq[wrap_index(k, n)] = mode(k, ell);
  freq[n / 2] = Complex(mode(n / 2, ell).real(), 0.0);
  Eigen::FFT<double> fft;
  fft.inv(time, freq);
  std::vector<double> out(n);
  for (int j = 0; j < n; ++j) out[j] = time[j].real() * n / kTwoPi;
  return out;
}

double PlanarKernel::normalization() const {
  double sum = 0.0;
  for (int ell = -ell_max_; ell <= ell_max_; ++ell) sum += mode(0, ell).real();
  return sum;
}

PlanarWignerState PlanarKernel::apply(const PlanarWignerState& state0) const {
  if (state0.n_alpha() != n_alpha_) {
    throw std::invalid_argument("PlanarKernel::apply: grid size mismatch");
  }
  check_health(state0, "evolve_analytic");
  const int rows = state0.rows();
  const int m_max = state0.m_max();
  ModeTransform transform(n_alpha_, rows);
  const int n_modes = transform.modes();
  auto modes = transform.forward(state0);
  std::vector<Complex> shifted(static_cast<std::size_t>(rows));
  const double rate_t = params_.hbar * t_ / params_.inertia;
  for (int k = 0; k < n_modes; ++k) {
    Complex* col = modes.data() + static_cast<std::size_t>(k) * rows;
    for (int r = 0; r < rows; ++r) {
      Complex acc(0.0);
      const int lo = std::max(-ell_max_, r - (rows - 1));
      const int hi = std::min(ell_max_, r);
      for (int ell = lo; ell <= hi; ++ell) acc += mode(k, ell) * col[r - ell];
      shifted[r] = acc * std::polar(1.0, -static_cast<double>(k) * (r - m_max) * rate_t);
    }
    std::copy(shifted.begin(), shifted.end(), col);
  }
  PlanarWignerState out = state0;
  transform.inverse(modes, out);
  out.t = state0.t + t_;
  check_health(out, "evolve_analytic");
  return out;
}

double kernel_T(double alpha_prime, int ell, double t, const PlanarParams& params,
                int k_max) {
  params.validate();
  if (params.d2 != 0.0) throw std::invalid_argument("kernel_T: requires D2 = 0");
  const double tau = params.d1 * t / (params.hbar * params.hbar);
  const double x0 = 2.0 * tau;
  const int l = std::abs(ell);
  auto bessel = [&](double x) {
    // exp(-2 tau) I_l(x), |x| <= 2 tau
    return std::exp(std::abs(x) - x0) * special::modified_bessel_I_scaled(l, x);
  };
  const double shift = ell * params.hbar * t / (2.0 * params.inertia);
  const double theta_per_k = params.hbar * t / params.inertia;
  double sum = bessel(x0);
  const bool adaptive = k_max <= 0;
  const int limit = adaptive ? 4096 : k_max;
  int quiet = 0;
  for (int k = 1; k <= limit; ++k) {
    const double term =
        2.0 * std::cos(k * (alpha_prime + shift)) * bessel(x0 * sinc(0.5 * theta_per_k * k));
    sum += term;
    if (adaptive) {
      quiet = std::abs(term) < 1e-14 ? quiet + 1 : 0;
      if (quiet >= 3) break;
    }
  }
  return sum / kTwoPi;
}

PlanarWignerState evolve_analytic(const PlanarWignerState& state0,
                                  const PlanarParams& params, double t) {
  return PlanarKernel(params, t, state0.n_alpha()).apply(state0);
}

std::vector<double> momentum_distribution(const PlanarWignerState& state) {
  std::vector<double> p(static_cast<std::size_t>(state.rows()), 0.0);
  for (int m = -state.m_max(); m <= state.m_max(); ++m) {
    double sum = 0.0;
    for (double v : state.row(m)) sum += v;
    p[m + state.m_max()] = sum * state.d_alpha();
  }
  return p;
}

double mean_energy(const PlanarWignerState& state, const PlanarParams& params) {
  const auto p = momentum_distribution(state);
  double e = 0.0;
  for (int m = -state.m_max(); m <= state.m_max(); ++m) {
    e += p[m + state.m_max()] * static_cast<double>(m) * m;
  }
  return e * params.hbar * params.hbar / (2.0 * params.inertia);
}

std::vector<double> angle_marginal(const PlanarWignerState& state) {
  std::vector<double> out(static_cast<std::size_t>(state.n_alpha()), 0.0);
  for (int m = -state.m_max(); m <= state.m_max(); ++m) {
    const auto row = state.row(m);
    for (int j = 0; j < state.n_alpha(); ++j) out[j] += row[j];
  }
  return out;
}

namespace {

void require_same_grid(const PlanarWignerState& a, const PlanarWignerState& b) {
  if (a.n_alpha() != b.n_alpha() || a.m_max() != b.m_max()) {
    throw std::invalid_argument("planar: states live on different grids");
  }
}

double angular_distance(double a, double b) {
  const double d = std::remainder(a - b, kTwoPi);
  return std::abs(d);
}

}  // namespace

double l1_distance(const PlanarWignerState& a, const PlanarWignerState& b) {
  require_same_grid(a, b);
  double sum = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i) {
    sum += std::abs(a.values()[i] - b.values()[i]);
  }
  return sum * a.d_alpha();
}

double revival_fidelity(const PlanarWignerState& state,
                        const PlanarWignerState& reference) {
  require_same_grid(state, reference);
  double cross = 0.0, self = 0.0;
  for (std::size_t i = 0; i < state.values().size(); ++i) {
    cross += state.values()[i] * reference.values()[i];
    self += reference.values()[i] * reference.values()[i];
  }
  return cross / self;
}

double interference_band_mass(const PlanarWignerState& state, double sigma_alpha,
                              double center) {
  const int m_max = state.m_max();
  auto w = [&](int m, int j) {
    return (m < -m_max || m > m_max) ? 0.0 : state.at(m, j);
  };
  double sum = 0.0;
  for (int j = 0; j < state.n_alpha(); ++j) {
    if (angular_distance(state.alpha(j), center) >= 3.0 * sigma_alpha) continue;
    for (int m = -m_max; m <= m_max; ++m) {
      sum += std::abs(2.0 * w(m, j) - w(m - 1, j) - w(m + 1, j)) / 4.0;
    }
  }
  return sum * state.d_alpha();
}

double coherence_contrast(const PlanarWignerState& state,
                          const PlanarWignerState& initial, double sigma_alpha) {
  require_same_grid(state, initial);
  const double reference = interference_band_mass(initial, sigma_alpha);
  if (!(reference > 0.0)) {
    throw std::invalid_argument("coherence_contrast: initial state has no interference band");
  }
  return interference_band_mass(state, sigma_alpha) / reference;
}

double window_mass(const PlanarWignerState& state, double center, double half_width) {
  const auto marginal = angle_marginal(state);
  double sum = 0.0;
  for (int j = 0; j < state.n_alpha(); ++j) {
    if (angular_distance(state.alpha(j), center) < half_width) sum += marginal[j];
  }
  return sum * state.d_alpha();
}

double window_overlap(const PlanarWignerState& a, const PlanarWignerState& b,
                      double center, double half_width) {
  require_same_grid(a, b);
  const auto ma = angle_marginal(a);
  const auto mb = angle_marginal(b);
  double common = 0.0, reference = 0.0;
  for (int j = 0; j < a.n_alpha(); ++j) {
    if (angular_distance(a.alpha(j), center) >= half_width) continue;
    common += std::min(ma[j], mb[j]);
    reference += mb[j];
  }
  return common / reference;
}

}  // namespace rotodiff::planar
