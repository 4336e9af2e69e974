#pragma once

// Planar rotor in Wigner phase space.
//
// The state is w(alpha, m) on a uniform grid alpha_j = 2 pi j / n_alpha and
// integer angular momenta |m| <= M. Its dynamics is
//
//   dw/dt + (hbar m / I) dw/dalpha =
//       (D1 / hbar^2)   [w(m+1) - 2 w(m) + w(m-1)]
//     + (D2 / 4 hbar^2) [w(m+2) - 2 w(m) + w(m-2)].
//
// Two independent propagators are provided: a split-step numerical scheme
// (exact shear, exact lattice heat kernel) and the closed-form kernel of the
// D2 = 0 equation.

#include <complex>
#include <span>
#include <vector>

namespace rotodiff::planar {

using Complex = std::complex<double>;

struct PlanarParams {
  double inertia = 1.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double hbar = 1.0;

  void validate() const;
};

class PlanarWignerState {
 public:
  PlanarWignerState() = default;
  // Zero-filled grid; n_alpha must be a power of two >= 4, m_max >= 1.
  PlanarWignerState(int n_alpha, int m_max);

  int n_alpha() const { return n_alpha_; }
  int m_max() const { return m_max_; }
  int rows() const { return 2 * m_max_ + 1; }
  double d_alpha() const;
  double alpha(int j) const;

  double t = 0.0;

  // Row m (|m| <= M), n_alpha samples.
  std::span<double> row(int m);
  std::span<const double> row(int m) const;
  double& at(int m, int j) { return values_[index(m, j)]; }
  double at(int m, int j) const { return values_[index(m, j)]; }

  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  // sum_{m,j} w d_alpha
  double total() const;
  // sum_j (|w(alpha_j, -M)| + |w(alpha_j, M)|) d_alpha
  double boundary_mass() const;

 private:
  std::size_t index(int m, int j) const {
    return static_cast<std::size_t>(m + m_max_) * static_cast<std::size_t>(n_alpha_) +
           static_cast<std::size_t>(j);
  }
  int n_alpha_ = 0;
  int m_max_ = 0;
  std::vector<double> values_;
};

// Propagation aborts when boundary_mass exceeds this.
inline constexpr double kBoundaryMassLimit = 1e-6;

// w0 = delta_{m0} / 2pi
PlanarWignerState ground_state(int n_alpha, int m_max);

// w(alpha, m) = (1/2pi) int_{-pi}^{pi} dalpha' e^{i m alpha'}
//               psi(alpha - alpha'/2) psi*(alpha + alpha'/2),
// evaluated exactly for the trigonometric interpolant of the samples. psi must
// satisfy sum |psi|^2 (2pi/n) = 1 to 1e-9. Throws NumericalError when the
// imaginary residue exceeds 1e-8 and TruncationError when more than 1e-8 of
// the momentum probability lies beyond |m| = M.
PlanarWignerState wigner_from_wavefunction(std::span<const Complex> psi, int m_max);

// psi(alpha) proportional to exp(-cos^2(alpha) / 4 sigma^2), normalized on the
// grid: two lobes at alpha = +-pi/2.
std::vector<Complex> packet_pair_wavefunction(int n_alpha, double sigma_alpha);

// Split-step propagation: per step a half shear, the lattice heat kernel for
// the full step, and another half shear. Uses ceil(t_final / dt) equal steps,
// so the step actually taken is <= dt.
PlanarWignerState evolve_numeric(const PlanarWignerState& state,
                                 const PlanarParams& params, double t_final,
                                 double dt);

// exp(-2 tau) I_{|dm|}(2 tau) for the m-lattice heat kernel, truncated where
// it falls below 1e-16. Index 0 is dm = 0.
std::vector<double> lattice_heat_kernel(double tau);

// Closed-form propagator of the D2 = 0 equation at time t, tabulated for the
// Fourier modes resolved by an n_alpha grid:
//   T_k(l) = exp(-2 tau) I_l(2 tau sinc(hbar k t / 2I)) exp(i l k hbar t / 2I),
// tau = D1 t / hbar^2, sinc(x) = sin(x)/x. Its real-space form is
//   T_t(alpha', l) = (1/2pi) sum_k e^{i k alpha'} T_k(l).
class PlanarKernel {
 public:
  PlanarKernel(const PlanarParams& params, double t, int n_alpha);

  double t() const { return t_; }
  int n_alpha() const { return n_alpha_; }
  // Largest |l| kept.
  int ell_max() const { return ell_max_; }
  // Fourier coefficient for signed mode k (|k| <= n_alpha/2) and lag l.
  Complex mode(int k, int ell) const;
  // T_t(alpha_j, l) on the grid (band-limited to the grid's modes).
  std::vector<double> table(int ell) const;
  // sum_l int dalpha' T_t(alpha', l)
  double normalization() const;

  // w_t(alpha, m) = sum_l int dalpha' w0(alpha - hbar m t/I - alpha', m - l) T_t(alpha', l)
  PlanarWignerState apply(const PlanarWignerState& state0) const;

 private:
  PlanarParams params_;
  double t_;
  int n_alpha_;
  int ell_max_;
  // [k + n/2][l + ell_max]
  std::vector<Complex> modes_;
};

// Pointwise kernel, partial sum over |k| <= k_max. With k_max <= 0 the sum is
// extended until a term falls below 1e-14 or |k| reaches 4096. For l = 0 the
// kernel contains exp(-2 tau) delta(alpha') and the pointwise sum does not
// converge; use PlanarKernel for propagation.
double kernel_T(double alpha_prime, int ell, double t, const PlanarParams& params,
                int k_max);

// Closed-form propagation with PlanarKernel. Requires D2 = 0.
PlanarWignerState evolve_analytic(const PlanarWignerState& state0,
                                  const PlanarParams& params, double t);

// p(m) = sum_j w(alpha_j, m) d_alpha, index m + M.
std::vector<double> momentum_distribution(const PlanarWignerState& state);

// sum_m p(m) hbar^2 m^2 / 2I
double mean_energy(const PlanarWignerState& state, const PlanarParams& params);

// sum_m w(alpha_j, m), index j.
std::vector<double> angle_marginal(const PlanarWignerState& state);

// sum |a - b| d_alpha over the grid.
double l1_distance(const PlanarWignerState& a, const PlanarWignerState& b);

// <w, w0> / <w0, w0>
double revival_fidelity(const PlanarWignerState& state,
                        const PlanarWignerState& reference);

// L1 mass of the m-oscillating part of w, (2 w(m) - w(m-1) - w(m+1)) / 4, over
// the band |alpha - center| < 3 sigma_alpha.
double interference_band_mass(const PlanarWignerState& state, double sigma_alpha,
                              double center = 0.0);

// interference_band_mass(state) / interference_band_mass(initial).
double coherence_contrast(const PlanarWignerState& state,
                          const PlanarWignerState& initial, double sigma_alpha);

// Mass of the angle marginal in |alpha - center| < half_width.
double window_mass(const PlanarWignerState& state, double center, double half_width);

// sum_j min(marginal_a, marginal_b) / sum_j marginal_b over the window.
double window_overlap(const PlanarWignerState& a, const PlanarWignerState& b,
                      double center, double half_width);

}  // namespace rotodiff::planar
