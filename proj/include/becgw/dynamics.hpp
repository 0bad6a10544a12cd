#pragma once

#include <complex>
#include <functional>
#include <vector>

// Phonon mode dynamics in a box trap under a spatially uniform strain drive
// h(t). Dirichlet modes decouple, and each reduced amplitude obeys
//
//     d^2 q_n / dt^2 = - cs0^2 k_n^2 q_n / (1 + h(t)),
//
// the modulated-sound-speed oscillator with cs(t) = cs0 / sqrt(1 + h(t))
// (= cs0 (1 - h/2) to first order). This is the density-quadrature equation
// of a condensate whose coupling is modulated as g(t) = g0/(1 + h(t)); a
// constant stretch h0 gives an oscillator of frequency omega_n/sqrt(1+h0)
// exactly. Note the strained-metric reduction that *also* carries a
// hdot/(2(1+h)) friction term is conformally invariant in 1+1 dimensions and
// creates no phonons at all; see the unit tests for the demonstration.

namespace becgw {

// Dirichlet box spectrum: k_n = n pi / L, omega_n = n pi cs0 / L, n = 1..N.
struct ModeBasis {
  int n_modes = 0;
  double length = 0.0;  // box length L, m
  double cs0 = 0.0;     // unperturbed sound speed, m/s

  double k(int n) const;      // n is 1-based
  double omega(int n) const;  // n is 1-based
};

ModeBasis build_basis(int n_modes, double length, double cs0);

// Strain drive. h must stay within |h| <= 0.1 (the perturbative window all
// derivations assume); sup_h records the bound actually promised by the
// builder. period is the drive period used for sampling and end-of-run
// bookkeeping.
struct DriveSchedule {
  std::function<double(double)> h;
  double period = 0.0;
  double sup_h = 0.0;

  double sound_speed(double t, double cs0) const;  // cs0 / sqrt(1 + h(t))

  static DriveSchedule sinusoid(double a_plus, double omega);
  // Arbitrary smooth strain; the caller promises |h| <= sup_h <= 0.1 and
  // gives the natural period for sampling purposes.
  static DriveSchedule custom(std::function<double(double)> h, double period,
                              double sup_h);
};

// Acceleration of one reduced mode amplitude: -cs0^2 k^2 q / (1 + h).
inline double reduced_mode_accel(double h, double k, double cs0, double q) {
  return -(cs0 * cs0 * k * k) * q / (1.0 + h);
}

// State history of one mode: q and qdot at the sample times.
struct ModeTrack {
  std::vector<std::complex<double>> q;
  std::vector<std::complex<double>> qdot;
};

// Result of evolving every mode of a basis through an integer number of
// drive periods from positive-frequency initial data
// q_n(0) = 1/sqrt(2 omega_n), qdot_n(0) = -i omega_n q_n(0).
struct ModeEnsemble {
  ModeBasis basis;
  DriveSchedule drive;
  double tol = 0.0;
  int samples_per_period = 0;
  std::vector<double> times;        // sample times, t[j] = j*period/spp
  std::vector<ModeTrack> tracks;    // one per mode
  std::vector<double> wronskian_drift;  // per mode: max |W - W0|/|W0| over samples
  std::vector<long> steps_accepted;
  std::vector<long> steps_rejected;

  // Index into `times` of an integer-period checkpoint.
  int checkpoint_index(int periods_done) const;
  // Conserved Wronskian of the implemented equation at sample j: Im(q* qdot).
  double wronskian(int mode, int j) const;
  // Conservative a-posteriori error estimate for Bogoliubov magnitudes:
  // max(10 * tol * accepted steps * max(1, |state|), wronskian drift).
  double error_estimate(int mode) const;
};

// Integrates all modes to `periods` full drive periods with an adaptive
// high-order Runge-Kutta scheme at relative tolerance tol, sampling
// samples_per_period points per period. Throws NumericalError (with the
// accuracy actually achieved) if step control fails.
ModeEnsemble evolve(const ModeBasis& basis, const DriveSchedule& drive, int periods,
                    double tol = 1e-10, int samples_per_period = 8);

// Bogoliubov matrices connecting the t = t_check mode functions to the
// initial positive-frequency set. Spatially uniform drives cannot mix
// different modes, so both matrices are diagonal by construction; they are
// stored dense (row-major) so the off-diagonal zeros are part of the
// reported result rather than an assumption.
struct BogoliubovMatrices {
  int n = 0;
  std::vector<std::complex<double>> alpha;  // n*n row-major
  std::vector<std::complex<double>> beta;

  std::complex<double> a(int m, int k) const { return alpha[m * n + k]; }
  std::complex<double> b(int m, int k) const { return beta[m * n + k]; }
  // max entrywise |alpha alpha^dag - beta beta^dag - I|.
  double identity_residual() const;
};

// Projects (q, qdot) at the checkpoint onto e^{-/+ i omega t}; requires the
// drive to vanish there (|h| <= 1e-9) so the flat decomposition is valid.
// checkpoint = -1 means the final sample.
BogoliubovMatrices bogoliubov_extract(const ModeEnsemble& e, int checkpoint = -1);

// Per-mode particle number N_n = sum_m |beta_mn|^2.
std::vector<double> particle_number(const BogoliubovMatrices& b);

// One (omega, mode) cell of a resonance scan: power-law fit of |beta_nn|
// against time over the requested durations.
struct ScanCell {
  double omega = 0.0;         // drive frequency, rad/s
  int mode = 0;               // 1-based
  double slope = 0.0;         // d log|beta| / d log t
  double amplitude = 0.0;     // exp(intercept) of the fit
  double beta_final = 0.0;    // |beta_nn| at the longest duration
  double number_slope = 0.0;  // d log N_n / d log t (~ 2x slope)
  bool fit_ok = false;        // false when |beta| sits at numerical zero
};

struct ScanResult {
  std::vector<ScanCell> cells;          // omega-major, then mode
  std::vector<double> peak_omega;       // per mode: grid omega maximizing beta_final
};

// Runs evolve + extraction for every drive frequency in omega_grid, fitting
// log|beta_nn| vs log t at the checkpoint durations (integer periods).
// Cells are computed independently (optionally in parallel); results are
// ordered deterministically regardless of thread count.
ScanResult resonance_scan(const ModeBasis& basis, double a_plus,
                          const std::vector<double>& omega_grid,
                          const std::vector<int>& durations, double tol = 1e-10,
                          int threads = 1);

// Least-squares slope/intercept of y against x (shared by scan and reports).
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace becgw
