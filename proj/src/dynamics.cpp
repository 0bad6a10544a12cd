#include "becgw/dynamics.hpp"

#include <boost/numeric/odeint.hpp>

#include <array>
#include <cmath>
#include <future>
#include <string>

#include "becgw/errors.hpp"

namespace becgw {

namespace odeint = boost::numeric::odeint;
using State = std::array<double, 4>;  // re q, im q, re qdot, im qdot

double ModeBasis::k(int n) const { return n * M_PI / length; }
double ModeBasis::omega(int n) const { return n * M_PI * cs0 / length; }

ModeBasis build_basis(int n_modes, double length, double cs0) {
  if (n_modes < 1) throw ValidationError("basis.n_modes must be >= 1");
  if (!(length > 0.0)) throw ValidationError("basis.length must be > 0");
  if (!(cs0 > 0.0)) throw ValidationError("basis.cs0 must be > 0");
  return ModeBasis{n_modes, length, cs0};
}

double DriveSchedule::sound_speed(double t, double cs0) const {
  return cs0 / std::sqrt(1.0 + h(t));
}

DriveSchedule DriveSchedule::sinusoid(double a_plus, double omega) {
  if (!(std::abs(a_plus) <= 0.1))
    throw ValidationError("drive amplitude outside perturbative window |h| <= 0.1");
  if (!(omega > 0.0)) throw ValidationError("drive omega must be > 0");
  DriveSchedule d;
  d.h = [a_plus, omega](double t) { return a_plus * std::sin(omega * t); };
  d.period = 2.0 * M_PI / omega;
  d.sup_h = std::abs(a_plus);
  return d;
}

DriveSchedule DriveSchedule::custom(std::function<double(double)> h, double period,
                                    double sup_h) {
  if (!(sup_h <= 0.1) || !(sup_h >= 0.0))
    throw ValidationError("drive sup_h outside perturbative window [0, 0.1]");
  if (!(period > 0.0)) throw ValidationError("drive period must be > 0");
  DriveSchedule d;
  d.h = std::move(h);
  d.period = period;
  d.sup_h = sup_h;
  return d;
}

int ModeEnsemble::checkpoint_index(int periods_done) const {
  const int idx = periods_done * samples_per_period;
  if (idx < 0 || idx >= static_cast<int>(times.size()))
    throw ValidationError("checkpoint beyond evolved range");
  return idx;
}

double ModeEnsemble::wronskian(int mode, int j) const {
  const auto& tr = tracks[mode];
  return std::imag(std::conj(tr.q[j]) * tr.qdot[j]);
}

double ModeEnsemble::error_estimate(int mode) const {
  double amp = 1.0;
  for (const auto& q : tracks[mode].q) amp = std::max(amp, std::abs(q));
  const double step_bound = 10.0 * tol * static_cast<double>(steps_accepted[mode]) * amp;
  return std::max(step_bound, wronskian_drift[mode]);
}

namespace {

// Integrates one mode from t=0 through the sample grid, recording state at
// every sample time. Fehlberg 7(8) embedded pair, PI-controlled steps.
void evolve_mode(const ModeBasis& basis, const DriveSchedule& drive, int n,
                 const std::vector<double>& times, double tol, ModeTrack& track,
                 double& drift, long& accepted, long& rejected) {
  const double k = basis.k(n), cs0 = basis.cs0, w = basis.omega(n);

  const auto rhs = [&](const State& y, State& dy, double t) {
    const double h = drive.h(t);
    if (!(h > -1.0))
      throw ValidationError("drive strain reached h <= -1 (sound speed undefined)");
    dy[0] = y[2];
    dy[1] = y[3];
    dy[2] = reduced_mode_accel(h, k, cs0, y[0]);
    dy[3] = reduced_mode_accel(h, k, cs0, y[1]);
  };

  const double s2w = std::sqrt(2.0 * w);
  State y{1.0 / s2w, 0.0, 0.0, -w / s2w};

  auto stepper =
      odeint::make_controlled(1e-3 * tol, tol, odeint::runge_kutta_fehlberg78<State>());

  track.q.reserve(times.size());
  track.qdot.reserve(times.size());
  const double w0 = -0.5;  // Im(q* qdot) at t = 0
  drift = 0.0;
  accepted = rejected = 0;

  double t = 0.0;
  double dt = drive.period / 64.0;
  track.q.emplace_back(y[0], y[1]);
  track.qdot.emplace_back(y[2], y[3]);

  for (size_t j = 1; j < times.size(); ++j) {
    const double t_target = times[j];
    while (t < t_target) {
      double trial = std::min(dt, t_target - t);
      int fails = 0;
      while (true) {
        const auto res = stepper.try_step(rhs, y, t, trial);
        if (res == odeint::success) {
          ++accepted;
          // Keep the controller's suggestion except across the clamp to the
          // sample boundary, where `trial` is the post-step suggestion too.
          dt = trial;
          break;
        }
        ++rejected;
        if (++fails > 60)
          throw NumericalError("mode integrator step control failed at t=" +
                                   std::to_string(t),
                               tol, trial);
      }
    }
    track.q.emplace_back(y[0], y[1]);
    track.qdot.emplace_back(y[2], y[3]);
    const double wj = std::imag(std::conj(track.q.back()) * track.qdot.back());
    drift = std::max(drift, std::abs(wj - w0) / std::abs(w0));
  }
}

}  // namespace

ModeEnsemble evolve(const ModeBasis& basis, const DriveSchedule& drive, int periods,
                    double tol, int samples_per_period) {
  if (periods < 1) throw ValidationError("evolve requires at least one full drive period");
  if (!(tol > 0.0) || !(tol < 1e-2)) throw ValidationError("evolve tol must be in (0, 1e-2)");
  if (samples_per_period < 1) throw ValidationError("samples_per_period must be >= 1");
  if (!(drive.period > 0.0)) throw ValidationError("drive period must be > 0");
  if (basis.n_modes < 1) throw ValidationError("basis has no modes");

  ModeEnsemble e;
  e.basis = basis;
  e.drive = drive;
  e.tol = tol;
  e.samples_per_period = samples_per_period;
  const int n_samples = periods * samples_per_period + 1;
  e.times.resize(n_samples);
  for (int j = 0; j < n_samples; ++j)
    e.times[j] = drive.period * j / samples_per_period;

  e.tracks.resize(basis.n_modes);
  e.wronskian_drift.assign(basis.n_modes, 0.0);
  e.steps_accepted.assign(basis.n_modes, 0);
  e.steps_rejected.assign(basis.n_modes, 0);
  for (int m = 0; m < basis.n_modes; ++m)
    evolve_mode(basis, drive, m + 1, e.times, tol, e.tracks[m], e.wronskian_drift[m],
                e.steps_accepted[m], e.steps_rejected[m]);
  return e;
}

double BogoliubovMatrices::identity_residual() const {
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::complex<double> s = 0.0;
      for (int m = 0; m < n; ++m)
        s += a(i, m) * std::conj(a(j, m)) - b(i, m) * std::conj(b(j, m));
      if (i == j) s -= 1.0;
      worst = std::max(worst, std::abs(s));
    }
  return worst;
}

BogoliubovMatrices bogoliubov_extract(const ModeEnsemble& e, int checkpoint) {
  const int j = checkpoint < 0 ? static_cast<int>(e.times.size()) - 1 : checkpoint;
  if (j < 0 || j >= static_cast<int>(e.times.size()))
    throw ValidationError("bogoliubov_extract: checkpoint out of range");
  const double t = e.times[j];
  const double h_end = e.drive.h(t);
  if (std::abs(h_end) > 1e-9 * std::max(1.0, e.drive.sup_h) + 1e-12)
    throw ValidationError(
        "bogoliubov_extract requires h(t_check) = 0 (flat in/out region); got h = " +
        std::to_string(h_end));

  const int n = e.basis.n_modes;
  BogoliubovMatrices bm;
  bm.n = n;
  bm.alpha.assign(static_cast<size_t>(n) * n, 0.0);
  bm.beta.assign(static_cast<size_t>(n) * n, 0.0);
  for (int m = 0; m < n; ++m) {
    const double w = e.basis.omega(m + 1);
    const std::complex<double> q = e.tracks[m].q[j];
    const std::complex<double> qd = e.tracks[m].qdot[j];
    const std::complex<double> phase{std::cos(w * t), std::sin(w * t)};  // e^{+i w t}
    const std::complex<double> i_unit{0.0, 1.0};
    const double s2w = std::sqrt(2.0 * w);
    bm.alpha[m * n + m] = phase * s2w * (q + i_unit * qd / w) * 0.5;
    bm.beta[m * n + m] =
        phase * s2w * (std::conj(q) + i_unit * std::conj(qd) / w) * 0.5;
  }
  return bm;
}

std::vector<double> particle_number(const BogoliubovMatrices& b) {
  std::vector<double> num(b.n, 0.0);
  for (int k = 0; k < b.n; ++k)
    for (int m = 0; m < b.n; ++m) num[k] += std::norm(b.b(m, k));
  return num;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw ValidationError("fit_line needs >= 2 points of equal count");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw ValidationError("fit_line: degenerate abscissae");
  LineFit f;
  f.slope = (n * sxy - sx * sy) / denom;
  f.intercept = (sy - f.slope * sx) / n;
  return f;
}

ScanResult resonance_scan(const ModeBasis& basis, double a_plus,
                          const std::vector<double>& omega_grid,
                          const std::vector<int>& durations, double tol, int threads) {
  if (omega_grid.empty()) throw ValidationError("scan omega grid is empty");
  if (durations.size() < 2)
    throw ValidationError("scan needs >= 2 durations for a growth fit");
  for (size_t i = 1; i < durations.size(); ++i)
    if (durations[i] <= durations[i - 1])
      throw ValidationError("scan durations must be strictly increasing");
  if (durations.front() < 1) throw ValidationError("scan durations must be >= 1 period");
  if (threads < 1) threads = 1;

  const int max_periods = durations.back();
  const auto run_cell = [&](double omega) {
    const DriveSchedule drive = DriveSchedule::sinusoid(a_plus, omega);
    const ModeEnsemble e = evolve(basis, drive, max_periods, tol);
    std::vector<ScanCell> cells(basis.n_modes);
    for (int m = 0; m < basis.n_modes; ++m) {
      ScanCell& cell = cells[m];
      cell.omega = omega;
      cell.mode = m + 1;
      std::vector<double> log_t, log_beta, log_num;
      bool degenerate = false;
      for (int d : durations) {
        const auto bm = bogoliubov_extract(e, e.checkpoint_index(d));
        const double babs = std::abs(bm.b(m, m));
        if (babs < 1e-13) {
          degenerate = true;
          break;
        }
        log_t.push_back(std::log(e.times[e.checkpoint_index(d)]));
        log_beta.push_back(std::log(babs));
        log_num.push_back(std::log(particle_number(bm)[m]));
      }
      if (!degenerate) {
        cell.slope = fit_line(log_t, log_beta).slope;
        cell.amplitude = std::exp(fit_line(log_t, log_beta).intercept);
        cell.number_slope = fit_line(log_t, log_num).slope;
        cell.beta_final = std::exp(log_beta.back());
        cell.fit_ok = true;
      }
    }
    return cells;
  };

  ScanResult result;
  result.cells.resize(omega_grid.size() * basis.n_modes);
  // Fan the independent cells out in slabs of `threads`; placement by index
  // keeps artifact ordering identical for any thread count.
  for (size_t base = 0; base < omega_grid.size(); base += threads) {
    const size_t hi = std::min(base + threads, omega_grid.size());
    std::vector<std::future<std::vector<ScanCell>>> futs;
    for (size_t i = base; i < hi; ++i)
      futs.push_back(std::async(threads == 1 ? std::launch::deferred : std::launch::async,
                                run_cell, omega_grid[i]));
    for (size_t i = base; i < hi; ++i) {
      auto cells = futs[i - base].get();
      for (int m = 0; m < basis.n_modes; ++m)
        result.cells[i * basis.n_modes + m] = cells[m];
    }
  }

  result.peak_omega.assign(basis.n_modes, 0.0);
  for (int m = 0; m < basis.n_modes; ++m) {
    double best = -1.0;
    for (size_t i = 0; i < omega_grid.size(); ++i) {
      const ScanCell& cell = result.cells[i * basis.n_modes + m];
      if (cell.fit_ok && cell.beta_final > best) {
        best = cell.beta_final;
        result.peak_omega[m] = cell.omega;
      }
    }
  }
  return result;
}

}  // namespace becgw
