#pragma once

#include <vector>

#include "becgw/metric.hpp"

// Coordinate chain between the laboratory chart (t, x), the hyperbolic chart
// (chi, zeta) in which the engineered flow is at rest, and the comoving chart
// (tau, xi) in which the effective phonon metric takes the strained form
// diag(-cs0^2, 1 + h_plus(tau)). chi is a timelike radius (meters), zeta a
// dimensionless boost coordinate; the charts cover the wedge c^2 t^2 > x^2.

namespace becgw {

// Evaluation mode for the engineered schedule maps: `exact` evaluates the
// closed forms with adaptive quadrature where needed; `first_order` uses the
// O(a_plus) truncations.
enum class ChartMode { exact, first_order };

// Fixed data of the engineered chart. ell = 2 c tau0 sets the sound-speed
// normalization cs(tau0) = cs0; rho0 is the opaque background density scalar
// (normalization cancels from the pullback identity).
struct ChartParams {
  double c = 1.0;      // speed of light, m/s
  double cs0 = 0.1;    // reference sound speed, m/s
  double rho0 = 1.0;   // background density scalar
  double tau0 = 1.0;   // reference comoving time, s
  WaveParams wave;     // strain h_plus(tau) = a_plus*sin(omega*tau)

  double ell() const { return 2.0 * c * tau0; }
};

// Validates chart parameters (positivity, perturbative wave, cs0 < c).
void check_chart(const ChartParams& p);

struct HyperbolicPoint {
  double chi;   // sqrt(c^2 t^2 - x^2), m
  double zeta;  // x / chi, dimensionless
};

// Lab -> hyperbolic. Requires c^2 t^2 - x^2 > 0 (throws ValidationError
// outside the wedge).
HyperbolicPoint to_hyperbolic(double t, double x, double c);

// Hyperbolic -> lab: t = (chi/c) sqrt(1+zeta^2), x = chi*zeta. Requires
// chi > 0.
void from_hyperbolic(const HyperbolicPoint& p, double c, double& t, double& x);

// Engineered condensate flow through the lab chart at boost coordinate zeta:
// v = (c sqrt(1+zeta^2), c zeta, 0, 0). Pushed to the hyperbolic chart this
// is (c, 0): the condensate is comoving there.
FourVelocity velocity_profile_lab(double zeta, double c);

// xi <-> zeta leg of the comoving chart: zeta = sinh(xi/ell).
double zeta_of_xi(double xi, const ChartParams& p);
double xi_of_zeta(double zeta, const ChartParams& p);

// chi(tau) = sqrt((2 cs0 ell / rho0) * S(tau)) with
//   exact:       S(tau) = integral_0^tau sqrt(1 + h_plus(s)) ds  (adaptive
//                Gauss-Kronrod; requested relative accuracy 1e-13, failure to
//                reach 1e-10 raises NumericalError)
//   first_order: S(tau) = tau + (a_plus / 2 omega) (1 - cos(omega tau))
// tau = 0 is anchored at chi = 0 (positive branch); tau must be >= 0.
double chi_of_tau(double tau, const ChartParams& p, ChartMode mode);

// Inverse of the exact chi_of_tau by Newton iteration (the derivative
// d(chi^2)/d tau = (2 cs0 ell/rho0) sqrt(1+h_plus) is closed-form).
double tau_of_chi(double chi, const ChartParams& p);

// Engineered sound-speed schedule, paper-form closed expressions:
//   exact:       cs(tau) = (c cs0 / ell) * (2 omega tau + a (1 - cos omega tau))
//                          / (omega (1 + a sin omega tau))
//   first_order: cs(tau) = (c cs0 / (ell omega)) * (2 omega tau
//                          + a (1 - cos omega tau - 2 omega tau sin omega tau))
// The `exact` form embeds the first-order chi(tau), so the chart closure
// below carries a genuine O(a_plus^2) residual.
double sound_speed_of_tau(double tau, const ChartParams& p, ChartMode mode);

// One grid sample of the pullback verification.
struct PullbackSample {
  double tau, xi;
  double res_tt, res_tx, res_xx;  // pullback minus diag(-cs0^2, 1+h_plus(tau))
};

struct PullbackReport {
  std::vector<PullbackSample> samples;
  double max_abs_residual = 0.0;      // over all entries and grid points
  double max_offdiag_residual = 0.0;  // over the tx entry only
  double fd_floor = 0.0;              // same grid evaluated at a_plus = 0
};

struct PullbackGrid {
  int n_tau = 32, n_xi = 32;
  // Defaults (applied when min==max==0): tau in [0.05, 2]*(2 pi/omega) to
  // stay clear of the chi = 0 singularity, xi in [-0.75, 0.75]*ell.
  double tau_min = 0.0, tau_max = 0.0;
  double xi_min = 0.0, xi_max = 0.0;
};

// Numerically verifies that pulling the effective metric (built from the flat
// lab metric, the velocity profile, and the engineered cs(tau), conformal
// factor kept) back through (tau, xi) -> (chi, zeta) -> (t, x) reproduces
// diag(-cs0^2, 1 + h_plus(tau)). Jacobians are central finite differences
// with step 1e-6 * coordinate scale, Richardson-extrapolated once. fd_floor
// reports the residual of the identical procedure at a_plus = 0.
PullbackReport verify_pullback(const ChartParams& p, const PullbackGrid& grid = {});

}  // namespace becgw
