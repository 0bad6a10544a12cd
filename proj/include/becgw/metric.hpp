#pragma once

#include <array>
#include <optional>

#include "becgw/constants.hpp"

// Acoustic (effective) metrics for phonons in a flowing condensate, plus the
// transverse-traceless strain that perturbs them. Coordinates are (t, x, y, z)
// with t in seconds, so g_tt carries (m/s)^2 while spatial entries are
// dimensionless; the flat form is diag(-c^2, 1, 1, 1).

namespace becgw {

// Symmetric 4x4 metric. Stored dense; symmetry is an invariant checked by
// is_symmetric() and asserted where metrics are produced.
struct Metric4 {
  std::array<std::array<double, 4>, 4> g{};

  double& operator()(int a, int b) { return g[a][b]; }
  double operator()(int a, int b) const { return g[a][b]; }

  bool is_symmetric(double tol = 1e-12) const;
  // Determinant of the (t,x) block; Lorentzian signature requires < 0.
  double det_1p1() const { return g[0][0] * g[1][1] - g[0][1] * g[0][1]; }
};

// Background condensate data entering the effective metric. rho is an opaque
// positive scalar (its normalization cancels from every observable except the
// conformal prefactor); cs is the sound speed in m/s. The microscopic fields
// are optional metadata: when density n is present, cs must satisfy
// cs = (hbar/m_a)*sqrt(4 pi n a0).
struct CondensateParams {
  double rho = 1.0;   // mass-density scalar, opaque normalization
  double cs = 0.0;    // sound speed, m/s

  std::optional<double> n;    // number density, 1/m^3
  std::optional<double> a0;   // s-wave scattering length, m
  std::optional<double> m_a;  // atomic mass, kg
};

// Builds CondensateParams from microscopic data, computing
// cs = (hbar/m_a)*sqrt(4 pi n a0). Throws ValidationError on non-physical
// inputs (n, a0, m_a must be positive).
CondensateParams condensate_from_density(double n, double a0, double m_a,
                                         const PhysicalConstants& k,
                                         double rho = 1.0);

// Checks the cs-vs-density consistency relation when microscopic data is
// present; throws ValidationError beyond 1e-9 relative.
void check_condensate(const CondensateParams& p, const PhysicalConstants& k);

// Condensate flow. Components are stored contravariant and c-normalized:
// v = (c dt/dlambda, dx/dlambda, dy/dlambda, dz/dlambda) with lambda proper
// time, so a condensate at rest is (c, 0, 0, 0) and every component carries
// m/s. normalization(), evaluated against a metric g, returns
// g_ab w^a w^b with w = (v0/c, v1, v2, v3); it must equal -c^2.
struct FourVelocity {
  std::array<double, 4> v{};

  static FourVelocity at_rest(double c) { return FourVelocity{{c, 0.0, 0.0, 0.0}}; }
  double normalization(const Metric4& g, double c) const;
};

// Sinusoidal transverse-traceless strain: h_plus(t) = a_plus*sin(omega*t),
// h_cross(t) analogous. Amplitudes beyond 0.1 leave the perturbative window
// every derivation here assumes and are rejected.
struct WaveParams {
  double a_plus = 0.0;   // + polarization amplitude, dimensionless
  double a_cross = 0.0;  // x polarization amplitude, dimensionless
  double omega = 0.0;    // angular frequency, rad/s

  double h_plus(double t) const;
  double h_cross(double t) const;
};

// Validates a WaveParams block (|amplitudes| <= 0.1, omega > 0); throws
// ValidationError naming the offending field.
void check_wave(const WaveParams& w);

// Flat background diag(-c^2, 1, 1, 1).
Metric4 minkowski(double c);

// Flat background plus TT-gauge strain at time t, propagation along z:
// g_xx = 1 + h_plus, g_yy = 1 - h_plus, g_xy = g_yx = h_cross.
Metric4 gw_perturbation(const WaveParams& w, double t, double c);

// Effective phonon metric
//   g_eff = [rho c / cs] * ( g_ab + (1 - cs^2/c^2) u_a u_b )
// with u_a the unit covariant flow built from v. The conformal prefactor in
// brackets is applied only when keep_conformal is true (it drops out of every
// 1+1-dimensional observable). The tt cancellation is ordered as
// (g_ab + u_a u_b) - cs^2 (u_a/c)(u_b/c) so the no-flow flat case returns
// exactly diag(-cs^2, 1, 1, 1): the literal (1 - cs^2/c^2) prefactor form
// would absorb cs^2/c^2 ~ 1e-21 below machine precision for laboratory
// magnitudes and return 0 instead of -cs^2.
// Preconditions: 0 < cs < c, v normalized against g within 1e-9 relative.
Metric4 acoustic_metric(const Metric4& g, const CondensateParams& cond,
                        const FourVelocity& v, double c,
                        bool keep_conformal = false);

// Squared interval g_tt dt^2 + 2 g_tx dt dx + g_xx dx^2 of the (t,x) block.
double line_element_1p1(const Metric4& g, double dt, double dx);

}  // namespace becgw
