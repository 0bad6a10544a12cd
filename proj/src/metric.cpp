#include "becgw/metric.hpp"

#include <cmath>
#include <string>

#include "becgw/errors.hpp"

namespace becgw {

bool Metric4::is_symmetric(double tol) const {
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) {
      const double scale = std::max({std::abs(g[a][b]), std::abs(g[b][a]), 1.0});
      if (std::abs(g[a][b] - g[b][a]) > tol * scale) return false;
    }
  return true;
}

CondensateParams condensate_from_density(double n, double a0, double m_a,
                                         const PhysicalConstants& k, double rho) {
  if (!(n > 0.0)) throw ValidationError("condensate number density n must be > 0");
  if (!(a0 > 0.0)) throw ValidationError("condensate scattering length a0 must be > 0");
  if (!(m_a > 0.0)) throw ValidationError("condensate atomic mass m_a must be > 0");
  if (!(rho > 0.0)) throw ValidationError("condensate density scalar rho must be > 0");
  CondensateParams p;
  p.rho = rho;
  p.cs = (k.hbar / m_a) * std::sqrt(4.0 * M_PI * n * a0);
  p.n = n;
  p.a0 = a0;
  p.m_a = m_a;
  return p;
}

void check_condensate(const CondensateParams& p, const PhysicalConstants& k) {
  if (!(p.cs > 0.0)) throw ValidationError("condensate sound speed cs must be > 0");
  if (!(p.rho > 0.0)) throw ValidationError("condensate density scalar rho must be > 0");
  if (p.n && p.a0 && p.m_a) {
    const double cs_micro = (k.hbar / *p.m_a) * std::sqrt(4.0 * M_PI * *p.n * *p.a0);
    if (std::abs(cs_micro - p.cs) > 1e-9 * cs_micro)
      throw ValidationError(
          "condensate cs inconsistent with (hbar/m_a)*sqrt(4 pi n a0): cs=" +
          std::to_string(p.cs) + " vs " + std::to_string(cs_micro));
  }
}

double FourVelocity::normalization(const Metric4& g, double c) const {
  const std::array<double, 4> w{v[0] / c, v[1], v[2], v[3]};
  double s = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) s += g(a, b) * w[a] * w[b];
  return s;
}

double WaveParams::h_plus(double t) const { return a_plus * std::sin(omega * t); }
double WaveParams::h_cross(double t) const { return a_cross * std::sin(omega * t); }

void check_wave(const WaveParams& w) {
  if (!(std::abs(w.a_plus) <= 0.1))
    throw ValidationError("wave.a_plus outside perturbative window |a| <= 0.1");
  if (!(std::abs(w.a_cross) <= 0.1))
    throw ValidationError("wave.a_cross outside perturbative window |a| <= 0.1");
  if (!(w.omega > 0.0)) throw ValidationError("wave.omega must be > 0");
}

Metric4 minkowski(double c) {
  if (!(c > 0.0)) throw ValidationError("speed of light c must be > 0");
  Metric4 m;
  m(0, 0) = -c * c;
  m(1, 1) = 1.0;
  m(2, 2) = 1.0;
  m(3, 3) = 1.0;
  return m;
}

Metric4 gw_perturbation(const WaveParams& w, double t, double c) {
  check_wave(w);
  Metric4 m = minkowski(c);
  const double hp = w.h_plus(t), hx = w.h_cross(t);
  m(1, 1) = 1.0 + hp;
  m(2, 2) = 1.0 - hp;
  m(1, 2) = hx;
  m(2, 1) = hx;
  return m;
}

Metric4 acoustic_metric(const Metric4& g, const CondensateParams& cond,
                        const FourVelocity& v, double c, bool keep_conformal) {
  if (!(cond.cs > 0.0)) throw ValidationError("acoustic_metric: cs must be > 0");
  if (!(cond.cs < c)) throw ValidationError("acoustic_metric: cs must be < c");
  if (!(cond.rho > 0.0)) throw ValidationError("acoustic_metric: rho must be > 0");
  if (!g.is_symmetric()) throw ValidationError("acoustic_metric: metric not symmetric");

  const double norm = v.normalization(g, c);
  if (std::abs(norm + c * c) > 1e-9 * c * c)
    throw ValidationError("acoustic_metric: flow not normalized to -c^2 (got " +
                          std::to_string(norm) + ")");

  // Unit covariant flow u_a = (g w)_a / c with w = (v0/c, v1, v2, v3);
  // at rest u = (-c, 0, 0, 0) and u_a u_b = diag(c^2, 0, 0, 0).
  const std::array<double, 4> w{v.v[0] / c, v.v[1], v.v[2], v.v[3]};
  std::array<double, 4> u{};
  for (int a = 0; a < 4; ++a) {
    double s = 0.0;
    for (int b = 0; b < 4; ++b) s += g(a, b) * w[b];
    u[a] = s / c;
  }

  // n_a = u_a / c is the dimensionless unit covector; writing the correction
  // as cs^2 * n_a n_b (instead of (cs^2/c^2) * u_a u_b) keeps the no-flow
  // entries exact: -c^2 + c^2 cancels first and cs^2 * (-1)(-1) is a single
  // rounding, so the tt entry is bitwise -cs*cs.
  const std::array<double, 4> n{u[0] / c, u[1] / c, u[2] / c, u[3] / c};
  const double cs2 = cond.cs * cond.cs;
  const double conformal = keep_conformal ? cond.rho * c / cond.cs : 1.0;
  Metric4 out;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const double entry = (g(a, b) + u[a] * u[b]) - cs2 * (n[a] * n[b]);
      out(a, b) = keep_conformal ? conformal * entry : entry;
    }
  return out;
}

double line_element_1p1(const Metric4& g, double dt, double dx) {
  return g(0, 0) * dt * dt + 2.0 * g(0, 1) * dt * dx + g(1, 1) * dx * dx;
}

}  // namespace becgw
