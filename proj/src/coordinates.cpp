#include "becgw/coordinates.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <string>

#include "becgw/errors.hpp"

namespace becgw {

namespace {

constexpr double kQuadRequestTol = 1e-13;  // requested relative accuracy
constexpr double kQuadAcceptTol = 1e-10;   // hard failure beyond this

// integral_0^tau sqrt(1 + h_plus(s)) ds by adaptive Gauss-Kronrod.
double strain_integral(double tau, const ChartParams& p) {
  if (tau == 0.0) return 0.0;
  const auto f = [&](double s) { return std::sqrt(1.0 + p.wave.h_plus(s)); };
  double err = 0.0;
  const double val = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, 0.0, tau, 12, kQuadRequestTol, &err);
  if (err > kQuadAcceptTol * std::max(std::abs(val), tau))
    throw NumericalError("chi_of_tau quadrature did not converge", kQuadAcceptTol,
                         err / std::max(std::abs(val), tau));
  return val;
}

}  // namespace

void check_chart(const ChartParams& p) {
  if (!(p.c > 0.0)) throw ValidationError("chart.c must be > 0");
  if (!(p.cs0 > 0.0)) throw ValidationError("chart.cs0 must be > 0");
  if (!(p.cs0 < p.c)) throw ValidationError("chart.cs0 must be < c");
  if (!(p.rho0 > 0.0)) throw ValidationError("chart.rho0 must be > 0");
  if (!(p.tau0 > 0.0)) throw ValidationError("chart.tau0 must be > 0");
  check_wave(p.wave);
}

HyperbolicPoint to_hyperbolic(double t, double x, double c) {
  const double q = c * t - x, r = c * t + x;  // c^2 t^2 - x^2 = q*r, stably
  if (!(q > 0.0 && r > 0.0))
    throw ValidationError("event outside the hyperbolic chart: requires c^2 t^2 > x^2, t > 0");
  const double chi = std::sqrt(q * r);
  return HyperbolicPoint{chi, x / chi};
}

void from_hyperbolic(const HyperbolicPoint& p, double c, double& t, double& x) {
  if (!(p.chi > 0.0)) throw ValidationError("hyperbolic chart requires chi > 0");
  t = (p.chi / c) * std::sqrt(1.0 + p.zeta * p.zeta);
  x = p.chi * p.zeta;
}

FourVelocity velocity_profile_lab(double zeta, double c) {
  FourVelocity v;
  v.v = {c * std::sqrt(1.0 + zeta * zeta), c * zeta, 0.0, 0.0};
  return v;
}

double zeta_of_xi(double xi, const ChartParams& p) { return std::sinh(xi / p.ell()); }

double xi_of_zeta(double zeta, const ChartParams& p) { return p.ell() * std::asinh(zeta); }

double chi_of_tau(double tau, const ChartParams& p, ChartMode mode) {
  if (!(tau >= 0.0)) throw ValidationError("chi_of_tau requires tau >= 0");
  const double scale = 2.0 * p.cs0 * p.ell() / p.rho0;
  double s;
  if (mode == ChartMode::exact) {
    s = strain_integral(tau, p);
  } else {
    const double a = p.wave.a_plus, w = p.wave.omega;
    s = tau + (a / (2.0 * w)) * (1.0 - std::cos(w * tau));
  }
  return std::sqrt(scale * s);
}

double tau_of_chi(double chi, const ChartParams& p) {
  if (!(chi > 0.0)) throw ValidationError("tau_of_chi requires chi > 0");
  const double scale = 2.0 * p.cs0 * p.ell() / p.rho0;
  const double target = chi * chi / scale;  // = integral of sqrt(1+h)
  // Newton on F(tau) = S(tau) - target; S' = sqrt(1 + h_plus(tau)), and
  // S is monotone with slope within [sqrt(0.9), sqrt(1.1)] of 1.
  double tau = target;
  for (int it = 0; it < 50; ++it) {
    const double f = strain_integral(tau, p) - target;
    const double df = std::sqrt(1.0 + p.wave.h_plus(tau));
    const double step = f / df;
    tau -= step;
    if (tau < 0.0) tau = 0.0;
    if (std::abs(step) <= 1e-15 * std::max(tau, 1e-300)) return tau;
  }
  throw NumericalError("tau_of_chi Newton iteration stalled", 1e-15, 1.0);
}

double sound_speed_of_tau(double tau, const ChartParams& p, ChartMode mode) {
  if (!(tau > 0.0)) throw ValidationError("sound_speed_of_tau requires tau > 0");
  const double a = p.wave.a_plus, w = p.wave.omega;
  const double pre = p.c * p.cs0 / p.ell();
  if (mode == ChartMode::exact) {
    return pre * (2.0 * w * tau + a * (1.0 - std::cos(w * tau))) /
           (w * (1.0 + a * std::sin(w * tau)));
  }
  return (pre / w) *
         (2.0 * w * tau + a * (1.0 - std::cos(w * tau) - 2.0 * w * tau * std::sin(w * tau)));
}

namespace {

// Effective 1+1 metric (conformal factor kept) at a lab event inside the
// wedge, with cs evaluated on the engineered schedule.
void effective_lab_metric(double t, double x, const ChartParams& p, double out[2][2]) {
  const HyperbolicPoint hp = to_hyperbolic(t, x, p.c);
  const double tau = tau_of_chi(hp.chi, p);
  CondensateParams cond;
  cond.rho = p.rho0;
  cond.cs = sound_speed_of_tau(tau, p, ChartMode::exact);
  const Metric4 eff = acoustic_metric(minkowski(p.c), cond,
                                      velocity_profile_lab(hp.zeta, p.c), p.c,
                                      /*keep_conformal=*/true);
  out[0][0] = eff(0, 0);
  out[0][1] = eff(0, 1);
  out[1][0] = eff(1, 0);
  out[1][1] = eff(1, 1);
}

// d(map)/du at u by central differences with one Richardson extrapolation:
// D(h) = (f(u+h) - f(u-h)) / 2h,  D* = (4 D(h/2) - D(h)) / 3.
template <typename F>
void richardson_derivative(const F& f, double u, double h, double out[2]) {
  double pa[2], ma[2], pb[2], mb[2];
  f(u + h, pa);
  f(u - h, ma);
  f(u + 0.5 * h, pb);
  f(u - 0.5 * h, mb);
  for (int i = 0; i < 2; ++i) {
    const double d1 = (pa[i] - ma[i]) / (2.0 * h);
    const double d2 = (pb[i] - mb[i]) / h;
    out[i] = (4.0 * d2 - d1) / 3.0;
  }
}

PullbackReport run_pullback(const ChartParams& p, const PullbackGrid& grid) {
  check_chart(p);
  const double period = 2.0 * M_PI / p.wave.omega;
  double tau_min = grid.tau_min, tau_max = grid.tau_max;
  if (tau_min == 0.0 && tau_max == 0.0) {
    tau_min = 0.05 * period;
    tau_max = 2.0 * period;
  }
  double xi_min = grid.xi_min, xi_max = grid.xi_max;
  if (xi_min == 0.0 && xi_max == 0.0) {
    xi_min = -0.75 * p.ell();
    xi_max = 0.75 * p.ell();
  }
  if (!(tau_min > 0.0)) throw ValidationError("pullback grid requires tau_min > 0");
  if (!(tau_max > tau_min) || !(xi_max > xi_min) || grid.n_tau < 2 || grid.n_xi < 2)
    throw ValidationError("pullback grid is degenerate");

  // (tau, xi) -> (t, x) through chi(tau) [exact quadrature] and zeta(xi).
  const auto map = [&](double tau, double xi, double out[2]) {
    const double chi = chi_of_tau(tau, p, ChartMode::exact);
    const double zeta = zeta_of_xi(xi, p);
    from_hyperbolic(HyperbolicPoint{chi, zeta}, p.c, out[0], out[1]);
  };

  PullbackReport rep;
  rep.samples.reserve(static_cast<size_t>(grid.n_tau) * grid.n_xi);
  for (int i = 0; i < grid.n_tau; ++i) {
    const double tau = tau_min + (tau_max - tau_min) * i / (grid.n_tau - 1);
    for (int j = 0; j < grid.n_xi; ++j) {
      const double xi = xi_min + (xi_max - xi_min) * j / (grid.n_xi - 1);

      double ev[2];
      map(tau, xi, ev);
      double geff[2][2];
      effective_lab_metric(ev[0], ev[1], p, geff);

      const double h_tau = 1e-6 * std::max(std::abs(tau), 1.0 / p.wave.omega);
      const double h_xi = 1e-6 * std::max(std::abs(xi), p.ell());
      double dtau[2], dxi[2];  // columns of J = d(t,x)/d(tau,xi)
      richardson_derivative([&](double u, double o[2]) { map(u, xi, o); }, tau, h_tau, dtau);
      richardson_derivative([&](double u, double o[2]) { map(tau, u, o); }, xi, h_xi, dxi);

      // J^T G J on the two columns.
      const auto quad = [&](const double* ca, const double* cb) {
        double s = 0.0;
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) s += ca[a] * geff[a][b] * cb[b];
        return s;
      };
      PullbackSample smp;
      smp.tau = tau;
      smp.xi = xi;
      smp.res_tt = quad(dtau, dtau) - (-p.cs0 * p.cs0);
      smp.res_tx = quad(dtau, dxi);
      smp.res_xx = quad(dxi, dxi) - (1.0 + p.wave.h_plus(tau));
      rep.samples.push_back(smp);

      rep.max_abs_residual = std::max({rep.max_abs_residual, std::abs(smp.res_tt),
                                       std::abs(smp.res_tx), std::abs(smp.res_xx)});
      rep.max_offdiag_residual = std::max(rep.max_offdiag_residual, std::abs(smp.res_tx));
    }
  }
  return rep;
}

}  // namespace

PullbackReport verify_pullback(const ChartParams& p, const PullbackGrid& grid) {
  PullbackReport rep = run_pullback(p, grid);
  ChartParams flat = p;
  flat.wave.a_plus = 0.0;
  flat.wave.a_cross = 0.0;
  rep.fd_floor = run_pullback(flat, grid).max_abs_residual;
  return rep;
}

}  // namespace becgw
