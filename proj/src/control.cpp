#include "becgw/control.hpp"

#include <algorithm>
#include <cmath>

#include "becgw/errors.hpp"

namespace becgw {

void check_feshbach(const FeshbachParams& p) {
  if (!std::isfinite(p.a_bg) || !std::isfinite(p.b_res) || !std::isfinite(p.width) ||
      !std::isfinite(p.b_op))
    throw ValidationError("feshbach: parameters must be finite");
  if (p.a_bg == 0.0) throw ValidationError("feshbach.a_bg must be nonzero");
  if (p.width == 0.0) throw ValidationError("feshbach.width must be nonzero");
  if (p.b_op == p.b_res)
    throw ValidationError("feshbach.b_op sits on the resonance pole");
  if (p.b_op == p.b_res + p.width)
    throw ValidationError("feshbach.b_op sits on the zero crossing of a(B)");
  if (scattering_length(p, p.b_op) <= 0.0)
    throw ValidationError(
        "feshbach.b_op gives a(B) <= 0 (condensate unstable at operating point)");
}

double scattering_length(const FeshbachParams& p, double b_gauss) {
  if (b_gauss == p.b_res)
    throw ValidationError("scattering_length: B on resonance pole");
  return p.a_bg * (1.0 - p.width / (b_gauss - p.b_res));
}

double coupling_strength(double a, double m_a, const PhysicalConstants& pc) {
  if (!(m_a > 0.0)) throw ValidationError("coupling_strength: atomic mass must be > 0");
  return 4.0 * M_PI * pc.hbar * pc.hbar * a / m_a;
}

double sound_speed_from_density(double n, double a, double m_a,
                                const PhysicalConstants& pc) {
  if (!(n > 0.0)) throw ValidationError("sound speed: density must be > 0");
  const double g = coupling_strength(a, m_a, pc);
  if (!(g > 0.0))
    throw ValidationError("sound speed: coupling must be > 0 (a > 0 required)");
  return std::sqrt(g * n / m_a);
}

double amplitude_prefactor(const FeshbachParams& p) {
  check_feshbach(p);
  return p.b_op * p.width / ((p.b_op - p.b_res - p.width) * (p.b_op - p.b_res));
}

double simulated_amplitude(const FeshbachParams& p, double delta_b) {
  return amplitude_prefactor(p) * delta_b;
}

FieldSchedule plan_field_schedule(const FeshbachParams& p, double a_plus, double omega,
                                  double safety_factor) {
  check_feshbach(p);
  if (!(omega > 0.0)) throw ValidationError("plan: omega must be > 0");
  if (!(std::abs(a_plus) > 0.0) || !(std::abs(a_plus) <= 0.1))
    throw ValidationError("plan: target amplitude must be nonzero and within |h| <= 0.1");
  if (!(safety_factor >= 1.0)) throw ValidationError("plan: safety_factor must be >= 1");

  const double pf = amplitude_prefactor(p);
  const double delta_b = a_plus / pf;  // exact inverse of simulated_amplitude
  const double excursion = std::abs(p.b_op * delta_b);

  const double dist_pole = std::abs(p.b_op - p.b_res);
  const double dist_zero = std::abs(p.b_op - p.b_res - p.width);
  const double dist = std::min(dist_pole, dist_zero);
  if (!(excursion * safety_factor < dist))
    throw ValidationError(
        "plan: field excursion of " + std::to_string(excursion) +
        " gauss comes within " + std::to_string(safety_factor) +
        "x of the resonance pole or zero crossing (headroom " + std::to_string(dist) +
        " gauss); reduce the amplitude or move the operating point");

  FieldSchedule s;
  s.params = p;
  s.delta_b = delta_b;
  s.excursion_gauss = excursion;
  s.a_plus = a_plus;
  s.omega = omega;
  s.safety_margin = dist / excursion;
  // B(t) = b_op*(1 + delta_b*sin(omega t)) modulates cs^2/cs0^2 = a(B)/a0 as
  // 1 + a_plus*sin(omega t) to first order. In the strain convention
  // cs(t) = cs0/sqrt(1 + h), that realizes h(t) = -a_plus*sin(omega t): the
  // metric strain lags the sound-speed modulation by half a period.
  s.phase_note =
      std::string("realized strain is h(t) = -a_plus*sin(omega*t), a half-period "
                  "offset from the sound-speed modulation; field wiggle sign is ") +
      (delta_b >= 0.0 ? "positive" : "negative") + " for this operating point";

  // Validate: the realized modulation is cs(t)^2/cs0^2 = a(B(t))/a(b_op),
  // exactly, against the first-order target 1 + a_plus*sin(omega t) on the
  // same phase that the planned wiggle actually produces.
  const double a0 = scattering_length(p, p.b_op);
  double worst = 0.0;
  const int samples = 256;
  for (int i = 0; i <= samples; ++i) {
    const double phase = std::sin(2.0 * M_PI * i / samples);
    const double b_t = p.b_op * (1.0 + delta_b * phase);
    const double ratio = scattering_length(p, b_t) / a0;  // (cs/cs0)^2 realized
    const double target = 1.0 + a_plus * phase;
    worst = std::max(worst, std::abs(ratio - target) / std::max(target, 0.5));
  }
  s.validation_deviation = worst;
  return s;
}

}  // namespace becgw
