#pragma once
// Magnetic-field schedule planning for sound-speed modulation near a Feshbach
// resonance. The scattering length follows the standard dispersive profile
//   a(B) = a_bg * (1 - width / (B - b_res)),
// and since cs^2 is proportional to a, a small sinusoidal field excursion
// delta_b around an operating point b_op produces a fractional sound-speed
// modulation that mimics a passing plus-polarized wave of amplitude a_plus.
//
// Unit conventions: magnetic fields are in gauss throughout this module
// (convert via constants.hpp); scattering lengths in meters; the drive
// frequency omega in rad/s.

#include <string>

#include "becgw/constants.hpp"

namespace becgw {

struct FeshbachParams {
  double a_bg = 0.0;   // background scattering length, m
  double b_res = 0.0;  // resonance position, gauss
  double width = 0.0;  // resonance width, gauss
  double b_op = 0.0;   // operating point, gauss
};

// Throws ValidationError unless widths/ops are finite, width != 0, and the
// operating point sits strictly off both the pole (b_res) and the zero
// crossing (b_res + width) of a(B).
void check_feshbach(const FeshbachParams& p);

// a(B) = a_bg (1 - width / (B - b_res)); throws on B == b_res.
double scattering_length(const FeshbachParams& p, double b_gauss);

// Interaction coupling g = 4 pi hbar^2 a / m_a for atoms of mass m_a (kg).
double coupling_strength(double a, double m_a,
                         const PhysicalConstants& pc = default_constants());

// Speed of sound cs = sqrt(g n / m_a) for condensate density n (1/m^3).
double sound_speed_from_density(double n, double a, double m_a,
                                const PhysicalConstants& pc = default_constants());

// d(ln a)/d(ln B) evaluated at the operating point:
//   pf = b_op * width / ((b_op - b_res - width) * (b_op - b_res)).
// A fractional field wiggle delta_b (so B(t) = b_op (1 + delta_b sin Omega t))
// then gives, to first order, an effective strain amplitude a_plus = pf * delta_b.
double amplitude_prefactor(const FeshbachParams& p);

// First-order effective strain amplitude for a given fractional excursion.
double simulated_amplitude(const FeshbachParams& p, double delta_b);

struct FieldSchedule {
  FeshbachParams params;
  double delta_b = 0.0;          // fractional field excursion
  double excursion_gauss = 0.0;  // |b_op * delta_b|
  double a_plus = 0.0;           // target strain amplitude the schedule realizes
  double omega = 0.0;            // drive angular frequency, rad/s
  // Sign/phase bookkeeping. amplitude_prefactor is negative for an operating
  // point above the zero crossing, so realizing a POSITIVE a_plus sin(Omega t)
  // in the sound speed can require the field wiggle to carry the opposite
  // sign, equivalently a half-period phase offset in B(t).
  std::string phase_note;
  // Worst relative deviation between the fully nonlinear cs(t)/cs0 modulation
  // realized by this schedule and the first-order target over one period.
  double validation_deviation = 0.0;
  // min distance-to-pole-or-zero / excursion; > safety_factor by construction.
  double safety_margin = 0.0;
};

// Inverts simulated_amplitude for delta_b, checks the excursion keeps the
// field at least `safety_factor` excursions away from both the pole and the
// zero crossing of a(B), and validates the realized modulation against the
// first-order target (the deviation is O(delta_b^2) and is reported, not
// thresholded). Throws ValidationError when the request is unrealizable.
FieldSchedule plan_field_schedule(const FeshbachParams& p, double a_plus, double omega,
                                  double safety_factor = 10.0);

}  // namespace becgw
