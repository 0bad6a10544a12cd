#pragma once
// Far-field wave parameters for a circular compact binary, and matching of
// the resulting drive frequency onto the phonon spectrum of a boxed
// condensate. All inputs SI: masses kg, separations/distances m.

#include "becgw/constants.hpp"
#include "becgw/dynamics.hpp"

namespace becgw {

struct BinarySource {
  double mass_primary = 0.0;    // kg
  double mass_secondary = 0.0;  // kg
  double separation = 0.0;      // orbital separation, m
  double distance = 0.0;        // observer distance R, m
};

struct BinaryWave {
  double a_plus = 0.0;      // strain amplitude at the observer
  double omega = 0.0;       // wave angular frequency (= 2 x orbital), rad/s
  double wavelength = 0.0;  // 2 pi c / omega, m
  bool far_field_ok = false;  // distance > 10 wavelengths
};

// Quadrupole-order amplitude a_plus = 4 G^2 m M / (c^4 R r) and wave frequency
// omega = 2 sqrt(G (m + M) / r^3) for a circular binary viewed face-on.
BinaryWave binary_wave_params(const BinarySource& s,
                              const PhysicalConstants& pc = default_constants());

struct ResonanceMatch {
  int mode = 0;            // phonon mode index n whose 2*omega_n is closest
  double omega_mode = 0.0;  // omega_n of that mode
  double mismatch = 0.0;   // |omega - 2 omega_n| / omega
  double matched_length = 0.0;  // box length L* putting mode n exactly on resonance
};

// Picks the mode n minimizing |omega - 2 omega_n| (ties resolve to the lower
// n) and reports the box length L* = 2 n pi cs0 / omega that would tune that
// mode onto exact parametric resonance.
ResonanceMatch resonance_match(const BinaryWave& w, const ModeBasis& basis);

}  // namespace becgw
