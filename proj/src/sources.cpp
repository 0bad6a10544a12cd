#include "becgw/sources.hpp"

#include <cmath>

#include "becgw/errors.hpp"

namespace becgw {

BinaryWave binary_wave_params(const BinarySource& s, const PhysicalConstants& pc) {
  if (!(s.mass_primary > 0.0) || !(s.mass_secondary > 0.0))
    throw ValidationError("source: both masses must be > 0");
  if (!(s.separation > 0.0)) throw ValidationError("source.separation must be > 0");
  if (!(s.distance > 0.0)) throw ValidationError("source.distance must be > 0");

  BinaryWave w;
  const double c2 = pc.c * pc.c;
  w.a_plus = 4.0 * pc.G * pc.G * s.mass_primary * s.mass_secondary /
             (c2 * c2 * s.distance * s.separation);
  w.omega = 2.0 * std::sqrt(pc.G * (s.mass_primary + s.mass_secondary) /
                            (s.separation * s.separation * s.separation));
  w.wavelength = 2.0 * M_PI * pc.c / w.omega;
  w.far_field_ok = s.distance > 10.0 * w.wavelength;
  return w;
}

ResonanceMatch resonance_match(const BinaryWave& w, const ModeBasis& basis) {
  if (!(w.omega > 0.0)) throw ValidationError("resonance_match: wave omega must be > 0");
  if (basis.n_modes < 1) throw ValidationError("resonance_match: basis has no modes");

  ResonanceMatch m;
  double best = -1.0;
  for (int n = 1; n <= basis.n_modes; ++n) {
    const double gap = std::abs(w.omega - 2.0 * basis.omega(n));
    if (best < 0.0 || gap < best) {  // strict < keeps ties at the lower n
      best = gap;
      m.mode = n;
      m.omega_mode = basis.omega(n);
    }
  }
  m.mismatch = best / w.omega;
  m.matched_length = 2.0 * m.mode * M_PI * basis.cs0 / w.omega;
  return m;
}

}  // namespace becgw
