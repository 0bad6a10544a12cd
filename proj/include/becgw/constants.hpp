#pragma once

// Physical constants (SI) and magnetic-field unit helpers shared by all
// modules. Everything internal works in SI; gauss appears only at the
// field-control boundary.

namespace becgw {

struct PhysicalConstants {
  double c = 299792458.0;          // speed of light, m/s (exact by definition)
  double G = 6.67430e-11;          // Newton constant, m^3 kg^-1 s^-2 (CODATA)
  double hbar = 1.054571817e-34;   // reduced Planck constant, J s (CODATA)
};

constexpr PhysicalConstants default_constants() { return PhysicalConstants{}; }

// 1 G = 1e-4 T by definition. Both directions use the exactly representable
// factor 1e4 so exactly convertible values (integer gauss, power-of-two
// multiples) round-trip bit-for-bit.
constexpr double gauss_to_tesla(double gauss) { return gauss / 1e4; }
constexpr double tesla_to_gauss(double tesla) { return tesla * 1e4; }

}  // namespace becgw
