#include <doctest.h>

#include <cmath>

#include "becgw/errors.hpp"
#include "becgw/sources.hpp"

using namespace becgw;
using doctest::Approx;

namespace {
BinarySource sun_earth() { return BinarySource{1.989e30, 5.972e24, 10.0, 1.0e7}; }
}  // namespace

TEST_CASE("sun/earth-mass binary at 10 m matches the reference arithmetic") {
  // References from 40-digit evaluation of a+ = 4 G^2 m M / (c^4 R r) and
  // omega = 2 sqrt(G (m + M) / r^3).
  const BinaryWave w = binary_wave_params(sun_earth());
  CHECK(w.a_plus == Approx(2.6202528927103648e-7).epsilon(1e-14));
  CHECK(w.omega == Approx(728703576.46767729).epsilon(1e-14));
  CHECK(w.wavelength == Approx(2.5849352578172853).epsilon(1e-14));
  CHECK(w.far_field_ok);  // 1e7 m >> 10 wavelengths
}

TEST_CASE("far-field flag trips inside ten wavelengths") {
  BinarySource s = sun_earth();
  s.distance = 20.0;  // ~7.7 wavelengths
  const BinaryWave w = binary_wave_params(s);
  CHECK_FALSE(w.far_field_ok);
  // Amplitude still scales as 1/R.
  CHECK(w.a_plus == Approx(2.6202528927103648e-7 * 1.0e7 / 20.0).epsilon(1e-12));
}

TEST_CASE("wave parameters validate the source") {
  CHECK_THROWS_AS(binary_wave_params(BinarySource{0.0, 1.0, 1.0, 1.0}), ValidationError);
  CHECK_THROWS_AS(binary_wave_params(BinarySource{1.0, -1.0, 1.0, 1.0}), ValidationError);
  CHECK_THROWS_AS(binary_wave_params(BinarySource{1.0, 1.0, 0.0, 1.0}), ValidationError);
  CHECK_THROWS_AS(binary_wave_params(BinarySource{1.0, 1.0, 1.0, -2.0}), ValidationError);
}

TEST_CASE("resonance match finds the mode with 2 omega_n nearest the drive") {
  const ModeBasis basis = build_basis(5, 1.0, 1.0);  // omega_n = n pi
  BinaryWave w;
  w.omega = 6.0 * M_PI;  // exactly 2 * omega_3
  const ResonanceMatch m = resonance_match(w, basis);
  CHECK(m.mode == 3);
  CHECK(m.omega_mode == Approx(3.0 * M_PI).epsilon(1e-15));
  CHECK(m.mismatch == Approx(0.0));
  // L* = 2 n pi cs0 / omega: retuning the box to L* puts the mode dead on.
  CHECK(m.matched_length == Approx(1.0).epsilon(1e-15));
}

TEST_CASE("resonance-match ties resolve to the lower mode") {
  const ModeBasis basis = build_basis(5, 1.0, 1.0);
  BinaryWave w;
  w.omega = 3.0 * M_PI;  // equidistant from 2 omega_1 and 2 omega_2
  const ResonanceMatch m = resonance_match(w, basis);
  CHECK(m.mode == 1);
  CHECK(m.mismatch == Approx(M_PI / (3.0 * M_PI)).epsilon(1e-15));
  CHECK(m.matched_length == Approx(2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("matched length scales the whole spectrum onto resonance") {
  const ModeBasis basis = build_basis(4, 5.0e-5, 0.005);
  BinaryWave w;
  w.omega = 1.9 * 2.0 * basis.omega(2);  // slightly off twice mode 2
  const ResonanceMatch m = resonance_match(w, basis);
  const ModeBasis retuned = build_basis(4, m.matched_length, basis.cs0);
  CHECK(2.0 * retuned.omega(m.mode) == Approx(w.omega).epsilon(1e-13));
}
