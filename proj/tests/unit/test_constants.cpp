#include <doctest.h>

#include <cmath>

#include "becgw/constants.hpp"
#include "becgw/errors.hpp"

using namespace becgw;

TEST_CASE("default constants carry the CODATA/SI values") {
  const PhysicalConstants k = default_constants();
  CHECK(k.c == 299792458.0);  // exact by definition of the metre
  CHECK(k.G == 6.67430e-11);
  CHECK(k.hbar == 1.054571817e-34);
}

TEST_CASE("gauss/tesla conversion is 1e4 by definition") {
  CHECK(gauss_to_tesla(10000.0) == 1.0);
  CHECK(tesla_to_gauss(1.0) == 10000.0);
  CHECK(gauss_to_tesla(1.0) == 1e-4);
}

TEST_CASE("gauss round-trip is exact on the binary-representable family") {
  // 1e4 = 2^4 * 5^4, so g/1e4 is exactly representable iff 5^4 divides g;
  // every multiple of 625 round-trips bitwise.
  for (double g : {625.0, 1250.0, 10000.0, 4375.0, 625.0 * 123456.0, 0.0})
    CHECK(tesla_to_gauss(gauss_to_tesla(g)) == g);
}

TEST_CASE("gauss round-trip stays within one rounding for arbitrary values") {
  for (double g : {3.0, 1007.4, 0.21, 1465.8, 29.0, 123.456, 9.9e5}) {
    const double rt = tesla_to_gauss(gauss_to_tesla(g));
    CHECK(std::abs(rt - g) <= 4.5e-16 * g);  // two roundings, each <= 2^-53 rel
  }
}

TEST_CASE("numerical error carries requested and achieved accuracy") {
  const NumericalError e("step control stalled", 1e-10, 3e-7);
  CHECK(e.requested() == 1e-10);
  CHECK(e.achieved() == 3e-7);
  CHECK(std::string(e.what()).find("step control stalled") != std::string::npos);
}
