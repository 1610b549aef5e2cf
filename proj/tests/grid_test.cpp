// Spectral grid construction: exact node placement and mirror pairing.

#include "doctest.h"

#include <vector>

#include "biphoton/errors.hpp"
#include "biphoton/grid.hpp"

using namespace biphoton;

TEST_CASE("make_grid validates node count and span") {
  CHECK_THROWS_AS(make_grid(3.54, 0.06, 255), config_error);   // not a power of two
  CHECK_THROWS_AS(make_grid(3.54, 0.06, 300), config_error);
  CHECK_THROWS_AS(make_grid(3.54, 0.06, 128), config_error);   // too few nodes
  CHECK_THROWS_AS(make_grid(3.54, 0.0, 4096), config_error);
  CHECK_THROWS_AS(make_grid(3.54, -0.1, 4096), config_error);
  const SpectralGrid g = make_grid(3.54, 0.06, 256);
  CHECK(g.n == 256);
  CHECK(g.omega_pc == 3.54);
  CHECK(g.half_span == 0.06);
}

TEST_CASE("grid nodes sit on exact dyadic detunings with exact mirrors") {
  const SpectralGrid g = make_grid(3.540698434791, 0.0625, 4096);
  CHECK(g.center() == g.omega_pc / 2.0);
  CHECK(g.domega() == 2.0 * g.half_span / g.n);
  // the center node is exactly zero detuning
  CHECK(g.delta(g.n / 2) == 0.0);
  CHECK(g.delta(0) == -g.half_span);
  // mirror nodes are exact negatives: (j - n/2) and (n - j - n/2) are
  // opposite integers scaled by the same step
  for (int j = 1; j < g.n; j += 311) {
    CHECK(g.mirror(j) == g.n - j);
    CHECK(g.delta(j) + g.delta(g.mirror(j)) == 0.0);
    CHECK(g.omega(j) == g.center() + g.delta(j));
  }
  CHECK(g.mirror(0) == 0);
}

TEST_CASE("trapezoid weights drop the unpaired node and halve the ends") {
  const SpectralGrid g = make_grid(3.54, 0.05, 512);
  CHECK(g.weight(0) == 0.0);
  CHECK(g.weight(1) == 0.5);
  CHECK(g.weight(g.n - 1) == 0.5);
  CHECK(g.weight(2) == 1.0);
  CHECK(g.weight(g.n / 2) == 1.0);
  // weights integrate the span between the first and last node
  double total = 0.0;
  for (int j = 0; j < g.n; ++j) total += g.weight(j) * g.domega();
  CHECK(total == doctest::Approx(2.0 * g.half_span - 2.0 * g.domega()).epsilon(1e-13));
}
