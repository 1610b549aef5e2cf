#pragma once

#include "biphoton/amplitude.hpp"
#include "biphoton/shaper.hpp"

namespace biphoton {

// Sum-frequency coincidence rate: squared magnitude of the trapezoid sum of
// M(delta) M(-delta) xi(delta) over the signal grid, pairing each node with
// its exact mirror partner.
double g2(const BiphotonAmplitude& amp, const TransferFunction& tf);

// g2 divided by the all-pass rate of the same amplitude.
double g2_normalized(const BiphotonAmplitude& amp, const TransferFunction& tf);

// Independent check of the full pipeline: rebuilds the spectral envelope on
// a 16x denser grid, evaluates the mask analytically at +/-delta, and sums
// the product with a plain Riemann rule, normalized by its own all-pass sum.
// Shares no code with g2 / ideal_transfer beyond the dispersion primitives.
double g2_reference(const CrystalParams& crystal, const MaskSpec& spec,
                    const SpectralGrid& grid, int dense_factor = 16);

}  // namespace biphoton
