#pragma once

#include <complex>
#include <vector>

#include "biphoton/dispersion.hpp"
#include "biphoton/grid.hpp"

namespace biphoton {

// Joint spectral amplitude of the down-converted pair, sampled on a signal
// grid and peak-normalized. With compensate the intrinsic phase of the
// phase-matching response is removed entirely, leaving the real envelope
// sinc(dk L / 2); without it the amplitude carries the propagation factor
// exp(-i dk L / 2) as well.
struct BiphotonAmplitude {
  SpectralGrid grid;
  std::vector<std::complex<double>> xi;
  bool compensated = true;
};

BiphotonAmplitude spdc_amplitude(const CrystalParams& crystal, const SpectralGrid& grid,
                                 bool compensate = true);

// Intensity FWHM of |xi|^2 converted to nm at the degenerate wavelength.
double spectrum_fwhm_nm(const BiphotonAmplitude& amp);

// FWHM of |xi| in rad/fs; the shaper aperture is sized against this.
double amplitude_fwhm_radfs(const BiphotonAmplitude& amp);

// Crystal length (mm) whose degenerate spectrum has the target intensity
// FWHM. Bisects [0.1, 50] mm on a dedicated wide measurement grid
// (half_span 0.9 rad/fs, 16384 points); only omega_pc is taken from grid.
// Throws numeric_error if the target is outside the bracket.
double calibrate_length(const CrystalParams& crystal, const SpectralGrid& grid,
                        double target_fwhm_nm);

// Detuning (rad/fs) of the first zero of the phase-matching envelope; the
// default simulation grid spans exactly this main lobe.
double main_lobe_half_span(const CrystalParams& crystal, double omega_pc);

// Least-squares removal of the quadratic spectral phase of xi (weights
// |xi|^2), for cleaning an uncompensated amplitude after the fact.
BiphotonAmplitude remove_quadratic_phase(const BiphotonAmplitude& amp);

}  // namespace biphoton
