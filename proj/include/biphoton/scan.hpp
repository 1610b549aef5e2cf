#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "biphoton/amplitude.hpp"
#include "biphoton/coincidence.hpp"
#include "biphoton/shaper.hpp"

namespace biphoton {

// Built-in experiments. Each sweeps one parameter of a mask family and
// records the normalized coincidence rate.
enum class Preset {
  edge_scan,          // knife edge swept across the spectrum
  slice_scan,         // narrow spectral block swept across the spectrum
  grating_scan,       // binary half-period grating swept over one period x2
  quadratic_scan,     // pair quadratic phase swept
  vphase_scan,        // antisymmetric linear phase (effective delay) swept
  interferometer_scan,        // common-path delay swept, carrier-resolved
  interferometer_envelope_scan,  // same sweep with the carrier term removed
  custom,
};

enum class SweptParam { position, width, period, phi2, slope, tau, phi };

struct ScanSpec {
  Preset preset = Preset::custom;
  MaskSpec base;
  SweptParam swept = SweptParam::position;
  double lo = 0.0;
  double hi = 0.0;
  int n_points = 0;
  TransferMode mode = TransferMode::ideal;
  // Interferometer sweeps also record the curve with phi shifted by pi.
  bool dual_phase = false;
};

struct ScanResult {
  ScanSpec spec;
  double omega_center = 0.0;  // degenerate frequency of the underlying grid
  std::vector<double> x;
  std::vector<double> g2;        // normalized rate (phi = base phi)
  std::vector<double> g2_phipi;  // filled when spec.dual_phase
};

// Fills ranges that depend on the measured spectrum (slice width, grating
// period). Throws config_error for Preset::custom.
ScanSpec preset_scan(Preset preset, const BiphotonAmplitude& amp);

// Mask of one sweep point: the base spec with the swept parameter set.
MaskSpec swept_mask(const ScanSpec& spec, double value);
const char* preset_name(Preset preset);
std::optional<Preset> preset_from_name(const std::string& name);
const char* swept_param_name(SweptParam p);

// Runs the sweep: compensated amplitude from crystal, one transfer function
// per point (ideal, or rendered to pixels and integrated through the
// physical kernel), all rates normalized by the all-pass rate.
ScanResult run_scan(const ScanSpec& spec, const CrystalParams& crystal,
                    const ShaperGeometry& geom, const SpectralGrid& grid);

// --- interferogram analysis ---

struct CarrierEstimate {
  bool present = false;
  double omega = 0.0;      // rad/fs
  double bin_width = 0.0;  // spectral resolution of the estimate
  int harmonic = 1;        // spectral line used (fundamental or second)
};

// Carrier of an even-in-delay interferogram from its half-spectrum (type-I
// discrete cosine transform of the mean-subtracted curve). A peak counts as
// a carrier only if it clears 3x the in-band median floor and 1% of the
// strongest non-DC line. Interferograms of rate curves carry most energy at
// twice the optical carrier, so when a subharmonic line exists at half the
// peak position the estimate is refined on the strong line and halved.
CarrierEstimate carrier_frequency(const ScanResult& result);

// Delay offset (fs) between the two phase curves of a dual-phase sweep,
// from the parabolic-refined peak of their cross-correlation (+/-40 steps).
double fringe_lag(const ScanResult& result);

// 10 log10 of the spectral energy ratio of the two interferograms inside
// (0.975, 1.025) x omega_center: how strongly the second sweep suppresses
// the optical carrier line.
double carrier_band_suppression_db(const ScanResult& with_carrier,
                                   const ScanResult& without_carrier);

double visibility(double rate_phi0, double rate_phipi);

// FWHM (fs) of a vphase_scan curve against the effective pair delay, which
// is twice the swept per-photon slope.
double coherence_time(const ScanResult& result);

// Cross-check of the coherence analysis on a synthetic Gaussian spectrum
// (known closed form via the Dawson integral). Returns the relative
// difference between the scanned and analytic FWHM.
struct GaussianSelfTest {
  double scan_fwhm_fs = 0.0;
  double analytic_fwhm_fs = 0.0;
  double rel_diff = 0.0;
  double half_crossing_u = 0.0;  // root of exp(-u^2)(1 + erfi^2(u/sqrt 2)) = 1/2
};
GaussianSelfTest gaussian_coherence_selftest(double sigma_radfs = 0.02);

// --- synthetic counting noise ---

struct NoiseModel {
  double dwell_s = 1.0;
  double peak_rate_cps = 3500.0;
  double dark_rate_cps = 100.0;
  std::uint64_t seed = 1;
};

struct SyntheticCounts {
  std::vector<std::uint64_t> primary;
  std::vector<std::uint64_t> phipi;  // filled for dual-phase scans
};

// Poisson counts with mean dwell * (peak * g2 + dark) per point, drawn from
// a fixed algorithm (inversion below mean 30, transformed rejection above)
// over std::mt19937_64 so equal seeds give identical sequences everywhere.
// Dual-phase scans draw both curves interleaved point by point.
SyntheticCounts synthesize_counts(const ScanResult& result, const NoiseModel& noise);

// --- systematic uncertainty ---

struct ScanBand {
  std::vector<double> lo, hi;
};

// Pointwise envelope of the scan over the four corners of (temperature
// +/- dt_kelvin) x (beam waist * (1 +/- waist_frac)).
ScanBand uncertainty_band(const ScanSpec& spec, const CrystalParams& crystal,
                          const ShaperGeometry& geom, const SpectralGrid& grid,
                          double dt_kelvin = 1.0, double waist_frac = 0.3);

}  // namespace biphoton
