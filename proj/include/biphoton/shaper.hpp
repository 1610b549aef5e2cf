#pragma once

#include <complex>
#include <vector>

#include "biphoton/amplitude.hpp"
#include "biphoton/grid.hpp"

namespace biphoton {

// 4f zero-dispersion line: prism pair with dispersion rate gamma, focusing
// optic of focal length focal_mm, one-to-one relay with magnification m onto
// a reflective pixelated modulator in the Fourier plane. The detuning-to-
// position map is X(delta) = dispersion_scale() * delta.
struct ShaperGeometry {
  double focal_mm = 0.0;
  double magnification = 1.0;
  double gamma = 0.0;        // rad fs / um
  double k_c = 0.0;          // carrier wavenumber, rad/um
  double beam_waist_um = 200.0;
  double pitch_um = 100.0;
  int n_pixels = 640;
  double center_offset_px = 0.0;

  double prism_separation_mm() const { return focal_mm * (magnification + 1.0); }
  // um of Fourier-plane displacement per rad/fs of detuning.
  double dispersion_scale() const {
    return focal_mm * 1000.0 * (magnification + 1.0) * gamma / k_c;
  }
  // Residual quadratic phase rate (rad/um^2) of the focusing kernel.
  double chirp_rate() const { return k_c * magnification / (focal_mm * 1000.0); }
  double aperture_half_um() const { return n_pixels * pitch_um / 2.0; }
};

enum class MaskKind {
  all_pass,
  edge,             // passes delta > position
  slice,            // blocks |delta - position| < width / 2
  grating,          // passes frac((delta - position) / period) in (0, 1/2)
  quadratic_phase,  // exp(i (phi2 / 2) delta^2) per photon
  v_phase,          // exp(i slope |delta|) per photon
  interferometer,   // (1 + exp(-i omega tau + i (1 - gamma_ratio) omega_c tau
                    //          - i phi)) / 2 at absolute omega = omega_c + delta
  compose,          // product of parts
};

struct MaskSpec {
  MaskKind kind = MaskKind::all_pass;
  double position = 0.0;     // rad/fs
  double width = 0.0;        // rad/fs
  double period = 0.0;       // rad/fs
  double phi2 = 0.0;         // fs^2, per photon pair (each photon gets phi2/2)
  double slope = 0.0;        // fs
  double tau = 0.0;          // fs
  double gamma_ratio = 1.0;  // carrier-scaling ratio of the interferometer
  double phi = 0.0;          // rad
  std::vector<MaskSpec> parts;
};

// Single-photon transmission of the programmed mask at detuning delta from
// omega_center (needed for masks written against absolute frequency).
std::complex<double> mask_value(const MaskSpec& spec, double delta, double omega_center);

// Per-pixel complex transmissions of the modulator.
struct PixelMask {
  int n_pixels = 0;
  double pitch_um = 0.0;
  double center_offset_px = 0.0;
  std::vector<std::complex<double>> t;
};

enum class TransferMode { ideal, physical };

// Complex spectral transfer sampled on the simulation grid.
struct TransferFunction {
  SpectralGrid grid;
  std::vector<std::complex<double>> m;
  TransferMode mode = TransferMode::ideal;
};

// Fourier-plane position (um) of absolute frequency omega.
double frequency_to_position(const ShaperGeometry& geom, double omega, double omega_c);

// Sets focal_mm so the spectrum's amplitude FWHM covers fill_fraction of the
// pixel aperture, and k_c to the carrier wavenumber of the grid center.
// gamma, magnification, waist and pixel layout are taken from base.
ShaperGeometry calibrate_geometry(ShaperGeometry base, const BiphotonAmplitude& amp,
                                  double fill_fraction);

// Samples the mask at each pixel center's detuning. The relay inverts the
// plane, so pixel center u maps to detuning -u / dispersion_scale().
PixelMask render_mask(const MaskSpec& spec, const ShaperGeometry& geom,
                      const SpectralGrid& grid);

// The mask evaluated directly on the grid: the infinite-resolution limit.
TransferFunction ideal_transfer(const MaskSpec& spec, const SpectralGrid& grid);

// Precomputed map from pixel transmissions to the grid transfer function.
// For each grid detuning the finite beam spot (Gaussian waist w truncated at
// |x| <= 4w) is integrated across the pixels it covers, including the
// residual quadratic phase of the focusing kernel; panels are split at pixel
// boundaries and subdivided to at most w, with at least 12 Gauss-Legendre
// nodes per panel and at least 8 per radian of quadratic phase. Weights are
// normalized by the unmasked spot integral, so an all-pass mask gives
// exactly 1 while the spot stays inside the aperture. The kernel depends
// only on geometry and grid; applying a mask is a sparse product.
class PixelKernel {
 public:
  PixelKernel(const ShaperGeometry& geom, const SpectralGrid& grid,
              double node_density = 1.0);
  TransferFunction apply(const PixelMask& mask) const;
  const SpectralGrid& grid() const { return grid_; }

 private:
  struct Entry {
    int pixel;
    std::complex<double> weight;
  };
  SpectralGrid grid_;
  int n_pixels_;
  std::vector<std::vector<Entry>> rows_;
};

// One-shot convenience wrapper around PixelKernel.
TransferFunction effective_transfer(const PixelMask& mask, const ShaperGeometry& geom,
                                    const SpectralGrid& grid, double node_density = 1.0);

}  // namespace biphoton
