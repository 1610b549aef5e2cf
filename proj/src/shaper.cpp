#include "biphoton/shaper.hpp"

#include <algorithm>
#include <cmath>

#include "biphoton/errors.hpp"
#include "biphoton/numerics.hpp"
#include "biphoton/units.hpp"

namespace biphoton {

std::complex<double> mask_value(const MaskSpec& spec, double delta, double omega_center) {
  using cd = std::complex<double>;
  switch (spec.kind) {
    case MaskKind::all_pass:
      return 1.0;
    case MaskKind::edge:
      return delta > spec.position ? 1.0 : 0.0;
    case MaskKind::slice:
      return std::abs(delta - spec.position) >= spec.width / 2.0 ? 1.0 : 0.0;
    case MaskKind::grating: {
      if (spec.period <= 0.0) throw config_error("grating mask needs a positive period");
      const double fr = (delta - spec.position) / spec.period;
      const double frac = fr - std::floor(fr);
      return (frac > 0.0 && frac < 0.5) ? 1.0 : 0.0;
    }
    case MaskKind::quadratic_phase:
      return std::exp(cd(0.0, spec.phi2 / 2.0 * delta * delta));
    case MaskKind::v_phase:
      return std::exp(cd(0.0, spec.slope * std::abs(delta)));
    case MaskKind::interferometer: {
      const double omega = omega_center + delta;
      const double arg = -omega * spec.tau +
                         (1.0 - spec.gamma_ratio) * omega_center * spec.tau - spec.phi;
      return 0.5 * (1.0 + std::exp(cd(0.0, arg)));
    }
    case MaskKind::compose: {
      cd v = 1.0;
      for (const auto& part : spec.parts) v *= mask_value(part, delta, omega_center);
      return v;
    }
  }
  throw config_error("mask_value: unknown mask kind");
}

double frequency_to_position(const ShaperGeometry& geom, double omega, double omega_c) {
  return geom.dispersion_scale() * (omega - omega_c);
}

ShaperGeometry calibrate_geometry(ShaperGeometry base, const BiphotonAmplitude& amp,
                                  double fill_fraction) {
  if (!(fill_fraction > 0.0 && fill_fraction <= 1.0))
    throw config_error("calibrate_geometry: fill_fraction must be in (0, 1]");
  if (base.gamma <= 0.0)
    throw config_error("calibrate_geometry: geometry needs a positive gamma");
  base.k_c = amp.grid.center() / kSpeedOfLightUmPerFs;
  const double span_um = fill_fraction * base.n_pixels * base.pitch_um;
  const double scale = span_um / amplitude_fwhm_radfs(amp);  // um per rad/fs
  base.focal_mm = scale * base.k_c / ((base.magnification + 1.0) * base.gamma) / 1000.0;
  return base;
}

PixelMask render_mask(const MaskSpec& spec, const ShaperGeometry& geom,
                      const SpectralGrid& grid) {
  PixelMask mask;
  mask.n_pixels = geom.n_pixels;
  mask.pitch_um = geom.pitch_um;
  mask.center_offset_px = geom.center_offset_px;
  mask.t.resize(static_cast<std::size_t>(geom.n_pixels));
  const double scale = geom.dispersion_scale();
  // !(> 0) also catches the NaN of a default-constructed geometry
  if (!(scale > 0.0)) throw config_error("render_mask: geometry is not calibrated");
  for (int p = 0; p < geom.n_pixels; ++p) {
    const double u =
        (p - (geom.n_pixels - 1) / 2.0 - geom.center_offset_px) * geom.pitch_um;
    mask.t[static_cast<std::size_t>(p)] = mask_value(spec, -u / scale, grid.center());
  }
  return mask;
}

TransferFunction ideal_transfer(const MaskSpec& spec, const SpectralGrid& grid) {
  TransferFunction tf;
  tf.grid = grid;
  tf.mode = TransferMode::ideal;
  tf.m.resize(static_cast<std::size_t>(grid.n));
  for (int j = 0; j < grid.n; ++j)
    tf.m[static_cast<std::size_t>(j)] = mask_value(spec, grid.delta(j), grid.center());
  return tf;
}

namespace {

// integral of exp(-x^2/w^2 - i chi x^2) over [a, b], subdivided to <= w and
// with the node count raised for rapid quadratic-phase variation.
std::complex<double> spot_integral(double a, double b, double w, double chi,
                                   double node_density) {
  const int nsub = std::max(1, static_cast<int>(std::ceil((b - a) / w)));
  const double chirp_rad = std::abs(chi) * std::abs(b * b - a * a);
  int order = std::max(12, static_cast<int>(std::ceil(8.0 * chirp_rad / nsub)));
  order = static_cast<int>(std::ceil(order * node_density));
  const Quadrature& q = gauss_legendre(order);
  std::complex<double> acc = 0.0;
  for (int s = 0; s < nsub; ++s) {
    const double sa = a + (b - a) * s / nsub;
    const double sb = a + (b - a) * (s + 1) / nsub;
    const double half = 0.5 * (sb - sa);
    const double mid = 0.5 * (sa + sb);
    std::complex<double> seg = 0.0;
    for (std::size_t k = 0; k < q.nodes.size(); ++k) {
      const double x = mid + half * q.nodes[k];
      seg += q.weights[k] *
             std::exp(std::complex<double>(-x * x / (w * w), -chi * x * x));
    }
    acc += half * seg;
  }
  return acc;
}

}  // namespace

PixelKernel::PixelKernel(const ShaperGeometry& geom, const SpectralGrid& grid,
                         double node_density) {
  if (geom.beam_waist_um <= 0.0)
    throw config_error("effective transfer needs a positive beam waist");
  if (geom.n_pixels <= 0 || geom.pitch_um <= 0.0)
    throw config_error("effective transfer needs a pixel aperture");
  if (node_density < 1.0)
    throw config_error("node_density must be >= 1");
  grid_ = grid;
  n_pixels_ = geom.n_pixels;
  rows_.resize(static_cast<std::size_t>(grid.n));

  const double w = geom.beam_waist_um;
  const double m = geom.magnification;
  const double chi = geom.chirp_rate();
  const double scale = geom.dispersion_scale();
  if (scale <= 0.0) throw config_error("effective transfer: geometry is not calibrated");
  const double xmax = 4.0 * w;
  // Pixel p spans mask-plane coordinates [left_edge(p), left_edge(p) + pitch).
  const double aperture_left =
      (-geom.n_pixels / 2.0 - geom.center_offset_px) * geom.pitch_um;
  const std::complex<double> norm = spot_integral(-xmax, xmax, w, chi, node_density);

  for (int j = 0; j < grid.n; ++j) {
    const double X = scale * grid.delta(j);
    auto& row = rows_[static_cast<std::size_t>(j)];
    // Input-plane panel boundaries where the imaged spot crosses pixel edges:
    // the mask sees u = -m x - X.
    std::vector<double> bounds = {-xmax, xmax};
    const double u_lo = std::min(-m * xmax - X, m * xmax - X);
    const double u_hi = std::max(-m * xmax - X, m * xmax - X);
    const int k0 = static_cast<int>(std::floor((u_lo - aperture_left) / geom.pitch_um)) - 1;
    const int k1 = static_cast<int>(std::ceil((u_hi - aperture_left) / geom.pitch_um)) + 1;
    for (int k = k0; k <= k1; ++k) {
      const double xb = -(aperture_left + k * geom.pitch_um + X) / m;
      if (xb > -xmax && xb < xmax) bounds.push_back(xb);
    }
    std::sort(bounds.begin(), bounds.end());
    for (std::size_t s = 0; s + 1 < bounds.size(); ++s) {
      const double a = bounds[s], b = bounds[s + 1];
      if (b - a < 1e-12) continue;
      const double u_mid = -m * 0.5 * (a + b) - X;
      const double rel = (u_mid - aperture_left) / geom.pitch_um;
      if (rel < 0.0 || rel >= geom.n_pixels) continue;  // beyond the aperture: opaque
      const int p = static_cast<int>(rel);
      row.push_back({p, spot_integral(a, b, w, chi, node_density) / norm});
    }
  }
}

TransferFunction PixelKernel::apply(const PixelMask& mask) const {
  if (mask.n_pixels != n_pixels_)
    throw config_error("effective transfer: mask pixel count does not match kernel");
  TransferFunction tf;
  tf.grid = grid_;
  tf.mode = TransferMode::physical;
  tf.m.resize(rows_.size());
  for (std::size_t j = 0; j < rows_.size(); ++j) {
    std::complex<double> acc = 0.0;
    for (const Entry& e : rows_[j])
      acc += e.weight * mask.t[static_cast<std::size_t>(e.pixel)];
    tf.m[j] = acc;
  }
  return tf;
}

TransferFunction effective_transfer(const PixelMask& mask, const ShaperGeometry& geom,
                                    const SpectralGrid& grid, double node_density) {
  return PixelKernel(geom, grid, node_density).apply(mask);
}

}  // namespace biphoton
