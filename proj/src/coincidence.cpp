#include "biphoton/coincidence.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include "biphoton/errors.hpp"
#include "biphoton/units.hpp"

namespace biphoton {

namespace {

double g2_raw(const BiphotonAmplitude& amp, const std::vector<std::complex<double>>& m) {
  const SpectralGrid& g = amp.grid;
  std::complex<double> acc = 0.0;
  for (int j = 1; j < g.n; ++j) {
    const std::size_t js = static_cast<std::size_t>(j);
    const std::size_t jm = static_cast<std::size_t>(g.mirror(j));
    acc += g.weight(j) * m[js] * m[jm] * amp.xi[js];
  }
  return std::norm(acc * g.domega());
}

}  // namespace

double g2(const BiphotonAmplitude& amp, const TransferFunction& tf) {
  if (tf.grid.n != amp.grid.n || tf.grid.omega_pc != amp.grid.omega_pc ||
      tf.grid.half_span != amp.grid.half_span)
    throw config_error("g2: transfer function and amplitude use different grids");
  return g2_raw(amp, tf.m);
}

double g2_normalized(const BiphotonAmplitude& amp, const TransferFunction& tf) {
  const std::vector<std::complex<double>> ones(amp.xi.size(), 1.0);
  const double norm = g2_raw(amp, ones);
  if (norm == 0.0) throw numeric_error("g2_normalized: all-pass rate vanishes");
  return g2(amp, tf) / norm;
}

double g2_reference(const CrystalParams& crystal, const MaskSpec& spec,
                    const SpectralGrid& grid, int dense_factor) {
  if (dense_factor < 1) throw config_error("g2_reference: dense_factor must be >= 1");
  const long n = static_cast<long>(grid.n) * dense_factor;
  const double dw = 2.0 * grid.half_span / static_cast<double>(n);
  const double omega0 = grid.center();

  // Fresh transcription of the mask definitions, deliberately not sharing
  // mask_value, evaluated at the signal (+delta) and idler (-delta) legs.
  const auto mask_at = [&](const MaskSpec& s, double delta, auto&& self) -> std::complex<double> {
    using cd = std::complex<double>;
    switch (s.kind) {
      case MaskKind::all_pass:
        return 1.0;
      case MaskKind::edge:
        return delta > s.position ? 1.0 : 0.0;
      case MaskKind::slice:
        return std::abs(delta - s.position) >= s.width / 2.0 ? 1.0 : 0.0;
      case MaskKind::grating: {
        const double fr = (delta - s.position) / s.period;
        const double frac = fr - std::floor(fr);
        return (frac > 0.0 && frac < 0.5) ? 1.0 : 0.0;
      }
      case MaskKind::quadratic_phase:
        return std::exp(cd(0.0, 0.5 * s.phi2 * delta * delta));
      case MaskKind::v_phase:
        return std::exp(cd(0.0, s.slope * std::abs(delta)));
      case MaskKind::interferometer:
        return 0.5 * (1.0 + std::exp(cd(0.0, -(omega0 + delta) * s.tau +
                                              (1.0 - s.gamma_ratio) * omega0 * s.tau -
                                              s.phi)));
      case MaskKind::compose: {
        cd v = 1.0;
        for (const auto& part : s.parts) v *= self(part, delta, self);
        return v;
      }
    }
    throw config_error("g2_reference: unknown mask kind");
  };

  // Envelope via its own sinc evaluation (series-free: the dense grid never
  // hits the removable point exactly except at zero detuning).
  std::vector<double> xi(static_cast<std::size_t>(n));
  double peak = 0.0;
  for (long k = 0; k < n; ++k) {
    const double delta = (k - n / 2) * dw;
    const double arg = phase_mismatch(crystal, omega0 + delta, grid.omega_pc) *
                       crystal.length_mm / 2.0;
    const double v = arg == 0.0 ? 1.0 : std::sin(arg) / arg;
    xi[static_cast<std::size_t>(k)] = v;
    peak = std::max(peak, std::abs(v));
  }
  if (peak == 0.0) throw numeric_error("g2_reference: envelope vanishes");

  std::complex<double> acc = 0.0;
  double acc_ones = 0.0;
  for (long k = 0; k < n; ++k) {
    const double delta = (k - n / 2) * dw;
    const double x = xi[static_cast<std::size_t>(k)] / peak;
    acc += mask_at(spec, delta, mask_at) * mask_at(spec, -delta, mask_at) * x;
    acc_ones += x;
  }
  const double ones = std::norm(std::complex<double>(acc_ones) * dw);
  if (ones == 0.0) throw numeric_error("g2_reference: all-pass rate vanishes");
  return std::norm(acc * dw) / ones;
}

}  // namespace biphoton
