#include "biphoton/amplitude.hpp"

#include <algorithm>
#include <cmath>

#include "biphoton/errors.hpp"
#include "biphoton/numerics.hpp"
#include "biphoton/units.hpp"

namespace biphoton {

BiphotonAmplitude spdc_amplitude(const CrystalParams& crystal, const SpectralGrid& grid,
                                 bool compensate) {
  BiphotonAmplitude amp;
  amp.grid = grid;
  amp.compensated = compensate;
  amp.xi.resize(static_cast<std::size_t>(grid.n));
  double peak = 0.0;
  for (int j = 0; j < grid.n; ++j) {
    const double arg = phase_mismatch(crystal, grid.omega(j), grid.omega_pc) *
                       crystal.length_mm / 2.0;
    std::complex<double> v = sinc(arg);
    if (!compensate) v *= std::exp(std::complex<double>(0.0, -arg));
    amp.xi[static_cast<std::size_t>(j)] = v;
    peak = std::max(peak, std::abs(v));
  }
  if (peak == 0.0) throw numeric_error("spdc_amplitude: envelope vanishes on the grid");
  for (auto& v : amp.xi) v /= peak;
  return amp;
}

namespace {

double fwhm_radfs_of(const BiphotonAmplitude& amp, bool intensity) {
  std::vector<double> xs(static_cast<std::size_t>(amp.grid.n));
  std::vector<double> ys(static_cast<std::size_t>(amp.grid.n));
  for (int j = 0; j < amp.grid.n; ++j) {
    xs[static_cast<std::size_t>(j)] = amp.grid.delta(j);
    const double m = std::abs(amp.xi[static_cast<std::size_t>(j)]);
    ys[static_cast<std::size_t>(j)] = intensity ? m * m : m;
  }
  return fwhm_linear(xs, ys);
}

}  // namespace

double spectrum_fwhm_nm(const BiphotonAmplitude& amp) {
  const double lambda_deg = lambda_um_from_omega(amp.grid.center());
  return fwhm_radfs_of(amp, true) * nm_per_radfs(lambda_deg);
}

double amplitude_fwhm_radfs(const BiphotonAmplitude& amp) {
  return fwhm_radfs_of(amp, false);
}

double calibrate_length(const CrystalParams& crystal, const SpectralGrid& grid,
                        double target_fwhm_nm) {
  if (target_fwhm_nm <= 0.0)
    throw config_error("calibrate_length: target FWHM must be positive");
  const SpectralGrid meas = make_grid(grid.omega_pc, 0.9, 16384);
  const auto fwhm_at = [&](double length_mm) {
    CrystalParams c = crystal;
    c.length_mm = length_mm;
    return spectrum_fwhm_nm(spdc_amplitude(c, meas, true));
  };
  double lo = 0.1, hi = 50.0;
  // FWHM shrinks monotonically with length.
  if (!(fwhm_at(lo) > target_fwhm_nm && fwhm_at(hi) < target_fwhm_nm))
    throw numeric_error("calibrate_length: target FWHM outside [0.1, 50] mm bracket");
  for (int iter = 0; iter < 80; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (fwhm_at(mid) > target_fwhm_nm)
      lo = mid;
    else
      hi = mid;
  }
  const double best = 0.5 * (lo + hi);
  if (std::abs(fwhm_at(best) - target_fwhm_nm) > 0.01 * target_fwhm_nm)
    throw numeric_error("calibrate_length: bisection did not reach 1% of target");
  return best;
}

double main_lobe_half_span(const CrystalParams& crystal, double omega_pc) {
  const double omega0 = omega_pc / 2.0;
  const auto arg_at = [&](double delta) {
    return phase_mismatch(crystal, omega0 + delta, omega_pc) * crystal.length_mm / 2.0 +
           kPi;
  };
  double lo = 1e-6, hi = 0.3;
  if (!(arg_at(lo) > 0.0 && arg_at(hi) < 0.0))
    throw numeric_error("main_lobe_half_span: first envelope zero not bracketed");
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (arg_at(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

BiphotonAmplitude remove_quadratic_phase(const BiphotonAmplitude& amp) {
  // Weighted least squares of unwrapped arg(xi) against 1, delta, delta^2.
  const std::size_t n = amp.xi.size();
  std::vector<double> phase(n, 0.0);
  double prev = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double p = std::arg(amp.xi[j]);
    if (j > 0) {
      while (p - prev > kPi) p -= kTwoPi;
      while (p - prev < -kPi) p += kTwoPi;
    }
    phase[j] = p;
    prev = p;
  }
  double s[5] = {0, 0, 0, 0, 0};
  double t[3] = {0, 0, 0};
  for (std::size_t j = 0; j < n; ++j) {
    const double w = std::norm(amp.xi[j]);
    const double x = amp.grid.delta(static_cast<int>(j));
    double xp = 1.0;
    for (int k = 0; k < 5; ++k, xp *= x) s[k] += w * xp;
    xp = 1.0;
    for (int k = 0; k < 3; ++k, xp *= x) t[k] += w * xp * phase[j];
  }
  // Solve the 3x3 normal equations by Cramer's rule.
  const double a11 = s[0], a12 = s[1], a13 = s[2];
  const double a22 = s[2], a23 = s[3], a33 = s[4];
  const double det = a11 * (a22 * a33 - a23 * a23) - a12 * (a12 * a33 - a23 * a13) +
                     a13 * (a12 * a23 - a22 * a13);
  if (det == 0.0) throw numeric_error("remove_quadratic_phase: singular fit");
  const double c0 = (t[0] * (a22 * a33 - a23 * a23) - a12 * (t[1] * a33 - a23 * t[2]) +
                     a13 * (t[1] * a23 - a22 * t[2])) /
                    det;
  const double c1 = (a11 * (t[1] * a33 - t[2] * a23) - t[0] * (a12 * a33 - a23 * a13) +
                     a13 * (a12 * t[2] - t[1] * a13)) /
                    det;
  const double c2 = (a11 * (a22 * t[2] - a23 * t[1]) - a12 * (a12 * t[2] - t[1] * a13) +
                     t[0] * (a12 * a23 - a22 * a13)) /
                    det;
  BiphotonAmplitude out = amp;
  for (std::size_t j = 0; j < n; ++j) {
    const double x = out.grid.delta(static_cast<int>(j));
    out.xi[j] *= std::exp(std::complex<double>(0.0, -(c0 + c1 * x + c2 * x * x)));
  }
  return out;
}

}  // namespace biphoton
