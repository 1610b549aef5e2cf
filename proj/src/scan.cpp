#include "biphoton/scan.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "biphoton/errors.hpp"
#include "biphoton/numerics.hpp"
#include "biphoton/units.hpp"

namespace biphoton {

namespace {

double spectrum_fwhm_radfs(const BiphotonAmplitude& amp) {
  const double lambda_deg = lambda_um_from_omega(amp.grid.center());
  return spectrum_fwhm_nm(amp) / nm_per_radfs(lambda_deg);
}

void set_swept(MaskSpec& spec, SweptParam p, double value) {
  switch (p) {
    case SweptParam::position: spec.position = value; return;
    case SweptParam::width: spec.width = value; return;
    case SweptParam::period: spec.period = value; return;
    case SweptParam::phi2: spec.phi2 = value; return;
    case SweptParam::slope: spec.slope = value; return;
    case SweptParam::tau: spec.tau = value; return;
    case SweptParam::phi: spec.phi = value; return;
  }
  throw config_error("unknown swept parameter");
}

}  // namespace

const char* preset_name(Preset preset) {
  switch (preset) {
    case Preset::edge_scan: return "fig2a";
    case Preset::slice_scan: return "fig2b";
    case Preset::grating_scan: return "fig2c";
    case Preset::quadratic_scan: return "fig3a";
    case Preset::vphase_scan: return "fig3b";
    case Preset::interferometer_scan: return "fig4a";
    case Preset::interferometer_envelope_scan: return "fig4b";
    case Preset::custom: return "custom";
  }
  throw config_error("unknown preset");
}

std::optional<Preset> preset_from_name(const std::string& name) {
  if (name == "fig2a" || name == "edge_scan") return Preset::edge_scan;
  if (name == "fig2b" || name == "slice_scan") return Preset::slice_scan;
  if (name == "fig2c" || name == "grating_scan") return Preset::grating_scan;
  if (name == "fig3a" || name == "quadratic_scan") return Preset::quadratic_scan;
  if (name == "fig3b" || name == "vphase_scan") return Preset::vphase_scan;
  if (name == "fig4a" || name == "interferometer_scan") return Preset::interferometer_scan;
  if (name == "fig4b" || name == "interferometer_envelope_scan")
    return Preset::interferometer_envelope_scan;
  if (name == "custom") return Preset::custom;
  return std::nullopt;
}

MaskSpec swept_mask(const ScanSpec& spec, double value) {
  MaskSpec ms = spec.base;
  set_swept(ms, spec.swept, value);
  return ms;
}

const char* swept_param_name(SweptParam p) {
  switch (p) {
    case SweptParam::position: return "position";
    case SweptParam::width: return "width";
    case SweptParam::period: return "period";
    case SweptParam::phi2: return "phi2";
    case SweptParam::slope: return "slope";
    case SweptParam::tau: return "tau";
    case SweptParam::phi: return "phi";
  }
  throw config_error("unknown swept parameter");
}

ScanSpec preset_scan(Preset preset, const BiphotonAmplitude& amp) {
  ScanSpec spec;
  spec.preset = preset;
  const double hs = amp.grid.half_span;
  switch (preset) {
    case Preset::edge_scan:
      spec.base.kind = MaskKind::edge;
      spec.swept = SweptParam::position;
      spec.lo = -hs;
      spec.hi = hs;
      spec.n_points = 81;
      return spec;
    case Preset::slice_scan:
      spec.base.kind = MaskKind::slice;
      spec.base.width = 0.1 * spectrum_fwhm_radfs(amp);
      spec.swept = SweptParam::position;
      spec.lo = -hs;
      spec.hi = hs;
      spec.n_points = 81;
      return spec;
    case Preset::grating_scan: {
      const double period = spectrum_fwhm_radfs(amp) / 2.0;
      spec.base.kind = MaskKind::grating;
      spec.base.period = period;
      spec.swept = SweptParam::position;
      spec.lo = 0.0;
      spec.hi = 2.0 * period;
      spec.n_points = 81;
      return spec;
    }
    case Preset::quadratic_scan:
      spec.base.kind = MaskKind::quadratic_phase;
      spec.swept = SweptParam::phi2;
      spec.lo = -4000.0;
      spec.hi = 4000.0;
      spec.n_points = 81;
      return spec;
    case Preset::vphase_scan:
      spec.base.kind = MaskKind::v_phase;
      spec.swept = SweptParam::slope;
      spec.lo = -300.0;
      spec.hi = 300.0;
      spec.n_points = 161;
      return spec;
    case Preset::interferometer_scan:
    case Preset::interferometer_envelope_scan:
      spec.base.kind = MaskKind::interferometer;
      spec.base.gamma_ratio = preset == Preset::interferometer_scan ? 1.0 : 0.0;
      spec.swept = SweptParam::tau;
      spec.lo = 0.0;
      spec.hi = 599.75;  // step 0.25 fs
      spec.n_points = 2400;
      spec.dual_phase = true;
      return spec;
    case Preset::custom:
      throw config_error("preset_scan: custom scans must be specified explicitly");
  }
  throw config_error("unknown preset");
}

ScanResult run_scan(const ScanSpec& spec, const CrystalParams& crystal,
                    const ShaperGeometry& geom, const SpectralGrid& grid) {
  if (spec.n_points < 2) throw config_error("run_scan: need at least 2 points");
  if (!(spec.hi > spec.lo)) throw config_error("run_scan: need hi > lo");

  const BiphotonAmplitude amp = spdc_amplitude(crystal, grid, true);
  ScanResult result;
  result.spec = spec;
  result.omega_center = grid.center();
  result.x.resize(static_cast<std::size_t>(spec.n_points));
  result.g2.resize(static_cast<std::size_t>(spec.n_points));
  if (spec.dual_phase) result.g2_phipi.resize(static_cast<std::size_t>(spec.n_points));

  std::optional<PixelKernel> kernel;
  if (spec.mode == TransferMode::physical) kernel.emplace(geom, grid);
  const auto transfer = [&](const MaskSpec& ms) {
    if (spec.mode == TransferMode::ideal) return ideal_transfer(ms, grid);
    return kernel->apply(render_mask(ms, geom, grid));
  };

  for (int j = 0; j < spec.n_points; ++j) {
    const double xj = lerp_point(spec.lo, spec.hi, j, spec.n_points);
    MaskSpec ms = spec.base;
    set_swept(ms, spec.swept, xj);
    const std::size_t js = static_cast<std::size_t>(j);
    result.x[js] = xj;
    result.g2[js] = g2_normalized(amp, transfer(ms));
    if (spec.dual_phase) {
      MaskSpec ms2 = ms;
      ms2.phi += kPi;
      result.g2_phipi[js] = g2_normalized(amp, transfer(ms2));
    }
  }
  return result;
}

namespace {

struct HalfSpectrum {
  std::vector<double> mag;  // |S_k|, k = 0 .. N-1
  double bin_width = 0.0;
};

// Type-I DCT of the mean-subtracted curve: the spectrum of its even
// extension, which is the natural transform for an interferogram symmetric
// about zero delay.
HalfSpectrum dct1_spectrum(const std::vector<double>& y, double dt) {
  const std::size_t n = y.size();
  if (n < 16) throw numeric_error("interferogram analysis needs at least 16 samples");
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= static_cast<double>(n);
  std::vector<double> z(n);
  for (std::size_t j = 0; j < n; ++j) z[j] = y[j] - mean;

  HalfSpectrum hs;
  hs.bin_width = kPi / (static_cast<double>(n - 1) * dt);
  hs.mag.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    double s = z[0] + (k % 2 == 0 ? z[n - 1] : -z[n - 1]);
    const double base = kPi * static_cast<double>(k) / static_cast<double>(n - 1);
    for (std::size_t j = 1; j + 1 < n; ++j)
      s += 2.0 * z[j] * std::cos(base * static_cast<double>(j));
    hs.mag[k] = std::abs(s);
  }
  return hs;
}

double median_of(std::vector<double> v) {
  if (v.empty()) throw numeric_error("median of empty range");
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 == 1 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

double scan_step(const ScanResult& r) {
  if (r.x.size() < 2) throw numeric_error("scan has fewer than 2 points");
  return r.x[1] - r.x[0];
}

}  // namespace

CarrierEstimate carrier_frequency(const ScanResult& result) {
  const HalfSpectrum hs = dct1_spectrum(result.g2, scan_step(result));
  const std::size_t n = hs.mag.size();
  // Ignore the lowest 5% of the band: the envelope's own spectrum lives there.
  const std::size_t k_lo = static_cast<std::size_t>(
      std::ceil(0.05 * static_cast<double>(n - 1)));

  std::size_t i_pk = k_lo;
  for (std::size_t k = k_lo; k < n; ++k)
    if (hs.mag[k] > hs.mag[i_pk]) i_pk = k;
  const double floor =
      median_of(std::vector<double>(hs.mag.begin() + static_cast<long>(k_lo), hs.mag.end()));
  double max_nondc = 0.0;
  for (std::size_t k = 1; k < n; ++k) max_nondc = std::max(max_nondc, hs.mag[k]);

  CarrierEstimate est;
  est.bin_width = hs.bin_width;
  est.present = hs.mag[i_pk] >= std::max(3.0 * floor, 0.01 * max_nondc);
  if (!est.present) return est;

  // Rate interferograms put most energy at twice the optical carrier; lock
  // onto the clean strong line and halve when its subharmonic exists.
  const std::size_t i_half = static_cast<std::size_t>(
      std::llround(static_cast<double>(i_pk) / 2.0));
  bool locked = false;
  if (i_half >= 4 && i_half + 3 < n) {
    std::size_t j_loc = i_half - 3;
    for (std::size_t k = i_half - 3; k <= i_half + 3; ++k)
      if (hs.mag[k] > hs.mag[j_loc]) j_loc = k;
    locked = hs.mag[j_loc] >= std::max(3.0 * floor, 0.05 * hs.mag[i_pk]);
  }
  const double refined =
      (static_cast<double>(i_pk) + parabolic_refine(hs.mag, i_pk)) * hs.bin_width;
  est.harmonic = locked ? 2 : 1;
  est.omega = refined / static_cast<double>(est.harmonic);
  return est;
}

double fringe_lag(const ScanResult& result) {
  if (result.g2_phipi.size() != result.g2.size() || result.g2.empty())
    throw numeric_error("fringe_lag needs a dual-phase scan");
  const long n = static_cast<long>(result.g2.size());
  double m0 = 0.0, m1 = 0.0;
  for (long j = 0; j < n; ++j) {
    m0 += result.g2[static_cast<std::size_t>(j)];
    m1 += result.g2_phipi[static_cast<std::size_t>(j)];
  }
  m0 /= static_cast<double>(n);
  m1 /= static_cast<double>(n);

  const long max_lag = 40;
  if (n <= 2 * max_lag + 1) throw numeric_error("fringe_lag: scan too short");
  std::vector<double> cc(static_cast<std::size_t>(2 * max_lag + 1));
  for (long l = -max_lag; l <= max_lag; ++l) {
    double acc = 0.0;
    const long j0 = std::max(0L, -l);
    const long j1 = n - std::max(0L, l);
    for (long j = j0; j < j1; ++j)
      acc += (result.g2[static_cast<std::size_t>(j)] - m0) *
             (result.g2_phipi[static_cast<std::size_t>(j + l)] - m1);
    cc[static_cast<std::size_t>(l + max_lag)] = acc;
  }
  std::size_t il = 0;
  for (std::size_t k = 1; k < cc.size(); ++k)
    if (cc[k] > cc[il]) il = k;
  const double lag_steps =
      static_cast<double>(static_cast<long>(il) - max_lag) + parabolic_refine(cc, il);
  return lag_steps * scan_step(result);
}

double carrier_band_suppression_db(const ScanResult& with_carrier,
                                   const ScanResult& without_carrier) {
  const double omega0 = with_carrier.omega_center;
  const auto band_energy = [omega0](const ScanResult& r) {
    const HalfSpectrum hs = dct1_spectrum(r.g2, scan_step(r));
    double acc = 0.0;
    for (std::size_t k = 0; k < hs.mag.size(); ++k) {
      const double om = static_cast<double>(k) * hs.bin_width;
      if (om > 0.975 * omega0 && om < 1.025 * omega0) acc += hs.mag[k] * hs.mag[k];
    }
    if (acc == 0.0) throw numeric_error("carrier band holds no spectral bins");
    return acc;
  };
  return 10.0 * std::log10(band_energy(with_carrier) / band_energy(without_carrier));
}

double visibility(double rate_phi0, double rate_phipi) {
  const double sum = rate_phi0 + rate_phipi;
  if (sum <= 0.0) throw numeric_error("visibility undefined for zero total rate");
  return std::abs(rate_phi0 - rate_phipi) / sum;
}

double coherence_time(const ScanResult& result) {
  std::vector<double> d(result.x.size());
  for (std::size_t j = 0; j < d.size(); ++j) d[j] = 2.0 * result.x[j];
  return fwhm_linear(d, result.g2);
}

GaussianSelfTest gaussian_coherence_selftest(double sigma_radfs) {
  if (sigma_radfs <= 0.0) throw config_error("selftest sigma must be positive");
  // Synthetic Gaussian spectrum on its own grid, swept exactly like the
  // effective-delay preset.
  const SpectralGrid grid = make_grid(2.0 * 1.7, 0.12, 4096);
  BiphotonAmplitude amp;
  amp.grid = grid;
  amp.xi.resize(static_cast<std::size_t>(grid.n));
  for (int j = 0; j < grid.n; ++j) {
    const double d = grid.delta(j);
    amp.xi[static_cast<std::size_t>(j)] =
        std::exp(-d * d / (2.0 * sigma_radfs * sigma_radfs));
  }

  const int n_points = 161;
  std::vector<double> d_axis(n_points), rate(n_points);
  for (int j = 0; j < n_points; ++j) {
    const double s = lerp_point(-300.0, 300.0, j, n_points);
    MaskSpec ms;
    ms.kind = MaskKind::v_phase;
    ms.slope = s;
    d_axis[static_cast<std::size_t>(j)] = 2.0 * s;
    rate[static_cast<std::size_t>(j)] = g2_normalized(amp, ideal_transfer(ms, grid));
  }

  GaussianSelfTest out;
  out.scan_fwhm_fs = fwhm_linear(d_axis, rate);
  // Closed form: the normalized rate at per-photon slope s is
  // exp(-u^2) (1 + erfi(u / sqrt 2)^2) with u = 2 s sigma.
  const auto ratio = [](double u) {
    const double z = u / std::sqrt(2.0);
    const double erfi = 2.0 / std::sqrt(kPi) * std::exp(z * z) * dawson(z);
    return std::exp(-u * u) * (1.0 + erfi * erfi);
  };
  double lo = 1.0, hi = 2.0;
  if (!(ratio(lo) > 0.5 && ratio(hi) < 0.5))
    throw numeric_error("selftest: half crossing not bracketed");
  for (int iter = 0; iter < 100; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (ratio(mid) > 0.5)
      lo = mid;
    else
      hi = mid;
  }
  out.half_crossing_u = 0.5 * (lo + hi);
  out.analytic_fwhm_fs = 2.0 * out.half_crossing_u / sigma_radfs;
  out.rel_diff = std::abs(out.scan_fwhm_fs - out.analytic_fwhm_fs) / out.analytic_fwhm_fs;
  return out;
}

namespace {

class PoissonSampler {
 public:
  explicit PoissonSampler(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t draw(double mean) {
    if (mean < 0.0) throw numeric_error("Poisson mean must be nonnegative");
    if (mean == 0.0) return 0;
    return mean < 30.0 ? inversion(mean) : ptrs(mean);
  }

 private:
  double uniform() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  std::uint64_t inversion(double mean) {
    const double limit = std::exp(-mean);
    std::uint64_t k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= uniform();
    } while (p > limit);
    return k - 1;
  }

  // Transformed rejection with squeeze (Hormann's PTRS), valid for mean >= 10.
  std::uint64_t ptrs(double mean) {
    const double log_mean = std::log(mean);
    const double b = 0.931 + 2.53 * std::sqrt(mean);
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
      const double u = uniform() - 0.5;
      const double v = uniform();
      const double us = 0.5 - std::abs(u);
      const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
      if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(kf);
      if (kf < 0.0 || (us < 0.013 && v > us)) continue;
      if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
          kf * log_mean - mean - std::lgamma(kf + 1.0))
        return static_cast<std::uint64_t>(kf);
    }
  }

  std::mt19937_64 eng_;
};

}  // namespace

SyntheticCounts synthesize_counts(const ScanResult& result, const NoiseModel& noise) {
  if (noise.dwell_s <= 0.0 || noise.peak_rate_cps < 0.0 || noise.dark_rate_cps < 0.0)
    throw config_error("noise model needs positive dwell and nonnegative rates");
  PoissonSampler sampler(noise.seed);
  SyntheticCounts out;
  out.primary.resize(result.g2.size());
  const bool dual = result.g2_phipi.size() == result.g2.size() && !result.g2.empty();
  if (dual) out.phipi.resize(result.g2.size());
  for (std::size_t j = 0; j < result.g2.size(); ++j) {
    out.primary[j] = sampler.draw(
        noise.dwell_s * (noise.peak_rate_cps * result.g2[j] + noise.dark_rate_cps));
    if (dual)
      out.phipi[j] = sampler.draw(noise.dwell_s * (noise.peak_rate_cps * result.g2_phipi[j] +
                                                   noise.dark_rate_cps));
  }
  return out;
}

ScanBand uncertainty_band(const ScanSpec& spec, const CrystalParams& crystal,
                          const ShaperGeometry& geom, const SpectralGrid& grid,
                          double dt_kelvin, double waist_frac) {
  if (dt_kelvin < 0.0 || waist_frac < 0.0 || waist_frac >= 1.0)
    throw config_error("uncertainty_band: need dt >= 0 and waist_frac in [0, 1)");
  ScanBand band;
  bool first = true;
  for (const double t_sign : {-1.0, 1.0}) {
    for (const double w_sign : {-1.0, 1.0}) {
      CrystalParams c = crystal;
      c.temperature_c += t_sign * dt_kelvin;
      ShaperGeometry s = geom;
      s.beam_waist_um *= 1.0 + w_sign * waist_frac;
      const ScanResult r = run_scan(spec, c, s, grid);
      if (first) {
        band.lo = r.g2;
        band.hi = r.g2;
        first = false;
        continue;
      }
      for (std::size_t j = 0; j < r.g2.size(); ++j) {
        band.lo[j] = std::min(band.lo[j], r.g2[j]);
        band.hi[j] = std::max(band.hi[j], r.g2[j]);
      }
    }
  }
  return band;
}

}  // namespace biphoton
