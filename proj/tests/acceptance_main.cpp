// End-to-end acceptance checks for the shaped-biphoton simulator. Each
// criterion prints exactly one [PASS]/[FAIL] line; the binary exits nonzero
// if any criterion fails or exceeds its time budget.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "biphoton/amplitude.hpp"
#include "biphoton/coincidence.hpp"
#include "biphoton/csv.hpp"
#include "biphoton/grid.hpp"
#include "biphoton/numerics.hpp"
#include "biphoton/scan.hpp"
#include "biphoton/scenario.hpp"
#include "biphoton/shaper.hpp"
#include "biphoton/units.hpp"

using namespace biphoton;

namespace {

int failures = 0;

std::string num(double v) {
  char b[64];
  std::snprintf(b, sizeof b, "%.9g", v);
  return b;
}

// Runs one criterion: body returns "" on pass or a failure reason. A
// positive budget turns a slow pass into a failure.
void criterion(int n, const char* behavior, double budget_s,
               const std::function<std::string()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  std::string reason;
  try {
    reason = body();
  } catch (const std::exception& e) {
    reason = std::string("unexpected exception: ") + e.what();
  }
  const double dt =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (reason.empty() && budget_s > 0.0 && dt > budget_s) {
    reason = "exceeded " + num(budget_s) + "s budget (took " + num(dt) + "s)";
  }
  std::printf("[%s] criterion %d: %s (%.2fs)\n", reason.empty() ? "PASS" : "FAIL", n,
              behavior, dt);
  if (!reason.empty()) {
    std::printf("       %s\n", reason.c_str());
    ++failures;
  }
}

std::size_t argmax_of(const std::vector<double>& v) {
  return static_cast<std::size_t>(
      std::max_element(v.begin(), v.end()) - v.begin());
}

// x where ys (rising through level within the span) crosses level.
double rising_crossing(const std::vector<double>& xs, const std::vector<double>& ys,
                       double level) {
  for (std::size_t i = 1; i < ys.size(); ++i) {
    if (ys[i - 1] < level && ys[i] >= level) {
      const double f = (level - ys[i - 1]) / (ys[i] - ys[i - 1]);
      return xs[i - 1] + f * (xs[i] - xs[i - 1]);
    }
  }
  return xs.back();
}

}  // namespace

int main() {
  std::printf("shaped-biphoton simulator acceptance suite\n");

  ResolvedSetup setup;
  try {
    setup = resolve_scenario(Scenario{});
  } catch (const std::exception& e) {
    std::printf("[FAIL] setup: default scenario did not resolve: %s\n", e.what());
    return 1;
  }
  const BiphotonAmplitude amp = spdc_amplitude(setup.crystal, setup.grid);
  const auto sweep = [&](const ScanSpec& spec) {
    return run_scan(spec, setup.crystal, setup.geom, setup.grid);
  };
  ScanResult interf;  // produced by criterion 8, reused by criterion 9

  criterion(1, "spectral amplitude is exchange-symmetric in signal and idler", 1.0, [&] {
    const BiphotonAmplitude a = spdc_amplitude(setup.crystal, setup.grid);
    double worst = 0.0;
    for (int j = 0; j < a.grid.n; ++j)
      worst = std::max(worst, std::abs(a.xi[static_cast<std::size_t>(j)] -
                                       a.xi[static_cast<std::size_t>(a.grid.mirror(j))]));
    if (worst >= 1e-12)
      return "max residual " + num(worst) + ", need < 1e-12";
    return std::string();
  });

  criterion(2, "calibrated crystal emits a 50 nm class pair spectrum", 0.0, [&] {
    const double f = spectrum_fwhm_nm(amp);
    if (f < 45.0 || f > 55.0)
      return "intensity FWHM " + num(f) + " nm outside [45, 55]";
    return std::string();
  });

  criterion(3, "knife edge cuts the rate monotonically from 1 to a conjugate null", 5.0,
            [&] {
    const ScanResult r = sweep(preset_scan(Preset::edge_scan, amp));
    if (r.g2.front() < 1.0 - 1e-12)
      return "uncut rate " + num(r.g2.front()) + " below 1";
    for (std::size_t i = 1; i < r.g2.size(); ++i)
      if (r.g2[i] > r.g2[i - 1] + 1e-12)
        return "rate rises at index " + std::to_string(i);
    if (!(r.g2[40] < 1e-12))
      return "rate at the spectral center is " + num(r.g2[40]) + ", expected a null";
    return std::string();
  });

  criterion(4, "spectral slice digs twin nulls; a full-bandwidth slice leaves no revival",
            0.0, [&] {
    const ScanResult r = sweep(preset_scan(Preset::slice_scan, amp));
    const double mx = *std::max_element(r.g2.begin(), r.g2.end());
    const auto dips = persistent_minima(r.g2, 0.005 * mx);
    if (dips.size() != 2)
      return "expected 2 persistent dips, found " + std::to_string(dips.size());
    if (dips[0] + dips[1] != 80)
      return "dips at " + std::to_string(dips[0]) + ", " + std::to_string(dips[1]) +
             " are not symmetric about the center";
    if (!(r.g2[40] > r.g2[39] && r.g2[40] > r.g2[41]))
      return std::string("no revival between the dips");

    std::vector<double> xs(static_cast<std::size_t>(setup.grid.n));
    std::vector<double> ys(xs.size());
    for (int j = 0; j < setup.grid.n; ++j) {
      xs[static_cast<std::size_t>(j)] = setup.grid.delta(j);
      ys[static_cast<std::size_t>(j)] = std::norm(amp.xi[static_cast<std::size_t>(j)]);
    }
    const double W = fwhm_linear(xs, ys);
    ScanSpec wide;
    wide.base.kind = MaskKind::slice;
    wide.base.width = W;
    wide.swept = SweptParam::position;
    wide.hi = setup.grid.half_span + W / 2.0 + 0.01;
    wide.lo = -wide.hi;
    wide.n_points = 81;
    const ScanResult w = sweep(wide);
    const double wmx = *std::max_element(w.g2.begin(), w.g2.end());
    double floor_left = 0.0, floor_right = 0.0;
    for (std::size_t i : persistent_minima(w.g2, 0.005 * wmx)) {
      if (w.x[i] < 0.0) floor_left = std::max(floor_left, w.g2[i]);
      if (w.x[i] > 0.0) floor_right = std::max(floor_right, w.g2[i]);
    }
    const double prominence = w.g2[40] - std::max(floor_left, floor_right);
    if (prominence >= 0.05 * wmx)
      return "central revival prominence " + num(prominence) + " is not below 5% of " +
             num(wmx);
    return std::string();
  });

  criterion(5, "binary grating nulls the rate at half-period alignments", 0.0, [&] {
    const ScanSpec spec = preset_scan(Preset::grating_scan, amp);
    const ScanResult r = sweep(spec);
    for (std::size_t i : {0u, 20u, 40u, 60u, 80u})
      if (!(std::abs(r.g2[i]) < 1e-12))
        return "rate " + num(r.g2[i]) + " at alignment index " + std::to_string(i) +
               ", expected a null";
    const std::size_t pk = argmax_of(r.g2);
    if (pk != 30 && pk != 70)
      return "strongest revival at index " + std::to_string(pk) + ", expected 30 or 70";
    const double mx = r.g2[pk];
    std::vector<std::size_t> tops;
    for (std::size_t i : persistent_maxima(r.g2, 0.005 * mx))
      if (r.g2[i] >= 0.9 * mx) tops.push_back(i);
    if (tops.size() < 2) return std::string("fewer than two strong revivals");
    const double step = r.x[1] - r.x[0];
    for (std::size_t k = 1; k < tops.size(); ++k) {
      const double spacing = r.x[tops[k]] - r.x[tops[k - 1]];
      if (std::abs(spacing - spec.base.period) > step)
        return "strong revivals spaced " + num(spacing) + ", expected the period " +
               num(spec.base.period);
    }
    return std::string();
  });

  criterion(6, "pair chirp suppresses the rate symmetrically in the chirp sign", 0.0, [&] {
    const ScanResult r = sweep(preset_scan(Preset::quadratic_scan, amp));
    const std::size_t pk = argmax_of(r.g2);
    if (pk + 1 < 40 || pk > 41)
      return "peak at index " + std::to_string(pk) + ", expected the unchirped point";
    double asym = 0.0;
    for (std::size_t k = 1; k <= 40; ++k)
      asym = std::max(asym, std::abs(r.g2[40 + k] - r.g2[40 - k]));
    if (asym >= 1e-9) return "sign asymmetry " + num(asym) + ", need < 1e-9";
    for (std::size_t i : {40u, 50u, 60u, 70u}) {
      if (!(r.g2[i] > r.g2[i + 10]))
        return "rate fails to decay between indices " + std::to_string(i) + " and " +
               std::to_string(i + 10);
      if (!(r.g2[80 - i - 10] < r.g2[80 - i]))
        return std::string("rate fails to decay on the negative-chirp side");
    }
    return std::string();
  });

  criterion(7, "antisymmetric phase sweep yields a ~100 fs coherence time", 0.0, [&] {
    const double tc = coherence_time(sweep(preset_scan(Preset::vphase_scan, amp)));
    if (tc < 75.0 || tc > 225.0)
      return "coherence time " + num(tc) + " fs outside [75, 225]";
    const GaussianSelfTest st = gaussian_coherence_selftest();
    if (st.rel_diff >= 0.01)
      return "Gaussian self-test misses its closed form by " + num(st.rel_diff);
    return std::string();
  });

  criterion(8, "delay sweep carries fringes at the optical frequency", 30.0, [&] {
    interf = sweep(preset_scan(Preset::interferometer_scan, amp));
    const CarrierEstimate c = carrier_frequency(interf);
    if (!c.present) return std::string("no carrier detected");
    const double omega0 = setup.grid.center();
    if (std::abs(c.omega - omega0) > c.bin_width)
      return "carrier " + num(c.omega) + " rad/fs, expected " + num(omega0) +
             " within " + num(c.bin_width);
    const double lag = fringe_lag(interf);
    if (std::abs(lag - kPi / omega0) > 0.25)
      return "pi phase flip lags " + num(lag) + " fs, expected half an optical period";
    return std::string();
  });

  criterion(9, "carrier-compensated sweep keeps visibility only near zero delay", 0.0,
            [&] {
    if (interf.g2.empty()) return std::string("needs the criterion 8 sweep");
    const ScanResult env = sweep(preset_scan(Preset::interferometer_envelope_scan, amp));
    const double db = carrier_band_suppression_db(interf, env);
    if (!(db > 40.0))
      return "carrier band suppressed by only " + num(db) + " dB, need > 40";
    const double v0 = visibility(env.g2[0], env.g2_phipi[0]);
    if (v0 < 1.0 - 1e-9) return "zero-delay visibility " + num(v0) + " below 1";
    MaskSpec far;
    far.kind = MaskKind::interferometer;
    far.tau = 1000.0;
    far.gamma_ratio = 0.0;
    MaskSpec farpi = far;
    farpi.phi = kPi;
    const double vfar =
        visibility(g2_normalized(amp, ideal_transfer(far, setup.grid)),
                   g2_normalized(amp, ideal_transfer(farpi, setup.grid)));
    if (!(vfar < 0.05))
      return "visibility " + num(vfar) + " at 1 ps delay, expected < 0.05";
    return std::string();
  });

  criterion(10, "rates agree with an independent dense-grid reference", 60.0, [&] {
    std::size_t smooth = 0, hard = 0;
    std::string bad;
    const auto check_curve = [&](const ScanSpec& spec, std::size_t stride, double tol,
                                 std::size_t& count) {
      for (int i = 0; i < spec.n_points && bad.empty(); i += static_cast<int>(stride)) {
        const double x = lerp_point(spec.lo, spec.hi, i, spec.n_points);
        MaskSpec m = swept_mask(spec, x);
        for (int phase = 0; phase < (spec.dual_phase ? 2 : 1); ++phase) {
          if (phase == 1) m.phi += kPi;
          const double a = g2_normalized(amp, ideal_transfer(m, setup.grid));
          const double b = g2_reference(setup.crystal, m, setup.grid);
          const double lim = tol * std::max({1.0, std::abs(a), std::abs(b)});
          ++count;
          if (std::abs(a - b) > lim) {
            bad = std::string(preset_name(spec.preset)) + " point " + std::to_string(i) +
                  ": pipeline " + num(a) + " vs reference " + num(b) + ", beyond " +
                  num(lim);
            return;
          }
        }
      }
    };
    check_curve(preset_scan(Preset::quadratic_scan, amp), 1, 1e-6, smooth);
    check_curve(preset_scan(Preset::vphase_scan, amp), 1, 1e-6, smooth);
    check_curve(preset_scan(Preset::interferometer_scan, amp), 20, 1e-6, smooth);
    check_curve(preset_scan(Preset::interferometer_envelope_scan, amp), 20, 1e-6, smooth);
    check_curve(preset_scan(Preset::edge_scan, amp), 1, 5e-3, hard);
    check_curve(preset_scan(Preset::slice_scan, amp), 1, 5e-3, hard);
    check_curve(preset_scan(Preset::grating_scan, amp), 1, 5e-3, hard);
    if (!bad.empty()) return bad;
    if (smooth != 722 || hard != 243)
      return "sampled " + std::to_string(smooth) + " smooth and " + std::to_string(hard) +
             " discontinuous points, expected 722 and 243";
    return std::string();
  });

  criterion(11, "physical shaper reduces to the programmed pixels as the spot shrinks",
            0.0, [&] {
    ShaperGeometry tiny = setup.geom;
    tiny.beam_waist_um = setup.geom.pitch_um / 100.0;
    const double scale = setup.geom.dispersion_scale();
    const SpectralGrid g = make_grid(setup.grid.omega_pc, 25600.0 / scale, 1024);
    std::vector<MaskSpec> kinds(6);
    kinds[0].kind = MaskKind::edge;
    kinds[0].position = 0.002;
    kinds[1].kind = MaskKind::slice;
    kinds[1].width = 0.004;
    kinds[2].kind = MaskKind::grating;
    kinds[2].period = 0.003;
    kinds[2].position = 0.0005;
    kinds[3].kind = MaskKind::quadratic_phase;
    kinds[3].phi2 = 1500.0;
    kinds[4].kind = MaskKind::v_phase;
    kinds[4].slope = 40.0;
    kinds[5].kind = MaskKind::interferometer;
    kinds[5].tau = 80.0;
    kinds[5].phi = 0.3;
    const std::vector<int> pixels = {100, 200, 300, 340, 450, 550};
    for (const MaskSpec& m : kinds) {
      const PixelMask pix = render_mask(m, tiny, g);
      const TransferFunction tf = effective_transfer(pix, tiny, g);
      for (int p : pixels) {
        const int j = 1151 - 2 * p;  // grid node exactly at this pixel center
        const double u = (p - (pix.n_pixels - 1) / 2.0) * pix.pitch_um;
        if (std::abs(g.delta(j) - (-u / scale)) > 1e-12)
          return std::string("probe node misaligned with its pixel center");
        const double d = std::abs(tf.m[static_cast<std::size_t>(j)] -
                                  pix.t[static_cast<std::size_t>(p)]);
        if (d > 1e-3)
          return "mask kind " + std::to_string(static_cast<int>(m.kind)) + " pixel " +
                 std::to_string(p) + ": transfer differs from the pixel value by " +
                 num(d);
      }
    }

    // a wider spot must smear a hard edge over a wider detuning band
    const SpectralGrid ge = make_grid(setup.grid.omega_pc, 0.0384, 256);
    MaskSpec edge0;
    edge0.kind = MaskKind::edge;
    std::vector<double> widths;
    for (double frac : {0.5, 1.0, 2.0, 4.0}) {
      ShaperGeometry geo = setup.geom;
      geo.beam_waist_um = frac * setup.geom.pitch_um;
      const TransferFunction tf = effective_transfer(render_mask(edge0, geo, ge), geo, ge);
      std::vector<double> xs, ys;
      for (int j = 64; j <= 192; ++j) {
        xs.push_back(ge.delta(j));
        ys.push_back(std::abs(tf.m[static_cast<std::size_t>(j)]));
      }
      widths.push_back(rising_crossing(xs, ys, 0.75) - rising_crossing(xs, ys, 0.25));
    }
    for (std::size_t k = 1; k < widths.size(); ++k)
      if (!(widths[k] > widths[k - 1]))
        return "edge roll-off width " + num(widths[k]) + " does not grow with the spot";
    return std::string();
  });

  criterion(12, "identical scenario text reproduces byte-identical outputs", 0.0, [&] {
    Scenario s;
    s.with_counts = true;
    s.noise.seed = 7;
    const std::string text = serialize_scenario(s);
    const auto run_once = [&](const std::string& t) {
      const Scenario sc = parse_scenario(t);
      const ResolvedSetup rs = resolve_scenario(sc);
      const ScanResult r = run_scan(rs.scan, rs.crystal, rs.geom, rs.grid);
      const SyntheticCounts c = synthesize_counts(r, sc.noise);
      return std::make_pair(scan_csv(r, &c), meta_text(sc, rs));
    };
    const auto first = run_once(text);
    const auto second = run_once(text);
    if (first.first != second.first)
      return std::string("scan CSV differs between identical runs");
    if (first.second != second.second)
      return std::string("run metadata differs between identical runs");
    return std::string();
  });

  if (failures == 0) {
    std::printf("all 12 criteria passed\n");
    return 0;
  }
  std::printf("%d criteria failed\n", failures);
  return 1;
}
