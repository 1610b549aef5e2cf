#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "biphoton/coincidence.hpp"
#include "biphoton/csv.hpp"
#include "biphoton/errors.hpp"
#include "biphoton/materials.hpp"
#include "biphoton/numerics.hpp"
#include "biphoton/scenario.hpp"
#include "biphoton/units.hpp"

namespace {

using namespace biphoton;

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw config_error("cannot open scenario file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void print_summary(const Scenario& s, const ResolvedSetup& r,
                   const BiphotonAmplitude& amp) {
  std::cout << std::setprecision(10);
  std::cout << "material           " << r.crystal.material << "\n";
  std::cout << "pump               " << s.pump_um * 1000.0 << " nm\n";
  std::cout << "crystal length     " << r.crystal.length_mm << " mm"
            << (s.auto_length ? " (calibrated)" : "") << "\n";
  std::cout << "temperature        " << r.crystal.temperature_c << " C\n";
  std::cout << "qpm offset         " << r.crystal.qpm_offset_rad_mm << " rad/mm"
            << (s.auto_qpm ? " (calibrated)" : "") << "\n";
  std::cout << "spectrum fwhm      " << spectrum_fwhm_nm(amp) << " nm\n";
  std::cout << "grid               " << r.grid.n << " points, half span "
            << r.grid.half_span << " rad/fs\n";
  std::cout << "prism dispersion   " << r.geom.gamma << " rad fs/um\n";
  std::cout << "focal length       " << r.geom.focal_mm << " mm\n";
  std::cout << "dispersion scale   " << r.geom.dispersion_scale() << " um per rad/fs\n";
  std::cout << "scan               " << preset_name(r.scan.preset) << ", "
            << r.scan.n_points << " points of " << swept_param_name(r.scan.swept)
            << " in [" << r.scan.lo << ", " << r.scan.hi << "], "
            << (r.scan.mode == TransferMode::ideal ? "ideal" : "physical") << "\n";
}

void print_analysis(const ScanResult& res) {
  std::cout << std::setprecision(10);
  const double curve_max = *std::max_element(res.g2.begin(), res.g2.end());
  switch (res.spec.preset) {
    case Preset::edge_scan: {
      bool monotone = true;
      for (std::size_t i = 0; i + 1 < res.g2.size(); ++i)
        if (res.g2[i + 1] > res.g2[i]) monotone = false;
      std::cout << "rate with edge at band center   "
                << res.g2[res.g2.size() / 2] << "\n";
      std::cout << "monotone decreasing             " << (monotone ? "yes" : "no")
                << "\n";
      break;
    }
    case Preset::slice_scan: {
      const auto minima = persistent_minima(res.g2, 0.005 * curve_max);
      std::cout << "rate with slice at band center  "
                << res.g2[res.g2.size() / 2] << "\n";
      std::cout << "persistent minima               ";
      for (const auto i : minima) std::cout << res.x[i] << " ";
      std::cout << "(" << minima.size() << ")\n";
      break;
    }
    case Preset::grating_scan: {
      const auto maxima = persistent_maxima(res.g2, 0.005 * curve_max);
      std::cout << "rate maxima at alignment        ";
      for (const auto i : maxima) std::cout << res.x[i] << " ";
      std::cout << "\n";
      std::cout << "minimum rate                    "
                << *std::min_element(res.g2.begin(), res.g2.end()) << "\n";
      break;
    }
    case Preset::quadratic_scan: {
      const auto it = std::max_element(res.g2.begin(), res.g2.end());
      std::cout << "peak at pair chirp              "
                << res.x[static_cast<std::size_t>(it - res.g2.begin())] << " fs^2\n";
      double asym = 0.0;
      const std::size_t n = res.g2.size();
      for (std::size_t i = 0; i < n; ++i)
        asym = std::max(asym, std::abs(res.g2[i] - res.g2[n - 1 - i]));
      std::cout << "chirp-sign asymmetry            " << asym << "\n";
      break;
    }
    case Preset::vphase_scan: {
      std::cout << "pair coherence time (fwhm)      " << coherence_time(res)
                << " fs\n";
      break;
    }
    case Preset::interferometer_scan:
    case Preset::interferometer_envelope_scan: {
      const auto carrier = carrier_frequency(res);
      if (carrier.present)
        std::cout << "fringe carrier                  " << carrier.omega
                  << " rad/fs (band center " << res.omega_center << ")\n";
      else
        std::cout << "fringe carrier                  none detected\n";
      if (res.spec.dual_phase) {
        std::cout << "zero-delay visibility           "
                  << visibility(res.g2.front(), res.g2_phipi.front()) << "\n";
        if (carrier.present)
          std::cout << "phase-flip fringe lag           " << fringe_lag(res) << " fs\n";
      }
      break;
    }
    default:
      std::cout << "max rate                        " << curve_max << "\n";
      break;
  }
}

// Cross-checks sweep points against the dense direct reference. Smooth masks
// must agree to 1e-6; masks with hard spectral edges are quantized by the
// grid, so they get a 5e-3 allowance.
void verify_scan(const ScanResult& res, const ResolvedSetup& r, int max_points) {
  const MaskKind kind = res.spec.base.kind;
  const bool discontinuous =
      kind == MaskKind::edge || kind == MaskKind::slice || kind == MaskKind::grating;
  const double tol = discontinuous ? 5e-3 : 1e-6;
  const int n = static_cast<int>(res.x.size());
  const int k = std::min(n, max_points);
  double worst = 0.0, worst_x = 0.0;
  for (int i = 0; i < k; ++i) {
    const int j = k == 1 ? 0 : static_cast<int>(std::lround(
                                   static_cast<double>(i) * (n - 1) / (k - 1)));
    const std::size_t js = static_cast<std::size_t>(j);
    const MaskSpec ms = swept_mask(res.spec, res.x[js]);
    const double ref = g2_reference(r.crystal, ms, r.grid);
    const double a = res.g2[js];
    const double dev = std::abs(a - ref) / std::max({1.0, std::abs(a), std::abs(ref)});
    if (dev > worst) {
      worst = dev;
      worst_x = res.x[js];
    }
  }
  std::cout << std::setprecision(6);
  std::cout << "verify                          " << k << " points, max deviation "
            << worst << " at " << worst_x << " (tolerance " << tol << ")\n";
  if (worst > tol)
    throw numeric_error("verification failed: deviation " + format_double(worst) +
                        " exceeds " + format_double(tol));
}

int run(int argc, char** argv) {
  CLI::App app{
      "Simulates coincidence-rate experiments on a spectrally shaped "
      "time-energy entangled photon pair"};
  std::string scenario_path, preset_arg, mode_arg, out_path;
  int points_arg = 0, grid_arg = 0, verify_points = 9;
  std::uint64_t seed_arg = 0;
  bool counts_flag = false, verify_flag = false;
  bool list_presets = false, print_scenario = false;

  app.add_option("--scenario", scenario_path, "scenario file to run");
  app.add_option("--preset", preset_arg, "built-in experiment (see --list-presets)");
  app.add_option("--mode", mode_arg, "shaper model: ideal or physical");
  app.add_option("--points", points_arg, "override the number of sweep points");
  app.add_option("--grid", grid_arg, "override the number of grid points");
  app.add_flag("--counts", counts_flag, "add synthetic detector counts");
  app.add_option("--seed", seed_arg, "noise seed for --counts");
  app.add_option("--out", out_path, "write the sweep as CSV (plus a .meta sidecar)");
  app.add_flag("--verify", verify_flag,
               "cross-check sweep points against the dense direct reference");
  app.add_option("--verify-points", verify_points, "points checked by --verify");
  app.add_flag("--list-presets", list_presets, "list built-in experiments");
  app.add_flag("--print-scenario", print_scenario,
               "print the canonical scenario text and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (const char* coeffs = std::getenv("BIPHOTON_COEFFS"))
    load_coefficient_overrides(coeffs);

  if (list_presets) {
    for (const Preset p :
         {Preset::edge_scan, Preset::slice_scan, Preset::grating_scan,
          Preset::quadratic_scan, Preset::vphase_scan, Preset::interferometer_scan,
          Preset::interferometer_envelope_scan})
      std::cout << preset_name(p) << "\n";
    return 0;
  }

  Scenario s;
  if (!scenario_path.empty()) s = parse_scenario(read_file(scenario_path));
  if (!preset_arg.empty()) {
    const auto p = preset_from_name(preset_arg);
    if (!p) throw config_error("unknown preset '" + preset_arg + "'");
    s.preset = *p;
  }
  if (!mode_arg.empty()) {
    if (mode_arg == "ideal")
      s.mode = TransferMode::ideal;
    else if (mode_arg == "physical")
      s.mode = TransferMode::physical;
    else
      throw config_error("--mode must be ideal or physical");
  }
  if (points_arg > 0) s.scan_points = points_arg;
  if (grid_arg > 0) s.grid_points = grid_arg;
  if (counts_flag) s.with_counts = true;
  if (seed_arg != 0) s.noise.seed = seed_arg;
  if (!out_path.empty()) s.out_csv = out_path;

  if (print_scenario) {
    std::cout << serialize_scenario(s);
    return 0;
  }

  const ResolvedSetup r = resolve_scenario(s);
  const BiphotonAmplitude amp = spdc_amplitude(r.crystal, r.grid, true);
  print_summary(s, r, amp);

  if (verify_flag && r.scan.mode != TransferMode::ideal)
    throw config_error("--verify checks the ideal transfer; run with --mode ideal");

  const ScanResult res = run_scan(r.scan, r.crystal, r.geom, r.grid);
  print_analysis(res);
  if (verify_flag) verify_scan(res, r, verify_points);

  if (!s.out_csv.empty()) {
    if (s.with_counts) {
      const SyntheticCounts counts = synthesize_counts(res, s.noise);
      write_text_file(s.out_csv, scan_csv(res, &counts));
    } else {
      write_text_file(s.out_csv, scan_csv(res));
    }
    write_text_file(s.out_csv + ".meta", meta_text(s, r));
    std::cout << "wrote " << s.out_csv << " and " << s.out_csv << ".meta\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const biphoton::config_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
