#pragma once

#include <optional>
#include <string>

#include "biphoton/scan.hpp"

namespace biphoton {

// Complete description of one simulation run, as read from a scenario file.
// Sections: [crystal], [grid], [shaper], [scan], [noise], [output]. Values
// may carry a unit suffix (nm um mm fs fs2 K C s cps px rad); later keys
// override earlier ones; '#' starts a comment. Unknown sections or keys are
// rejected.
struct Scenario {
  // [crystal]
  std::string material = "ktp_z";
  double pump_um = 0.532;
  bool auto_length = true;
  double length_mm = 0.0;
  double target_fwhm_nm = 50.0;
  double poling_period_um = 9.0;
  double temperature_c = 29.5;
  bool auto_qpm = true;
  double qpm_offset_rad_mm = 0.0;

  // [grid]
  int grid_points = 4096;
  bool auto_half_span = true;
  double half_span_radfs = 0.0;

  // [shaper]
  double fill_fraction = 0.6;
  double magnification = 1.0;
  double beam_waist_um = 200.0;
  double pitch_um = 100.0;
  int n_pixels = 640;
  double center_offset_px = 0.0;
  std::string prism_material = "fused_silica";
  double prism_lambda_um = 0.0;  // 0: use the degenerate wavelength

  // [scan]
  Preset preset = Preset::edge_scan;
  TransferMode mode = TransferMode::ideal;
  std::optional<int> scan_points;
  std::optional<double> scan_lo;
  std::optional<double> scan_hi;
  std::optional<MaskKind> custom_kind;
  std::optional<SweptParam> custom_swept;
  std::optional<double> mask_position;
  std::optional<double> mask_width;
  std::optional<double> mask_period;
  std::optional<double> mask_phi2;
  std::optional<double> mask_slope;
  std::optional<double> mask_tau;
  std::optional<double> mask_phase;
  std::optional<double> gamma_ratio;
  bool with_counts = false;

  // [noise]
  NoiseModel noise;

  // [output]
  std::string out_csv;
};

Scenario parse_scenario(const std::string& text);

// Canonical text form; parse_scenario(serialize_scenario(s)) reproduces s.
std::string serialize_scenario(const Scenario& s);

// Everything derived from a scenario, ready to run: calibrated crystal,
// simulation grid, calibrated shaper geometry, and the scan specification
// with overrides applied.
struct ResolvedSetup {
  CrystalParams crystal;
  SpectralGrid grid;
  ShaperGeometry geom;
  ScanSpec scan;
};

ResolvedSetup resolve_scenario(const Scenario& s);

// Sidecar text for a run: the canonical scenario followed by the resolved
// calibration values as comments, so the file parses back to the same setup.
std::string meta_text(const Scenario& s, const ResolvedSetup& r);

}  // namespace biphoton
