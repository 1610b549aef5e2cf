#include "biphoton/scenario.hpp"

#include <cmath>
#include <sstream>

#include "biphoton/csv.hpp"
#include "biphoton/errors.hpp"
#include "biphoton/units.hpp"

namespace biphoton {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

struct KeyValue {
  std::string section;
  std::string key;
  std::string value;
  int lineno;
};

[[noreturn]] void fail(const KeyValue& kv, const std::string& msg) {
  throw config_error("scenario line " + std::to_string(kv.lineno) + " (" + kv.section +
                     "." + kv.key + "): " + msg);
}

// Splits "number [unit]" and converts to the canonical unit of the key.
// `units` maps allowed suffix -> factor; an entry with factor 0 marks the
// kelvin special case (absolute temperature to Celsius).
double parse_quantity(const KeyValue& kv,
                      std::initializer_list<std::pair<const char*, double>> units) {
  std::istringstream ss(kv.value);
  std::string num, unit, extra;
  ss >> num >> unit >> extra;
  if (num.empty() || !extra.empty()) fail(kv, "expected 'value [unit]'");
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(num, &pos);
  } catch (const std::exception&) {
    fail(kv, "bad number '" + num + "'");
  }
  if (pos != num.size()) fail(kv, "bad number '" + num + "'");
  if (unit.empty()) return v;
  for (const auto& [name, factor] : units) {
    if (unit == name) return factor == 0.0 ? v - 273.15 : v * factor;
  }
  fail(kv, "unsupported unit '" + unit + "'");
}

double parse_bare(const KeyValue& kv) { return parse_quantity(kv, {}); }

int parse_int(const KeyValue& kv, double factor_tolerant = 1.0) {
  const double v = parse_quantity(kv, {{"px", factor_tolerant}});
  const double r = std::round(v);
  if (std::abs(v - r) > 1e-9) fail(kv, "expected an integer");
  return static_cast<int>(r);
}

bool parse_flag(const KeyValue& kv) {
  if (kv.value == "on" || kv.value == "true") return true;
  if (kv.value == "off" || kv.value == "false") return false;
  fail(kv, "expected on/off");
}

MaskKind parse_kind(const KeyValue& kv) {
  if (kv.value == "edge") return MaskKind::edge;
  if (kv.value == "slice") return MaskKind::slice;
  if (kv.value == "grating") return MaskKind::grating;
  if (kv.value == "quadratic_phase") return MaskKind::quadratic_phase;
  if (kv.value == "v_phase") return MaskKind::v_phase;
  if (kv.value == "interferometer") return MaskKind::interferometer;
  fail(kv, "unknown mask kind '" + kv.value + "'");
}

SweptParam parse_swept(const KeyValue& kv) {
  for (const SweptParam p :
       {SweptParam::position, SweptParam::width, SweptParam::period, SweptParam::phi2,
        SweptParam::slope, SweptParam::tau, SweptParam::phi}) {
    if (kv.value == swept_param_name(p)) return p;
  }
  fail(kv, "unknown swept parameter '" + kv.value + "'");
}

void apply(Scenario& s, const KeyValue& kv) {
  const std::string id = kv.section + "." + kv.key;
  if (id == "crystal.material") {
    s.material = kv.value;
  } else if (id == "crystal.pump") {
    s.pump_um = parse_quantity(kv, {{"um", 1.0}, {"nm", 1e-3}});
  } else if (id == "crystal.length") {
    if (kv.value == "auto") {
      s.auto_length = true;
    } else {
      s.auto_length = false;
      s.length_mm = parse_quantity(kv, {{"mm", 1.0}, {"um", 1e-3}});
    }
  } else if (id == "crystal.target_fwhm") {
    s.target_fwhm_nm = parse_quantity(kv, {{"nm", 1.0}});
  } else if (id == "crystal.poling_period") {
    s.poling_period_um = parse_quantity(kv, {{"um", 1.0}, {"nm", 1e-3}});
  } else if (id == "crystal.temperature") {
    s.temperature_c = parse_quantity(kv, {{"C", 1.0}, {"K", 0.0}});
  } else if (id == "crystal.qpm_offset") {
    if (kv.value == "auto") {
      s.auto_qpm = true;
    } else {
      s.auto_qpm = false;
      s.qpm_offset_rad_mm = parse_bare(kv);
    }
  } else if (id == "grid.points") {
    s.grid_points = parse_int(kv);
  } else if (id == "grid.half_span") {
    if (kv.value == "auto") {
      s.auto_half_span = true;
    } else {
      s.auto_half_span = false;
      s.half_span_radfs = parse_bare(kv);
    }
  } else if (id == "shaper.fill_fraction") {
    s.fill_fraction = parse_bare(kv);
  } else if (id == "shaper.magnification") {
    s.magnification = parse_bare(kv);
  } else if (id == "shaper.beam_waist") {
    s.beam_waist_um = parse_quantity(kv, {{"um", 1.0}, {"nm", 1e-3}});
  } else if (id == "shaper.pitch") {
    s.pitch_um = parse_quantity(kv, {{"um", 1.0}, {"nm", 1e-3}});
  } else if (id == "shaper.pixels") {
    s.n_pixels = parse_int(kv);
  } else if (id == "shaper.center_offset") {
    s.center_offset_px = parse_quantity(kv, {{"px", 1.0}});
  } else if (id == "shaper.prism_material") {
    s.prism_material = kv.value;
  } else if (id == "shaper.prism_lambda") {
    s.prism_lambda_um = parse_quantity(kv, {{"um", 1.0}, {"nm", 1e-3}});
  } else if (id == "scan.preset") {
    const auto p = preset_from_name(kv.value);
    if (!p) fail(kv, "unknown preset '" + kv.value + "'");
    s.preset = *p;
  } else if (id == "scan.mode") {
    if (kv.value == "ideal")
      s.mode = TransferMode::ideal;
    else if (kv.value == "physical")
      s.mode = TransferMode::physical;
    else
      fail(kv, "mode must be ideal or physical");
  } else if (id == "scan.points") {
    s.scan_points = parse_int(kv);
  } else if (id == "scan.lo") {
    s.scan_lo = parse_quantity(kv, {{"fs", 1.0}, {"fs2", 1.0}});
  } else if (id == "scan.hi") {
    s.scan_hi = parse_quantity(kv, {{"fs", 1.0}, {"fs2", 1.0}});
  } else if (id == "scan.kind") {
    s.custom_kind = parse_kind(kv);
  } else if (id == "scan.swept") {
    s.custom_swept = parse_swept(kv);
  } else if (id == "scan.position") {
    s.mask_position = parse_bare(kv);
  } else if (id == "scan.width") {
    s.mask_width = parse_bare(kv);
  } else if (id == "scan.period") {
    s.mask_period = parse_bare(kv);
  } else if (id == "scan.phi2") {
    s.mask_phi2 = parse_quantity(kv, {{"fs2", 1.0}});
  } else if (id == "scan.slope") {
    s.mask_slope = parse_quantity(kv, {{"fs", 1.0}});
  } else if (id == "scan.tau") {
    s.mask_tau = parse_quantity(kv, {{"fs", 1.0}});
  } else if (id == "scan.phase") {
    s.mask_phase = parse_quantity(kv, {{"rad", 1.0}});
  } else if (id == "scan.gamma_ratio") {
    s.gamma_ratio = parse_bare(kv);
  } else if (id == "scan.counts") {
    s.with_counts = parse_flag(kv);
  } else if (id == "noise.dwell") {
    s.noise.dwell_s = parse_quantity(kv, {{"s", 1.0}});
  } else if (id == "noise.peak_rate") {
    s.noise.peak_rate_cps = parse_quantity(kv, {{"cps", 1.0}});
  } else if (id == "noise.dark_rate") {
    s.noise.dark_rate_cps = parse_quantity(kv, {{"cps", 1.0}});
  } else if (id == "noise.seed") {
    const double v = parse_bare(kv);
    if (v < 0.0 || v != std::floor(v)) fail(kv, "seed must be a nonnegative integer");
    s.noise.seed = static_cast<std::uint64_t>(v);
  } else if (id == "output.csv") {
    s.out_csv = kv.value;
  } else {
    fail(kv, "unknown key");
  }
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  Scenario s;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw config_error("scenario line " + std::to_string(lineno) +
                           ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "crystal" && section != "grid" && section != "shaper" &&
          section != "scan" && section != "noise" && section != "output")
        throw config_error("scenario line " + std::to_string(lineno) +
                           ": unknown section [" + section + "]");
      continue;
    }
    if (section.empty())
      throw config_error("scenario line " + std::to_string(lineno) +
                         ": key outside a section");
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error("scenario line " + std::to_string(lineno) +
                         ": expected key = value");
    KeyValue kv{section, trim(line.substr(0, eq)), trim(line.substr(eq + 1)), lineno};
    if (kv.key.empty() || kv.value.empty()) fail(kv, "expected key = value");
    apply(s, kv);
  }
  return s;
}

std::string serialize_scenario(const Scenario& s) {
  std::ostringstream out;
  const auto num = [](double v) { return format_double(v); };
  out << "[crystal]\n";
  out << "material = " << s.material << "\n";
  out << "pump = " << num(s.pump_um) << " um\n";
  if (s.auto_length)
    out << "length = auto\n";
  else
    out << "length = " << num(s.length_mm) << " mm\n";
  out << "target_fwhm = " << num(s.target_fwhm_nm) << " nm\n";
  out << "poling_period = " << num(s.poling_period_um) << " um\n";
  out << "temperature = " << num(s.temperature_c) << " C\n";
  if (s.auto_qpm)
    out << "qpm_offset = auto\n";
  else
    out << "qpm_offset = " << num(s.qpm_offset_rad_mm) << "\n";
  out << "\n[grid]\n";
  out << "points = " << s.grid_points << "\n";
  if (s.auto_half_span)
    out << "half_span = auto\n";
  else
    out << "half_span = " << num(s.half_span_radfs) << "\n";
  out << "\n[shaper]\n";
  out << "fill_fraction = " << num(s.fill_fraction) << "\n";
  out << "magnification = " << num(s.magnification) << "\n";
  out << "beam_waist = " << num(s.beam_waist_um) << " um\n";
  out << "pitch = " << num(s.pitch_um) << " um\n";
  out << "pixels = " << s.n_pixels << "\n";
  out << "center_offset = " << num(s.center_offset_px) << " px\n";
  out << "prism_material = " << s.prism_material << "\n";
  if (s.prism_lambda_um > 0.0)
    out << "prism_lambda = " << num(s.prism_lambda_um) << " um\n";
  out << "\n[scan]\n";
  out << "preset = " << preset_name(s.preset) << "\n";
  out << "mode = " << (s.mode == TransferMode::ideal ? "ideal" : "physical") << "\n";
  if (s.scan_points) out << "points = " << *s.scan_points << "\n";
  if (s.scan_lo) out << "lo = " << num(*s.scan_lo) << "\n";
  if (s.scan_hi) out << "hi = " << num(*s.scan_hi) << "\n";
  if (s.custom_kind) {
    const char* kind = nullptr;
    switch (*s.custom_kind) {
      case MaskKind::edge: kind = "edge"; break;
      case MaskKind::slice: kind = "slice"; break;
      case MaskKind::grating: kind = "grating"; break;
      case MaskKind::quadratic_phase: kind = "quadratic_phase"; break;
      case MaskKind::v_phase: kind = "v_phase"; break;
      case MaskKind::interferometer: kind = "interferometer"; break;
      default: throw config_error("serialize_scenario: unsupported custom mask kind");
    }
    out << "kind = " << kind << "\n";
  }
  if (s.custom_swept) out << "swept = " << swept_param_name(*s.custom_swept) << "\n";
  if (s.mask_position) out << "position = " << num(*s.mask_position) << "\n";
  if (s.mask_width) out << "width = " << num(*s.mask_width) << "\n";
  if (s.mask_period) out << "period = " << num(*s.mask_period) << "\n";
  if (s.mask_phi2) out << "phi2 = " << num(*s.mask_phi2) << " fs2\n";
  if (s.mask_slope) out << "slope = " << num(*s.mask_slope) << " fs\n";
  if (s.mask_tau) out << "tau = " << num(*s.mask_tau) << " fs\n";
  if (s.mask_phase) out << "phase = " << num(*s.mask_phase) << " rad\n";
  if (s.gamma_ratio) out << "gamma_ratio = " << num(*s.gamma_ratio) << "\n";
  out << "counts = " << (s.with_counts ? "on" : "off") << "\n";
  out << "\n[noise]\n";
  out << "dwell = " << num(s.noise.dwell_s) << " s\n";
  out << "peak_rate = " << num(s.noise.peak_rate_cps) << " cps\n";
  out << "dark_rate = " << num(s.noise.dark_rate_cps) << " cps\n";
  out << "seed = " << s.noise.seed << "\n";
  if (!s.out_csv.empty()) {
    out << "\n[output]\n";
    out << "csv = " << s.out_csv << "\n";
  }
  return out.str();
}

ResolvedSetup resolve_scenario(const Scenario& s) {
  ResolvedSetup r;
  r.crystal.material = s.material;
  r.crystal.poling_period_um = s.poling_period_um;
  r.crystal.temperature_c = s.temperature_c;
  r.crystal.length_mm = s.auto_length ? 10.0 : s.length_mm;
  const double omega_pc = omega_from_lambda_um(s.pump_um);
  r.crystal.qpm_offset_rad_mm =
      s.auto_qpm ? calibrate_qpm(r.crystal, omega_pc) : s.qpm_offset_rad_mm;
  if (s.auto_length)
    r.crystal.length_mm =
        calibrate_length(r.crystal, make_grid(omega_pc, 0.9, 16384), s.target_fwhm_nm);

  const double half_span =
      s.auto_half_span ? main_lobe_half_span(r.crystal, omega_pc) : s.half_span_radfs;
  r.grid = make_grid(omega_pc, half_span, s.grid_points);
  const BiphotonAmplitude amp = spdc_amplitude(r.crystal, r.grid, true);

  ShaperGeometry base;
  base.magnification = s.magnification;
  base.beam_waist_um = s.beam_waist_um;
  base.pitch_um = s.pitch_um;
  base.n_pixels = s.n_pixels;
  base.center_offset_px = s.center_offset_px;
  const double lambda_c = s.prism_lambda_um > 0.0
                              ? s.prism_lambda_um
                              : lambda_um_from_omega(r.grid.center());
  base.gamma = prism_gamma(material(s.prism_material), lambda_c);
  r.geom = calibrate_geometry(base, amp, s.fill_fraction);

  if (s.preset == Preset::custom) {
    if (!s.custom_kind || !s.custom_swept || !s.scan_points || !s.scan_lo || !s.scan_hi)
      throw config_error(
          "custom scans need scan.kind, scan.swept, scan.points, scan.lo and scan.hi");
    r.scan.preset = Preset::custom;
    r.scan.base.kind = *s.custom_kind;
    r.scan.swept = *s.custom_swept;
    r.scan.dual_phase = *s.custom_kind == MaskKind::interferometer;
  } else {
    r.scan = preset_scan(s.preset, amp);
  }
  if (s.scan_points) r.scan.n_points = *s.scan_points;
  if (s.scan_lo) r.scan.lo = *s.scan_lo;
  if (s.scan_hi) r.scan.hi = *s.scan_hi;
  if (s.mask_position) r.scan.base.position = *s.mask_position;
  if (s.mask_width) r.scan.base.width = *s.mask_width;
  if (s.mask_period) r.scan.base.period = *s.mask_period;
  if (s.mask_phi2) r.scan.base.phi2 = *s.mask_phi2;
  if (s.mask_slope) r.scan.base.slope = *s.mask_slope;
  if (s.mask_tau) r.scan.base.tau = *s.mask_tau;
  if (s.mask_phase) r.scan.base.phi = *s.mask_phase;
  if (s.gamma_ratio) r.scan.base.gamma_ratio = *s.gamma_ratio;
  r.scan.mode = s.mode;
  return r;
}

std::string meta_text(const Scenario& s, const ResolvedSetup& r) {
  std::ostringstream out;
  out << serialize_scenario(s);
  out << "\n# resolved\n";
  out << "# crystal_length_mm = " << format_double(r.crystal.length_mm) << "\n";
  out << "# qpm_offset_rad_mm = " << format_double(r.crystal.qpm_offset_rad_mm) << "\n";
  out << "# grid_half_span_radfs = " << format_double(r.grid.half_span) << "\n";
  out << "# omega_center_radfs = " << format_double(r.grid.center()) << "\n";
  out << "# prism_dispersion_rad_fs_per_um = " << format_double(r.geom.gamma) << "\n";
  out << "# focal_mm = " << format_double(r.geom.focal_mm) << "\n";
  out << "# dispersion_scale_um_per_radfs = " << format_double(r.geom.dispersion_scale())
      << "\n";
  out << "# scan_lo = " << format_double(r.scan.lo) << "\n";
  out << "# scan_hi = " << format_double(r.scan.hi) << "\n";
  out << "# scan_points = " << r.scan.n_points << "\n";
  return out.str();
}

}  // namespace biphoton
