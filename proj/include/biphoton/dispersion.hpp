#pragma once

#include <string>

#include "biphoton/materials.hpp"

namespace biphoton {

// Periodically poled crystal for collinear degenerate type-0 down-conversion;
// all three waves use the same (z) polarization axis.
struct CrystalParams {
  std::string material = "ktp_z";
  double length_mm = 10.0;
  double poling_period_um = 9.0;
  double temperature_c = 29.5;
  // Residual mismatch trim (rad/mm) added to the computed mismatch; set by
  // calibrate_qpm so the degenerate center is exactly phase matched.
  double qpm_offset_rad_mm = 0.0;
};

// Effective angular dispersion rate of the shaper's prism pair, folding the
// apex geometry into a single gamma (rad fs / um): the diffraction angle
// changes linearly with optical frequency at this rate.
struct PrismDispersion {
  double gamma = 0.0;
  double lambda_c_um = 0.0;
};

// k(omega) = n(lambda, T) * omega / c in rad/um.
double wavenumber(const MaterialModel& model, double omega_radfs, double temp_c);

// Collinear mismatch for pump omega_pc splitting into signal omega_s and
// idler omega_pc - omega_s, including the poling grating vector and the
// calibration trim. Returned in rad/mm.
double phase_mismatch(const CrystalParams& crystal, double omega_s, double omega_pc);

// Offset (rad/mm) that zeroes phase_mismatch at the degenerate point
// omega_s = omega_pc / 2 for the crystal's temperature.
double calibrate_qpm(const CrystalParams& crystal, double omega_pc);

// Prism-pair dispersion rate gamma = -(2 lambda_c / c) dn/dlambda from a
// central finite difference with step h_um (Richardson-testable).
double prism_gamma(const MaterialModel& model, double lambda_c_um, double h_um = 1e-4);

}  // namespace biphoton
