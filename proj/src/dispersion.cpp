#include "biphoton/dispersion.hpp"

#include "biphoton/errors.hpp"
#include "biphoton/units.hpp"

namespace biphoton {

double wavenumber(const MaterialModel& model, double omega_radfs, double temp_c) {
  if (omega_radfs <= 0.0) throw numeric_error("wavenumber: omega must be positive");
  const double lambda = lambda_um_from_omega(omega_radfs);
  return refractive_index(model, lambda, temp_c) * omega_radfs / kSpeedOfLightUmPerFs;
}

namespace {

// Mismatch in rad/um before unit conversion and trim.
double raw_mismatch(const CrystalParams& crystal, double omega_s, double omega_pc) {
  const MaterialModel& model = material(crystal.material);
  const double t = crystal.temperature_c;
  return wavenumber(model, omega_pc, t) - wavenumber(model, omega_s, t) -
         wavenumber(model, omega_pc - omega_s, t) - kTwoPi / crystal.poling_period_um;
}

}  // namespace

double phase_mismatch(const CrystalParams& crystal, double omega_s, double omega_pc) {
  return raw_mismatch(crystal, omega_s, omega_pc) * 1000.0 + crystal.qpm_offset_rad_mm;
}

double calibrate_qpm(const CrystalParams& crystal, double omega_pc) {
  return -raw_mismatch(crystal, omega_pc / 2.0, omega_pc) * 1000.0;
}

double prism_gamma(const MaterialModel& model, double lambda_c_um, double h_um) {
  if (h_um <= 0.0) throw numeric_error("prism_gamma: step must be positive");
  const double room = 25.0;
  const double dn_dl = (refractive_index(model, lambda_c_um + h_um, room) -
                        refractive_index(model, lambda_c_um - h_um, room)) /
                       (2.0 * h_um);
  return -(2.0 * lambda_c_um / kSpeedOfLightUmPerFs) * dn_dl;
}

}  // namespace biphoton
