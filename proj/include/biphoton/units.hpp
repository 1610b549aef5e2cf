#pragma once

#include <numbers>

// Internal unit conventions, used consistently across the library:
//   wavelength            micrometers (um)
//   time                  femtoseconds (fs)
//   angular frequency     rad/fs
//   vacuum/crystal k      rad/um
//   phase mismatch        rad/mm
//   crystal length, focal mm
//   transverse distances  um
//   temperature           degrees Celsius
//   quadratic phase       fs^2

namespace biphoton {

inline constexpr double kSpeedOfLightUmPerFs = 0.299792458;
inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline double omega_from_lambda_um(double lambda_um) {
  return kTwoPi * kSpeedOfLightUmPerFs / lambda_um;
}

inline double lambda_um_from_omega(double omega_radfs) {
  return kTwoPi * kSpeedOfLightUmPerFs / omega_radfs;
}

// Linearized conversion factor: a frequency interval d_omega (rad/fs) around
// center wavelength lambda_um spans d_omega * nm_per_radfs(lambda_um) in nm.
inline double nm_per_radfs(double lambda_um) {
  return lambda_um * lambda_um / (kTwoPi * kSpeedOfLightUmPerFs) * 1000.0;
}

}  // namespace biphoton
