#include "biphoton/grid.hpp"

#include <string>

#include "biphoton/errors.hpp"

namespace biphoton {

SpectralGrid make_grid(double omega_pc, double half_span, int n) {
  if (omega_pc <= 0.0) throw config_error("make_grid: omega_pc must be positive");
  if (half_span <= 0.0) throw config_error("make_grid: half_span must be positive");
  if (n < 256 || (n & (n - 1)) != 0)
    throw config_error("make_grid: n_points must be a power of two >= 256, got " +
                       std::to_string(n));
  return SpectralGrid{omega_pc, half_span, n};
}

}  // namespace biphoton
