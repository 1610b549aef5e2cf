#pragma once

namespace biphoton {

// Signal-frequency grid, symmetric about the degenerate frequency
// omega_pc / 2. Node j sits at delta_j = (j - n/2) * domega, so node n/2 is
// exactly zero detuning and nodes j and n-j are exact mirror partners for
// j >= 1; node 0 has no partner and carries zero quadrature weight. The
// included trapezoid weights integrate over [-half_span + domega,
// half_span - domega].
struct SpectralGrid {
  double omega_pc = 0.0;
  double half_span = 0.0;
  int n = 0;

  double center() const { return omega_pc / 2.0; }
  double domega() const { return 2.0 * half_span / n; }
  double delta(int j) const { return (j - n / 2) * domega(); }
  double omega(int j) const { return center() + delta(j); }
  int mirror(int j) const { return j == 0 ? 0 : n - j; }
  double weight(int j) const {
    if (j == 0) return 0.0;
    return (j == 1 || j == n - 1) ? 0.5 : 1.0;
  }
};

// Validates that n is a power of two >= 256 (throws config_error otherwise)
// and half_span is positive.
SpectralGrid make_grid(double omega_pc, double half_span, int n);

}  // namespace biphoton
