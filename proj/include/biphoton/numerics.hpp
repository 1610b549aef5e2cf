#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace biphoton {

// sin(x)/x with a series fallback near zero so the removable singularity is
// smooth to machine precision.
double sinc(double x);

// j-th point of an n-point inclusive linear grid over [lo, hi]. Written as a
// convex combination so the midpoint of a symmetric range is exactly zero.
double lerp_point(double lo, double hi, int j, int n);

// Full width at half maximum of ys sampled at xs, measured from the global
// maximum with linear interpolation at the two half crossings. Throws
// numeric_error if a half crossing is not bracketed inside the range.
double fwhm_linear(const std::vector<double>& xs, const std::vector<double>& ys);

// Sub-sample peak offset from a parabola through (y[i-1], y[i], y[i+1]),
// in units of one sample; 0 when the curvature vanishes or i is at an edge.
double parabolic_refine(const std::vector<double>& y, std::size_t i);

// Gauss-Legendre nodes and weights on [-1, 1].
struct Quadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const Quadrature& gauss_legendre(int n);

// Dawson integral D(x) = exp(-x^2) * integral_0^x exp(t^2) dt.
double dawson(double x);

// Indices of local minima of y whose topographic persistence (smallest climb
// required to escape to strictly lower ground on either side) is at least
// min_prominence. Filters out grid-discretization ripple while keeping
// structurally significant minima.
std::vector<std::size_t> persistent_minima(const std::vector<double>& y,
                                           double min_prominence);

// Same notion for local maxima.
std::vector<std::size_t> persistent_maxima(const std::vector<double>& y,
                                           double min_prominence);

}  // namespace biphoton
