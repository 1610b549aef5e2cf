#include "biphoton/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "biphoton/errors.hpp"
#include "biphoton/units.hpp"

namespace biphoton {

double sinc(double x) {
  const double ax = std::abs(x);
  if (ax < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
  }
  return std::sin(x) / x;
}

double lerp_point(double lo, double hi, int j, int n) {
  const double t = static_cast<double>(j) / static_cast<double>(n - 1);
  return lo * (1.0 - t) + hi * t;
}

double fwhm_linear(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || ys.size() < 3)
    throw numeric_error("fwhm_linear: need at least 3 samples");
  const std::size_t pk =
      static_cast<std::size_t>(std::max_element(ys.begin(), ys.end()) - ys.begin());
  const double half = ys[pk] / 2.0;

  std::size_t j = pk;
  while (j + 1 < ys.size() && ys[j] > half) ++j;
  if (ys[j] > half) throw numeric_error("fwhm_linear: right half crossing not bracketed");
  const double xr =
      xs[j - 1] + (xs[j] - xs[j - 1]) * (half - ys[j - 1]) / (ys[j] - ys[j - 1]);

  j = pk;
  while (j > 0 && ys[j] > half) --j;
  if (ys[j] > half) throw numeric_error("fwhm_linear: left half crossing not bracketed");
  const double xl =
      xs[j + 1] + (xs[j] - xs[j + 1]) * (half - ys[j + 1]) / (ys[j] - ys[j + 1]);

  return xr - xl;
}

double parabolic_refine(const std::vector<double>& y, std::size_t i) {
  if (i == 0 || i + 1 >= y.size()) return 0.0;
  const double den = y[i - 1] - 2.0 * y[i] + y[i + 1];
  if (den == 0.0) return 0.0;
  return 0.5 * (y[i - 1] - y[i + 1]) / den;
}

const Quadrature& gauss_legendre(int n) {
  static std::map<int, Quadrature> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  if (n < 1) throw numeric_error("gauss_legendre: order must be positive");

  Quadrature q;
  q.nodes.resize(static_cast<std::size_t>(n));
  q.weights.resize(static_cast<std::size_t>(n));
  // Newton iteration on the Legendre polynomial from the Chebyshev estimate.
  for (int i = 0; i < n; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    q.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    q.weights[static_cast<std::size_t>(n - 1 - i)] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return cache.emplace(n, std::move(q)).first->second;
}

double dawson(double x) {
  // D(x) = integral_0^x exp(t^2 - x^2) dt; the shifted exponent keeps every
  // quadrature term <= 1, so the evaluation never overflows.
  const Quadrature& q = gauss_legendre(64);
  double acc = 0.0;
  for (std::size_t k = 0; k < q.nodes.size(); ++k) {
    const double t = 0.5 * x * (q.nodes[k] + 1.0);
    acc += q.weights[k] * std::exp(t * t - x * x);
  }
  return 0.5 * x * acc;
}

namespace {

std::vector<std::size_t> persistent_extrema(const std::vector<double>& y,
                                            double min_prominence, bool minima) {
  std::vector<std::size_t> out;
  const std::size_t n = y.size();
  if (n < 3) return out;
  const double sign = minima ? 1.0 : -1.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double v = sign * y[i];
    if (!(v < sign * y[i - 1] && v < sign * y[i + 1])) continue;
    double barrier_left = 0.0;
    for (std::size_t j = i; j-- > 0;) {
      const double w = sign * y[j];
      if (w < v) break;
      barrier_left = std::max(barrier_left, w - v);
    }
    double barrier_right = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double w = sign * y[j];
      if (w < v) break;
      barrier_right = std::max(barrier_right, w - v);
    }
    if (std::min(barrier_left, barrier_right) >= min_prominence) out.push_back(i);
  }
  return out;
}

}  // namespace

std::vector<std::size_t> persistent_minima(const std::vector<double>& y,
                                           double min_prominence) {
  return persistent_extrema(y, min_prominence, true);
}

std::vector<std::size_t> persistent_maxima(const std::vector<double>& y,
                                           double min_prominence) {
  return persistent_extrema(y, min_prominence, false);
}

}  // namespace biphoton
