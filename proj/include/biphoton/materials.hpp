#pragma once

#include <array>
#include <string>
#include <vector>

namespace biphoton {

// n^2(lambda) = a + sum_i b[i] * lambda^2 / (lambda^2 - c[i]) - d * lambda^2,
// lambda in um. Both pole-style and lambda^2-pole dispersion fits reduce to
// this shape.
struct SellmeierForm {
  double a = 1.0;
  std::vector<double> b;
  std::vector<double> c;
  double d = 0.0;
};

// Temperature correction dn(lambda, T) = p1(1/lambda) dT + p2(1/lambda) dT^2
// with cubic polynomials in 1/lambda and dT = T - tref_c.
struct ThermoPoly {
  std::array<double, 4> p1{0.0, 0.0, 0.0, 0.0};
  std::array<double, 4> p2{0.0, 0.0, 0.0, 0.0};
  double tref_c = 25.0;
};

struct MaterialModel {
  std::string name;
  SellmeierForm sellmeier;
  ThermoPoly thermo;
  double lambda_min_um = 0.0;
  double lambda_max_um = 0.0;
};

// Registry of dispersion models. Built-ins: "ktp_z" (flux-grown KTP, z axis,
// with temperature dependence) and "fused_silica" (room temperature).
const MaterialModel& material(const std::string& name);
std::vector<std::string> material_names();

// Parses a coefficient file and replaces the registry entries for every
// material section it contains. Unknown keys are rejected. The CLI applies
// the file named by the BIPHOTON_COEFFS environment variable at startup.
void load_coefficient_overrides(const std::string& path);
std::vector<MaterialModel> parse_coefficient_file(const std::string& text);

// Refractive index at lambda_um and temp_c. Throws numeric_error outside the
// model's validity range.
double refractive_index(const MaterialModel& model, double lambda_um, double temp_c);

}  // namespace biphoton
