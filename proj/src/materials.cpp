#include "biphoton/materials.hpp"

#include <cmath>
#include <cstddef>
#include <fstream>
#include <map>
#include <sstream>

#include "biphoton/errors.hpp"

namespace biphoton {

namespace {

MaterialModel builtin_ktp_z() {
  MaterialModel m;
  m.name = "ktp_z";
  m.sellmeier.a = 2.12725;
  m.sellmeier.b = {1.18431, 0.6603};
  m.sellmeier.c = {0.0514852, 100.00507};
  m.sellmeier.d = 0.00968956;
  m.thermo.p1 = {9.9587e-6, 9.9228e-6, -8.9603e-6, 4.1010e-6};
  m.thermo.p2 = {-1.1882e-8, 10.459e-8, -9.8136e-8, 3.1481e-8};
  m.thermo.tref_c = 25.0;
  m.lambda_min_um = 0.5;
  m.lambda_max_um = 4.0;
  return m;
}

MaterialModel builtin_fused_silica() {
  MaterialModel m;
  m.name = "fused_silica";
  m.sellmeier.a = 1.0;
  m.sellmeier.b = {0.6961663, 0.4079426, 0.8974794};
  // Squared pole wavelengths (0.0684043, 0.1162414, 9.896161 um).
  m.sellmeier.c = {0.0684043 * 0.0684043, 0.1162414 * 0.1162414,
                   9.896161 * 9.896161};
  m.sellmeier.d = 0.0;
  m.lambda_min_um = 0.21;
  m.lambda_max_um = 3.71;
  return m;
}

std::map<std::string, MaterialModel>& registry() {
  static std::map<std::string, MaterialModel> reg = {
      {"ktp_z", builtin_ktp_z()},
      {"fused_silica", builtin_fused_silica()},
  };
  return reg;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<double> parse_number_list(const std::string& value, const std::string& key) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok = trim(tok);
    if (tok.empty()) throw config_error("coefficient file: empty entry in " + key);
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &pos);
    } catch (const std::exception&) {
      throw config_error("coefficient file: bad number '" + tok + "' in " + key);
    }
    if (pos != tok.size())
      throw config_error("coefficient file: trailing junk '" + tok + "' in " + key);
    out.push_back(v);
  }
  if (out.empty()) throw config_error("coefficient file: no values for " + key);
  return out;
}

double parse_single(const std::string& value, const std::string& key) {
  const auto v = parse_number_list(value, key);
  if (v.size() != 1) throw config_error("coefficient file: " + key + " takes one value");
  return v[0];
}

std::array<double, 4> parse_poly4(const std::string& value, const std::string& key) {
  const auto v = parse_number_list(value, key);
  if (v.size() != 4)
    throw config_error("coefficient file: " + key + " takes exactly 4 values");
  return {v[0], v[1], v[2], v[3]};
}

}  // namespace

const MaterialModel& material(const std::string& name) {
  const auto& reg = registry();
  auto it = reg.find(name);
  if (it == reg.end()) throw config_error("unknown material '" + name + "'");
  return it->second;
}

std::vector<std::string> material_names() {
  std::vector<std::string> out;
  for (const auto& [name, model] : registry()) out.push_back(name);
  return out;
}

std::vector<MaterialModel> parse_coefficient_file(const std::string& text) {
  std::vector<MaterialModel> models;
  MaterialModel* cur = nullptr;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw config_error("coefficient file line " + std::to_string(lineno) +
                           ": malformed section header");
      models.emplace_back();
      cur = &models.back();
      cur->name = trim(line.substr(1, line.size() - 2));
      if (cur->name.empty())
        throw config_error("coefficient file line " + std::to_string(lineno) +
                           ": empty material name");
      continue;
    }
    if (cur == nullptr)
      throw config_error("coefficient file line " + std::to_string(lineno) +
                         ": key outside a [material] section");
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error("coefficient file line " + std::to_string(lineno) +
                         ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "sellmeier_a") {
      cur->sellmeier.a = parse_single(value, key);
    } else if (key == "sellmeier_b") {
      cur->sellmeier.b = parse_number_list(value, key);
    } else if (key == "sellmeier_c") {
      cur->sellmeier.c = parse_number_list(value, key);
    } else if (key == "sellmeier_d") {
      cur->sellmeier.d = parse_single(value, key);
    } else if (key == "thermo_p1") {
      cur->thermo.p1 = parse_poly4(value, key);
    } else if (key == "thermo_p2") {
      cur->thermo.p2 = parse_poly4(value, key);
    } else if (key == "thermo_tref_c") {
      cur->thermo.tref_c = parse_single(value, key);
    } else if (key == "range_um") {
      const auto v = parse_number_list(value, key);
      if (v.size() != 2 || v[0] <= 0.0 || v[1] <= v[0])
        throw config_error("coefficient file: range_um needs min, max with 0 < min < max");
      cur->lambda_min_um = v[0];
      cur->lambda_max_um = v[1];
    } else {
      throw config_error("coefficient file line " + std::to_string(lineno) +
                         ": unknown key '" + key + "'");
    }
  }
  for (const auto& m : models) {
    if (m.sellmeier.b.size() != m.sellmeier.c.size())
      throw config_error("coefficient file: sellmeier_b and sellmeier_c of '" + m.name +
                         "' differ in length");
    if (m.lambda_max_um <= m.lambda_min_um)
      throw config_error("coefficient file: material '" + m.name + "' needs range_um");
  }
  return models;
}

void load_coefficient_overrides(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open coefficient file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  for (auto& m : parse_coefficient_file(ss.str())) registry()[m.name] = std::move(m);
}

double refractive_index(const MaterialModel& model, double lambda_um, double temp_c) {
  if (!(lambda_um >= model.lambda_min_um && lambda_um <= model.lambda_max_um))
    throw numeric_error("wavelength " + std::to_string(lambda_um) + " um outside '" +
                        model.name + "' validity range");
  const double l2 = lambda_um * lambda_um;
  double n2 = model.sellmeier.a - model.sellmeier.d * l2;
  for (std::size_t i = 0; i < model.sellmeier.b.size(); ++i)
    n2 += model.sellmeier.b[i] * l2 / (l2 - model.sellmeier.c[i]);
  if (n2 <= 0.0) throw numeric_error("dispersion fit gives n^2 <= 0 for " + model.name);
  double n = std::sqrt(n2);

  const double dt = temp_c - model.thermo.tref_c;
  if (dt != 0.0) {
    const double u = 1.0 / lambda_um;
    const auto eval = [u](const std::array<double, 4>& p) {
      return ((p[3] * u + p[2]) * u + p[1]) * u + p[0];
    };
    n += eval(model.thermo.p1) * dt + eval(model.thermo.p2) * dt * dt;
  }
  return n;
}

}  // namespace biphoton
