#include "biphoton/csv.hpp"

#include <charconv>
#include <fstream>

#include "biphoton/errors.hpp"

namespace biphoton {

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  if (res.ec != std::errc{}) throw numeric_error("format_double: conversion failed");
  return std::string(buf, res.ptr);
}

const char* x_column_name(SweptParam p) {
  switch (p) {
    case SweptParam::position: return "position_radfs";
    case SweptParam::width: return "width_radfs";
    case SweptParam::period: return "period_radfs";
    case SweptParam::phi2: return "phi2_fs2";
    case SweptParam::slope: return "slope_fs";
    case SweptParam::tau: return "tau_fs";
    case SweptParam::phi: return "phase_rad";
  }
  throw config_error("x_column_name: unknown swept parameter");
}

std::string scan_csv(const ScanResult& result, const SyntheticCounts* counts) {
  const bool dual = result.spec.dual_phase;
  const std::size_t n = result.x.size();
  if (result.g2.size() != n || (dual && result.g2_phipi.size() != n))
    throw config_error("scan_csv: result columns have mismatched lengths");
  if (counts &&
      (counts->primary.size() != n || (dual && counts->phipi.size() != n)))
    throw config_error("scan_csv: counts do not match the scan length");

  std::string out = x_column_name(result.spec.swept);
  out += dual ? ",g2_norm_phi0,g2_norm_phipi" : ",g2_norm";
  if (counts) out += dual ? ",counts_phi0,counts_phipi" : ",counts";
  out += '\n';
  for (std::size_t i = 0; i < n; ++i) {
    out += format_double(result.x[i]);
    out += ',';
    out += format_double(result.g2[i]);
    if (dual) {
      out += ',';
      out += format_double(result.g2_phipi[i]);
    }
    if (counts) {
      out += ',';
      out += std::to_string(counts->primary[i]);
      if (dual) {
        out += ',';
        out += std::to_string(counts->phipi[i]);
      }
    }
    out += '\n';
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw config_error("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw config_error("failed writing '" + path + "'");
}

}  // namespace biphoton
