#pragma once

#include <string>

#include "biphoton/scan.hpp"

namespace biphoton {

// Shortest decimal representation that parses back to the same double.
std::string format_double(double v);

// Column name of the swept quantity, unit suffix included.
const char* x_column_name(SweptParam p);

// Scan result as CSV text: the swept column, g2_norm (or g2_norm_phi0 and
// g2_norm_phipi for dual-phase sweeps), and matching counts columns when a
// synthetic count record is supplied. Same inputs give byte-identical text.
std::string scan_csv(const ScanResult& result, const SyntheticCounts* counts = nullptr);

// Writes text to path, throwing config_error when the file cannot be
// created or written.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace biphoton
