#pragma once

#include <string>
#include <vector>

#include "tqg/diagnostics.hpp"

namespace tqg {

/// Fixed diagnostics.csv column order. Floats use shortest round-trip
/// decimals so identical runs produce byte-identical files. A complete file
/// ends with a "# complete: <VERDICT>" marker line.
std::string diag_csv_header();
std::string diag_csv_row(const DiagnosticsRecord& r);

/// Parse one data row (exact inverse of diag_csv_row).
DiagnosticsRecord parse_diag_csv_row(const std::string& line);

/// Read all data rows of a diagnostics CSV, skipping the header and any
/// '#'-prefixed marker lines.
std::vector<DiagnosticsRecord> read_diag_csv(const std::string& path);

}  // namespace tqg
