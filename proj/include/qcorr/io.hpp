#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"
#include "qcorr/report.hpp"

namespace qcorr {

/// {"dims": [d1, ..., dN], "matrix": rows of [re, im] pairs}
DensityMatrix parse_state_json(std::string_view text);
DensityMatrix load_state_file(const std::filesystem::path& path);
std::string state_to_json(const DensityMatrix& rho);
void save_state_file(const DensityMatrix& rho, const std::filesystem::path& path);

nlohmann::json matrix_to_json(const Matrix& m);
nlohmann::json basis_to_json(const LocalBasisSet& basis);
nlohmann::json report_to_json(const CorrelationReport& report);

inline constexpr std::string_view kCsvVersion = "qcorr-csv-1";

/// Header line (no trailing newline).
std::string csv_header();
/// 9 significant digits; "inf" for infinities, empty for missing values.
std::string format_number(double x);
/// RFC-4180 field quoting.
std::string csv_quote(std::string_view field);
/// One row for a computed report; `error` marks a row whose computation
/// failed outright.
std::string csv_row(std::string_view family, std::string_view params, const CorrelationReport* report,
                    std::string_view error = {});

/// Accepts "A", "B", ... or decimal indices, comma separated.
IndexSet parse_index_set(std::string_view text);

}  // namespace qcorr
