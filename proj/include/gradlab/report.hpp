#pragma once

#include <ostream>
#include <string>

#include "gradlab/experiment.hpp"

namespace gradlab {

/// level,index,field,b0,b1,b2,d_lower,d_upper,def_lower,def_upper,vol2_ratio,target_rg,target_dg
inline constexpr const char* kCsvHeader =
    "level,index,field,b0,b1,b2,d_lower,d_upper,def_lower,def_upper,vol2_ratio,target_rg,target_dg";

/// Missing values are empty cells (CSV) or null (JSON).
void emit_csv(const GradientTable& t, std::ostream& os);
nlohmann::json report_json(const GradientTable& t);
/// format is "csv" or "json"; throws std::invalid_argument otherwise.
void emit_report(const GradientTable& t, const std::string& format, std::ostream& os);
/// Writes to a file; throws std::runtime_error on I/O failure.
void emit_report(const GradientTable& t, const std::string& format, const std::string& path);

/// Inverse of emit_csv for the CSV columns.
GradientTable parse_csv_report(const std::string& text);
GradientTable parse_json_report(const nlohmann::json& j);

void emit_mv_report(const MvReport& r, const std::string& format, std::ostream& os);

}  // namespace gradlab
