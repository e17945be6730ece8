#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "olplan/harness/experiment.hpp"

namespace olplan::harness {

/// Column order of every CSV the tool writes.
const std::vector<std::string>& csv_columns();

/// 12 significant digits; NaN and missing values are empty fields.
std::string format_number(double x);

void write_csv(std::ostream& out, const std::vector<RunRecord>& records);
nlohmann::json to_json(const RunRecord& record);
void write_json(std::ostream& out, const std::vector<RunRecord>& records);

}  // namespace olplan::harness
