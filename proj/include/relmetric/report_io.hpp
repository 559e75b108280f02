#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "relmetric/verification.hpp"

namespace relmetric {

enum class OutputFormat { Json, Csv };

OutputFormat output_format_from_string(const std::string& s);

// JSON forms. Every *_from_json accepts exactly what to_json writes and throws
// ParseError otherwise.
nlohmann::json to_json(const SearchConfig& cfg);
SearchConfig search_config_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ViolationReport& r);
ViolationReport violation_report_from_json(const nlohmann::json& j);

nlohmann::json to_json(const OrderReport& r);
OrderReport order_report_from_json(const nlohmann::json& j);

nlohmann::json to_json(const RegionTable& t);
RegionTable region_table_from_json(const nlohmann::json& j);

nlohmann::json to_json(const PredicateResult& r);
PredicateResult predicate_result_from_json(const nlohmann::json& j);

nlohmann::json to_json(const PlemReport& r);
PlemReport plem_report_from_json(const nlohmann::json& j);

// CSV forms. Scalars that do not fit the row layout go into leading "# key=value"
// lines; point coordinates inside a field are separated by spaces.
std::string to_csv(const SearchConfig& cfg);
SearchConfig search_config_from_csv(std::string_view text);

std::string to_csv(const ViolationReport& r);
ViolationReport violation_report_from_csv(std::string_view text);

std::string to_csv(const OrderReport& r);
OrderReport order_report_from_csv(std::string_view text);

std::string to_csv(const RegionTable& t);
RegionTable region_table_from_csv(std::string_view text);

// "# key=value" lines carrying every field of the config, for report headers.
std::string csv_config_header(const SearchConfig& cfg);

// Shortest text that parses back to the same double ("inf", "-inf", "nan" included).
std::string format_double(double v);

}  // namespace relmetric
