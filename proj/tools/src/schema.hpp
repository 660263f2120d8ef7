#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace mfap::cli {

// Checks `value` against a JSON Schema. Only the keywords the report
// schemas use are understood: type, required, properties, items, minimum.
// Returns the violations found, each prefixed by a JSON pointer.
std::vector<std::string> validate(const nlohmann::json& value, const nlohmann::json& schema);

// Schema of a complete report (envelope plus the result for `kind`).
const nlohmann::json& report_schema(const std::string& kind);

// Parses `text` and validates it against the schema of its own "kind".
std::vector<std::string> validate_report_text(const std::string& text);

}  // namespace mfap::cli
