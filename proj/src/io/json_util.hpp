#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <string_view>

#include "tsa/influence.hpp"

namespace tsa::io {

SimParams params_from_json(const nlohmann::json& obj);
nlohmann::ordered_json params_to_json(const SimParams& params);

// Throws ParseError located at the offending byte; `line` is the line number
// of the first character of `text` within `file`.
nlohmann::json parse_json_text(std::string_view text, const std::string& file, std::size_t line);

}  // namespace tsa::io
