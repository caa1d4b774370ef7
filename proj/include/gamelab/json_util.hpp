#pragma once

#include <json.hpp>

#include "gamelab/pebbled.hpp"

namespace gamelab {

nlohmann::json parse_json(const std::string& text);
nlohmann::json structure_to_json(const Structure& s);
Structure structure_from_json(const nlohmann::json& j);
PebbledStructure pebbled_from_json(const nlohmann::json& j);

}  // namespace gamelab
