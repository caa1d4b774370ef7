#pragma once

#include <string>

#include "gamelab/pebbled.hpp"

namespace gamelab {

// JSON text format:
//   {"schema": {"relations": [{"name","arity"}], "constants": [..]}, "universe_size": n,
//    "relations": {name: [[..]]}, "constants": {name: e}, "labels": {"e": name},
//    "pebbles": [[color, e]]}
// Keys are emitted in alphabetical order and tuples sorted, so equal inputs save identically.
std::string save_structure(const Structure& s);
Structure load_structure(const std::string& text);

std::string save_pebbled(const PebbledStructure& p);
PebbledStructure load_pebbled(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace gamelab
