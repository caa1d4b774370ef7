#include "gamelab/search.hpp"

#include <cstdlib>

namespace gamelab {

std::string to_string(Winner w) {
  switch (w) {
    case Winner::Spoiler: return "SPOILER";
    case Winner::Duplicator: return "DUPLICATOR";
    default: return "UNKNOWN";
  }
}

SearchLimits SearchLimits::from_env() {
  SearchLimits l;
  if (const char* v = std::getenv("GAMELAB_MAX_NODES")) l.max_nodes = std::strtoull(v, nullptr, 10);
  if (const char* v = std::getenv("GAMELAB_MAX_SECONDS")) l.max_seconds = std::strtod(v, nullptr);
  return l;
}

}  // namespace gamelab
