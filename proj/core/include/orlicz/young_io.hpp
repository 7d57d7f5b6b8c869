#pragma once

#include <string>
#include <utility>

#include "orlicz/young.hpp"

namespace orlicz {

// JSON form: {"kind": ..., "params": [...], "grid": {"min","max","points"}} plus
// "nodes", "density", "values" for tables.
std::string young_to_json(const YoungFunction& A);
YoungFunction young_from_json(const std::string& text);

// Family literal ("power:2", "zygmund:1:2", "exp:0.5", "eyring", "linf") or a path
// to a JSON file. Throws std::invalid_argument on malformed input.
YoungFunction parse_young(const std::string& spec);
// Two literals joined by ':' ("zygmund:1:1:power:1").
std::pair<YoungFunction, YoungFunction> parse_young_pair(const std::string& spec);

}  // namespace orlicz
