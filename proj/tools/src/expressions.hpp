#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "orlicz/field.hpp"

namespace orlicz::cli {

using ScalarFunction = std::function<double(Point2)>;

// Named scalar test functions:
//   const, x, y, step, radial (|x| - 2/3), log, sin, bump, osc, corner, random:<seed>
// Throws std::invalid_argument for unknown ids.
ScalarFunction scalar_function(const std::string& id);
bool is_scalar_function(const std::string& id);

// Smooth random trigonometric sum with six modes, reproducible from the seed.
ScalarFunction random_trig(std::uint64_t seed);

// The ten-function corpus used by the negative-norm stability runs.
const std::vector<std::string>& negnorm_corpus();

}  // namespace orlicz::cli
