#include "expressions.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace orlicz::cli {

namespace {

constexpr double pi = std::numbers::pi;

double norm(Point2 p) { return std::sqrt(p.x * p.x + p.y * p.y); }

}  // namespace

ScalarFunction random_trig(std::uint64_t seed) {
  std::mt19937_64 g(seed);
  std::normal_distribution<double> amp;
  std::uniform_int_distribution<int> wave(-3, 3);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * pi);
  std::vector<std::array<double, 4>> modes(6);
  for (auto& m : modes) {
    m[0] = amp(g);
    m[1] = wave(g);
    m[2] = wave(g);
    m[3] = phase(g);
  }
  return [modes](Point2 p) {
    double s = 0.0;
    for (const auto& m : modes) s += m[0] * std::cos(pi * (m[1] * p.x + m[2] * p.y) + m[3]);
    return s;
  };
}

ScalarFunction scalar_function(const std::string& id) {
  if (id == "const") return [](Point2) { return 1.0; };
  if (id == "x") return [](Point2 p) { return p.x; };
  if (id == "y") return [](Point2 p) { return p.y; };
  if (id == "step") return [](Point2 p) { return p.x > 0.5 ? 1.0 : -1.0; };
  if (id == "radial") return [](Point2 p) { return norm(p) - 2.0 / 3.0; };
  if (id == "log") return [](Point2 p) { return std::log(std::max(norm(p), 1e-12)); };
  if (id == "sin") return [](Point2 p) { return std::sin(2 * pi * p.x) * std::sin(2 * pi * p.y); };
  if (id == "bump") return [](Point2 p) { return std::sin(pi * p.x) * std::sin(pi * p.y); };
  if (id == "osc") return [](Point2 p) { return std::sin(8 * pi * p.x); };
  // integrable singularity at the origin corner
  if (id == "corner") return [](Point2 p) { return 1.0 / std::sqrt(std::max(norm(p), 1e-12)); };
  if (id.rfind("random:", 0) == 0) {
    const std::string s = id.substr(7);
    std::size_t used = 0;
    unsigned long long seed = 0;
    try {
      seed = std::stoull(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (s.empty() || used != s.size()) throw std::invalid_argument("bad seed in '" + id + "'");
    return random_trig(seed);
  }
  throw std::invalid_argument("unknown function id '" + id + "'");
}

bool is_scalar_function(const std::string& id) {
  try {
    scalar_function(id);
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

const std::vector<std::string>& negnorm_corpus() {
  static const std::vector<std::string> c = {"x",      "y",   "step",     "radial",   "log",
                                             "sin",    "osc", "random:1", "random:2", "random:3"};
  return c;
}

}  // namespace orlicz::cli
