#include "params.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace orlicz::cli {

const std::vector<std::string>& common_keys() {
  static const std::vector<std::string> k = {"experiment", "name", "seed", "output"};
  return k;
}

Params::Params(Json obj, std::vector<std::string> allowed) : obj_(std::move(obj)) {
  if (!obj_.is_object()) throw UsageError("config: experiment entry must be an object");
  if (!obj_.contains("experiment") || !obj_["experiment"].is_string())
    throw UsageError("config: missing string key 'experiment'");
  experiment_ = obj_["experiment"].get<std::string>();
  const auto& common = common_keys();
  allowed.insert(allowed.end(), common.begin(), common.end());
  for (const auto& [k, v] : obj_.items()) {
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
      throw UsageError("config: unknown key '" + k + "' for experiment '" + experiment_ + "'");
  }
}

void Params::type_error(const std::string& key, const char* expected) const {
  throw UsageError("config: key '" + key + "' of experiment '" + experiment_ + "' must be " + expected);
}

const Json& Params::at(const std::string& key) const {
  if (!obj_.contains(key)) throw UsageError("config: missing key '" + key + "' for experiment '" + experiment_ + "'");
  return obj_.at(key);
}

std::string Params::str(const std::string& key, const std::string& def) const {
  if (!has(key)) return def;
  const Json& v = obj_.at(key);
  if (!v.is_string()) type_error(key, "a string");
  return v.get<std::string>();
}

long long Params::integer(const std::string& key, long long def, long long lo, long long hi) const {
  if (!has(key)) return def;
  const Json& v = obj_.at(key);
  if (!v.is_number_integer()) type_error(key, "an integer");
  const long long x = v.get<long long>();
  if (x < lo || x > hi)
    throw UsageError("config: key '" + key + "' = " + std::to_string(x) + " outside [" + std::to_string(lo) + ", " +
                     std::to_string(hi) + "]");
  return x;
}

double Params::number(const std::string& key, double def) const {
  if (!has(key)) return def;
  const Json& v = obj_.at(key);
  if (!v.is_number()) type_error(key, "a number");
  return v.get<double>();
}

std::vector<std::string> Params::strings(const std::string& key, const std::vector<std::string>& def) const {
  if (!has(key)) return def;
  const Json& v = obj_.at(key);
  if (v.is_string()) return {v.get<std::string>()};
  if (!v.is_array() || v.empty()) type_error(key, "a string or a non-empty array of strings");
  std::vector<std::string> out;
  for (const auto& e : v) {
    if (!e.is_string()) type_error(key, "a string or a non-empty array of strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

std::vector<int> Params::integers(const std::string& key, const std::vector<int>& def, int lo, int hi) const {
  if (!has(key)) return def;
  const Json& v = obj_.at(key);
  std::vector<int> out;
  auto take = [&](const Json& e) {
    if (!e.is_number_integer()) type_error(key, "an integer or a non-empty array of integers");
    const long long x = e.get<long long>();
    if (x < lo || x > hi)
      throw UsageError("config: key '" + key + "' entry " + std::to_string(x) + " outside [" + std::to_string(lo) +
                       ", " + std::to_string(hi) + "]");
    out.push_back(static_cast<int>(x));
  };
  if (v.is_array()) {
    if (v.empty()) type_error(key, "a non-empty array of integers");
    for (const auto& e : v) take(e);
  } else {
    take(v);
  }
  return out;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("config: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    const std::size_t pos = std::min<std::size_t>(e.byte, text.size());
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < pos; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw UsageError(path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + e.what());
  }
}

}  // namespace orlicz::cli
