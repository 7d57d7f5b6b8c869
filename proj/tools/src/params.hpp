#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "report.hpp"

namespace orlicz::cli {

// Bad flags, malformed specs, unknown or mistyped config keys: exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Typed, strict view of one experiment's config object.
class Params {
 public:
  Params(Json obj, std::vector<std::string> allowed);

  bool has(const std::string& key) const { return obj_.contains(key); }
  const Json& raw() const { return obj_; }
  const std::string& experiment() const { return experiment_; }

  std::string str(const std::string& key, const std::string& def) const;
  long long integer(const std::string& key, long long def, long long lo, long long hi) const;
  double number(const std::string& key, double def) const;
  // a single string is a one-element list
  std::vector<std::string> strings(const std::string& key, const std::vector<std::string>& def) const;
  std::vector<int> integers(const std::string& key, const std::vector<int>& def, int lo, int hi) const;
  const Json& at(const std::string& key) const;

 private:
  [[noreturn]] void type_error(const std::string& key, const char* expected) const;
  Json obj_;
  std::string experiment_;
};

// Keys accepted by every experiment.
const std::vector<std::string>& common_keys();

// Reads a JSON file; parse errors carry line and column.
Json load_json_file(const std::string& path);

}  // namespace orlicz::cli
