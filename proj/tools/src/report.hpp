#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "orlicz/field.hpp"

namespace orlicz::cli {

using Json = nlohmann::ordered_json;

// Non-finite doubles become the strings "inf", "-inf", "nan".
Json num(double x);

struct Assertion {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Json>> rows;
};

struct FieldOutput {
  std::string name;
  SampledField field;
};

struct Report {
  std::string experiment;
  std::string name;
  Json config = Json::object();
  Json results = Json::object();
  std::vector<Assertion> assertions;
  std::vector<Table> tables;
  std::vector<FieldOutput> fields;

  void check(const std::string& what, bool pass, const std::string& detail = {});
  bool passed() const;
  Json to_json() const;
};

// Two-space indented, trailing newline.
std::string dump(const Json& j);
std::string table_csv(const Table& t);
// <dir>/<name>.json, <dir>/<name>.<table>.csv, <dir>/<name>.<field>.csv; returns the paths written.
std::vector<std::filesystem::path> write_report(const Report& r, const std::filesystem::path& dir);

// printf-style "%.6g" helper for assertion details
std::string fmt_g(double x);

}  // namespace orlicz::cli
