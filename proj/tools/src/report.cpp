#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace orlicz::cli {

Json num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

std::string fmt_g(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

void Report::check(const std::string& what, bool pass, const std::string& detail) {
  assertions.push_back({what, pass, detail});
}

bool Report::passed() const {
  for (const auto& a : assertions)
    if (!a.pass) return false;
  return true;
}

Json Report::to_json() const {
  Json j;
  j["schema"] = 1;
  j["experiment"] = experiment;
  j["name"] = name;
  j["config"] = config;
  j["results"] = results;
  Json as = Json::array();
  for (const auto& a : assertions) as.push_back({{"name", a.name}, {"pass", a.pass}, {"detail", a.detail}});
  j["assertions"] = as;
  Json files = Json::array();
  for (const auto& t : tables) files.push_back(name + "." + t.name + ".csv");
  for (const auto& f : fields) files.push_back(name + "." + f.name + ".csv");
  j["files"] = files;
  j["passed"] = passed();
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string table_csv(const Table& t) {
  std::string out;
  for (std::size_t c = 0; c < t.columns.size(); ++c) out += (c ? "," : "") + t.columns[c];
  out += "\n";
  char buf[64];
  for (const auto& row : t.rows) {
    if (row.size() != t.columns.size()) throw std::logic_error("table '" + t.name + "': ragged row");
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ",";
      const Json& v = row[c];
      if (v.is_number_float()) {
        std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
        out += buf;
      } else if (v.is_string()) {
        out += v.get<std::string>();
      } else {
        out += v.dump();
      }
    }
    out += "\n";
  }
  return out;
}

namespace {

void write_text(const std::filesystem::path& p, const std::string& s) {
  std::ofstream o(p, std::ios::binary);
  if (!o) throw std::runtime_error("cannot write " + p.string());
  o << s;
}

}  // namespace

std::vector<std::filesystem::path> write_report(const Report& r, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> out;
  for (const auto& t : r.tables) {
    out.push_back(dir / (r.name + "." + t.name + ".csv"));
    write_text(out.back(), table_csv(t));
  }
  for (const auto& f : r.fields) {
    out.push_back(dir / (r.name + "." + f.name + ".csv"));
    write_field_csv(out.back().string(), f.field);
  }
  out.push_back(dir / (r.name + ".json"));
  write_text(out.back(), dump(r.to_json()));
  return out;
}

}  // namespace orlicz::cli
