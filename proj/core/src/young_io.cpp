#include "orlicz/young_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace orlicz {

namespace {

using nlohmann::json;

json encode_samples(const std::vector<double>& v) {
  // +inf is not representable in JSON; encode as null
  json a = json::array();
  for (double x : v) a.push_back(std::isfinite(x) ? json(x) : json(nullptr));
  return a;
}

std::vector<double> decode_samples(const json& a) {
  std::vector<double> v;
  for (const auto& x : a) v.push_back(x.is_null() ? std::numeric_limits<double>::infinity() : x.get<double>());
  return v;
}

YoungKind kind_from(const std::string& s) {
  if (s == "power") return YoungKind::power;
  if (s == "zygmund") return YoungKind::zygmund;
  if (s == "exponential") return YoungKind::exponential;
  if (s == "eyring") return YoungKind::eyring;
  if (s == "linear_cap") return YoungKind::linear_cap;
  if (s == "tabulated") return YoungKind::tabulated;
  throw std::invalid_argument("unknown Young kind '" + s + "'");
}

YoungFunction from_json_value(const json& j) {
  const YoungKind kind = kind_from(j.at("kind").get<std::string>());
  if (kind == YoungKind::tabulated) {
    std::vector<double> values;
    if (j.contains("values")) values = decode_samples(j.at("values"));
    return YoungFunction::tabulated(j.at("nodes").get<std::vector<double>>(), decode_samples(j.at("density")),
                                    std::move(values));
  }
  YoungGrid grid;
  if (j.contains("grid")) {
    const auto& g = j.at("grid");
    grid.min = g.value("min", grid.min);
    grid.max = g.value("max", grid.max);
    grid.points = g.value("points", grid.points);
  }
  const auto p = j.value("params", std::vector<double>{});
  auto need = [&](std::size_t n) {
    if (p.size() != n) throw std::invalid_argument("Young JSON: wrong number of params");
  };
  switch (kind) {
    case YoungKind::power:
      if (p.size() == 1) return YoungFunction::power(p[0], 1.0, grid);
      need(2);
      return YoungFunction::power(p[0], p[1], grid);
    case YoungKind::zygmund:
      need(2);
      return YoungFunction::zygmund(p[0], p[1], grid);
    case YoungKind::exponential:
      need(1);
      return YoungFunction::exponential(p[0], grid);
    case YoungKind::eyring:
      return YoungFunction::eyring(grid);
    case YoungKind::linear_cap:
      return YoungFunction::linear_cap(p.empty() ? 1.0 : p[0], grid);
    case YoungKind::tabulated:
      break;
  }
  throw std::invalid_argument("Young JSON: bad kind");
}

double to_number(const std::string& tok, const std::string& ctx) {
  double v = 0.0;
  const char* b = tok.data();
  const char* e = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || ptr != e) throw std::invalid_argument("bad number '" + tok + "' in '" + ctx + "'");
  return v;
}

// "x" or "x*c"
std::pair<double, double> scaled(const std::string& tok, const std::string& ctx) {
  const auto star = tok.find('*');
  if (star == std::string::npos) return {to_number(tok, ctx), 1.0};
  return {to_number(tok.substr(0, star), ctx), to_number(tok.substr(star + 1), ctx)};
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

bool looks_like_path(const std::string& tok) {
  return tok.find('/') != std::string::npos ||
         (tok.size() > 5 && tok.compare(tok.size() - 5, 5, ".json") == 0);
}

YoungFunction load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open Young function file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return young_from_json(ss.str());
}

// consumes one literal from toks starting at i
YoungFunction consume(const std::vector<std::string>& toks, std::size_t& i, const std::string& ctx) {
  if (i >= toks.size()) throw std::invalid_argument("missing Young function in '" + ctx + "'");
  const std::string head = toks[i++];
  auto arg = [&]() -> const std::string& {
    if (i >= toks.size()) throw std::invalid_argument("missing parameter for '" + head + "' in '" + ctx + "'");
    return toks[i++];
  };
  if (looks_like_path(head)) return load_file(head);
  if (head == "power") {
    auto [p, c] = scaled(arg(), ctx);
    return YoungFunction::power(p, c);
  }
  if (head == "zygmund") {
    const double p = to_number(arg(), ctx);
    const double a = to_number(arg(), ctx);
    return YoungFunction::zygmund(p, a);
  }
  if (head == "exp") return YoungFunction::exponential(to_number(arg(), ctx));
  if (head == "eyring") return YoungFunction::eyring();
  if (head == "linf") return YoungFunction::linear_cap(1.0);
  if (head.rfind("linf*", 0) == 0) return YoungFunction::linear_cap(to_number(head.substr(5), ctx));
  throw std::invalid_argument("unknown Young family '" + head + "' in '" + ctx + "'");
}

}  // namespace

std::string young_to_json(const YoungFunction& A) {
  json j;
  j["kind"] = to_string(A.kind());
  if (A.kind() == YoungKind::tabulated) {
    j["nodes"] = A.nodes();
    j["density"] = encode_samples(A.density_samples());
    j["values"] = encode_samples(A.value_samples());
  } else {
    j["params"] = A.params();
    j["grid"] = {{"min", A.grid().min}, {"max", A.grid().max}, {"points", A.grid().points}};
  }
  return j.dump();
}

YoungFunction young_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("Young JSON: ") + e.what());
  }
  try {
    return from_json_value(j);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("Young JSON: ") + e.what());
  }
}

YoungFunction parse_young(const std::string& spec) {
  const auto toks = split(spec, ':');
  std::size_t i = 0;
  YoungFunction A = consume(toks, i, spec);
  if (i != toks.size()) throw std::invalid_argument("trailing tokens in Young literal '" + spec + "'");
  return A;
}

std::pair<YoungFunction, YoungFunction> parse_young_pair(const std::string& spec) {
  const auto toks = split(spec, ':');
  std::size_t i = 0;
  YoungFunction A = consume(toks, i, spec);
  YoungFunction B = consume(toks, i, spec);
  if (i != toks.size()) throw std::invalid_argument("trailing tokens in Young pair '" + spec + "'");
  return {std::move(A), std::move(B)};
}

}  // namespace orlicz
