#include "builders.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "expressions.hpp"
#include "orlicz/quadrature.hpp"
#include "orlicz/young_io.hpp"

namespace orlicz::cli {

namespace {

std::string bad(const std::string& flag, const std::string& spec, const std::string& why) {
  return "invalid " + flag + " '" + spec + "': " + why;
}

Point2 point_of(const Json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw UsageError(what + ": expected [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

double fraction(const std::string& s) {
  const auto slash = s.find('/');
  std::size_t used = 0;
  if (slash == std::string::npos) {
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("bad number '" + s + "'");
    return v;
  }
  const std::string a = s.substr(0, slash), b = s.substr(slash + 1);
  const double num = std::stod(a, &used);
  if (used != a.size()) throw std::invalid_argument("bad number '" + s + "'");
  const double den = std::stod(b, &used);
  if (used != b.size() || den == 0.0) throw std::invalid_argument("bad number '" + s + "'");
  return num / den;
}

}  // namespace

YoungFunction young_arg(const std::string& spec, const std::string& flag) {
  try {
    return parse_young(spec);
  } catch (const std::exception& e) {
    throw UsageError(bad(flag, spec, e.what()));
  }
}

std::pair<YoungFunction, YoungFunction> pair_arg(const std::string& spec, const std::string& flag) {
  try {
    return parse_young_pair(spec);
  } catch (const std::exception& e) {
    throw UsageError(bad(flag, spec, e.what()));
  }
}

StressLaw law_arg(const std::string& spec, const std::string& flag) {
  try {
    return parse_stress_law(spec);
  } catch (const std::exception& e) {
    throw UsageError(bad(flag, spec, e.what()));
  }
}

StarDomain domain_arg(const std::string& spec, const std::string& flag) {
  if (spec == "disk") return StarDomain::disk({0.0, 0.0}, 1.0, {{0.0, 0.0}, 0.5});
  if (spec == "square") return StarDomain::rectangle({0.0, 0.0}, {1.0, 1.0}, {{0.5, 0.5}, 0.25});
  Json j;
  try {
    j = load_json_file(spec);
  } catch (const UsageError& e) {
    throw UsageError(bad(flag, spec, std::string("not disk, square or a readable polygon file (") + e.what() + ")"));
  }
  try {
    if (!j.is_object() || !j.contains("vertices") || !j.contains("ball"))
      throw UsageError("expected keys 'vertices' and 'ball'");
    for (const auto& [k, v] : j.items())
      if (k != "vertices" && k != "ball") throw UsageError("unknown key '" + k + "'");
    std::vector<Point2> v;
    for (const auto& p : j["vertices"]) v.push_back(point_of(p, "vertices"));
    const Json& b = j["ball"];
    if (!b.is_object() || !b.contains("center") || !b.contains("radius") || !b["radius"].is_number())
      throw UsageError("ball needs 'center' and 'radius'");
    return StarDomain::polygon(v, {point_of(b["center"], "ball.center"), b["radius"].get<double>()});
  } catch (const std::exception& e) {
    throw UsageError(bad(flag, spec, e.what()));
  }
}

DomainDecomposition lshape() {
  return DomainDecomposition({StarDomain::rectangle({0.0, 0.0}, {2.0, 1.0}, {{1.0, 0.5}, 0.4}),
                              StarDomain::rectangle({0.0, 0.0}, {1.0, 2.0}, {{0.5, 1.0}, 0.4})});
}

SampledField input_field(const std::string& spec, const std::shared_ptr<const CellDomain>& dom,
                         const std::string& flag) {
  if (is_scalar_function(spec)) {
    const auto fn = scalar_function(spec);
    return SampledField::sample(dom, 1, [&](Point2 p, double* v) { v[0] = fn(p); });
  }
  SampledField csv;
  try {
    csv = read_field_csv(spec);
  } catch (const std::exception& e) {
    throw UsageError(bad(flag, spec, std::string("not a function id or a readable CSV (") + e.what() + ")"));
  }
  const auto& g = dom->grid;
  std::vector<double> vals(dom->cells.size(), 0.0);
  std::vector<char> hit(dom->cells.size(), 0);
  for (std::size_t i = 0; i < csv.size(); ++i) {
    const Point2 c = csv.centroid(i);
    const double fx = (c.x - g.origin.x) / g.h - 0.5, fy = (c.y - g.origin.y) / g.h - 0.5;
    const int ix = static_cast<int>(std::lround(fx)), iy = static_cast<int>(std::lround(fy));
    if (std::abs(fx - ix) > 0.25 || std::abs(fy - iy) > 0.25) continue;
    const int k = dom->at(ix, iy);
    if (k < 0) continue;
    vals[k] = csv.value(i, 0);
    hit[k] = 1;
  }
  for (std::size_t k = 0; k < hit.size(); ++k)
    if (!hit[k])
      throw UsageError(bad(flag, spec, "no row for the cell centred at (" + fmt_g(g.center(dom->cells[k] % g.nx, dom->cells[k] / g.nx).x) + ", " +
                                           fmt_g(g.center(dom->cells[k] % g.nx, dom->cells[k] / g.nx).y) + ")"));
  return SampledField(dom, 1, std::move(vals));
}

std::vector<std::shared_ptr<const Triangulation>> meshes_arg(const std::string& spec, const std::string& flag) {
  std::vector<std::shared_ptr<const Triangulation>> out;
  if (spec.rfind("square:", 0) == 0) {
    std::stringstream ss(spec.substr(7));
    for (std::string h; std::getline(ss, h, ',');) {
      double v = 0.0;
      try {
        v = fraction(h);
      } catch (const std::exception&) {
        throw UsageError(bad(flag, spec, "bad mesh size '" + h + "'"));
      }
      const double n = 1.0 / v;
      if (!(v > 0.0) || std::abs(n - std::round(n)) > 1e-9 || n > 256)
        throw UsageError(bad(flag, spec, "h must be 1/n with n <= 256"));
      out.push_back(std::make_shared<const Triangulation>(triangulate_square(static_cast<int>(std::lround(n)))));
    }
    if (out.empty()) throw UsageError(bad(flag, spec, "no mesh sizes"));
    return out;
  }
  Json j;
  try {
    j = load_json_file(spec);
  } catch (const UsageError& e) {
    throw UsageError(bad(flag, spec, std::string("not square:h or a readable polygon file (") + e.what() + ")"));
  }
  try {
    if (!j.is_object() || !j.contains("vertices") || !j.contains("h")) throw UsageError("expected keys 'vertices' and 'h'");
    std::vector<Point2> v;
    for (const auto& p : j["vertices"]) v.push_back(point_of(p, "vertices"));
    std::vector<double> hs;
    if (j["h"].is_number()) hs.push_back(j["h"].get<double>());
    else
      for (const auto& h : j["h"]) hs.push_back(h.get<double>());
    for (double h : hs) out.push_back(std::make_shared<const Triangulation>(triangulate(v, h)));
  } catch (const std::exception& e) {
    throw UsageError(bad(flag, spec, e.what()));
  }
  return out;
}

QuadratureSpec quad_arg(const Params& p) {
  QuadratureSpec q;
  if (!p.has("quad")) return q;
  const Json& v = p.raw().at("quad");
  auto get = [&](const Json& x, const std::string& key, int lo, int hi) {
    if (!x.is_number_integer() || x.get<long long>() < lo || x.get<long long>() > hi)
      throw UsageError("invalid --quad: '" + key + "' must be an integer in [" + std::to_string(lo) + ", " +
                       std::to_string(hi) + "]");
    return static_cast<int>(x.get<long long>());
  };
  if (v.is_number_integer()) {
    q.ray_nodes = get(v, "nodes", 1, 64);
    return q;
  }
  if (!v.is_object()) throw UsageError("invalid --quad: expected an integer or an object");
  for (const auto& [k, x] : v.items()) {
    if (k == "ray_nodes") q.ray_nodes = get(x, k, 1, 64);
    else if (k == "polar_refine") q.polar_refine = get(x, k, 1, 64);
    else if (k == "near_radius") q.near_radius = get(x, k, 0, 16);
    else if (k == "face_nodes") q.face_nodes = get(x, k, 1, 8);
    else throw UsageError("invalid --quad: unknown key '" + k + "'");
  }
  return q;
}

VectorFunction manufactured_velocity() {
  constexpr double pi = std::numbers::pi;
  return {[](Point2 x) {
            const double b = std::sin(pi * x.x) * std::sin(pi * x.y);
            return Point2{b * std::exp(x.x), b * std::cos(3.0 * x.y)};
          },
          [](Point2 x, double g[4]) {
            const double sx = std::sin(pi * x.x), cx = std::cos(pi * x.x);
            const double sy = std::sin(pi * x.y), cy = std::cos(pi * x.y);
            const double b = sx * sy, bx = pi * cx * sy, by = pi * sx * cy;
            g[0] = (bx + b) * std::exp(x.x);
            g[1] = by * std::exp(x.x);
            g[2] = bx * std::cos(3.0 * x.y);
            g[3] = by * std::cos(3.0 * x.y) - 3.0 * b * std::sin(3.0 * x.y);
          }};
}

std::vector<double> exact_element_divergence(const Triangulation& mesh, const VectorFunction& u) {
  const GaussRule& g = gauss_legendre(12);
  std::vector<double> out(mesh.size(), 0.0);
  for (std::size_t t = 0; t < mesh.size(); ++t) {
    const auto& T = mesh.triangles[t];
    for (int k = 0; k < 3; ++k) {
      const Point2 a = mesh.vertices[T[k]], b = mesh.vertices[T[(k + 1) % 3]];
      const Point2 d = b - a;
      // outward normal times the edge length for a counter-clockwise triangle
      const Point2 n = {d.y, -d.x};
      for (std::size_t q = 0; q < g.nodes.size(); ++q) {
        const double s = 0.5 * (1.0 + g.nodes[q]);
        out[t] += 0.5 * g.weights[q] * dot(u.value(a + s * d), n);
      }
    }
  }
  return out;
}

}  // namespace orlicz::cli
