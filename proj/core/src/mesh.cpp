#include "orlicz/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace orlicz {

namespace {

double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }

double norm(Point2 a) { return std::sqrt(dot(a, a)); }

}  // namespace

Triangulation Triangulation::from(std::vector<Point2> vertices, std::vector<std::array<int, 3>> triangles) {
  Triangulation m;
  m.vertices = std::move(vertices);
  m.triangles = std::move(triangles);
  const int nv = static_cast<int>(m.vertices.size());
  if (m.triangles.empty()) throw std::invalid_argument("Triangulation: no triangles");
  for (auto& t : m.triangles) {
    for (int v : t)
      if (v < 0 || v >= nv) throw std::invalid_argument("Triangulation: vertex index out of range");
    const Point2 a = m.vertices[t[0]], b = m.vertices[t[1]], c = m.vertices[t[2]];
    const double a2 = cross(b - a, c - a);
    if (std::abs(a2) < 1e-14 * std::max(1.0, dot(b - a, b - a)))
      throw std::invalid_argument("Triangulation: degenerate triangle");
    if (a2 < 0) std::swap(t[1], t[2]);
  }
  std::map<std::pair<int, int>, int> index;
  m.triangle_edges.resize(m.triangles.size());
  for (std::size_t t = 0; t < m.triangles.size(); ++t) {
    for (int k = 0; k < 3; ++k) {
      int a = m.triangles[t][k], b = m.triangles[t][(k + 1) % 3];
      if (a > b) std::swap(a, b);
      auto [it, fresh] = index.try_emplace({a, b}, static_cast<int>(m.edges.size()));
      if (fresh) {
        m.edges.push_back({a, b});
        m.edge_triangles.push_back({static_cast<int>(t), -1});
      } else {
        auto& et = m.edge_triangles[it->second];
        if (et[1] >= 0) throw std::invalid_argument("Triangulation: edge shared by more than two triangles");
        et[1] = static_cast<int>(t);
      }
      m.triangle_edges[t][k] = it->second;
    }
  }
  m.boundary_vertex.assign(nv, 0);
  for (std::size_t e = 0; e < m.edges.size(); ++e)
    if (m.edge_triangles[e][1] < 0) m.boundary_vertex[m.edges[e][0]] = m.boundary_vertex[m.edges[e][1]] = 1;

  std::vector<std::vector<int>> around(nv);
  for (std::size_t t = 0; t < m.triangles.size(); ++t)
    for (int v : m.triangles[t]) around[v].push_back(static_cast<int>(t));
  m.patches.resize(m.triangles.size());
  for (std::size_t t = 0; t < m.triangles.size(); ++t) {
    auto& p = m.patches[t];
    for (int v : m.triangles[t]) p.insert(p.end(), around[v].begin(), around[v].end());
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
  }

  m.min_angle = 180.0;
  for (std::size_t t = 0; t < m.triangles.size(); ++t) {
    m.h = std::max(m.h, m.diameter(static_cast<int>(t)));
    for (int k = 0; k < 3; ++k) {
      const Point2 p = m.vertices[m.triangles[t][k]];
      const Point2 u = m.vertices[m.triangles[t][(k + 1) % 3]] - p, w = m.vertices[m.triangles[t][(k + 2) % 3]] - p;
      const double ang = std::acos(std::clamp(dot(u, w) / (norm(u) * norm(w)), -1.0, 1.0));
      m.min_angle = std::min(m.min_angle, ang * 180.0 / std::numbers::pi);
    }
  }
  return m;
}

double Triangulation::area(int t) const {
  const auto& T = triangles[t];
  return 0.5 * cross(vertices[T[1]] - vertices[T[0]], vertices[T[2]] - vertices[T[0]]);
}

double Triangulation::diameter(int t) const {
  const auto& T = triangles[t];
  double d = 0.0;
  for (int k = 0; k < 3; ++k) d = std::max(d, norm(vertices[T[(k + 1) % 3]] - vertices[T[k]]));
  return d;
}

Point2 Triangulation::centroid(int t) const {
  const auto& T = triangles[t];
  return (1.0 / 3.0) * (vertices[T[0]] + vertices[T[1]] + vertices[T[2]]);
}

Triangulation triangulate_rectangle(Point2 lo, Point2 hi, int nx, int ny) {
  if (nx < 1 || ny < 1 || !(hi.x > lo.x) || !(hi.y > lo.y))
    throw std::invalid_argument("triangulate_rectangle: bad rectangle or resolution");
  std::vector<Point2> v;
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i)
      v.push_back({lo.x + (hi.x - lo.x) * i / nx, lo.y + (hi.y - lo.y) * j / ny});
  std::vector<std::array<int, 3>> t;
  auto id = [&](int i, int j) { return j * (nx + 1) + i; };
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      t.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      t.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  return Triangulation::from(std::move(v), std::move(t));
}

Triangulation triangulate_square(int n) { return triangulate_rectangle({0.0, 0.0}, {1.0, 1.0}, n, n); }

Triangulation refine(const Triangulation& m) {
  std::vector<Point2> v = m.vertices;
  const int nv = static_cast<int>(v.size());
  for (const auto& e : m.edges) v.push_back(0.5 * (m.vertices[e[0]] + m.vertices[e[1]]));
  std::vector<std::array<int, 3>> t;
  for (std::size_t k = 0; k < m.triangles.size(); ++k) {
    const auto& T = m.triangles[k];
    const auto& E = m.triangle_edges[k];
    const int m01 = nv + E[0], m12 = nv + E[1], m20 = nv + E[2];
    t.push_back({T[0], m01, m20});
    t.push_back({m01, T[1], m12});
    t.push_back({m20, m12, T[2]});
    t.push_back({m01, m12, m20});
  }
  return Triangulation::from(std::move(v), std::move(t));
}

namespace {

bool point_in_triangle(Point2 p, Point2 a, Point2 b, Point2 c) {
  const double d1 = cross(b - a, p - a), d2 = cross(c - b, p - b), d3 = cross(a - c, p - c);
  return d1 >= 0 && d2 >= 0 && d3 >= 0;
}

}  // namespace

Triangulation triangulate(const std::vector<Point2>& polygon, double h_target) {
  if (polygon.size() < 3 || !(h_target > 0.0)) throw std::invalid_argument("triangulate: bad polygon or h");
  std::vector<Point2> P = polygon;
  double a2 = 0.0;
  for (std::size_t i = 0; i < P.size(); ++i) a2 += cross(P[i], P[(i + 1) % P.size()]);
  if (std::abs(a2) < 1e-14) throw std::invalid_argument("triangulate: degenerate polygon");
  if (a2 < 0) std::reverse(P.begin(), P.end());

  if (P.size() == 4) {
    double x0 = P[0].x, x1 = P[0].x, y0 = P[0].y, y1 = P[0].y;
    for (auto p : P) {
      x0 = std::min(x0, p.x);
      x1 = std::max(x1, p.x);
      y0 = std::min(y0, p.y);
      y1 = std::max(y1, p.y);
    }
    const bool rect = std::all_of(P.begin(), P.end(), [&](Point2 p) {
      return (p.x == x0 || p.x == x1) && (p.y == y0 || p.y == y1);
    });
    if (rect) {
      const int n = std::max(1, static_cast<int>(std::ceil((x1 - x0) / h_target - 1e-9)));
      const int m = std::max(1, static_cast<int>(std::ceil((y1 - y0) / h_target - 1e-9)));
      return triangulate_rectangle({x0, y0}, {x1, y1}, n, m);
    }
  }

  // ear clipping
  std::vector<int> idx(P.size());
  for (std::size_t i = 0; i < P.size(); ++i) idx[i] = static_cast<int>(i);
  std::vector<std::array<int, 3>> tris;
  while (idx.size() > 3) {
    bool clipped = false;
    for (std::size_t i = 0; i < idx.size() && !clipped; ++i) {
      const int a = idx[(i + idx.size() - 1) % idx.size()], b = idx[i], c = idx[(i + 1) % idx.size()];
      if (cross(P[b] - P[a], P[c] - P[b]) <= 1e-14) continue;
      bool empty = true;
      for (int j : idx)
        if (j != a && j != b && j != c && point_in_triangle(P[j], P[a], P[b], P[c])) empty = false;
      if (!empty) continue;
      tris.push_back({a, b, c});
      idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(i));
      clipped = true;
    }
    if (!clipped) throw std::invalid_argument("triangulate: polygon is not simple");
  }
  tris.push_back({idx[0], idx[1], idx[2]});
  Triangulation m = Triangulation::from(P, tris);
  while (m.h > h_target) m = refine(m);
  return m;
}

}  // namespace orlicz
