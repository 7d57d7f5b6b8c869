#pragma once

#include <array>
#include <vector>

#include "orlicz/field.hpp"

namespace orlicz {

// Conforming triangulation of a polygon.
struct Triangulation {
  std::vector<Point2> vertices;
  std::vector<std::array<int, 3>> triangles;       // counter-clockwise
  std::vector<std::array<int, 2>> edges;           // lower vertex index first
  std::vector<std::array<int, 3>> triangle_edges;  // edge k joins local vertices k and k+1
  std::vector<std::array<int, 2>> edge_triangles;  // -1 for the missing side of a boundary edge
  std::vector<char> boundary_vertex;
  std::vector<std::vector<int>> patches;  // triangles sharing a vertex with each triangle
  double h = 0.0;                         // max triangle diameter
  double min_angle = 0.0;                 // degrees

  // Builds the topology; throws on degenerate or non-conforming input.
  static Triangulation from(std::vector<Point2> vertices, std::vector<std::array<int, 3>> triangles);

  double area(int t) const;
  double diameter(int t) const;
  Point2 centroid(int t) const;
  bool boundary_edge(int e) const { return edge_triangles[e][1] < 0; }
  std::size_t size() const { return triangles.size(); }
};

// [lo, hi] split into nx x ny squares, each cut along its rising diagonal.
Triangulation triangulate_rectangle(Point2 lo, Point2 hi, int nx, int ny);
// Unit square with mesh parameter 1/n.
Triangulation triangulate_square(int n);
// Each triangle into four through its edge midpoints.
Triangulation refine(const Triangulation& mesh);
// Ear-clipped coarse mesh of a simple polygon refined until h <= h_target.
// Axis-aligned rectangles get the structured mesh with square side <= h_target.
Triangulation triangulate(const std::vector<Point2>& polygon, double h_target);

}  // namespace orlicz
