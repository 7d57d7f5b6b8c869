#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace orlicz {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }

// Uniform Cartesian grid of nx x ny square cells of side h.
struct CartesianGrid {
  Point2 origin;
  double h = 1.0;
  int nx = 0;
  int ny = 0;

  Point2 center(int ix, int iy) const { return {origin.x + (ix + 0.5) * h, origin.y + (iy + 0.5) * h}; }
  int index(int ix, int iy) const { return iy * nx + ix; }
  int cells() const { return nx * ny; }
};

// A subset of grid cells (those whose centroid lies in the domain).
struct CellDomain {
  CartesianGrid grid;
  std::vector<int> cells;   // grid indices, increasing
  std::vector<int> lookup;  // grid index -> position in cells, or -1

  static std::shared_ptr<const CellDomain> from_predicate(const CartesianGrid& grid,
                                                          const std::function<bool(Point2)>& inside);
  int at(int ix, int iy) const {
    if (ix < 0 || iy < 0 || ix >= grid.nx || iy >= grid.ny) return -1;
    return lookup[grid.index(ix, iy)];
  }
  double measure() const { return static_cast<double>(cells.size()) * grid.h * grid.h; }
};

// Cellwise constant samples of a scalar (1), vector (2) or matrix (4, row-major)
// field, stored component-interleaved.
class SampledField {
 public:
  SampledField() = default;
  SampledField(std::vector<Point2> centroids, std::vector<double> measures, int components,
               std::vector<double> values);
  // one value block per domain cell
  SampledField(std::shared_ptr<const CellDomain> domain, int components, std::vector<double> values);

  static SampledField sample(std::shared_ptr<const CellDomain> domain, int components,
                             const std::function<void(Point2, double*)>& f);

  std::size_t size() const { return measures_.size(); }
  int components() const { return components_; }
  Point2 centroid(std::size_t i) const { return centroids_[i]; }
  double measure(std::size_t i) const { return measures_[i]; }
  double value(std::size_t i, int c = 0) const { return values_[i * components_ + c]; }
  double& value(std::size_t i, int c = 0) { return values_[i * components_ + c]; }
  std::span<const double> values() const { return values_; }
  std::span<const double> measures() const { return measures_; }
  const std::vector<Point2>& centroids() const { return centroids_; }
  const std::shared_ptr<const CellDomain>& domain() const { return domain_; }

  // Euclidean (vector) or Frobenius (matrix) modulus at sample i.
  double modulus(std::size_t i) const;
  std::vector<double> moduli() const;
  double total_measure() const;
  double integral(int c = 0) const;
  double mean(int c = 0) const { return integral(c) / total_measure(); }
  double max_modulus() const;

  bool same_geometry(const SampledField& other) const;
  SampledField with_values(int components, std::vector<double> values) const;
  SampledField scaled(double s) const;

 private:
  std::vector<Point2> centroids_;
  std::vector<double> measures_;
  std::vector<double> values_;
  int components_ = 1;
  std::shared_ptr<const CellDomain> domain_;
};

// CSV with header "x,y,measure,v0[,v1,...]".
SampledField read_field_csv(const std::string& path);
void write_field_csv(const std::string& path, const SampledField& f);

}  // namespace orlicz
