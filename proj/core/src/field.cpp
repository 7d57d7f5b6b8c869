#include "orlicz/field.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace orlicz {

std::shared_ptr<const CellDomain> CellDomain::from_predicate(const CartesianGrid& grid,
                                                             const std::function<bool(Point2)>& inside) {
  if (grid.nx <= 0 || grid.ny <= 0 || !(grid.h > 0.0)) throw std::invalid_argument("CellDomain: empty grid");
  auto d = std::make_shared<CellDomain>();
  d->grid = grid;
  d->lookup.assign(grid.cells(), -1);
  for (int iy = 0; iy < grid.ny; ++iy)
    for (int ix = 0; ix < grid.nx; ++ix)
      if (inside(grid.center(ix, iy))) {
        d->lookup[grid.index(ix, iy)] = static_cast<int>(d->cells.size());
        d->cells.push_back(grid.index(ix, iy));
      }
  if (d->cells.empty()) throw std::invalid_argument("CellDomain: no cell centroid inside the domain");
  return d;
}

SampledField::SampledField(std::vector<Point2> centroids, std::vector<double> measures, int components,
                           std::vector<double> values)
    : centroids_(std::move(centroids)),
      measures_(std::move(measures)),
      values_(std::move(values)),
      components_(components) {
  if (components != 1 && components != 2 && components != 4)
    throw std::invalid_argument("SampledField: components must be 1, 2 or 4");
  if (centroids_.size() != measures_.size() || values_.size() != measures_.size() * components)
    throw std::invalid_argument("SampledField: size mismatch");
  for (double m : measures_)
    if (!(m > 0.0)) throw std::invalid_argument("SampledField: measures must be positive");
}

SampledField::SampledField(std::shared_ptr<const CellDomain> domain, int components, std::vector<double> values)
    : values_(std::move(values)), components_(components), domain_(std::move(domain)) {
  if (!domain_) throw std::invalid_argument("SampledField: null domain");
  if (components != 1 && components != 2 && components != 4)
    throw std::invalid_argument("SampledField: components must be 1, 2 or 4");
  const auto& g = domain_->grid;
  if (values_.size() != domain_->cells.size() * components)
    throw std::invalid_argument("SampledField: size mismatch");
  centroids_.reserve(domain_->cells.size());
  for (int idx : domain_->cells) centroids_.push_back(g.center(idx % g.nx, idx / g.nx));
  measures_.assign(domain_->cells.size(), g.h * g.h);
}

SampledField SampledField::sample(std::shared_ptr<const CellDomain> domain, int components,
                                  const std::function<void(Point2, double*)>& f) {
  std::vector<double> v(domain->cells.size() * components);
  const auto& g = domain->grid;
  for (std::size_t i = 0; i < domain->cells.size(); ++i) {
    const int idx = domain->cells[i];
    f(g.center(idx % g.nx, idx / g.nx), v.data() + i * components);
  }
  return SampledField(std::move(domain), components, std::move(v));
}

double SampledField::modulus(std::size_t i) const {
  if (components_ == 1) return std::abs(values_[i]);
  double s = 0.0;
  for (int c = 0; c < components_; ++c) s += values_[i * components_ + c] * values_[i * components_ + c];
  return std::sqrt(s);
}

std::vector<double> SampledField::moduli() const {
  std::vector<double> m(size());
  for (std::size_t i = 0; i < size(); ++i) m[i] = modulus(i);
  return m;
}

double SampledField::total_measure() const {
  double s = 0.0;
  for (double m : measures_) s += m;
  return s;
}

double SampledField::integral(int c) const {
  double s = 0.0;
  for (std::size_t i = 0; i < size(); ++i) s += measures_[i] * value(i, c);
  return s;
}

double SampledField::max_modulus() const {
  double m = 0.0;
  for (std::size_t i = 0; i < size(); ++i) m = std::max(m, modulus(i));
  return m;
}

bool SampledField::same_geometry(const SampledField& o) const {
  if (domain_ && domain_ == o.domain_) return true;
  if (size() != o.size()) return false;
  for (std::size_t i = 0; i < size(); ++i) {
    if (measures_[i] != o.measures_[i] || centroids_[i].x != o.centroids_[i].x ||
        centroids_[i].y != o.centroids_[i].y)
      return false;
  }
  return true;
}

SampledField SampledField::with_values(int components, std::vector<double> values) const {
  SampledField f = *this;
  if (components != 1 && components != 2 && components != 4)
    throw std::invalid_argument("SampledField: components must be 1, 2 or 4");
  if (values.size() != size() * components) throw std::invalid_argument("SampledField: size mismatch");
  f.components_ = components;
  f.values_ = std::move(values);
  return f;
}

SampledField SampledField::scaled(double s) const {
  SampledField f = *this;
  for (double& v : f.values_) v *= s;
  return f;
}

SampledField read_field_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open field file '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty field file '" + path + "'");
  int cols = 1;
  for (char c : line) cols += c == ',';
  const int comps = cols - 3;
  if (comps != 1 && comps != 2 && comps != 4)
    throw std::invalid_argument("field file '" + path + "': expected x,y,measure and 1, 2 or 4 value columns");
  std::vector<Point2> pts;
  std::vector<double> meas, vals;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string tok;
    std::vector<double> row;
    while (std::getline(ss, tok, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(tok, &used));
      } catch (const std::exception&) {
        throw std::invalid_argument("field file '" + path + "' line " + std::to_string(lineno) + ": bad number");
      }
    }
    if (static_cast<int>(row.size()) != cols)
      throw std::invalid_argument("field file '" + path + "' line " + std::to_string(lineno) + ": wrong column count");
    pts.push_back({row[0], row[1]});
    meas.push_back(row[2]);
    vals.insert(vals.end(), row.begin() + 3, row.end());
  }
  return SampledField(std::move(pts), std::move(meas), comps, std::move(vals));
}

void write_field_csv(const std::string& path, const SampledField& f) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write field file '" + path + "'");
  out << "x,y,measure";
  for (int c = 0; c < f.components(); ++c) out << ",v" << c;
  out << '\n' << std::setprecision(17);
  for (std::size_t i = 0; i < f.size(); ++i) {
    out << f.centroid(i).x << ',' << f.centroid(i).y << ',' << f.measure(i);
    for (int c = 0; c < f.components(); ++c) out << ',' << f.value(i, c);
    out << '\n';
  }
}

}  // namespace orlicz
