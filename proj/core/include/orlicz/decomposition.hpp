#pragma once

#include <memory>
#include <vector>

#include "orlicz/bogovskii.hpp"
#include "orlicz/field.hpp"

namespace orlicz {

// A domain given as an ordered union of star domains Omega_1, ..., Omega_N.
class DomainDecomposition {
 public:
  explicit DomainDecomposition(std::vector<StarDomain> parts);

  const std::vector<StarDomain>& parts() const { return parts_; }
  std::size_t size() const { return parts_.size(); }
  bool contains(Point2 x) const;
  Point2 box_lo() const { return lo_; }
  Point2 box_hi() const { return hi_; }

 private:
  std::vector<StarDomain> parts_;
  Point2 lo_, hi_;
};

// Cell grid over the union, n cells across the larger extent, two-cell margin.
std::shared_ptr<const CellDomain> grid_domain(const DomainDecomposition& dec, int n);

// Cells of `dom` whose centroid lies in part i, on the same grid.
std::shared_ptr<const CellDomain> part_domain(const CellDomain& dom, const StarDomain& part);

struct SplitResult {
  std::vector<SampledField> parts;   // f_i on the whole domain, zero off Omega_i
  std::vector<double> part_measure;  // |Omega_i|
  std::vector<double> tail_measure;  // |G_i|, G_i the union of the later parts
  std::vector<double> overlap;       // |Omega_i cap G_i|
  std::vector<double> bound;         // C_i with ||f_i||_A <= C_i ||f||_A for every A
  double removed_mean = 0.0;
};

// Splits a mean-zero f into mean-zero pieces supported in the parts, summing to
// f cellwise. Measures are cell counts times h^2.
SplitResult split_function(const SampledField& f, const DomainDecomposition& dec);

// Sum of the Bogovskii operators of the parts applied to the split pieces.
// part_residuals reports each piece on its own part.
BogovskiiField bogovskii_general(const SampledField& f, const DomainDecomposition& dec,
                                 const QuadratureSpec& q = {}, int jobs = 1);

}  // namespace orlicz
