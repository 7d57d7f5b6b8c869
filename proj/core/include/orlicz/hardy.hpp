#pragma once

#include <vector>

#include "orlicz/norms.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

// Function on (0, L] given piecewise as a + b/s + c log(s).
class PiecewiseProfile {
 public:
  struct Piece {
    double lo, hi, a, b, c;
  };

  explicit PiecewiseProfile(std::vector<Piece> pieces);
  double operator()(double s) const;
  double length() const { return pieces_.empty() ? 0.0 : pieces_.back().hi; }
  const std::vector<Piece>& pieces() const { return pieces_; }

  // Quadrature points (weights, |values|) for norms over (0, L]. The log
  // singularity at 0 is integrated through s = s1 exp(-x).
  void quadrature(std::vector<double>& weights, std::vector<double>& values) const;

 private:
  std::vector<Piece> pieces_;
};

// (1/s) int_0^s f*(r) dr, exact on each step
PiecewiseProfile hardy_average(const Rearrangement& f);
// int_s^L f*(r) dr / r, exact on each step
PiecewiseProfile hardy_dual(const Rearrangement& f);

double luxemburg_norm(const PiecewiseProfile& g, const YoungFunction& A);

// Right side of the pointwise rearrangement estimate for the gradient of the
// Bogovskii solution: C (Hf*(s) + Df*(s)).
double rearrangement_bound_rhs(const Rearrangement& f, double s, double C);

}  // namespace orlicz
