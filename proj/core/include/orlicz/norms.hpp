#pragma once

#include <span>
#include <vector>

#include "orlicz/field.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

// sum_i w_i A(v_i / lambda)
double modular(std::span<const double> weights, std::span<const double> values, const YoungFunction& A,
               double lambda = 1.0);
// inf{lambda > 0 : modular <= 1}, by geometric bisection (relative tolerance 1e-14)
double luxemburg_norm(std::span<const double> weights, std::span<const double> values, const YoungFunction& A);

double modular(const SampledField& u, const YoungFunction& A);
double luxemburg_norm(const SampledField& u, const YoungFunction& A);

// Non-increasing rearrangement of |u| as a step function on (0, |Omega|].
struct Rearrangement {
  std::vector<double> breaks;  // right end of each step, increasing
  std::vector<double> values;  // non-increasing

  double operator()(double s) const;
  double total() const { return breaks.empty() ? 0.0 : breaks.back(); }
  // int_0^s f*
  double primitive(double s) const;
};

Rearrangement decreasing_rearrangement(const SampledField& u);
double luxemburg_norm(const Rearrangement& f, const YoungFunction& A);

struct HolderReport {
  double pairing = 0.0;     // |int u.v|
  double bound = 0.0;       // 2 ||u||_A ||v||_Ã
  bool holds = false;
  double v_norm = 0.0;      // ||v||_Ã
  double dual_sup = 0.0;    // sup over the test family of |int w.v| / ||w||_A
  double dual_ratio = 0.0;  // dual_sup / ||v||_Ã, expected in [1, 2]
};

// Hölder inequality for (u, v) plus the dual-norm bracket for v over a stock
// family that contains the extremal ã(|v|/||v||) v/|v|.
HolderReport holder_pairing_check(const SampledField& u, const SampledField& v, const YoungFunction& A);

// ||u - mean u||_A / (|Omega|^{1/2} ||grad u||_A) for n = 2.
double poincare_ratio(const SampledField& u, const SampledField& grad_u, const YoungFunction& A);

}  // namespace orlicz
