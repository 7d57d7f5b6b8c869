#pragma once

#include <memory>
#include <string>
#include <vector>

#include "orlicz/field.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

// Polynomial bubble 16^2 (t(1-t))^2 (s(1-s))^2 on a box, times a unit vector.
struct Bubble {
  Point2 lo, hi;
  int axis = 0;   // 0: e_1, 1: e_2
  int level = 0;  // box side is 2^-level of the domain's bounding box
  std::string id() const;
  Point2 value(Point2 x) const;
  // row-major d phi_i / d x_j
  void gradient(Point2 x, double g[4]) const;
};

// Bubbles on dyadic boxes (with half-offset copies) lying inside a cell domain.
// A family of depth d is a prefix of every deeper family on the same domain.
class TestFamily {
 public:
  static TestFamily dyadic(std::shared_ptr<const CellDomain> domain, int depth);

  std::size_t size() const { return members_.size(); }
  const Bubble& member(std::size_t i) const { return members_[i]; }
  int depth() const { return depth_; }
  const std::shared_ptr<const CellDomain>& domain() const { return domain_; }

  // int u div phi_i for cellwise constant u, exact through edge fluxes
  double pairing(std::size_t i, const SampledField& u) const;
  // ||grad phi||_A for members of the given level
  double gradient_norm(int level, const YoungFunction& A) const;

 private:
  struct Flux {
    int minus, plus;  // cell positions; the flux leaves `minus` and enters `plus`
    double value;
  };
  std::shared_ptr<const CellDomain> domain_;
  int depth_ = 0;
  std::vector<Bubble> members_;
  std::vector<std::vector<Flux>> fluxes_;
};

struct NegNorm {
  double value = 0.0;
  std::size_t witness = 0;
  std::string witness_id;
};

// max over the family of |int u div phi| / ||grad phi||_{conjugate of A}
NegNorm neg_norm_lower(const SampledField& u, const YoungFunction& A, const TestFamily& F);

// 2 C2 ||u - mean u||_A. With |div phi| <= sqrt(2) |grad phi| the default C2 is a
// guaranteed constant in the plane.
double neg_norm_upper(const SampledField& u, const YoungFunction& A, double C2 = 1.4142135623730951);

struct TwoSidedReport {
  bool admissible = false;
  double lower = 0.0;
  double upper = 0.0;
  double r_low = 0.0;   // lower / ||u - mean||_B
  double r_high = 0.0;  // lower / ||u - mean||_A
  std::string witness_id;
};

TwoSidedReport two_sided_check(const SampledField& u, const YoungFunction& A, const YoungFunction& B,
                               const TestFamily& F);

struct SupApproxStep {
  int k = 0;
  double truncated_norm = 0.0;   // ||v_k||
  double mollified_norm = 0.0;   // ||phi_k||
  double pairing = 0.0;          // int u phi_k
  double mean_zero_mean = 0.0;   // mean of v_k - (v_k)_Omega
};

struct SupApproxReport {
  double target_norm = 0.0;     // ||v|| in the conjugate of A
  double target_pairing = 0.0;  // int u v
  std::vector<SupApproxStep> steps;
};

// Truncation at height k, restriction to cells at distance >= 2/k from the
// boundary, and mollification at radius 1/k; norms in the conjugate of A.
// u may be empty, in which case pairings are 0.
SupApproxReport sup_approx_convergence(const SampledField& v, const YoungFunction& A, const std::vector<int>& ks,
                                       const SampledField& u = {});

}  // namespace orlicz
