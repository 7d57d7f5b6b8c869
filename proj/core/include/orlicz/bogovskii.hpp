#pragma once

#include <memory>
#include <vector>

#include "orlicz/field.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

struct Ball {
  Point2 center;
  double radius = 1.0;
};

// Normalized bump k (1 - |x-c|^2/r^2)^4 supported in a ball, integral 1.
class Mollifier {
 public:
  explicit Mollifier(Ball b);
  double operator()(Point2 x) const;
  const Ball& ball() const { return ball_; }
  double scale() const { return k_; }

 private:
  Ball ball_;
  double k_;
};

// A domain star-shaped with respect to a ball: a disk or a polygon.
class StarDomain {
 public:
  static StarDomain disk(Point2 center, double radius, Ball ball);
  // vertices in either orientation; the ball must lie in the polygon's kernel
  static StarDomain polygon(std::vector<Point2> vertices, Ball ball);
  static StarDomain rectangle(Point2 lo, Point2 hi, Ball ball);

  bool contains(Point2 x) const;
  const Ball& ball() const { return mollifier_.ball(); }
  const Mollifier& mollifier() const { return mollifier_; }
  Point2 box_lo() const { return lo_; }
  Point2 box_hi() const { return hi_; }
  double area() const;

 private:
  StarDomain(Ball b) : mollifier_(b) {}
  bool is_disk_ = false;
  Point2 disk_center_;
  double disk_radius_ = 0.0;
  std::vector<Point2> vertices_;  // counter-clockwise
  Point2 lo_, hi_;
  Mollifier mollifier_;
};

struct QuadratureSpec {
  int ray_nodes = 16;     // Gauss-Legendre nodes along each ray through the ball
  int polar_refine = 4;   // angular refinement for cells near the evaluation point
  int near_radius = 2;    // cells within this Chebyshev distance use polar quadrature
  int face_nodes = 2;     // Gauss points per cell face for the flux differences
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

// Cell grid covering D with n cells across its larger extent and a two-cell margin.
std::shared_ptr<const CellDomain> grid_domain(const StarDomain& D, int n);

// Bogovskii operator of a star-shaped domain applied to a cellwise-constant f.
// f is projected to mean zero on construction; the removed mean is reported.
class BogovskiiOperator {
 public:
  BogovskiiOperator(const SampledField& f, const StarDomain& D, QuadratureSpec q = {});

  struct Value {
    Vec2 u;
    bool shifted = false;  // x sat on a cell boundary and was nudged inside
  };
  Value apply(Point2 x) const;

  double removed_mean() const { return removed_mean_; }
  const QuadratureSpec& quadrature() const { return q_; }
  const SampledField& source() const { return f_; }

 private:
  Vec2 polar_cell(Point2 x, int ix, int iy) const;
  double ray_integral(Point2 y, Point2 e, double from) const;
  void ray_moments(Point2 x, Point2 e, double& m0, double& m1) const;

  SampledField f_;
  std::shared_ptr<const CellDomain> dom_;
  Mollifier omega_;
  QuadratureSpec q_;
  double removed_mean_ = 0.0;
  std::vector<double> gl_x_, gl_w_;  // ray rule on [-1, 1]
  std::vector<double> th_x_, th_w_;  // angular rule
};

// Velocity, finite-difference gradient and divergence on the cells of a domain,
// plus the values on the ring of exterior cells around it.
struct BogovskiiField {
  SampledField u;           // 2 components on domain cells
  SampledField gradient;    // 4 components, row-major du_i/dx_j
  SampledField divergence;  // 1 component
  std::vector<Point2> ring_points;
  std::vector<Vec2> ring_values;
  double divergence_residual = 0.0;  // relative L2 of div u - (f - mean f) over the domain cells
  std::vector<double> part_residuals;  // per operator, against its own source on its own cells
  double boundary_ratio = 0.0;       // max |u| on the ring / max |u| inside
  double removed_mean = 0.0;
  int shifted_points = 0;
};

BogovskiiField bogovskii_field(const SampledField& f, const StarDomain& D, const QuadratureSpec& q = {},
                               int jobs = 1);

// Evaluate a sum of operators on the domain cells and ring of `domain`; f is the
// reference right-hand side for the residual.
BogovskiiField assemble_bogovskii_field(const std::vector<const BogovskiiOperator*>& ops,
                                        const SampledField& f, int jobs = 1);

// ||grad u||_B / ||f - mean f||_A
double norm_constant(const SampledField& f, const SampledField& gradient, const YoungFunction& A,
                     const YoungFunction& B);

// Least C with int B(|grad u|) <= int A(C |f - mean f|); infinite if the left side is.
double modular_constant(const SampledField& f, const SampledField& gradient, const YoungFunction& A,
                        const YoungFunction& B);

struct RearrangementCheck {
  std::vector<double> s, lhs, rhs;  // (|grad u|)*(s) against C (Hf* + Df*)(s)
  double worst_ratio = 0.0;         // max lhs/rhs, <= 1 iff the estimate holds
  bool holds = true;
};

// 100 log-spaced s in [1e-4 |Omega|, |Omega|).
std::vector<double> rearrangement_samples(double measure, int count = 100);

// Least C making the estimate hold at the samples.
double calibrate_rearrangement_constant(const SampledField& f, const SampledField& gradient, int count = 100);
RearrangementCheck check_rearrangement_estimate(const SampledField& f, const SampledField& gradient, double C,
                                                int count = 100);

}  // namespace orlicz
