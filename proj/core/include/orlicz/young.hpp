#pragma once

#include <memory>
#include <string>
#include <vector>

namespace orlicz {

// Geometric sampling grid shared by tabulated densities and the growth checks.
struct YoungGrid {
  double min = 1e-6;
  double max = 1e6;
  int points = 600;

  std::vector<double> nodes() const;
  bool operator==(const YoungGrid&) const = default;
};

enum class YoungKind { power, zygmund, exponential, eyring, linear_cap, tabulated };

// Convex A(s) = int_0^s a(r) dr with a non-decreasing, right-continuous density.
// Values are immutable; copies share storage.
//
//   power(p, c)        c s^p
//   zygmund(p, alpha)  s^p log^alpha(1+s)
//   exponential(beta)  s (exp(s^beta) - 1)
//   eyring()           s asinh(s) - sqrt(1+s^2) + 1
//   linear_cap(L)      0 on [0, L], +inf beyond (the L-infinity surrogate)
//   tabulated          nodal densities and values, cubic Hermite in between
class YoungFunction {
 public:
  static YoungFunction power(double p, double coefficient = 1.0, YoungGrid grid = {});
  static YoungFunction zygmund(double p, double alpha, YoungGrid grid = {});
  static YoungFunction exponential(double beta, YoungGrid grid = {});
  static YoungFunction eyring(YoungGrid grid = {});
  static YoungFunction linear_cap(double threshold = 1.0, YoungGrid grid = {});
  // values may be empty; they are then integrated from the density
  static YoungFunction tabulated(std::vector<double> nodes, std::vector<double> density,
                                 std::vector<double> values = {});
  // same, with the sampling grid used by the growth checks given explicitly
  static YoungFunction tabulated(std::vector<double> nodes, std::vector<double> density,
                                 std::vector<double> values, YoungGrid grid);

  double operator()(double s) const;
  double density(double s) const;

  YoungKind kind() const { return rep_->kind; }
  const std::vector<double>& params() const { return rep_->params; }
  const YoungGrid& grid() const { return rep_->grid; }
  const std::vector<double>& nodes() const { return rep_->nodes; }
  const std::vector<double>& density_samples() const { return rep_->density; }
  const std::vector<double>& value_samples() const { return rep_->values; }

  // True when A takes the value +inf at finite arguments by construction.
  bool allows_infinity() const;
  // sup{s : A(s) < inf}; +inf for finite-valued kinds.
  double finite_limit() const;

  // Family literal, e.g. "zygmund:1:2"; "tabulated" for tables.
  std::string name() const;

  bool same_as(const YoungFunction& other) const;

 private:
  struct Rep {
    YoungKind kind;
    std::vector<double> params;
    YoungGrid grid;
    std::vector<double> nodes, density, values;
    double q_low = 1.0, q_high = 1.0;  // elasticities used for extrapolation
  };
  explicit YoungFunction(std::shared_ptr<const Rep> r) : rep_(std::move(r)) {}
  static YoungFunction make_analytic(YoungKind kind, std::vector<double> params, YoungGrid grid);

  double eval_tabulated(double s) const;
  double density_tabulated(double s) const;

  std::shared_ptr<const Rep> rep_;
};

inline double eval(const YoungFunction& A, double s) { return A(s); }

// Complementary function sup_r (r s - A(r)).
YoungFunction conjugate(const YoungFunction& A);

// sup{s : A(s) <= r}, ties go right.
double inverse(const YoungFunction& A, double r);
// inf{s : A(s) >= r}.
double inverse_left(const YoungFunction& A, double r);
// sup{r : a(r) <= s}, the generalized inverse of the density.
double density_inverse(const YoungFunction& A, double s);

enum class GrowthStatus { global, near_infinity, fails };

struct GrowthReport {
  GrowthStatus status = GrowthStatus::fails;
  double constant = 0.0;  // sup (delta2, domination) or inf (nabla2) of the tested ratio
  double s0 = 0.0;        // threshold for near-infinity results
};

GrowthReport classify_delta2(const YoungFunction& A);
GrowthReport classify_nabla2(const YoungFunction& A);
// A dominates B: B(s) <= A(C s), globally or for s >= s0.
GrowthReport dominates(const YoungFunction& A, const YoungFunction& B);

// Least constants in
//   t int_t0^t B(s)/s^2 ds <= A(c t)          (c_11)
//   t int_t0^t Ã(s)/s^2 ds <= B̃(c t)          (c_12)
// t0 = 0 means the global version holds. Infinite constants mean the pair is not
// admissible on the sampled range.
struct BalanceReport {
  double c_11 = 0.0;
  double c_12 = 0.0;
  double t0 = 0.0;
  bool global = false;
  bool admissible() const;
};

struct BalanceOptions {
  double window_tolerance = 0.01;  // relative growth allowed over a two-decade end window
  double max_threshold = 1e2;      // largest t0 candidate
};

BalanceReport check_balance(const YoungFunction& A, const YoungFunction& B,
                            const BalanceOptions& opts = {});

const char* to_string(GrowthStatus s);
const char* to_string(YoungKind k);

}  // namespace orlicz
