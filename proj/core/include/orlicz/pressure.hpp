#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "orlicz/fe_space.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

struct RankDeficiencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class SolveMode { exact, least_squares };

struct PressureSolution {
  Eigen::VectorXd z;       // coefficients in the mean-zero basis
  Eigen::VectorXd values;  // elementwise values
  double residual = 0.0;   // relative, Euclidean (exact) or K^-1 weighted (least squares)
};

// exact: b must lie in the range of A (relative residual <= 1e-10).
// least_squares: minimizes (A z - b)^T K^-1 (A z - b), the discrete dual norm.
PressureSolution reconstruct_pressure(const FESpacePair& V, const PressureSystem& sys, SolveMode mode);

struct PressureRow {
  double h = 0.0;
  double error = 0.0;      // ||pi_h - pi||_B
  double best = 0.0;       // inf over mean-zero P0 of ||mu - pi||_A
  double ratio = 0.0;      // error / best
  double stability = 0.0;  // ||pi_h||_B / ||H||_A
  double residual = 0.0;
};

// Manufactured H = pi I on each mesh of the sequence.
std::vector<PressureRow> pressure_error_study(const std::function<double(Point2)>& pi,
                                              const std::vector<std::shared_ptr<const Triangulation>>& meshes,
                                              const YoungFunction& A, const YoungFunction& B, int k = 2);

}  // namespace orlicz
