#pragma once

#include <cstdint>
#include <string>

#include "orlicz/fe_space.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

struct InfSupOptions {
  int restarts = 5;
  int max_iterations = 200;
  std::uint64_t seed = 1;
  bool force_ascent = false;  // use the ascent even when the L2 formula applies
};

struct InfSupReport {
  double value = 0.0;
  bool exact = false;           // L2 pair through the generalized eigenproblem
  bool rank_deficient = false;  // the divergence matrix loses column rank
  bool converged = true;
  int iterations = 0;
  int velocity_dofs = 0;
  int pressure_dofs = 0;
  std::string pair;
  std::string note;
};

// inf over mean-zero p of sup over phi of int p div phi / (||p||_B ||grad phi||_{conjugate of A}).
// For A = B = power(2) this is a generalized eigenvalue; otherwise alternating
// ascent whose result bounds the constant from above.
InfSupReport compute_infsup(const FESpacePair& V, const YoungFunction& A, const YoungFunction& B,
                            const InfSupOptions& opt = {});

// Gradient samples of a velocity field at the 7-point rule, and their weights.
void velocity_gradient_samples(const FESpacePair& V, const Eigen::VectorXd& u, std::vector<double>& weights,
                               std::vector<double>& moduli);

}  // namespace orlicz
