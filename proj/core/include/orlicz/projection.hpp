#pragma once

#include <functional>
#include <vector>

#include "orlicz/fe_space.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

// A smooth vector field with its gradient (row-major du_i/dx_j).
struct VectorFunction {
  std::function<Point2(Point2)> value;
  std::function<void(Point2, double[4])> gradient;
};

// Nodal interpolant onto the free dofs.
Eigen::VectorXd interpolate(const FESpacePair& V, const VectorFunction& u);

// Scott-Zhang averages over edges, then a normal correction of the midpoint
// dofs so that the flux through every interior edge matches that of u. Needs
// k = 2; boundary dofs are zero.
Eigen::VectorXd project(const FESpacePair& V, const VectorFunction& u);

// int_S div w on every triangle for a discrete field.
std::vector<double> element_divergence(const FESpacePair& V, const Eigen::VectorXd& w);

// Per-simplex ratio of the averaged local bound, maximized over the mesh:
// (avg_S |Pu| + h_S avg_S |grad Pu|) / (avg_{M_S} |u| + h_S avg_{M_S} |grad u|).
double projection_local_constant(const FESpacePair& V, const VectorFunction& u, const Eigen::VectorXd& Pu);

// ||grad Pu||_A / ||grad u||_A
double orlicz_projection_ratio(const FESpacePair& V, const VectorFunction& u, const YoungFunction& A);

}  // namespace orlicz
