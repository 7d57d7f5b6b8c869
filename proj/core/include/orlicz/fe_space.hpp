#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "orlicz/mesh.hpp"

namespace orlicz {

// Symmetric 7-point rule on the reference triangle, exact for degree 5.
struct TriangleRule {
  std::array<std::array<double, 3>, 7> bary;
  std::array<double, 7> weight;  // sums to 1; multiply by the area
};
const TriangleRule& triangle_rule();

// Continuous vector P^k (k = 1, 2) vanishing on the boundary, and elementwise
// constants with zero mean.
class FESpacePair {
 public:
  FESpacePair(std::shared_ptr<const Triangulation> mesh, int k = 2, int m = 0);

  const Triangulation& mesh() const { return *mesh_; }
  const std::shared_ptr<const Triangulation>& mesh_ptr() const { return mesh_; }
  int k() const { return k_; }
  int m() const { return m_; }
  std::string name() const;

  // Scalar nodes: vertices, then edge midpoints when k = 2.
  int nodes_per_element() const { return k_ == 2 ? 6 : 3; }
  std::array<int, 6> element_nodes(int t) const;
  Point2 node_position(int n) const;
  // free index of a scalar node, -1 on the boundary
  int free_index(int node) const { return free_[node]; }
  int velocity_dofs() const { return 2 * nfree_; }
  // basis p^j = chi_j - (|T_j| / |T_last|) chi_last, j < T - 1
  int pressure_dofs() const { return static_cast<int>(mesh_->size()) - 1; }

  // local basis values and physical gradients at barycentric point l in triangle t
  void basis(int t, const std::array<double, 3>& l, double* value, double (*grad)[2]) const;

  // pressure coefficients <-> elementwise values
  Eigen::VectorXd pressure_values(const Eigen::VectorXd& z) const;
  Eigen::VectorXd pressure_coefficients(const Eigen::VectorXd& values) const;  // values must have zero mean

  // velocity gradient (row-major du_i/dx_j) at a barycentric point of triangle t
  void velocity_gradient(const Eigen::VectorXd& u, int t, const std::array<double, 3>& l, double g[4]) const;
  Point2 velocity_value(const Eigen::VectorXd& u, int t, const std::array<double, 3>& l) const;

 private:
  std::shared_ptr<const Triangulation> mesh_;
  int k_, m_;
  std::vector<int> free_;
  int nfree_ = 0;
};

// H(t, x) as a row-major 2 x 2 matrix; t is the element containing x.
using MatrixField = std::function<void(int t, Point2 x, double H[4])>;

struct PressureSystem {
  Eigen::MatrixXd A;                  // A_ij = int p^j div phi^i
  Eigen::VectorXd b;                  // b_i = int H : grad phi^i
  Eigen::SparseMatrix<double> K;      // int grad phi^i : grad phi^j
  Eigen::MatrixXd Mp;                 // pressure Gram matrix
  std::string pair;
};

Eigen::MatrixXd divergence_matrix(const FESpacePair& V);
Eigen::SparseMatrix<double> stiffness_matrix(const FESpacePair& V);
Eigen::MatrixXd pressure_mass(const FESpacePair& V);
Eigen::VectorXd load_vector(const FESpacePair& V, const MatrixField& H);
PressureSystem assemble_pressure_system(const FESpacePair& V, const MatrixField& H);

}  // namespace orlicz
