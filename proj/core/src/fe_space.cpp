#include "orlicz/fe_space.hpp"

#include <cmath>
#include <stdexcept>

namespace orlicz {

const TriangleRule& triangle_rule() {
  static const TriangleRule rule = [] {
    TriangleRule r;
    const double s = std::sqrt(15.0);
    const double a = (6.0 - s) / 21.0, b = (6.0 + s) / 21.0;
    const double wa = (155.0 - s) / 1200.0, wb = (155.0 + s) / 1200.0;
    r.bary[0] = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    r.weight[0] = 9.0 / 40.0;
    r.bary[1] = {a, a, 1.0 - 2.0 * a};
    r.bary[2] = {a, 1.0 - 2.0 * a, a};
    r.bary[3] = {1.0 - 2.0 * a, a, a};
    r.bary[4] = {b, b, 1.0 - 2.0 * b};
    r.bary[5] = {b, 1.0 - 2.0 * b, b};
    r.bary[6] = {1.0 - 2.0 * b, b, b};
    for (int q = 1; q <= 3; ++q) r.weight[q] = wa;
    for (int q = 4; q <= 6; ++q) r.weight[q] = wb;
    return r;
  }();
  return rule;
}

FESpacePair::FESpacePair(std::shared_ptr<const Triangulation> mesh, int k, int m)
    : mesh_(std::move(mesh)), k_(k), m_(m) {
  if (!mesh_) throw std::invalid_argument("FESpacePair: no mesh");
  if (k != 1 && k != 2) throw std::invalid_argument("FESpacePair: velocity degree must be 1 or 2");
  if (m != 0) throw std::invalid_argument("FESpacePair: only elementwise constant pressures are supported");
  const int nv = static_cast<int>(mesh_->vertices.size());
  const int ne = static_cast<int>(mesh_->edges.size());
  free_.assign(nv + (k == 2 ? ne : 0), -1);
  for (int v = 0; v < nv; ++v)
    if (!mesh_->boundary_vertex[v]) free_[v] = nfree_++;
  if (k == 2)
    for (int e = 0; e < ne; ++e)
      if (!mesh_->boundary_edge(e)) free_[nv + e] = nfree_++;
}

std::string FESpacePair::name() const { return "P" + std::to_string(k_) + "/P" + std::to_string(m_); }

std::array<int, 6> FESpacePair::element_nodes(int t) const {
  const auto& T = mesh_->triangles[t];
  const auto& E = mesh_->triangle_edges[t];
  const int nv = static_cast<int>(mesh_->vertices.size());
  if (k_ == 1) return {T[0], T[1], T[2], -1, -1, -1};
  return {T[0], T[1], T[2], nv + E[0], nv + E[1], nv + E[2]};
}

Point2 FESpacePair::node_position(int n) const {
  const int nv = static_cast<int>(mesh_->vertices.size());
  if (n < nv) return mesh_->vertices[n];
  const auto& e = mesh_->edges[n - nv];
  return 0.5 * (mesh_->vertices[e[0]] + mesh_->vertices[e[1]]);
}

void FESpacePair::basis(int t, const std::array<double, 3>& l, double* value, double (*grad)[2]) const {
  const auto& T = mesh_->triangles[t];
  const Point2 p0 = mesh_->vertices[T[0]], p1 = mesh_->vertices[T[1]], p2 = mesh_->vertices[T[2]];
  const double a2 = 2.0 * mesh_->area(t);
  const double gl[3][2] = {{(p1.y - p2.y) / a2, (p2.x - p1.x) / a2},
                           {(p2.y - p0.y) / a2, (p0.x - p2.x) / a2},
                           {(p0.y - p1.y) / a2, (p1.x - p0.x) / a2}};
  if (k_ == 1) {
    for (int i = 0; i < 3; ++i) {
      if (value) value[i] = l[i];
      if (grad) {
        grad[i][0] = gl[i][0];
        grad[i][1] = gl[i][1];
      }
    }
    return;
  }
  for (int i = 0; i < 3; ++i) {
    if (value) value[i] = l[i] * (2.0 * l[i] - 1.0);
    if (grad) {
      grad[i][0] = (4.0 * l[i] - 1.0) * gl[i][0];
      grad[i][1] = (4.0 * l[i] - 1.0) * gl[i][1];
    }
  }
  for (int k = 0; k < 3; ++k) {
    const int i = k, j = (k + 1) % 3;
    if (value) value[3 + k] = 4.0 * l[i] * l[j];
    if (grad) {
      grad[3 + k][0] = 4.0 * (l[j] * gl[i][0] + l[i] * gl[j][0]);
      grad[3 + k][1] = 4.0 * (l[j] * gl[i][1] + l[i] * gl[j][1]);
    }
  }
}

Eigen::VectorXd FESpacePair::pressure_values(const Eigen::VectorXd& z) const {
  const int n = static_cast<int>(mesh_->size());
  if (z.size() != n - 1) throw std::invalid_argument("pressure_values: wrong coefficient count");
  Eigen::VectorXd v(n);
  double s = 0.0;
  for (int j = 0; j < n - 1; ++j) {
    v[j] = z[j];
    s += mesh_->area(j) * z[j];
  }
  v[n - 1] = -s / mesh_->area(n - 1);
  return v;
}

Eigen::VectorXd FESpacePair::pressure_coefficients(const Eigen::VectorXd& values) const {
  const int n = static_cast<int>(mesh_->size());
  if (values.size() != n) throw std::invalid_argument("pressure_coefficients: wrong value count");
  return values.head(n - 1);
}

void FESpacePair::velocity_gradient(const Eigen::VectorXd& u, int t, const std::array<double, 3>& l,
                                    double g[4]) const {
  double grad[6][2];
  basis(t, l, nullptr, grad);
  const auto nodes = element_nodes(t);
  g[0] = g[1] = g[2] = g[3] = 0.0;
  for (int a = 0; a < nodes_per_element(); ++a) {
    const int f = free_[nodes[a]];
    if (f < 0) continue;
    for (int c = 0; c < 2; ++c)
      for (int j = 0; j < 2; ++j) g[2 * c + j] += u[2 * f + c] * grad[a][j];
  }
}

Point2 FESpacePair::velocity_value(const Eigen::VectorXd& u, int t, const std::array<double, 3>& l) const {
  double val[6];
  basis(t, l, val, nullptr);
  const auto nodes = element_nodes(t);
  Point2 r;
  for (int a = 0; a < nodes_per_element(); ++a) {
    const int f = free_[nodes[a]];
    if (f < 0) continue;
    r.x += u[2 * f] * val[a];
    r.y += u[2 * f + 1] * val[a];
  }
  return r;
}

namespace {

Point2 at(const Triangulation& m, int t, const std::array<double, 3>& l) {
  const auto& T = m.triangles[t];
  return l[0] * m.vertices[T[0]] + l[1] * m.vertices[T[1]] + l[2] * m.vertices[T[2]];
}

}  // namespace

Eigen::MatrixXd divergence_matrix(const FESpacePair& V) {
  const auto& mesh = V.mesh();
  const int nt = static_cast<int>(mesh.size());
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(V.velocity_dofs(), nt);
  const auto& R = triangle_rule();
  for (int t = 0; t < nt; ++t) {
    const auto nodes = V.element_nodes(t);
    const double area = mesh.area(t);
    for (int q = 0; q < 7; ++q) {
      double grad[6][2];
      V.basis(t, R.bary[q], nullptr, grad);
      for (int a = 0; a < V.nodes_per_element(); ++a) {
        const int f = V.free_index(nodes[a]);
        if (f < 0) continue;
        D(2 * f, t) += R.weight[q] * area * grad[a][0];
        D(2 * f + 1, t) += R.weight[q] * area * grad[a][1];
      }
    }
  }
  // columns in the mean-zero basis
  const int n = nt - 1;
  Eigen::MatrixXd A(V.velocity_dofs(), n);
  const double last = mesh.area(nt - 1);
  for (int j = 0; j < n; ++j) A.col(j) = D.col(j) - (mesh.area(j) / last) * D.col(nt - 1);
  return A;
}

Eigen::SparseMatrix<double> stiffness_matrix(const FESpacePair& V) {
  const auto& mesh = V.mesh();
  const auto& R = triangle_rule();
  std::vector<Eigen::Triplet<double>> trip;
  for (int t = 0; t < static_cast<int>(mesh.size()); ++t) {
    const auto nodes = V.element_nodes(t);
    const int np = V.nodes_per_element();
    double local[6][6] = {};
    for (int q = 0; q < 7; ++q) {
      double grad[6][2];
      V.basis(t, R.bary[q], nullptr, grad);
      for (int a = 0; a < np; ++a)
        for (int b = 0; b < np; ++b)
          local[a][b] += R.weight[q] * (grad[a][0] * grad[b][0] + grad[a][1] * grad[b][1]);
    }
    const double area = mesh.area(t);
    for (int a = 0; a < np; ++a) {
      const int fa = V.free_index(nodes[a]);
      if (fa < 0) continue;
      for (int b = 0; b < np; ++b) {
        const int fb = V.free_index(nodes[b]);
        if (fb < 0) continue;
        for (int c = 0; c < 2; ++c) trip.emplace_back(2 * fa + c, 2 * fb + c, area * local[a][b]);
      }
    }
  }
  Eigen::SparseMatrix<double> K(V.velocity_dofs(), V.velocity_dofs());
  K.setFromTriplets(trip.begin(), trip.end());
  return K;
}

Eigen::MatrixXd pressure_mass(const FESpacePair& V) {
  const auto& mesh = V.mesh();
  const int nt = static_cast<int>(mesh.size()), n = nt - 1;
  const double last = mesh.area(nt - 1);
  Eigen::VectorXd a(n);
  for (int j = 0; j < n; ++j) a[j] = mesh.area(j);
  // P^T diag(|T|) P with P = [I; -a^T / last]
  Eigen::MatrixXd M = (a * a.transpose()) / last;
  M.diagonal() += a;
  return M;
}

Eigen::VectorXd load_vector(const FESpacePair& V, const MatrixField& H) {
  const auto& mesh = V.mesh();
  const auto& R = triangle_rule();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(V.velocity_dofs());
  for (int t = 0; t < static_cast<int>(mesh.size()); ++t) {
    const auto nodes = V.element_nodes(t);
    const double area = mesh.area(t);
    for (int q = 0; q < 7; ++q) {
      double grad[6][2], h[4];
      V.basis(t, R.bary[q], nullptr, grad);
      H(t, at(mesh, t, R.bary[q]), h);
      const double w = R.weight[q] * area;
      for (int a = 0; a < V.nodes_per_element(); ++a) {
        const int f = V.free_index(nodes[a]);
        if (f < 0) continue;
        b[2 * f] += w * (h[0] * grad[a][0] + h[1] * grad[a][1]);
        b[2 * f + 1] += w * (h[2] * grad[a][0] + h[3] * grad[a][1]);
      }
    }
  }
  return b;
}

PressureSystem assemble_pressure_system(const FESpacePair& V, const MatrixField& H) {
  PressureSystem s;
  s.A = divergence_matrix(V);
  s.b = load_vector(V, H);
  s.K = stiffness_matrix(V);
  s.Mp = pressure_mass(V);
  s.pair = V.name();
  return s;
}

}  // namespace orlicz
