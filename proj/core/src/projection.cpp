#include "orlicz/projection.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "orlicz/norms.hpp"
#include "orlicz/quadrature.hpp"

namespace orlicz {

namespace {

Point2 at(const Triangulation& m, int t, const std::array<double, 3>& l) {
  const auto& T = m.triangles[t];
  return l[0] * m.vertices[T[0]] + l[1] * m.vertices[T[1]] + l[2] * m.vertices[T[2]];
}

double frob(const double g[4]) { return std::sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2] + g[3] * g[3]); }

}  // namespace

Eigen::VectorXd interpolate(const FESpacePair& V, const VectorFunction& u) {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(V.velocity_dofs());
  const int nn = static_cast<int>(V.mesh().vertices.size() + (V.k() == 2 ? V.mesh().edges.size() : 0));
  for (int n = 0; n < nn; ++n) {
    const int f = V.free_index(n);
    if (f < 0) continue;
    const Point2 v = u.value(V.node_position(n));
    c[2 * f] = v.x;
    c[2 * f + 1] = v.y;
  }
  return c;
}

Eigen::VectorXd project(const FESpacePair& V, const VectorFunction& u) {
  if (V.k() != 2) throw std::invalid_argument("project: the flux correction needs quadratic velocities");
  const auto& mesh = V.mesh();
  const int nv = static_cast<int>(mesh.vertices.size());
  const int ne = static_cast<int>(mesh.edges.size());
  // L2(0,1) duals of the quadratic Lagrange basis at t = 0, 1/2, 1
  Eigen::Matrix3d M;
  M << 4, 2, -1, 2, 16, 2, -1, 2, 4;
  const Eigen::Matrix3d Minv = (M / 30.0).inverse();
  const GaussRule& g = gauss_legendre(12);
  // moments int_0^1 u(x(t)) L_j(t) dt along edge e
  auto moments = [&](int e, Point2 out[3]) {
    const Point2 a = mesh.vertices[mesh.edges[e][0]], b = mesh.vertices[mesh.edges[e][1]];
    for (int j = 0; j < 3; ++j) out[j] = {0.0, 0.0};
    for (std::size_t q = 0; q < g.nodes.size(); ++q) {
      const double t = 0.5 * (1.0 + g.nodes[q]), w = 0.5 * g.weights[q];
      const Point2 v = u.value(a + t * (b - a));
      const double L[3] = {(1 - t) * (1 - 2 * t), 4 * t * (1 - t), t * (2 * t - 1)};
      for (int j = 0; j < 3; ++j) out[j] = out[j] + (w * L[j]) * v;
    }
  };
  auto dual = [&](const Point2 mom[3], int i) {
    Point2 r;
    for (int j = 0; j < 3; ++j) r = r + Minv(i, j) * mom[j];
    return r;
  };

  Eigen::VectorXd c = Eigen::VectorXd::Zero(V.velocity_dofs());
  std::vector<int> vertex_edge(nv, -1);
  for (int e = 0; e < ne; ++e)
    for (int k = 0; k < 2; ++k)
      if (vertex_edge[mesh.edges[e][k]] < 0) vertex_edge[mesh.edges[e][k]] = e;
  Point2 mom[3];
  for (int v = 0; v < nv; ++v) {
    const int f = V.free_index(v);
    if (f < 0) continue;
    const int e = vertex_edge[v];
    moments(e, mom);
    const Point2 r = dual(mom, mesh.edges[e][0] == v ? 0 : 2);
    c[2 * f] = r.x;
    c[2 * f + 1] = r.y;
  }
  for (int e = 0; e < ne; ++e) {
    const int f = V.free_index(nv + e);
    if (f < 0) continue;
    moments(e, mom);
    const Point2 r = dual(mom, 1);
    c[2 * f] = r.x;
    c[2 * f + 1] = r.y;
  }
  // flux correction along the edge normal through the midpoint dof
  auto dof = [&](int node) -> Point2 {
    const int f = V.free_index(node);
    return f < 0 ? Point2{} : Point2{c[2 * f], c[2 * f + 1]};
  };
  for (int e = 0; e < ne; ++e) {
    const int f = V.free_index(nv + e);
    if (f < 0) continue;
    const Point2 a = mesh.vertices[mesh.edges[e][0]], b = mesh.vertices[mesh.edges[e][1]];
    const Point2 d = b - a;
    const double len = std::sqrt(dot(d, d));
    const Point2 n = {d.y / len, -d.x / len};
    double fu = 0.0;
    for (std::size_t q = 0; q < g.nodes.size(); ++q) {
      const double t = 0.5 * (1.0 + g.nodes[q]);
      fu += 0.5 * g.weights[q] * dot(u.value(a + t * d), n);
    }
    fu *= len;
    const Point2 pa = dof(mesh.edges[e][0]), pb = dof(mesh.edges[e][1]), pm = dof(nv + e);
    const double fp = len * (dot(pa, n) / 6.0 + 2.0 * dot(pm, n) / 3.0 + dot(pb, n) / 6.0);
    const double corr = (fu - fp) / (2.0 * len / 3.0);
    c[2 * f] += corr * n.x;
    c[2 * f + 1] += corr * n.y;
  }
  return c;
}

std::vector<double> element_divergence(const FESpacePair& V, const Eigen::VectorXd& w) {
  const auto& R = triangle_rule();
  std::vector<double> out(V.mesh().size(), 0.0);
  for (int t = 0; t < static_cast<int>(out.size()); ++t) {
    const double area = V.mesh().area(t);
    for (int q = 0; q < 7; ++q) {
      double g[4];
      V.velocity_gradient(w, t, R.bary[q], g);
      out[t] += R.weight[q] * area * (g[0] + g[3]);
    }
  }
  return out;
}

double projection_local_constant(const FESpacePair& V, const VectorFunction& u, const Eigen::VectorXd& Pu) {
  const auto& mesh = V.mesh();
  const auto& R = triangle_rule();
  const int nt = static_cast<int>(mesh.size());
  // per-element integrals of |u|, |grad u|, |Pu|, |grad Pu|
  std::vector<double> iu(nt, 0.0), igu(nt, 0.0), ip(nt, 0.0), igp(nt, 0.0);
  for (int t = 0; t < nt; ++t) {
    const double area = mesh.area(t);
    for (int q = 0; q < 7; ++q) {
      const double w = R.weight[q] * area;
      const Point2 x = at(mesh, t, R.bary[q]);
      const Point2 v = u.value(x);
      double g[4];
      u.gradient(x, g);
      iu[t] += w * std::sqrt(dot(v, v));
      igu[t] += w * frob(g);
      const Point2 p = V.velocity_value(Pu, t, R.bary[q]);
      V.velocity_gradient(Pu, t, R.bary[q], g);
      ip[t] += w * std::sqrt(dot(p, p));
      igp[t] += w * frob(g);
    }
  }
  double worst = 0.0;
  for (int t = 0; t < nt; ++t) {
    const double hs = mesh.diameter(t), area = mesh.area(t);
    const double lhs = (ip[t] + hs * igp[t]) / area;
    double a = 0.0, su = 0.0, sg = 0.0;
    for (int s : mesh.patches[t]) {
      a += mesh.area(s);
      su += iu[s];
      sg += igu[s];
    }
    const double rhs = (su + hs * sg) / a;
    if (rhs > 0.0) worst = std::max(worst, lhs / rhs);
    else if (lhs > 0.0) worst = std::numeric_limits<double>::infinity();
  }
  return worst;
}

double orlicz_projection_ratio(const FESpacePair& V, const VectorFunction& u, const YoungFunction& A) {
  const auto Pu = project(V, u);
  const auto& mesh = V.mesh();
  const auto& R = triangle_rule();
  std::vector<double> w, gp, gu;
  for (int t = 0; t < static_cast<int>(mesh.size()); ++t)
    for (int q = 0; q < 7; ++q) {
      double g[4];
      w.push_back(R.weight[q] * mesh.area(t));
      V.velocity_gradient(Pu, t, R.bary[q], g);
      gp.push_back(frob(g));
      u.gradient(at(mesh, t, R.bary[q]), g);
      gu.push_back(frob(g));
    }
  const double den = luxemburg_norm(w, gu, A);
  if (den == 0.0) throw std::invalid_argument("orlicz_projection_ratio: u has zero gradient");
  return luxemburg_norm(w, gp, A) / den;
}

}  // namespace orlicz
