#include "orlicz/infsup.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>

#include "orlicz/norms.hpp"

namespace orlicz {

namespace {

bool is_l2(const YoungFunction& A) {
  return A.kind() == YoungKind::power && !A.params().empty() && A.params()[0] == 2.0;
}

// rows 4 s + (2 i + j) hold d u_i / d x_j at sample s
Eigen::SparseMatrix<double> gradient_operator(const FESpacePair& V, std::vector<double>& weights) {
  const auto& mesh = V.mesh();
  const auto& R = triangle_rule();
  std::vector<Eigen::Triplet<double>> trip;
  weights.clear();
  int s = 0;
  for (int t = 0; t < static_cast<int>(mesh.size()); ++t) {
    const auto nodes = V.element_nodes(t);
    for (int q = 0; q < 7; ++q, ++s) {
      double grad[6][2];
      V.basis(t, R.bary[q], nullptr, grad);
      weights.push_back(R.weight[q] * mesh.area(t));
      for (int a = 0; a < V.nodes_per_element(); ++a) {
        const int f = V.free_index(nodes[a]);
        if (f < 0) continue;
        for (int c = 0; c < 2; ++c)
          for (int j = 0; j < 2; ++j) trip.emplace_back(4 * s + 2 * c + j, 2 * f + c, grad[a][j]);
      }
    }
  }
  Eigen::SparseMatrix<double> G(4 * s, V.velocity_dofs());
  G.setFromTriplets(trip.begin(), trip.end());
  return G;
}

// Luxemburg norm of the moduli of d-vectors v_s, and its gradient in v.
double norm_and_gradient(const std::vector<double>& w, const Eigen::VectorXd& v, int d, const YoungFunction& A,
                         Eigen::VectorXd* grad) {
  const std::size_t S = w.size();
  std::vector<double> m(S);
  for (std::size_t s = 0; s < S; ++s) m[s] = v.segment(static_cast<Eigen::Index>(d * s), d).norm();
  const double lam = luxemburg_norm(w, m, A);
  if (!grad) return lam;
  grad->setZero(v.size());
  if (lam == 0.0) return lam;
  std::vector<double> psi(S);
  double den = 0.0;
  bool smooth = true;
  for (std::size_t s = 0; s < S; ++s) {
    if (m[s] == 0.0) continue;
    psi[s] = A.density(m[s] / lam);
    if (!std::isfinite(psi[s])) smooth = false;
    den += w[s] * psi[s] * m[s] / (lam * lam);
  }
  if (smooth && den > 0.0 && std::isfinite(den)) {
    for (std::size_t s = 0; s < S; ++s) {
      if (m[s] == 0.0) continue;
      const double c = w[s] * psi[s] / (lam * den * m[s]);
      grad->segment(static_cast<Eigen::Index>(d * s), d) = c * v.segment(static_cast<Eigen::Index>(d * s), d);
    }
    return lam;
  }
  // sup-type norm: subgradient at the largest sample
  std::size_t top = 0;
  for (std::size_t s = 1; s < S; ++s)
    if (m[s] > m[top]) top = s;
  grad->segment(static_cast<Eigen::Index>(d * top), d) =
      (lam / (m[top] * m[top])) * v.segment(static_cast<Eigen::Index>(d * top), d);
  return lam;
}

struct Ascent {
  const FESpacePair& V;
  const Eigen::MatrixXd& A;
  const Eigen::SimplicialLLT<Eigen::SparseMatrix<double>>& Kf;
  const Eigen::MatrixXd& Mp;
  const Eigen::SparseMatrix<double>& G;
  const std::vector<double>& gw;
  std::vector<double> pw;  // element areas
  YoungFunction At, B;
  int inner_cap = 60;

  double vel_norm(const Eigen::VectorXd& phi, Eigen::VectorXd* grad) const {
    const Eigen::VectorXd g = G * phi;
    if (!grad) return norm_and_gradient(gw, g, 4, At, nullptr);
    Eigen::VectorXd dg;
    const double n = norm_and_gradient(gw, g, 4, At, &dg);
    *grad = G.transpose() * dg;
    return n;
  }

  double p_norm(const Eigen::VectorXd& z, Eigen::VectorXd* grad) const {
    const Eigen::VectorXd v = V.pressure_values(z);
    if (!grad) return norm_and_gradient(pw, v, 1, B, nullptr);
    Eigen::VectorXd dv;
    const double n = norm_and_gradient(pw, v, 1, B, &dv);
    const Eigen::Index last = v.size() - 1;
    *grad = dv.head(last);
    for (Eigen::Index j = 0; j < last; ++j) (*grad)[j] -= pw[j] / pw[last] * dv[last];
    return n;
  }

  // sup over phi of ell . phi / ||grad phi||; phi is a warm start and returns normalized
  double inner(const Eigen::VectorXd& ell, Eigen::VectorXd& phi) const {
    if (phi.size() != ell.size() || phi.norm() == 0.0) phi = Kf.solve(ell);
    double n = vel_norm(phi, nullptr);
    if (n == 0.0) return 0.0;
    phi /= n;
    if (ell.dot(phi) < 0) phi = -phi;
    double R = ell.dot(phi), t = 1.0;
    for (int it = 0; it < inner_cap; ++it) {
      Eigen::VectorXd dn;
      vel_norm(phi, &dn);
      const Eigen::VectorXd d = Kf.solve(ell - R * dn);
      bool moved = false;
      for (int ls = 0; ls < 40; ++ls, t *= 0.5) {
        Eigen::VectorXd trial = phi + t * d;
        const double nt = vel_norm(trial, nullptr);
        if (!(nt > 0.0)) continue;
        trial /= nt;
        const double Rt = ell.dot(trial);
        if (Rt > R) {
          const double gain = (Rt - R) / R;
          phi = trial;
          R = Rt;
          moved = gain > 1e-12;
          t *= 2.0;
          break;
        }
      }
      if (!moved) break;
    }
    return R;
  }

  double objective(const Eigen::VectorXd& z, Eigen::VectorXd& phi, double& pn) const {
    pn = p_norm(z, nullptr);
    if (pn == 0.0) return std::numeric_limits<double>::infinity();
    return inner(A * z, phi) / pn;
  }
};

}  // namespace

void velocity_gradient_samples(const FESpacePair& V, const Eigen::VectorXd& u, std::vector<double>& weights,
                               std::vector<double>& moduli) {
  const auto G = gradient_operator(V, weights);
  const Eigen::VectorXd g = G * u;
  moduli.resize(weights.size());
  for (std::size_t s = 0; s < weights.size(); ++s) moduli[s] = g.segment(static_cast<Eigen::Index>(4 * s), 4).norm();
}

InfSupReport compute_infsup(const FESpacePair& V, const YoungFunction& A, const YoungFunction& B,
                            const InfSupOptions& opt) {
  InfSupReport r;
  r.pair = V.name();
  r.velocity_dofs = V.velocity_dofs();
  r.pressure_dofs = V.pressure_dofs();
  const Eigen::MatrixXd D = divergence_matrix(V);
  const Eigen::MatrixXd Mp = pressure_mass(V);
  if (r.velocity_dofs < r.pressure_dofs) {
    r.rank_deficient = true;
    r.note = r.pair + ": more pressure than velocity unknowns, the divergence matrix cannot have full column rank";
    return r;
  }
  const auto K = stiffness_matrix(V);
  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> Kf(K);
  if (Kf.info() != Eigen::Success) throw std::runtime_error("compute_infsup: stiffness factorization failed");

  // L2 pair: beta^2 is the least eigenvalue of D^T K^-1 D z = mu Mp z
  const Eigen::MatrixXd X = Kf.solve(D);
  const Eigen::MatrixXd S = D.transpose() * X;
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (S + S.transpose()), Mp);
  if (es.info() != Eigen::Success) throw std::runtime_error("compute_infsup: eigen solver failed");
  const double mu_min = std::max(0.0, es.eigenvalues()[0]), mu_max = es.eigenvalues()[es.eigenvalues().size() - 1];
  if (mu_min <= 1e-12 * mu_max) {
    r.rank_deficient = true;
    r.note = r.pair + ": divergence matrix is rank deficient";
    return r;
  }
  const YoungFunction At = conjugate(A);
  const std::vector<double> one{1.0};
  const double cB = luxemburg_norm(one, one, B), cA = luxemburg_norm(one, one, At);
  if (is_l2(A) && is_l2(B) && !opt.force_ascent) {
    r.exact = true;
    r.value = std::sqrt(mu_min) / (cB * cA);
    return r;
  }

  std::vector<double> gw;
  const auto G = gradient_operator(V, gw);
  Ascent asc{V, D, Kf, Mp, G, gw, {}, At, B};
  for (int t = 0; t < static_cast<int>(V.mesh().size()); ++t) asc.pw.push_back(V.mesh().area(t));
  const Eigen::LLT<Eigen::MatrixXd> Mf(Mp);

  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> normal;
  r.value = std::numeric_limits<double>::infinity();
  r.converged = false;
  for (int restart = 0; restart < std::max(1, opt.restarts); ++restart) {
    Eigen::VectorXd z;
    if (restart == 0) {
      z = es.eigenvectors().col(0);
    } else {
      z.resize(r.pressure_dofs);
      for (Eigen::Index j = 0; j < z.size(); ++j) z[j] = normal(rng);
    }
    Eigen::VectorXd phi;
    double pn = 0.0;
    double Sv = asc.objective(z, phi, pn);
    double t = 1.0;
    bool done = false;
    int it = 0;
    for (; it < opt.max_iterations; ++it) {
      Eigen::VectorXd dp;
      asc.p_norm(z, &dp);
      const double vn = asc.vel_norm(phi, nullptr);
      const Eigen::VectorXd grad = (D.transpose() * phi / vn - Sv * dp) / pn;
      const Eigen::VectorXd d = -Mf.solve(grad);
      bool moved = false;
      for (int ls = 0; ls < 40; ++ls, t *= 0.5) {
        const Eigen::VectorXd zt = z + t * d;
        Eigen::VectorXd pt = phi;
        double pnt = 0.0;
        const double St = asc.objective(zt, pt, pnt);
        if (St < Sv) {
          const double gain = (Sv - St) / Sv;
          z = zt / pnt;
          phi = pt;
          pn = 1.0;
          Sv = St;
          moved = gain > 1e-9;
          t *= 2.0;
          break;
        }
      }
      if (!moved) {
        done = true;
        break;
      }
    }
    r.iterations += it;
    if (Sv < r.value) {
      r.value = Sv;
      r.converged = done;
    }
  }
  if (!r.converged) r.note = "ascent stopped at the iteration cap";
  return r;
}

}  // namespace orlicz
