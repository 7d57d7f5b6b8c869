#include "orlicz/pressure.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/QR>
#include <Eigen/SparseCholesky>

#include "orlicz/norms.hpp"

namespace orlicz {

PressureSolution reconstruct_pressure(const FESpacePair& V, const PressureSystem& sys, SolveMode mode) {
  const Eigen::Index N = sys.A.cols();
  if (sys.A.rows() < N)
    throw RankDeficiencyError(sys.pair + ": fewer velocity than pressure unknowns; the pair is not inf-sup stable");
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(sys.A);
  qr.setThreshold(1e-12);
  if (qr.rank() < N)
    throw RankDeficiencyError(sys.pair + ": divergence matrix has rank " + std::to_string(qr.rank()) + " < " +
                              std::to_string(N) + "; the pair is not inf-sup stable");
  PressureSolution s;
  const double bn = sys.b.norm();
  if (mode == SolveMode::exact) {
    s.z = qr.solve(sys.b);
    const double rn = (sys.A * s.z - sys.b).norm();
    s.residual = bn > 0.0 ? rn / bn : rn;
    if (s.residual > 1e-10)
      throw std::domain_error("reconstruct_pressure: b is not orthogonal to Ker(A^T) (relative residual " +
                              std::to_string(s.residual) + "); use least squares");
  } else {
    Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> Kf(sys.K);
    if (Kf.info() != Eigen::Success) throw std::runtime_error("reconstruct_pressure: stiffness factorization failed");
    const Eigen::MatrixXd X = Kf.solve(sys.A);
    const Eigen::MatrixXd S = sys.A.transpose() * X;
    s.z = S.ldlt().solve(X.transpose() * sys.b);
    const Eigen::VectorXd r = sys.b - sys.A * s.z;
    const double rn = std::sqrt(std::max(0.0, r.dot(Kf.solve(r))));
    const double b2 = std::sqrt(std::max(0.0, sys.b.dot(Kf.solve(sys.b))));
    s.residual = b2 > 0.0 ? rn / b2 : rn;
  }
  s.values = V.pressure_values(s.z);
  return s;
}

namespace {

// golden-section minimum of a unimodal f on [a, b]
template <class F>
double golden(F&& f, double a, double b) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 80 && b - a > 1e-14 * (1.0 + std::abs(a) + std::abs(b)); ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

std::vector<PressureRow> pressure_error_study(const std::function<double(Point2)>& pi,
                                              const std::vector<std::shared_ptr<const Triangulation>>& meshes,
                                              const YoungFunction& A, const YoungFunction& B, int k) {
  std::vector<PressureRow> rows;
  const auto& R = triangle_rule();
  for (const auto& mesh : meshes) {
    FESpacePair V(mesh, k, 0);
    const int nt = static_cast<int>(mesh->size());
    // pi at the quadrature points
    std::vector<double> w, pv;
    for (int t = 0; t < nt; ++t) {
      const auto& T = mesh->triangles[t];
      for (int q = 0; q < 7; ++q) {
        const auto& l = R.bary[q];
        const Point2 x = l[0] * mesh->vertices[T[0]] + l[1] * mesh->vertices[T[1]] + l[2] * mesh->vertices[T[2]];
        w.push_back(R.weight[q] * mesh->area(t));
        pv.push_back(pi(x));
      }
    }
    const auto sys = assemble_pressure_system(V, [&](int, Point2 x, double H[4]) {
      const double p = pi(x);
      H[0] = H[3] = p;
      H[1] = H[2] = 0.0;
    });
    const auto sol = reconstruct_pressure(V, sys, SolveMode::least_squares);

    PressureRow row;
    row.h = mesh->h;
    row.residual = sol.residual;
    std::vector<double> diff(w.size()), hm(w.size());
    for (int t = 0; t < nt; ++t)
      for (int q = 0; q < 7; ++q) {
        diff[7 * t + q] = sol.values[t] - pv[7 * t + q];
        hm[7 * t + q] = std::sqrt(2.0) * std::abs(pv[7 * t + q]);
      }
    row.error = luxemburg_norm(w, diff, B);

    // best mean-zero elementwise constant: means, then one pass of per-element
    // modular minimization at the current norm
    std::vector<double> mu(nt, 0.0), area(nt);
    double tot = 0.0, mean = 0.0;
    for (int t = 0; t < nt; ++t) {
      area[t] = mesh->area(t);
      for (int q = 0; q < 7; ++q) mu[t] += R.weight[q] * pv[7 * t + q];
      tot += area[t];
      mean += area[t] * mu[t];
    }
    mean /= tot;
    for (double& m : mu) m -= mean;
    auto norm_of = [&](const std::vector<double>& m) {
      for (int t = 0; t < nt; ++t)
        for (int q = 0; q < 7; ++q) diff[7 * t + q] = m[t] - pv[7 * t + q];
      return luxemburg_norm(w, diff, A);
    };
    row.best = norm_of(mu);
    const bool l2 = A.kind() == YoungKind::power && A.params()[0] == 2.0;
    if (!l2 && row.best > 0.0) {
      std::vector<double> nu = mu;
      const double lam = row.best;
      double nmean = 0.0;
      for (int t = 0; t < nt; ++t) {
        double lo = pv[7 * t], hi = pv[7 * t];
        for (int q = 1; q < 7; ++q) {
          lo = std::min(lo, pv[7 * t + q]);
          hi = std::max(hi, pv[7 * t + q]);
        }
        if (hi > lo) {
          nu[t] = golden(
              [&](double c) {
                double s = 0.0;
                for (int q = 0; q < 7; ++q) s += R.weight[q] * A(std::abs(c - pv[7 * t + q]) / lam);
                return s;
              },
              lo, hi);
        }
        nmean += area[t] * nu[t];
      }
      nmean /= tot;
      for (double& m : nu) m -= nmean;
      row.best = std::min(row.best, norm_of(nu));
    }
    row.ratio = row.best > 0.0 ? row.error / row.best : 0.0;
    std::vector<double> ph(sol.values.data(), sol.values.data() + nt);
    row.stability = luxemburg_norm(area, ph, B) / luxemburg_norm(w, hm, A);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace orlicz
