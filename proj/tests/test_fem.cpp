#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "orlicz/infsup.hpp"
#include "orlicz/pressure.hpp"
#include "orlicz/projection.hpp"
#include "orlicz/quadrature.hpp"
#include "orlicz/stress.hpp"

using namespace orlicz;

namespace {

constexpr double pi = std::numbers::pi;

std::shared_ptr<const Triangulation> square(int n) { return std::make_shared<const Triangulation>(triangulate_square(n)); }

// u = b (e^x, cos 3y), b = sin(pi x) sin(pi y)
VectorFunction velocity() {
  VectorFunction u;
  u.value = [](Point2 p) {
    const double b = std::sin(pi * p.x) * std::sin(pi * p.y);
    return Point2{b * std::exp(p.x), b * std::cos(3 * p.y)};
  };
  u.gradient = [](Point2 p, double g[4]) {
    const double s = std::sin(pi * p.x), t = std::sin(pi * p.y);
    const double bx = pi * std::cos(pi * p.x) * t, by = pi * s * std::cos(pi * p.y), b = s * t;
    g[0] = (bx + b) * std::exp(p.x);
    g[1] = by * std::exp(p.x);
    g[2] = bx * std::cos(3 * p.y);
    g[3] = by * std::cos(3 * p.y) - 3 * b * std::sin(3 * p.y);
  };
  return u;
}

// int_T div u through the collapsed square (Duffy) with 12 x 12 Gauss points
double divergence_integral(const Triangulation& m, int t, const VectorFunction& u) {
  const auto& q = gauss_legendre(12);
  const Point2 a = m.vertices[m.triangles[t][0]], b = m.vertices[m.triangles[t][1]], c = m.vertices[m.triangles[t][2]];
  double s = 0.0;
  for (std::size_t i = 0; i < q.nodes.size(); ++i)
    for (std::size_t j = 0; j < q.nodes.size(); ++j) {
      const double xi = 0.5 * (1 + q.nodes[i]), eta = 0.5 * (1 + q.nodes[j]);
      const double l1 = xi * (1 - eta), l2 = xi * eta;
      const Point2 x = a + l1 * (b - a) + l2 * (c - a);
      double g[4];
      u.gradient(x, g);
      s += 0.25 * q.weights[i] * q.weights[j] * xi * (g[0] + g[3]);
    }
  return s * 2.0 * m.area(t);
}

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

}  // namespace

TEST_CASE("triangle rule is exact to degree 5") {
  const auto& r = triangle_rule();
  for (int a = 0; a <= 5; ++a)
    for (int b = 0; a + b <= 5; ++b) {
      double s = 0.0;
      for (int k = 0; k < 7; ++k) s += r.weight[k] * std::pow(r.bary[k][1], a) * std::pow(r.bary[k][2], b);
      // reference area 1/2 folded into the unit weights
      CHECK(0.5 * s == doctest::Approx(factorial(a) * factorial(b) / factorial(a + b + 2)).epsilon(1e-13));
    }
}

TEST_CASE("structured meshes") {
  const auto m = triangulate_square(4);
  CHECK(m.size() == 32);
  double area = 0.0;
  for (int t = 0; t < static_cast<int>(m.size()); ++t) area += m.area(t);
  CHECK(area == doctest::Approx(1.0));
  CHECK(m.h == doctest::Approx(std::sqrt(2.0) / 4));
  const auto r = refine(m);
  CHECK(r.size() == 128);
  CHECK(r.h == doctest::Approx(m.h / 2));
  const auto L = triangulate({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}, 0.3);
  double la = 0.0;
  for (int t = 0; t < static_cast<int>(L.size()); ++t) la += L.area(t);
  CHECK(la == doctest::Approx(3.0));
  CHECK(L.h <= 0.3);
  CHECK_THROWS(Triangulation::from({{0, 0}, {1, 0}, {2, 0}}, {{0, 1, 2}}));
}

TEST_CASE("spaces and matrices") {
  FESpacePair V(square(4), 2, 0);
  CHECK(V.velocity_dofs() == 2 * 7 * 7);
  CHECK(V.pressure_dofs() == 31);
  CHECK_THROWS_AS(FESpacePair(square(4), 2, 1), std::invalid_argument);
  const Eigen::MatrixXd K = Eigen::MatrixXd(stiffness_matrix(V));
  CHECK((K - K.transpose()).norm() < 1e-12);
  Eigen::VectorXd z = Eigen::VectorXd::LinSpaced(V.pressure_dofs(), -1.0, 2.0);
  const auto vals = V.pressure_values(z);
  double mean = 0.0;
  for (int t = 0; t < static_cast<int>(V.mesh().size()); ++t) mean += vals[t] * V.mesh().area(t);
  CHECK(std::abs(mean) < 1e-14);
  CHECK((V.pressure_coefficients(vals) - z).norm() < 1e-12);
}

TEST_CASE("inf-sup for the L2 pair") {
  // generalized eigenvalue of A^T K^-1 A against the pressure mass, frozen from a dense solve
  FESpacePair V(square(4), 2, 0);
  const auto P2 = YoungFunction::power(2);
  const auto r = compute_infsup(V, P2, P2);
  CHECK(r.exact);
  CHECK_FALSE(r.rank_deficient);
  CHECK(r.value == doctest::Approx(1.077660841328794).epsilon(1e-9));
  CHECK(compute_infsup(FESpacePair(square(8), 2, 0), P2, P2).value == doctest::Approx(1.0153046023291712).epsilon(1e-9));
}

TEST_CASE("P1/P0 is flagged") {
  FESpacePair V(square(4), 1, 0);
  const auto r = compute_infsup(V, YoungFunction::power(2), YoungFunction::power(2));
  CHECK(r.rank_deficient);
  CHECK_FALSE(r.note.empty());
  const auto sys = assemble_pressure_system(V, [](int, Point2 x, double H[4]) {
    H[0] = H[3] = x.x;
    H[1] = H[2] = 0.0;
  });
  CHECK_THROWS_AS(reconstruct_pressure(V, sys, SolveMode::exact), RankDeficiencyError);
}

TEST_CASE("pressure reconstruction") {
  FESpacePair V(square(8), 2, 0);
  std::mt19937_64 g(12);
  std::normal_distribution<double> z;
  Eigen::VectorXd c(V.pressure_dofs());
  for (auto& x : c) x = z(g);
  const auto q = V.pressure_values(c);
  const auto sys = assemble_pressure_system(V, [&](int t, Point2, double H[4]) {
    H[0] = H[3] = q[t];
    H[1] = H[2] = 0.0;
  });
  const auto exact = reconstruct_pressure(V, sys, SolveMode::exact);
  CHECK((exact.values - q).cwiseAbs().maxCoeff() < 1e-10);
  const auto ls = reconstruct_pressure(V, sys, SolveMode::least_squares);
  CHECK((ls.values - q).cwiseAbs().maxCoeff() < 1e-10);
  // a non-gradient load is outside the range
  const auto bad = assemble_pressure_system(V, [](int, Point2 x, double H[4]) {
    H[0] = H[3] = 0.0;
    H[1] = std::sin(5 * x.y);
    H[2] = -H[1];
  });
  CHECK_THROWS(reconstruct_pressure(V, bad, SolveMode::exact));
  CHECK(reconstruct_pressure(V, bad, SolveMode::least_squares).residual > 1e-6);
}

TEST_CASE("pressure error ratio stays near 1") {
  const auto pi_fn = [](Point2 p) { return std::sin(2 * pi * p.x) * std::sin(2 * pi * p.y); };
  const auto rows = pressure_error_study(pi_fn, {square(4), square(8)}, YoungFunction::power(2), YoungFunction::power(2));
  REQUIRE(rows.size() == 2);
  for (const auto& r : rows) {
    CHECK(r.ratio >= 1.0 - 1e-9);
    CHECK(r.ratio < 1.1);
  }
  CHECK(rows[1].error < rows[0].error);
}

TEST_CASE("projection keeps element divergence") {
  const auto u = velocity();
  for (int n : {2, 4, 8}) {
    FESpacePair V(square(n), 2, 0);
    const auto d = element_divergence(V, project(V, u));
    for (int t = 0; t < static_cast<int>(V.mesh().size()); ++t) CHECK(std::abs(d[t] - divergence_integral(V.mesh(), t, u)) < 1e-12);
  }
  // plain interpolation does not
  FESpacePair V(square(4), 2, 0);
  const auto di = element_divergence(V, interpolate(V, u));
  double worst = 0.0;
  for (int t = 0; t < static_cast<int>(V.mesh().size()); ++t) worst = std::max(worst, std::abs(di[t] - divergence_integral(V.mesh(), t, u)));
  CHECK(worst > 1e-6);
}

TEST_CASE("projection stability") {
  const auto u = velocity();
  FESpacePair V(square(8), 2, 0);
  for (const auto& A : {YoungFunction::power(1.5), YoungFunction::zygmund(1, 1), YoungFunction::exponential(1)}) {
    const double r = orlicz_projection_ratio(V, u, A);
    CHECK(r > 0.5);
    CHECK(r < 2.0);
  }
  CHECK(projection_local_constant(V, u, project(V, u)) < 3.0);
}

TEST_CASE("stress laws") {
  const double xi[4] = {0.3, -0.4, -0.4, 1.2};
  const double n = std::sqrt(0.09 + 0.32 + 1.44);
  double S[4];
  StressLaw::power(2.0, 0.0, 2.0).eval(xi, S);
  for (int i = 0; i < 4; ++i) CHECK(S[i] == doctest::Approx(2.0 * xi[i]));
  const auto P = StressLaw::power(1.5, 0.1, 3.0);
  P.eval(xi, S);
  CHECK(S[3] == doctest::Approx(1.5 * (0.1 + n) * xi[3]));
  const auto E = StressLaw::eyring(0.8, 2.0);
  CHECK(E.modulus(n) == doctest::Approx(0.8 * std::asinh(2.0 * n) / 2.0));
  // small strain: Newtonian limit nu0 xi
  const double tiny[4] = {1e-9, 0.0, 0.0, -2e-9};
  E.eval(tiny, S);
  CHECK(S[0] == doctest::Approx(0.8e-9).epsilon(1e-12));
  const double zero[4] = {0, 0, 0, 0};
  E.eval(zero, S);
  CHECK(S[0] == 0.0);
  const double skew[4] = {0.0, 1.0, -1.0, 0.0};
  CHECK_THROWS_AS(E.eval(skew, S), std::invalid_argument);
  CHECK_THROWS_AS(StressLaw::power(1.0, 0.0, 1.0), std::invalid_argument);

  CHECK(parse_stress_law("power:2:0.5:3").name() == "power:2:0.5:3");
  CHECK(parse_stress_law("eyring:1:2").kind() == StressKind::eyring);
  CHECK_THROWS_AS(parse_stress_law("power:2:0.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_stress_law("eyring:a:2"), std::invalid_argument);

  const auto Q = StressLaw::potential(YoungFunction::power(3));
  CHECK(Q.modulus(2.0) == doctest::Approx(12.0));
}

TEST_CASE("stress laws are monotone") {
  std::mt19937_64 g(77);
  std::normal_distribution<double> z;
  const StressLaw laws[] = {StressLaw::power(1.0, 0.0, 1.5), StressLaw::power(1.0, 0.5, 4.0), StressLaw::eyring(1.0, 3.0),
                            StressLaw::potential(YoungFunction::zygmund(1, 1))};
  for (const auto& law : laws)
    for (int k = 0; k < 500; ++k) {
      double a[4], b[4], Sa[4], Sb[4];
      for (double* m : {a, b}) {
        const double scale = std::exp(2.0 * z(g));
        m[0] = scale * z(g);
        m[1] = m[2] = scale * z(g);
        m[3] = scale * z(g);
      }
      law.eval(a, Sa);
      law.eval(b, Sb);
      double d = 0.0;
      for (int i = 0; i < 4; ++i) d += (Sa[i] - Sb[i]) * (a[i] - b[i]);
      CHECK(d >= -1e-12 * (1.0 + std::abs(d)));
    }
}
