#include "doctest.h"

#include <cmath>
#include <random>

#include "orlicz/bogovskii.hpp"
#include "orlicz/negative_norm.hpp"
#include "orlicz/norms.hpp"
#include "orlicz/quadrature.hpp"

using namespace orlicz;

namespace {

std::shared_ptr<const CellDomain> unit_square(int n) {
  return grid_domain(StarDomain::rectangle({0, 0}, {1, 1}, {{0.5, 0.5}, 0.25}), n);
}

SampledField random_cells(const std::shared_ptr<const CellDomain>& dom, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  std::normal_distribution<double> z;
  return SampledField::sample(dom, 1, [&](Point2, double* v) { v[0] = z(g); });
}

// 16 (t(1-t))^2, equal to 1 at t = 1/2
double profile(double t) { return t <= 0.0 || t >= 1.0 ? 0.0 : 16.0 * t * t * (1 - t) * (1 - t); }

// int over a cell of d/dx_axis of the bubble, from the two opposite faces with 20-point Gauss
double cell_divergence(const Bubble& b, Point2 c, double h) {
  const auto& q = gauss_legendre(20);
  const double wx = b.hi.x - b.lo.x, wy = b.hi.y - b.lo.y;
  auto phi = [&](double x, double y) { return profile((x - b.lo.x) / wx) * profile((y - b.lo.y) / wy); };
  double s = 0.0;
  for (std::size_t k = 0; k < q.nodes.size(); ++k) {
    const double off = 0.5 * h * q.nodes[k], w = 0.5 * h * q.weights[k];
    if (b.axis == 0)
      s += w * (phi(c.x + 0.5 * h, c.y + off) - phi(c.x - 0.5 * h, c.y + off));
    else
      s += w * (phi(c.x + off, c.y + 0.5 * h) - phi(c.x + off, c.y - 0.5 * h));
  }
  return s;
}

}  // namespace

TEST_CASE("bubble values") {
  const Bubble b{{0, 0}, {0.5, 0.5}, 1, 1};
  CHECK(b.value({0.25, 0.25}).y == doctest::Approx(1.0));
  CHECK(b.value({0.25, 0.25}).x == 0.0);
  CHECK(b.value({0.6, 0.25}).y == 0.0);
  double g[4];
  b.gradient({0.25, 0.25}, g);
  for (double x : g) CHECK(x == doctest::Approx(0.0));
}

TEST_CASE("exact pairing against face quadrature") {
  const auto dom = unit_square(16);
  const auto F = TestFamily::dyadic(dom, 3);
  const auto u = random_cells(dom, 4);
  const double h = dom->grid.h;
  for (std::size_t i = 0; i < F.size(); i += 7) {
    double ref = 0.0;
    for (std::size_t c = 0; c < u.size(); ++c) ref += u.value(c) * cell_divergence(F.member(i), u.centroid(c), h);
    INFO(F.member(i).id());
    CHECK(F.pairing(i, u) == doctest::Approx(ref).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("gradient norm of a square bubble") {
  // ||grad phi||_2^2 = 2 * 16^4 * 4 * (1/210) * (1/630) on any square, so 256 sqrt(6) / 315;
  // the library integrates with 3 x 3 Gauss points on 16 x 16 sub-boxes
  const auto F = TestFamily::dyadic(unit_square(16), 2);
  for (int level : {0, 1, 2})
    CHECK(F.gradient_norm(level, YoungFunction::power(2)) == doctest::Approx(256.0 * std::sqrt(6.0) / 315.0).epsilon(1e-7));
}

TEST_CASE("constants give zero exactly") {
  const auto dom = unit_square(32);
  const auto c = SampledField::sample(dom, 1, [](Point2, double* v) { v[0] = -4.25; });
  const auto F = TestFamily::dyadic(dom, 4);
  for (const auto& A : {YoungFunction::power(2), YoungFunction::zygmund(1, 1), YoungFunction::exponential(1)})
    CHECK(neg_norm_lower(c, A, F).value == 0.0);
}

TEST_CASE("families nest and the lower bound grows") {
  const auto dom = unit_square(32);
  const auto F3 = TestFamily::dyadic(dom, 3), F4 = TestFamily::dyadic(dom, 4);
  REQUIRE(F3.size() < F4.size());
  for (std::size_t i = 0; i < F3.size(); ++i) CHECK(F3.member(i).id() == F4.member(i).id());
  const auto P2 = YoungFunction::power(2);
  for (std::uint64_t s = 1; s <= 10; ++s) {
    const auto u = random_cells(dom, s);
    const double l3 = neg_norm_lower(u, P2, F3).value, l4 = neg_norm_lower(u, P2, F4).value;
    CHECK(l3 <= l4);
    CHECK(l4 <= neg_norm_upper(u, P2));
  }
}

TEST_CASE("two-sided report") {
  const auto dom = unit_square(32);
  const auto F = TestFamily::dyadic(dom, 3);
  const auto step = SampledField::sample(dom, 1, [](Point2 p, double* v) { v[0] = p.x > 0.5 ? 1.0 : -1.0; });
  const auto A = YoungFunction::zygmund(1, 2), B = YoungFunction::zygmund(1, 1);
  const auto r = two_sided_check(step, A, B, F);
  CHECK(r.admissible);
  CHECK(r.lower > 0.0);
  CHECK(r.lower <= r.upper);
  CHECK(r.r_low == doctest::Approx(r.lower / luxemburg_norm(step, B)).epsilon(1e-12));
  CHECK(r.r_high == doctest::Approx(r.lower / luxemburg_norm(step, A)).epsilon(1e-12));
  CHECK_FALSE(r.witness_id.empty());
  CHECK_FALSE(two_sided_check(step, YoungFunction::power(1), YoungFunction::power(1), F).admissible);
}

TEST_CASE("sup-approximation converges") {
  const auto dom = unit_square(64);
  const auto v = SampledField::sample(dom, 1, [](Point2 p, double* x) { x[0] = std::sin(M_PI * p.x) * std::sin(M_PI * p.y); });
  const auto rep = sup_approx_convergence(v, YoungFunction::power(2), {4, 8, 16, 32});
  REQUIRE(rep.steps.size() == 4);
  // the conjugate of s^2 is s^2/4, so the norm is half the L2 norm 1/2
  CHECK(rep.target_norm == doctest::Approx(0.25).epsilon(1e-2));
  const double first = std::abs(rep.steps.front().mollified_norm / rep.target_norm - 1.0);
  const double last = std::abs(rep.steps.back().mollified_norm / rep.target_norm - 1.0);
  CHECK(last < first);
  CHECK(last < 0.02);
  for (const auto& s : rep.steps) CHECK(std::abs(s.mean_zero_mean) < 1e-12);
}
