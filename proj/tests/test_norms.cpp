#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "orlicz/hardy.hpp"
#include "orlicz/norms.hpp"

using namespace orlicz;

namespace {

SampledField cells(const std::vector<double>& m, const std::vector<double>& v) {
  std::vector<Point2> c(m.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = {0.1 * i, 0.0};
  return SampledField(c, m, 1, v);
}

SampledField random_field(std::mt19937_64& g, int n) {
  std::uniform_real_distribution<double> w(0.01, 1.0);
  std::normal_distribution<double> z;
  std::vector<double> m(n), v(n);
  for (int i = 0; i < n; ++i) {
    m[i] = w(g);
    v[i] = i % 7 == 0 ? 0.0 : std::exp(z(g)) * (z(g) < 0 ? -1.0 : 1.0);
  }
  return cells(m, v);
}

Rearrangement indicator(double a, double L) {
  if (a >= L) return {{L}, {1.0}};
  return {{a, L}, {1.0, 0.0}};
}

}  // namespace

TEST_CASE("power norms are Lebesgue norms") {
  std::mt19937_64 g(1);
  for (double p : {1.0, 1.5, 2.0, 3.0}) {
    const auto u = random_field(g, 50);
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) s += u.measure(i) * std::pow(std::abs(u.value(i)), p);
    CHECK(luxemburg_norm(u, YoungFunction::power(p)) == doctest::Approx(std::pow(s, 1.0 / p)).epsilon(1e-12));
  }
}

TEST_CASE("indicator closed form") {
  // |E| = 0.3 inside |Omega| = 1: the norm of c chi_E is c / A^-1(1/|E|)
  const std::vector<double> m(10, 0.1);
  std::vector<double> v(10, 0.0);
  v[1] = v[4] = v[8] = 2.5;
  const auto u = cells(m, v);
  CHECK(luxemburg_norm(u, YoungFunction::power(3)) == doctest::Approx(2.5 * std::cbrt(0.3)).epsilon(1e-12));
  // exp(1): solve s (e^s - 1) = 10/3 by bisection
  double lo = 0.0, hi = 5.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (mid * (std::exp(mid) - 1.0) < 10.0 / 3.0 ? lo : hi) = mid;
  }
  CHECK(luxemburg_norm(u, YoungFunction::exponential(1)) == doctest::Approx(2.5 / lo).epsilon(1e-10));
  // linf: the norm is the sup
  CHECK(luxemburg_norm(u, YoungFunction::linear_cap(1)) == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("norm properties on random fields") {
  std::mt19937_64 g(42);
  const std::vector<YoungFunction> Y = {YoungFunction::power(2), YoungFunction::zygmund(1, 1),
                                        YoungFunction::exponential(0.5), YoungFunction::eyring()};
  std::uniform_real_distribution<double> lam(-5.0, 5.0);
  for (int k = 0; k < 40; ++k) {
    const auto u = random_field(g, 30);
    auto w = random_field(g, 30);
    w = u.with_values(1, std::vector<double>(w.values().begin(), w.values().end()));
    std::vector<double> sum(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) sum[i] = u.value(i) + w.value(i);
    const auto uw = u.with_values(1, sum);
    const double l = lam(g);
    for (const auto& A : Y) {
      const double nu = luxemburg_norm(u, A);
      INFO(A.name());
      CHECK(luxemburg_norm(u.scaled(l), A) == doctest::Approx(std::abs(l) * nu).epsilon(1e-12));
      CHECK(luxemburg_norm(uw, A) <= (nu + luxemburg_norm(w, A)) * (1.0 + 1e-12));
      CHECK(luxemburg_norm(decreasing_rearrangement(u), A) == doctest::Approx(nu).epsilon(1e-12));
      // the unit ball is closed: the modular at the norm is 1
      CHECK(modular(u.scaled(1.0 / nu), A) == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("decreasing rearrangement") {
  const auto u = cells({0.2, 0.3, 0.1, 0.4}, {-1.0, 3.0, 0.5, 3.0});
  const auto r = decreasing_rearrangement(u);
  REQUIRE(r.values.size() >= 3);
  CHECK(r(0.1) == 3.0);
  CHECK(r(0.69) == 3.0);
  CHECK(r(0.75) == 1.0);
  CHECK(r(0.95) == 0.5);
  CHECK(r.total() == doctest::Approx(1.0));
  CHECK(r.primitive(1.0) == doctest::Approx(0.2 + 2.1 + 0.05));
  for (std::size_t i = 1; i < r.values.size(); ++i) CHECK(r.values[i] <= r.values[i - 1]);
}

TEST_CASE("Hardy operators on an indicator") {
  // H chi_(0,a] = 1 then a/s; D chi_(0,a] = log(a/s) then 0
  const double a = 0.3, L = 1.0;
  const auto f = indicator(a, L);
  const auto H = hardy_average(f);
  const auto D = hardy_dual(f);
  CHECK(H(0.1) == doctest::Approx(1.0));
  CHECK(H(0.6) == doctest::Approx(0.5));
  CHECK(D(0.1) == doctest::Approx(std::log(3.0)));
  CHECK(D(0.5) == doctest::Approx(0.0));
  const auto P2 = YoungFunction::power(2);
  CHECK(luxemburg_norm(H, P2) == doctest::Approx(std::sqrt(2 * a - a * a / L)).epsilon(1e-9));
  CHECK(luxemburg_norm(D, P2) == doctest::Approx(std::sqrt(2 * a)).epsilon(1e-9));
}

TEST_CASE("Hardy inequality on random steps") {
  std::mt19937_64 g(9);
  std::uniform_int_distribution<int> n(1, 25);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::exponential_distribution<double> e(1.0);
  const auto P2 = YoungFunction::power(2), P3 = YoungFunction::power(3);
  for (int k = 0; k < 100; ++k) {
    Rearrangement f;
    const int m = n(g);
    for (int i = 0; i < m; ++i) {
      f.breaks.push_back(u(g));
      f.values.push_back(e(g));
    }
    std::sort(f.breaks.begin(), f.breaks.end());
    f.breaks.back() = 1.0;
    for (int i = 1; i < m; ++i) f.breaks[i] = std::max(f.breaks[i], f.breaks[i - 1] + 1e-6);
    std::sort(f.values.rbegin(), f.values.rend());
    CHECK(luxemburg_norm(hardy_average(f), P2) <= 2.0 * luxemburg_norm(f, P2) * (1.0 + 1e-9));
    CHECK(luxemburg_norm(hardy_average(f), P3) <= 1.5 * luxemburg_norm(f, P3) * (1.0 + 1e-9));
    // Hf* dominates f*
    for (double s : {0.01, 0.2, 0.7}) CHECK(hardy_average(f)(s) >= f(s) * (1.0 - 1e-12));
  }
}

TEST_CASE("Holder pairing") {
  std::mt19937_64 g(3);
  for (const auto& A : {YoungFunction::power(2), YoungFunction::zygmund(1, 1), YoungFunction::exponential(1)}) {
    const auto u = random_field(g, 40);
    auto v = random_field(g, 40);
    v = u.with_values(1, std::vector<double>(v.values().begin(), v.values().end()));
    const auto h = holder_pairing_check(u, v, A);
    INFO(A.name());
    CHECK(h.holds);
    CHECK(h.pairing <= h.bound);
    CHECK(h.dual_ratio >= 1.0 - 1e-6);
    CHECK(h.dual_ratio <= 2.0 + 1e-6);
  }
}
