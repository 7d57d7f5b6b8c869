#include "doctest.h"

#include <cmath>
#include <random>

#include "orlicz/young.hpp"
#include "orlicz/young_io.hpp"

using namespace orlicz;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::vector<YoungFunction> shipped() {
  return {YoungFunction::power(1.5), YoungFunction::power(3), YoungFunction::zygmund(1, 2),
          YoungFunction::exponential(0.5), YoungFunction::exponential(1), YoungFunction::eyring()};
}

}  // namespace

TEST_CASE("family values") {
  CHECK(YoungFunction::power(3, 2.0)(1.5) == doctest::Approx(2.0 * 3.375));
  CHECK(YoungFunction::zygmund(1, 2)(2.0) == doctest::Approx(2.0 * std::pow(std::log(3.0), 2)));
  CHECK(YoungFunction::exponential(0.5)(4.0) == doctest::Approx(4.0 * (std::exp(2.0) - 1.0)));
  CHECK(YoungFunction::eyring()(1.0) == doctest::Approx(std::asinh(1.0) - std::sqrt(2.0) + 1.0));
  const auto L = YoungFunction::linear_cap(2.0);
  CHECK(L(1.9) == 0.0);
  CHECK(std::isinf(L(2.1)));
  CHECK(L.finite_limit() == 2.0);
  CHECK(YoungFunction::eyring().density(0.7) == doctest::Approx(std::asinh(0.7)));
}

TEST_CASE("bad parameters are rejected") {
  CHECK_THROWS_AS(YoungFunction::power(0.5), std::invalid_argument);
  CHECK_THROWS_AS(YoungFunction::power(2, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(YoungFunction::zygmund(1, -0.5), std::invalid_argument);
  CHECK_THROWS_AS(YoungFunction::exponential(0.0), std::invalid_argument);
  CHECK_THROWS_AS(YoungFunction::linear_cap(0.0), std::invalid_argument);
  CHECK_THROWS_AS(YoungFunction::tabulated({1.0, 0.5}, {1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(YoungFunction::tabulated({0.5, 1.0}, {2.0, 1.0}), std::invalid_argument);
}

TEST_CASE("conjugates against closed forms") {
  // c s^p has conjugate (p - 1) c (s / (p c))^(p')
  for (double p : {1.5, 2.0, 3.0, 5.0}) {
    const double c = 0.7, q = p / (p - 1.0);
    const auto At = conjugate(YoungFunction::power(p, c));
    for (double s : {1e-3, 0.1, 1.0, 7.0, 300.0})
      CHECK(rel(At(s), (p - 1.0) * c * std::pow(s / (p * c), q)) < 1e-8);
  }
  // density asinh inverts to sinh
  const auto Et = conjugate(YoungFunction::eyring());
  for (double s : {1e-2, 0.5, 1.0, 3.0, 10.0}) CHECK(rel(Et(s), std::cosh(s) - 1.0) < 1e-7);
  // 0 below L and infinite above conjugates to L s
  const auto Lt = conjugate(YoungFunction::linear_cap(1.5));
  for (double s : {1e-3, 1.0, 40.0}) CHECK(rel(Lt(s), 1.5 * s) < 1e-12);
  // s log(1+s) is superlinear, so its conjugate stays finite and grows like e^s
  const auto Zt = conjugate(YoungFunction::zygmund(1, 1));
  CHECK(std::isfinite(Zt(5.0)));
  CHECK(Zt(6.0) / Zt(5.0) > 2.0);
}

TEST_CASE("involution and Young inequality on random points") {
  std::mt19937_64 rng(20261016);
  std::uniform_real_distribution<double> logu(std::log(1e-3), std::log(1e2));
  for (const auto& A : shipped()) {
    const auto At = conjugate(A);
    const auto Att = conjugate(At);
    for (int i = 0; i < 200; ++i) {
      const double s = std::exp(logu(rng)), t = std::exp(logu(rng));
      INFO(A.name() << " s=" << s);
      CHECK(rel(Att(s), A(s)) < 1e-6);
      CHECK(s * t <= (A(s) + At(t)) * (1.0 + 1e-9));
    }
  }
}

TEST_CASE("equality case of the Young inequality") {
  // r a(r) = A(r) + conj(A)(a(r))
  for (const auto& A : shipped()) {
    const auto At = conjugate(A);
    for (double r : {0.05, 0.5, 2.0, 6.0}) {
      const double a = A.density(r);
      INFO(A.name() << " r=" << r);
      CHECK(rel(A(r) + At(a), r * a) < 1e-6);
    }
  }
}

TEST_CASE("inverse round trips") {
  std::mt19937_64 rng(5);
  // exp:1 overflows a double past s = 700
  std::uniform_real_distribution<double> logu(std::log(1e-4), std::log(1e2));
  for (const auto& A : shipped())
    for (int i = 0; i < 100; ++i) {
      const double s = std::exp(logu(rng));
      CHECK(rel(inverse(A, A(s)), s) < 1e-9);
      CHECK(rel(inverse_left(A, A(s)), s) < 1e-9);
    }
  // flat part of linf: the right inverse sits at the cap
  CHECK(inverse(YoungFunction::linear_cap(2.0), 0.0) == doctest::Approx(2.0));
  CHECK(inverse_left(YoungFunction::linear_cap(2.0), 0.0) == 0.0);
}

TEST_CASE("sandwich r <= A^-1(r) conj^-1(r) <= 2r") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> logu(std::log(1e-4), std::log(1e4));
  auto all = shipped();
  all.push_back(YoungFunction::linear_cap(1.0));
  for (const auto& A : all) {
    const auto At = conjugate(A);
    for (int i = 0; i < 50; ++i) {
      const double r = std::exp(logu(rng));
      const double m = inverse(A, r) * inverse(At, r) / r;
      INFO(A.name() << " r=" << r);
      CHECK(m >= 1.0 - 1e-9);
      CHECK(m <= 2.0 + 1e-9);
    }
  }
}

TEST_CASE("growth classes") {
  CHECK(classify_delta2(YoungFunction::power(3)).status == GrowthStatus::global);
  CHECK(classify_delta2(YoungFunction::power(3)).constant == doctest::Approx(8.0).epsilon(1e-6));
  CHECK(classify_delta2(YoungFunction::exponential(1)).status == GrowthStatus::fails);
  CHECK(classify_nabla2(YoungFunction::power(1)).status == GrowthStatus::fails);
  CHECK(classify_nabla2(YoungFunction::power(2)).status == GrowthStatus::global);
  CHECK(classify_delta2(YoungFunction::linear_cap(1)).status == GrowthStatus::fails);
  // 2 log(1+2s)/log(1+s) decreases from 4 at 0 to 2 at infinity, so doubling holds on the whole range
  const auto z = classify_delta2(YoungFunction::zygmund(1, 1));
  CHECK(z.status == GrowthStatus::global);
  CHECK(z.constant == doctest::Approx(4.0).epsilon(1e-5));
  CHECK(classify_nabla2(YoungFunction::zygmund(1, 1)).status == GrowthStatus::fails);
  CHECK(classify_nabla2(YoungFunction::exponential(1)).status != GrowthStatus::fails);
  CHECK(dominates(YoungFunction::power(3), YoungFunction::power(2)).status != GrowthStatus::fails);
  CHECK(dominates(YoungFunction::power(2), YoungFunction::power(3)).status == GrowthStatus::fails);
}

TEST_CASE("balance constants") {
  // t int_0^t s^2/s^2 ds = t^2 and the conjugate s^2/4 gives t^2/4: both constants are 1
  const auto b = check_balance(YoungFunction::power(2), YoungFunction::power(2));
  CHECK(b.admissible());
  CHECK(b.global);
  CHECK(b.c_11 == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(b.c_12 == doctest::Approx(1.0).epsilon(1e-6));
  CHECK_FALSE(check_balance(YoungFunction::power(1), YoungFunction::power(1)).admissible());
  CHECK_FALSE(check_balance(YoungFunction::linear_cap(1), YoungFunction::linear_cap(1)).admissible());
  const auto z = check_balance(YoungFunction::zygmund(1, 1), YoungFunction::zygmund(1, 0));
  CHECK(z.admissible());
  CHECK(std::isfinite(z.t0));
}

TEST_CASE("family literals") {
  CHECK(parse_young("power:3").name() == "power:3");
  CHECK(parse_young("zygmund:1:2").same_as(YoungFunction::zygmund(1, 2)));
  CHECK(parse_young("exp:0.5").kind() == YoungKind::exponential);
  CHECK(parse_young("eyring").kind() == YoungKind::eyring);
  CHECK(parse_young("linf").kind() == YoungKind::linear_cap);
  const auto [A, B] = parse_young_pair("zygmund:1:1:power:1");
  CHECK(A.kind() == YoungKind::zygmund);
  CHECK(B.same_as(YoungFunction::power(1)));
  CHECK_THROWS(parse_young("power"));
  CHECK_THROWS(parse_young("power:x"));
  CHECK_THROWS(parse_young("cubic:3"));
  CHECK_THROWS(parse_young_pair("power:2"));
}

TEST_CASE("json round trip") {
  for (const auto& A : {YoungFunction::zygmund(1, 2), YoungFunction::linear_cap(3.0), conjugate(YoungFunction::power(3))}) {
    const auto B = young_from_json(young_to_json(A));
    CHECK(B.same_as(A));
    for (double s : {0.01, 0.4, 2.5}) CHECK(B(s) == A(s));
  }
  CHECK_THROWS(young_from_json("{\"kind\": \"power\"}"));
  CHECK_THROWS(young_from_json("not json"));
}
