#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "orlicz/quadrature.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Sampled profile v(t) on an increasing grid. The end-window tests decide whether
// a supremum is still moving when the range is widened by two decades.
struct Profile {
  const std::vector<double>& t;
  const std::vector<double>& v;

  bool finite_from(std::size_t k) const {
    for (std::size_t i = k; i < v.size(); ++i)
      if (std::isnan(v[i]) || std::isinf(v[i])) return false;
    return true;
  }
  double sup_from(std::size_t k, std::size_t end) const {
    double s = 0.0;
    for (std::size_t i = k; i < end; ++i) s = std::max(s, v[i]);
    return s;
  }
  // running sup over [k, i] across the top two decades
  bool grows_top(std::size_t k, double tol) const {
    const std::size_t n = v.size();
    std::size_t w = k;
    while (w + 1 < n && t[w] < t.back() / 100.0) ++w;
    const double start = sup_from(k, w + 1), end = sup_from(k, n);
    return end > start * (1.0 + tol) + 1e-300;
  }
  // running sup over [i, n) across the two decades above t[k]
  bool grows_bottom(std::size_t k, double tol) const {
    const std::size_t n = v.size();
    std::size_t w = k;
    while (w + 1 < n && t[w] < t[k] * 100.0) ++w;
    const double start = sup_from(w, n), end = sup_from(k, n);
    return end > start * (1.0 + tol) + 1e-300;
  }
};

// Shared classification for sup-type ratios. A near-infinity result starts at the
// least grid point beyond which the ratio stays below max(2 * top value, floor).
GrowthReport classify_sup(const std::vector<double>& t, const std::vector<double>& v, double tol,
                          double floor) {
  Profile pr{t, v};
  GrowthReport rep;
  const std::size_t n = t.size();
  std::size_t top = 0;
  while (top + 1 < n && t[top] < t.back() / 100.0) ++top;
  if (!pr.finite_from(top) || pr.grows_top(top, tol)) {
    rep.status = GrowthStatus::fails;
    rep.constant = kInf;
    return rep;
  }
  if (pr.finite_from(0) && !pr.grows_bottom(0, tol)) {
    rep.status = GrowthStatus::global;
    rep.constant = pr.sup_from(0, n);
    return rep;
  }
  const double cap = std::max(2.0 * pr.sup_from(top, n), floor);
  std::size_t k = n - 1;
  while (k > 0 && std::isfinite(v[k - 1]) && std::max(v[k - 1], pr.sup_from(k, n)) <= cap) --k;
  rep.status = GrowthStatus::near_infinity;
  rep.s0 = t[k];
  rep.constant = pr.sup_from(k, n);
  return rep;
}

}  // namespace

GrowthReport classify_delta2(const YoungFunction& A) {
  // a jump to +inf at a finite point breaks doubling just below it
  if (A.allows_infinity()) return {GrowthStatus::fails, kInf, 0.0};
  const std::vector<double> t = A.grid().nodes();
  std::vector<double> ratio(t.size(), 0.0);
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double a = A(t[i]), b = A(2.0 * t[i]);
    if (b == 0.0) ratio[i] = 0.0;
    else if (a == 0.0 || std::isinf(b)) ratio[i] = kInf;  // overflow of a finite A counts as unbounded
    else ratio[i] = b / a;
  }
  return classify_sup(t, ratio, 0.01, 0.0);
}

GrowthReport classify_nabla2(const YoungFunction& A) {
  // A(2s) >= 2(1+eps)A(s) uniformly. The ratio approaching 2 is a failure, so the
  // sup-classifier runs on 1/(R - 2).
  const std::vector<double> t = A.grid().nodes();
  std::vector<double> w(t.size(), 0.0);
  double inf_ratio = kInf;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double a = A(t[i]);
    if (a == 0.0 || std::isinf(a)) continue;
    const double r = A(2.0 * t[i]) / a;
    w[i] = r > 2.0 ? 1.0 / (r - 2.0) : kInf;
  }
  GrowthReport rep = classify_sup(t, w, 0.01, 0.0);
  std::size_t k = 0;
  while (k < t.size() && t[k] < rep.s0) ++k;
  for (std::size_t i = k; i < t.size(); ++i) {
    const double a = A(t[i]);
    if (a == 0.0 || std::isinf(a)) continue;
    inf_ratio = std::min(inf_ratio, A(2.0 * t[i]) / a);
  }
  rep.constant = rep.status == GrowthStatus::fails ? std::min(inf_ratio, 2.0) : inf_ratio;
  return rep;
}

GrowthReport dominates(const YoungFunction& A, const YoungFunction& B) {
  const std::vector<double> t = A.grid().nodes();
  std::vector<double> c(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) c[i] = inverse_left(A, B(t[i])) / t[i];
  return classify_sup(t, c, 0.01, 1.0);
}

namespace {

// c(t) = A^{-1}(t * int B(s)/s^2 ds)/t for the two sides of the balance test.
struct BalanceSide {
  const YoungFunction& target;
  const std::vector<double>& t;
  std::vector<double> cumulative;  // int_{t_0}^{t_i} B/s^2
  double tail = 0.0;               // int_0^{t_0} B/s^2

  BalanceSide(const YoungFunction& target_, const YoungFunction& source, const std::vector<double>& grid)
      : target(target_), t(grid), cumulative(grid.size(), 0.0) {
    const GaussRule& g = gauss_legendre(8);
    for (std::size_t i = 1; i < t.size(); ++i) {
      const double a = std::log(t[i - 1]), b = std::log(t[i]);
      const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
      double seg = 0.0;
      for (std::size_t q = 0; q < g.nodes.size(); ++q) {
        const double x = mid + half * g.nodes[q];
        seg += g.weights[q] * source(std::exp(x)) * std::exp(-x);
      }
      cumulative[i] = cumulative[i - 1] + seg * half;
    }
    // below the grid the source is extrapolated as a power law with its elasticity
    const double t0 = t.front(), b0 = source(t0);
    if (b0 == 0.0) {
      tail = 0.0;
    } else {
      const double q = t0 * source.density(t0) / b0;
      tail = q > 1.0 + 1e-9 ? b0 / (t0 * (q - 1.0)) : kInf;
    }
  }

  // profile of c for the global variant (k = npos) or from threshold index k
  std::vector<double> profile(std::size_t k, bool global) const {
    std::vector<double> c(t.size(), 0.0);
    const std::size_t start = global ? 0 : k;
    for (std::size_t i = start; i < t.size(); ++i) {
      const double integral = global ? tail + cumulative[i] : cumulative[i] - cumulative[k];
      const double L = t[i] * std::max(integral, 0.0);
      if (std::isnan(L)) {
        c[i] = kInf;
        continue;
      }
      c[i] = inverse_left(target, L) / t[i];
    }
    return c;
  }
};

struct SideVerdict {
  bool ok = false;
  double sup = kInf;
};

// The global variant must also be stable at the bottom of the range; above a
// threshold only the top matters.
SideVerdict judge(const std::vector<double>& t, const std::vector<double>& c, std::size_t k, double tol,
                  bool global) {
  Profile pr{t, c};
  SideVerdict v;
  if (!pr.finite_from(k) || pr.grows_top(k, tol)) return v;
  if (global && pr.grows_bottom(k, tol)) return v;
  v.ok = true;
  v.sup = pr.sup_from(k, t.size());
  return v;
}

}  // namespace

BalanceReport check_balance(const YoungFunction& A, const YoungFunction& B, const BalanceOptions& opts) {
  const YoungFunction At = conjugate(A), Bt = conjugate(B);
  const std::vector<double> t = A.grid().nodes();
  BalanceSide s11(A, B, t);
  BalanceSide s12(Bt, At, t);

  BalanceReport rep;
  {
    auto v11 = judge(t, s11.profile(0, true), 0, opts.window_tolerance, true);
    auto v12 = judge(t, s12.profile(0, true), 0, opts.window_tolerance, true);
    if (v11.ok && v12.ok) {
      rep.c_11 = v11.sup;
      rep.c_12 = v12.sup;
      rep.t0 = 0.0;
      rep.global = true;
      return rep;
    }
  }
  // Thresholds are tried at whole decades.
  std::vector<std::size_t> candidates;
  for (double d = std::pow(10.0, std::ceil(std::log10(t.front()) - 1e-12));
       d <= std::min(opts.max_threshold, t.back() / 1e4) * (1.0 + 1e-12); d *= 10.0) {
    std::size_t k = 0;
    while (k + 1 < t.size() && t[k] < d * (1.0 - 1e-9)) ++k;
    if (candidates.empty() || candidates.back() != k) candidates.push_back(k);
  }
  rep.c_11 = kInf;
  rep.c_12 = kInf;
  rep.t0 = kInf;
  // each side on its own first, so a failing side is still reported
  for (std::size_t k : candidates) {
    auto v = judge(t, s11.profile(k, false), k, opts.window_tolerance, false);
    if (v.ok) {
      rep.c_11 = v.sup;
      break;
    }
  }
  for (std::size_t k : candidates) {
    auto v = judge(t, s12.profile(k, false), k, opts.window_tolerance, false);
    if (v.ok) {
      rep.c_12 = v.sup;
      break;
    }
  }
  if (!rep.admissible()) return rep;
  for (std::size_t k : candidates) {
    auto a = judge(t, s11.profile(k, false), k, opts.window_tolerance, false);
    if (!a.ok) continue;
    auto b = judge(t, s12.profile(k, false), k, opts.window_tolerance, false);
    if (!b.ok) continue;
    rep.c_11 = a.sup;
    rep.c_12 = b.sup;
    rep.t0 = t[k];
    return rep;
  }
  rep.c_11 = kInf;
  rep.c_12 = kInf;
  return rep;
}

}  // namespace orlicz
