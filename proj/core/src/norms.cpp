#include "orlicz/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace orlicz {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double modular(std::span<const double> w, std::span<const double> v, const YoungFunction& A, double lambda) {
  if (w.size() != v.size()) throw std::invalid_argument("modular: size mismatch");
  const double inv = 1.0 / lambda;
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (v[i] == 0.0) continue;
    const double a = A(std::abs(v[i]) * inv);
    if (std::isinf(a)) return kInf;
    s += w[i] * a;
  }
  return s;
}

double luxemburg_norm(std::span<const double> w, std::span<const double> v, const YoungFunction& A) {
  if (w.size() != v.size()) throw std::invalid_argument("luxemburg_norm: size mismatch");
  double vmax = 0.0;
  for (double x : v) {
    if (!std::isfinite(x)) throw std::domain_error("luxemburg_norm: non-finite sample");
    vmax = std::max(vmax, std::abs(x));
  }
  if (vmax == 0.0) return 0.0;
  auto M = [&](double lam) { return modular(w, v, A, lam); };
  double lo = vmax, hi = vmax;
  while (M(hi) > 1.0) {
    hi *= 2.0;
    if (hi > 1e300) throw std::domain_error("luxemburg_norm: modular does not decrease");
  }
  while (M(lo) <= 1.0) {
    lo *= 0.5;
    if (lo < 1e-300) return 0.0;
  }
  // M(lo) > 1 >= M(hi)
  while (hi / lo - 1.0 > 1e-14) {
    const double mid = std::sqrt(lo * hi);
    if (mid <= lo || mid >= hi) break;
    if (M(mid) <= 1.0) hi = mid;
    else lo = mid;
  }
  return hi;
}

double modular(const SampledField& u, const YoungFunction& A) {
  const auto m = u.moduli();
  return modular(u.measures(), m, A);
}

double luxemburg_norm(const SampledField& u, const YoungFunction& A) {
  const auto m = u.moduli();
  return luxemburg_norm(u.measures(), m, A);
}

double Rearrangement::operator()(double s) const {
  if (s < 0.0) throw std::domain_error("Rearrangement: negative argument");
  auto it = std::lower_bound(breaks.begin(), breaks.end(), s);
  if (it == breaks.end()) return 0.0;
  return values[static_cast<std::size_t>(it - breaks.begin())];
}

double Rearrangement::primitive(double s) const {
  double acc = 0.0, left = 0.0;
  for (std::size_t i = 0; i < breaks.size(); ++i) {
    if (s <= breaks[i]) return acc + values[i] * (s - left);
    acc += values[i] * (breaks[i] - left);
    left = breaks[i];
  }
  return acc;
}

Rearrangement decreasing_rearrangement(const SampledField& u) {
  const auto m = u.moduli();
  std::vector<std::size_t> order(m.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return m[a] > m[b]; });
  Rearrangement r;
  r.breaks.reserve(m.size());
  r.values.reserve(m.size());
  double acc = 0.0;
  for (std::size_t i : order) {
    acc += u.measure(i);
    r.breaks.push_back(acc);
    r.values.push_back(m[i]);
  }
  return r;
}

double luxemburg_norm(const Rearrangement& f, const YoungFunction& A) {
  std::vector<double> w(f.breaks.size());
  double left = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] = f.breaks[i] - left;
    left = f.breaks[i];
  }
  return luxemburg_norm(w, f.values, A);
}

namespace {

double pairing(const SampledField& u, const SampledField& v) {
  double s = 0.0;
  const int c = u.components();
  for (std::size_t i = 0; i < u.size(); ++i) {
    double d = 0.0;
    for (int k = 0; k < c; ++k) d += u.value(i, k) * v.value(i, k);
    s += u.measure(i) * d;
  }
  return s;
}

// w_i = g(|v_i|) v_i/|v_i|
SampledField along(const SampledField& v, const std::function<double(double)>& g) {
  std::vector<double> out(v.size() * v.components(), 0.0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double m = v.modulus(i);
    if (m == 0.0) continue;
    const double s = g(m) / m;
    for (int k = 0; k < v.components(); ++k) out[i * v.components() + k] = s * v.value(i, k);
  }
  return v.with_values(v.components(), std::move(out));
}

}  // namespace

HolderReport holder_pairing_check(const SampledField& u, const SampledField& v, const YoungFunction& A) {
  if (!u.same_geometry(v) || u.components() != v.components())
    throw std::invalid_argument("holder_pairing_check: u and v live on different geometries");
  const YoungFunction At = conjugate(A);
  HolderReport r;
  r.pairing = std::abs(pairing(u, v));
  r.v_norm = luxemburg_norm(v, At);
  r.bound = 2.0 * luxemburg_norm(u, A) * r.v_norm;
  r.holds = r.pairing <= r.bound * (1.0 + 1e-12) + 1e-300;
  if (r.v_norm == 0.0) return r;

  const double lam = r.v_norm, vmax = v.max_modulus();
  std::vector<SampledField> family;
  family.push_back(u);
  family.push_back(along(v, [&](double m) {
    const double a = At.density(m / lam);
    return std::isfinite(a) ? a : 0.0;
  }));
  family.push_back(along(v, [](double) { return 1.0; }));
  family.push_back(along(v, [](double m) { return m; }));
  family.push_back(along(v, [](double m) { return std::sqrt(m); }));
  family.push_back(along(v, [](double m) { return m * m; }));
  family.push_back(along(v, [&](double m) { return m >= vmax * (1.0 - 1e-12) ? 1.0 : 0.0; }));
  family.push_back(along(v, [&](double m) { return m >= 0.5 * vmax ? 1.0 : 0.0; }));
  for (const auto& w : family) {
    const double n = luxemburg_norm(w, A);
    if (n == 0.0 || !std::isfinite(n)) continue;
    r.dual_sup = std::max(r.dual_sup, std::abs(pairing(w, v)) / n);
  }
  r.dual_ratio = r.dual_sup / r.v_norm;
  return r;
}

double poincare_ratio(const SampledField& u, const SampledField& grad_u, const YoungFunction& A) {
  if (u.components() != 1 || grad_u.components() != 2 || !u.same_geometry(grad_u))
    throw std::invalid_argument("poincare_ratio: need scalar u and its gradient on the same geometry");
  const double g = luxemburg_norm(grad_u, A);
  const double mean = u.mean();
  std::vector<double> centered(u.size());
  bool constant = true;
  for (std::size_t i = 0; i < u.size(); ++i) {
    centered[i] = u.value(i) - mean;
    if (std::abs(centered[i]) > 1e-14 * (1.0 + std::abs(mean))) constant = false;
  }
  if (g == 0.0) {
    if (!constant) throw std::invalid_argument("poincare_ratio: zero gradient for a non-constant field");
    return 0.0;
  }
  const double num = luxemburg_norm(u.measures(), centered, A);
  return num / (std::sqrt(u.total_measure()) * g);
}

}  // namespace orlicz
