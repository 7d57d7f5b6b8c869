#include "orlicz/young.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace orlicz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLogLo = -690.0;  // exp(-690) ~ 1e-300
constexpr double kLogHi = 690.0;

void check_arg(double s, const char* what) {
  if (!(s >= 0.0)) throw std::domain_error(std::string(what) + ": argument must be non-negative");
}

double eval_analytic(YoungKind kind, const std::vector<double>& p, double s) {
  switch (kind) {
    case YoungKind::power:
      return p[1] * std::pow(s, p[0]);
    case YoungKind::zygmund: {
      if (s == 0.0) return 0.0;
      return std::pow(s, p[0]) * std::pow(std::log1p(s), p[1]);
    }
    case YoungKind::exponential:
      return s * std::expm1(std::pow(s, p[0]));
    case YoungKind::eyring:
      // s asinh s - (sqrt(1+s^2) - 1) without the cancellation near 0
      return s * std::asinh(s) - s * s / (std::sqrt(1.0 + s * s) + 1.0);
    case YoungKind::linear_cap:
      return s <= p[0] ? 0.0 : kInf;
    case YoungKind::tabulated:
      break;
  }
  return 0.0;
}

double density_analytic(YoungKind kind, const std::vector<double>& p, double s) {
  switch (kind) {
    case YoungKind::power:
      if (p[0] == 1.0) return p[1];
      return p[1] * p[0] * std::pow(s, p[0] - 1.0);
    case YoungKind::zygmund: {
      if (s == 0.0) return 0.0;
      const double L = std::log1p(s);
      return p[0] * std::pow(s, p[0] - 1.0) * std::pow(L, p[1]) +
             p[1] * std::pow(s, p[0]) * std::pow(L, p[1] - 1.0) / (1.0 + s);
    }
    case YoungKind::exponential: {
      const double t = std::pow(s, p[0]);
      return std::expm1(t) + p[0] * t * std::exp(t);
    }
    case YoungKind::eyring:
      return std::asinh(s);
    case YoungKind::linear_cap:
      return s <= p[0] ? 0.0 : kInf;
    case YoungKind::tabulated:
      break;
  }
  return 0.0;
}

void check_monotone(const std::vector<double>& v, const char* what) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (std::isnan(v[i])) throw std::invalid_argument(std::string(what) + ": NaN sample");
    if (v[i] < v[i - 1] * (1.0 - 1e-9) - 1e-300)
      throw std::invalid_argument(std::string(what) + ": samples must be non-decreasing (convexity)");
  }
}

// Cubic Hermite on [0, 1] with end values y0, y1 and end slopes m0, m1 (already scaled).
inline double hermite(double t, double y0, double y1, double m0, double m1) {
  const double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * m0 + (-2 * t3 + 3 * t2) * y1 +
         (t3 - t2) * m1;
}

// Maximize f on [lo, hi] (unimodal) by golden section; returns the best value seen.
template <class F>
double golden_max(F&& f, double lo, double hi, int iters = 80) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = f(x1), f2 = f(x2);
  double best = std::max(f1, f2);
  for (int i = 0; i < iters && (b - a) > 1e-15 * b; ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = f(x1);
    }
    best = std::max({best, f1, f2});
  }
  return best;
}

std::string fmt_num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

std::vector<double> YoungGrid::nodes() const {
  if (!(min > 0.0) || !(max > min) || points < 2)
    throw std::invalid_argument("YoungGrid: need 0 < min < max and at least 2 points");
  std::vector<double> r(points);
  const double lmin = std::log(min), step = (std::log(max) - lmin) / (points - 1);
  for (int i = 0; i < points; ++i) r[i] = std::exp(lmin + step * i);
  r.front() = min;
  r.back() = max;
  return r;
}

YoungFunction YoungFunction::make_analytic(YoungKind kind, std::vector<double> params, YoungGrid grid) {
  auto rep = std::make_shared<Rep>();
  rep->kind = kind;
  rep->params = std::move(params);
  rep->grid = grid;
  rep->nodes = grid.nodes();
  rep->density.resize(rep->nodes.size());
  rep->values.resize(rep->nodes.size());
  for (std::size_t i = 0; i < rep->nodes.size(); ++i) {
    rep->density[i] = density_analytic(kind, rep->params, rep->nodes[i]);
    rep->values[i] = eval_analytic(kind, rep->params, rep->nodes[i]);
  }
  check_monotone(rep->density, "YoungFunction");
  return YoungFunction(std::move(rep));
}

YoungFunction YoungFunction::power(double p, double coefficient, YoungGrid grid) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("power: exponent must be >= 1");
  if (!(coefficient > 0.0) || !std::isfinite(coefficient))
    throw std::invalid_argument("power: coefficient must be positive");
  return make_analytic(YoungKind::power, {p, coefficient}, grid);
}

YoungFunction YoungFunction::zygmund(double p, double alpha, YoungGrid grid) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("zygmund: p must be >= 1");
  if (!std::isfinite(alpha)) throw std::invalid_argument("zygmund: alpha must be finite");
  if (p == 1.0 && alpha < 0.0) throw std::invalid_argument("zygmund: p = 1 needs alpha >= 0");
  if (p + alpha < 1.0) throw std::invalid_argument("zygmund: p + alpha must be >= 1");
  if (alpha == 0.0) return power(p, 1.0, grid);
  return make_analytic(YoungKind::zygmund, {p, alpha}, grid);
}

YoungFunction YoungFunction::exponential(double beta, YoungGrid grid) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw std::invalid_argument("exponential: beta must be positive");
  return make_analytic(YoungKind::exponential, {beta}, grid);
}

YoungFunction YoungFunction::eyring(YoungGrid grid) { return make_analytic(YoungKind::eyring, {}, grid); }

YoungFunction YoungFunction::linear_cap(double threshold, YoungGrid grid) {
  if (!(threshold > 0.0) || !std::isfinite(threshold))
    throw std::invalid_argument("linear_cap: threshold must be positive");
  return make_analytic(YoungKind::linear_cap, {threshold}, grid);
}

YoungFunction YoungFunction::tabulated(std::vector<double> nodes, std::vector<double> density,
                                       std::vector<double> values) {
  YoungGrid grid;
  if (!nodes.empty()) grid = YoungGrid{nodes.front(), nodes.back(), static_cast<int>(nodes.size())};
  return tabulated(std::move(nodes), std::move(density), std::move(values), grid);
}

YoungFunction YoungFunction::tabulated(std::vector<double> nodes, std::vector<double> density,
                                       std::vector<double> values, YoungGrid grid) {
  const std::size_t n = nodes.size();
  if (n < 2) throw std::invalid_argument("tabulated: need at least 2 nodes");
  if (density.size() != n) throw std::invalid_argument("tabulated: density size mismatch");
  if (!values.empty() && values.size() != n) throw std::invalid_argument("tabulated: values size mismatch");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(nodes[i] > 0.0) || !std::isfinite(nodes[i]))
      throw std::invalid_argument("tabulated: nodes must be positive and finite");
    if (i > 0 && !(nodes[i] > nodes[i - 1])) throw std::invalid_argument("tabulated: nodes must increase");
    if (!(density[i] >= 0.0)) throw std::invalid_argument("tabulated: density must be non-negative");
  }
  check_monotone(density, "tabulated density");

  if (values.empty()) {
    // integrate the piecewise power-law density exactly
    values.resize(n);
    double v0 = 0.0;
    if (density[0] > 0.0 && std::isfinite(density[1]) && density[1] > 0.0) {
      const double k = std::log(density[1] / density[0]) / std::log(nodes[1] / nodes[0]);
      v0 = nodes[0] * density[0] / (k + 1.0);
    }
    values[0] = v0;
    for (std::size_t i = 1; i < n; ++i) {
      const double d0 = density[i - 1], d1 = density[i], r0 = nodes[i - 1], r1 = nodes[i];
      double seg;
      if (!std::isfinite(d1) || !std::isfinite(values[i - 1])) {
        seg = kInf;
      } else if (d0 > 0.0 && d1 > 0.0) {
        const double ratio = r1 / r0, k = std::log(d1 / d0) / std::log(ratio);
        seg = std::abs(k + 1.0) < 1e-12 ? d0 * r0 * std::log(ratio)
                                         : d0 * r0 / (k + 1.0) * (std::pow(ratio, k + 1.0) - 1.0);
      } else {
        seg = 0.5 * (d0 + d1) * (r1 - r0);
      }
      values[i] = values[i - 1] + seg;
    }
  }
  for (double v : values)
    if (!(v >= 0.0)) throw std::invalid_argument("tabulated: values must be non-negative");
  check_monotone(values, "tabulated values");

  auto rep = std::make_shared<Rep>();
  rep->kind = YoungKind::tabulated;
  rep->grid = grid;
  rep->nodes = std::move(nodes);
  rep->density = std::move(density);
  rep->values = std::move(values);
  auto elasticity = [](double r, double d, double v) {
    if (!(v > 0.0) || !std::isfinite(v) || !std::isfinite(d)) return 1.0;
    return std::max(1.0, r * d / v);
  };
  rep->q_low = elasticity(rep->nodes.front(), rep->density.front(), rep->values.front());
  rep->q_high = elasticity(rep->nodes.back(), rep->density.back(), rep->values.back());
  return YoungFunction(std::move(rep));
}

double YoungFunction::operator()(double s) const {
  check_arg(s, "YoungFunction");
  if (std::isinf(s)) return kInf;
  if (rep_->kind == YoungKind::tabulated) return eval_tabulated(s);
  return eval_analytic(rep_->kind, rep_->params, s);
}

double YoungFunction::density(double s) const {
  check_arg(s, "YoungFunction::density");
  if (std::isinf(s)) return kInf;
  if (rep_->kind == YoungKind::tabulated) return density_tabulated(s);
  return density_analytic(rep_->kind, rep_->params, s);
}

double YoungFunction::eval_tabulated(double s) const {
  const auto& r = rep_->nodes;
  const auto& d = rep_->density;
  const auto& v = rep_->values;
  const std::size_t n = r.size();
  if (s <= r.front()) {
    if (v.front() == 0.0) return 0.0;
    return v.front() * std::pow(s / r.front(), rep_->q_low);
  }
  if (s >= r.back()) {
    if (s == r.back()) return v.back();
    if (!std::isfinite(v.back()) || !std::isfinite(d.back())) return kInf;
    return v.back() * std::pow(s / r.back(), rep_->q_high);
  }
  const std::size_t i = static_cast<std::size_t>(std::upper_bound(r.begin(), r.end(), s) - r.begin()) - 1;
  if (i + 1 >= n) return v.back();
  const double r0 = r[i], r1 = r[i + 1];
  const double v0 = v[i], v1 = v[i + 1], d0 = d[i], d1 = d[i + 1];
  if (!std::isfinite(v0) || !std::isfinite(v1)) return kInf;
  if (!std::isfinite(d1)) {
    const double t = (s - r0) / (r1 - r0);
    return v0 + t * (v1 - v0);
  }
  if (v0 > 0.0) {
    // Hermite in log-log coordinates, exact for power laws
    const double x0 = std::log(r0), h = std::log(r1) - x0, t = (std::log(s) - x0) / h;
    const double g0 = std::log(v0), g1 = std::log(v1);
    const double m0 = r0 * d0 / v0 * h, m1 = r1 * d1 / v1 * h;
    return std::exp(hermite(t, g0, g1, m0, m1));
  }
  const double h = r1 - r0, t = (s - r0) / h;
  return std::max(0.0, hermite(t, v0, v1, d0 * h, d1 * h));
}

double YoungFunction::density_tabulated(double s) const {
  const auto& r = rep_->nodes;
  const auto& d = rep_->density;
  if (s <= r.front()) {
    if (d.front() == 0.0) return 0.0;
    return d.front() * std::pow(s / r.front(), rep_->q_low - 1.0);
  }
  if (s >= r.back()) {
    if (s == r.back()) return d.back();
    if (!std::isfinite(d.back())) return kInf;
    return d.back() * std::pow(s / r.back(), rep_->q_high - 1.0);
  }
  const std::size_t i = static_cast<std::size_t>(std::upper_bound(r.begin(), r.end(), s) - r.begin()) - 1;
  const double r0 = r[i], r1 = r[i + 1], d0 = d[i], d1 = d[i + 1];
  if (!std::isfinite(d1)) return d0;
  if (d0 > 0.0) {
    const double t = std::log(s / r0) / std::log(r1 / r0);
    return d0 * std::pow(d1 / d0, t);
  }
  return d0 + (d1 - d0) * (s - r0) / (r1 - r0);
}

bool YoungFunction::allows_infinity() const { return rep_->kind == YoungKind::linear_cap; }

double YoungFunction::finite_limit() const {
  return rep_->kind == YoungKind::linear_cap ? rep_->params[0] : kInf;
}

std::string YoungFunction::name() const {
  const auto& p = rep_->params;
  switch (rep_->kind) {
    case YoungKind::power:
      return p[1] == 1.0 ? "power:" + fmt_num(p[0]) : "power:" + fmt_num(p[0]) + "*" + fmt_num(p[1]);
    case YoungKind::zygmund:
      return "zygmund:" + fmt_num(p[0]) + ":" + fmt_num(p[1]);
    case YoungKind::exponential:
      return "exp:" + fmt_num(p[0]);
    case YoungKind::eyring:
      return "eyring";
    case YoungKind::linear_cap:
      return p[0] == 1.0 ? "linf" : "linf*" + fmt_num(p[0]);
    case YoungKind::tabulated:
      return "tabulated";
  }
  return "?";
}

bool YoungFunction::same_as(const YoungFunction& o) const {
  if (rep_ == o.rep_) return true;
  return rep_->kind == o.rep_->kind && rep_->params == o.rep_->params && rep_->grid == o.rep_->grid &&
         rep_->nodes == o.rep_->nodes && rep_->density == o.rep_->density && rep_->values == o.rep_->values;
}

double density_inverse(const YoungFunction& A, double s) {
  check_arg(s, "density_inverse");
  const auto& p = A.params();
  switch (A.kind()) {
    case YoungKind::power:
      if (p[0] == 1.0) return s < p[1] ? 0.0 : kInf;
      return std::pow(s / (p[1] * p[0]), 1.0 / (p[0] - 1.0));
    case YoungKind::linear_cap:
      return p[0];
    default:
      break;
  }
  if (std::isinf(s)) return kInf;
  double lo = kLogLo, hi = kLogHi;
  if (A.density(std::exp(hi)) <= s) return kInf;
  if (A.density(std::exp(lo)) > s) return 0.0;
  for (int it = 0; it < 64; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (A.density(std::exp(mid)) <= s) lo = mid;
    else hi = mid;
  }
  return std::exp(0.5 * (lo + hi));
}

double inverse(const YoungFunction& A, double r) {
  check_arg(r, "inverse");
  const auto& p = A.params();
  if (A.kind() == YoungKind::power) return std::pow(r / p[1], 1.0 / p[0]);
  if (A.kind() == YoungKind::linear_cap) return std::isinf(r) ? kInf : p[0];
  if (std::isinf(r)) return kInf;
  double lo = kLogLo, hi = kLogHi;
  if (A(std::exp(hi)) <= r) return kInf;
  if (A(std::exp(lo)) > r) return 0.0;
  for (int it = 0; it < 64; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (A(std::exp(mid)) <= r) lo = mid;
    else hi = mid;
  }
  return std::exp(0.5 * (lo + hi));
}

double inverse_left(const YoungFunction& A, double r) {
  check_arg(r, "inverse_left");
  if (r == 0.0) return 0.0;
  const auto& p = A.params();
  if (A.kind() == YoungKind::power) return std::pow(r / p[1], 1.0 / p[0]);
  if (A.kind() == YoungKind::linear_cap) return p[0];
  double lo = kLogLo, hi = kLogHi;
  if (A(std::exp(hi)) < r) return kInf;
  if (A(std::exp(lo)) >= r) return 0.0;
  for (int it = 0; it < 64; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (A(std::exp(mid)) >= r) hi = mid;
    else lo = mid;
  }
  return std::exp(0.5 * (lo + hi));
}

YoungFunction conjugate(const YoungFunction& A) {
  const auto& p = A.params();
  switch (A.kind()) {
    case YoungKind::power: {
      if (p[0] == 1.0) return YoungFunction::linear_cap(p[1], A.grid());
      const double q = p[0] / (p[0] - 1.0);
      const double c = (1.0 - 1.0 / p[0]) * std::pow(p[1] * p[0], -1.0 / (p[0] - 1.0));
      return YoungFunction::power(q, c, A.grid());
    }
    case YoungKind::linear_cap:
      return YoungFunction::power(1.0, p[0], A.grid());
    default:
      break;
  }
  // Legendre transform at each node: maximizer from the density, refined on the
  // interpolant when A itself is tabulated.
  const bool refine = A.kind() == YoungKind::tabulated;
  // Sample on the design grid and on the density images a(r_i), so that the
  // table covers the range a second conjugation will ask for.
  std::vector<double> nodes = A.grid().nodes();
  {
    const std::vector<double> base = A.grid().nodes();
    for (double r : base) {
      const double a = A.density(r);
      if (a > 0.0 && std::isfinite(a) && std::isfinite(a * r)) nodes.push_back(a);
    }
    std::sort(nodes.begin(), nodes.end());
    std::vector<double> kept;
    for (double x : nodes)
      if (kept.empty() || x > kept.back() * (1.0 + 1e-6)) kept.push_back(x);
    // geometric midpoints: the second conjugation loses digits to cancellation
    // in s r - A~(r) when A grows fast
    nodes.clear();
    for (std::size_t i = 0; i < kept.size(); ++i) {
      if (i > 0) nodes.push_back(std::exp(0.5 * (std::log(kept[i - 1]) + std::log(kept[i]))));
      nodes.push_back(kept[i]);
    }
  }
  std::vector<double> dens(nodes.size()), vals(nodes.size());
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    const double s = nodes[j];
    double r = density_inverse(A, s);
    if (r == 0.0) {
      dens[j] = 0.0;
      vals[j] = 0.0;
      continue;
    }
    if (!std::isfinite(r)) {
      dens[j] = kInf;
      vals[j] = kInf;
      continue;
    }
    double v = s * r - A(r);
    if (refine) {
      double best_r = r;
      auto f = [&](double lr) {
        const double x = std::exp(lr);
        const double val = s * x - A(x);
        if (val > v) {
          v = val;
          best_r = x;
        }
        return val;
      };
      golden_max(f, std::log(r) - 0.1, std::log(r) + 0.1);
      r = best_r;
    }
    if (!std::isfinite(v)) {
      dens[j] = kInf;
      vals[j] = kInf;
      continue;
    }
    dens[j] = r;
    vals[j] = std::max(v, 0.0);
  }
  // the density of the conjugate is the inverse density; enforce monotonicity
  // against rounding in the refinement step
  for (std::size_t j = 1; j < nodes.size(); ++j) {
    dens[j] = std::max(dens[j], dens[j - 1]);
    vals[j] = std::max(vals[j], vals[j - 1]);
  }
  // trailing infinite samples carry no information beyond the first one
  std::size_t keep = nodes.size();
  while (keep > 2 && !std::isfinite(vals[keep - 2])) --keep;
  nodes.resize(keep);
  dens.resize(keep);
  vals.resize(keep);
  return YoungFunction::tabulated(std::move(nodes), std::move(dens), std::move(vals), A.grid());
}

bool BalanceReport::admissible() const { return std::isfinite(c_11) && std::isfinite(c_12); }

const char* to_string(GrowthStatus s) {
  switch (s) {
    case GrowthStatus::global:
      return "global";
    case GrowthStatus::near_infinity:
      return "near_infinity";
    case GrowthStatus::fails:
      return "fails";
  }
  return "?";
}

const char* to_string(YoungKind k) {
  switch (k) {
    case YoungKind::power:
      return "power";
    case YoungKind::zygmund:
      return "zygmund";
    case YoungKind::exponential:
      return "exponential";
    case YoungKind::eyring:
      return "eyring";
    case YoungKind::linear_cap:
      return "linear_cap";
    case YoungKind::tabulated:
      return "tabulated";
  }
  return "?";
}

}  // namespace orlicz
