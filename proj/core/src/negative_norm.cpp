#include "orlicz/negative_norm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <span>
#include <stdexcept>

#include "orlicz/bogovskii.hpp"
#include "orlicz/norms.hpp"
#include "orlicz/quadrature.hpp"

namespace orlicz {

namespace {

double bump(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  const double q = t * (1.0 - t);
  return 16.0 * q * q;
}

double bump_prime(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  return 32.0 * t * (1.0 - t) * (1.0 - 2.0 * t);
}

SampledField centered(const SampledField& u) {
  const double m = u.mean();
  std::vector<double> v(u.values().begin(), u.values().end());
  for (double& x : v) x -= m;
  return u.with_values(1, std::move(v));
}

}  // namespace

std::string Bubble::id() const {
  char buf[128];
  std::snprintf(buf, sizeof buf, "L%d[%.6g,%.6g]x[%.6g,%.6g]e%d", level, lo.x, hi.x, lo.y, hi.y, axis + 1);
  return buf;
}

Point2 Bubble::value(Point2 x) const {
  const double b = bump((x.x - lo.x) / (hi.x - lo.x)) * bump((x.y - lo.y) / (hi.y - lo.y));
  return axis == 0 ? Point2{b, 0.0} : Point2{0.0, b};
}

void Bubble::gradient(Point2 x, double g[4]) const {
  const double lx = hi.x - lo.x, ly = hi.y - lo.y;
  const double t = (x.x - lo.x) / lx, s = (x.y - lo.y) / ly;
  const double bx = bump_prime(t) / lx * bump(s), by = bump(t) * bump_prime(s) / ly;
  g[0] = g[1] = g[2] = g[3] = 0.0;
  g[2 * axis] = bx;
  g[2 * axis + 1] = by;
}

TestFamily TestFamily::dyadic(std::shared_ptr<const CellDomain> domain, int depth) {
  if (!domain || domain->cells.empty()) throw std::invalid_argument("TestFamily: empty domain");
  if (depth < 1 || depth > 8) throw std::invalid_argument("TestFamily: depth must be in [1, 8]");
  const auto& g = domain->grid;
  int x0 = g.nx, x1 = -1, y0 = g.ny, y1 = -1;
  for (int idx : domain->cells) {
    x0 = std::min(x0, idx % g.nx);
    x1 = std::max(x1, idx % g.nx);
    y0 = std::min(y0, idx / g.nx);
    y1 = std::max(y1, idx / g.nx);
  }
  const Point2 lo = {g.origin.x + x0 * g.h, g.origin.y + y0 * g.h};
  const double W = (x1 + 1 - x0) * g.h, H = (y1 + 1 - y0) * g.h;
  const double eps = 1e-9 * g.h;

  TestFamily F;
  F.domain_ = domain;
  F.depth_ = depth;
  auto inside = [&](Point2 a, Point2 b) {
    const int i0 = static_cast<int>(std::floor((a.x - g.origin.x + eps) / g.h));
    const int i1 = static_cast<int>(std::ceil((b.x - g.origin.x - eps) / g.h));
    const int j0 = static_cast<int>(std::floor((a.y - g.origin.y + eps) / g.h));
    const int j1 = static_cast<int>(std::ceil((b.y - g.origin.y - eps) / g.h));
    for (int j = j0; j < j1; ++j)
      for (int i = i0; i < i1; ++i)
        if (domain->at(i, j) < 0) return false;
    return true;
  };
  const GaussRule& g3 = gauss_legendre(3);
  for (int level = 0; level < depth; ++level) {
    const int m = 1 << level;
    const double bw = W / m, bh = H / m;
    for (int jy = 0; jy <= 2 * m - 2; ++jy)
      for (int jx = 0; jx <= 2 * m - 2; ++jx) {
        const Point2 a = {lo.x + 0.5 * jx * bw, lo.y + 0.5 * jy * bh};
        const Point2 b = {a.x + bw, a.y + bh};
        if (!inside(a, b)) continue;
        for (int axis = 0; axis < 2; ++axis) {
          Bubble bub{a, b, axis, level};
          // grid lines normal to the bubble's direction, strictly inside the box
          std::vector<Flux> fl;
          const double n0 = axis == 0 ? a.x : a.y, n1 = axis == 0 ? b.x : b.y;
          const double t0 = axis == 0 ? a.y : a.x, t1 = axis == 0 ? b.y : b.x;
          const double on = axis == 0 ? g.origin.x : g.origin.y, ot = axis == 0 ? g.origin.y : g.origin.x;
          const int l0 = static_cast<int>(std::floor((n0 - on) / g.h)) + 1;
          const int l1 = static_cast<int>(std::ceil((n1 - on) / g.h)) - 1;
          const int c0 = static_cast<int>(std::floor((t0 - ot + eps) / g.h));
          const int c1 = static_cast<int>(std::ceil((t1 - ot - eps) / g.h));
          for (int l = l0; l <= l1; ++l) {
            const double xn = on + l * g.h;
            if (xn <= n0 + eps || xn >= n1 - eps) continue;
            for (int c = c0; c < c1; ++c) {
              const double s0 = std::max(t0, ot + c * g.h), s1 = std::min(t1, ot + (c + 1) * g.h);
              if (s1 <= s0) continue;
              double v = 0.0;
              for (std::size_t q = 0; q < g3.nodes.size(); ++q) {
                const double st = 0.5 * (s0 + s1) + 0.5 * (s1 - s0) * g3.nodes[q];
                const Point2 p = axis == 0 ? Point2{xn, st} : Point2{st, xn};
                const Point2 phi = bub.value(p);
                v += g3.weights[q] * (axis == 0 ? phi.x : phi.y);
              }
              v *= 0.5 * (s1 - s0);
              const int minus = axis == 0 ? domain->at(l - 1, c) : domain->at(c, l - 1);
              const int plus = axis == 0 ? domain->at(l, c) : domain->at(c, l);
              fl.push_back({minus, plus, v});
            }
          }
          F.members_.push_back(bub);
          F.fluxes_.push_back(std::move(fl));
        }
      }
  }
  if (F.members_.empty()) throw std::invalid_argument("TestFamily: no box fits inside the domain");
  return F;
}

double TestFamily::pairing(std::size_t i, const SampledField& u) const {
  if (u.domain() != domain_ && !(u.domain() && u.domain()->cells == domain_->cells))
    throw std::invalid_argument("TestFamily::pairing: u lives on a different domain");
  double s = 0.0;
  for (const auto& f : fluxes_.at(i)) s += f.value * (u.value(f.minus) - u.value(f.plus));
  return s;
}

double TestFamily::gradient_norm(int level, const YoungFunction& A) const {
  const auto& g = domain_->grid;
  int x0 = g.nx, x1 = -1, y0 = g.ny, y1 = -1;
  for (int idx : domain_->cells) {
    x0 = std::min(x0, idx % g.nx);
    x1 = std::max(x1, idx % g.nx);
    y0 = std::min(y0, idx / g.nx);
    y1 = std::max(y1, idx / g.nx);
  }
  const double bw = (x1 + 1 - x0) * g.h / (1 << level), bh = (y1 + 1 - y0) * g.h / (1 << level);
  const Bubble b{{0.0, 0.0}, {bw, bh}, 0, level};
  // 16 x 16 sub-boxes, 3 x 3 Gauss points each
  const GaussRule& g3 = gauss_legendre(3);
  constexpr int m = 16;
  std::vector<double> w, v;
  w.reserve(m * m * 9);
  v.reserve(m * m * 9);
  const double dx = bw / m, dy = bh / m;
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i)
      for (std::size_t qy = 0; qy < 3; ++qy)
        for (std::size_t qx = 0; qx < 3; ++qx) {
          const Point2 p = {(i + 0.5 + 0.5 * g3.nodes[qx]) * dx, (j + 0.5 + 0.5 * g3.nodes[qy]) * dy};
          double gr[4];
          b.gradient(p, gr);
          w.push_back(0.25 * g3.weights[qx] * g3.weights[qy] * dx * dy);
          v.push_back(std::sqrt(gr[0] * gr[0] + gr[1] * gr[1] + gr[2] * gr[2] + gr[3] * gr[3]));
        }
  return luxemburg_norm(w, v, A);
}

NegNorm neg_norm_lower(const SampledField& u, const YoungFunction& A, const TestFamily& F) {
  if (u.components() != 1) throw std::invalid_argument("neg_norm_lower: u must be scalar");
  if (F.size() == 0) throw std::invalid_argument("neg_norm_lower: empty family");
  const YoungFunction At = conjugate(A);
  std::vector<double> norms(F.depth(), -1.0);
  NegNorm r;
  for (std::size_t i = 0; i < F.size(); ++i) {
    const int lv = F.member(i).level;
    if (norms[lv] < 0.0) norms[lv] = F.gradient_norm(lv, At);
    const double val = std::abs(F.pairing(i, u)) / norms[lv];
    if (val > r.value) {
      r.value = val;
      r.witness = i;
    }
  }
  r.witness_id = F.member(r.witness).id();
  return r;
}

double neg_norm_upper(const SampledField& u, const YoungFunction& A, double C2) {
  return 2.0 * C2 * luxemburg_norm(centered(u), A);
}

TwoSidedReport two_sided_check(const SampledField& u, const YoungFunction& A, const YoungFunction& B,
                               const TestFamily& F) {
  TwoSidedReport r;
  r.admissible = check_balance(A, B).admissible();
  const auto low = neg_norm_lower(u, A, F);
  r.lower = low.value;
  r.witness_id = low.witness_id;
  r.upper = neg_norm_upper(u, A);
  const auto c = centered(u);
  const double nb = luxemburg_norm(c, B), na = luxemburg_norm(c, A);
  r.r_low = nb > 0.0 ? r.lower / nb : 0.0;
  r.r_high = na > 0.0 ? r.lower / na : 0.0;
  return r;
}

namespace {

// distance from each cell centroid to the boundary of the union of domain cells
std::vector<double> boundary_distance(const CellDomain& dom) {
  const auto& g = dom.grid;
  std::vector<std::pair<Point2, Point2>> edges;
  for (int idx : dom.cells) {
    const int ix = idx % g.nx, iy = idx / g.nx;
    const double x0 = g.origin.x + ix * g.h, y0 = g.origin.y + iy * g.h;
    if (dom.at(ix - 1, iy) < 0) edges.push_back({{x0, y0}, {x0, y0 + g.h}});
    if (dom.at(ix + 1, iy) < 0) edges.push_back({{x0 + g.h, y0}, {x0 + g.h, y0 + g.h}});
    if (dom.at(ix, iy - 1) < 0) edges.push_back({{x0, y0}, {x0 + g.h, y0}});
    if (dom.at(ix, iy + 1) < 0) edges.push_back({{x0, y0 + g.h}, {x0 + g.h, y0 + g.h}});
  }
  std::vector<double> d;
  d.reserve(dom.cells.size());
  for (int idx : dom.cells) {
    const Point2 c = g.center(idx % g.nx, idx / g.nx);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& [a, b] : edges) {
      const Point2 ab = b - a;
      const double t = std::clamp(dot(c - a, ab) / dot(ab, ab), 0.0, 1.0);
      const Point2 p = a + t * ab;
      best = std::min(best, std::sqrt(dot(c - p, c - p)));
    }
    d.push_back(best);
  }
  return d;
}

// weights of the radius-r bump over the cells at offsets (-R..R)^2 from a
// centroid, normalized to sum 1
std::vector<double> mollifier_stencil(double h, double r, int& R) {
  R = static_cast<int>(std::ceil(r / h + 0.5));
  const Mollifier rho(Ball{{0.0, 0.0}, r});
  const int s = std::clamp(static_cast<int>(std::ceil(8.0 * h / r)), 8, 64);
  const GaussRule& g3 = gauss_legendre(3);
  const int n = 2 * R + 1;
  std::vector<double> S(n * n, 0.0);
  double tot = 0.0;
  const double sub = h / s;
  for (int oy = -R; oy <= R; ++oy)
    for (int ox = -R; ox <= R; ++ox) {
      const double cx = ox * h, cy = oy * h;
      if (std::max(std::abs(cx), std::abs(cy)) - 0.5 * h > r) continue;
      double acc = 0.0;
      for (int j = 0; j < s; ++j)
        for (int i = 0; i < s; ++i)
          for (std::size_t qy = 0; qy < 3; ++qy)
            for (std::size_t qx = 0; qx < 3; ++qx) {
              const Point2 p = {cx - 0.5 * h + (i + 0.5 + 0.5 * g3.nodes[qx]) * sub,
                                cy - 0.5 * h + (j + 0.5 + 0.5 * g3.nodes[qy]) * sub};
              acc += 0.25 * g3.weights[qx] * g3.weights[qy] * rho(p);
            }
      S[(oy + R) * n + ox + R] = acc;
      tot += acc;
    }
  for (double& x : S) x /= tot;
  return S;
}

}  // namespace

SupApproxReport sup_approx_convergence(const SampledField& v, const YoungFunction& A, const std::vector<int>& ks,
                                       const SampledField& u) {
  const auto dom = v.domain();
  if (!dom || v.components() != 1) throw std::invalid_argument("sup_approx_convergence: need a scalar grid field");
  const bool pair = u.size() > 0;
  if (pair && !u.same_geometry(v)) throw std::invalid_argument("sup_approx_convergence: u and v differ in geometry");
  const YoungFunction At = conjugate(A);
  const auto& g = dom->grid;
  const auto dist = boundary_distance(*dom);
  auto pairing = [&](std::span<const double> w) {
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) s += v.measure(i) * u.value(i) * w[i];
    return s;
  };

  SupApproxReport r;
  r.target_norm = luxemburg_norm(v, At);
  if (pair) r.target_pairing = pairing(v.values());
  for (int k : ks) {
    if (k < 1) throw std::invalid_argument("sup_approx_convergence: k must be positive");
    SupApproxStep st;
    st.k = k;
    std::vector<double> vk(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double x = v.value(i);
      vk[i] = std::copysign(std::min(std::abs(x), static_cast<double>(k)), x);
    }
    st.truncated_norm = luxemburg_norm(v.measures(), vk, At);
    double mk = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) mk += v.measure(i) * vk[i];
    mk /= v.total_measure();
    double m0 = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) m0 += v.measure(i) * (vk[i] - mk);
    st.mean_zero_mean = m0 / v.total_measure();

    // w_k: v_k on cells at distance >= 2/k from the boundary
    std::vector<double> wk(g.cells(), 0.0);
    for (std::size_t i = 0; i < v.size(); ++i)
      if (dist[i] >= 2.0 / k) wk[dom->cells[i]] = vk[i];
    int R = 0;
    const auto S = mollifier_stencil(g.h, 1.0 / k, R);
    const int n = 2 * R + 1;
    std::vector<double> phi(v.size(), 0.0);
    for (std::size_t i = 0; i < v.size(); ++i) {
      const int ix = dom->cells[i] % g.nx, iy = dom->cells[i] / g.nx;
      double s = 0.0;
      for (int oy = -R; oy <= R; ++oy)
        for (int ox = -R; ox <= R; ++ox) {
          const int jx = ix + ox, jy = iy + oy;
          if (jx < 0 || jy < 0 || jx >= g.nx || jy >= g.ny) continue;
          const double w = S[(oy + R) * n + ox + R];
          if (w != 0.0) s += w * wk[g.index(jx, jy)];
        }
      phi[i] = s;
    }
    st.mollified_norm = luxemburg_norm(v.measures(), phi, At);
    if (pair) st.pairing = pairing(phi);
    r.steps.push_back(st);
  }
  return r;
}

}  // namespace orlicz
