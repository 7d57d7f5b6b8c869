#include "orlicz/bogovskii.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "orlicz/hardy.hpp"
#include "orlicz/norms.hpp"
#include "orlicz/quadrature.hpp"

namespace orlicz {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_angle(double a) {
  while (a <= -kPi) a += 2 * kPi;
  while (a > kPi) a -= 2 * kPi;
  return a;
}

// parameter interval of {x + t d : t >= 0} inside the box, empty if lo >= hi
void slab(Point2 x, Point2 d, double x0, double x1, double y0, double y1, double& lo, double& hi) {
  lo = 0.0;
  hi = std::numeric_limits<double>::infinity();
  auto clip = [&](double p, double dp, double a, double b) {
    if (dp == 0.0) {
      if (p < a || p > b) hi = -1.0;
      return;
    }
    double t1 = (a - p) / dp, t2 = (b - p) / dp;
    if (t1 > t2) std::swap(t1, t2);
    lo = std::max(lo, t1);
    hi = std::min(hi, t2);
  };
  clip(x.x, d.x, x0, x1);
  clip(x.y, d.y, y0, y1);
}

}  // namespace

Mollifier::Mollifier(Ball b) : ball_(b) {
  if (!(b.radius > 0.0)) throw std::invalid_argument("Mollifier: radius must be positive");
  k_ = 5.0 / (kPi * b.radius * b.radius);
}

double Mollifier::operator()(Point2 x) const {
  const Point2 d = x - ball_.center;
  const double q = 1.0 - dot(d, d) / (ball_.radius * ball_.radius);
  if (q <= 0.0) return 0.0;
  const double q2 = q * q;
  return k_ * q2 * q2;
}

StarDomain StarDomain::disk(Point2 center, double radius, Ball ball) {
  if (!(radius > 0.0)) throw std::invalid_argument("StarDomain: disk radius must be positive");
  const Point2 d = ball.center - center;
  if (std::sqrt(dot(d, d)) + ball.radius > radius * (1.0 + 1e-12))
    throw std::invalid_argument("StarDomain: ball is not contained in the disk");
  StarDomain D(ball);
  D.is_disk_ = true;
  D.disk_center_ = center;
  D.disk_radius_ = radius;
  D.lo_ = {center.x - radius, center.y - radius};
  D.hi_ = {center.x + radius, center.y + radius};
  return D;
}

StarDomain StarDomain::polygon(std::vector<Point2> v, Ball ball) {
  if (v.size() < 3) throw std::invalid_argument("StarDomain: polygon needs at least 3 vertices");
  double area2 = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point2 a = v[i], b = v[(i + 1) % v.size()];
    area2 += a.x * b.y - b.x * a.y;
  }
  if (std::abs(area2) < 1e-14) throw std::invalid_argument("StarDomain: degenerate polygon");
  if (area2 < 0) std::reverse(v.begin(), v.end());
  // the polygon's kernel is the intersection of the inner half-planes
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point2 a = v[i], b = v[(i + 1) % v.size()];
    const Point2 t = b - a;
    const double len = std::sqrt(dot(t, t));
    if (len == 0.0) throw std::invalid_argument("StarDomain: repeated polygon vertex");
    const Point2 c = ball.center - a;
    const double dist = (t.x * c.y - t.y * c.x) / len;
    if (dist < ball.radius * (1.0 - 1e-12))
      throw std::invalid_argument("StarDomain: polygon is not star-shaped with respect to the ball");
  }
  StarDomain D(ball);
  D.vertices_ = std::move(v);
  D.lo_ = D.hi_ = D.vertices_.front();
  for (const auto& p : D.vertices_) {
    D.lo_ = {std::min(D.lo_.x, p.x), std::min(D.lo_.y, p.y)};
    D.hi_ = {std::max(D.hi_.x, p.x), std::max(D.hi_.y, p.y)};
  }
  return D;
}

StarDomain StarDomain::rectangle(Point2 lo, Point2 hi, Ball ball) {
  return polygon({lo, {hi.x, lo.y}, hi, {lo.x, hi.y}}, ball);
}

bool StarDomain::contains(Point2 x) const {
  if (is_disk_) {
    const Point2 d = x - disk_center_;
    return dot(d, d) < disk_radius_ * disk_radius_;
  }
  // the polygon is star-shaped, hence every edge test can use the inner side
  // only when convex; use crossing parity for the general case
  bool in = false;
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point2 a = vertices_[i], b = vertices_[j];
    if ((a.y > x.y) != (b.y > x.y)) {
      const double xc = a.x + (x.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (x.x < xc) in = !in;
    }
  }
  return in;
}

double StarDomain::area() const {
  if (is_disk_) return kPi * disk_radius_ * disk_radius_;
  double a2 = 0.0;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    const Point2 a = vertices_[i], b = vertices_[(i + 1) % vertices_.size()];
    a2 += a.x * b.y - b.x * a.y;
  }
  return 0.5 * std::abs(a2);
}

std::shared_ptr<const CellDomain> grid_domain(const StarDomain& D, int n) {
  if (n < 2) throw std::invalid_argument("grid_domain: need at least 2 cells across");
  const Point2 lo = D.box_lo(), hi = D.box_hi();
  const double W = std::max(hi.x - lo.x, hi.y - lo.y);
  CartesianGrid g;
  g.h = W / n;
  g.origin = {lo.x - 2 * g.h, lo.y - 2 * g.h};
  g.nx = static_cast<int>(std::ceil((hi.x - lo.x) / g.h - 1e-9)) + 4;
  g.ny = static_cast<int>(std::ceil((hi.y - lo.y) / g.h - 1e-9)) + 4;
  return CellDomain::from_predicate(g, [&](Point2 p) { return D.contains(p); });
}

BogovskiiOperator::BogovskiiOperator(const SampledField& f, const StarDomain& D, QuadratureSpec q)
    : f_(f), dom_(f.domain()), omega_(D.mollifier()), q_(q) {
  if (!dom_) throw std::invalid_argument("BogovskiiOperator: f must be sampled on a cell grid");
  if (f.components() != 1) throw std::invalid_argument("BogovskiiOperator: f must be scalar");
  if (q.ray_nodes < 1 || q.polar_refine < 1 || q.near_radius < 0 || q.face_nodes < 1)
    throw std::invalid_argument("BogovskiiOperator: bad quadrature spec");
  removed_mean_ = f.mean();
  std::vector<double> v(f.values().begin(), f.values().end());
  for (double& x : v) x -= removed_mean_;
  f_ = f.with_values(1, std::move(v));
  const GaussRule& g = gauss_legendre(q.ray_nodes);
  gl_x_ = g.nodes;
  gl_w_ = g.weights;
  const GaussRule& t = gauss_legendre(2 * q.polar_refine);
  th_x_ = t.nodes;
  th_w_ = t.weights;
}

double BogovskiiOperator::ray_integral(Point2 y, Point2 e, double from) const {
  const Ball& B = omega_.ball();
  const Point2 w = y - B.center;
  const double r2 = B.radius * B.radius;
  const double b = dot(w, e);
  const double disc = b * b - (dot(w, w) - r2);
  if (disc <= 0.0) return 0.0;
  const double sq = std::sqrt(disc);
  const double z1 = std::max(-b - sq, from), z2 = -b + sq;
  if (z2 <= z1) return 0.0;
  const double mid = 0.5 * (z1 + z2), half = 0.5 * (z2 - z1);
  double s = 0.0;
  for (std::size_t k = 0; k < gl_x_.size(); ++k) {
    const double z = mid + half * gl_x_[k];
    const double v = z + b;
    const double qv = (disc - v * v) / r2;
    if (qv <= 0.0) continue;
    const double q2 = qv * qv;
    s += gl_w_[k] * q2 * q2 * z;
  }
  return omega_.scale() * half * s;
}

void BogovskiiOperator::ray_moments(Point2 x, Point2 e, double& m0, double& m1) const {
  m0 = m1 = 0.0;
  const Ball& B = omega_.ball();
  const Point2 w = x - B.center;
  const double r2 = B.radius * B.radius;
  const double b = dot(w, e);
  const double disc = b * b - (dot(w, w) - r2);
  if (disc <= 0.0) return;
  const double sq = std::sqrt(disc);
  const double z1 = std::max(-b - sq, 0.0), z2 = -b + sq;
  if (z2 <= z1) return;
  const double mid = 0.5 * (z1 + z2), half = 0.5 * (z2 - z1);
  for (std::size_t k = 0; k < gl_x_.size(); ++k) {
    const double z = mid + half * gl_x_[k];
    const double v = z + b;
    const double qv = (disc - v * v) / r2;
    if (qv <= 0.0) continue;
    const double q2 = qv * qv;
    m0 += gl_w_[k] * q2 * q2;
    m1 += gl_w_[k] * q2 * q2 * z;
  }
  m0 *= omega_.scale() * half;
  m1 *= omega_.scale() * half;
}

// int_cell K(x, y) dy in polar coordinates around x: y = x + rho d(phi), and the
// radial integral is done in closed form,
//   int_cell K = int_phi -d [M1 (R_out - R_in) + M0 (R_out^2 - R_in^2)/2] dphi,
// with M0, M1 the moments of omega along the ray from x in direction -d.
Vec2 BogovskiiOperator::polar_cell(Point2 x, int ix, int iy) const {
  const auto& g = dom_->grid;
  const double x0 = g.origin.x + ix * g.h, x1 = x0 + g.h;
  const double y0 = g.origin.y + iy * g.h, y1 = y0 + g.h;
  const Point2 corners[4] = {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
  const bool inside = x.x >= x0 && x.x <= x1 && x.y >= y0 && x.y <= y1;
  std::vector<double> cuts;
  cuts.reserve(5);
  if (inside) {
    for (const auto& c : corners) cuts.push_back(std::atan2(c.y - x.y, c.x - x.x));
    std::sort(cuts.begin(), cuts.end());
    cuts.push_back(cuts.front() + 2 * kPi);
  } else {
    const Point2 mc = {0.5 * (x0 + x1) - x.x, 0.5 * (y0 + y1) - x.y};
    const double base = std::atan2(mc.y, mc.x);
    for (const auto& c : corners) cuts.push_back(base + wrap_angle(std::atan2(c.y - x.y, c.x - x.x) - base));
    std::sort(cuts.begin(), cuts.end());
  }
  Vec2 acc;
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const double a = cuts[s], b = cuts[s + 1];
    if (b - a < 1e-15) continue;
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (std::size_t k = 0; k < th_x_.size(); ++k) {
      const double phi = mid + half * th_x_[k];
      const Point2 d = {std::cos(phi), std::sin(phi)};
      double rin, rout;
      slab(x, d, x0, x1, y0, y1, rin, rout);
      if (!(rout > rin)) continue;
      double m0, m1;
      ray_moments(x, Point2{-d.x, -d.y}, m0, m1);
      const double val = m1 * (rout - rin) + 0.5 * m0 * (rout * rout - rin * rin);
      const double wgt = half * th_w_[k] * val;
      acc.x -= wgt * d.x;
      acc.y -= wgt * d.y;
    }
  }
  return acc;
}

BogovskiiOperator::Value BogovskiiOperator::apply(Point2 x) const {
  const auto& g = dom_->grid;
  Value out;
  double gx = (x.x - g.origin.x) / g.h, gy = (x.y - g.origin.y) / g.h;
  constexpr double eps = 1e-12;
  if (std::abs(gx - std::round(gx)) < eps) {
    x.x += 1e-9 * g.h;
    out.shifted = true;
    gx = (x.x - g.origin.x) / g.h;
  }
  if (std::abs(gy - std::round(gy)) < eps) {
    x.y += 1e-9 * g.h;
    out.shifted = true;
    gy = (x.y - g.origin.y) / g.h;
  }
  const int ix = static_cast<int>(std::floor(gx)), iy = static_cast<int>(std::floor(gy));
  const double cell = g.h * g.h;
  const int R = q_.near_radius;
  double ux = 0.0, uy = 0.0;
  const auto& cells = dom_->cells;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const double fv = f_.value(c);
    if (fv == 0.0) continue;
    const int cx = cells[c] % g.nx, cy = cells[c] / g.nx;
    if (std::abs(cx - ix) <= R && std::abs(cy - iy) <= R) {
      const Vec2 k = polar_cell(x, cx, cy);
      ux += fv * k.x;
      uy += fv * k.y;
      continue;
    }
    const Point2 y = f_.centroid(c);
    const double dx = x.x - y.x, dy = x.y - y.y;
    const double rho = std::sqrt(dx * dx + dy * dy);
    const Point2 e = {dx / rho, dy / rho};
    const double I = ray_integral(y, e, rho);
    if (I == 0.0) continue;
    const double s = fv * cell * I / rho;
    ux += s * e.x;
    uy += s * e.y;
  }
  out.u = {ux, uy};
  return out;
}

namespace {

template <class F>
void parallel_for(std::size_t n, int jobs, F&& body) {
  const std::size_t t = static_cast<std::size_t>(std::max(1, jobs));
  if (t == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  for (std::size_t k = 0; k < t; ++k)
    pool.emplace_back([&, k] {
      for (std::size_t i = k; i < n; i += t) body(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace

// The gradient and divergence are staggered centered differences of face-averaged
// velocities, so div u on a cell is the Gauss-rule flux through its boundary.
BogovskiiField assemble_bogovskii_field(const std::vector<const BogovskiiOperator*>& ops, const SampledField& f,
                                        int jobs) {
  if (ops.empty()) throw std::invalid_argument("assemble_bogovskii_field: no operators");
  const int nf = ops.front()->quadrature().face_nodes;
  const GaussRule& fg = gauss_legendre(nf);
  const auto dom = f.domain();
  if (!dom) throw std::invalid_argument("assemble_bogovskii_field: f must be sampled on a cell grid");
  const auto& g = dom->grid;
  std::vector<int> ring;
  for (int idx = 0; idx < g.cells(); ++idx) {
    if (dom->lookup[idx] >= 0) continue;
    const int ix = idx % g.nx, iy = idx / g.nx;
    bool near = false;
    for (int dy = -1; dy <= 1 && !near; ++dy)
      for (int dx = -1; dx <= 1 && !near; ++dx) near = dom->at(ix + dx, iy + dy) >= 0;
    if (near) ring.push_back(idx);
  }
  // faces: vertical (ix in [0, nx], iy) and horizontal (ix, iy in [0, ny])
  const int nvert = (g.nx + 1) * g.ny;
  std::vector<int> vface(nvert, -1), hface(g.nx * (g.ny + 1), -1);
  std::vector<Point2> pts;
  for (int idx : dom->cells) pts.push_back(g.center(idx % g.nx, idx / g.nx));
  const std::size_t nd = pts.size();
  for (int idx : ring) pts.push_back(g.center(idx % g.nx, idx / g.nx));
  const std::size_t nr = ring.size();
  // each face stores the first of its nf Gauss points
  for (int idx : dom->cells) {
    const int ix = idx % g.nx, iy = idx / g.nx;
    for (int k = 0; k < 2; ++k) {
      int& v = vface[iy * (g.nx + 1) + ix + k];
      if (v < 0) {
        v = static_cast<int>(pts.size());
        for (int q = 0; q < nf; ++q)
          pts.push_back({g.origin.x + (ix + k) * g.h, g.origin.y + (iy + 0.5 + 0.5 * fg.nodes[q]) * g.h});
      }
      int& h = hface[(iy + k) * g.nx + ix];
      if (h < 0) {
        h = static_cast<int>(pts.size());
        for (int q = 0; q < nf; ++q)
          pts.push_back({g.origin.x + (ix + 0.5 + 0.5 * fg.nodes[q]) * g.h, g.origin.y + (iy + k) * g.h});
      }
    }
  }
  const std::size_t np = pts.size(), nops = ops.size();
  std::vector<Vec2> opvals(nops * np), vals(np);
  std::vector<char> shifted(np, 0);
  parallel_for(np, jobs, [&](std::size_t i) {
    Vec2 s;
    for (std::size_t k = 0; k < nops; ++k) {
      auto v = ops[k]->apply(pts[i]);
      opvals[k * np + i] = v.u;
      s.x += v.u.x;
      s.y += v.u.y;
      shifted[i] |= v.shifted;
    }
    vals[i] = s;
  });
  // face average of a velocity table
  auto face = [&](const Vec2* tab, int first) {
    Vec2 a;
    for (int q = 0; q < nf; ++q) {
      a.x += 0.5 * fg.weights[q] * tab[first + q].x;
      a.y += 0.5 * fg.weights[q] * tab[first + q].y;
    }
    return a;
  };
  auto cell_div = [&](const Vec2* tab, int ix, int iy) {
    const Vec2 w = face(tab, vface[iy * (g.nx + 1) + ix]), e = face(tab, vface[iy * (g.nx + 1) + ix + 1]);
    const Vec2 s = face(tab, hface[iy * g.nx + ix]), n = face(tab, hface[(iy + 1) * g.nx + ix]);
    return (e.x - w.x + n.y - s.y) / g.h;
  };

  BogovskiiField out;
  std::vector<double> u(2 * nd), grad(4 * nd), div(nd);
  const double fmean = f.mean();
  double res2 = 0.0, f2 = 0.0, umax = 0.0, ringmax = 0.0;
  for (std::size_t i = 0; i < nd; ++i) {
    const int idx = dom->cells[i], ix = idx % g.nx, iy = idx / g.nx;
    u[2 * i] = vals[i].x;
    u[2 * i + 1] = vals[i].y;
    umax = std::max(umax, std::hypot(vals[i].x, vals[i].y));
    const Vec2 w = face(vals.data(), vface[iy * (g.nx + 1) + ix]);
    const Vec2 e = face(vals.data(), vface[iy * (g.nx + 1) + ix + 1]);
    const Vec2 s = face(vals.data(), hface[iy * g.nx + ix]);
    const Vec2 n = face(vals.data(), hface[(iy + 1) * g.nx + ix]);
    const double inv = 1.0 / g.h;
    grad[4 * i + 0] = (e.x - w.x) * inv;
    grad[4 * i + 1] = (n.x - s.x) * inv;
    grad[4 * i + 2] = (e.y - w.y) * inv;
    grad[4 * i + 3] = (n.y - s.y) * inv;
    div[i] = grad[4 * i + 0] + grad[4 * i + 3];
    const double fv = f.value(i) - fmean;
    res2 += (div[i] - fv) * (div[i] - fv);
    f2 += fv * fv;
  }
  for (std::size_t i = 0; i < nr; ++i) {
    ringmax = std::max(ringmax, std::hypot(vals[nd + i].x, vals[nd + i].y));
    out.ring_points.push_back(pts[nd + i]);
    out.ring_values.push_back(vals[nd + i]);
  }
  for (char c : shifted) out.shifted_points += c;
  // each operator against its own (mean-zero) source
  for (std::size_t k = 0; k < nops; ++k) {
    const SampledField& src = ops[k]->source();
    const auto& sd = src.domain();
    if (sd->grid.nx != g.nx || sd->grid.ny != g.ny || sd->grid.h != g.h)
      throw std::invalid_argument("assemble_bogovskii_field: operators must share the grid of f");
    double r2 = 0.0, s2 = 0.0;
    for (std::size_t c = 0; c < src.size(); ++c) {
      const int idx = sd->cells[c];
      if (dom->lookup[idx] < 0) throw std::invalid_argument("assemble_bogovskii_field: operator cell outside f's domain");
      const double d = cell_div(opvals.data() + k * np, idx % g.nx, idx / g.nx) - src.value(c);
      r2 += d * d;
      s2 += src.value(c) * src.value(c);
    }
    out.part_residuals.push_back(s2 > 0.0 ? std::sqrt(r2 / s2) : std::sqrt(r2));
  }
  out.u = f.with_values(2, std::move(u));
  out.gradient = f.with_values(4, std::move(grad));
  out.divergence = f.with_values(1, std::move(div));
  out.divergence_residual = f2 > 0.0 ? std::sqrt(res2 / f2) : std::sqrt(res2);
  out.boundary_ratio = umax > 0.0 ? ringmax / umax : 0.0;
  out.removed_mean = fmean;
  return out;
}

BogovskiiField bogovskii_field(const SampledField& f, const StarDomain& D, const QuadratureSpec& q, int jobs) {
  BogovskiiOperator op(f, D, q);
  return assemble_bogovskii_field({&op}, f, jobs);
}

}  // namespace orlicz

namespace orlicz {

namespace {

SampledField centered(const SampledField& f) {
  const double m = f.mean();
  std::vector<double> v(f.values().begin(), f.values().end());
  for (double& x : v) x -= m;
  return f.with_values(1, std::move(v));
}

}  // namespace

double norm_constant(const SampledField& f, const SampledField& gradient, const YoungFunction& A,
                     const YoungFunction& B) {
  const double nf = luxemburg_norm(centered(f), A);
  const double ng = luxemburg_norm(gradient, B);
  if (nf == 0.0) return ng == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return ng / nf;
}

double modular_constant(const SampledField& f, const SampledField& gradient, const YoungFunction& A,
                        const YoungFunction& B) {
  const double G = modular(gradient, B);
  if (std::isinf(G)) return G;
  if (G == 0.0) return 0.0;
  const auto fc = centered(f);
  const auto m = fc.moduli();
  if (std::all_of(m.begin(), m.end(), [](double x) { return x == 0.0; }))
    return std::numeric_limits<double>::infinity();
  // M(C) = int A(C|f|) is non-decreasing; bracket then bisect in log C
  auto M = [&](double C) { return modular(fc.measures(), m, A, 1.0 / C); };
  double lo = 1.0, hi = 1.0;
  while (M(hi) < G) {
    hi *= 2.0;
    if (hi > 1e300) return std::numeric_limits<double>::infinity();
  }
  while (M(lo) >= G) {
    lo *= 0.5;
    if (lo < 1e-300) return 0.0;
  }
  while (hi / lo - 1.0 > 1e-12) {
    const double mid = std::sqrt(lo * hi);
    if (mid <= lo || mid >= hi) break;
    if (M(mid) >= G) hi = mid;
    else lo = mid;
  }
  return hi;
}

std::vector<double> rearrangement_samples(double measure, int count) {
  if (!(measure > 0.0) || count < 2) throw std::invalid_argument("rearrangement_samples: bad arguments");
  std::vector<double> s(count);
  for (int k = 0; k < count; ++k) s[k] = measure * std::pow(1e-4, 1.0 - static_cast<double>(k) / count);
  return s;
}

double calibrate_rearrangement_constant(const SampledField& f, const SampledField& gradient, int count) {
  const auto fs = decreasing_rearrangement(centered(f));
  const auto gs = decreasing_rearrangement(gradient);
  double C = 0.0;
  for (double s : rearrangement_samples(fs.total(), count)) {
    const double r = rearrangement_bound_rhs(fs, s, 1.0);
    const double l = gs(s);
    if (l == 0.0) continue;
    if (r == 0.0) return std::numeric_limits<double>::infinity();
    C = std::max(C, l / r);
  }
  return C;
}

RearrangementCheck check_rearrangement_estimate(const SampledField& f, const SampledField& gradient, double C,
                                                int count) {
  const auto fs = decreasing_rearrangement(centered(f));
  const auto gs = decreasing_rearrangement(gradient);
  RearrangementCheck r;
  r.s = rearrangement_samples(fs.total(), count);
  for (double s : r.s) {
    const double l = gs(s), h = rearrangement_bound_rhs(fs, s, C);
    r.lhs.push_back(l);
    r.rhs.push_back(h);
    if (l > h) r.holds = false;
    if (l > 0.0) r.worst_ratio = std::max(r.worst_ratio, h > 0.0 ? l / h : std::numeric_limits<double>::infinity());
  }
  return r;
}

}  // namespace orlicz
