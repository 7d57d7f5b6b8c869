#include "orlicz/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "orlicz/quadrature.hpp"

namespace orlicz {

PiecewiseProfile::PiecewiseProfile(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {
  double prev = 0.0;
  for (const auto& p : pieces_) {
    if (!(p.hi > p.lo) || p.lo != prev) throw std::invalid_argument("PiecewiseProfile: pieces must tile (0, L]");
    prev = p.hi;
  }
}

double PiecewiseProfile::operator()(double s) const {
  if (!(s > 0.0)) throw std::domain_error("PiecewiseProfile: argument must be positive");
  auto it = std::lower_bound(pieces_.begin(), pieces_.end(), s, [](const Piece& p, double x) { return p.hi < x; });
  if (it == pieces_.end()) return 0.0;
  return it->a + it->b / s + it->c * std::log(s);
}

void PiecewiseProfile::quadrature(std::vector<double>& w, std::vector<double>& v) const {
  w.clear();
  v.clear();
  const GaussRule& g8 = gauss_legendre(8);
  auto f = [](const Piece& p, double s) { return std::abs(p.a + p.b / s + p.c * std::log(s)); };
  for (const auto& p : pieces_) {
    if (p.lo == 0.0 && p.b == 0.0 && p.c == 0.0) {
      w.push_back(p.hi);
      v.push_back(std::abs(p.a));
      continue;
    }
    if (p.lo == 0.0) {
      if (p.b != 0.0) throw std::domain_error("PiecewiseProfile: 1/s singularity at 0 is not integrable");
      // s = hi e^{-x}, ds = s dx, x in [0, 745]
      for (int k = 0; k < 745; ++k) {
        for (std::size_t q = 0; q < g8.nodes.size(); ++q) {
          const double x = k + 0.5 + 0.5 * g8.nodes[q];
          const double s = p.hi * std::exp(-x);
          if (s == 0.0) continue;
          w.push_back(0.5 * g8.weights[q] * s);
          v.push_back(f(p, s));
        }
      }
      continue;
    }
    // geometric sub-intervals of ratio <= 2
    const int m = std::max(1, static_cast<int>(std::ceil(std::log2(p.hi / p.lo))));
    const double ratio = std::pow(p.hi / p.lo, 1.0 / m);
    double a = p.lo;
    for (int k = 0; k < m; ++k) {
      const double b = k + 1 == m ? p.hi : a * ratio;
      const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
      for (std::size_t q = 0; q < g8.nodes.size(); ++q) {
        const double s = mid + half * g8.nodes[q];
        w.push_back(half * g8.weights[q]);
        v.push_back(f(p, s));
      }
      a = b;
    }
  }
}

PiecewiseProfile hardy_average(const Rearrangement& f) {
  std::vector<PiecewiseProfile::Piece> pieces;
  double F = 0.0, left = 0.0;
  for (std::size_t i = 0; i < f.breaks.size(); ++i) {
    const double right = f.breaks[i];
    if (right <= left) continue;
    const double vi = f.values[i];
    pieces.push_back({left, right, vi, F - vi * left, 0.0});
    F += vi * (right - left);
    left = right;
  }
  return PiecewiseProfile(std::move(pieces));
}

PiecewiseProfile hardy_dual(const Rearrangement& f) {
  std::vector<PiecewiseProfile::Piece> pieces;
  // collect non-degenerate steps first
  std::vector<std::pair<double, double>> steps;  // (right, value)
  double left = 0.0;
  for (std::size_t i = 0; i < f.breaks.size(); ++i) {
    if (f.breaks[i] <= left) continue;
    steps.push_back({f.breaks[i], f.values[i]});
    left = f.breaks[i];
  }
  std::vector<double> tail(steps.size() + 1, 0.0);  // sum over j > i of v_j log(s_j / s_{j-1})
  for (std::size_t i = steps.size(); i-- > 1;) {
    tail[i - 1] = tail[i] + steps[i].second * std::log(steps[i].first / steps[i - 1].first);
  }
  left = 0.0;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto [right, vi] = steps[i];
    // vi log(right/s) + T_i
    pieces.push_back({left, right, vi * std::log(right) + tail[i], 0.0, -vi});
    left = right;
  }
  return PiecewiseProfile(std::move(pieces));
}

double luxemburg_norm(const PiecewiseProfile& g, const YoungFunction& A) {
  std::vector<double> w, v;
  g.quadrature(w, v);
  return luxemburg_norm(w, v, A);
}

double rearrangement_bound_rhs(const Rearrangement& f, double s, double C) {
  if (!(s > 0.0) || s > f.total()) throw std::domain_error("rearrangement_bound_rhs: s outside (0, |Omega|]");
  const double H = f.primitive(s) / s;
  double D = 0.0, left = 0.0;
  for (std::size_t i = 0; i < f.breaks.size(); ++i) {
    const double right = f.breaks[i];
    if (right > left) {
      const double a = std::max(left, s);
      if (right > a) D += f.values[i] * std::log(right / a);
    }
    left = right;
  }
  return C * (H + D);
}

}  // namespace orlicz
