#include "orlicz/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace orlicz {

DomainDecomposition::DomainDecomposition(std::vector<StarDomain> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw std::invalid_argument("DomainDecomposition: no parts");
  lo_ = parts_.front().box_lo();
  hi_ = parts_.front().box_hi();
  for (const auto& p : parts_) {
    lo_ = {std::min(lo_.x, p.box_lo().x), std::min(lo_.y, p.box_lo().y)};
    hi_ = {std::max(hi_.x, p.box_hi().x), std::max(hi_.y, p.box_hi().y)};
  }
}

bool DomainDecomposition::contains(Point2 x) const {
  return std::any_of(parts_.begin(), parts_.end(), [&](const StarDomain& p) { return p.contains(x); });
}

std::shared_ptr<const CellDomain> grid_domain(const DomainDecomposition& dec, int n) {
  if (n < 2) throw std::invalid_argument("grid_domain: need at least 2 cells across");
  const Point2 lo = dec.box_lo(), hi = dec.box_hi();
  CartesianGrid g;
  g.h = std::max(hi.x - lo.x, hi.y - lo.y) / n;
  g.origin = {lo.x - 2 * g.h, lo.y - 2 * g.h};
  g.nx = static_cast<int>(std::ceil((hi.x - lo.x) / g.h - 1e-9)) + 4;
  g.ny = static_cast<int>(std::ceil((hi.y - lo.y) / g.h - 1e-9)) + 4;
  return CellDomain::from_predicate(g, [&](Point2 p) { return dec.contains(p); });
}

std::shared_ptr<const CellDomain> part_domain(const CellDomain& dom, const StarDomain& part) {
  auto out = std::make_shared<CellDomain>();
  out->grid = dom.grid;
  out->lookup.assign(dom.grid.cells(), -1);
  for (int idx : dom.cells) {
    if (!part.contains(dom.grid.center(idx % dom.grid.nx, idx / dom.grid.nx))) continue;
    out->lookup[idx] = static_cast<int>(out->cells.size());
    out->cells.push_back(idx);
  }
  return out;
}

SplitResult split_function(const SampledField& f, const DomainDecomposition& dec) {
  if (f.components() != 1) throw std::invalid_argument("split_function: f must be scalar");
  const std::size_t n = f.size(), N = dec.size();
  SplitResult r;
  r.removed_mean = f.mean();

  // membership of every sample in every part
  std::vector<std::vector<char>> in(N, std::vector<char>(n, 0));
  for (std::size_t c = 0; c < n; ++c) {
    bool any = false;
    for (std::size_t k = 0; k < N; ++k) {
      in[k][c] = dec.parts()[k].contains(f.centroid(c));
      any = any || in[k][c];
    }
    if (!any) throw std::invalid_argument("split_function: sample " + std::to_string(c) + " lies in no part");
  }
  // tail[k][c]: c lies in a later part
  std::vector<std::vector<char>> tail(N, std::vector<char>(n, 0));
  for (std::size_t k = N - 1; k-- > 0;)
    for (std::size_t c = 0; c < n; ++c) tail[k][c] = tail[k + 1][c] || in[k + 1][c];

  std::vector<double> g(n);
  for (std::size_t c = 0; c < n; ++c) g[c] = f.value(c) - r.removed_mean;

  double prod = 1.0;
  for (std::size_t k = 0; k < N; ++k) {
    double om = 0.0, gm = 0.0, ov = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
      if (in[k][c]) om += f.measure(c);
      if (tail[k][c]) gm += f.measure(c);
      if (in[k][c] && tail[k][c]) ov += f.measure(c);
    }
    r.part_measure.push_back(om);
    r.tail_measure.push_back(gm);
    r.overlap.push_back(ov);
    std::vector<double> fk(n, 0.0);
    if (k + 1 == N) {
      fk = g;
      r.bound.push_back(prod);
      r.parts.push_back(f.with_values(1, std::move(fk)));
      break;
    }
    if (!(ov > 0.0))
      throw std::invalid_argument("split_function: part " + std::to_string(k) +
                                  " does not overlap the later parts; reorder the parts");
    double int_part = 0.0, int_rest = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
      if (in[k][c]) int_part += g[c] * f.measure(c);
      else if (tail[k][c]) int_rest += g[c] * f.measure(c);
    }
    std::vector<double> next(n, 0.0);
    for (std::size_t c = 0; c < n; ++c) {
      const bool both = in[k][c] && tail[k][c];
      if (in[k][c]) fk[c] = both ? g[c] - int_part / ov : g[c];
      if (tail[k][c]) next[c] = both ? -int_rest / ov : g[c];
    }
    r.bound.push_back((1.0 + 4.0 * om / ov) * prod);
    prod *= 1.0 + 4.0 * std::max(1.0, gm / ov);
    r.parts.push_back(f.with_values(1, std::move(fk)));
    g = std::move(next);
  }
  return r;
}

BogovskiiField bogovskii_general(const SampledField& f, const DomainDecomposition& dec, const QuadratureSpec& q,
                                 int jobs) {
  const auto dom = f.domain();
  if (!dom) throw std::invalid_argument("bogovskii_general: f must be sampled on a cell grid");
  const SplitResult split = split_function(f, dec);
  std::vector<BogovskiiOperator> ops;
  ops.reserve(dec.size());
  for (std::size_t k = 0; k < dec.size(); ++k) {
    const auto pd = part_domain(*dom, dec.parts()[k]);
    std::vector<double> v;
    v.reserve(pd->cells.size());
    for (int idx : pd->cells) v.push_back(split.parts[k].value(static_cast<std::size_t>(dom->lookup[idx])));
    ops.emplace_back(SampledField(pd, 1, std::move(v)), dec.parts()[k], q);
  }
  std::vector<const BogovskiiOperator*> ptrs;
  for (const auto& op : ops) ptrs.push_back(&op);
  return assemble_bogovskii_field(ptrs, f, jobs);
}

}  // namespace orlicz
