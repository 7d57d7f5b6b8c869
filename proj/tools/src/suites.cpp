#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include <unistd.h>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "builders.hpp"
#include "experiments.hpp"
#include "expressions.hpp"
#include "orlicz/hardy.hpp"
#include "orlicz/infsup.hpp"
#include "orlicz/negative_norm.hpp"
#include "orlicz/norms.hpp"
#include "orlicz/pressure.hpp"

namespace orlicz::cli {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string range_text(double lo, double hi) { return "[" + fmt_g(lo) + ", " + fmt_g(hi) + "]"; }

// spread of a positive sample around its median
struct Band {
  double median = 0.0, lo = 0.0, hi = 0.0;
  bool within(double tol) const { return hi <= (1.0 + tol) * median && lo >= (1.0 - tol) * median; }
  std::string text() const {
    return "median " + fmt_g(median) + ", range " + range_text(lo, hi) + " (" + fmt_g(100.0 * (hi / median - 1.0)) +
           "%, " + fmt_g(100.0 * (lo / median - 1.0)) + "%)";
  }
};

Band band(const std::vector<double>& v) {
  return {median(v), *std::min_element(v.begin(), v.end()), *std::max_element(v.begin(), v.end())};
}

// Independent closed forms for the Luxemburg norm of c chi_E: c / A^-1(1/|E|).
double inverse_oracle(const YoungFunction& A, double r) {
  const auto& p = A.params();
  switch (A.kind()) {
    case YoungKind::power:
      return std::pow(r / p[1], 1.0 / p[0]);
    default:
      break;
  }
  auto value = [&](double s) {
    switch (A.kind()) {
      case YoungKind::zygmund:
        return std::pow(s, p[0]) * std::pow(std::log(1.0 + s), p[1]);
      case YoungKind::exponential:
        return s * (std::exp(std::pow(s, p[0])) - 1.0);
      default:
        throw std::logic_error("inverse_oracle: unsupported family");
    }
  };
  double lo = 1e-12, hi = 1.0;
  while (value(hi) < r) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (value(mid) < r ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

SampledField cells_field(const std::vector<double>& measures, const std::vector<double>& values) {
  std::vector<Point2> c(measures.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = {static_cast<double>(i), 0.0};
  return SampledField(std::move(c), measures, 1, values);
}

}  // namespace

Report run_young_suite(const Params& p, const RunContext& ctx) {
  Report r;
  const auto families =
      p.strings("families", {"power:1.5", "power:3", "zygmund:1:2", "exp:0.5", "exp:1", "eyring", "linf"});
  const int points = static_cast<int>(p.integer("points", 100, 2, 100000));
  std::mt19937_64 rng(static_cast<std::uint64_t>(p.integer("seed", 11, 0, 1LL << 62)));
  std::uniform_real_distribution<double> logu(std::log(1e-3), std::log(1e3));
  Table t{"families", {"young", "involution_gap", "sandwich_min", "sandwich_max", "young_inequality_violations"}, {}};
  for (const auto& spec : families) {
    const auto A = young_arg(resolve(spec, ctx), "--families");
    const auto At = conjugate(A);
    const double gap = involution_gap(A, points);
    const auto [lo, hi] = sandwich_range(A);
    // r s <= A(r) + conj(A)(s) at 10^4 random pairs
    int violations = 0;
    for (int i = 0; i < 10000; ++i) {
      const double a = std::exp(logu(rng)), b = std::exp(logu(rng));
      const double rhs = A(a) + At(b);
      if (a * b > rhs * (1.0 + 1e-9)) ++violations;
    }
    t.rows.push_back({A.name(), num(gap), num(lo), num(hi), violations});
    r.check("involution " + A.name(), gap <= 1e-6, "max relative gap " + fmt_g(gap) + " at " +
                                                        std::to_string(points) + " points");
    r.check("sandwich " + A.name(), lo >= 1.0 - 1e-9 && hi <= 2.0 + 1e-9, "ratio range " + range_text(lo, hi));
    r.check("young inequality " + A.name(), violations == 0, std::to_string(violations) + " violations");
  }
  r.results["families"] = families;
  r.results["points"] = points;
  r.tables.push_back(std::move(t));
  return r;
}

Report run_balance_matrix(const Params&, const RunContext&) {
  Report r;
  struct Case {
    YoungFunction A, B;
    bool admissible;
    bool needs_t0;
  };
  using Y = YoungFunction;
  std::vector<Case> cases;
  for (double q : {1.5, 2.0, 4.0}) cases.push_back({Y::power(q), Y::power(q), true, false});
  for (double a : {1.0, 2.0}) cases.push_back({Y::zygmund(1.0, a), Y::zygmund(1.0, a - 1.0), true, true});
  for (double b : {0.5, 1.0}) cases.push_back({Y::exponential(b), Y::exponential(b / (b + 1.0)), true, false});
  cases.push_back({Y::power(1.0), Y::power(1.0), false, false});
  cases.push_back({Y::linear_cap(1.0), Y::linear_cap(1.0), false, false});

  Table t{"matrix", {"A", "B", "c_11", "c_12", "t0", "global", "admissible", "expected"}, {}};
  for (const auto& c : cases) {
    const auto b = check_balance(c.A, c.B);
    const std::string label = c.A.name() + " / " + c.B.name();
    t.rows.push_back({c.A.name(), c.B.name(), num(b.c_11), num(b.c_12), num(b.t0), b.global, b.admissible(),
                      c.admissible});
    const std::string detail = "c_11 " + fmt_g(b.c_11) + ", c_12 " + fmt_g(b.c_12) + ", t0 " + fmt_g(b.t0);
    r.check(label + (c.admissible ? " admissible" : " inadmissible"), b.admissible() == c.admissible, detail);
    if (c.needs_t0) r.check(label + " finite t0", std::isfinite(b.t0), detail);
  }
  r.results["cases"] = cases.size();
  r.tables.push_back(std::move(t));
  return r;
}

Report run_norm_suite(const Params& p, const RunContext&) {
  Report r;
  const int nfields = static_cast<int>(p.integer("fields", 100, 1, 100000));
  const int nhardy = static_cast<int>(p.integer("hardy_inputs", 200, 1, 100000));
  std::mt19937_64 rng(static_cast<std::uint64_t>(p.integer("seed", 7, 0, 1LL << 62)));
  const std::vector<YoungFunction> youngs = {YoungFunction::power(2), YoungFunction::power(3),
                                             YoungFunction::zygmund(1, 1), YoungFunction::exponential(1)};

  // rearrangement invariance on random cell fields with ties, zeros and heavy tails
  std::uniform_int_distribution<int> ncell(5, 400);
  std::uniform_real_distribution<double> meas(0.05, 1.0), unit(0.0, 1.0);
  std::normal_distribution<double> normal;
  double worst = 0.0;
  for (int f = 0; f < nfields; ++f) {
    const int n = ncell(rng);
    const double total = 0.5 + 2.0 * unit(rng);
    std::vector<double> m(n), v(n);
    double msum = 0.0;
    for (int i = 0; i < n; ++i) msum += (m[i] = meas(rng));
    for (int i = 0; i < n; ++i) {
      m[i] *= total / msum;
      const double x = unit(rng);
      if (x < 0.1) v[i] = 0.0;
      else if (x < 0.2) v[i] = 1.5;  // ties
      else if (x < 0.3) v[i] = std::exp(3.0 * normal(rng));
      else v[i] = normal(rng);
    }
    const auto u = cells_field(m, v);
    const auto rear = decreasing_rearrangement(u);
    for (const auto& A : youngs) worst = std::max(worst, relative_gap(luxemburg_norm(u, A), luxemburg_norm(rear, A)));
  }
  r.results["rearrangement_max_gap"] = num(worst);
  r.check("norm of u equals norm of u* (" + std::to_string(nfields) + " fields x 4 Young functions)", worst <= 1e-10,
          "max relative gap " + fmt_g(worst));

  // c chi_E with |Omega| = 1 made of 100 cells
  Table ct{"indicator", {"young", "c", "measure_E", "norm", "closed_form", "relative_gap"}, {}};
  double worst_cf = 0.0;
  for (const auto& A : youngs)
    for (double c : {0.5, 3.0, 20.0})
      for (int cells : {5, 30, 80}) {
        std::vector<double> m(100, 0.01), v(100, 0.0);
        for (int i = 0; i < cells; ++i) v[(7 * i) % 100] = c;
        const double e = 0.01 * cells;
        const double got = luxemburg_norm(cells_field(m, v), A);
        const double want = c / inverse_oracle(A, 1.0 / e);
        const double gap = relative_gap(want, got);
        worst_cf = std::max(worst_cf, gap);
        ct.rows.push_back({A.name(), num(c), num(e), num(got), num(want), num(gap)});
      }
  r.results["indicator_max_gap"] = num(worst_cf);
  r.check("norm of c chi_E matches c / A^-1(1/|E|)", worst_cf <= 1e-8, "max relative gap " + fmt_g(worst_cf));

  // Hardy averaging on non-increasing step functions, p = 2
  const auto P2 = YoungFunction::power(2);
  std::uniform_int_distribution<int> nsteps(1, 40);
  std::exponential_distribution<double> expo(1.0);
  double hardy_max = 0.0, dual_max = 0.0;
  for (int k = 0; k < nhardy; ++k) {
    const int n = nsteps(rng);
    Rearrangement f;
    f.breaks.resize(n);
    f.values.resize(n);
    for (int i = 0; i < n; ++i) {
      f.breaks[i] = unit(rng);
      f.values[i] = k % 3 == 0 ? std::exp(4.0 * normal(rng)) : expo(rng);
    }
    std::sort(f.breaks.begin(), f.breaks.end());
    f.breaks.back() = 1.0;
    for (int i = 1; i < n; ++i)
      if (!(f.breaks[i] > f.breaks[i - 1])) f.breaks[i] = f.breaks[i - 1] + 1e-9;
    std::sort(f.values.begin(), f.values.end(), std::greater<>());
    const double fn = luxemburg_norm(f, P2);
    hardy_max = std::max(hardy_max, luxemburg_norm(hardy_average(f), P2) / fn);
    dual_max = std::max(dual_max, luxemburg_norm(hardy_dual(f), P2) / fn);
  }
  r.results["hardy_average_max_ratio"] = num(hardy_max);
  r.results["hardy_dual_max_ratio"] = num(dual_max);
  r.check("Hardy average norm <= 2.01 for p = 2 (" + std::to_string(nhardy) + " inputs)", hardy_max <= 2.01,
          "max ratio " + fmt_g(hardy_max));
  r.tables.push_back(std::move(ct));
  return r;
}

Report run_bogovskii_suite(const Params& p, const RunContext& ctx) {
  Report r;
  const auto grids = p.integers("grids", {64, 128}, 8, 512);
  const int cgrid = static_cast<int>(p.integer("constant_grid", 64, 8, 512));
  const int samples = static_cast<int>(p.integer("samples", 5, 2, 100));
  const int held = static_cast<int>(p.integer("held_out", 3, 1, 100));
  const auto q = quad_arg(p);

  // residual on the unit disk for f = |y| - 2/3
  Table rt{"residual", {"grid", "cells", "div_residual", "boundary_ratio"}, {}};
  SampledField last_u;
  for (int n : grids) {
    const auto s = solve_bogovskii("disk", "radial", n, q, ctx.jobs, ctx);
    const double res = s.field.divergence_residual;
    rt.rows.push_back({n, s.f.size(), num(res), num(s.field.boundary_ratio)});
    last_u = s.field.u;
    if (n == 64) r.check("residual < 5% at 64^2", res < 0.05, fmt_g(100.0 * res) + "%");
    if (n == 128) r.check("residual < 2.5% at 128^2", res < 0.025, fmt_g(100.0 * res) + "%");
  }

  // constants over random mean-zero data; the same solutions train the rearrangement constant
  const std::vector<std::pair<YoungFunction, YoungFunction>> pairs = {
      {YoungFunction::power(2), YoungFunction::power(2)}, {YoungFunction::zygmund(1, 1), YoungFunction::power(1)}};
  Table kt{"constants", {"f", "pair", "grad_norm_C", "modular_C"}, {}};
  std::vector<std::vector<double>> consts(pairs.size());
  Table rr{"rearrangement", {"f", "role", "value"}, {}};
  double C = 0.0;
  for (int i = 1; i <= samples; ++i) {
    const std::string id = "random:" + std::to_string(i);
    const auto s = solve_bogovskii("disk", id, cgrid, q, ctx.jobs, ctx);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const auto& [A, B] = pairs[k];
      const double c = norm_constant(s.f, s.field.gradient, A, B);
      consts[k].push_back(c);
      kt.rows.push_back({id, A.name() + ":" + B.name(), num(c), num(modular_constant(s.f, s.field.gradient, A, B))});
    }
    const double ci = calibrate_rearrangement_constant(s.f, s.field.gradient);
    rr.rows.push_back({id, "training", num(ci)});
    C = std::max(C, ci);
  }
  {
    const auto s = solve_bogovskii("disk", "radial", cgrid, q, ctx.jobs, ctx);
    const double ci = calibrate_rearrangement_constant(s.f, s.field.gradient);
    rr.rows.push_back({"radial", "training", num(ci)});
    C = std::max(C, ci);
  }
  Json bands = Json::object();
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto b = band(consts[k]);
    const std::string label = pairs[k].first.name() + ":" + pairs[k].second.name();
    bands[label] = {{"median", num(b.median)}, {"min", num(b.lo)}, {"max", num(b.hi)}};
    r.check("grad constant within 25% for " + label, b.within(0.25), b.text());
  }
  bool holds = true;
  std::string detail = "C " + fmt_g(C);
  for (int i = 0; i < held; ++i) {
    const std::string id = "random:" + std::to_string(samples + 1 + i);
    const auto s = solve_bogovskii("disk", id, cgrid, q, ctx.jobs, ctx);
    const auto chk = check_rearrangement_estimate(s.f, s.field.gradient, C);
    holds = holds && chk.holds && chk.s.size() == 100;
    rr.rows.push_back({id, "held_out", num(chk.worst_ratio)});
    detail += "; " + id + " worst lhs/rhs " + fmt_g(chk.worst_ratio);
  }
  r.check("rearrangement estimate on held-out data at 100 samples", holds, detail);
  r.results["constant_bands"] = bands;
  r.results["rearrangement_C"] = num(C);
  r.tables.push_back(std::move(rt));
  r.tables.push_back(std::move(kt));
  r.tables.push_back(std::move(rr));
  r.fields.push_back({"field", last_u});
  return r;
}

Report run_negnorm_suite(const Params& p, const RunContext& ctx) {
  Report r;
  const auto corpus = p.strings("corpus", negnorm_corpus());
  const auto pair_specs = p.strings("pairs", {"power:2:power:2", "zygmund:1:2:zygmund:1:1", "exp:1:exp:0.5"});
  auto depths = p.integers("depths", {3, 4, 5}, 1, 8);
  std::sort(depths.begin(), depths.end());
  const int n = static_cast<int>(p.integer("grid", 64, 8, 512));
  const auto ks = p.integers("ks", {4, 8, 16, 32}, 1, 1024);
  const auto D = domain_arg(resolve("square", ctx), "--domain");
  const auto dom = grid_domain(D, n);

  std::vector<TestFamily> fams;
  for (int d : depths) fams.push_back(TestFamily::dyadic(dom, d));
  std::vector<SampledField> us;
  for (const auto& id : corpus) us.push_back(input_field(resolve(id, ctx), dom, "--corpus"));
  const auto constant = SampledField::sample(dom, 1, [](Point2, double* v) { v[0] = 3.0; });

  Table t{"bands", {"pair", "u", "depth", "family_size", "lower", "upper", "r_low", "r_high", "witness"}, {}};
  Table bt{"band_summary", {"pair", "depth", "r_low_min", "r_low_max"}, {}};
  bool zero = true, monotone = true, ordered = true;
  std::string zero_detail, mono_detail;
  for (const auto& spec : pair_specs) {
    const auto [A, B] = pair_arg(spec, "--pairs");
    const std::string label = A.name() + ":" + B.name();
    const double cz = neg_norm_lower(constant, A, fams.back()).value;
    zero = zero && cz == 0.0;
    zero_detail += (zero_detail.empty() ? "" : "; ") + label + " " + fmt_g(cz);
    std::vector<double> bmin(fams.size(), kInf), bmax(fams.size(), 0.0);
    double fn_spread = 1.0;
    for (std::size_t j = 0; j < us.size(); ++j) {
      double prev = -1.0, rmin = kInf, rmax = 0.0;
      for (std::size_t d = 0; d < fams.size(); ++d) {
        const auto rep = two_sided_check(us[j], A, B, fams[d]);
        if (rep.lower < prev) {
          monotone = false;
          mono_detail = label + " " + corpus[j] + " depth " + std::to_string(depths[d]);
        }
        prev = rep.lower;
        ordered = ordered && rep.lower <= rep.upper;
        bmin[d] = std::min(bmin[d], rep.r_low);
        bmax[d] = std::max(bmax[d], rep.r_low);
        rmin = std::min(rmin, rep.r_low);
        rmax = std::max(rmax, rep.r_low);
        t.rows.push_back({label, corpus[j], depths[d], fams[d].size(), num(rep.lower), num(rep.upper),
                          num(rep.r_low), num(rep.r_high), rep.witness_id});
      }
      if (rmin > 0.0) fn_spread = std::max(fn_spread, rmax / rmin);
    }
    for (std::size_t d = 0; d < fams.size(); ++d) bt.rows.push_back({label, depths[d], num(bmin[d]), num(bmax[d])});
    const auto spread = [](const std::vector<double>& v) {
      return *std::max_element(v.begin(), v.end()) / *std::min_element(v.begin(), v.end());
    };
    const double s_lo = spread(bmin), s_hi = spread(bmax);
    r.results["band_spread"][label] = {{"lower_end", num(s_lo)}, {"upper_end", num(s_hi)},
                                       {"per_function", num(fn_spread)}};
    r.check("r_low band stable within a factor 4 for " + label, s_lo <= 4.0 && s_hi <= 4.0,
            "band end spreads " + fmt_g(s_lo) + " and " + fmt_g(s_hi) + " over depths");

    // sup-approximation of the bump in the conjugate space
    const auto v = input_field("bump", dom, "--v");
    const auto sa = sup_approx_convergence(v, A, ks, us.empty() ? SampledField{} : us[0]);
    const double err = sa.steps.back().mollified_norm / sa.target_norm - 1.0;
    r.results["supapprox"][label] = num(err);
    r.check("mollified norm within 2% by k = " + std::to_string(ks.back()) + " for " + label,
            ks.back() <= 32 && std::abs(err) <= 0.02, "relative error " + fmt_g(err));
  }
  r.check("constants pair to exactly zero", zero, zero_detail);
  r.check("lower bound monotone under enrichment", monotone, monotone ? "all depths" : "drop at " + mono_detail);
  r.check("lower <= upper everywhere", ordered);
  r.results["depths"] = depths;
  r.results["corpus"] = corpus;
  r.tables.push_back(std::move(t));
  r.tables.push_back(std::move(bt));
  return r;
}

Report run_fem_suite(const Params& p, const RunContext&) {
  Report r;
  const auto levels = p.integers("levels", {4, 8, 16}, 1, 128);
  const auto orlicz_levels = p.integers("orlicz_levels", {4}, 1, 64);
  const auto P2 = YoungFunction::power(2);
  std::vector<std::shared_ptr<const Triangulation>> meshes;
  for (int n : levels) meshes.push_back(std::make_shared<const Triangulation>(triangulate_square(n)));

  // exact recovery of a random elementwise constant pressure
  {
    FESpacePair V(meshes[std::min<std::size_t>(1, meshes.size() - 1)], 2, 0);
    std::mt19937_64 rng(static_cast<std::uint64_t>(p.integer("seed", 3, 0, 1LL << 62)));
    std::normal_distribution<double> N;
    Eigen::VectorXd z(V.pressure_dofs());
    for (auto& x : z) x = N(rng);
    const auto q = V.pressure_values(z);
    const auto sys = assemble_pressure_system(V, [&](int t, Point2, double H[4]) {
      H[0] = H[3] = q[t];
      H[1] = H[2] = 0.0;
    });
    const auto sol = reconstruct_pressure(V, sys, SolveMode::exact);
    const double err = (sol.values - q).cwiseAbs().maxCoeff();
    r.results["recovery_error"] = num(err);
    r.check("P0 pressure recovered exactly within 1e-10", err <= 1e-10, "max error " + fmt_g(err));
  }

  // P2/P0 inf-sup for power(2) and its eigen-oracle on the coarsest mesh
  Table it{"infsup", {"h", "pair", "value", "rank_deficient"}, {}};
  std::vector<double> vals;
  for (const auto& mesh : meshes) {
    FESpacePair V(mesh, 2, 0);
    const auto rep = compute_infsup(V, P2, P2);
    vals.push_back(rep.value);
    it.rows.push_back({num(mesh->h), rep.pair, num(rep.value), rep.rank_deficient});
  }
  {
    const auto b = band(vals);
    r.check("P2/P0 inf-sup within 20% of the median", b.within(0.2) && b.lo > 0.0, b.text());
    FESpacePair V(meshes.front(), 2, 0);
    const Eigen::MatrixXd A = divergence_matrix(V);
    const Eigen::MatrixXd K = Eigen::MatrixXd(stiffness_matrix(V));
    const Eigen::MatrixXd S = A.transpose() * K.ldlt().solve(A);
    const Eigen::LLT<Eigen::MatrixXd> L(pressure_mass(V));
    const Eigen::MatrixXd Li = L.matrixL().solve(Eigen::MatrixXd::Identity(S.rows(), S.cols()));
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Li * S * Li.transpose(), Eigen::EigenvaluesOnly);
    // ||1||_B = 1 and ||1|| in the conjugate s^2/4 is 1/2
    const double oracle = 2.0 * std::sqrt(es.eigenvalues().minCoeff());
    const double gap = std::abs(oracle - vals.front());
    r.results["infsup_oracle"] = num(oracle);
    r.check("inf-sup matches the eigen-oracle within 1e-8 on the coarsest mesh", gap <= 1e-8,
            fmt_g(vals.front()) + " vs " + fmt_g(oracle) + ", gap " + fmt_g(gap));
  }
  Json vj = Json::array();
  for (double v : vals) vj.push_back(num(v));
  r.results["infsup"] = vj;

  // P1/P0 negative control
  {
    bool flagged = true;
    std::string detail;
    for (const auto& mesh : meshes) {
      FESpacePair V(mesh, 1, 0);
      const auto rep = compute_infsup(V, P2, P2);
      it.rows.push_back({num(mesh->h), rep.pair, num(rep.value), rep.rank_deficient});
      bool threw = false;
      try {
        reconstruct_pressure(V, assemble_pressure_system(V, [](int, Point2 x, double H[4]) {
                               H[0] = H[3] = x.x - 0.5;
                               H[1] = H[2] = 0.0;
                             }),
                             SolveMode::least_squares);
      } catch (const RankDeficiencyError& e) {
        threw = true;
        if (detail.empty()) detail = e.what();
      }
      flagged = flagged && rep.rank_deficient && threw;
    }
    r.check("P1/P0 flagged as rank deficient", flagged, detail);
  }

  // projection: divergence preservation and Orlicz stability
  const auto u = manufactured_velocity();
  const std::vector<YoungFunction> youngs = {YoungFunction::power(1.5), P2, YoungFunction::zygmund(1, 1),
                                             YoungFunction::exponential(1)};
  Table pt{"projection", {"h", "young", "ratio", "divergence_error"}, {}};
  double worst_div = 0.0, rmax = 0.0, rmin = kInf;
  for (const auto& mesh : meshes) {
    FESpacePair V(mesh, 2, 0);
    const auto Pu = project(V, u);
    const auto d = element_divergence(V, Pu);
    const auto ex = exact_element_divergence(*mesh, u);
    double err = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) err = std::max(err, std::abs(d[i] - ex[i]));
    worst_div = std::max(worst_div, err);
    for (const auto& Y : youngs) {
      const double ratio = orlicz_projection_ratio(V, u, Y);
      rmax = std::max(rmax, ratio);
      rmin = std::min(rmin, ratio);
      pt.rows.push_back({num(mesh->h), Y.name(), num(ratio), num(err)});
    }
  }
  r.results["projection_ratio_range"] = {num(rmin), num(rmax)};
  r.check("projection preserves element divergence within 1e-12", worst_div <= 1e-12, "max error " + fmt_g(worst_div));
  r.check("projection ratio bounded by 2 for 4 Young functions and all levels", rmax <= 2.0,
          "ratio range " + range_text(rmin, rmax));

  // pressure error against the best elementwise constant
  Table prt{"pressure", {"pair", "h", "error", "best", "ratio", "stability", "residual"}, {}};
  const auto pi = scalar_function("sin");
  for (const auto& [A, B] : std::vector<std::pair<YoungFunction, YoungFunction>>{
           {P2, P2}, {YoungFunction::zygmund(1, 1), YoungFunction::power(1)}}) {
    const auto rows = pressure_error_study(pi, meshes, A, B, 2);
    std::vector<double> ratios;
    for (const auto& row : rows) {
      ratios.push_back(row.ratio);
      prt.rows.push_back({A.name() + ":" + B.name(), num(row.h), num(row.error), num(row.best), num(row.ratio),
                          num(row.stability), num(row.residual)});
    }
    const auto b = band(ratios);
    r.check("pressure error ratio within 30% of the median for " + A.name() + ":" + B.name(), b.within(0.3), b.text());
  }

  // Orlicz inf-sup by ascent, reported
  Table ot{"orlicz_infsup", {"h", "pair", "value", "converged", "iterations"}, {}};
  bool positive = true;
  std::string values;
  for (int n : orlicz_levels) {
    FESpacePair V(std::make_shared<const Triangulation>(triangulate_square(n)), 2, 0);
    const auto rep = compute_infsup(V, YoungFunction::zygmund(1, 1), YoungFunction::power(1));
    positive = positive && std::isfinite(rep.value) && rep.value > 0.0;
    values += (values.empty() ? "" : ", ") + fmt_g(rep.value);
    ot.rows.push_back({num(1.0 / n), rep.pair, num(rep.value), rep.converged, rep.iterations});
  }
  r.check("Orlicz inf-sup estimate positive", positive, "values " + values);

  r.tables.push_back(std::move(it));
  r.tables.push_back(std::move(pt));
  r.tables.push_back(std::move(prt));
  r.tables.push_back(std::move(ot));
  return r;
}

namespace {

std::string read_bytes(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

Report run_determinism(const Params& p, const RunContext& ctx) {
  Report r;
  const Json& runs = p.at("runs");
  if (!runs.is_array() || runs.empty()) throw UsageError("config: 'runs' must be a non-empty array");
  const auto tmp = std::filesystem::temp_directory_path() / ("orlicz-determinism-" + std::to_string(::getpid()));
  Table t{"files", {"file", "bytes", "identical"}, {}};
  bool same = true, passed = true;
  std::string failing;
  std::size_t files = 0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    Json cfg = runs[i];
    RunContext sub = ctx;
    if (cfg.is_string()) {
      const auto path = std::filesystem::path(resolve(cfg.get<std::string>(), ctx));
      cfg = load_json_file(path.string());
      sub.base = path.parent_path();
    }
    // one sequential pass, one with the threads on offer
    const std::filesystem::path a = tmp / std::to_string(i) / "a", b = tmp / std::to_string(i) / "b";
    RunContext one = sub;
    one.jobs = 1;
    RunContext many = sub;
    many.jobs = std::max(2, ctx.jobs);
    const Report ra = run_experiment(cfg, one);
    const Report rb = run_experiment(cfg, many);
    if (!ra.passed() || !rb.passed()) {
      passed = false;
      failing += (failing.empty() ? "" : ", ") + ra.name;
    }
    const auto fa = write_report(ra, a);
    const auto fb = write_report(rb, b);
    if (fa.size() != fb.size()) same = false;
    for (std::size_t k = 0; k < std::min(fa.size(), fb.size()); ++k) {
      const auto x = read_bytes(fa[k]), y = read_bytes(fb[k]);
      const bool eq = fa[k].filename() == fb[k].filename() && x == y;
      same = same && eq;
      ++files;
      t.rows.push_back({fa[k].filename().string(), x.size(), eq});
    }
  }
  std::filesystem::remove_all(tmp);
  r.results["runs"] = runs.size();
  r.results["files"] = files;
  r.results["identical"] = same;
  r.tables.push_back(std::move(t));
  r.check("repeated runs give byte-identical files", same, std::to_string(files) + " files compared");
  r.check("nested runs pass", passed, failing);
  return r;
}

}  // namespace orlicz::cli
