#include "experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "builders.hpp"
#include "expressions.hpp"
#include "orlicz/hardy.hpp"
#include "orlicz/infsup.hpp"
#include "orlicz/negative_norm.hpp"
#include "orlicz/norms.hpp"
#include "orlicz/pressure.hpp"

namespace orlicz::cli {

namespace {

Json growth_json(const GrowthReport& g) {
  return {{"status", to_string(g.status)}, {"constant", num(g.constant)}, {"s0", num(g.s0)}};
}

}  // namespace

BogovskiiRun solve_bogovskii(const std::string& domain, const std::string& fspec, int n, const QuadratureSpec& q,
                             int jobs, const RunContext& ctx) {
  if (domain == "lshape") {
    const auto dec = lshape();
    auto f = input_field(resolve(fspec, ctx), grid_domain(dec, n), "--f");
    auto F = bogovskii_general(f, dec, q, jobs);
    return {std::move(f), std::move(F)};
  }
  const auto D = domain_arg(resolve(domain, ctx), "--domain");
  auto f = input_field(resolve(fspec, ctx), grid_domain(D, n), "--f");
  auto F = bogovskii_field(f, D, q, jobs);
  return {std::move(f), std::move(F)};
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double relative_gap(double a, double b) {
  if (std::isinf(a) && std::isinf(b)) return 0.0;
  if (std::isinf(a) || std::isinf(b)) return std::numeric_limits<double>::infinity();
  if (a == 0.0) return std::abs(b);
  return std::abs(a - b) / std::abs(a);
}

std::string resolve(const std::string& spec, const RunContext& ctx) {
  const std::filesystem::path p(spec);
  const auto ext = p.extension().string();
  if (ctx.base.empty() || p.is_absolute() || (ext != ".json" && ext != ".csv")) return spec;
  return (ctx.base / p).string();
}

double involution_gap(const YoungFunction& A, int points, Table* table) {
  const auto At = conjugate(A);
  const auto Att = conjugate(At);
  double worst = 0.0;
  for (int i = 0; i < points; ++i) {
    const double s = std::pow(10.0, -3.0 + 5.0 * i / (points - 1));
    const double a = A(s), b = Att(s), g = relative_gap(a, b);
    worst = std::max(worst, g);
    if (table) table->rows.push_back({num(s), num(a), num(At(s)), num(b), num(g)});
  }
  return worst;
}

std::pair<double, double> sandwich_range(const YoungFunction& A) {
  const auto At = conjugate(A);
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double x = std::pow(10.0, -4.0 + 8.0 * i / 49.0);
    const double ratio = inverse(A, x) * inverse(At, x) / x;
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  return {lo, hi};
}

Report run_young(const Params& p, const RunContext& ctx) {
  Report r;
  const auto A = young_arg(resolve(p.str("young", "power:2"), ctx), "--young");
  const int points = static_cast<int>(p.integer("points", 100, 2, 100000));
  const auto At = conjugate(A);
  Table t{"table", {"s", "A", "conjugate", "double_conjugate", "relative_gap"}, {}};
  const double worst = involution_gap(A, points, &t);
  const auto [lo, hi] = sandwich_range(A);
  const bool sandwich = lo >= 1.0 - 1e-9 && hi <= 2.0 + 1e-9;

  r.results["young"] = A.name();
  r.results["kind"] = to_string(A.kind());
  r.results["allows_infinity"] = A.allows_infinity();
  r.results["conjugate"] = At.name();
  r.results["delta2"] = growth_json(classify_delta2(A));
  r.results["nabla2"] = growth_json(classify_nabla2(A));
  r.results["involution_max_gap"] = num(worst);
  r.results["sandwich"] = {{"min_ratio", num(lo)}, {"max_ratio", num(hi)}, {"holds", sandwich}};
  r.tables.push_back(std::move(t));
  r.check("conjugate involution within 1e-6", worst <= 1e-6, "max relative gap " + fmt_g(worst));
  r.check("r <= A^-1(r) conj^-1(r) <= 2r", sandwich, "ratio range [" + fmt_g(lo) + ", " + fmt_g(hi) + "]");
  return r;
}

Report run_balance(const Params& p, const RunContext& ctx) {
  Report r;
  const auto [A, B] = pair_arg(p.str("pair", "power:2:power:2"), "--pair");
  (void)ctx;
  const auto b = check_balance(A, B);
  const auto d = dominates(A, B);
  r.results["A"] = A.name();
  r.results["B"] = B.name();
  r.results["c_11"] = num(b.c_11);
  r.results["c_12"] = num(b.c_12);
  r.results["t0"] = num(b.t0);
  r.results["global"] = b.global;
  r.results["admissible"] = b.admissible();
  r.results["dominates"] = growth_json(d);
  if (p.has("expect")) {
    const auto e = p.str("expect", "");
    if (e != "admissible" && e != "inadmissible")
      throw UsageError("invalid --expect '" + e + "': expected admissible or inadmissible");
    r.check("pair is " + e, b.admissible() == (e == "admissible"),
            "c_11 " + fmt_g(b.c_11) + ", c_12 " + fmt_g(b.c_12) + ", t0 " + fmt_g(b.t0));
  }
  return r;
}

Report run_norm(const Params& p, const RunContext& ctx) {
  Report r;
  SampledField u;
  if (p.has("field")) {
    if (p.has("u")) throw UsageError("config: give either 'field' or 'u', not both");
    const auto path = resolve(p.str("field", ""), ctx);
    try {
      u = read_field_csv(path);
    } catch (const std::exception& e) {
      throw UsageError("invalid --field '" + path + "': " + e.what());
    }
    r.results["source"] = p.str("field", "");
  } else {
    const auto D = domain_arg(resolve(p.str("domain", "square"), ctx), "--domain");
    const int n = static_cast<int>(p.integer("grid", 64, 2, 1024));
    u = input_field(resolve(p.str("u", "random:1"), ctx), grid_domain(D, n), "--u");
    r.results["source"] = p.str("u", "random:1");
  }
  if (u.components() != 1) throw UsageError("invalid --field: expected a scalar field");
  const auto rear = decreasing_rearrangement(u);
  Table norms{"norms", {"young", "norm", "rearranged_norm", "relative_gap", "modular_at_norm"}, {}};
  double worst = 0.0;
  Json per = Json::array();
  for (const auto& spec : p.strings("young", {"power:2"})) {
    const auto A = young_arg(resolve(spec, ctx), "--young");
    const double nu = luxemburg_norm(u, A), nr = luxemburg_norm(rear, A);
    const double gap = relative_gap(nu, nr);
    const auto mod = u.moduli();
    const double m = nu > 0.0 ? modular(u.measures(), mod, A, nu) : 0.0;
    worst = std::max(worst, gap);
    norms.rows.push_back({A.name(), num(nu), num(nr), num(gap), num(m)});
    per.push_back({{"young", A.name()}, {"norm", num(nu)}, {"rearranged_norm", num(nr)}});
  }
  Table rt{"rearrangement", {"s", "value"}, {}};
  for (std::size_t i = 0; i < rear.breaks.size(); ++i) rt.rows.push_back({num(rear.breaks[i]), num(rear.values[i])});
  r.results["cells"] = u.size();
  r.results["measure"] = num(u.total_measure());
  r.results["norms"] = per;
  r.results["max_rearrangement_gap"] = num(worst);
  r.tables.push_back(std::move(norms));
  r.tables.push_back(std::move(rt));
  r.check("norm of u equals norm of u*", worst <= 1e-10, "max relative gap " + fmt_g(worst));
  return r;
}

Report run_bogovskii(const Params& p, const RunContext& ctx) {
  Report r;
  const auto domain = p.str("domain", "disk");
  const auto fspec = p.str("f", "radial");
  const int n = static_cast<int>(p.integer("grid", 64, 4, 512));
  const auto q = quad_arg(p);
  const auto [A, B] = pair_arg(p.str("pair", "power:2:power:2"), "--pair");
  const auto training = p.strings("training", {"random:1", "random:2", "random:3"});
  for (const auto& t : training)
    if (!is_scalar_function(t)) throw UsageError("config: training entry '" + t + "' is not a function id");

  const auto s = solve_bogovskii(domain, fspec, n, q, ctx.jobs, ctx);
  double C = 0.0;
  if (p.has("rearrangement_C")) {
    C = p.number("rearrangement_C", 1.0);
    if (!(C > 0.0)) throw UsageError("config: 'rearrangement_C' must be positive");
    r.results["rearrangement_C_source"] = "config";
  } else {
    for (const auto& t : training) {
      const auto tr = solve_bogovskii(domain, t, n, q, ctx.jobs, ctx);
      C = std::max(C, calibrate_rearrangement_constant(tr.f, tr.field.gradient));
    }
    r.results["rearrangement_C_source"] = "calibrated";
  }
  const auto chk = check_rearrangement_estimate(s.f, s.field.gradient, C);

  r.results["div_residual"] = num(s.field.divergence_residual);
  r.results["grad_norm_C"] = num(norm_constant(s.f, s.field.gradient, A, B));
  r.results["modular_C"] = num(modular_constant(s.f, s.field.gradient, A, B));
  r.results["rearrestim_ok"] = chk.holds;
  r.results["rearrangement_C"] = num(C);
  r.results["rearrangement_worst_ratio"] = num(chk.worst_ratio);
  r.results["boundary_ratio"] = num(s.field.boundary_ratio);
  r.results["removed_mean"] = num(s.field.removed_mean);
  r.results["cells"] = s.f.size();
  r.results["shifted_points"] = s.field.shifted_points;
  if (!s.field.part_residuals.empty()) {
    Json pr = Json::array();
    for (double x : s.field.part_residuals) pr.push_back(num(x));
    r.results["part_residuals"] = pr;
  }
  Table rt{"rearrangement", {"s", "lhs", "rhs"}, {}};
  for (std::size_t i = 0; i < chk.s.size(); ++i) rt.rows.push_back({num(chk.s[i]), num(chk.lhs[i]), num(chk.rhs[i])});
  r.tables.push_back(std::move(rt));
  r.fields.push_back({"field", s.field.u});
  r.check("rearrangement estimate at all samples", chk.holds, "worst lhs/rhs " + fmt_g(chk.worst_ratio));
  return r;
}

Report run_decomposition(const Params& p, const RunContext& ctx) {
  Report r;
  const int n = static_cast<int>(p.integer("grid", 64, 4, 512));
  const auto q = quad_arg(p);
  const auto [A, B] = pair_arg(p.str("pair", "power:2:power:2"), "--pair");
  const auto dec = lshape();
  const auto f = input_field(resolve(p.str("f", "x"), ctx), grid_domain(dec, n), "--f");
  const auto split = split_function(f, dec);

  // the split acts on the mean-zero projection of f
  double sum_err = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    double s = 0.0;
    for (const auto& part : split.parts) s += part.value(i);
    sum_err = std::max(sum_err, std::abs(s - (f.value(i) - split.removed_mean)));
  }
  const auto f0 = f.with_values(1, [&] {
    std::vector<double> v(f.values().begin(), f.values().end());
    for (double& x : v) x -= split.removed_mean;
    return v;
  }());
  const double fn = luxemburg_norm(f0, A);
  Table t{"parts", {"part", "measure", "tail_measure", "overlap", "bound", "norm_ratio", "mean"}, {}};
  double worst_mean = 0.0;
  bool bounded = true;
  std::string detail;
  for (std::size_t k = 0; k < split.parts.size(); ++k) {
    const double mean = split.parts[k].integral() / f.total_measure();
    const double ratio = luxemburg_norm(split.parts[k], A) / fn;
    worst_mean = std::max(worst_mean, std::abs(mean));
    bounded = bounded && ratio <= split.bound[k];
    detail += (k ? "; " : "") + std::string("part ") + std::to_string(k + 1) + ": " + fmt_g(ratio) + " <= " +
              fmt_g(split.bound[k]);
    t.rows.push_back({static_cast<int>(k + 1), num(split.part_measure[k]), num(split.tail_measure[k]),
                      num(split.overlap[k]), num(split.bound[k]), num(ratio), num(mean)});
  }
  const auto F = bogovskii_general(f, dec, q, ctx.jobs);

  r.results["partition_error"] = num(sum_err);
  r.results["max_part_mean"] = num(worst_mean);
  r.results["removed_mean"] = num(split.removed_mean);
  Json bounds = Json::array();
  for (double b : split.bound) bounds.push_back(num(b));
  r.results["bounds"] = bounds;
  r.results["div_residual"] = num(F.divergence_residual);
  Json pr = Json::array();
  for (double x : F.part_residuals) pr.push_back(num(x));
  r.results["part_residuals"] = pr;
  r.results["grad_norm_C"] = num(norm_constant(f, F.gradient, A, B));
  r.results["cells"] = f.size();
  r.tables.push_back(std::move(t));
  r.fields.push_back({"field", F.u});
  r.check("sum of parts equals f cellwise within 1e-12", sum_err <= 1e-12, "max error " + fmt_g(sum_err));
  r.check("every part has mean zero within 1e-12", worst_mean <= 1e-12, "max |mean| " + fmt_g(worst_mean));
  r.check("part norms below the product bound", bounded, detail);
  return r;
}

Report run_negnorm(const Params& p, const RunContext& ctx) {
  Report r;
  const auto [A, B] = pair_arg(p.str("pair", "power:2:power:2"), "--pair");
  const int depth = static_cast<int>(p.integer("depth", 3, 1, 8));
  const int n = static_cast<int>(p.integer("grid", 64, 4, 512));
  const auto D = domain_arg(resolve(p.str("domain", "square"), ctx), "--domain");
  const auto dom = grid_domain(D, n);
  const auto u = input_field(resolve(p.str("u", "step"), ctx), dom, "--u");
  const auto F = TestFamily::dyadic(dom, depth);
  const auto rep = two_sided_check(u, A, B, F);

  r.results["lower"] = num(rep.lower);
  r.results["upper"] = num(rep.upper);
  r.results["r_low"] = num(rep.r_low);
  r.results["r_high"] = num(rep.r_high);
  r.results["witness_id"] = rep.witness_id;
  r.results["admissible"] = rep.admissible;
  r.results["family_size"] = F.size();
  r.results["depth"] = depth;
  if (p.has("ks")) {
    const auto ks = p.integers("ks", {}, 1, 1024);
    const auto v = input_field(resolve(p.str("v", "bump"), ctx), dom, "--v");
    const auto s = sup_approx_convergence(v, A, ks, u);
    Table t{"supapprox", {"k", "truncated_norm", "mollified_norm", "relative_error", "pairing", "mean_zero_mean"}, {}};
    for (const auto& st : s.steps)
      t.rows.push_back({st.k, num(st.truncated_norm), num(st.mollified_norm),
                        num(st.mollified_norm / s.target_norm - 1.0), num(st.pairing), num(st.mean_zero_mean)});
    r.results["target_norm"] = num(s.target_norm);
    r.results["target_pairing"] = num(s.target_pairing);
    r.tables.push_back(std::move(t));
  } else if (p.has("v")) {
    throw UsageError("config: 'v' needs 'ks'");
  }
  r.check("lower <= upper", rep.lower <= rep.upper, fmt_g(rep.lower) + " <= " + fmt_g(rep.upper));
  return r;
}

Report run_fem(const Params& p, const RunContext& ctx) {
  Report r;
  const auto verb = p.str("verb", "");
  if (verb != "infsup" && verb != "pressure" && verb != "projection")
    throw UsageError("invalid fem verb '" + verb + "': expected infsup, pressure or projection");
  const auto meshes = meshes_arg(resolve(p.str("mesh", "square:1/8"), ctx), "--mesh");
  const auto [A, B] = pair_arg(p.str("pair", "power:2:power:2"), "--pair");
  const int k = static_cast<int>(p.integer("k", 2, 1, 2));
  const int m = static_cast<int>(p.integer("m", 0, 0, 0));
  r.results["verb"] = verb;

  if (verb == "infsup") {
    InfSupOptions opt;
    opt.restarts = static_cast<int>(p.integer("restarts", opt.restarts, 1, 100));
    opt.max_iterations = static_cast<int>(p.integer("iterations", opt.max_iterations, 1, 100000));
    opt.seed = static_cast<std::uint64_t>(p.integer("seed", 1, 0, 1LL << 62));
    Table t{"infsup",
            {"h", "velocity_dofs", "pressure_dofs", "value", "exact", "rank_deficient", "converged", "iterations"},
            {}};
    std::vector<double> vals;
    bool flagged = false;
    Json notes = Json::array();
    std::string pair_name;
    for (const auto& mesh : meshes) {
      FESpacePair V(mesh, k, m);
      const auto rep = compute_infsup(V, A, B, opt);
      pair_name = rep.pair;
      vals.push_back(rep.value);
      flagged = flagged || rep.rank_deficient;
      if (!rep.note.empty()) notes.push_back(rep.note);
      t.rows.push_back({num(mesh->h), rep.velocity_dofs, rep.pressure_dofs, num(rep.value), rep.exact,
                        rep.rank_deficient, rep.converged, rep.iterations});
    }
    Json vj = Json::array();
    for (double v : vals) vj.push_back(num(v));
    const double lo = *std::min_element(vals.begin(), vals.end());
    r.results["pair"] = pair_name;
    r.results["values"] = vj;
    r.results["min"] = num(lo);
    r.results["max"] = num(*std::max_element(vals.begin(), vals.end()));
    r.results["median"] = num(median(vals));
    r.results["flagged"] = flagged;
    r.results["notes"] = notes;
    r.tables.push_back(std::move(t));
    r.check("inf-sup stable on every mesh", !flagged && lo > 0.0,
            flagged ? "divergence matrix rank deficient" : "min value " + fmt_g(lo));
  } else if (verb == "pressure") {
    const auto pi_spec = p.str("pi", "sin");
    if (!is_scalar_function(pi_spec)) throw UsageError("invalid --pi '" + pi_spec + "': not a function id");
    const auto pi = scalar_function(pi_spec);
    std::vector<PressureRow> rows;
    try {
      rows = pressure_error_study(pi, meshes, A, B, k);
    } catch (const RankDeficiencyError& e) {
      r.results["rank_deficient"] = true;
      r.check("pressure reconstruction well posed", false, e.what());
      return r;
    }
    Table t{"pressure", {"h", "error", "best", "ratio", "stability", "residual"}, {}};
    std::vector<double> ratios;
    for (const auto& row : rows) {
      ratios.push_back(row.ratio);
      t.rows.push_back({num(row.h), num(row.error), num(row.best), num(row.ratio), num(row.stability),
                        num(row.residual)});
    }
    Json rj = Json::array();
    for (double x : ratios) rj.push_back(num(x));
    r.results["pi"] = pi_spec;
    r.results["ratios"] = rj;
    r.results["median_ratio"] = num(median(ratios));
    r.tables.push_back(std::move(t));
    if (p.has("law")) {
      const auto law = law_arg(p.str("law", ""), "--law");
      // a constant stress pairs to zero with every discrete test field
      const double xi[4] = {0.3, 0.1, 0.1, -0.2};
      double S[4];
      law.eval(xi, S);
      FESpacePair V(meshes.back(), k, m);
      const auto b = load_vector(V, [&](int, Point2, double H[4]) {
        for (int i = 0; i < 4; ++i) H[i] = S[i];
      });
      const double sn = std::sqrt(S[0] * S[0] + S[1] * S[1] + S[2] * S[2] + S[3] * S[3]);
      const double load = b.size() ? b.cwiseAbs().maxCoeff() / sn : 0.0;
      Table lt{"law", {"t", "modulus"}, {}};
      for (int i = 0; i <= 12; ++i) {
        const double s = std::pow(10.0, -3.0 + 0.5 * i);
        lt.rows.push_back({num(s), num(law.modulus(s))});
      }
      r.results["law"] = law.name();
      r.results["law_load"] = num(load);
      r.tables.push_back(std::move(lt));
      r.check("constant stress gives a zero load", load <= 1e-12, "max |b| / |S| " + fmt_g(load));
    }
  } else {
    if (k != 2) throw UsageError("invalid --k for projection: the flux correction needs k = 2");
    const auto u = manufactured_velocity();
    std::vector<YoungFunction> youngs;
    for (const auto& s : p.strings("young", {A.name()})) youngs.push_back(young_arg(resolve(s, ctx), "--young"));
    Table t{"projection", {"h", "young", "ratio", "local_constant", "divergence_error"}, {}};
    double worst_div = 0.0, worst_ratio = 0.0;
    for (const auto& mesh : meshes) {
      FESpacePair V(mesh, k, m);
      const auto Pu = project(V, u);
      const auto d = element_divergence(V, Pu);
      const auto ex = exact_element_divergence(*mesh, u);
      double err = 0.0;
      for (std::size_t i = 0; i < d.size(); ++i) err = std::max(err, std::abs(d[i] - ex[i]));
      worst_div = std::max(worst_div, err);
      const double local = projection_local_constant(V, u, Pu);
      for (const auto& Y : youngs) {
        const double ratio = orlicz_projection_ratio(V, u, Y);
        worst_ratio = std::max(worst_ratio, ratio);
        t.rows.push_back({num(mesh->h), Y.name(), num(ratio), num(local), num(err)});
      }
    }
    r.results["max_divergence_error"] = num(worst_div);
    r.results["max_ratio"] = num(worst_ratio);
    r.tables.push_back(std::move(t));
    r.check("element divergence preserved within 1e-12", worst_div <= 1e-12, "max error " + fmt_g(worst_div));
  }
  return r;
}

const std::vector<ExperimentSpec>& experiments() {
  static const std::vector<ExperimentSpec> e = {
      {"young", {"young", "points"}, run_young, "conjugate, inverses and growth classes of one Young function"},
      {"balance", {"pair", "expect"}, run_balance, "balance constants of a pair"},
      {"norm", {"field", "u", "domain", "grid", "young"}, run_norm, "Luxemburg norms and rearrangement of a field"},
      {"bogovskii",
       {"domain", "f", "grid", "quad", "pair", "training", "rearrangement_C"},
       run_bogovskii,
       "Bogovskii solution, residual and measured constants"},
      {"decomposition", {"f", "grid", "pair", "quad"}, run_decomposition, "splitting on the L-shaped domain"},
      {"negnorm", {"u", "pair", "depth", "domain", "grid", "ks", "v"}, run_negnorm, "two-sided negative norm bounds"},
      {"fem",
       {"verb", "mesh", "pair", "k", "m", "law", "pi", "young", "restarts", "iterations"},
       run_fem,
       "inf-sup constants, pressure reconstruction and projection"},
      {"young-suite", {"families", "points"}, run_young_suite, "involution and sandwich for every family"},
      {"balance-matrix", {}, run_balance_matrix, "admissibility of the reference pairs"},
      {"norm-suite", {"fields", "hardy_inputs"}, run_norm_suite, "rearrangement, closed forms and Hardy bound"},
      {"bogovskii-suite",
       {"grids", "constant_grid", "samples", "held_out", "quad"},
       run_bogovskii_suite,
       "residual, constant stability and rearrangement estimate"},
      {"negnorm-suite", {"corpus", "pairs", "depths", "grid", "ks"}, run_negnorm_suite, "negative norm properties"},
      {"fem-suite", {"levels", "orlicz_levels"}, run_fem_suite, "finite element properties"},
      {"determinism", {"runs"}, run_determinism, "byte comparison of repeated runs"},
  };
  return e;
}

const ExperimentSpec* find_experiment(const std::string& id) {
  for (const auto& e : experiments())
    if (e.id == id) return &e;
  return nullptr;
}

Report run_experiment(const Json& config, const RunContext& ctx) {
  if (!config.is_object()) throw UsageError("config: experiment entry must be an object");
  if (!config.contains("experiment") || !config["experiment"].is_string())
    throw UsageError("config: missing string key 'experiment'");
  const auto id = config["experiment"].get<std::string>();
  const auto* spec = find_experiment(id);
  if (!spec) throw UsageError("config: unknown experiment '" + id + "'");
  const Params p(config, spec->keys);
  const auto name = p.str("name", id);
  if (name.empty() || name.find_first_of("/\\") != std::string::npos)
    throw UsageError("config: invalid name '" + name + "'");
  Report r = spec->run(p, ctx);
  r.experiment = id;
  r.name = name;
  r.config = config;
  return r;
}

}  // namespace orlicz::cli
