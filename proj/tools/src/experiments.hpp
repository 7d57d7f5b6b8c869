#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "orlicz/bogovskii.hpp"
#include "orlicz/young.hpp"
#include "params.hpp"
#include "report.hpp"

namespace orlicz::cli {

struct RunContext {
  int jobs = 1;                   // threads available to this experiment
  std::filesystem::path base;     // directory that relative paths in the config refer to
};

using Driver = Report (*)(const Params&, const RunContext&);

struct ExperimentSpec {
  std::string id;
  std::vector<std::string> keys;  // accepted besides the common ones
  Driver run;
  std::string summary;
};

const std::vector<ExperimentSpec>& experiments();
const ExperimentSpec* find_experiment(const std::string& id);

// Validates the keys, runs, and stamps name and effective config on the report.
Report run_experiment(const Json& config, const RunContext& ctx);

// drivers for single runs
Report run_young(const Params& p, const RunContext& ctx);
Report run_balance(const Params& p, const RunContext& ctx);
Report run_norm(const Params& p, const RunContext& ctx);
Report run_bogovskii(const Params& p, const RunContext& ctx);
Report run_decomposition(const Params& p, const RunContext& ctx);
Report run_negnorm(const Params& p, const RunContext& ctx);
Report run_fem(const Params& p, const RunContext& ctx);

// acceptance suites, one per shipped config
Report run_young_suite(const Params& p, const RunContext& ctx);
Report run_balance_matrix(const Params& p, const RunContext& ctx);
Report run_norm_suite(const Params& p, const RunContext& ctx);
Report run_bogovskii_suite(const Params& p, const RunContext& ctx);
Report run_negnorm_suite(const Params& p, const RunContext& ctx);
Report run_fem_suite(const Params& p, const RunContext& ctx);
Report run_determinism(const Params& p, const RunContext& ctx);

// max relative gap between A and its double conjugate at log-spaced s in [1e-3, 1e2]
double involution_gap(const YoungFunction& A, int points, Table* table = nullptr);
// min and max of A^-1(r) conj(A)^-1(r) / r at 50 log-spaced r in [1e-4, 1e4]
std::pair<double, double> sandwich_range(const YoungFunction& A);

double median(std::vector<double> v);

struct BogovskiiRun {
  SampledField f;
  BogovskiiField field;
};
// "lshape" goes through the decomposition, anything else is a star domain
BogovskiiRun solve_bogovskii(const std::string& domain, const std::string& fspec, int n, const QuadratureSpec& q,
                             int jobs, const RunContext& ctx);

// relative gap used by the involution checks; equal infinities count as 0
double relative_gap(double a, double b);

// path relative to the config directory unless absolute or a builtin id
std::string resolve(const std::string& spec, const RunContext& ctx);

}  // namespace orlicz::cli
