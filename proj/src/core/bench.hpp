#pragma once

#include "core/datagen.hpp"
#include "core/fgm.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace nspsd {

enum class BenchSolver {
  // Reduction, closed forms and FGM on the diagonal subproblem.
  an_fgm,
  // FGM on the full problem from the scaled identity, fixed iteration budget.
  fgm,
};

const char* to_string(BenchSolver s);
BenchSolver parse_bench_solver(const std::string& name);

struct BenchOptions {
  SolveOptions solve;
  std::vector<BenchSolver> solvers{BenchSolver::an_fgm};
  std::size_t fgm_iterations = 10000;
  // Trials of a scenario run on this many threads; instances do not depend on it.
  std::size_t threads = 1;
};

struct BenchRow {
  std::string scenario;
  std::string solver;
  // Relative error 100 ||A X - B||_F / ||B||_F; sample statistics over trials.
  double rel_err_mean = 0.0;
  double rel_err_std = 0.0;
  double time_mean = 0.0;
  double time_std = 0.0;
  std::size_t trials_ok = 0;
  std::size_t trials_failed = 0;
  std::vector<std::string> failures;
};

struct TrialOutcome {
  std::optional<double> rel_err_percent;
  double seconds = 0.0;
  std::string error;
};

TrialOutcome run_trial(const Scenario& s, std::size_t trial, BenchSolver solver,
                       const BenchOptions& opts);

std::vector<BenchRow> run_bench(const std::vector<Scenario>& scenarios, const BenchOptions& opts);

// Mean and sample standard deviation (n - 1 denominator; 0 for one sample).
std::pair<double, double> mean_and_std(const std::vector<double>& v);

std::string bench_csv(const std::vector<BenchRow>& rows);
std::string bench_json(const std::vector<BenchRow>& rows);

// Published mean relative errors (percent) at max_dim 60, 20 trials.
struct ReferenceErrors {
  const char* scenario;
  double sdpt3;
  double fgm;
  double an_fgm;
};
const std::vector<ReferenceErrors>& reference_errors();

}  // namespace nspsd
