#include "core/bench.hpp"

#include "core/error.hpp"

#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>
#include <thread>

namespace nspsd {

const char* to_string(BenchSolver s) {
  switch (s) {
    case BenchSolver::an_fgm: return "an_fgm";
    case BenchSolver::fgm: return "fgm";
  }
  return "unknown";
}

BenchSolver parse_bench_solver(const std::string& name) {
  for (BenchSolver s : {BenchSolver::an_fgm, BenchSolver::fgm}) {
    if (name == to_string(s)) return s;
  }
  fail(ErrorCode::invalid_argument, "unknown solver '" + name + "' (expected an_fgm or fgm)");
}

TrialOutcome run_trial(const Scenario& s, std::size_t trial, BenchSolver solver,
                       const BenchOptions& opts) {
  TrialOutcome out;
  try {
    const Instance inst = gen_instance(s, trial);
    const auto t0 = std::chrono::steady_clock::now();
    double objective = 0.0;
    if (solver == BenchSolver::an_fgm) {
      objective = solve(inst.x, inst.b, opts.solve).objective;
    } else {
      SolveOptions fopts = opts.solve;
      fopts.max_iterations = opts.fgm_iterations;
      const FgmResult res = fgm(inst.x, inst.b, init_scaled_identity(inst.x, inst.b), fopts);
      objective = (res.a * inst.x - inst.b).norm();
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.rel_err_percent = 100.0 * objective / inst.b.norm();
  } catch (const std::exception& e) {
    out.error = "trial " + std::to_string(trial) + ": " + e.what();
  }
  return out;
}

std::pair<double, double> mean_and_std(const std::vector<double>& v) {
  if (v.empty()) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return {nan, nan};
  }
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  if (v.size() == 1) return {mean, 0.0};
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / static_cast<double>(v.size() - 1))};
}

std::vector<BenchRow> run_bench(const std::vector<Scenario>& scenarios, const BenchOptions& opts) {
  opts.solve.validate();
  std::vector<BenchRow> rows;
  for (const Scenario& s : scenarios) {
    s.validate();
    for (BenchSolver solver : opts.solvers) {
      const auto trials = static_cast<std::size_t>(s.trials);
      std::vector<TrialOutcome> outcomes(trials);
      std::atomic<std::size_t> next{0};
      auto worker = [&] {
        for (std::size_t t = next++; t < trials; t = next++) {
          outcomes[t] = run_trial(s, t, solver, opts);
        }
      };
      const std::size_t n_threads = std::max<std::size_t>(1, std::min(opts.threads, trials));
      if (n_threads == 1) {
        worker();
      } else {
        std::vector<std::thread> pool;
        for (std::size_t i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
      }

      BenchRow row;
      row.scenario = s.id();
      row.solver = to_string(solver);
      std::vector<double> errs, times;
      for (const TrialOutcome& o : outcomes) {
        if (o.rel_err_percent) {
          errs.push_back(*o.rel_err_percent);
          times.push_back(o.seconds);
        } else {
          row.failures.push_back(o.error);
        }
      }
      row.trials_ok = errs.size();
      row.trials_failed = row.failures.size();
      std::tie(row.rel_err_mean, row.rel_err_std) = mean_and_std(errs);
      std::tie(row.time_mean, row.time_std) = mean_and_std(times);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream os;
  os << "scenario,solver,rel_err_mean,rel_err_std,time_mean,time_std\n";
  os << std::setprecision(10);
  for (const BenchRow& r : rows) {
    os << r.scenario << ',' << r.solver << ',' << r.rel_err_mean << ',' << r.rel_err_std << ','
       << r.time_mean << ',' << r.time_std << '\n';
  }
  return os.str();
}

std::string bench_json(const std::vector<BenchRow>& rows) {
  auto num = [](double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(); };
  nlohmann::json arr = nlohmann::json::array();
  for (const BenchRow& r : rows) {
    arr.push_back({{"scenario", r.scenario},
                   {"solver", r.solver},
                   {"rel_err_mean", num(r.rel_err_mean)},
                   {"rel_err_std", num(r.rel_err_std)},
                   {"time_mean", num(r.time_mean)},
                   {"time_std", num(r.time_std)},
                   {"trials_ok", r.trials_ok},
                   {"trials_failed", r.trials_failed},
                   {"failures", r.failures}});
  }
  return arr.dump(2) + "\n";
}

const std::vector<ReferenceErrors>& reference_errors() {
  static const std::vector<ReferenceErrors> table = {
      {"well_square", 18.37, 18.37, 18.37},   {"well_wide", 26.56, 26.56, 26.56},
      {"well_tall", 17.43, 17.43, 17.43},     {"ill_square", 19.41, 20.31, 20.49},
      {"ill_wide", 27.00, 27.63, 27.71},      {"ill_tall", 20.27, 24.02, 20.16},
      {"rankdef_square", 21.79, 21.79, 21.79}, {"rankdef_wide", 27.57, 27.57, 27.57},
      {"rankdef_tall", 26.17, 26.17, 26.17},
  };
  return table;
}

}  // namespace nspsd
