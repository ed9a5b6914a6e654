// nspsd: command-line front end over the C API.

#include "nspsd/nspsd.h"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSolver = 1;
constexpr int kExitUsage = 2;

// Failure carrying the exit code it maps to.
struct CliFailure {
  int exit_code;
  std::string message;
};

int exit_code_for(nspsd_status s) {
  switch (s) {
    case NSPSD_INVALID_ARGUMENT:
    case NSPSD_PARSE_ERROR:
    case NSPSD_IO_ERROR:
      return kExitUsage;
    default:
      return kExitSolver;
  }
}

void check(nspsd_status s) {
  if (s != NSPSD_OK) throw CliFailure{exit_code_for(s), nspsd_last_error()};
}

struct MatrixDeleter {
  void operator()(nspsd_matrix* m) const { nspsd_matrix_destroy(m); }
};
struct OptionsDeleter {
  void operator()(nspsd_options* o) const { nspsd_options_destroy(o); }
};
struct ResultDeleter {
  void operator()(nspsd_result* r) const { nspsd_result_destroy(r); }
};
struct BenchDeleter {
  void operator()(nspsd_bench* b) const { nspsd_bench_destroy(b); }
};
using MatrixPtr = std::unique_ptr<nspsd_matrix, MatrixDeleter>;
using OptionsPtr = std::unique_ptr<nspsd_options, OptionsDeleter>;
using ResultPtr = std::unique_ptr<nspsd_result, ResultDeleter>;
using BenchPtr = std::unique_ptr<nspsd_bench, BenchDeleter>;

MatrixPtr read(const std::string& path) {
  nspsd_matrix* m = nullptr;
  check(nspsd_matrix_read(path.c_str(), &m));
  return MatrixPtr(m);
}

void write(const nspsd_matrix* m, const std::string& path) {
  check(nspsd_matrix_write(m, path.c_str()));
}

MatrixPtr to_complex(const nspsd_matrix* m) {
  const size_t rows = nspsd_matrix_rows(m), cols = nspsd_matrix_cols(m);
  nspsd_matrix* z = nullptr;
  check(nspsd_matrix_create(rows, cols, 1, &z));
  MatrixPtr out(z);
  for (size_t i = 0; i < rows; ++i) {
    for (size_t j = 0; j < cols; ++j) {
      double re = 0.0, im = 0.0;
      check(nspsd_matrix_get(m, i, j, &re, &im));
      check(nspsd_matrix_set(z, i, j, re, im));
    }
  }
  return out;
}

void write_text(const std::string& text, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw CliFailure{kExitUsage, "cannot write '" + path + "'"};
}

struct SolveArgs {
  std::string x, b, out, report;
  bool complex = false;
  std::optional<double> delta, epsilon, max_seconds;
  std::optional<size_t> max_iter;
  std::string init = "block";
  std::string completion = "exact";
};

int run_solve(const SolveArgs& a) {
  MatrixPtr x = read(a.x);
  MatrixPtr b = read(a.b);
  if (a.complex) {
    if (!nspsd_matrix_is_complex(x.get())) x = to_complex(x.get());
    if (!nspsd_matrix_is_complex(b.get())) b = to_complex(b.get());
  }
  nspsd_options* raw = nullptr;
  check(nspsd_options_create(&raw));
  OptionsPtr opts(raw);
  if (a.delta) check(nspsd_options_set_delta(raw, *a.delta));
  if (a.epsilon) check(nspsd_options_set_epsilon(raw, *a.epsilon));
  if (a.max_iter) check(nspsd_options_set_max_iterations(raw, *a.max_iter));
  if (a.max_seconds) check(nspsd_options_set_max_seconds(raw, *a.max_seconds));
  check(nspsd_options_set_init(raw, a.init == "scaled" ? NSPSD_INIT_SCALED_IDENTITY
                                                       : NSPSD_INIT_BLOCK_DIAGONAL));
  check(nspsd_options_set_completion(raw, a.completion == "epsilon"
                                              ? NSPSD_COMPLETION_EPSILON_FAMILY
                                              : NSPSD_COMPLETION_EXACT_SKEW));
  nspsd_result* res = nullptr;
  check(nspsd_solve(x.get(), b.get(), raw, &res));
  ResultPtr result(res);
  if (!a.out.empty()) write(nspsd_result_matrix(res), a.out);
  if (!a.report.empty()) check(nspsd_result_write_report(res, a.report.c_str()));
  std::cout << nspsd_result_report_json(res);
  return kExitOk;
}

struct GenArgs {
  std::string regime, shape, prefix;
  size_t max_dim = 60;
  uint64_t seed = 0;
  uint64_t trial = 0;
};

int run_gen(const GenArgs& a) {
  nspsd_matrix *x = nullptr, *b = nullptr;
  check(nspsd_generate(a.regime.c_str(), a.shape.c_str(), a.max_dim, a.seed, a.trial, &x, &b));
  MatrixPtr xp(x), bp(b);
  write(x, a.prefix + "_x.mtx");
  write(b, a.prefix + "_b.mtx");
  std::cout << a.prefix << "_x.mtx\n" << a.prefix << "_b.mtx\n";
  return kExitOk;
}

struct BenchArgs {
  std::string scenarios = "all";
  std::string solvers = "an_fgm";
  size_t trials = 20;
  size_t max_dim = 60;
  uint64_t seed = 0;
  size_t threads = 1;
  std::optional<size_t> max_iter;
  std::string out, json;
};

int run_bench(const BenchArgs& a) {
  nspsd_options* raw = nullptr;
  check(nspsd_options_create(&raw));
  OptionsPtr opts(raw);
  if (a.max_iter) check(nspsd_options_set_max_iterations(raw, *a.max_iter));
  nspsd_bench* bench = nullptr;
  check(nspsd_bench_run(a.scenarios.c_str(), a.solvers.c_str(), a.max_dim, a.trials, a.seed,
                        a.threads, raw, &bench));
  BenchPtr holder(bench);
  std::string json_path = a.json;
  if (!a.out.empty()) {
    write_text(nspsd_bench_csv(bench), a.out);
    if (json_path.empty()) {
      const auto dot = a.out.rfind(".csv");
      json_path = (dot == std::string::npos ? a.out : a.out.substr(0, dot)) + ".json";
    }
  }
  if (!json_path.empty()) write_text(nspsd_bench_json(bench), json_path);
  std::cout << nspsd_bench_csv(bench);
  for (size_t r = 0; r < nspsd_bench_row_count(bench); ++r) {
    if (const size_t f = nspsd_bench_row_failures(bench, r)) {
      std::cerr << "nspsd: warning: " << nspsd_bench_row_scenario(bench, r) << " had " << f
                << " failed trial(s)\n";
    }
  }
  return kExitOk;
}

struct ExampleArgs {
  std::string name, prefix;
};

int run_example(const ExampleArgs& a) {
  nspsd_matrix *x = nullptr, *b = nullptr;
  check(nspsd_builtin_example(a.name.c_str(), &x, &b));
  MatrixPtr xp(x), bp(b);
  write(x, a.prefix + "_x.mtx");
  write(b, a.prefix + "_b.mtx");
  std::cout << a.prefix << "_x.mtx\n" << a.prefix << "_b.mtx\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Non-symmetric PSD Procrustes solver: min ||A X - B||_F with A + A^T PSD"};
  app.set_version_flag("--version", std::string(nspsd_version()));
  app.require_subcommand(1);

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "Solve for A given X and B");
  solve->add_option("--x", sa.x, "X matrix file (.mtx or .csv)")->required()->check(CLI::ExistingFile);
  solve->add_option("--b", sa.b, "B matrix file (.mtx or .csv)")->required()->check(CLI::ExistingFile);
  solve->add_flag("--complex", sa.complex, "Treat the inputs as complex");
  solve->add_option("--out", sa.out, "Write A to this file");
  solve->add_option("--report", sa.report, "Write the JSON report to this file");
  solve->add_option("--delta", sa.delta, "Relative step tolerance (default 1e-6)");
  solve->add_option("--epsilon", sa.epsilon, "Suboptimality budget for epsilon-family lifts");
  solve->add_option("--max-iter", sa.max_iter, "Iteration cap (default 10000)");
  solve->add_option("--max-seconds", sa.max_seconds, "Wall-clock cap for the iterations");
  solve->add_option("--init", sa.init, "Initialization")
      ->check(CLI::IsMember({"scaled", "block"}));
  solve->add_option("--completion", sa.completion, "Lift completion when H11 is singular")
      ->check(CLI::IsMember({"exact", "epsilon"}));

  GenArgs ga;
  auto* gen = app.add_subcommand("gen", "Generate a synthetic (X, B) pair");
  gen->add_option("--regime", ga.regime, "Conditioning regime")
      ->required()
      ->check(CLI::IsMember({"well", "ill", "rankdef"}));
  gen->add_option("--shape", ga.shape, "square (n = m), wide (m = 2n) or tall (n = 2m)")
      ->required()
      ->check(CLI::IsMember({"square", "wide", "tall"}));
  gen->add_option("--max-dim", ga.max_dim, "max(n, m)")->check(CLI::Range(2, 100000));
  gen->add_option("--seed", ga.seed, "Seed");
  gen->add_option("--trial", ga.trial, "Trial index");
  gen->add_option("--out-prefix", ga.prefix, "Writes <prefix>_x.mtx and <prefix>_b.mtx")
      ->required();

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "Run the synthetic benchmark");
  bench->add_option("--scenarios", ba.scenarios,
                    "all, or comma-separated <regime>_<shape> ids such as well_square");
  bench->add_option("--solvers", ba.solvers, "an_fgm, fgm or an_fgm,fgm");
  bench->add_option("--trials", ba.trials, "Trials per scenario")->check(CLI::PositiveNumber);
  bench->add_option("--max-dim", ba.max_dim, "max(n, m)")->check(CLI::Range(2, 100000));
  bench->add_option("--seed", ba.seed, "Seed");
  bench->add_option("--threads", ba.threads, "Worker threads per scenario")
      ->check(CLI::PositiveNumber);
  bench->add_option("--max-iter", ba.max_iter, "Iteration cap per solve");
  bench->add_option("--out", ba.out, "CSV output; a JSON mirror is written next to it");
  bench->add_option("--json", ba.json, "JSON output path");

  ExampleArgs ea;
  auto* example = app.add_subcommand("example", "Write a bundled example pair");
  example->add_option("--name", ea.name, "compliance or complex")
      ->required()
      ->check(CLI::IsMember({"compliance", "complex"}));
  example->add_option("--out-prefix", ea.prefix, "Writes <prefix>_x.mtx and <prefix>_b.mtx")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "nspsd: usage error: " << e.what() << " (run with --help)\n";
    return kExitUsage;
  }

  try {
    if (*solve) return run_solve(sa);
    if (*gen) return run_gen(ga);
    if (*bench) return run_bench(ba);
    if (*example) return run_example(ea);
  } catch (const CliFailure& f) {
    std::cerr << "nspsd: error: " << f.message << '\n';
    return f.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "nspsd: error: " << e.what() << '\n';
    return kExitSolver;
  }
  return kExitUsage;
}
