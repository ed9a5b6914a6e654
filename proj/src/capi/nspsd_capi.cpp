#include "nspsd/nspsd.h"

#include "core/bench.hpp"
#include "core/complex_bridge.hpp"
#include "core/datagen.hpp"
#include "core/error.hpp"
#include "core/fgm.hpp"
#include "core/matrix_io.hpp"
#include "core/report.hpp"

#include <cmath>
#include <fstream>
#include <memory>
#include <new>
#include <sstream>
#include <string>
#include <vector>

struct nspsd_matrix {
  nspsd::MatrixData data;
};

struct nspsd_options {
  nspsd::SolveOptions opts;
};

struct nspsd_result {
  nspsd_matrix a;
  nspsd::Solution meta;
  nspsd::SolveReport report;
  std::string json;
};

struct nspsd_bench {
  std::vector<nspsd::BenchRow> rows;
  std::string csv;
  std::string json;
};

namespace {

thread_local std::string g_last_error;

nspsd_status to_status(nspsd::ErrorCode code) {
  using nspsd::ErrorCode;
  switch (code) {
    case ErrorCode::invalid_argument: return NSPSD_INVALID_ARGUMENT;
    case ErrorCode::dimension_mismatch: return NSPSD_DIMENSION_MISMATCH;
    case ErrorCode::factorization_failure: return NSPSD_FACTORIZATION_FAILURE;
    case ErrorCode::degenerate_problem: return NSPSD_DEGENERATE_PROBLEM;
    case ErrorCode::contract_violation: return NSPSD_CONTRACT_VIOLATION;
    case ErrorCode::unsupported_shape: return NSPSD_UNSUPPORTED_SHAPE;
    case ErrorCode::parse_error: return NSPSD_PARSE_ERROR;
    case ErrorCode::io_error: return NSPSD_IO_ERROR;
  }
  return NSPSD_INTERNAL_ERROR;
}

nspsd_status set_error(nspsd_status status, const std::string& msg) {
  g_last_error = msg;
  return status;
}

// Runs f, translating exceptions into status codes.
template <typename F>
nspsd_status guarded(F&& f) {
  try {
    g_last_error.clear();
    f();
    return NSPSD_OK;
  } catch (const nspsd::Error& e) {
    return set_error(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(NSPSD_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return set_error(NSPSD_INTERNAL_ERROR, e.what());
  }
}

void require(bool cond, const char* msg) {
  if (!cond) nspsd::fail(nspsd::ErrorCode::invalid_argument, msg);
}

nspsd_matrix* wrap(nspsd::MatrixData d) { return new nspsd_matrix{std::move(d)}; }

nspsd::MatrixData real_data(const nspsd::Matrix& m) {
  nspsd::MatrixData d;
  d.re = m;
  return d;
}

nspsd::MatrixData complex_data(const nspsd::ComplexDense& z) {
  nspsd::MatrixData d;
  d.is_complex = true;
  d.re = z.re;
  d.im = z.im;
  return d;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

extern "C" {

const char* nspsd_version(void) { return "1.0.0"; }

const char* nspsd_status_string(nspsd_status status) {
  switch (status) {
    case NSPSD_OK: return "ok";
    case NSPSD_INVALID_ARGUMENT: return "invalid argument";
    case NSPSD_DIMENSION_MISMATCH: return "dimension mismatch";
    case NSPSD_PARSE_ERROR: return "parse error";
    case NSPSD_IO_ERROR: return "i/o error";
    case NSPSD_FACTORIZATION_FAILURE: return "factorization failure";
    case NSPSD_UNSUPPORTED_SHAPE: return "unsupported shape";
    case NSPSD_CONTRACT_VIOLATION: return "contract violation";
    case NSPSD_DEGENERATE_PROBLEM: return "degenerate problem";
    case NSPSD_INTERNAL_ERROR: return "internal error";
  }
  return "unknown status";
}

const char* nspsd_last_error(void) { return g_last_error.c_str(); }

nspsd_status nspsd_matrix_create(size_t rows, size_t cols, int is_complex, nspsd_matrix** out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is null");
    nspsd::MatrixData d;
    d.is_complex = is_complex != 0;
    d.re = nspsd::Matrix::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    if (d.is_complex) d.im = d.re;
    *out = wrap(std::move(d));
  });
}

nspsd_status nspsd_matrix_from_rowmajor(size_t rows, size_t cols, const double* real,
                                        const double* imag, nspsd_matrix** out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is null");
    require(real != nullptr || rows == 0 || cols == 0, "real data pointer is null");
    using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    const auto r = static_cast<Eigen::Index>(rows);
    const auto c = static_cast<Eigen::Index>(cols);
    nspsd::MatrixData d;
    d.re = (rows != 0 && cols != 0) ? nspsd::Matrix(Eigen::Map<const RowMajor>(real, r, c))
                       : nspsd::Matrix(r, c);
    if (imag != nullptr) {
      d.is_complex = true;
      d.im = (rows != 0 && cols != 0) ? nspsd::Matrix(Eigen::Map<const RowMajor>(imag, r, c))
                         : nspsd::Matrix(r, c);
    }
    *out = wrap(std::move(d));
  });
}

void nspsd_matrix_destroy(nspsd_matrix* m) { delete m; }

size_t nspsd_matrix_rows(const nspsd_matrix* m) {
  return m ? static_cast<size_t>(m->data.re.rows()) : 0;
}

size_t nspsd_matrix_cols(const nspsd_matrix* m) {
  return m ? static_cast<size_t>(m->data.re.cols()) : 0;
}

int nspsd_matrix_is_complex(const nspsd_matrix* m) { return m && m->data.is_complex ? 1 : 0; }

nspsd_status nspsd_matrix_get(const nspsd_matrix* m, size_t i, size_t j, double* real,
                              double* imag) {
  return guarded([&] {
    require(m != nullptr, "matrix handle is null");
    if (i >= nspsd_matrix_rows(m) || j >= nspsd_matrix_cols(m)) {
      nspsd::fail(nspsd::ErrorCode::dimension_mismatch,
                  "index (" + std::to_string(i) + ", " + std::to_string(j) + ") outside " +
                      nspsd::shape_string(m->data.re));
    }
    const auto r = static_cast<Eigen::Index>(i);
    const auto c = static_cast<Eigen::Index>(j);
    if (real) *real = m->data.re(r, c);
    if (imag) *imag = m->data.is_complex ? m->data.im(r, c) : 0.0;
  });
}

nspsd_status nspsd_matrix_set(nspsd_matrix* m, size_t i, size_t j, double real, double imag) {
  return guarded([&] {
    require(m != nullptr, "matrix handle is null");
    if (i >= nspsd_matrix_rows(m) || j >= nspsd_matrix_cols(m)) {
      nspsd::fail(nspsd::ErrorCode::dimension_mismatch,
                  "index (" + std::to_string(i) + ", " + std::to_string(j) + ") outside " +
                      nspsd::shape_string(m->data.re));
    }
    require(m->data.is_complex || imag == 0.0, "nonzero imaginary part for a real matrix");
    const auto r = static_cast<Eigen::Index>(i);
    const auto c = static_cast<Eigen::Index>(j);
    m->data.re(r, c) = real;
    if (m->data.is_complex) m->data.im(r, c) = imag;
  });
}

nspsd_status nspsd_matrix_read(const char* path, nspsd_matrix** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null path or output pointer");
    *out = wrap(nspsd::read_matrix(path));
  });
}

nspsd_status nspsd_matrix_write(const nspsd_matrix* m, const char* path) {
  return guarded([&] {
    require(m != nullptr && path != nullptr, "null matrix handle or path");
    if (m->data.is_complex) {
      nspsd::write_matrix(m->data.as_complex(), path);
    } else {
      nspsd::write_matrix(m->data.re, path);
    }
  });
}

nspsd_status nspsd_options_create(nspsd_options** out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is null");
    *out = new nspsd_options{};
  });
}

void nspsd_options_destroy(nspsd_options* o) { delete o; }

nspsd_status nspsd_options_set_delta(nspsd_options* o, double delta) {
  return guarded([&] {
    require(o != nullptr, "options handle is null");
    require(delta > 0.0, "delta must be positive");
    o->opts.delta = delta;
  });
}

nspsd_status nspsd_options_set_epsilon(nspsd_options* o, double epsilon) {
  return guarded([&] {
    require(o != nullptr, "options handle is null");
    require(!std::isnan(epsilon), "epsilon must be a number");
    o->opts.epsilon = epsilon;
  });
}

nspsd_status nspsd_options_set_max_iterations(nspsd_options* o, size_t n) {
  return guarded([&] {
    require(o != nullptr, "options handle is null");
    require(n >= 1, "max_iterations must be at least 1");
    o->opts.max_iterations = n;
  });
}

nspsd_status nspsd_options_set_max_seconds(nspsd_options* o, double seconds) {
  return guarded([&] {
    require(o != nullptr, "options handle is null");
    if (seconds > 0.0) {
      o->opts.max_seconds = seconds;
    } else {
      o->opts.max_seconds.reset();
    }
  });
}

nspsd_status nspsd_options_set_rank_tolerance(nspsd_options* o, double tol) {
  return guarded([&] {
    require(o != nullptr, "options handle is null");
    if (tol >= 0.0) {
      o->opts.rank_tolerance = tol;
    } else {
      o->opts.rank_tolerance.reset();
    }
  });
}

nspsd_status nspsd_options_set_init(nspsd_options* o, nspsd_init init) {
  return guarded([&] {
    require(o != nullptr, "options handle is null");
    switch (init) {
      case NSPSD_INIT_BLOCK_DIAGONAL: o->opts.init = nspsd::InitStrategy::block_diagonal; break;
      case NSPSD_INIT_SCALED_IDENTITY: o->opts.init = nspsd::InitStrategy::scaled_identity; break;
      case NSPSD_INIT_USER: o->opts.init = nspsd::InitStrategy::user; break;
      default: require(false, "unknown initialization strategy");
    }
  });
}

nspsd_status nspsd_options_set_initial(nspsd_options* o, const nspsd_matrix* a0) {
  return guarded([&] {
    require(o != nullptr && a0 != nullptr, "null options or matrix handle");
    require(!a0->data.is_complex, "initial matrix must be real");
    o->opts.initial = a0->data.re;
    o->opts.init = nspsd::InitStrategy::user;
  });
}

nspsd_status nspsd_options_set_completion(nspsd_options* o, nspsd_completion c) {
  return guarded([&] {
    require(o != nullptr, "options handle is null");
    switch (c) {
      case NSPSD_COMPLETION_EXACT_SKEW: o->opts.completion = nspsd::Completion::exact_skew; break;
      case NSPSD_COMPLETION_EPSILON_FAMILY:
        o->opts.completion = nspsd::Completion::epsilon_family;
        break;
      default: require(false, "unknown completion");
    }
  });
}

nspsd_status nspsd_options_set_closed_forms(nspsd_options* o, int enabled) {
  return guarded([&] {
    require(o != nullptr, "options handle is null");
    o->opts.closed_forms = enabled != 0;
  });
}

nspsd_status nspsd_solve(const nspsd_matrix* x, const nspsd_matrix* b, const nspsd_options* opts,
                         nspsd_result** out) {
  return guarded([&] {
    require(x != nullptr && b != nullptr && out != nullptr, "null matrix handle or output pointer");
    const nspsd::SolveOptions so = opts ? opts->opts : nspsd::SolveOptions{};
    auto res = std::make_unique<nspsd_result>();
    if (x->data.is_complex || b->data.is_complex) {
      const nspsd::ComplexDense zb = b->data.as_complex();
      const nspsd::ComplexSolution sol = nspsd::solve_complex(x->data.as_complex(), zb, so);
      res->a.data = complex_data(sol.a);
      res->meta = sol.meta;
      res->report = nspsd::make_report(sol, zb);
    } else {
      res->meta = nspsd::solve(x->data.re, b->data.re, so);
      res->a.data = real_data(res->meta.a);
      res->report = nspsd::make_report(res->meta, b->data.re);
    }
    res->json = nspsd::report_json(res->report);
    *out = res.release();
  });
}

void nspsd_result_destroy(nspsd_result* r) { delete r; }

const nspsd_matrix* nspsd_result_matrix(const nspsd_result* r) { return r ? &r->a : nullptr; }

double nspsd_result_objective(const nspsd_result* r) { return r ? r->report.objective : 0.0; }

double nspsd_result_relative_error_percent(const nspsd_result* r) {
  return r ? r->report.relative_error_percent : 0.0;
}

const char* nspsd_result_attained(const nspsd_result* r) {
  return r ? r->report.attained.c_str() : "";
}

int nspsd_result_infimum_attained(const nspsd_result* r) {
  return r && r->meta.infimum_attained ? 1 : 0;
}

int nspsd_result_epsilon(const nspsd_result* r, double* epsilon) {
  if (!r || !r->report.epsilon_used) return 0;
  if (epsilon) *epsilon = *r->report.epsilon_used;
  return 1;
}

size_t nspsd_result_rank(const nspsd_result* r) { return r ? r->report.rank_of_x : 0; }

size_t nspsd_result_iterations(const nspsd_result* r) { return r ? r->report.iterations : 0; }

double nspsd_result_runtime_seconds(const nspsd_result* r) {
  return r ? r->report.runtime_seconds : 0.0;
}

int nspsd_result_diagnostic(const nspsd_result* r, const char* name, double* value) {
  if (!r || !name) return 0;
  const auto it = r->meta.diagnostics.find(name);
  if (it == r->meta.diagnostics.end()) return 0;
  if (value) *value = it->second;
  return 1;
}

size_t nspsd_result_eigenvalue_count(const nspsd_result* r) {
  return r ? r->report.eigenvalues_of_symmetric_part.size() : 0;
}

double nspsd_result_eigenvalue(const nspsd_result* r, size_t k) {
  if (!r || k >= r->report.eigenvalues_of_symmetric_part.size()) return 0.0;
  return r->report.eigenvalues_of_symmetric_part[k];
}

const char* nspsd_result_report_json(const nspsd_result* r) { return r ? r->json.c_str() : ""; }

nspsd_status nspsd_result_write_report(const nspsd_result* r, const char* path) {
  return guarded([&] {
    require(r != nullptr && path != nullptr, "null result handle or path");
    std::ofstream out(path, std::ios::binary);
    if (!out) nspsd::fail(nspsd::ErrorCode::io_error, std::string("cannot open '") + path + "' for writing");
    out << r->json;
    if (!out) nspsd::fail(nspsd::ErrorCode::io_error, std::string("failed writing '") + path + "'");
  });
}

nspsd_status nspsd_generate(const char* regime, const char* shape, size_t max_dim, uint64_t seed,
                            uint64_t trial, nspsd_matrix** x, nspsd_matrix** b) {
  return guarded([&] {
    require(regime && shape && x && b, "null argument");
    nspsd::Scenario s;
    s.regime = nspsd::parse_regime(regime);
    s.shape = nspsd::parse_shape(shape);
    s.max_dim = static_cast<int>(max_dim);
    s.seed = seed;
    const nspsd::Instance inst = nspsd::gen_instance(s, trial);
    auto xm = std::unique_ptr<nspsd_matrix>(wrap(real_data(inst.x)));
    *b = wrap(real_data(inst.b));
    *x = xm.release();
  });
}

nspsd_status nspsd_builtin_example(const char* name, nspsd_matrix** x, nspsd_matrix** b) {
  return guarded([&] {
    require(name && x && b, "null argument");
    const std::string n = name;
    if (n == "compliance") {
      const nspsd::Instance inst = nspsd::compliance_example();
      auto xm = std::unique_ptr<nspsd_matrix>(wrap(real_data(inst.x)));
      *b = wrap(real_data(inst.b));
      *x = xm.release();
    } else if (n == "complex") {
      const nspsd::ComplexInstance inst = nspsd::complex_example();
      auto xm = std::unique_ptr<nspsd_matrix>(wrap(complex_data(inst.x)));
      *b = wrap(complex_data(inst.b));
      *x = xm.release();
    } else {
      nspsd::fail(nspsd::ErrorCode::invalid_argument,
                  "unknown example '" + n + "' (expected compliance or complex)");
    }
  });
}

nspsd_status nspsd_bench_run(const char* scenarios, const char* solvers, size_t max_dim,
                             size_t trials, uint64_t seed, size_t threads,
                             const nspsd_options* opts, nspsd_bench** out) {
  return guarded([&] {
    require(scenarios && solvers && out, "null argument");
    std::vector<nspsd::Scenario> list;
    const std::string sc = scenarios;
    if (sc == "all") {
      list = nspsd::all_scenarios(static_cast<int>(max_dim), static_cast<int>(trials), seed);
    } else {
      for (const std::string& id : split_list(sc)) {
        nspsd::Scenario s = nspsd::parse_scenario(id);
        s.max_dim = static_cast<int>(max_dim);
        s.trials = static_cast<int>(trials);
        s.seed = seed;
        list.push_back(s);
      }
    }
    require(!list.empty(), "no scenarios selected");
    nspsd::BenchOptions bo;
    if (opts) bo.solve = opts->opts;
    bo.threads = threads;
    bo.solvers.clear();
    for (const std::string& name : split_list(solvers)) {
      bo.solvers.push_back(nspsd::parse_bench_solver(name));
    }
    require(!bo.solvers.empty(), "no solvers selected");
    auto bench = std::make_unique<nspsd_bench>();
    bench->rows = nspsd::run_bench(list, bo);
    bench->csv = nspsd::bench_csv(bench->rows);
    bench->json = nspsd::bench_json(bench->rows);
    *out = bench.release();
  });
}

void nspsd_bench_destroy(nspsd_bench* b) { delete b; }

size_t nspsd_bench_row_count(const nspsd_bench* b) { return b ? b->rows.size() : 0; }

const char* nspsd_bench_row_scenario(const nspsd_bench* b, size_t row) {
  return b && row < b->rows.size() ? b->rows[row].scenario.c_str() : "";
}

const char* nspsd_bench_row_solver(const nspsd_bench* b, size_t row) {
  return b && row < b->rows.size() ? b->rows[row].solver.c_str() : "";
}

nspsd_status nspsd_bench_row_stats(const nspsd_bench* b, size_t row, double* rel_err_mean,
                                   double* rel_err_std, double* time_mean, double* time_std) {
  return guarded([&] {
    require(b != nullptr, "bench handle is null");
    if (row >= b->rows.size()) {
      nspsd::fail(nspsd::ErrorCode::dimension_mismatch,
                  "row " + std::to_string(row) + " out of range");
    }
    const nspsd::BenchRow& r = b->rows[row];
    if (rel_err_mean) *rel_err_mean = r.rel_err_mean;
    if (rel_err_std) *rel_err_std = r.rel_err_std;
    if (time_mean) *time_mean = r.time_mean;
    if (time_std) *time_std = r.time_std;
  });
}

size_t nspsd_bench_row_failures(const nspsd_bench* b, size_t row) {
  return b && row < b->rows.size() ? b->rows[row].trials_failed : 0;
}

const char* nspsd_bench_csv(const nspsd_bench* b) { return b ? b->csv.c_str() : ""; }

const char* nspsd_bench_json(const nspsd_bench* b) { return b ? b->json.c_str() : ""; }

}  // extern "C"
