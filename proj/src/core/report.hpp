#pragma once

#include "core/complex_bridge.hpp"
#include "core/reduction.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace nspsd {

struct SolveReport {
  double objective = 0.0;
  double relative_error_percent = 0.0;
  std::string attained;
  std::optional<double> epsilon_used;
  std::size_t rank_of_x = 0;
  std::size_t iterations = 0;
  double runtime_seconds = 0.0;
  // Of A + A^T (A + A^* for complex A), nonincreasing.
  std::vector<double> eigenvalues_of_symmetric_part;
  // Set only for rank-deficient complex solves.
  std::optional<double> lower_bound;
  std::optional<double> upper_bound;
};

SolveReport make_report(const Solution& sol, const Matrix& b);
SolveReport make_report(const ComplexSolution& sol, const ComplexDense& b);

std::string report_json(const SolveReport& r);

}  // namespace nspsd
