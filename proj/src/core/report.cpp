#include "core/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>

namespace nspsd {

namespace {

double relative_percent(double objective, double b_norm) {
  return b_norm > 0.0 ? 100.0 * objective / b_norm : 0.0;
}

std::vector<double> descending(const Vector& v) {
  std::vector<double> out(v.data(), v.data() + v.size());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

void fill_common(SolveReport& r, const Solution& sol) {
  r.objective = sol.objective;
  r.attained = to_string(sol.attained);
  r.epsilon_used = sol.epsilon;
  r.iterations = sol.iterations;
  if (auto it = sol.diagnostics.find("rank"); it != sol.diagnostics.end()) {
    r.rank_of_x = static_cast<std::size_t>(it->second);
  }
  if (auto it = sol.diagnostics.find("runtime_seconds"); it != sol.diagnostics.end()) {
    r.runtime_seconds = it->second;
  }
}

}  // namespace

SolveReport make_report(const Solution& sol, const Matrix& b) {
  SolveReport r;
  fill_common(r, sol);
  r.relative_error_percent = relative_percent(sol.objective, b.norm());
  r.eigenvalues_of_symmetric_part = descending(sym_eig(sol.a + sol.a.transpose()).eigenvalues);
  return r;
}

SolveReport make_report(const ComplexSolution& sol, const ComplexDense& b) {
  SolveReport r;
  fill_common(r, sol.meta);
  r.relative_error_percent = relative_percent(sol.meta.objective, b.frobenius_norm());
  const Eigen::MatrixXcd a = sol.a.to_eigen();
  const Eigen::MatrixXcd h = a + a.adjoint();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h, Eigen::EigenvaluesOnly);
  r.eigenvalues_of_symmetric_part = descending(eig.eigenvalues());
  r.lower_bound = sol.lower_bound;
  r.upper_bound = sol.upper_bound;
  return r;
}

std::string report_json(const SolveReport& r) {
  nlohmann::ordered_json j;
  j["objective"] = r.objective;
  j["relative_error_percent"] = r.relative_error_percent;
  j["attained"] = r.attained;
  j["epsilon_used"] = r.epsilon_used ? nlohmann::ordered_json(*r.epsilon_used) : nullptr;
  j["rank_of_x"] = r.rank_of_x;
  j["iterations"] = r.iterations;
  j["runtime_seconds"] = r.runtime_seconds;
  j["eigenvalues_of_symmetric_part"] = r.eigenvalues_of_symmetric_part;
  if (r.lower_bound) j["lower_bound"] = *r.lower_bound;
  if (r.upper_bound) j["upper_bound"] = *r.upper_bound;
  return j.dump(2) + "\n";
}

}  // namespace nspsd
