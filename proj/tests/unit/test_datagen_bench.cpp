#include "core/bench.hpp"
#include "core/datagen.hpp"
#include "core/error.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cmath>
#include <set>
#include <sstream>

using namespace nspsd;

namespace {

Scenario scenario(Regime regime, Shape shape, int max_dim = 60, std::uint64_t seed = 0) {
  Scenario s;
  s.regime = regime;
  s.shape = shape;
  s.max_dim = max_dim;
  s.seed = seed;
  return s;
}

Vector singular_values(const Matrix& x) {
  return Eigen::JacobiSVD<Matrix>(x).singularValues();
}

}  // namespace

TEST(Scenario, ShapesAndIds) {
  EXPECT_EQ(scenario(Regime::well_conditioned, Shape::square).rows(), 60);
  EXPECT_EQ(scenario(Regime::well_conditioned, Shape::square).cols(), 60);
  EXPECT_EQ(scenario(Regime::well_conditioned, Shape::wide).rows(), 30);
  EXPECT_EQ(scenario(Regime::well_conditioned, Shape::wide).cols(), 60);
  EXPECT_EQ(scenario(Regime::well_conditioned, Shape::tall).rows(), 60);
  EXPECT_EQ(scenario(Regime::well_conditioned, Shape::tall).cols(), 30);
  EXPECT_EQ(scenario(Regime::rank_deficient, Shape::tall).id(), "rankdef_tall");
  const Scenario parsed = parse_scenario("ill_wide");
  EXPECT_EQ(parsed.regime, Regime::ill_conditioned);
  EXPECT_EQ(parsed.shape, Shape::wide);
  EXPECT_THROW(parse_scenario("nope_square"), Error);
  EXPECT_THROW(parse_scenario("well"), Error);
}

TEST(Scenario, AllScenariosAreDistinct) {
  const auto all = all_scenarios();
  ASSERT_EQ(all.size(), 9u);
  std::set<std::string> ids;
  for (const Scenario& s : all) ids.insert(s.id());
  EXPECT_EQ(ids.size(), 9u);
}

TEST(Scenario, Validation) {
  Scenario s;
  s.max_dim = 1;
  EXPECT_THROW(s.validate(), Error);
  s = Scenario{};
  s.trials = 0;
  EXPECT_THROW(s.validate(), Error);
}

TEST(NormalStream, MomentsAreStandard) {
  NormalStream stream(7, 0);
  double sum = 0, sum_sq = 0;
  const int count = 200000;
  for (int i = 0; i < count; ++i) {
    const double z = stream.normal();
    sum += z;
    sum_sq += z * z;
  }
  EXPECT_NEAR(sum / count, 0.0, 0.01);
  EXPECT_NEAR(sum_sq / count, 1.0, 0.01);
}

TEST(NormalStream, UniformRange) {
  NormalStream stream(8, 1);
  for (int i = 0; i < 10000; ++i) {
    const double u = stream.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(GenInstance, DeterministicInSeedAndTrial) {
  for (const Scenario& s : all_scenarios(20)) {
    const Instance a = gen_instance(s, 4);
    const Instance b = gen_instance(s, 4);
    EXPECT_EQ(a.x, b.x) << s.id();
    EXPECT_EQ(a.b, b.b) << s.id();
    const Instance c = gen_instance(s, 5);
    EXPECT_NE(a.b, c.b) << s.id();
  }
  Scenario s = scenario(Regime::well_conditioned, Shape::square, 10, 1);
  Scenario t = s;
  t.seed = 2;
  EXPECT_NE(gen_instance(s, 0).x, gen_instance(t, 0).x);
}

TEST(GenInstance, RankDeficientHasHalfRank) {
  for (Shape shape : {Shape::square, Shape::wide, Shape::tall}) {
    const Scenario s = scenario(Regime::rank_deficient, shape);
    const Instance inst = gen_instance(s, 0);
    const Vector sv = singular_values(inst.x);
    const double tol = 60 * std::numeric_limits<double>::epsilon() * sv(0) * 100;
    const Eigen::Index k = std::min(s.rows(), s.cols());
    EXPECT_EQ((sv.array() > tol).count(), k / 2) << s.id();
  }
}

TEST(GenInstance, IllConditionedHasKappaOneMillion) {
  for (Shape shape : {Shape::square, Shape::wide, Shape::tall}) {
    const Scenario s = scenario(Regime::ill_conditioned, shape);
    const Vector sv = singular_values(gen_instance(s, 2).x);
    EXPECT_NEAR(sv(0) / sv(sv.size() - 1), 1e6, 1e4) << s.id();
  }
}

TEST(GenInstance, WellConditionedIsGaussianFullRank) {
  const Scenario s = scenario(Regime::well_conditioned, Shape::square);
  const Instance inst = gen_instance(s, 0);
  EXPECT_EQ(inst.x.rows(), 60);
  const double mean = inst.b.mean();
  const double var = (inst.b.array() - mean).square().mean();
  EXPECT_NEAR(mean, 0.0, 0.05);
  EXPECT_NEAR(var, 1.0, 0.1);
  EXPECT_GT(singular_values(inst.x).minCoeff(), 0.0);
}

TEST(BuiltinExamples, ComplianceData) {
  const Instance inst = compliance_example();
  ASSERT_EQ(inst.x.rows(), 3);
  ASSERT_EQ(inst.x.cols(), 12);
  ASSERT_EQ(inst.b.rows(), 3);
  ASSERT_EQ(inst.b.cols(), 12);
  EXPECT_DOUBLE_EQ(inst.x(0, 0), -0.32);
  // Condition number of the two-digit data.
  const Vector sv = singular_values(inst.x);
  EXPECT_NEAR(sv(0) / sv(2), 28.69, 0.05);
}

TEST(BuiltinExamples, ComplexData) {
  const ComplexInstance inst = complex_example();
  ASSERT_EQ(inst.x.rows(), 4);
  ASSERT_EQ(inst.x.cols(), 4);
  EXPECT_DOUBLE_EQ(inst.x.re(0, 0), 0.4694);
  EXPECT_DOUBLE_EQ(inst.x.im(0, 0), 0.2888);
}

TEST(MeanAndStd, SampleStatistics) {
  const auto [m, s] = mean_and_std({1.0, 2.0, 3.0, 4.0});
  EXPECT_DOUBLE_EQ(m, 2.5);
  EXPECT_NEAR(s, std::sqrt(5.0 / 3.0), 1e-15);
  const auto [m1, s1] = mean_and_std({7.0});
  EXPECT_DOUBLE_EQ(m1, 7.0);
  EXPECT_DOUBLE_EQ(s1, 0.0);
}

TEST(Bench, SingleTrialRowIsReproducible) {
  BenchOptions opts;
  Scenario s = scenario(Regime::well_conditioned, Shape::square, 20, 11);
  s.trials = 1;
  const auto r1 = run_bench({s}, opts);
  const auto r2 = run_bench({s}, opts);
  ASSERT_EQ(r1.size(), 1u);
  EXPECT_EQ(r1[0].rel_err_mean, r2[0].rel_err_mean);
  EXPECT_EQ(r1[0].rel_err_std, 0.0);
  EXPECT_EQ(r1[0].trials_ok, 1u);
  EXPECT_EQ(r1[0].scenario, "well_square");
  EXPECT_EQ(r1[0].solver, "an_fgm");
}

TEST(Bench, ThreadCountDoesNotChangeResults) {
  BenchOptions serial;
  BenchOptions parallel;
  parallel.threads = 3;
  Scenario s = scenario(Regime::rank_deficient, Shape::wide, 16, 3);
  s.trials = 6;
  const auto a = run_bench({s}, serial);
  const auto b = run_bench({s}, parallel);
  EXPECT_DOUBLE_EQ(a[0].rel_err_mean, b[0].rel_err_mean);
  EXPECT_DOUBLE_EQ(a[0].rel_err_std, b[0].rel_err_std);
}

TEST(Bench, RelativeErrorMatchesDirectComputation) {
  Scenario s = scenario(Regime::well_conditioned, Shape::tall, 12, 5);
  BenchOptions opts;
  const TrialOutcome t = run_trial(s, 2, BenchSolver::an_fgm, opts);
  ASSERT_TRUE(t.rel_err_percent.has_value());
  const Instance inst = gen_instance(s, 2);
  const Solution sol = solve(inst.x, inst.b, opts.solve);
  EXPECT_NEAR(*t.rel_err_percent, 100.0 * sol.objective / inst.b.norm(), 1e-10);
}

TEST(Bench, DoubledBudgetLeavesUniqueOptimumRowsStable) {
  for (Regime regime : {Regime::well_conditioned, Regime::rank_deficient}) {
    for (Shape shape : {Shape::square, Shape::wide, Shape::tall}) {
      Scenario s = scenario(regime, shape, 20, 9);
      s.trials = 5;
      BenchOptions base;
      BenchOptions doubled;
      doubled.solve.max_iterations = 2 * base.solve.max_iterations;
      const double a = run_bench({s}, base)[0].rel_err_mean;
      const double b = run_bench({s}, doubled)[0].rel_err_mean;
      EXPECT_LT(std::abs(a - b), 0.05) << s.id();
    }
  }
}

TEST(Bench, PlainFgmIsNoBetterThanReducedSolver) {
  Scenario s = scenario(Regime::well_conditioned, Shape::square, 12, 2);
  s.trials = 3;
  BenchOptions opts;
  opts.solvers = {BenchSolver::an_fgm, BenchSolver::fgm};
  opts.fgm_iterations = 500;
  const auto rows = run_bench({s}, opts);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1].solver, "fgm");
  EXPECT_GE(rows[1].rel_err_mean, rows[0].rel_err_mean - 1e-6);
}

TEST(Bench, CsvAndJsonLayout) {
  BenchRow row;
  row.scenario = "well_square";
  row.solver = "an_fgm";
  row.rel_err_mean = 18.5;
  row.rel_err_std = 0.5;
  row.time_mean = 0.01;
  row.time_std = 0.001;
  row.trials_ok = 20;
  const std::string csv = bench_csv({row});
  std::istringstream in(csv);
  std::string header, line;
  std::getline(in, header);
  std::getline(in, line);
  EXPECT_EQ(header, "scenario,solver,rel_err_mean,rel_err_std,time_mean,time_std");
  EXPECT_EQ(line.rfind("well_square,an_fgm,18.5,0.5,", 0), 0u);
  const auto j = nlohmann::json::parse(bench_json({row}));
  ASSERT_TRUE(j.is_array());
  EXPECT_EQ(j[0]["scenario"], "well_square");
  EXPECT_DOUBLE_EQ(j[0]["rel_err_mean"].get<double>(), 18.5);
  EXPECT_EQ(j[0]["trials_ok"], 20);
}

TEST(Bench, ParseSolver) {
  EXPECT_EQ(parse_bench_solver("fgm"), BenchSolver::fgm);
  EXPECT_EQ(parse_bench_solver("an_fgm"), BenchSolver::an_fgm);
  EXPECT_THROW(parse_bench_solver("sdpt3"), Error);
}

TEST(Bench, ReferenceTableCoversAllScenarios) {
  const auto& ref = reference_errors();
  ASSERT_EQ(ref.size(), 9u);
  std::set<std::string> ids;
  for (const auto& r : ref) ids.insert(r.scenario);
  for (const Scenario& s : all_scenarios()) EXPECT_EQ(ids.count(s.id()), 1u) << s.id();
}
