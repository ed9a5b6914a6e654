#include "core/datagen.hpp"

#include "core/error.hpp"

#include <cmath>
#include <numbers>

namespace nspsd {

namespace {

constexpr double kIllConditionNumber = 1e6;

std::uint64_t scenario_tag(const Scenario& s) {
  return 3 * static_cast<std::uint64_t>(s.regime) + static_cast<std::uint64_t>(s.shape);
}

}  // namespace

const char* to_string(Regime r) {
  switch (r) {
    case Regime::well_conditioned: return "well";
    case Regime::ill_conditioned: return "ill";
    case Regime::rank_deficient: return "rankdef";
  }
  return "unknown";
}

const char* to_string(Shape s) {
  switch (s) {
    case Shape::square: return "square";
    case Shape::wide: return "wide";
    case Shape::tall: return "tall";
  }
  return "unknown";
}

Regime parse_regime(const std::string& name) {
  for (Regime r : {Regime::well_conditioned, Regime::ill_conditioned, Regime::rank_deficient}) {
    if (name == to_string(r)) return r;
  }
  fail(ErrorCode::invalid_argument, "unknown regime '" + name + "' (expected well, ill or rankdef)");
}

Shape parse_shape(const std::string& name) {
  for (Shape s : {Shape::square, Shape::wide, Shape::tall}) {
    if (name == to_string(s)) return s;
  }
  fail(ErrorCode::invalid_argument, "unknown shape '" + name + "' (expected square, wide or tall)");
}

void Scenario::validate() const {
  if (max_dim < 2) {
    fail(ErrorCode::invalid_argument, "max_dim must be at least 2, got " + std::to_string(max_dim));
  }
  if (trials < 1) {
    fail(ErrorCode::invalid_argument, "trials must be at least 1, got " + std::to_string(trials));
  }
}

Eigen::Index Scenario::rows() const { return shape == Shape::wide ? max_dim / 2 : max_dim; }

Eigen::Index Scenario::cols() const { return shape == Shape::tall ? max_dim / 2 : max_dim; }

std::string Scenario::id() const { return std::string(to_string(regime)) + "_" + to_string(shape); }

Scenario parse_scenario(const std::string& id) {
  const auto sep = id.find('_');
  if (sep == std::string::npos) {
    fail(ErrorCode::invalid_argument,
         "scenario '" + id + "' is not of the form <regime>_<shape>, e.g. well_square");
  }
  Scenario s;
  s.regime = parse_regime(id.substr(0, sep));
  s.shape = parse_shape(id.substr(sep + 1));
  return s;
}

std::vector<Scenario> all_scenarios(int max_dim, int trials, std::uint64_t seed) {
  std::vector<Scenario> out;
  for (Regime r : {Regime::well_conditioned, Regime::ill_conditioned, Regime::rank_deficient}) {
    for (Shape s : {Shape::square, Shape::wide, Shape::tall}) {
      out.push_back({s, r, max_dim, trials, seed});
    }
  }
  return out;
}

NormalStream::NormalStream(std::uint64_t seed, std::uint64_t stream) : engine_() {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  engine_.seed(seq);
}

double NormalStream::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double NormalStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

Matrix NormalStream::normal_matrix(Eigen::Index rows, Eigen::Index cols) {
  Matrix m(rows, cols);
  // Row-major fill so the stream order reads naturally in printed matrices.
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = normal();
  }
  return m;
}

Instance gen_instance(const Scenario& s, std::uint64_t trial) {
  s.validate();
  std::seed_seq seq{static_cast<std::uint32_t>(s.seed), static_cast<std::uint32_t>(s.seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32),
                    static_cast<std::uint32_t>(scenario_tag(s))};
  NormalStream rng(seq);
  const Eigen::Index n = s.rows();
  const Eigen::Index m = s.cols();
  Instance inst;
  inst.x = rng.normal_matrix(n, m);
  inst.b = rng.normal_matrix(n, m);
  if (s.regime == Regime::well_conditioned) return inst;

  const SvdFactorization f = svd(inst.x);
  const Eigen::Index k = std::min(n, m);
  Vector lambda = f.singular_values;
  if (s.regime == Regime::ill_conditioned) {
    const double alpha = k > 1 ? std::pow(kIllConditionNumber, 1.0 / static_cast<double>(k - 1)) : 1.0;
    for (Eigen::Index i = 0; i < k; ++i) lambda(i) = std::pow(alpha, static_cast<double>(i));
  } else {
    lambda.tail(k / 2).setZero();
  }
  inst.x = f.u.leftCols(k) * lambda.asDiagonal() * f.v.leftCols(k).transpose();
  return inst;
}

Instance compliance_example() {
  Matrix xt(12, 3);
  xt << -0.32, 0.03, 0.06,
        -0.33, -0.02, 0.06,
        -0.36, 0.08, 0.06,
        -0.30, 0.03, 0.05,
        -0.32, -0.00, 0.07,
        -0.34, 0.07, 0.05,
        -0.24, 0.07, 0.05,
        -0.21, -0.01, 0.02,
        -0.33, 0.16, 0.10,
        -0.25, 0.09, 0.06,
        -0.22, 0.00, 0.03,
        -0.31, 0.15, 0.09;
  Matrix bt(12, 3);
  bt << -1.43, 0.15, -0.44,
        -1.40, -0.31, -0.42,
        -1.38, 0.44, -0.42,
        -1.43, 0.14, -0.44,
        -1.40, -0.31, -0.42,
        -1.37, 0.43, -0.42,
        -1.43, 0.16, -0.43,
        -1.40, -0.32, -0.42,
        -1.38, 0.42, -0.43,
        -1.43, 0.15, -0.44,
        -1.40, -0.33, -0.42,
        -1.37, 0.42, -0.44;
  return {xt.transpose(), bt.transpose()};
}

ComplexInstance complex_example() {
  Matrix xr(4, 4), xi(4, 4), br(4, 4), bi(4, 4);
  xr << 0.4694, 0.5354, 0.1326, -0.0787,
        -0.9036, 0.5529, 1.5929, -0.6817,
        0.0359, -0.2037, 1.0184, -1.0246,
        -0.6275, -2.0543, -1.5804, -1.2344;
  xi << 0.2888, -0.4650, -1.3573, -1.3813,
        -0.4293, 0.3710, -1.0226, 0.3155,
        0.0558, 0.7283, 1.0378, 1.5532,
        -0.3679, 2.1122, -0.3898, 0.7079;
  br << 0.0112, -0.9898, 1.1380, -0.3306,
        -0.6451, 1.3396, -0.6841, -0.8436,
        0.8057, 0.2895, -1.2919, 0.4978,
        0.2316, 1.4789, -0.0729, 1.4885;
  bi << -0.5465, -0.8542, 0.4853, -0.0793,
        -0.8468, -1.2013, -0.5955, 1.5352,
        -0.2463, -0.1199, -0.1497, -0.6065,
        0.6630, -0.0653, -0.4348, -1.3474;
  return {ComplexDense(xr, xi), ComplexDense(br, bi)};
}

}  // namespace nspsd
