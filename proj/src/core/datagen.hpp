#pragma once

#include "core/linalg.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace nspsd {

enum class Regime { well_conditioned, ill_conditioned, rank_deficient };

// square: n = m = max_dim; wide: m = 2n = max_dim; tall: n = 2m = max_dim.
enum class Shape { square, wide, tall };

const char* to_string(Regime r);
const char* to_string(Shape s);
// Accepts the short CLI names: well | ill | rankdef, square | wide | tall.
Regime parse_regime(const std::string& name);
Shape parse_shape(const std::string& name);

struct Scenario {
  Shape shape = Shape::square;
  Regime regime = Regime::well_conditioned;
  int max_dim = 60;
  int trials = 20;
  std::uint64_t seed = 0;

  void validate() const;
  // Rows n and columns m of X.
  Eigen::Index rows() const;
  Eigen::Index cols() const;
  // "<regime>_<shape>", e.g. "rankdef_tall".
  std::string id() const;
};

// Parses a scenario id produced by Scenario::id.
Scenario parse_scenario(const std::string& id);

// All nine regime x shape combinations.
std::vector<Scenario> all_scenarios(int max_dim = 60, int trials = 20, std::uint64_t seed = 0);

// mt19937_64 seeded through std::seed_seq with standard normals from a
// Box-Muller transform over 53-bit uniforms, so streams do not depend on the
// standard library's distribution implementations.
class NormalStream {
 public:
  explicit NormalStream(std::seed_seq& seq) : engine_(seq) {}
  NormalStream(std::uint64_t seed, std::uint64_t stream);

  double uniform();  // [0, 1)
  double normal();
  Matrix normal_matrix(Eigen::Index rows, Eigen::Index cols);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

struct Instance {
  Matrix x;
  Matrix b;
};

// Deterministic in (scenario.seed, scenario regime and shape, trial).
Instance gen_instance(const Scenario& s, std::uint64_t trial);

struct ComplexInstance {
  ComplexDense x;
  ComplexDense b;
};

// Local compliance estimation data: X and B are 3 x 12, entries to two digits.
Instance compliance_example();

// 4 x 4 complex pair, entries to four digits.
ComplexInstance complex_example();

}  // namespace nspsd
