#pragma once

#include "fbl/embedding.hpp"
#include "fbl/norm.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace fbl {

/// The 3x3 grid M, the five-element sublattice
/// L = {(1,1), (2,2), (2,3), (3,2), (3,3)}, two homomorphisms x1, x2 on L
/// and the bump of radius ε around them.
struct GridPairFixture {
  LatticePtr grid;
  Sublattice sub;
  Rational epsilon;
  RealHom<Rational> x1;
  RealHom<Rational> x2;
  BumpFunction bump;

  /// |x(e) - x_i(e)| < ε/2 for every e in L (i = 1 or 2).
  bool in_neighborhood(int i, const RealHom<Rational>& x) const;
  NormableFunction f_on_sub() const { return NormableFunction(bump); }
  /// y -> f(y restricted to L), on the grid.
  NormableFunction f_on_grid() const { return NormableFunction(bump, sub); }
};

/// Requires 0 < ε < 1/2.
GridPairFixture build_grid_pair(const Rational& epsilon);

/// Diamond {m, a, b, M} and its chain {m, a, M}.
Sublattice diamond_chain_pair();

struct ReproCheck {
  std::string name;
  nlohmann::json expected;
  nlohmann::json observed;
  bool pass = false;
  std::string provenance;  // "reference", "derived" or "trivial"
  std::string note;
};

struct ReproReport {
  std::vector<ReproCheck> checks;
  bool pass() const;
  nlohmann::json to_json() const;
};

ReproReport repro_diamond_chain();

struct GridPairOptions {
  int samples = 1000;
  std::size_t budget = 10000;  // linear programs per tuple size
  int n_max = 4;
  int restarts = 64;
  std::uint64_t seed = 7;
};

ReproReport repro_grid_pair(const Rational& epsilon, const GridPairOptions& options = {});

}  // namespace fbl
