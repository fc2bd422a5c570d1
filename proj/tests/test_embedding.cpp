#include "oracles.hpp"

#include "fbl/embedding.hpp"

#include <doctest.h>

using namespace fbl;

namespace {

Sublattice by_labels(const LatticePtr& m, const std::vector<std::string>& labels) {
  std::vector<int> idx;
  for (const auto& l : labels) idx.push_back(m->require_index(l));
  return Sublattice(m, idx);
}

Sublattice grid_pair_fixture() {
  auto g = share(product(chain(3), chain(3)));
  return by_labels(g, {"(1,1)", "(2,2)", "(2,3)", "(3,2)", "(3,3)"});
}

}  // namespace

TEST_CASE("distributive lattice census") {
  // 1, 1, 1, 2, 3, 5 lattices of sizes 1..6
  CHECK(oracle::all_distributive(6).size() == 13);
}

TEST_CASE("retractions") {
  auto d = share(diamond());
  Sublattice whole(d, {0, 1, 2, 3});
  auto r = find_retraction(whole);
  REQUIRE(r);
  CHECK(*r == LatticeMap{0, 1, 2, 3});

  Sublattice ends(d, {0, 3});
  auto re = find_retraction(ends);
  REQUIRE(re);
  CHECK(is_local_map(ends, whole, *re));

  CHECK(!find_retraction(grid_pair_fixture()));
}

TEST_CASE("the chain {m,a,M} in the diamond") {
  auto d = share(diamond());
  Sublattice l(d, {0, 1, 3});
  auto lc = local_complement_check(l);
  CHECK(!lc.holds);
  REQUIRE(lc.failing);
  CHECK(lc.failing->size() == 4);
  auto ext = extension_property(l);
  CHECK(!ext.holds);
  REQUIRE(ext.counterexample);
  CHECK(ext.counterexample->levels() == std::vector<int>{1, 2, 3});
  auto rep = analyze_pair(l);
  CHECK(rep.verdict_code() == 2);
  CHECK(!fast_path_loc_comp(l));
}

TEST_CASE("grid pair is isomorphic but not complemented") {
  auto s = grid_pair_fixture();
  auto rep = analyze_pair(s);
  CHECK(rep.verdict_code() == 1);
  CHECK(!rep.fast_path);
  auto j = to_json(rep, s);
  CHECK(j["verdict"] == "isomorphic-only");
  CHECK(j["locally_complemented"].contains("failing"));
}

TEST_CASE("retraction and local complementation agree on small lattices") {
  int pairs = 0;
  for (const auto& l : oracle::all_distributive(5)) {
    auto m = share(l);
    for (const auto& s : enumerate_sublattices(m)) {
      auto rep = analyze_pair(s);
      CHECK(rep.complemented == rep.local.holds);
      if (rep.local.holds)
        for (const auto& w : rep.local.witnesses) CHECK(is_local_map(s, w.f, w.t));
      ++pairs;
    }
  }
  CHECK(pairs > 50);
}

TEST_CASE("fast path builders validate on every F") {
  std::mt19937_64 rng(41);
  int seen[4] = {0, 0, 0, 0};
  for (int trial = 0; trial < 40; ++trial) {
    auto m = share(trial % 3 == 0 ? chain(2 + trial % 5) : oracle::random_distributive(rng, 3, 0.3, 8));
    for (const auto& s : enumerate_sublattices(m)) {
      auto fp = fast_path_loc_comp(s);
      if (!fp) continue;
      ++seen[static_cast<int>(fp->tag)];
      for (const auto& f : enumerate_sublattices(m)) CHECK(is_local_map(s, f, fp->build(f)));
      CHECK(local_complement_check(s).holds);
    }
  }
  for (int k = 0; k < 3; ++k) CHECK(seen[k] > 0);
}

TEST_CASE("bounded extension fast path") {
  auto l = share(product(chain(2), chain(2)));
  // strip nothing: the grid sitting between fresh bounds
  auto m = share(bound_extension(*l));
  std::vector<int> inner;
  for (const auto& lab : l->labels()) inner.push_back(m->require_index(lab));
  Sublattice s(m, inner);
  auto fp = fast_path_loc_comp(s);
  REQUIRE(fp);
  CHECK(fp->tag == FastPath::BoundedExtension);
  for (const auto& f : enumerate_sublattices(m)) CHECK(is_local_map(s, f, fp->build(f)));
}

TEST_CASE("extension property agrees with restriction images") {
  for (const auto& l : oracle::all_distributive(6)) {
    auto m = share(l);
    for (const auto& s : enumerate_sublattices(m)) {
      auto reachable = oracle::restricted_colorings(*m, s.members());
      auto all = oracle::colorings(*s.induced());
      CHECK(extension_property(s).holds == (reachable == all));
    }
  }
}

TEST_CASE("vector extension keeps the norm") {
  auto m = share(chain(6));
  Sublattice s(m, {1, 2, 4});
  VectorHom<Rational> phi(s.induced(), {{Rational(-1, 2), Rational(0), Rational(1, 3)}, {Rational(1, 4), Rational(1, 4), Rational(1, 2)}});
  auto big = extend_vector_hom(phi, s);
  CHECK(big.norm() == phi.norm());
  for (int i = 0; i < s.size(); ++i)
    for (int k = 0; k < 2; ++k) CHECK(big.component(k)[s.members()[i]] == phi.component(k)[i]);

  auto d = share(diamond());
  Sublattice bad(d, {0, 1, 3});
  VectorHom<Rational> psi(bad.induced(), {{Rational(0), Rational(0), Rational(0)}});
  CHECK_THROWS_AS(extend_vector_hom(psi, bad), NotLocallyComplemented);
}

TEST_CASE("exploration") {
  auto m = share(chain(5));
  Sublattice s(m, {0, 2, 4});
  auto rep = explore_l1n_extension(s, 2, 20, 3);
  CHECK(rep.samples == 20);
  CHECK(rep.failures.empty());
  CHECK(explore_l1n_extension(s, 2, 0, 3).samples == 0);

  auto d = share(diamond());
  Sublattice bad(d, {0, 1, 3});
  VectorHom<Rational> witness(bad.induced(), {{Rational(-1), Rational(0), Rational(1)}});
  auto r2 = explore_l1n_extension(bad, 1, 1, 3, {witness});
  CHECK(r2.failures.size() == 1);
  CHECK(to_json(r2, bad)["kind"] == "heuristic-falsification");
}
