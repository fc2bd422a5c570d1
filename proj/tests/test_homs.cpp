#include "oracles.hpp"

#include "fbl/homs.hpp"

#include <doctest.h>

using namespace fbl;

namespace {

std::set<std::vector<int>> as_set(const std::vector<ChainColoring>& cs) {
  std::set<std::vector<int>> out;
  for (const auto& c : cs) out.insert(c.levels());
  return out;
}

}  // namespace

TEST_CASE("coloring counts") {
  CHECK(enumerate_chain_colorings(share(chain(3))).size() == 4);
  CHECK(enumerate_chain_colorings(share(diamond())).size() == 3);
  CHECK(enumerate_chain_colorings(share(chain(1))).size() == 1);
}

TEST_CASE("coloring enumeration matches exhaustive maps") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    auto l = share(oracle::random_distributive(rng, 3 + trial % 2, 0.35, 7));
    auto got = enumerate_chain_colorings(l);
    auto set = as_set(got);
    CHECK(set.size() == got.size());
    CHECK(set == oracle::colorings(*l));
  }
}

TEST_CASE("coloring extension agrees with restriction images") {
  std::mt19937_64 rng(17);
  int checked = 0;
  for (int trial = 0; trial < 12; ++trial) {
    auto m = share(oracle::random_distributive(rng, 3 + trial % 2, 0.3, 6));
    for (const auto& sub : enumerate_sublattices(m)) {
      auto reachable = oracle::restricted_colorings(*m, sub.members());
      for (const auto& c : enumerate_chain_colorings(sub.induced())) {
        auto ext = extend_coloring(c, sub);
        CHECK(ext.has_value() == (reachable.count(c.levels()) > 0));
        if (ext) CHECK(restrict_and_normalize(*ext, sub) == c);
        ++checked;
      }
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("extensions enumerated") {
  auto m = share(chain(3));
  Sublattice ends(m, {0, 2});
  auto two = enumerate_chain_colorings(ends.induced());
  REQUIRE(two.size() == 2);
  const auto& split = two[1];  // levels {1, 2}
  auto exts = enumerate_coloring_extensions(split, ends);
  CHECK(exts.size() == 3);
  CHECK(enumerate_coloring_extensions(split, ends, 1).size() == 1);
}

TEST_CASE("realize and extend real homs") {
  auto m = share(chain(4));
  Sublattice mid(m, {1, 2});
  RealHom<Rational> h(mid.induced(), {Rational(-1, 2), Rational(1, 3)});
  auto ext = extend_real_hom(h, mid);
  REQUIRE(ext);
  CHECK((*ext)(1) == Rational(-1, 2));
  CHECK((*ext)(2) == Rational(1, 3));
  CHECK((*ext)(0) <= Rational(-1, 2));
  CHECK((*ext)(3) >= Rational(1, 3));

  RealHom<Rational> pinned(mid.induced(), {Rational(-1), Rational(1)});
  auto e2 = extend_real_hom(pinned, mid);
  REQUIRE(e2);
  CHECK((*e2)(0) == Rational(-1));
  CHECK((*e2)(3) == Rational(1));

  auto c = enumerate_chain_colorings(m).back();
  CHECK_THROWS_AS(realize_hom<Rational>(c, {Rational(0), Rational(0), Rational(1), Rational(1)}), NonMonotoneValues);
  CHECK_THROWS_AS(RealHom<Rational>(m, {Rational(0), Rational(2), Rational(2), Rational(2)}), InvalidInput);
}

TEST_CASE("extension preserves values on random sublattices") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    auto m = share(oracle::random_distributive(rng, 3, 0.3, 6));
    for (const auto& sub : enumerate_sublattices(m)) {
      for (const auto& c : enumerate_chain_colorings(sub.induced())) {
        std::vector<Rational> levels;
        for (int k = 0; k < c.num_levels(); ++k) levels.push_back(Rational(2 * k + 1, 2 * c.num_levels()) * 2 - 1);
        auto h = realize_hom(c, levels);
        auto e = extend_real_hom(h, sub);
        if (!e) continue;
        for (int i = 0; i < sub.size(); ++i) CHECK((*e)(sub.members()[i]) == h(i));
      }
    }
  }
}

TEST_CASE("radial decomposition") {
  auto m = share(chain(2));
  RealHom<Rational> h(m, {Rational(-1, 4), Rational(1, 8)});
  auto r = radial_decompose(h);
  REQUIRE(r);
  CHECK(r->scale == Rational(1, 4));
  CHECK(r->base(0) == Rational(-1));
  CHECK(r->base(1) == Rational(1, 2));
  CHECK(!radial_decompose(RealHom<Rational>(m, {Rational(0), Rational(0)})));
}
