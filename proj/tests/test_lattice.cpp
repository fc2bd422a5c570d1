#include "oracles.hpp"

#include "fbl/errors.hpp"
#include "fbl/lattice.hpp"
#include "fbl/lattice_io.hpp"

#include <doctest.h>

using namespace fbl;

TEST_CASE("diamond tables") {
  auto d = diamond();
  CHECK(d.size() == 4);
  CHECK(d.meet(1, 2) == 0);
  CHECK(d.join(1, 2) == 3);
  CHECK(d.bottom() == 0);
  CHECK(d.top() == 3);
  CHECK(d.covers().size() == 4);
}

TEST_CASE("pentagon and M3 are rejected") {
  std::vector<std::string> n5{"0", "a", "b", "c", "1"};
  std::vector<std::pair<int, int>> n5c{{0, 1}, {1, 2}, {2, 4}, {0, 3}, {3, 4}};
  CHECK_THROWS_AS(FiniteLattice::from_covers(n5, n5c), NotDistributive);
  std::vector<std::string> m3{"0", "a", "b", "c", "1"};
  std::vector<std::pair<int, int>> m3c{{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}};
  CHECK_THROWS_AS(FiniteLattice::from_covers(m3, m3c), NotDistributive);
}

TEST_CASE("non-lattices and malformed input") {
  // two maximal elements
  CHECK_THROWS_AS(FiniteLattice::from_covers({"0", "a", "b"}, std::vector<std::pair<int, int>>{{0, 1}, {0, 2}}),
                  NotALattice);
  CHECK_THROWS_AS(FiniteLattice::from_covers({"a", "b"}, std::vector<std::pair<int, int>>{{0, 1}, {1, 0}}),
                  InvalidInput);
  CHECK_THROWS_AS(FiniteLattice::from_covers({"a", "a"}, std::vector<std::pair<int, int>>{{0, 1}}), InvalidInput);
  CHECK_THROWS_AS(FiniteLattice::from_covers({}, std::vector<std::pair<int, int>>{}), InvalidInput);
}

TEST_CASE("sublattice enumeration matches subset scan") {
  auto d = share(diamond());
  CHECK(enumerate_sublattices(d).size() == 12);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    auto l = share(oracle::random_distributive(rng, 4, 0.3, 12));
    auto subs = enumerate_sublattices(l);
    auto expected = oracle::sublattices(*l);
    REQUIRE(subs.size() == expected.size());
    for (std::size_t i = 1; i < subs.size(); ++i) CHECK(subs[i - 1].size() <= subs[i].size());
    std::set<std::vector<int>> got;
    for (const auto& s : subs) got.insert(s.members());
    CHECK(got == std::set<std::vector<int>>(expected.begin(), expected.end()));
  }
}

TEST_CASE("size cap") {
  auto big = share(product(chain(5), chain(4)));
  CHECK_THROWS_AS(enumerate_sublattices(big), SizeCapExceeded);
}

TEST_CASE("closure in the 3x3 grid") {
  auto g = share(product(chain(3), chain(3)));
  const int a = g->require_index("(2,3)");
  const int b = g->require_index("(3,2)");
  auto s = sublattice_closure(g, {a, b});
  CHECK(s.size() == 4);
  CHECK(s.contains(g->require_index("(2,2)")));
  CHECK(s.contains(g->require_index("(3,3)")));
}

TEST_CASE("ideal, filter and chain predicates") {
  auto g = share(product(chain(2), chain(2)));
  Sublattice low(g, {g->require_index("(1,1)"), g->require_index("(1,2)")});
  CHECK(is_ideal(low));
  CHECK(!is_filter(low));
  CHECK(is_chain(low));
  Sublattice whole(g, {0, 1, 2, 3});
  CHECK(is_ideal(whole));
  CHECK(is_filter(whole));
  CHECK(!is_chain(whole));
}

TEST_CASE("induced sublattice keeps the parent order") {
  auto g = share(product(chain(3), chain(3)));
  for (const auto& s : enumerate_sublattices(g)) {
    const auto& ind = *s.induced();
    for (int i = 0; i < s.size(); ++i)
      for (int j = 0; j < s.size(); ++j) {
        CHECK(ind.leq(i, j) == g->leq(s.members()[i], s.members()[j]));
        CHECK(s.members()[ind.meet(i, j)] == g->meet(s.members()[i], s.members()[j]));
      }
  }
}

TEST_CASE("Birkhoff embedding is an order embedding") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    auto l = oracle::random_distributive(rng, 4, 0.4, 16);
    auto e = birkhoff_embed(l);
    const int n = l.size();
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        bool subset = ((e.bits.row(a).array() <= e.bits.row(b).array()).all());
        CHECK(subset == l.leq(a, b));
        CHECK((e.bits.row(l.meet(a, b)).array() == e.bits.row(a).cwiseMin(e.bits.row(b)).array()).all());
      }
  }
}

TEST_CASE("bound extension") {
  auto c = chain(2);
  auto e = bound_extension(c);
  CHECK(e.size() == 4);
  CHECK(e.label(e.bottom()) == "m");
  CHECK(e.label(e.top()) == "M");
}

TEST_CASE("JSON round trip and label embedding") {
  auto g = product(chain(3), chain(2));
  auto back = lattice_from_json(lattice_to_json(g));
  CHECK(back.labels() == g.labels());
  CHECK(back.order() == g.order());
  auto parent = share(product(chain(3), chain(3)));
  auto sub = embed_by_labels(back, parent);
  CHECK(sub.size() == 6);
  CHECK_THROWS_AS(lattice_from_json(nlohmann::json::parse(R"({"elements":["a"],"covers":[["a","z"]]})")),
                  InvalidInput);
  CHECK(to_dot(diamond()).find("digraph") != std::string::npos);
}
