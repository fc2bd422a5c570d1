#include "oracles.hpp"

#include "fbl/errors.hpp"
#include "fbl/expression.hpp"
#include "fbl/norm.hpp"
#include "fbl/repro.hpp"

#include <doctest.h>

using namespace fbl;

namespace {

NormableFunction expr_fn(const LatticePtr& l, Expr e) { return NormableFunction(LatticeExpression(l, std::move(e))); }

RealHom<Rational> constant(const LatticePtr& l, Rational v) {
  return RealHom<Rational>(l, std::vector<Rational>(static_cast<std::size_t>(l->size()), v));
}

}  // namespace

TEST_CASE("s-expressions") {
  auto g = share(product(chain(3), chain(3)));
  const std::string text = R"s((join (gen "(2,3)") (scale 1/2 (sum (gen "(1,1)") (meet (gen "(2,2)") (gen "(3,2)"))))))s";
  auto f = parse_expression(text, g);
  CHECK(print_expression(f) == text);
  CHECK(print_expression(parse_expression(print_expression(f), g)) == text);
  CHECK(generators_of(f.root()).size() == 4);
  CHECK_THROWS_AS(parse_expression("(gen \"(4,4)\")", g), ParseError);
  CHECK_THROWS_AS(parse_expression("(join)", g), ParseError);
  CHECK_THROWS_AS(parse_expression("(sum (gen \"(1,1)\")", g), ParseError);
  CHECK_THROWS_AS(parse_expression("(scale x (gen \"(1,1)\"))", g), ParseError);
}

TEST_CASE("evaluation") {
  auto fx = build_grid_pair(Rational(1, 10));
  auto l = fx.sub.induced();
  auto f = expr_fn(l, gen(l->require_index("(2,3)")) & gen(l->require_index("(3,2)")));
  CHECK(f(fx.x1) == 0);
  CHECK(f(fx.x2) == Rational(1, 10));
}

TEST_CASE("homogeneity") {
  std::mt19937_64 rng(8);
  auto d = share(diamond());
  auto cols = oracle::colorings(*d);
  for (int t = 0; t < 50; ++t) {
    auto f = expr_fn(d, oracle::random_expr(rng, 4, 4));
    RealHom<Rational> x(d, oracle::random_hom_values(rng, cols));
    for (Rational lam : {Rational(0), Rational(1, 4), Rational(1, 2), Rational(1)}) CHECK(f(x.scaled(lam)) == lam * f(x));
  }
}

TEST_CASE("push forward evaluates on the restriction") {
  std::mt19937_64 rng(9);
  auto m = share(product(chain(3), chain(2)));
  auto cols = oracle::colorings(*m);
  for (const auto& s : enumerate_sublattices(m)) {
    if (s.size() < 2) continue;
    auto f = LatticeExpression(s.induced(), oracle::random_expr(rng, s.size(), 3));
    auto pushed = push_forward(f, s);
    RealHom<Rational> y(m, oracle::random_hom_values(rng, cols));
    std::vector<Rational> r;
    for (int x : s.members()) r.push_back(y(x));
    CHECK(eval(pushed, y) == eval(f, RealHom<Rational>(s.induced(), r)));
  }
  Sublattice low(m, {0});
  auto f = LatticeExpression(m, gen(1));
  CHECK_THROWS_AS(push_forward(LatticeExpression(m, gen(5)), low), GeneratorNotInSublattice);
  (void)f;
}

TEST_CASE("bump expression equals the radial rule") {
  std::mt19937_64 rng(10);
  for (Rational eps : {Rational(1, 10), Rational(1, 5), Rational(2, 5)}) {
    auto fx = build_grid_pair(eps);
    auto l = fx.sub.induced();
    auto cols = oracle::colorings(*l);
    const Expr e = fx.bump.as_expression();
    std::vector<RealHom<Rational>> points{fx.x1, fx.x2, fx.x1.scaled(Rational(1, 3)), constant(l, Rational(1)),
                                          constant(l, Rational(0))};
    for (int t = 0; t < 200; ++t) points.emplace_back(l, oracle::random_hom_values(rng, cols));
    for (const auto& x : points) CHECK(eval(e, x.values()) == fx.bump(x));
    CHECK(fx.bump.base(fx.x1) == 1);
    CHECK(fx.bump.base(fx.x2) == 1);
    CHECK(fx.bump(constant(l, Rational(1))) == 0);
  }
  CHECK_THROWS_AS(build_grid_pair(Rational(1, 2)), EpsilonOutOfRange);
  CHECK_THROWS_AS(build_grid_pair(Rational(0)), EpsilonOutOfRange);
}

TEST_CASE("admissibility and certificates") {
  auto fx = build_grid_pair(Rational(2, 5));
  CHECK(admissibility(std::vector<RealHom<Rational>>{fx.x1, fx.x2}) == Rational(7, 5));
  CHECK(admissibility(std::vector<RealHom<Rational>>{}) == 0);
  auto l = fx.sub.induced();
  CHECK(admissibility(std::vector<RealHom<Rational>>{constant(l, Rational(1))}) == 1);

  auto delta = expr_fn(l, gen(2));
  auto lb = lower_bound(delta, std::vector<std::vector<RealHom<Rational>>>{{constant(l, Rational(1))}});
  CHECK(lb.value == 1);
  auto z = expr_fn(l, zero());
  CHECK(lower_bound(z, std::vector<std::vector<RealHom<Rational>>>{{constant(l, Rational(1))}}).value == 0);

  auto f = fx.f_on_sub();
  const Rational s = Rational(1) / (1 + fx.epsilon);
  auto cert = lower_bound(f, std::vector<std::vector<RealHom<Rational>>>{{fx.x1.scaled(s), fx.x2.scaled(s)}});
  CHECK(cert.value == Rational(10, 7));
  CHECK(cert.constraint == 1);
  // an inadmissible tuple is scaled down before it counts
  auto raw = lower_bound(f, std::vector<std::vector<RealHom<Rational>>>{{fx.x1, fx.x2}});
  CHECK(raw.value == Rational(10, 7));
}

TEST_CASE("search on small cases") {
  auto c2 = share(chain(2));
  auto est = estimate_norm(expr_fn(c2, gen(1)), SearchParams{.n_max = 2});
  CHECK(est.lower.value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(est.upper == doctest::Approx(2.0));
  CHECK(est.upper_method == "factor-2-sandwich");

  auto d = share(diamond());
  auto modular = expr_fn(d, sum({gen(1), gen(2), scale(Rational(-1), gen(0)), scale(Rational(-1), gen(3))}));
  CHECK(search_lower_bound(modular).best.value == doctest::Approx(0.0));
  CHECK(supnorm_K(modular).value == doctest::Approx(0.0));

  // δ_a - δ_b reaches 2 at m = b = -1, a = M = 1
  auto diff = expr_fn(d, gen(1) - gen(2));
  CHECK(supnorm_K(diff).value == doctest::Approx(2.0));
  CHECK(search_lower_bound(diff, SearchParams{.n_max = 2}).best.value == doctest::Approx(2.0));
  CHECK(grid_oracle_norm(diff, Rational(1, 20), 2) == doctest::Approx(2.0));

  auto z = expr_fn(d, zero());
  auto ez = estimate_norm(z);
  CHECK(ez.upper == 0);
  CHECK(ez.lower.value == 0);
}

TEST_CASE("bump search over both lattices") {
  for (Rational eps : {Rational(1, 10), Rational(2, 5)}) {
    auto fx = build_grid_pair(eps);
    SearchParams p{.n_max = 3};
    auto on_l = search_lower_bound(fx.f_on_sub(), p);
    CHECK(on_l.best.value >= to_double(2 / (1 + eps)) - 1e-9);
    CHECK(on_l.best.constraint <= 1 + 1e-12);
    auto on_m = search_lower_bound(fx.f_on_grid(), p);
    CHECK(on_m.best.value <= to_double(1 / (1 - eps)) + 1e-6);
    auto sup = supnorm_K(fx.f_on_sub());
    CHECK(sup.value == doctest::Approx(1.0));
    CHECK(sup.witness.sup_norm() == doctest::Approx(1.0));
  }
}

TEST_CASE("search agrees with the grid oracle on random diamond expressions") {
  std::mt19937_64 rng(12);
  auto d = share(diamond());
  for (int t = 0; t < 20; ++t) {
    auto f = expr_fn(d, oracle::random_expr(rng, 4, 3));
    auto s = search_lower_bound(f, SearchParams{.n_max = 3});
    const double o = grid_oracle_norm(f, Rational(1, 20), 3);
    CHECK(s.best.value >= o - 1e-9);
    CHECK(s.best.value - o <= 1.0 / 20 + 1e-9);
    auto est = estimate_norm(f, SearchParams{.n_max = 3});
    CHECK(est.supnorm.value <= est.lower.value + 1e-9);
    CHECK(est.lower.value <= est.upper + 1e-9);
  }
}

TEST_CASE("grid oracle basics") {
  auto c2 = share(chain(2));
  CHECK(grid_oracle_norm(expr_fn(c2, gen(0)), Rational(1), 3) == 1.0);
  CHECK(grid_oracle_norm(expr_fn(c2, gen(1)), Rational(1, 20), 2) == 1.0);
  CHECK_THROWS_AS(grid_oracle_norm(expr_fn(share(chain(6)), gen(0)), Rational(1, 4), 1), SizeCapExceeded);
}

TEST_CASE("chain pushes keep the norm") {
  std::mt19937_64 rng(14);
  auto c3 = share(chain(3));
  Sublattice s(c3, {0, 2});
  for (int t = 0; t < 10; ++t) {
    auto f = LatticeExpression(s.induced(), oracle::random_expr(rng, 2, 3));
    auto a = search_lower_bound(NormableFunction(f), SearchParams{.n_max = 2});
    auto b = search_lower_bound(NormableFunction(push_forward(f, s)), SearchParams{.n_max = 2});
    CHECK(a.best.value == doctest::Approx(b.best.value).epsilon(1e-6));
  }
}
