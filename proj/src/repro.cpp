#include "fbl/repro.hpp"

#include "fbl/errors.hpp"

#include <random>

namespace fbl {

namespace {

Sublattice grid_pair(const LatticePtr& grid) {
  std::vector<int> members;
  for (const char* l : {"(1,1)", "(2,2)", "(2,3)", "(3,2)", "(3,3)"}) members.push_back(grid->require_index(l));
  return Sublattice(grid, members);
}

RealHom<Rational> on_sub(const Sublattice& sub, const std::vector<Rational>& values) {
  return RealHom<Rational>(sub.induced(), values);
}

std::string str(const Rational& q) { return to_string(q); }

}  // namespace

bool GridPairFixture::in_neighborhood(int i, const RealHom<Rational>& x) const {
  const auto& c = i == 1 ? x1 : x2;
  for (int e = 0; e < sub.size(); ++e)
    if (abs_value(Rational(x(e) - c(e))) >= epsilon / 2) return false;
  return true;
}

GridPairFixture build_grid_pair(const Rational& epsilon) {
  if (epsilon <= 0 || epsilon >= Rational(1, 2)) throw EpsilonOutOfRange("epsilon must lie strictly between 0 and 1/2");
  auto grid = share(product(chain(3), chain(3)));
  Sublattice sub = grid_pair(grid);
  const Rational e = epsilon;
  auto x1 = on_sub(sub, {Rational(-1), Rational(0), Rational(0), e, e});
  auto x2 = on_sub(sub, {Rational(0), e, Rational(1), e, Rational(1)});
  BumpFunction bump(sub.induced(), {x1, x2}, epsilon);
  return GridPairFixture{grid, sub, epsilon, x1, x2, bump};
}

Sublattice diamond_chain_pair() {
  auto d = share(diamond());
  return Sublattice(d, {d->require_index("m"), d->require_index("a"), d->require_index("M")});
}

bool ReproReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const ReproCheck& c) { return c.pass; });
}

nlohmann::json ReproReport::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json j = {{"name", c.name},
                        {"expected", c.expected},
                        {"observed", c.observed},
                        {"pass", c.pass},
                        {"provenance", c.provenance}};
    if (!c.note.empty()) j["note"] = c.note;
    arr.push_back(j);
  }
  return {{"checks", arr}, {"pass", pass()}};
}

ReproReport repro_diamond_chain() {
  ReproReport r;
  const Sublattice sub = diamond_chain_pair();
  const auto& d = sub.parent();

  int most = 0;
  for (const auto& c : enumerate_chain_colorings(d)) most = std::max(most, c.num_levels());
  r.checks.push_back({"diamond colorings use at most two levels", "<= 2", most, most <= 2, "reference", ""});

  int sub_most = 0;
  for (const auto& c : enumerate_chain_colorings(sub.induced())) sub_most = std::max(sub_most, c.num_levels());
  r.checks.push_back({"chain {m,a,M} has a three-level coloring", 3, sub_most, sub_most == 3, "reference", ""});

  auto ext = extension_property(sub);
  nlohmann::json witness = nullptr;
  if (ext.counterexample) {
    witness = nlohmann::json::object();
    for (int i = 0; i < sub.size(); ++i) witness[sub.induced()->label(i)] = ext.counterexample->level(i);
  }
  const bool witness_ok = ext.counterexample && ext.counterexample->levels() == std::vector<int>{1, 2, 3};
  r.checks.push_back({"extension property fails", {{"holds", false}, {"witness", {{"m", 1}, {"a", 2}, {"M", 3}}}},
                      {{"holds", ext.holds}, {"witness", witness}}, !ext.holds && witness_ok, "reference", ""});

  bool chain_ok = true;
  std::string verdict;
  try {
    auto rep = analyze_pair(sub, "chain {m,a,M}", "diamond");
    verdict = rep.verdict_code() == 2 ? "not-injective" : "unexpected";
    chain_ok = rep.verdict_code() == 2;
  } catch (const std::logic_error& e) {
    chain_ok = false;
    verdict = e.what();
  }
  r.checks.push_back({"implication chain holds", "not-injective", verdict, chain_ok, "trivial", ""});
  return r;
}

namespace {

// A homomorphism near x_i with the same three value classes, moved by
// rational offsets in (-ε/4, ε/4); the class at -1 or 1 stays put.
RealHom<Rational> perturb(const GridPairFixture& fx, int i, std::mt19937_64& rng) {
  constexpr int kSteps = 1000;
  std::uniform_int_distribution<int> step(-kSteps + 1, kSteps - 1);
  auto offset = [&] { return fx.epsilon / 4 * Rational(step(rng), kSteps); };
  const Rational& e = fx.epsilon;
  if (i == 1) {
    const Rational low = offset();
    const Rational high = e + offset();
    return on_sub(fx.sub, {Rational(-1), low, low, high, high});
  }
  const Rational low = offset();
  const Rational mid = e + offset();
  return on_sub(fx.sub, {low, mid, Rational(1), mid, Rational(1)});
}

}  // namespace

ReproReport repro_grid_pair(const Rational& epsilon, const GridPairOptions& options) {
  const GridPairFixture fx = build_grid_pair(epsilon);
  const Rational& e = fx.epsilon;
  ReproReport r;

  auto ext = extension_property(fx.sub);
  r.checks.push_back({"(1) extension property of L in M", true, ext.holds, ext.holds, "reference", ""});

  const Rational c = admissibility(std::vector<RealHom<Rational>>{fx.x1, fx.x2});
  r.checks.push_back({"(2) admissibility of (x1, x2)", str(1 + e), str(c), c == 1 + e, "reference", ""});

  const Rational s = Rational(1) / (1 + e);
  const NormableFunction f_sub = fx.f_on_sub();
  auto cert = lower_bound(f_sub, std::vector<std::vector<RealHom<Rational>>>{{fx.x1.scaled(s), fx.x2.scaled(s)}});
  const Rational lower = cert.value;
  r.checks.push_back({"(3) lower bound over L", str(2 / (1 + e)), str(lower), lower == 2 / (1 + e), "reference", ""});

  std::mt19937_64 rng(options.seed);
  int violations = 0;
  int not_unique = 0;
  int outside = 0;
  const Rational threshold = 1 - e / 2;
  const int corner = fx.grid->require_index("(1,3)");
  for (int k = 0; k < options.samples; ++k) {
    const int i = 1 + k % 2;
    const auto x = perturb(fx, i, rng);
    if (!fx.in_neighborhood(i, x)) ++outside;
    auto hat = extend_real_hom(x, fx.sub);
    if (!hat || abs_value((*hat)(corner)) <= threshold) ++violations;
    if (enumerate_coloring_extensions(coloring_of(x), fx.sub, 2).size() != 1) ++not_unique;
  }
  const std::string vacuous = options.samples == 0 ? "no samples drawn; vacuous" : "";
  r.checks.push_back({"(4) |x^((1,3))| > 1 - eps/2 on sampled neighborhood points",
                      {{"violations", 0}, {"threshold", str(threshold)}},
                      {{"samples", options.samples}, {"violations", violations}, {"outside_neighborhood", outside}},
                      violations == 0 && outside == 0, "reference", vacuous});
  r.checks.push_back({"(5) sampled points extend uniquely", 0, not_unique, not_unique == 0, "derived", vacuous});

  const NormableFunction f_grid = fx.f_on_grid();
  SearchParams p;
  p.n_max = options.n_max;
  p.restarts = options.restarts;
  p.seed = options.seed;
  p.cell_budget = options.budget;
  for (const auto& h : {fx.x1, fx.x2}) {
    auto hat = extend_real_hom(h, fx.sub);
    if (hat) {
      std::vector<double> v;
      for (const auto& q : hat->values()) v.push_back(to_double(q));
      p.seeds.push_back({RealHom<double>(fx.grid, v)});
    }
  }
  if (p.seeds.size() == 2) p.seeds.push_back({p.seeds[0][0], p.seeds[1][0]});
  auto search = search_lower_bound(f_grid, p);
  const double ceiling = to_double(Rational(1) / (1 - e));
  r.checks.push_back({"(6) no tuple over M beats 1/(1-eps)",
                      {{"at_most", ceiling + 1e-6}},
                      {{"best", search.best.value}, {"cells", search.cells}, {"n_max", options.n_max}},
                      search.best.value <= ceiling + 1e-6, "reference",
                      "falsification attempt only; not a proof of the bound"});

  if (e < Rational(1, 3)) {
    const bool gap = lower > 1 / (1 - e);
    r.checks.push_back({"(7) lower bound over L exceeds 1/(1-eps)", {{"exceeds", str(1 / (1 - e))}}, str(lower), gap,
                        "reference", ""});
  } else {
    r.checks.push_back({"(7) lower bound over L exceeds 1/(1-eps)", "not applicable for eps >= 1/3", str(lower), true,
                        "derived", "2/(1+eps) <= 1/(1-eps) once eps >= 1/3; the two bounds no longer separate"});
  }
  return r;
}

}  // namespace fbl
