// One line per acceptance criterion; exit status 1 if any fails.

#include "oracles.hpp"

#include "fbl/embedding.hpp"
#include "fbl/lattice_io.hpp"
#include "fbl/norm.hpp"
#include "fbl/repro.hpp"

#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>

using namespace fbl;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

template <class Body>
bool criterion(int id, const char* title, double time_limit, Body body) {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.require(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  out.require(secs <= time_limit, "time limit " + std::to_string(time_limit) + " s exceeded");
  std::printf("[%s] criterion %d: %s (%.2f s) %s\n", out.pass ? "PASS" : "FAIL", id, title, secs, out.detail.str().c_str());
  std::fflush(stdout);
  return out.pass;
}

NormableFunction expr_fn(const LatticePtr& l, Expr e) { return NormableFunction(LatticeExpression(l, std::move(e))); }

std::vector<Rational> random_levels(std::mt19937_64& rng, int k) {
  std::set<int> picks;
  while (static_cast<int>(picks.size()) < k) picks.insert(std::uniform_int_distribution<int>(-30, 30)(rng));
  std::vector<Rational> out;
  for (int p : picks) out.emplace_back(p, 30);
  return out;
}

}  // namespace

int main() {
  bool all = true;

  all &= criterion(1, "diamond colorings and the non-extendable chain", 1.0, [](Outcome& o) {
    auto d = share(diamond());
    auto colorings = enumerate_chain_colorings(d);
    o.require(colorings.size() == oracle::colorings(*d).size(), "coloring count matches brute force");
    for (const auto& c : colorings) o.require(c.num_levels() <= 2, "at most two levels");
    auto ext = extension_property(diamond_chain_pair());
    o.require(!ext.holds, "extension property fails");
    o.require(ext.counterexample && ext.counterexample->levels() == std::vector<int>{1, 2, 3}, "witness levels 1,2,3");
    o.detail << colorings.size() << " diamond colorings; ";
  });

  all &= criterion(2, "grid pair has the extension property", 30.0, [](Outcome& o) {
    auto fx = build_grid_pair(Rational(1, 10));
    auto ext = extension_property(fx.sub);
    o.require(ext.holds, "extension property holds");
    auto grid_colorings = oracle::colorings_pruned(*fx.grid);
    std::set<std::vector<int>> images;
    for (const auto& c : grid_colorings) {
      std::vector<int> r;
      for (int x : fx.sub.members()) r.push_back(c[static_cast<std::size_t>(x)]);
      images.insert(oracle::normalize(r));
    }
    auto sub_colorings = oracle::colorings(*fx.sub.induced());
    o.require(images == sub_colorings, "every coloring of L is a restriction");
    o.require(enumerate_chain_colorings(fx.grid).size() == grid_colorings.size(), "grid coloring count");
    o.detail << grid_colorings.size() << " grid colorings, " << sub_colorings.size() << " on L; ";
  });

  for (Rational eps : {Rational(1, 10), Rational(1, 5), Rational(2, 5)}) {
    const std::string title = "grid pair non-isometry at eps = " + to_string(eps);
    all &= criterion(3, title.c_str(), 300.0, [&](Outcome& o) {
      GridPairOptions opt;
      opt.samples = 1000;
      opt.budget = 10000;
      opt.n_max = 4;
      auto rep = repro_grid_pair(eps, opt);
      for (const auto& c : rep.checks) o.require(c.pass, c.name);
      auto fx = build_grid_pair(eps);
      o.require(admissibility(std::vector<RealHom<Rational>>{fx.x1, fx.x2}) == 1 + eps, "admissibility 1 + eps");
      o.detail << "lower " << rep.checks[2].observed.get<std::string>() << ", search over M "
               << rep.checks[5].observed.dump() << "; ";
    });
  }

  all &= criterion(4, "retraction exists iff locally complemented (|M| <= 6)", 600.0, [](Outcome& o) {
    int pairs = 0;
    int lattices = 0;
    for (const auto& l : oracle::all_distributive(6)) {
      auto m = share(l);
      ++lattices;
      for (const auto& s : enumerate_sublattices(m)) {
        ++pairs;
        const bool local = local_complement_check(s).holds;
        const bool retract = find_retraction(s).has_value();
        std::vector<std::vector<int>> allowed;
        for (int x = 0; x < m->size(); ++x) allowed.push_back(s.contains(x) ? std::vector<int>{x} : s.members());
        const bool brute = !oracle::lattice_homs(*m, *m, allowed).empty();
        o.require(local == retract, "local complementation equals retraction");
        o.require(retract == brute, "retraction search equals brute force");
      }
    }
    o.detail << lattices << " lattices, " << pairs << " pairs; ";
  });

  all &= criterion(5, "structural fast paths", 600.0, [](Outcome& o) {
    std::mt19937_64 rng(2024);
    int instances = 0;
    auto validate = [&](const Sublattice& s, const char* kind) {
      auto fp = fast_path_loc_comp(s);
      o.require(fp.has_value(), std::string(kind) + " fast path applies");
      if (!fp) return;
      const auto& m = *s.parent();
      for (const auto& f : enumerate_sublattices(s.parent()))
        o.require(oracle::local_map_ok(m, s.members(), f.members(), fp->build(f)), std::string(kind) + " builder output");
      o.require(local_complement_check(s).holds, std::string(kind) + " agrees with the checker");
      ++instances;
    };
    for (int t = 0; t < 50; ++t) {
      const int n = std::uniform_int_distribution<int>(2, 7)(rng);
      auto m = share(chain(n));
      std::vector<int> subset;
      while (subset.empty())
        for (int i = 0; i < n; ++i)
          if (rng() % 2) subset.push_back(i);
      validate(Sublattice(m, subset), "chain");
    }
    for (int t = 0; t < 50; ++t) {
      auto m = share(oracle::random_distributive(rng, 4, 0.3, 12));
      const int z = std::uniform_int_distribution<int>(0, m->size() - 1)(rng);
      std::vector<int> down;
      std::vector<int> up;
      for (int x = 0; x < m->size(); ++x) {
        if (m->leq(x, z)) down.push_back(x);
        if (m->leq(z, x)) up.push_back(x);
      }
      validate(Sublattice(m, down), "ideal");
      validate(Sublattice(m, up), "filter");
    }
    for (int t = 0; t < 50; ++t) {
      auto inner = oracle::random_distributive(rng, 3, 0.3, 8);
      auto m = share(bound_extension(inner));
      std::vector<int> members;
      for (const auto& lab : inner.labels()) members.push_back(m->require_index(lab));
      Sublattice s(m, members);
      auto fp = fast_path_loc_comp(s);
      o.require(fp && (fp->tag == FastPath::BoundedExtension || fp->tag == FastPath::Chain), "bounded-extension tag");
      validate(s, "bounded-extension");
    }
    o.detail << instances << " instances; ";
  });

  all &= criterion(6, "vector extension along retractions", 600.0, [](Outcome& o) {
    std::mt19937_64 rng(77);
    int done = 0;
    while (done < 100) {
      auto m = share(oracle::random_distributive(rng, 4, 0.35, 9));
      auto subs = enumerate_sublattices(m);
      const auto& s = subs[std::uniform_int_distribution<std::size_t>(0, subs.size() - 1)(rng)];
      if (!local_complement_check(s).holds) continue;
      auto colorings = enumerate_chain_colorings(s.induced());
      const int dim = std::uniform_int_distribution<int>(1, 3)(rng);
      std::vector<std::vector<Rational>> comps;
      for (int k = 0; k < dim; ++k) {
        const auto& c = colorings[std::uniform_int_distribution<std::size_t>(0, colorings.size() - 1)(rng)];
        comps.push_back(realize_hom(c, random_levels(rng, c.num_levels())).values());
      }
      VectorHom<Rational> phi(s.induced(), comps);
      auto big = extend_vector_hom(phi, s);
      for (int i = 0; i < s.size(); ++i)
        for (int k = 0; k < dim; ++k)
          o.require(big.component(k)[static_cast<std::size_t>(s.members()[static_cast<std::size_t>(i)])] == phi.component(k)[static_cast<std::size_t>(i)],
                    "restriction equals phi");
      for (int y = 0; y < m->size(); ++y) {
        bool found = false;
        for (int i = 0; i < s.size() && !found; ++i) {
          bool same = true;
          for (int k = 0; k < dim; ++k)
            same = same && big.component(k)[static_cast<std::size_t>(y)] == phi.component(k)[static_cast<std::size_t>(i)];
          found = same;
        }
        o.require(found, "image inside phi(L)");
      }
      o.require(big.norm() == phi.norm(), "norm preserved exactly");
      ++done;
    }
    o.detail << done << " pairs; ";
  });

  all &= criterion(7, "norm engine soundness on small fixtures", 600.0, [](Outcome& o) {
    std::mt19937_64 rng(31);
    int functions = 0;
    double worst = 0;
    for (const char* name : {"chain2", "chain3", "diamond", "square", "diamond_chain"}) {
      auto l = share(load_lattice(std::string(FBL_FIXTURE_DIR) + "/" + name + ".json"));
      if (l->size() > 4) continue;
      std::vector<Expr> exprs;
      for (int x = 0; x < l->size(); ++x) exprs.push_back(gen(x));
      const std::size_t generators = exprs.size();
      for (int t = 0; t < 6; ++t) exprs.push_back(oracle::random_expr(rng, l->size(), 3));
      for (std::size_t i = 0; i < exprs.size(); ++i) {
        auto f = expr_fn(l, exprs[i]);
        auto est = estimate_norm(f, SearchParams{.n_max = 3});
        const double oracle_value = grid_oracle_norm(f, Rational(1, 20), 3);
        const double gap = est.search.best.value - oracle_value;
        worst = std::max(worst, std::abs(gap));
        o.require(gap >= -1e-9 && gap <= 1.0 / 20 + 1e-9, "search within grid resolution of the oracle");
        o.require(est.lower.constraint <= 1 + 1e-12, "certificate admissible");
        o.require(est.supnorm.value <= est.lower.value + 1e-9, "supnorm <= lower");
        o.require(est.lower.value <= est.upper + 1e-9, "lower <= upper");
        o.require(est.upper_method == "factor-2-sandwich" && est.upper == 2 * est.supnorm.value, "upper = 2 supnorm");
        if (i < generators) o.require(est.lower.value <= 1 + 1e-9 && est.upper >= 1 - 1e-9, "generator interval contains 1");
        ++functions;
      }
    }
    o.detail << functions << " functions, largest |search - oracle| " << worst << "; ";
  });

  all &= criterion(8, "chain pairs give equal norms", 600.0, [](Outcome& o) {
    std::mt19937_64 rng(55);
    double worst = 0;
    for (int t = 0; t < 20; ++t) {
      const int n = std::uniform_int_distribution<int>(2, 5)(rng);
      auto m = share(chain(n));
      std::vector<int> subset;
      while (subset.size() < 2) {
        subset.clear();
        for (int i = 0; i < n; ++i)
          if (rng() % 2) subset.push_back(i);
      }
      Sublattice s(m, subset);
      LatticeExpression f(s.induced(), oracle::random_expr(rng, s.size(), 3));
      SearchParams p{.n_max = 2, .cell_budget = 1000000};
      auto a = search_lower_bound(NormableFunction(f), p);
      auto b = search_lower_bound(NormableFunction(push_forward(f, s)), p);
      for (bool e : a.exhaustive_by_n) o.require(e, "exhaustive over L");
      for (bool e : b.exhaustive_by_n) o.require(e, "exhaustive over M");
      worst = std::max(worst, std::abs(a.best.value - b.best.value));
      o.require(std::abs(a.best.value - b.best.value) <= 1e-6, "norms agree");
    }
    o.detail << "largest difference " << worst << "; ";
  });

  std::printf("%s\n", all ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
  return all ? 0 : 1;
}
