#include "fbl/embedding.hpp"

#include "fbl/hom_search.hpp"
#include "fbl/lp.hpp"

#include <random>
#include <set>
#include <stdexcept>

namespace fbl {

namespace {

void require_cap(const Sublattice& sub, int size_cap) {
  if (sub.parent()->size() > size_cap) {
    throw SizeCapExceeded("lattice of " + std::to_string(sub.parent()->size()) + " elements exceeds cap " +
                          std::to_string(size_cap));
  }
}

// Homomorphisms source -> parent with images in sub; fixed[i] >= 0 pins i.
std::optional<LatticeMap> search_into(const FiniteLattice& source, const Sublattice& sub, const std::vector<int>& fixed) {
  std::vector<std::vector<int>> candidates(static_cast<std::size_t>(source.size()));
  for (int i = 0; i < source.size(); ++i) {
    int pin = fixed[static_cast<std::size_t>(i)];
    candidates[static_cast<std::size_t>(i)] = pin >= 0 ? std::vector<int>{pin} : sub.members();
  }
  HomSearch<LatticeCodomain> search(source, LatticeCodomain{sub.parent().get()}, std::move(candidates));
  std::optional<LatticeMap> found;
  search.run([&](const std::vector<int>& values) {
    found = values;
    return false;
  });
  return found;
}

int inf_of(const FiniteLattice& m, const std::vector<int>& xs) { return m.meet_of(xs); }
int sup_of(const FiniteLattice& m, const std::vector<int>& xs) { return m.join_of(xs); }

std::vector<int> common_part(const Sublattice& sub, const Sublattice& f) {
  std::vector<int> out;
  for (int x : f.members())
    if (sub.contains(x)) out.push_back(x);
  return out;
}

}  // namespace

std::optional<LatticeMap> find_retraction(const Sublattice& sub, int size_cap) {
  require_cap(sub, size_cap);
  const auto& m = *sub.parent();
  std::vector<int> fixed(static_cast<std::size_t>(m.size()), -1);
  for (int x : sub.members()) fixed[static_cast<std::size_t>(x)] = x;
  return search_into(m, sub, fixed);
}

std::optional<LatticeMap> find_local_map(const Sublattice& sub, const Sublattice& f) {
  std::vector<int> fixed;
  for (int x : f.members()) fixed.push_back(sub.contains(x) ? x : -1);
  return search_into(*f.induced(), sub, fixed);
}

bool is_local_map(const Sublattice& sub, const Sublattice& f, const LatticeMap& t) {
  const auto& m = *sub.parent();
  if (static_cast<int>(t.size()) != f.size()) return false;
  for (int i = 0; i < f.size(); ++i) {
    const int x = f.members()[static_cast<std::size_t>(i)];
    const int y = t[static_cast<std::size_t>(i)];
    if (y < 0 || y >= m.size() || !sub.contains(y)) return false;
    if (sub.contains(x) && y != x) return false;
  }
  const auto& fi = *f.induced();
  for (int a = 0; a < f.size(); ++a)
    for (int b = 0; b < f.size(); ++b) {
      if (t[static_cast<std::size_t>(fi.meet(a, b))] != m.meet(t[static_cast<std::size_t>(a)], t[static_cast<std::size_t>(b)]))
        return false;
      if (t[static_cast<std::size_t>(fi.join(a, b))] != m.join(t[static_cast<std::size_t>(a)], t[static_cast<std::size_t>(b)]))
        return false;
    }
  return true;
}

LocalComplementResult local_complement_check(const Sublattice& sub, int size_cap) {
  require_cap(sub, size_cap);
  LocalComplementResult result;
  for (const auto& f : enumerate_sublattices(sub.parent(), size_cap)) {
    auto t = find_local_map(sub, f);
    if (!t) {
      result.holds = false;
      result.witnesses.clear();
      result.failing = f;
      return result;
    }
    result.witnesses.push_back({f, std::move(*t)});
  }
  result.holds = true;
  return result;
}

std::string_view to_string(FastPath path) {
  switch (path) {
    case FastPath::Chain: return "chain";
    case FastPath::Ideal: return "ideal";
    case FastPath::Filter: return "filter";
    case FastPath::BoundedExtension: return "bounded-extension";
  }
  return "?";
}

std::optional<FastPathBuilder> fast_path_loc_comp(const Sublattice& sub) {
  const LatticePtr parent = sub.parent();
  const auto& m = *parent;
  std::vector<int> all(static_cast<std::size_t>(m.size()));
  for (int i = 0; i < m.size(); ++i) all[static_cast<std::size_t>(i)] = i;

  // Shared fallback: with F ∩ L empty any constant map into L will do.
  auto constant = [sub](const Sublattice& f) { return LatticeMap(static_cast<std::size_t>(f.size()), sub.members().front()); };

  if (is_chain(m, all)) {
    return FastPathBuilder{FastPath::Chain, [sub, constant](const Sublattice& f) {
      const auto& m = *sub.parent();
      auto common = common_part(sub, f);
      if (common.empty()) return constant(f);
      LatticeMap t;
      for (int x : f.members()) {
        std::optional<int> above;
        std::optional<int> below;
        for (int y : common) {
          if (m.leq(x, y) && (!above || m.leq(y, *above))) above = y;
          if (m.leq(y, x) && (!below || m.leq(*below, y))) below = y;
        }
        t.push_back(above ? *above : *below);
      }
      return t;
    }};
  }
  if (is_ideal(sub)) {
    return FastPathBuilder{FastPath::Ideal, [sub, constant](const Sublattice& f) {
      const auto& m = *sub.parent();
      auto common = common_part(sub, f);
      if (common.empty()) return constant(f);
      const int z = sup_of(m, common);
      LatticeMap t;
      for (int x : f.members()) t.push_back(m.meet(x, z));
      return t;
    }};
  }
  if (is_filter(sub)) {
    return FastPathBuilder{FastPath::Filter, [sub, constant](const Sublattice& f) {
      const auto& m = *sub.parent();
      auto common = common_part(sub, f);
      if (common.empty()) return constant(f);
      const int z = inf_of(m, common);
      LatticeMap t;
      for (int x : f.members()) t.push_back(m.join(x, z));
      return t;
    }};
  }
  bool only_ends = true;
  for (int x = 0; x < m.size(); ++x)
    if (!sub.contains(x) && x != m.bottom() && x != m.top()) only_ends = false;
  if (only_ends) {
    return FastPathBuilder{FastPath::BoundedExtension, [sub, constant](const Sublattice& f) {
      const auto& m = *sub.parent();
      auto common = common_part(sub, f);
      if (common.empty()) return constant(f);
      LatticeMap t;
      for (int x : f.members()) {
        if (sub.contains(x)) t.push_back(x);
        else if (x == m.bottom()) t.push_back(inf_of(m, common));
        else t.push_back(sup_of(m, common));
      }
      return t;
    }};
  }
  return std::nullopt;
}

ExtensionResult extension_property(const Sublattice& sub, int size_cap) {
  require_cap(sub, size_cap);
  ExtensionResult result;
  for (const auto& c : enumerate_chain_colorings(sub.induced(), size_cap)) {
    if (!extend_coloring(c, sub)) {
      result.counterexample = c;
      return result;
    }
  }
  result.holds = true;
  return result;
}

int EmbeddingReport::verdict_code() const {
  if (local.holds) return 0;
  if (extension.holds) return 1;
  return 2;
}

EmbeddingReport analyze_pair(const Sublattice& sub, std::string sub_name, std::string parent_name, int size_cap) {
  EmbeddingReport r;
  r.sub_name = std::move(sub_name);
  r.parent_name = std::move(parent_name);
  r.retraction = find_retraction(sub, size_cap);
  r.complemented = r.retraction.has_value();
  r.local = local_complement_check(sub, size_cap);
  r.extension = extension_property(sub, size_cap);
  if (auto fp = fast_path_loc_comp(sub)) r.fast_path = fp->tag;

  if (r.complemented && !r.local.holds) throw std::logic_error("retraction found but local complementation failed");
  if (r.local.holds && !r.extension.holds) throw std::logic_error("locally complemented pair without extension property");
  if (r.complemented != r.local.holds) throw std::logic_error("retraction and local complementation disagree");
  if (r.fast_path && !r.local.holds) throw std::logic_error("fast path applies but local complementation failed");
  return r;
}

namespace {

nlohmann::json map_json(const Sublattice& sub, const std::vector<int>& domain, const LatticeMap& t) {
  const auto& m = *sub.parent();
  nlohmann::json j = nlohmann::json::object();
  for (std::size_t i = 0; i < domain.size(); ++i) j[m.label(domain[i])] = m.label(t[i]);
  return j;
}

std::vector<std::string> labels_of(const FiniteLattice& m, const std::vector<int>& xs) {
  std::vector<std::string> out;
  for (int x : xs) out.push_back(m.label(x));
  return out;
}

}  // namespace

nlohmann::json to_json(const EmbeddingReport& report, const Sublattice& sub) {
  const auto& m = *sub.parent();
  std::vector<int> all(static_cast<std::size_t>(m.size()));
  for (int i = 0; i < m.size(); ++i) all[static_cast<std::size_t>(i)] = i;

  nlohmann::json j;
  j["sub"] = report.sub_name;
  j["parent"] = report.parent_name;
  j["complemented"] = {{"holds", report.complemented},
                       {"retraction", report.retraction ? map_json(sub, all, *report.retraction) : nlohmann::json(nullptr)}};
  nlohmann::json local = {{"holds", report.local.holds}};
  if (report.local.holds) {
    nlohmann::json ws = nlohmann::json::array();
    for (const auto& w : report.local.witnesses)
      ws.push_back({{"F", labels_of(m, w.f.members())}, {"T", map_json(sub, w.f.members(), w.t)}});
    local["witnesses"] = ws;
  } else if (report.local.failing) {
    local["failing"] = labels_of(m, report.local.failing->members());
  }
  j["locally_complemented"] = local;
  nlohmann::json ext = {{"holds", report.extension.holds}};
  if (report.extension.counterexample) {
    nlohmann::json levels = nlohmann::json::object();
    const auto& c = *report.extension.counterexample;
    for (int i = 0; i < sub.size(); ++i) levels[sub.induced()->label(i)] = c.level(i);
    ext["counterexample"] = {{"levels", levels}};
  }
  j["extension_property"] = ext;
  j["fast_path"] = report.fast_path ? nlohmann::json(std::string(to_string(*report.fast_path))) : nlohmann::json(nullptr);
  static const char* verdicts[] = {"isometric-certified", "isomorphic-only", "not-injective"};
  j["verdict"] = verdicts[report.verdict_code()];
  return j;
}

namespace {

struct Rng {
  std::mt19937_64 engine;
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine); }
};

VectorHom<Rational> sample_phi(const Sublattice& sub, const std::vector<ChainColoring>& colorings, int n, Rng& rng) {
  constexpr int kDenominator = 12;
  std::vector<std::vector<Rational>> comps;
  for (int k = 0; k < n; ++k) {
    const auto& c = colorings[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(colorings.size()) - 1))];
    std::set<int> picks;
    while (static_cast<int>(picks.size()) < c.num_levels()) picks.insert(rng.uniform(-kDenominator, kDenominator));
    std::vector<Rational> levels;
    for (int p : picks) levels.emplace_back(p, kDenominator);
    comps.push_back(realize_hom(c, levels).values());
  }
  VectorHom<Rational> phi(sub.induced(), comps);
  const Rational norm = phi.norm();
  if (norm > 1) {
    for (auto& c : comps)
      for (auto& v : c) v /= norm;
    return VectorHom<Rational>(sub.induced(), comps);
  }
  return phi;
}

// Values for the levels of each extended coordinate coloring, with pinned
// L-levels, monotone in the level and sum_k |Phi_k(y)| <= bound everywhere.
std::optional<std::vector<std::vector<double>>> fit_values(const Sublattice& sub, const VectorHom<Rational>& phi,
                                                             const std::vector<ChainColoring>& colorings, double bound) {
  const int n = phi.dimension();
  const auto& m = *sub.parent();
  std::vector<int> offset(static_cast<std::size_t>(n) + 1, 0);
  for (int k = 0; k < n; ++k) offset[static_cast<std::size_t>(k) + 1] = offset[static_cast<std::size_t>(k)] + colorings[static_cast<std::size_t>(k)].num_levels();
  const int vars = offset[static_cast<std::size_t>(n)];
  // variables w = v + 1 >= 0
  std::vector<Eigen::VectorXd> rows;
  std::vector<double> rhs;
  auto add = [&](Eigen::VectorXd row, double b) {
    rows.push_back(std::move(row));
    rhs.push_back(b);
  };
  for (int k = 0; k < n; ++k) {
    const auto& c = colorings[static_cast<std::size_t>(k)];
    for (int l = 0; l < c.num_levels(); ++l) {
      Eigen::VectorXd row = Eigen::VectorXd::Zero(vars);
      row(offset[static_cast<std::size_t>(k)] + l) = 1;
      add(row, 2.0);
      if (l + 1 < c.num_levels()) {
        Eigen::VectorXd ord = Eigen::VectorXd::Zero(vars);
        ord(offset[static_cast<std::size_t>(k)] + l) = 1;
        ord(offset[static_cast<std::size_t>(k)] + l + 1) = -1;
        add(ord, 0.0);
      }
    }
    for (int i = 0; i < sub.size(); ++i) {
      const int var = offset[static_cast<std::size_t>(k)] + c.level(sub.members()[static_cast<std::size_t>(i)]) - 1;
      const double v = to_double(phi.component(k)[static_cast<std::size_t>(i)]) + 1.0;
      Eigen::VectorXd up = Eigen::VectorXd::Zero(vars);
      up(var) = 1;
      add(up, v);
      add(-up, -v);
    }
  }
  std::set<std::vector<int>> seen;
  for (int y = 0; y < m.size(); ++y) {
    std::vector<int> key;
    for (int k = 0; k < n; ++k) key.push_back(colorings[static_cast<std::size_t>(k)].level(y));
    if (!seen.insert(key).second) continue;
    for (int s = 0; s < (1 << n); ++s) {
      Eigen::VectorXd row = Eigen::VectorXd::Zero(vars);
      double shift = 0;
      for (int k = 0; k < n; ++k) {
        const double sign = (s >> k) & 1 ? -1.0 : 1.0;
        row(offset[static_cast<std::size_t>(k)] + key[static_cast<std::size_t>(k)] - 1) = sign;
        shift += sign;
      }
      add(row, bound + shift);
    }
  }
  Eigen::MatrixXd a(static_cast<Eigen::Index>(rows.size()), vars);
  Eigen::VectorXd b(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    a.row(static_cast<Eigen::Index>(r)) = rows[r].transpose();
    b(static_cast<Eigen::Index>(r)) = rhs[r];
  }
  auto lp = solve_lp(a, b, Eigen::VectorXd::Zero(vars));
  if (lp.status != LpStatus::Optimal) return std::nullopt;
  std::vector<std::vector<double>> out;
  for (int k = 0; k < n; ++k) {
    std::vector<double> comp;
    for (int y = 0; y < m.size(); ++y) comp.push_back(lp.x(offset[static_cast<std::size_t>(k)] + colorings[static_cast<std::size_t>(k)].level(y) - 1) - 1.0);
    out.push_back(std::move(comp));
  }
  // Re-check in floating point; this is a heuristic, not a proof.
  for (int y = 0; y < m.size(); ++y) {
    double s = 0;
    for (const auto& comp : out) s += std::abs(comp[static_cast<std::size_t>(y)]);
    if (s > bound + 1e-7) return std::nullopt;
  }
  return out;
}

}  // namespace

ExplorationReport explore_l1n_extension(const Sublattice& sub, int n, int sample_count, std::uint64_t seed,
                                        const std::vector<VectorHom<Rational>>& seeds) {
  if (n < 1) throw InvalidInput("dimension must be at least 1");
  constexpr std::size_t kExtensionsPerCoordinate = 4;
  constexpr std::size_t kCombinations = 64;
  ExplorationReport report;
  report.n = n;
  if (sample_count <= 0) return report;

  const auto colorings = enumerate_chain_colorings(sub.induced());
  Rng rng{std::mt19937_64(seed)};
  for (int s = 0; s < sample_count; ++s) {
    VectorHom<Rational> phi = s < static_cast<int>(seeds.size()) ? seeds[static_cast<std::size_t>(s)]
                                                                  : sample_phi(sub, colorings, n, rng);
    if (phi.dimension() != n) throw InvalidInput("seeded homomorphism has the wrong dimension");
    ++report.samples;

    std::vector<std::vector<ChainColoring>> options;
    std::string reason;
    for (int k = 0; k < n && reason.empty(); ++k) {
      auto exts = enumerate_coloring_extensions(coloring_of(RealHom<Rational>(sub.induced(), phi.component(k))), sub,
                                                kExtensionsPerCoordinate);
      if (exts.empty()) reason = "coordinate " + std::to_string(k) + " has a non-extendable order type";
      options.push_back(std::move(exts));
    }
    bool ok = false;
    if (reason.empty()) {
      const double bound = to_double(phi.norm());
      std::vector<std::size_t> pick(static_cast<std::size_t>(n), 0);
      for (std::size_t tried = 0; tried < kCombinations && !ok; ++tried) {
        std::vector<ChainColoring> chosen;
        for (int k = 0; k < n; ++k) chosen.push_back(options[static_cast<std::size_t>(k)][pick[static_cast<std::size_t>(k)]]);
        ok = fit_values(sub, phi, chosen, bound).has_value();
        int k = 0;
        while (k < n && ++pick[static_cast<std::size_t>(k)] == options[static_cast<std::size_t>(k)].size()) pick[static_cast<std::size_t>(k++)] = 0;
        if (k == n) break;
      }
      if (!ok) reason = "no norm-preserving values found for the tried order types";
    }
    if (ok) ++report.extended;
    else report.failures.push_back({phi, reason});
  }
  return report;
}

nlohmann::json to_json(const ExplorationReport& report, const Sublattice& sub) {
  nlohmann::json j;
  j["kind"] = std::string(ExplorationReport::kind);
  j["n"] = report.n;
  j["samples"] = report.samples;
  j["extended"] = report.extended;
  nlohmann::json fails = nlohmann::json::array();
  for (const auto& f : report.failures) {
    nlohmann::json comps = nlohmann::json::array();
    for (const auto& c : f.phi.components()) {
      nlohmann::json values = nlohmann::json::object();
      for (int i = 0; i < sub.size(); ++i) values[sub.induced()->label(i)] = to_string(c[static_cast<std::size_t>(i)]);
      comps.push_back(values);
    }
    fails.push_back({{"phi", comps}, {"reason", f.reason}});
  }
  j["failures"] = fails;
  return j;
}

}  // namespace fbl
