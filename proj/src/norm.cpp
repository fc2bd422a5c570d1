#include "fbl/norm.hpp"

#include "fbl/errors.hpp"

#include <map>

namespace fbl {

BumpFunction::BumpFunction(LatticePtr lattice, std::vector<RealHom<Rational>> centers, Rational epsilon)
    : lattice_(std::move(lattice)), centers_(std::move(centers)), epsilon_(std::move(epsilon)) {
  if (!lattice_) throw InvalidInput("bump function without a lattice");
  if (epsilon_ <= 0) throw EpsilonOutOfRange("bump radius must be positive");
  if (centers_.empty()) throw InvalidInput("bump function needs at least one center");
  for (const auto& c : centers_)
    if (c.lattice() != lattice_ && c.lattice()->labels() != lattice_->labels())
      throw InvalidInput("bump center lives on another lattice");
}

Expr BumpFunction::as_expression() const {
  auto neg = [](const Expr& e) { return scale(Rational(-1), e); };
  const int m = lattice_->bottom();
  const int top = lattice_->top();
  std::vector<Expr> ends{gen(m), neg(gen(m))};
  if (top != m) {
    ends.push_back(gen(top));
    ends.push_back(neg(gen(top)));
  }
  const Expr lambda = join(ends);

  std::vector<Expr> branches{zero()};
  for (const auto& c : centers_) {
    std::vector<Expr> gaps;
    for (int x = 0; x < lattice_->size(); ++x) {
      const Rational& cx = c(x);
      if (cx == 0) {
        gaps.push_back(gen(x));
        gaps.push_back(neg(gen(x)));
      } else {
        gaps.push_back(sum({gen(x), scale(-cx, lambda)}));
        gaps.push_back(sum({neg(gen(x)), scale(cx, lambda)}));
      }
    }
    branches.push_back(sum({lambda, scale(Rational(-2) / epsilon_, join(gaps))}));
  }
  return join(branches);
}

NormableFunction::NormableFunction(LatticeExpression f) : domain_(f.lattice()), linear_(std::move(f)) {}

NormableFunction::NormableFunction(BumpFunction g)
    : domain_(g.lattice()), linear_(g.lattice(), g.as_expression()), bump_(std::move(g)) {}

NormableFunction::NormableFunction(BumpFunction g, Sublattice sub)
    : domain_(sub.parent()),
      linear_(push_forward(LatticeExpression(sub.induced(), g.as_expression()), sub)),
      bump_(std::move(g)),
      restriction_(std::move(sub)) {
  if (bump_->lattice() != restriction_->induced() && bump_->lattice()->labels() != restriction_->induced()->labels()) {
    throw InvalidInput("bump function does not live on the given sublattice");
  }
}

NormableFunction push_forward(const NormableFunction& f, const Sublattice& sub) {
  if (!f.is_radial()) return NormableFunction(push_forward(f.linear_form(), sub));
  throw InvalidInput("push a bump forward by constructing it with its sublattice");
}

double upper_bound(const NormableFunction& f, std::string* method) {
  auto sup = supnorm_K(f);
  if (sup.exact) {
    if (method) *method = "factor-2-sandwich";
    return 2 * sup.value;
  }
  if (method) *method = "trivial";
  return to_double(coefficient_mass(f.linear_form().root()));
}

NormEstimate estimate_norm(const NormableFunction& f, const SearchParams& params) {
  SupNorm sup = supnorm_K(f, params.fragment_cap);
  SearchParams p = params;
  p.seeds.push_back({sup.witness});
  SearchResult search = search_lower_bound(f, p);
  NormEstimate est{search.best, 0.0, "", sup, search};
  if (sup.exact) {
    est.upper = 2 * sup.value;
    est.upper_method = "factor-2-sandwich";
  } else {
    est.upper = to_double(coefficient_mass(f.linear_form().root()));
    est.upper_method = "trivial";
  }
  return est;
}

nlohmann::json hom_to_json(const RealHom<double>& h) {
  nlohmann::json values = nlohmann::json::object();
  for (int x = 0; x < h.lattice()->size(); ++x) values[h.lattice()->label(x)] = h(x);
  return {{"values", values}};
}

nlohmann::json hom_to_json(const RealHom<Rational>& h) {
  nlohmann::json values = nlohmann::json::object();
  for (int x = 0; x < h.lattice()->size(); ++x) values[h.lattice()->label(x)] = to_string(h(x));
  return {{"values", values}};
}

nlohmann::json to_json(const NormEstimate& e) {
  nlohmann::json tuple = nlohmann::json::array();
  for (const auto& h : e.lower.tuple) tuple.push_back(hom_to_json(h));
  nlohmann::json by_n = nlohmann::json::array();
  for (std::size_t n = 0; n < e.search.best_by_n.size(); ++n)
    by_n.push_back({{"n", n + 1}, {"best", e.search.best_by_n[n]}, {"exhaustive", static_cast<bool>(e.search.exhaustive_by_n[n])}});
  return {
      {"lower", {{"value", e.lower.value}, {"constraint", e.lower.constraint}, {"witness", tuple}}},
      {"upper", {{"value", e.upper}, {"method", e.upper_method}}},
      {"supnorm", {{"value", e.supnorm.value}, {"exact", e.supnorm.exact}, {"witness", hom_to_json(e.supnorm.witness)}}},
      {"search", {{"cells", e.search.cells}, {"slot_cells", e.search.slot_cells}, {"by_n", by_n}}},
  };
}

}  // namespace fbl
