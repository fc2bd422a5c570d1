#pragma once

#include "fbl/expression.hpp"
#include "fbl/homs.hpp"
#include "fbl/rational.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fbl {

/// f(λ b) = λ g(b) for b in K_L, with
/// g(b) = max_i max(0, 1 - (2/ε) max_x |b(x) - c_i(x)|).
class BumpFunction {
 public:
  BumpFunction(LatticePtr lattice, std::vector<RealHom<Rational>> centers, Rational epsilon);

  const LatticePtr& lattice() const { return lattice_; }
  const std::vector<RealHom<Rational>>& centers() const { return centers_; }
  const Rational& epsilon() const { return epsilon_; }

  template <class Scalar>
  Scalar base(const RealHom<Scalar>& b) const {
    const Scalar slope = scalar_from<Scalar>(Rational(2) / epsilon_);
    Scalar best(0);
    for (const auto& c : centers_) {
      Scalar dist(0);
      for (int x = 0; x < lattice_->size(); ++x) dist = std::max(dist, abs_value(Scalar(b(x) - scalar_from<Scalar>(c(x)))));
      best = std::max(best, Scalar(Scalar(1) - slope * dist));
    }
    return best;
  }

  template <class Scalar>
  Scalar operator()(const RealHom<Scalar>& x) const {
    auto parts = radial_decompose(x);
    if (!parts) return Scalar(0);
    return parts->scale * base(parts->base);
  }

  /// The same function written with generators only:
  /// 0 ∨ ⋁_i (λ - (2/ε) ⋁_x |δ_x - c_i(x) λ|), λ = |δ_m| ∨ |δ_M|.
  /// λ is one shared node.
  Expr as_expression() const;

 private:
  LatticePtr lattice_;
  std::vector<RealHom<Rational>> centers_;
  Rational epsilon_;
};

/// A positively homogeneous function on the homomorphisms of `lattice()`:
/// a lattice expression, or a bump evaluated on restrictions to a sublattice.
class NormableFunction {
 public:
  explicit NormableFunction(LatticeExpression f);
  explicit NormableFunction(BumpFunction g);
  /// x -> g(x restricted to sub); the domain becomes sub.parent().
  NormableFunction(BumpFunction g, Sublattice sub);

  const LatticePtr& lattice() const { return domain_; }
  bool is_radial() const { return bump_.has_value(); }
  /// An equivalent expression over lattice(); drives the cell search.
  const LatticeExpression& linear_form() const { return linear_; }

  template <class Scalar>
  Scalar operator()(const RealHom<Scalar>& x) const {
    if (x.lattice() != domain_ && x.lattice()->labels() != domain_->labels()) {
      throw InvalidInput("homomorphism is not on the function's lattice");
    }
    if (!bump_) return eval(linear_.root(), x.values());
    if (!restriction_) return (*bump_)(x);
    std::vector<Scalar> v;
    for (int m : restriction_->members()) v.push_back(x(m));
    return (*bump_)(RealHom<Scalar>(restriction_->induced(), std::move(v)));
  }

 private:
  LatticePtr domain_;
  LatticeExpression linear_;
  std::optional<BumpFunction> bump_;
  std::optional<Sublattice> restriction_;
};

/// Expressions are re-pointed at the parent; bumps compose with restriction.
NormableFunction push_forward(const NormableFunction& f, const Sublattice& sub);

/// max over x of sum_i |x_i(x)|; 0 for the empty tuple.
template <class Scalar>
Scalar admissibility(const std::vector<RealHom<Scalar>>& tuple) {
  Scalar c(0);
  if (tuple.empty()) return c;
  const auto& lattice = tuple.front().lattice();
  for (const auto& h : tuple)
    if (h.lattice() != lattice && h.lattice()->labels() != lattice->labels()) throw InvalidInput("tuple mixes lattices");
  for (int x = 0; x < lattice->size(); ++x) {
    Scalar s(0);
    for (const auto& h : tuple) s += abs_value(h(x));
    c = std::max(c, s);
  }
  return c;
}

/// A tuple scaled to be admissible and the value sum_i |f(x_i)| it certifies.
template <class Scalar>
struct Certificate {
  Scalar value{0};
  Scalar constraint{0};  // admissibility after scaling, <= 1
  std::vector<RealHom<Scalar>> tuple;
};

template <class Scalar>
Certificate<Scalar> certify(const NormableFunction& f, std::vector<RealHom<Scalar>> tuple) {
  Certificate<Scalar> cert;
  const Scalar c = admissibility(tuple);
  if (c > Scalar(1)) {
    for (auto& h : tuple) h = h.scaled(Scalar(1) / c);
  }
  cert.constraint = admissibility(tuple);
  for (const auto& h : tuple) cert.value += abs_value(f(h));
  cert.tuple = std::move(tuple);
  return cert;
}

/// Best certificate among the given tuples (the first one on ties).
template <class Scalar>
Certificate<Scalar> lower_bound(const NormableFunction& f, const std::vector<std::vector<RealHom<Scalar>>>& tuples) {
  if (tuples.empty()) throw InvalidInput("lower_bound needs at least one tuple");
  std::optional<Certificate<Scalar>> best;
  for (const auto& t : tuples) {
    auto c = certify(f, t);
    if (!best || c.value > best->value) best = std::move(c);
  }
  return *best;
}

struct SearchParams {
  int n_max = 4;
  /// Hill-climbing runs per n when full enumeration is over budget.
  int restarts = 64;
  std::uint64_t seed = 7;
  /// Linear programs allowed per tuple size n.
  std::size_t cell_budget = 10000;
  /// Refuse to linearize into more single-slot cells than this.
  std::size_t fragment_cap = 200000;
  /// Tuples evaluated directly before the search.
  std::vector<std::vector<RealHom<double>>> seeds;
};

struct SearchResult {
  Certificate<double> best;
  std::vector<double> best_by_n;        // index n-1
  std::vector<bool> exhaustive_by_n;    // every cell covered (up to pruning)
  std::size_t cells = 0;                // linear programs solved
  std::size_t slot_cells = 0;           // nonzero single-slot cells
};

SearchResult search_lower_bound(const NormableFunction& f, const SearchParams& params = {});

struct SupNorm {
  double value = 0;
  RealHom<double> witness;  // in K_L
  bool exact = false;       // every single-slot cell solved
};

/// sup of |f| over K_L, equal to the sup over all homomorphisms by homogeneity.
SupNorm supnorm_K(const NormableFunction& f, std::size_t fragment_cap = 200000);

struct NormEstimate {
  Certificate<double> lower;
  double upper = 0;
  std::string upper_method;  // "factor-2-sandwich" or "trivial"
  SupNorm supnorm;
  SearchResult search;
};

/// Interval [lower, upper] for the norm; lower always includes the
/// single-hom certificate from the supnorm witness.
NormEstimate estimate_norm(const NormableFunction& f, const SearchParams& params = {});

/// 2 sup_K |f| when the sup is exact, otherwise the coefficient mass of
/// the linear form.
double upper_bound(const NormableFunction& f, std::string* method = nullptr);

/// Brute force over homomorphisms with values on the grid {k/G}, G = 1/step,
/// and tuples of up to n_max of them. Independent of the cell search.
double grid_oracle_norm(const NormableFunction& f, const Rational& grid_step, int n_max, int size_cap = 5);

nlohmann::json hom_to_json(const RealHom<double>& h);
nlohmann::json hom_to_json(const RealHom<Rational>& h);
nlohmann::json to_json(const NormEstimate& estimate);

}  // namespace fbl
