#pragma once

#include "fbl/homs.hpp"
#include "fbl/lattice.hpp"
#include "fbl/rational.hpp"

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace fbl {

struct ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

/// Immutable node of a lattice-linear expression DAG. Subtrees may be
/// shared; sharing is visible to the norm search (evaluated once per hom).
struct ExprNode {
  enum class Kind { Generator, Scale, Sum, Join, Meet };
  Kind kind;
  int generator = -1;   // Generator
  Rational coefficient; // Scale
  std::vector<Expr> children;
};

Expr gen(int element);
Expr scale(const Rational& coefficient, Expr child);
Expr sum(std::vector<Expr> children);
Expr join(std::vector<Expr> children);
Expr meet(std::vector<Expr> children);
/// The zero function, written as 0 * gen(0).
Expr zero();

inline Expr operator+(Expr a, Expr b) { return sum({std::move(a), std::move(b)}); }
inline Expr operator-(Expr a, Expr b) { return sum({std::move(a), scale(Rational(-1), std::move(b))}); }
inline Expr operator*(const Rational& c, Expr a) { return scale(c, std::move(a)); }
inline Expr operator|(Expr a, Expr b) { return join({std::move(a), std::move(b)}); }
inline Expr operator&(Expr a, Expr b) { return meet({std::move(a), std::move(b)}); }

/// An expression over the generators of one lattice.
class LatticeExpression {
 public:
  LatticeExpression(LatticePtr lattice, Expr root);

  const LatticePtr& lattice() const { return lattice_; }
  const Expr& root() const { return root_; }

 private:
  LatticePtr lattice_;
  Expr root_;
};

template <class Scalar>
Scalar eval(const Expr& e, const std::vector<Scalar>& values) {
  switch (e->kind) {
    case ExprNode::Kind::Generator:
      return values[static_cast<std::size_t>(e->generator)];
    case ExprNode::Kind::Scale:
      return scalar_from<Scalar>(e->coefficient) * eval(e->children.front(), values);
    case ExprNode::Kind::Sum: {
      Scalar s(0);
      for (const auto& c : e->children) s += eval(c, values);
      return s;
    }
    case ExprNode::Kind::Join:
    case ExprNode::Kind::Meet: {
      Scalar best = eval(e->children.front(), values);
      for (std::size_t i = 1; i < e->children.size(); ++i) {
        Scalar v = eval(e->children[i], values);
        best = e->kind == ExprNode::Kind::Join ? std::max(best, v) : std::min(best, v);
      }
      return best;
    }
  }
  return Scalar(0);
}

template <class Scalar>
Scalar eval(const LatticeExpression& f, const RealHom<Scalar>& x) {
  if (x.lattice() != f.lattice() && x.lattice()->labels() != f.lattice()->labels()) {
    throw InvalidInput("homomorphism and expression live on different lattices");
  }
  return eval(f.root(), x.values());
}

/// Reads `(join (gen "a") (scale 1/2 (sum ...)))`; labels resolve in lattice.
LatticeExpression parse_expression(std::string_view text, const LatticePtr& lattice);
std::string print_expression(const LatticeExpression& f);

/// Same tree over the parent; generators are matched by label.
LatticeExpression push_forward(const LatticeExpression& f, const Sublattice& sub);

/// Distinct generators mentioned by e.
std::vector<int> generators_of(const Expr& e);

/// Number of nodes reachable, counting shared nodes once.
std::size_t dag_size(const Expr& e);

/// Sum of |coefficient| mass: an upper bound on the norm via the triangle
/// inequality and |a ∨ b|, |a ∧ b| <= |a| + |b|.
Rational coefficient_mass(const Expr& e);

}  // namespace fbl
