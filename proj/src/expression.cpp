#include "fbl/expression.hpp"

#include "fbl/errors.hpp"

#include <cctype>
#include <functional>
#include <map>
#include <set>
#include <unordered_set>

namespace fbl {

namespace {

Expr make(ExprNode node) { return std::make_shared<const ExprNode>(std::move(node)); }

void require_children(const std::vector<Expr>& children, const char* what) {
  if (children.empty()) throw InvalidInput(std::string(what) + " needs at least one argument");
  for (const auto& c : children)
    if (!c) throw InvalidInput(std::string(what) + " has a null argument");
}

}  // namespace

Expr gen(int element) {
  if (element < 0) throw InvalidInput("generator index must be nonnegative");
  return make({ExprNode::Kind::Generator, element, Rational(0), {}});
}

Expr scale(const Rational& coefficient, Expr child) {
  require_children({child}, "scale");
  return make({ExprNode::Kind::Scale, -1, coefficient, {std::move(child)}});
}

Expr sum(std::vector<Expr> children) {
  require_children(children, "sum");
  return make({ExprNode::Kind::Sum, -1, Rational(0), std::move(children)});
}

Expr join(std::vector<Expr> children) {
  require_children(children, "join");
  return make({ExprNode::Kind::Join, -1, Rational(0), std::move(children)});
}

Expr meet(std::vector<Expr> children) {
  require_children(children, "meet");
  return make({ExprNode::Kind::Meet, -1, Rational(0), std::move(children)});
}

Expr zero() { return scale(Rational(0), gen(0)); }

LatticeExpression::LatticeExpression(LatticePtr lattice, Expr root) : lattice_(std::move(lattice)), root_(std::move(root)) {
  if (!lattice_ || !root_) throw InvalidInput("expression needs a lattice and a root");
  for (int g : generators_of(root_))
    if (g >= lattice_->size()) throw InvalidInput("generator index " + std::to_string(g) + " outside the lattice");
}

std::vector<int> generators_of(const Expr& e) {
  std::set<int> out;
  std::unordered_set<const ExprNode*> seen;
  std::function<void(const Expr&)> walk = [&](const Expr& n) {
    if (!seen.insert(n.get()).second) return;
    if (n->kind == ExprNode::Kind::Generator) out.insert(n->generator);
    for (const auto& c : n->children) walk(c);
  };
  walk(e);
  return {out.begin(), out.end()};
}

std::size_t dag_size(const Expr& e) {
  std::unordered_set<const ExprNode*> seen;
  std::function<void(const Expr&)> walk = [&](const Expr& n) {
    if (!seen.insert(n.get()).second) return;
    for (const auto& c : n->children) walk(c);
  };
  walk(e);
  return seen.size();
}

Rational coefficient_mass(const Expr& e) {
  switch (e->kind) {
    case ExprNode::Kind::Generator: return Rational(1);
    case ExprNode::Kind::Scale: return abs_value(e->coefficient) * coefficient_mass(e->children.front());
    default: {
      Rational s(0);
      for (const auto& c : e->children) s += coefficient_mass(c);
      return s;
    }
  }
}

// S-expression reader.
namespace {

class Reader {
 public:
  Reader(std::string_view text, const FiniteLattice& lattice) : text_(text), lattice_(lattice) {}

  Expr read_all() {
    Expr e = read();
    skip_space();
    if (pos_ != text_.size()) fail("trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_));
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      } else if (text_[pos_] == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  std::string atom() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != '(' &&
           text_[pos_] != ')' && text_[pos_] != '"')
      ++pos_;
    if (start == pos_) fail("expected a symbol");
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string quoted() {
    expect('"');
    std::string out;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) ++pos_;
      out += text_[pos_++];
    }
    if (pos_ >= text_.size()) fail("unterminated string");
    ++pos_;
    return out;
  }

  Expr read() {
    expect('(');
    const std::string head = atom();
    Expr e;
    if (head == "gen") {
      const std::string label = peek('"') ? quoted() : atom();
      auto idx = lattice_.index_of(label);
      if (!idx) fail("unknown element '" + label + "'");
      e = gen(*idx);
    } else if (head == "scale") {
      Rational c = parse_rational(atom());
      e = scale(c, read());
    } else if (head == "sum" || head == "join" || head == "meet") {
      std::vector<Expr> kids;
      while (!peek(')')) kids.push_back(read());
      if (kids.empty()) fail(head + " needs at least one argument");
      e = head == "sum" ? sum(std::move(kids)) : head == "join" ? join(std::move(kids)) : meet(std::move(kids));
    } else {
      fail("unknown operator '" + head + "'");
    }
    expect(')');
    return e;
  }

  std::string_view text_;
  const FiniteLattice& lattice_;
  std::size_t pos_ = 0;
};

void print(const Expr& e, const FiniteLattice& lattice, std::string& out) {
  switch (e->kind) {
    case ExprNode::Kind::Generator:
      out += "(gen \"" + lattice.label(e->generator) + "\")";
      return;
    case ExprNode::Kind::Scale:
      out += "(scale " + to_string(e->coefficient) + " ";
      print(e->children.front(), lattice, out);
      out += ")";
      return;
    default: {
      out += e->kind == ExprNode::Kind::Sum ? "(sum" : e->kind == ExprNode::Kind::Join ? "(join" : "(meet";
      for (const auto& c : e->children) {
        out += " ";
        print(c, lattice, out);
      }
      out += ")";
    }
  }
}

}  // namespace

LatticeExpression parse_expression(std::string_view text, const LatticePtr& lattice) {
  return LatticeExpression(lattice, Reader(text, *lattice).read_all());
}

std::string print_expression(const LatticeExpression& f) {
  std::string out;
  print(f.root(), *f.lattice(), out);
  return out;
}

LatticeExpression push_forward(const LatticeExpression& f, const Sublattice& sub) {
  const auto& src = *f.lattice();
  const auto& parent = *sub.parent();
  std::map<const ExprNode*, Expr> memo;
  std::function<Expr(const Expr&)> walk = [&](const Expr& e) -> Expr {
    if (auto it = memo.find(e.get()); it != memo.end()) return it->second;
    Expr out;
    if (e->kind == ExprNode::Kind::Generator) {
      const auto& label = src.label(e->generator);
      auto idx = parent.index_of(label);
      if (!idx || !sub.contains(*idx)) throw GeneratorNotInSublattice("generator '" + label + "' is not in the sublattice");
      out = gen(*idx);
    } else {
      std::vector<Expr> kids;
      for (const auto& c : e->children) kids.push_back(walk(c));
      out = make({e->kind, -1, e->coefficient, std::move(kids)});
    }
    memo.emplace(e.get(), out);
    return out;
  };
  return LatticeExpression(sub.parent(), walk(f.root()));
}

}  // namespace fbl
