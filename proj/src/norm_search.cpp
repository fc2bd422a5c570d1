#include "fbl/errors.hpp"
#include "fbl/lp.hpp"
#include "fbl/norm.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <random>
#include <set>
#include <unordered_map>

namespace fbl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kUseful = 1e-12;

/// Affine function of slot-local variables.
struct Affine {
  std::vector<double> coef;
  double constant = 0;

  static Affine variable(int v) {
    Affine a;
    a.coef.assign(static_cast<std::size_t>(v) + 1, 0.0);
    a.coef[static_cast<std::size_t>(v)] = 1.0;
    return a;
  }

  void add(const Affine& o, double k) {
    if (o.coef.size() > coef.size()) coef.resize(o.coef.size(), 0.0);
    for (std::size_t i = 0; i < o.coef.size(); ++i) coef[i] += k * o.coef[i];
    constant += k * o.constant;
  }

  Affine minus(const Affine& o) const {
    Affine r = *this;
    r.add(o, -1.0);
    return r;
  }
};

struct Interval {
  double lo;
  double hi;
};

/// Coloring-independent facts about the expression DAG.
struct Analysis {
  std::unordered_map<const ExprNode*, int> parents;
  std::unordered_map<const ExprNode*, int> pure;  // element the term collapses to
  std::unordered_map<const ExprNode*, Interval> range;

  Analysis(const Expr& root, const FiniteLattice& lattice) {
    std::function<void(const Expr&)> walk = [&](const Expr& e) {
      if (range.count(e.get())) return;
      for (const auto& c : e->children) {
        walk(c);
        ++parents[c.get()];
      }
      Interval r{0, 0};
      switch (e->kind) {
        case ExprNode::Kind::Generator:
          r = {-1, 1};
          pure[e.get()] = e->generator;
          break;
        case ExprNode::Kind::Scale: {
          const double c = to_double(e->coefficient);
          const Interval k = range.at(e->children.front().get());
          r = c >= 0 ? Interval{c * k.lo, c * k.hi} : Interval{c * k.hi, c * k.lo};
          break;
        }
        case ExprNode::Kind::Sum:
          for (const auto& c : e->children) {
            r.lo += range.at(c.get()).lo;
            r.hi += range.at(c.get()).hi;
          }
          break;
        case ExprNode::Kind::Join:
        case ExprNode::Kind::Meet: {
          const bool is_join = e->kind == ExprNode::Kind::Join;
          r = range.at(e->children.front().get());
          bool all_pure = true;
          std::vector<int> elems;
          for (const auto& c : e->children) {
            const Interval k = range.at(c.get());
            r.lo = is_join ? std::max(r.lo, k.lo) : std::min(r.lo, k.lo);
            r.hi = is_join ? std::max(r.hi, k.hi) : std::min(r.hi, k.hi);
            auto it = pure.find(c.get());
            if (it == pure.end()) all_pure = false;
            else elems.push_back(it->second);
          }
          if (all_pure) pure[e.get()] = is_join ? lattice.join_of(elems) : lattice.meet_of(elems);
          break;
        }
      }
      range[e.get()] = r;
    };
    walk(root);
  }

  bool shared(const ExprNode* e) const {
    auto it = parents.find(e);
    return it != parents.end() && it->second > 1;
  }
};

/// One tuple slot: a coloring, a choice at every branching join/meet and a
/// sign. Within it the slot's contribution is affine in the variables.
struct Fragment {
  int coloring = 0;
  int levels = 0;
  int sigma = 1;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<Affine> constraints;  // each <= 0
  Affine objective;
  double solo = 0;
};

class SlotBuilder {
 public:
  SlotBuilder(const Analysis& analysis, const ChainColoring& coloring, std::vector<int>& decisions,
              std::vector<int>& arities)
      : analysis_(analysis), coloring_(coloring), decisions_(decisions), arities_(arities) {}

  Fragment build(const Expr& root, int sigma, int coloring_index) {
    frag_.coloring = coloring_index;
    frag_.levels = coloring_.num_levels();
    frag_.sigma = sigma;
    frag_.lower.assign(static_cast<std::size_t>(frag_.levels), -1.0);
    frag_.upper.assign(static_cast<std::size_t>(frag_.levels), 1.0);
    for (int l = 0; l + 1 < frag_.levels; ++l)
      frag_.constraints.push_back(Affine::variable(l).minus(Affine::variable(l + 1)));
    Affine obj;
    obj.add(lin(root, sigma, false), static_cast<double>(sigma));
    frag_.objective = std::move(obj);
    return std::move(frag_);
  }

 private:
  int decide(int arity) {
    if (arity <= 1) return 0;
    const std::size_t pos = cursor_++;
    if (pos < decisions_.size()) {
      arities_[pos] = arity;
      return decisions_[pos];
    }
    decisions_.push_back(0);
    arities_.push_back(arity);
    return 0;
  }

  int new_aux(double lo) {
    frag_.lower.push_back(lo);
    frag_.upper.push_back(kInf);
    return static_cast<int>(frag_.lower.size()) - 1;
  }

  std::vector<Expr> leaves(const Expr& e) const {
    std::vector<Expr> out;
    std::function<void(const Expr&)> rec = [&](const Expr& n) {
      for (const auto& c : n->children) {
        if (c->kind == e->kind && !analysis_.shared(c.get()) && !analysis_.pure.count(c.get())) rec(c);
        else out.push_back(c);
      }
    };
    rec(e);
    return out;
  }

  // pol = +1: the caller wants this term large, -1: small. exact: the
  // returned form must equal the term on the whole feasible region.
  Affine lin(const Expr& e, int pol, bool exact) {
    if (auto it = analysis_.pure.find(e.get()); it != analysis_.pure.end()) {
      return Affine::variable(coloring_.level(it->second) - 1);
    }
    switch (e->kind) {
      case ExprNode::Kind::Generator:
        break;  // generators are pure
      case ExprNode::Kind::Scale: {
        Affine out;
        const double c = to_double(e->coefficient);
        if (c == 0) return out;
        out.add(lin(e->children.front(), c > 0 ? pol : -pol, exact), c);
        return out;
      }
      case ExprNode::Kind::Sum: {
        Affine out;
        for (const auto& c : e->children) out.add(lin(c, pol, exact), 1.0);
        return out;
      }
      case ExprNode::Kind::Join:
      case ExprNode::Kind::Meet:
        return lin_lattice(e, pol, exact);
    }
    return {};
  }

  Affine lin_lattice(const Expr& e, int pol, bool exact) {
    const bool is_join = e->kind == ExprNode::Kind::Join;
    const bool shared = analysis_.shared(e.get());
    const auto kids = leaves(e);
    if (shared || exact) {
      if (auto it = memo_.find(e.get()); it != memo_.end()) return it->second;
      const int d = decide(static_cast<int>(kids.size()));
      std::vector<Affine> forms;
      for (const auto& k : kids) forms.push_back(lin(k, pol, true));
      for (std::size_t i = 0; i < forms.size(); ++i) {
        if (static_cast<int>(i) == d) continue;
        frag_.constraints.push_back(is_join ? forms[i].minus(forms[static_cast<std::size_t>(d)])
                                            : forms[static_cast<std::size_t>(d)].minus(forms[i]));
      }
      Affine out = forms[static_cast<std::size_t>(d)];
      if (shared) memo_.emplace(e.get(), out);
      return out;
    }
    if (is_join == (pol > 0)) {
      // Join wanted large or meet wanted small: pick the operand.
      const int d = decide(static_cast<int>(kids.size()));
      return lin(kids[static_cast<std::size_t>(d)], pol, false);
    }
    // Meet wanted large (hypograph) or join wanted small (epigraph).
    const int t = new_aux(analysis_.range.at(e.get()).lo);
    const Affine tv = Affine::variable(t);
    for (const auto& k : kids) {
      Affine f = lin(k, pol, false);
      frag_.constraints.push_back(is_join ? f.minus(tv) : tv.minus(f));
    }
    return tv;
  }

  const Analysis& analysis_;
  const ChainColoring& coloring_;
  std::vector<int>& decisions_;
  std::vector<int>& arities_;
  std::size_t cursor_ = 0;
  Fragment frag_;
  std::unordered_map<const ExprNode*, Affine> memo_;
};

struct CellSolution {
  double lp_value = 0;
  std::vector<RealHom<double>> tuple;
};

class CellEngine {
 public:
  CellEngine(const NormableFunction& f, std::size_t fragment_cap)
      : f_(f), lattice_(f.lattice()), colorings_(enumerate_chain_colorings(lattice_)) {
    const Expr& root = f.linear_form().root();
    Analysis analysis(root, *lattice_);
    const Interval r = analysis.range.at(root.get());
    std::vector<int> signs;
    if (r.hi > 0) signs.push_back(1);
    if (r.lo < 0) signs.push_back(-1);
    for (int ci = 0; ci < static_cast<int>(colorings_.size()); ++ci) {
      for (int sigma : signs) {
        std::vector<int> decisions;
        std::vector<int> arities;
        for (;;) {
          SlotBuilder b(analysis, colorings_[static_cast<std::size_t>(ci)], decisions, arities);
          fragments_.push_back(b.build(root, sigma, ci));
          if (fragments_.size() > fragment_cap) {
            throw SizeCapExceeded("more than " + std::to_string(fragment_cap) + " single-slot cells");
          }
          int p = static_cast<int>(decisions.size()) - 1;
          while (p >= 0 && decisions[static_cast<std::size_t>(p)] + 1 >= arities[static_cast<std::size_t>(p)]) --p;
          if (p < 0) break;
          decisions.resize(static_cast<std::size_t>(p) + 1);
          arities.resize(static_cast<std::size_t>(p) + 1);
          ++decisions[static_cast<std::size_t>(p)];
        }
      }
    }
    for (auto& fr : fragments_) {
      auto sol = solve({&fr});
      fr.solo = sol ? sol->lp_value : -kInf;
      if (sol) ++lps_;
    }
    for (std::size_t i = 0; i < fragments_.size(); ++i)
      if (fragments_[i].solo > kUseful) useful_.push_back(static_cast<int>(i));
    std::stable_sort(useful_.begin(), useful_.end(),
                     [&](int a, int b) { return fragments_[static_cast<std::size_t>(a)].solo > fragments_[static_cast<std::size_t>(b)].solo; });
  }

  const std::vector<Fragment>& fragments() const { return fragments_; }
  const std::vector<int>& useful() const { return useful_; }
  const Fragment& fragment(int i) const { return fragments_[static_cast<std::size_t>(i)]; }
  std::size_t lps() const { return lps_; }
  const LatticePtr& lattice() const { return lattice_; }

  std::optional<CellSolution> solve(const std::vector<const Fragment*>& slots) {
    const int n = static_cast<int>(slots.size());
    std::vector<int> offset(static_cast<std::size_t>(n) + 1, 0);
    for (int i = 0; i < n; ++i)
      offset[static_cast<std::size_t>(i) + 1] = offset[static_cast<std::size_t>(i)] + static_cast<int>(slots[static_cast<std::size_t>(i)]->lower.size());
    const int vars = offset[static_cast<std::size_t>(n)];
    std::vector<double> lower(static_cast<std::size_t>(vars));
    for (int i = 0; i < n; ++i)
      std::copy(slots[static_cast<std::size_t>(i)]->lower.begin(), slots[static_cast<std::size_t>(i)]->lower.end(),
                lower.begin() + offset[static_cast<std::size_t>(i)]);

    rows_.clear();
    rhs_.clear();
    for (int i = 0; i < n; ++i) {
      const Fragment& fr = *slots[static_cast<std::size_t>(i)];
      const int off = offset[static_cast<std::size_t>(i)];
      for (const auto& a : fr.constraints) {
        Eigen::VectorXd row = Eigen::VectorXd::Zero(vars);
        double b = -a.constant;
        for (std::size_t j = 0; j < a.coef.size(); ++j) {
          row(off + static_cast<int>(j)) = a.coef[j];
          b -= a.coef[j] * lower[static_cast<std::size_t>(off) + j];
        }
        push(std::move(row), b);
      }
      for (std::size_t j = 0; j < fr.upper.size(); ++j) {
        if (fr.upper[j] == kInf) continue;
        Eigen::VectorXd row = Eigen::VectorXd::Zero(vars);
        row(off + static_cast<int>(j)) = 1;
        push(std::move(row), fr.upper[j] - fr.lower[j]);
      }
    }
    if (n >= 2) {
      std::set<std::vector<int>> keys;
      for (int x = 0; x < lattice_->size(); ++x) {
        std::vector<int> key;
        for (int i = 0; i < n; ++i)
          key.push_back(colorings_[static_cast<std::size_t>(slots[static_cast<std::size_t>(i)]->coloring)].level(x) - 1);
        keys.insert(std::move(key));
      }
      for (const auto& key : keys)
        for (int s = 0; s < (1 << n); ++s) {
          Eigen::VectorXd row = Eigen::VectorXd::Zero(vars);
          double b = 1;
          for (int i = 0; i < n; ++i) {
            const double sign = (s >> i) & 1 ? -1.0 : 1.0;
            const int v = offset[static_cast<std::size_t>(i)] + key[static_cast<std::size_t>(i)];
            row(v) = sign;
            b -= sign * lower[static_cast<std::size_t>(v)];
          }
          push(std::move(row), b);
        }
    }
    Eigen::VectorXd c = Eigen::VectorXd::Zero(vars);
    double c0 = 0;
    for (int i = 0; i < n; ++i) {
      const Affine& obj = slots[static_cast<std::size_t>(i)]->objective;
      const int off = offset[static_cast<std::size_t>(i)];
      c0 += obj.constant;
      for (std::size_t j = 0; j < obj.coef.size(); ++j) {
        c(off + static_cast<int>(j)) += obj.coef[j];
        c0 += obj.coef[j] * lower[static_cast<std::size_t>(off) + j];
      }
    }
    Eigen::MatrixXd a(static_cast<Eigen::Index>(rows_.size()), vars);
    Eigen::VectorXd b(static_cast<Eigen::Index>(rows_.size()));
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      a.row(static_cast<Eigen::Index>(r)) = rows_[r].transpose();
      b(static_cast<Eigen::Index>(r)) = rhs_[r];
    }
    auto lp = solve_lp(a, b, c);
    if (lp.status != LpStatus::Optimal) return std::nullopt;

    CellSolution out;
    out.lp_value = lp.value + c0;
    for (int i = 0; i < n; ++i) {
      const Fragment& fr = *slots[static_cast<std::size_t>(i)];
      const auto& col = colorings_[static_cast<std::size_t>(fr.coloring)];
      std::vector<double> level(static_cast<std::size_t>(fr.levels));
      for (int l = 0; l < fr.levels; ++l) {
        double v = lp.x(offset[static_cast<std::size_t>(i)] + l) + fr.lower[static_cast<std::size_t>(l)];
        if (l > 0) v = std::max(v, level[static_cast<std::size_t>(l) - 1]);
        level[static_cast<std::size_t>(l)] = std::clamp(v, -1.0, 1.0);
      }
      std::vector<double> values;
      for (int x = 0; x < lattice_->size(); ++x) values.push_back(level[static_cast<std::size_t>(col.level(x)) - 1]);
      out.tuple.emplace_back(lattice_, std::move(values));
    }
    return out;
  }

 private:
  void push(Eigen::VectorXd row, double b) {
    rows_.push_back(std::move(row));
    rhs_.push_back(b);
  }

  const NormableFunction& f_;
  LatticePtr lattice_;
  std::vector<ChainColoring> colorings_;
  std::vector<Fragment> fragments_;
  std::vector<int> useful_;
  std::size_t lps_ = 0;
  std::vector<Eigen::VectorXd> rows_;
  std::vector<double> rhs_;
};

// Number of size-n multisets from s items, saturating at cap + 1.
std::size_t multichoose(std::size_t s, int n, std::size_t cap) {
  if (s == 0) return 0;
  long double c = 1;
  for (int i = 0; i < n; ++i) {
    c = c * static_cast<long double>(s + static_cast<std::size_t>(i)) / static_cast<long double>(i + 1);
    if (c > static_cast<long double>(cap)) return cap + 1;
  }
  return static_cast<std::size_t>(c + 0.5);
}

class TupleSearch {
 public:
  TupleSearch(CellEngine& engine, const NormableFunction& f, const SearchParams& params)
      : engine_(engine), f_(f), params_(params) {}

  SearchResult run() {
    result_.slot_cells = engine_.useful().size();
    result_.cells = engine_.lps();
    for (const auto& seed : params_.seeds) offer(certify(f_, seed));
    const auto& useful = engine_.useful();
    double carried = result_.best.value;
    for (int n = 1; n <= params_.n_max; ++n) {
      level_best_ = carried;
      bool exhaustive = true;
      if (n == 1) {
        for (int i : useful) evaluate({i});
      } else if (multichoose(useful.size(), n, params_.cell_budget) <= params_.cell_budget) {
        std::vector<int> pick;
        enumerate(n, 0, 0.0, pick);
      } else {
        exhaustive = false;
        climb(n);
      }
      carried = std::max(carried, level_best_);
      result_.best_by_n.push_back(level_best_);
      result_.exhaustive_by_n.push_back(exhaustive);
    }
    return std::move(result_);
  }

 private:
  double solo(int i) const { return engine_.fragment(i).solo; }

  void offer(Certificate<double> cert) {
    level_best_ = std::max(level_best_, cert.value);
    if (cert.value > result_.best.value) result_.best = std::move(cert);
  }

  // Solves one cell; returns the certified value (or -inf when infeasible).
  double evaluate(const std::vector<int>& cell) {
    std::vector<const Fragment*> slots;
    for (int i : cell) slots.push_back(&engine_.fragment(i));
    ++result_.cells;
    auto sol = engine_.solve(slots);
    if (!sol) return -kInf;
    auto cert = certify(f_, std::move(sol->tuple));
    const double v = cert.value;
    offer(std::move(cert));
    return v;
  }

  // Multisets as nondecreasing positions into the useful list, which is
  // sorted by single-slot optimum: the sum of those optima bounds the cell.
  void enumerate(int n, std::size_t from, double partial, std::vector<int>& pick) {
    const auto& useful = engine_.useful();
    if (static_cast<int>(pick.size()) == n) {
      std::vector<int> cell;
      for (int p : pick) cell.push_back(useful[static_cast<std::size_t>(p)]);
      evaluate(cell);
      return;
    }
    const int left = n - static_cast<int>(pick.size());
    for (std::size_t p = from; p < useful.size(); ++p) {
      const double s = solo(useful[p]);
      if (partial + left * s <= level_best_ + kUseful) break;
      pick.push_back(static_cast<int>(p));
      enumerate(n, p, partial + s, pick);
      pick.pop_back();
    }
  }

  void climb(int n) {
    const auto& useful = engine_.useful();
    std::mt19937_64 rng(params_.seed * 1000003ULL + static_cast<std::uint64_t>(n));
    std::uniform_int_distribution<std::size_t> any(0, useful.size() - 1);
    std::uniform_int_distribution<int> slot(0, n - 1);
    const int runs = std::max(1, params_.restarts);
    const std::size_t steps = std::max<std::size_t>(1, params_.cell_budget / static_cast<std::size_t>(runs));
    for (int r = 0; r < runs; ++r) {
      std::vector<int> cell;
      for (int i = 0; i < n; ++i) cell.push_back(useful[any(rng)]);
      double current = evaluate(cell);
      for (std::size_t s = 1; s < steps; ++s) {
        auto next = cell;
        next[static_cast<std::size_t>(slot(rng))] = useful[any(rng)];
        double bound = 0;
        for (int i : next) bound += solo(i);
        if (bound <= current + kUseful) continue;
        const double v = evaluate(next);
        if (v >= current) {
          current = v;
          cell = std::move(next);
        }
      }
    }
  }

  CellEngine& engine_;
  const NormableFunction& f_;
  const SearchParams& params_;
  SearchResult result_;
  double level_best_ = 0;
};

RealHom<double> constant_one(const LatticePtr& lattice) {
  return RealHom<double>(lattice, std::vector<double>(static_cast<std::size_t>(lattice->size()), 1.0));
}

}  // namespace

SearchResult search_lower_bound(const NormableFunction& f, const SearchParams& params) {
  if (params.n_max < 1) throw InvalidInput("n_max must be at least 1");
  CellEngine engine(f, params.fragment_cap);
  return TupleSearch(engine, f, params).run();
}

SupNorm supnorm_K(const NormableFunction& f, std::size_t fragment_cap) {
  CellEngine engine(f, fragment_cap);
  SupNorm best{0.0, constant_one(f.lattice()), true};
  for (int i : engine.useful()) {
    auto sol = engine.solve({&engine.fragment(i)});
    if (!sol) continue;
    auto parts = radial_decompose(sol->tuple.front());
    if (!parts) continue;
    const double v = std::abs(f(parts->base));
    if (v > best.value) {
      best.value = v;
      best.witness = parts->base;
    }
  }
  return best;
}

}  // namespace fbl
