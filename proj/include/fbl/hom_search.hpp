#pragma once

#include "fbl/lattice.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace fbl {

/// Integer chain codomain: meet = min, join = max.
struct ChainCodomain {
  int meet(int a, int b) const { return std::min(a, b); }
  int join(int a, int b) const { return std::max(a, b); }
  bool leq(int a, int b) const { return a <= b; }
};

/// A lattice as codomain; values are element indices of `lattice`.
struct LatticeCodomain {
  const FiniteLattice* lattice;
  int meet(int a, int b) const { return lattice->meet(a, b); }
  int join(int a, int b) const { return lattice->join(a, b); }
  bool leq(int a, int b) const { return lattice->leq(a, b); }
};

/// Backtracking search for lattice homomorphisms source -> codomain where
/// each source element ranges over an explicit candidate list.
///
/// Variables are visited along the source's linear extension. A pair
/// constraint h(a∧b) = h(a)∧h(b), h(a∨b) = h(a)∨h(b) is checked as soon as
/// the last of a, b, a∧b, a∨b is assigned; comparable pairs only need the
/// order check.
template <class Codomain>
class HomSearch {
 public:
  HomSearch(const FiniteLattice& source, Codomain codomain, std::vector<std::vector<int>> candidates)
      : source_(source), codomain_(std::move(codomain)), candidates_(std::move(candidates)) {
    const int n = source_.size();
    const auto& order = source_.linear_extension();
    std::vector<int> rank(static_cast<std::size_t>(n));
    for (int p = 0; p < n; ++p) rank[static_cast<std::size_t>(order[static_cast<std::size_t>(p)])] = p;
    checks_.assign(static_cast<std::size_t>(n), {});
    order_checks_.assign(static_cast<std::size_t>(n), {});
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        if (source_.leq(a, b) || source_.leq(b, a)) continue;  // covered by monotonicity
        int last = std::max({rank[static_cast<std::size_t>(a)], rank[static_cast<std::size_t>(b)],
                             rank[static_cast<std::size_t>(source_.meet(a, b))],
                             rank[static_cast<std::size_t>(source_.join(a, b))]});
        checks_[static_cast<std::size_t>(last)].emplace_back(a, b);
      }
      // Comparable pairs reduce to monotonicity; check all lower elements,
      // not only covers, because candidate lists may skip values.
      for (int b = 0; b < n; ++b) {
        if (b != a && source_.leq(b, a)) {
          int last = std::max(rank[static_cast<std::size_t>(a)], rank[static_cast<std::size_t>(b)]);
          order_checks_[static_cast<std::size_t>(last)].emplace_back(b, a);
        }
      }
    }
  }

  /// Calls visit(assignment) for each homomorphism; visit returns false to stop.
  /// Returns false if stopped early.
  template <class Visitor>
  bool run(Visitor&& visit) {
    assignment_.assign(static_cast<std::size_t>(source_.size()), -1);
    return descend(0, visit);
  }

 private:
  template <class Visitor>
  bool descend(int position, Visitor& visit) {
    const int n = source_.size();
    if (position == n) return visit(std::as_const(assignment_));
    const int v = source_.linear_extension()[static_cast<std::size_t>(position)];
    for (int value : candidates_[static_cast<std::size_t>(v)]) {
      assignment_[static_cast<std::size_t>(v)] = value;
      if (consistent(position) && !descend(position + 1, visit)) return false;
    }
    assignment_[static_cast<std::size_t>(v)] = -1;
    return true;
  }

  bool consistent(int position) const {
    auto at = [&](int x) { return assignment_[static_cast<std::size_t>(x)]; };
    for (auto [lo, hi] : order_checks_[static_cast<std::size_t>(position)])
      if (!codomain_.leq(at(lo), at(hi))) return false;
    for (auto [a, b] : checks_[static_cast<std::size_t>(position)]) {
      if (at(source_.meet(a, b)) != codomain_.meet(at(a), at(b))) return false;
      if (at(source_.join(a, b)) != codomain_.join(at(a), at(b))) return false;
    }
    return true;
  }

  const FiniteLattice& source_;
  Codomain codomain_;
  std::vector<std::vector<int>> candidates_;
  std::vector<std::vector<std::pair<int, int>>> checks_;
  std::vector<std::vector<std::pair<int, int>>> order_checks_;
  std::vector<int> assignment_;
};

}  // namespace fbl
