#include "fbl/lattice.hpp"

#include "fbl/errors.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <queue>
#include <set>

namespace fbl {

namespace {

void require_unique_labels(const std::vector<std::string>& labels) {
  std::set<std::string> seen;
  for (const auto& l : labels) {
    if (!seen.insert(l).second) throw InvalidInput("duplicate element label '" + l + "'");
  }
}

}  // namespace

FiniteLattice FiniteLattice::from_covers(std::vector<std::string> labels,
                                         const std::vector<std::pair<int, int>>& covers) {
  const int n = static_cast<int>(labels.size());
  if (n == 0) throw InvalidInput("a lattice needs at least one element");
  OrderMatrix leq = OrderMatrix::Identity(n, n);
  for (auto [lo, hi] : covers) {
    if (lo < 0 || lo >= n || hi < 0 || hi >= n) throw InvalidInput("cover pair refers to unknown element");
    if (lo == hi) throw InvalidInput("cover pair relates '" + labels[static_cast<std::size_t>(lo)] + "' to itself");
    leq(lo, hi) = true;
  }
  // Warshall closure.
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (leq(i, k))
        for (int j = 0; j < n; ++j)
          if (leq(k, j)) leq(i, j) = true;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (leq(i, j) && leq(j, i)) {
        throw InvalidInput("cover pairs contain a cycle through '" + labels[static_cast<std::size_t>(i)] +
                           "' and '" + labels[static_cast<std::size_t>(j)] + "'");
      }
  return from_order(std::move(labels), std::move(leq));
}

FiniteLattice FiniteLattice::from_covers(std::vector<std::string> labels,
                                         const std::vector<std::pair<std::string, std::string>>& covers) {
  std::vector<std::pair<int, int>> idx;
  idx.reserve(covers.size());
  auto find = [&](const std::string& l) {
    auto it = std::find(labels.begin(), labels.end(), l);
    if (it == labels.end()) throw InvalidInput("cover pair refers to unknown element '" + l + "'");
    return static_cast<int>(it - labels.begin());
  };
  for (const auto& [lo, hi] : covers) idx.emplace_back(find(lo), find(hi));
  return from_covers(std::move(labels), idx);
}

FiniteLattice FiniteLattice::from_order(std::vector<std::string> labels, OrderMatrix leq) {
  const int n = static_cast<int>(labels.size());
  if (n == 0) throw InvalidInput("a lattice needs at least one element");
  if (leq.rows() != n || leq.cols() != n) throw InvalidInput("order matrix has the wrong shape");
  require_unique_labels(labels);
  FiniteLattice lattice;
  lattice.labels_ = std::move(labels);
  lattice.leq_ = std::move(leq);
  lattice.derive_tables();
  lattice.check_distributive();
  return lattice;
}

void FiniteLattice::derive_tables() {
  const int n = size();
  meet_.resize(n, n);
  join_.resize(n, n);
  std::vector<int> lower;
  std::vector<int> upper_bounds;
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) {
      lower.clear();
      upper_bounds.clear();
      for (int c = 0; c < n; ++c) {
        if (leq_(c, a) && leq_(c, b)) lower.push_back(c);
        if (leq_(a, c) && leq_(b, c)) upper_bounds.push_back(c);
      }
      int glb = -1;
      for (int c : lower)
        if (std::all_of(lower.begin(), lower.end(), [&](int d) { return leq_(d, c); })) glb = c;
      int lub = -1;
      for (int c : upper_bounds)
        if (std::all_of(upper_bounds.begin(), upper_bounds.end(), [&](int d) { return leq_(c, d); })) lub = c;
      if (glb < 0) throw NotALattice("'" + label(a) + "' and '" + label(b) + "' have no greatest lower bound", a, b);
      if (lub < 0) throw NotALattice("'" + label(a) + "' and '" + label(b) + "' have no least upper bound", a, b);
      meet_(a, b) = meet_(b, a) = glb;
      join_(a, b) = join_(b, a) = lub;
    }
  }
  bottom_ = 0;
  top_ = 0;
  for (int i = 1; i < n; ++i) {
    bottom_ = meet_(bottom_, i);
    top_ = join_(top_, i);
  }

  covers_.clear();
  lower_covers_.assign(static_cast<std::size_t>(n), {});
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a == b || !leq_(a, b)) continue;
      bool direct = true;
      for (int c = 0; c < n && direct; ++c) {
        if (c != a && c != b && leq_(a, c) && leq_(c, b)) direct = false;
      }
      if (direct) {
        covers_.emplace_back(a, b);
        lower_covers_[static_cast<std::size_t>(b)].push_back(a);
      }
    }
  }

  std::vector<int> indegree(static_cast<std::size_t>(n), 0);
  std::vector<std::vector<int>> upper(static_cast<std::size_t>(n));
  for (auto [lo, hi] : covers_) {
    ++indegree[static_cast<std::size_t>(hi)];
    upper[static_cast<std::size_t>(lo)].push_back(hi);
  }
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (int i = 0; i < n; ++i)
    if (indegree[static_cast<std::size_t>(i)] == 0) ready.push(i);
  linear_extension_.clear();
  while (!ready.empty()) {
    int v = ready.top();
    ready.pop();
    linear_extension_.push_back(v);
    for (int w : upper[static_cast<std::size_t>(v)])
      if (--indegree[static_cast<std::size_t>(w)] == 0) ready.push(w);
  }
}

void FiniteLattice::check_distributive() const {
  const int n = size();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = y + 1; z < n; ++z)
        if (meet_(x, join_(y, z)) != join_(meet_(x, y), meet_(x, z))) {
          throw NotDistributive("distributivity fails at ('" + label(x) + "', '" + label(y) + "', '" + label(z) + "')",
                                {x, y, z});
        }
}

std::optional<int> FiniteLattice::index_of(std::string_view l) const {
  for (int i = 0; i < size(); ++i)
    if (labels_[static_cast<std::size_t>(i)] == l) return i;
  return std::nullopt;
}

int FiniteLattice::require_index(std::string_view l) const {
  if (auto i = index_of(l)) return *i;
  throw InvalidInput("unknown element '" + std::string(l) + "'");
}

int FiniteLattice::meet_of(const std::vector<int>& xs) const {
  if (xs.empty()) throw InvalidInput("meet of an empty set");
  int r = xs.front();
  for (int x : xs) r = meet_(r, x);
  return r;
}

int FiniteLattice::join_of(const std::vector<int>& xs) const {
  if (xs.empty()) throw InvalidInput("join of an empty set");
  int r = xs.front();
  for (int x : xs) r = join_(r, x);
  return r;
}

namespace {

LatticePtr build_induced(const FiniteLattice& parent, const std::vector<int>& members) {
  const int k = static_cast<int>(members.size());
  std::vector<std::string> labels;
  labels.reserve(members.size());
  OrderMatrix leq(k, k);
  for (int i = 0; i < k; ++i) {
    labels.push_back(parent.label(members[static_cast<std::size_t>(i)]));
    for (int j = 0; j < k; ++j) leq(i, j) = parent.leq(members[static_cast<std::size_t>(i)], members[static_cast<std::size_t>(j)]);
  }
  return share(FiniteLattice::from_order(std::move(labels), std::move(leq)));
}

}  // namespace

Sublattice::Sublattice(LatticePtr parent, std::vector<int> members)
    : parent_(std::move(parent)), members_(std::move(members)) {
  if (!parent_) throw InvalidInput("sublattice without a parent lattice");
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (members_.empty()) throw InvalidInput("a sublattice must be nonempty");
  position_.assign(static_cast<std::size_t>(parent_->size()), -1);
  for (std::size_t i = 0; i < members_.size(); ++i) {
    int m = members_[i];
    if (m < 0 || m >= parent_->size()) throw InvalidInput("sublattice member out of range");
    position_[static_cast<std::size_t>(m)] = static_cast<int>(i);
  }
  for (int a : members_)
    for (int b : members_)
      if (!contains(parent_->meet(a, b)) || !contains(parent_->join(a, b))) {
        throw InvalidInput("subset is not closed under meet and join ('" + parent_->label(a) + "', '" +
                           parent_->label(b) + "')");
      }
  induced_ = build_induced(*parent_, members_);
}


FiniteLattice chain(int n) {
  if (n < 1) throw InvalidInput("chain length must be at least 1");
  std::vector<std::string> labels;
  std::vector<std::pair<int, int>> covers;
  for (int i = 0; i < n; ++i) {
    labels.push_back(std::to_string(i + 1));
    if (i > 0) covers.emplace_back(i - 1, i);
  }
  return FiniteLattice::from_covers(std::move(labels), covers);
}

FiniteLattice product(const FiniteLattice& a, const FiniteLattice& b) {
  const int na = a.size();
  const int nb = b.size();
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(na * nb));
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j) labels.push_back("(" + a.label(i) + "," + b.label(j) + ")");
  OrderMatrix leq(na * nb, na * nb);
  for (int i = 0; i < na * nb; ++i)
    for (int j = 0; j < na * nb; ++j) leq(i, j) = a.leq(i / nb, j / nb) && b.leq(i % nb, j % nb);
  return FiniteLattice::from_order(std::move(labels), std::move(leq));
}

FiniteLattice diamond() {
  return FiniteLattice::from_covers({"m", "a", "b", "M"}, std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 3}, {2, 3}});
}

FiniteLattice bound_extension(const FiniteLattice& lattice) {
  const int n = lattice.size();
  auto fresh = [&](std::string base) {
    while (lattice.index_of(base)) base += "'";
    return base;
  };
  std::vector<std::string> labels = lattice.labels();
  labels.push_back(fresh("m"));
  labels.push_back(fresh("M"));
  OrderMatrix leq = OrderMatrix::Constant(n + 2, n + 2, false);
  leq.topLeftCorner(n, n) = lattice.order();
  for (int i = 0; i < n + 2; ++i) {
    leq(n, i) = true;
    leq(i, n + 1) = true;
  }
  return FiniteLattice::from_order(std::move(labels), std::move(leq));
}

ElementMask closure_mask(const FiniteLattice& lattice, ElementMask subset) {
  const int n = lattice.size();
  if (n > 64) throw SizeCapExceeded("bitmask closure supports at most 64 elements");
  ElementMask current = subset;
  for (bool grew = true; grew;) {
    grew = false;
    for (int a = 0; a < n; ++a) {
      if (!(current >> a & 1U)) continue;
      for (int b = a + 1; b < n; ++b) {
        if (!(current >> b & 1U)) continue;
        ElementMask add = (ElementMask{1} << lattice.meet(a, b)) | (ElementMask{1} << lattice.join(a, b));
        if ((current | add) != current) {
          current |= add;
          grew = true;
        }
      }
    }
  }
  return current;
}

namespace {

std::vector<int> mask_to_indices(ElementMask mask) {
  std::vector<int> out;
  while (mask) {
    out.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return out;
}

}  // namespace

Sublattice sublattice_closure(const LatticePtr& lattice, const std::vector<int>& subset) {
  if (subset.empty()) throw InvalidInput("closure of an empty subset");
  ElementMask mask = 0;
  for (int i : subset) {
    if (i < 0 || i >= lattice->size()) throw InvalidInput("subset element out of range");
    mask |= ElementMask{1} << i;
  }
  return Sublattice(lattice, mask_to_indices(closure_mask(*lattice, mask)));
}

std::vector<Sublattice> enumerate_sublattices(const LatticePtr& lattice, int size_cap) {
  const int n = lattice->size();
  if (n > size_cap || n > 63) {
    throw SizeCapExceeded("sublattice enumeration on " + std::to_string(n) + " elements exceeds cap " +
                          std::to_string(size_cap));
  }
  // Closed-set enumeration: each node (closed S, forbidden F) stands for the
  // closed supersets of S avoiding F; branching on the smallest free element
  // partitions that family, so every closed set is produced once.
  std::vector<ElementMask> found;
  std::function<void(ElementMask, ElementMask)> grow = [&](ElementMask closed, ElementMask forbidden) {
    for (int e = 0; e < n; ++e) {
      ElementMask bit = ElementMask{1} << e;
      if ((closed | forbidden) & bit) continue;
      ElementMask next = closure_mask(*lattice, closed | bit);
      if (!(next & forbidden)) {
        found.push_back(next);
        grow(next, forbidden);
      }
      forbidden |= bit;
    }
  };
  grow(0, 0);

  std::vector<std::vector<int>> sets;
  sets.reserve(found.size());
  for (ElementMask m : found) sets.push_back(mask_to_indices(m));
  std::sort(sets.begin(), sets.end(), [](const auto& x, const auto& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
  });
  std::vector<Sublattice> out;
  out.reserve(sets.size());
  for (auto& s : sets) out.emplace_back(lattice, std::move(s));
  return out;
}

bool is_chain(const FiniteLattice& lattice, const std::vector<int>& subset) {
  for (int a : subset)
    for (int b : subset)
      if (!lattice.leq(a, b) && !lattice.leq(b, a)) return false;
  return true;
}

bool is_chain(const Sublattice& s) { return is_chain(*s.parent(), s.members()); }

bool is_ideal(const Sublattice& s) {
  const auto& m = *s.parent();
  for (int y : s.members())
    for (int x = 0; x < m.size(); ++x)
      if (m.leq(x, y) && !s.contains(x)) return false;
  return true;
}

bool is_filter(const Sublattice& s) {
  const auto& m = *s.parent();
  for (int y : s.members())
    for (int x = 0; x < m.size(); ++x)
      if (m.leq(y, x) && !s.contains(x)) return false;
  return true;
}

BirkhoffEmbedding birkhoff_embed(const FiniteLattice& lattice) {
  BirkhoffEmbedding out;
  // In a finite lattice, j is join-irreducible iff it has exactly one lower cover.
  for (int j = 0; j < lattice.size(); ++j)
    if (lattice.lower_covers(j).size() == 1) out.join_irreducibles.push_back(j);
  const int k = static_cast<int>(out.join_irreducibles.size());
  out.bits = Eigen::MatrixXi::Zero(lattice.size(), k);
  for (int x = 0; x < lattice.size(); ++x)
    for (int c = 0; c < k; ++c) out.bits(x, c) = lattice.leq(out.join_irreducibles[static_cast<std::size_t>(c)], x) ? 1 : 0;
  return out;
}

}  // namespace fbl
