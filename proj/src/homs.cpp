#include "fbl/homs.hpp"

#include "fbl/hom_search.hpp"

#include <set>
#include <string>

namespace fbl {

ChainColoring::ChainColoring(LatticePtr lattice, std::vector<int> levels)
    : lattice_(std::move(lattice)), levels_(std::move(levels)) {
  if (!lattice_) throw InvalidInput("coloring without a lattice");
  if (static_cast<int>(levels_.size()) != lattice_->size()) throw InvalidInput("coloring has the wrong length");
  num_levels_ = levels_.empty() ? 0 : *std::max_element(levels_.begin(), levels_.end());
  std::vector<bool> used(static_cast<std::size_t>(num_levels_) + 1, false);
  for (int l : levels_) {
    if (l < 1) throw InvalidInput("coloring levels start at 1");
    used[static_cast<std::size_t>(l)] = true;
  }
  for (int l = 1; l <= num_levels_; ++l)
    if (!used[static_cast<std::size_t>(l)]) throw InvalidInput("coloring skips level " + std::to_string(l));
  if (!is_lattice_hom(*lattice_, levels_)) throw InvalidInput("coloring is not a lattice homomorphism");
}

ChainColoring ChainColoring::from_values(LatticePtr lattice, const std::vector<int>& raw) {
  return ChainColoring(std::move(lattice), dense_rank(raw));
}

namespace {

/// Generates order types directly: each new element either joins an existing
/// level or opens a new level in some gap, so no order type repeats.
class OrderTypeEnumerator {
 public:
  explicit OrderTypeEnumerator(const LatticePtr& lattice) : lattice_(lattice), m_(*lattice) {
    const int n = m_.size();
    const auto& order = m_.linear_extension();
    std::vector<int> rank(static_cast<std::size_t>(n));
    for (int p = 0; p < n; ++p) rank[static_cast<std::size_t>(order[static_cast<std::size_t>(p)])] = p;
    checks_.assign(static_cast<std::size_t>(n), {});
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        if (m_.leq(a, b) || m_.leq(b, a)) continue;
        int last = std::max({rank[static_cast<std::size_t>(a)], rank[static_cast<std::size_t>(b)],
                             rank[static_cast<std::size_t>(m_.meet(a, b))], rank[static_cast<std::size_t>(m_.join(a, b))]});
        checks_[static_cast<std::size_t>(last)].emplace_back(a, b);
      }
    levels_.assign(static_cast<std::size_t>(n), 0);
  }

  std::vector<ChainColoring> run() {
    descend(0, 0);
    std::sort(found_.begin(), found_.end());
    std::vector<ChainColoring> out;
    out.reserve(found_.size());
    for (auto& l : found_) out.emplace_back(lattice_, std::move(l));
    return out;
  }

 private:
  void descend(int position, int used) {
    const int n = m_.size();
    if (position == n) {
      found_.push_back(levels_);
      return;
    }
    const int v = m_.linear_extension()[static_cast<std::size_t>(position)];
    int floor = 0;
    for (int c : m_.lower_covers(v)) floor = std::max(floor, levels_[static_cast<std::size_t>(c)]);
    const auto& assigned = m_.linear_extension();

    for (int l = std::max(floor, 1); l <= used; ++l) {
      levels_[static_cast<std::size_t>(v)] = l;
      if (consistent(position)) descend(position + 1, used);
    }
    // Open a new level l (shifting levels >= l up by one).
    for (int l = floor + 1; l <= used + 1; ++l) {
      for (int p = 0; p < position; ++p) {
        auto& x = levels_[static_cast<std::size_t>(assigned[static_cast<std::size_t>(p)])];
        if (x >= l) ++x;
      }
      levels_[static_cast<std::size_t>(v)] = l;
      if (consistent(position)) descend(position + 1, used + 1);
      for (int p = 0; p < position; ++p) {
        auto& x = levels_[static_cast<std::size_t>(assigned[static_cast<std::size_t>(p)])];
        if (x > l) --x;
      }
    }
    levels_[static_cast<std::size_t>(v)] = 0;
  }

  bool consistent(int position) const {
    auto at = [&](int x) { return levels_[static_cast<std::size_t>(x)]; };
    for (auto [a, b] : checks_[static_cast<std::size_t>(position)]) {
      if (at(m_.meet(a, b)) != std::min(at(a), at(b))) return false;
      if (at(m_.join(a, b)) != std::max(at(a), at(b))) return false;
    }
    return true;
  }

  LatticePtr lattice_;
  const FiniteLattice& m_;
  std::vector<std::vector<std::pair<int, int>>> checks_;
  std::vector<int> levels_;
  std::vector<std::vector<int>> found_;
};

/// Grid candidates for extending a k-level coloring of sub to its parent:
/// members of sub pinned at level * G, the rest free over {0, ..., (k+1) G}.
std::vector<std::vector<int>> extension_grid(const ChainColoring& coloring, const Sublattice& sub) {
  const auto& m = *sub.parent();
  if (coloring.lattice() != sub.induced() && coloring.lattice()->labels() != sub.induced()->labels()) {
    throw InvalidInput("coloring does not live on the given sublattice");
  }
  const int spacing = m.size() - sub.size() + 1;
  const int top = (coloring.num_levels() + 1) * spacing;
  std::vector<int> free_values(static_cast<std::size_t>(top) + 1);
  for (int i = 0; i <= top; ++i) free_values[static_cast<std::size_t>(i)] = i;
  std::vector<std::vector<int>> candidates(static_cast<std::size_t>(m.size()));
  for (int x = 0; x < m.size(); ++x) {
    int p = sub.position(x);
    candidates[static_cast<std::size_t>(x)] = p >= 0 ? std::vector<int>{coloring.level(p) * spacing} : free_values;
  }
  return candidates;
}

}  // namespace

std::vector<ChainColoring> enumerate_chain_colorings(const LatticePtr& lattice, int size_cap) {
  if (lattice->size() > size_cap) {
    throw SizeCapExceeded("coloring enumeration on " + std::to_string(lattice->size()) + " elements exceeds cap " +
                          std::to_string(size_cap));
  }
  return OrderTypeEnumerator(lattice).run();
}

ChainColoring restrict_and_normalize(const ChainColoring& coloring, const Sublattice& sub) {
  std::vector<int> raw;
  raw.reserve(sub.members().size());
  for (int x : sub.members()) raw.push_back(coloring.level(x));
  return ChainColoring::from_values(sub.induced(), raw);
}

std::optional<ChainColoring> extend_coloring(const ChainColoring& coloring, const Sublattice& sub) {
  HomSearch<ChainCodomain> search(*sub.parent(), ChainCodomain{}, extension_grid(coloring, sub));
  std::optional<ChainColoring> result;
  search.run([&](const std::vector<int>& values) {
    result = ChainColoring::from_values(sub.parent(), values);
    return false;
  });
  return result;
}

std::vector<ChainColoring> enumerate_coloring_extensions(const ChainColoring& coloring, const Sublattice& sub,
                                                         std::size_t limit) {
  HomSearch<ChainCodomain> search(*sub.parent(), ChainCodomain{}, extension_grid(coloring, sub));
  std::set<std::vector<int>> seen;
  if (limit > 0) {
    search.run([&](const std::vector<int>& values) {
      seen.insert(dense_rank(values));
      return seen.size() < limit;
    });
  }
  std::vector<ChainColoring> out;
  for (const auto& l : seen) out.emplace_back(sub.parent(), l);
  return out;
}

}  // namespace fbl
