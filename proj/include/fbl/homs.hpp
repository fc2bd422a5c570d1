#pragma once

#include "fbl/errors.hpp"
#include "fbl/lattice.hpp"
#include "fbl/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

namespace fbl {

/// True iff values preserves meet as min and join as max on every pair.
template <class T>
bool is_lattice_hom(const FiniteLattice& lattice, const std::vector<T>& values) {
  const int n = lattice.size();
  if (static_cast<int>(values.size()) != n) return false;
  auto at = [&](int i) -> const T& { return values[static_cast<std::size_t>(i)]; };
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      if (at(lattice.meet(a, b)) != std::min(at(a), at(b))) return false;
      if (at(lattice.join(a, b)) != std::max(at(a), at(b))) return false;
    }
  return true;
}

/// Dense rank (1-based) of arbitrary ordered values.
template <class T>
std::vector<int> dense_rank(const std::vector<T>& values) {
  std::vector<T> distinct = values;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::vector<int> ranks;
  ranks.reserve(values.size());
  for (const auto& v : values)
    ranks.push_back(static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), v) - distinct.begin()) + 1);
  return ranks;
}

/// Homomorphism onto the chain {1, ..., k} with every level used.
class ChainColoring {
 public:
  ChainColoring(LatticePtr lattice, std::vector<int> levels);
  /// Canonicalizes arbitrary homomorphic integer values by rank.
  static ChainColoring from_values(LatticePtr lattice, const std::vector<int>& raw);

  const LatticePtr& lattice() const { return lattice_; }
  const std::vector<int>& levels() const { return levels_; }
  int level(int x) const { return levels_[static_cast<std::size_t>(x)]; }
  int num_levels() const { return num_levels_; }

  friend bool operator==(const ChainColoring& a, const ChainColoring& b) { return a.levels_ == b.levels_; }
  friend bool operator<(const ChainColoring& a, const ChainColoring& b) { return a.levels_ < b.levels_; }

 private:
  LatticePtr lattice_;
  std::vector<int> levels_;
  int num_levels_ = 0;
};

/// A lattice homomorphism into [-1, 1].
template <class Scalar>
class RealHom {
 public:
  RealHom(LatticePtr lattice, std::vector<Scalar> values) : lattice_(std::move(lattice)), values_(std::move(values)) {
    if (!lattice_) throw InvalidInput("homomorphism without a lattice");
    for (const auto& v : values_)
      if (v < Scalar(-1) || v > Scalar(1)) throw InvalidInput("homomorphism value outside [-1, 1]");
    if (!is_lattice_hom(*lattice_, values_)) throw InvalidInput("values do not form a lattice homomorphism");
  }

  const LatticePtr& lattice() const { return lattice_; }
  const std::vector<Scalar>& values() const { return values_; }
  const Scalar& operator()(int x) const { return values_[static_cast<std::size_t>(x)]; }

  /// factor must keep every value inside [-1, 1].
  RealHom scaled(const Scalar& factor) const {
    if (factor < Scalar(0)) throw InvalidInput("homomorphisms can only be scaled by nonnegative factors");
    std::vector<Scalar> v = values_;
    for (auto& x : v) x *= factor;
    return RealHom(lattice_, std::move(v));
  }

  /// Largest absolute value, attained at the bottom or the top.
  Scalar sup_norm() const {
    return std::max(abs_value(values_[static_cast<std::size_t>(lattice_->bottom())]),
                    abs_value(values_[static_cast<std::size_t>(lattice_->top())]));
  }

  friend bool operator==(const RealHom& a, const RealHom& b) { return a.values_ == b.values_; }

 private:
  LatticePtr lattice_;
  std::vector<Scalar> values_;
};

/// A lattice homomorphism into R^n carrying the l1 norm, stored by coordinates.
template <class Scalar>
class VectorHom {
 public:
  VectorHom(LatticePtr lattice, std::vector<std::vector<Scalar>> components)
      : lattice_(std::move(lattice)), components_(std::move(components)) {
    for (const auto& c : components_)
      if (!is_lattice_hom(*lattice_, c)) throw InvalidInput("vector homomorphism component is not a homomorphism");
  }

  const LatticePtr& lattice() const { return lattice_; }
  int dimension() const { return static_cast<int>(components_.size()); }
  const std::vector<Scalar>& component(int k) const { return components_[static_cast<std::size_t>(k)]; }
  const std::vector<std::vector<Scalar>>& components() const { return components_; }

  /// l1 norm of the image of x.
  Scalar l1_at(int x) const {
    Scalar s(0);
    for (const auto& c : components_) s += abs_value(c[static_cast<std::size_t>(x)]);
    return s;
  }

  /// max over the lattice of the l1 norm of the image.
  Scalar norm() const {
    Scalar best(0);
    for (int x = 0; x < lattice_->size(); ++x) best = std::max(best, l1_at(x));
    return best;
  }

 private:
  LatticePtr lattice_;
  std::vector<std::vector<Scalar>> components_;
};

/// Every canonical coloring of the lattice, lexicographically sorted.
std::vector<ChainColoring> enumerate_chain_colorings(const LatticePtr& lattice, int size_cap = kDefaultSizeCap);

/// Restriction of a coloring of sub.parent() to sub, returned on sub.induced().
ChainColoring restrict_and_normalize(const ChainColoring& coloring, const Sublattice& sub);

/// A coloring of sub.parent() whose restriction to sub is `coloring`
/// (a coloring of sub.induced()), or nothing when none exists.
std::optional<ChainColoring> extend_coloring(const ChainColoring& coloring, const Sublattice& sub);

/// All distinct canonical extensions, up to `limit` of them.
std::vector<ChainColoring> enumerate_coloring_extensions(const ChainColoring& coloring, const Sublattice& sub,
                                                         std::size_t limit = std::numeric_limits<std::size_t>::max());

template <class Scalar>
RealHom<Scalar> realize_hom(const ChainColoring& coloring, const std::vector<Scalar>& level_values) {
  if (static_cast<int>(level_values.size()) != coloring.num_levels()) {
    throw InvalidInput("need one value per coloring level");
  }
  for (std::size_t i = 1; i < level_values.size(); ++i)
    if (!(level_values[i - 1] < level_values[i])) throw NonMonotoneValues("level values must strictly increase");
  std::vector<Scalar> values;
  values.reserve(coloring.levels().size());
  for (int l : coloring.levels()) values.push_back(level_values[static_cast<std::size_t>(l - 1)]);
  return RealHom<Scalar>(coloring.lattice(), std::move(values));
}

template <class Scalar>
ChainColoring coloring_of(const RealHom<Scalar>& hom) {
  return ChainColoring(hom.lattice(), dense_rank(hom.values()));
}

/// Extends a homomorphism on sub.induced() to sub.parent().
///
/// Decided on order types: the coloring of `hom` is extended, pinned levels
/// keep their values, levels strictly between two pinned ones are spread
/// evenly across that gap, and levels beyond the extremes are spread toward
/// -1 or +1 (collapsed onto the extreme when it already equals -1 or +1).
template <class Scalar>
std::optional<RealHom<Scalar>> extend_real_hom(const RealHom<Scalar>& hom, const Sublattice& sub) {
  const ChainColoring own = coloring_of(hom);
  auto extended = extend_coloring(own, sub);
  if (!extended) return std::nullopt;

  const int levels = extended->num_levels();
  std::vector<std::optional<Scalar>> pinned(static_cast<std::size_t>(levels));
  for (int i = 0; i < sub.size(); ++i) {
    int parent_level = extended->level(sub.members()[static_cast<std::size_t>(i)]);
    pinned[static_cast<std::size_t>(parent_level - 1)] = hom(i);
  }
  std::vector<Scalar> level_values(static_cast<std::size_t>(levels));
  int prev = -1;  // index of the previous pinned level
  auto fill = [&](int from, int to, const Scalar& lo, const Scalar& hi) {
    // Levels strictly between `from` and `to` (exclusive) interpolate lo..hi.
    const int gaps = to - from;
    for (int l = from + 1; l < to; ++l)
      level_values[static_cast<std::size_t>(l)] = lo + (hi - lo) * Scalar(l - from) / Scalar(gaps);
  };
  for (int l = 0; l < levels; ++l) {
    if (!pinned[static_cast<std::size_t>(l)]) continue;
    const Scalar& v = *pinned[static_cast<std::size_t>(l)];
    level_values[static_cast<std::size_t>(l)] = v;
    if (prev < 0) {
      if (v == Scalar(-1)) {
        for (int f = 0; f < l; ++f) level_values[static_cast<std::size_t>(f)] = v;
      } else {
        fill(-1, l, Scalar(-1), v);
      }
    } else {
      fill(prev, l, level_values[static_cast<std::size_t>(prev)], v);
    }
    prev = l;
  }
  const Scalar& last = level_values[static_cast<std::size_t>(prev)];
  if (last == Scalar(1)) {
    for (int f = prev + 1; f < levels; ++f) level_values[static_cast<std::size_t>(f)] = last;
  } else {
    fill(prev, levels, last, Scalar(1));
  }

  std::vector<Scalar> values;
  values.reserve(static_cast<std::size_t>(sub.parent()->size()));
  for (int l : extended->levels()) values.push_back(level_values[static_cast<std::size_t>(l - 1)]);
  return RealHom<Scalar>(sub.parent(), std::move(values));
}

template <class Scalar>
struct RadialParts {
  Scalar scale;
  RealHom<Scalar> base;  // max(|base(bottom)|, |base(top)|) == 1
};

/// hom = scale * base with base on the unit sphere; nothing for the zero hom.
template <class Scalar>
std::optional<RadialParts<Scalar>> radial_decompose(const RealHom<Scalar>& hom) {
  Scalar scale = hom.sup_norm();
  if (scale == Scalar(0)) return std::nullopt;
  std::vector<Scalar> v = hom.values();
  for (auto& x : v) x /= scale;
  // Guard against rounding pushing a floating value past the unit interval.
  for (auto& x : v) x = std::clamp(x, Scalar(-1), Scalar(1));
  return RadialParts<Scalar>{scale, RealHom<Scalar>(hom.lattice(), std::move(v))};
}

}  // namespace fbl
