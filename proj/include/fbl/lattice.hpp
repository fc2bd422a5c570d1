#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fbl {

using IndexTable = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>;
using OrderMatrix = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

/// Default ceiling on lattice size for exponential enumerations.
inline constexpr int kDefaultSizeCap = 16;

/// A finite distributive lattice with table-driven meet and join.
///
/// Elements are dense indices 0..size()-1; labels only matter for I/O.
/// Instances are immutable once built, and construction rejects inputs
/// that are not lattices or not distributive.
class FiniteLattice {
 public:
  /// Builds from labels and cover (or any generating) pairs (lower, upper).
  static FiniteLattice from_covers(std::vector<std::string> labels,
                                   const std::vector<std::pair<int, int>>& covers);
  static FiniteLattice from_covers(std::vector<std::string> labels,
                                   const std::vector<std::pair<std::string, std::string>>& covers);
  /// Builds from a full order relation; leq must already be a partial order.
  static FiniteLattice from_order(std::vector<std::string> labels, OrderMatrix leq);

  int size() const { return static_cast<int>(labels_.size()); }
  const std::string& label(int i) const { return labels_[static_cast<std::size_t>(i)]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<int> index_of(std::string_view label) const;
  /// Like index_of but throws InvalidInput for unknown labels.
  int require_index(std::string_view label) const;

  bool leq(int a, int b) const { return leq_(a, b); }
  int meet(int a, int b) const { return meet_(a, b); }
  int join(int a, int b) const { return join_(a, b); }
  const OrderMatrix& order() const { return leq_; }
  const IndexTable& meet_table() const { return meet_; }
  const IndexTable& join_table() const { return join_; }

  int bottom() const { return bottom_; }
  int top() const { return top_; }

  /// Hasse diagram edges (lower, upper).
  const std::vector<std::pair<int, int>>& covers() const { return covers_; }
  const std::vector<int>& lower_covers(int i) const { return lower_covers_[static_cast<std::size_t>(i)]; }
  /// Topological order of the Hasse diagram, ties broken by smaller index.
  const std::vector<int>& linear_extension() const { return linear_extension_; }

  /// Meet/join of a nonempty index set.
  int meet_of(const std::vector<int>& xs) const;
  int join_of(const std::vector<int>& xs) const;

 private:
  FiniteLattice() = default;
  void derive_tables();
  void check_distributive() const;

  std::vector<std::string> labels_;
  OrderMatrix leq_;
  IndexTable meet_;
  IndexTable join_;
  int bottom_ = 0;
  int top_ = 0;
  std::vector<std::pair<int, int>> covers_;
  std::vector<std::vector<int>> lower_covers_;
  std::vector<int> linear_extension_;
};

using LatticePtr = std::shared_ptr<const FiniteLattice>;

inline LatticePtr share(FiniteLattice lattice) {
  return std::make_shared<const FiniteLattice>(std::move(lattice));
}

/// A meet/join-closed subset of a parent lattice.
class Sublattice {
 public:
  /// members must be closed under the parent's meet and join (checked).
  Sublattice(LatticePtr parent, std::vector<int> members);

  const LatticePtr& parent() const { return parent_; }
  const std::vector<int>& members() const { return members_; }
  int size() const { return static_cast<int>(members_.size()); }
  bool contains(int parent_index) const { return position_[static_cast<std::size_t>(parent_index)] >= 0; }
  /// Index of a parent element inside members(), or -1.
  int position(int parent_index) const { return position_[static_cast<std::size_t>(parent_index)]; }
  /// The sublattice as a standalone lattice whose index i is members()[i].
  const LatticePtr& induced() const { return induced_; }

  bool operator==(const Sublattice& other) const {
    return parent_ == other.parent_ && members_ == other.members_;
  }

 private:
  LatticePtr parent_;
  std::vector<int> members_;
  std::vector<int> position_;
  LatticePtr induced_;
};

// Standard constructors.
FiniteLattice chain(int n);
FiniteLattice product(const FiniteLattice& a, const FiniteLattice& b);
FiniteLattice diamond();
/// Adds a fresh global minimum and maximum.
FiniteLattice bound_extension(const FiniteLattice& lattice);

Sublattice sublattice_closure(const LatticePtr& lattice, const std::vector<int>& subset);
/// Every nonempty sublattice, ordered by cardinality then lexicographically.
std::vector<Sublattice> enumerate_sublattices(const LatticePtr& lattice, int size_cap = kDefaultSizeCap);

bool is_chain(const FiniteLattice& lattice, const std::vector<int>& subset);
bool is_chain(const Sublattice& s);
bool is_ideal(const Sublattice& s);
bool is_filter(const Sublattice& s);

/// x -> indicator of the join-irreducibles below x.
struct BirkhoffEmbedding {
  std::vector<int> join_irreducibles;
  Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic> bits;  // rows: elements
};
BirkhoffEmbedding birkhoff_embed(const FiniteLattice& lattice);

/// Subset of element indices as a bitmask (lattices of up to 64 elements).
using ElementMask = std::uint64_t;
ElementMask closure_mask(const FiniteLattice& lattice, ElementMask subset);

}  // namespace fbl
