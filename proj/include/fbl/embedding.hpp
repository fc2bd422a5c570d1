#pragma once

#include "fbl/homs.hpp"
#include "fbl/lattice.hpp"
#include "fbl/rational.hpp"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fbl {

/// A lattice map into the parent of some sublattice, as parent indices.
using LatticeMap = std::vector<int>;

/// A homomorphism r: M -> L with r(x) = x on L, or nothing (complete search).
std::optional<LatticeMap> find_retraction(const Sublattice& sub, int size_cap = kDefaultSizeCap);

/// A homomorphism T: F -> L fixing F ∩ L pointwise; T[i] is the image of
/// F.members()[i] as a parent index.
std::optional<LatticeMap> find_local_map(const Sublattice& sub, const Sublattice& f);

/// Checks that T is a homomorphism F -> L that fixes F ∩ L.
bool is_local_map(const Sublattice& sub, const Sublattice& f, const LatticeMap& t);

struct LocalWitness {
  Sublattice f;
  LatticeMap t;
};

struct LocalComplementResult {
  bool holds = false;
  std::vector<LocalWitness> witnesses;  // one per sublattice of M when holds
  std::optional<Sublattice> failing;
};

/// Tries every sublattice F of M, smallest first; stops at the first F
/// without a map T.
LocalComplementResult local_complement_check(const Sublattice& sub, int size_cap = kDefaultSizeCap);

enum class FastPath { Chain, Ideal, Filter, BoundedExtension };
std::string_view to_string(FastPath path);

struct FastPathBuilder {
  FastPath tag;
  std::function<LatticeMap(const Sublattice& f)> build;
};

/// Structural shortcut for local complementation with an explicit T per F.
std::optional<FastPathBuilder> fast_path_loc_comp(const Sublattice& sub);

struct ExtensionResult {
  bool holds = false;
  std::optional<ChainColoring> counterexample;  // a coloring of sub.induced()
};

ExtensionResult extension_property(const Sublattice& sub, int size_cap = kDefaultSizeCap);

/// Phi = phi o r for a retraction r; phi lives on sub.induced().
template <class Scalar>
VectorHom<Scalar> extend_vector_hom(const VectorHom<Scalar>& phi, const Sublattice& sub) {
  if (phi.lattice() != sub.induced() && phi.lattice()->labels() != sub.induced()->labels()) {
    throw InvalidInput("vector homomorphism does not live on the given sublattice");
  }
  auto r = find_retraction(sub);
  if (!r) throw NotLocallyComplemented("no homomorphism M -> L fixes L; cannot extend");
  std::vector<std::vector<Scalar>> out;
  for (const auto& c : phi.components()) {
    std::vector<Scalar> v;
    v.reserve(r->size());
    for (int y : *r) v.push_back(c[static_cast<std::size_t>(sub.position(y))]);
    out.push_back(std::move(v));
  }
  return VectorHom<Scalar>(sub.parent(), std::move(out));
}

struct EmbeddingReport {
  std::string sub_name;
  std::string parent_name;
  bool complemented = false;
  std::optional<LatticeMap> retraction;
  LocalComplementResult local;
  ExtensionResult extension;
  std::optional<FastPath> fast_path;

  /// 0 locally complemented, 1 extension property only, 2 not injective.
  int verdict_code() const;
};

/// Runs every decision procedure and checks the implications between them
/// (std::logic_error if they disagree).
EmbeddingReport analyze_pair(const Sublattice& sub, std::string sub_name = "L", std::string parent_name = "M",
                             int size_cap = kDefaultSizeCap);

nlohmann::json to_json(const EmbeddingReport& report, const Sublattice& sub);

struct ExplorationFailure {
  VectorHom<Rational> phi;
  std::string reason;
};

struct ExplorationReport {
  int n = 0;
  int samples = 0;
  int extended = 0;
  std::vector<ExplorationFailure> failures;
  /// Failures only mean this search found no extension.
  static constexpr std::string_view kind = "heuristic-falsification";
};

/// Samples VectorHoms phi: L -> l1^n with norm <= 1 and looks for extensions
/// M -> l1^n of equal norm: each coordinate's coloring is extended, then a
/// linear program picks values for the new levels. `seeds` are tried first.
ExplorationReport explore_l1n_extension(const Sublattice& sub, int n, int sample_count, std::uint64_t seed,
                                        const std::vector<VectorHom<Rational>>& seeds = {});

nlohmann::json to_json(const ExplorationReport& report, const Sublattice& sub);

}  // namespace fbl
