#pragma once

#include "fbl/lattice.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace fbl {

/// {"elements": [...], "covers": [[lower, upper], ...]}
FiniteLattice lattice_from_json(const nlohmann::json& doc);
nlohmann::json lattice_to_json(const FiniteLattice& lattice);

/// Reads and validates a lattice file; std::ios_base::failure on I/O trouble.
FiniteLattice load_lattice(const std::filesystem::path& path);
nlohmann::json load_json(const std::filesystem::path& path);

/// Hasse diagram in Graphviz syntax, bottom-to-top.
std::string to_dot(const FiniteLattice& lattice, const std::string& graph_name = "lattice");

/// Locates the members of `sub` inside `parent` by label; the induced order
/// must agree with sub's own order.
Sublattice embed_by_labels(const FiniteLattice& sub, const LatticePtr& parent);

}  // namespace fbl
