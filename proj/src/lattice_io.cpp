#include "fbl/lattice_io.hpp"

#include "fbl/errors.hpp"

#include <fstream>
#include <sstream>

namespace fbl {

FiniteLattice lattice_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("elements")) throw InvalidInput("lattice JSON needs an \"elements\" array");
  std::vector<std::string> labels;
  for (const auto& e : doc.at("elements")) {
    if (!e.is_string()) throw InvalidInput("element labels must be strings");
    labels.push_back(e.get<std::string>());
  }
  std::vector<std::pair<std::string, std::string>> covers;
  if (doc.contains("covers")) {
    for (const auto& c : doc.at("covers")) {
      if (!c.is_array() || c.size() != 2 || !c[0].is_string() || !c[1].is_string()) {
        throw InvalidInput("each cover must be a [lower, upper] pair of labels");
      }
      covers.emplace_back(c[0].get<std::string>(), c[1].get<std::string>());
    }
  }
  return FiniteLattice::from_covers(std::move(labels), covers);
}

nlohmann::json lattice_to_json(const FiniteLattice& lattice) {
  nlohmann::json covers = nlohmann::json::array();
  for (auto [lo, hi] : lattice.covers()) covers.push_back({lattice.label(lo), lattice.label(hi)});
  return {{"elements", lattice.labels()}, {"covers", covers}};
}

nlohmann::json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(path.string() + ": " + e.what());
  }
}

FiniteLattice load_lattice(const std::filesystem::path& path) { return lattice_from_json(load_json(path)); }

std::string to_dot(const FiniteLattice& lattice, const std::string& graph_name) {
  std::ostringstream out;
  out << "digraph \"" << graph_name << "\" {\n  rankdir=BT;\n  node [shape=plaintext];\n";
  for (int i = 0; i < lattice.size(); ++i) out << "  n" << i << " [label=\"" << lattice.label(i) << "\"];\n";
  for (auto [lo, hi] : lattice.covers()) out << "  n" << lo << " -> n" << hi << " [arrowhead=none];\n";
  out << "}\n";
  return out.str();
}

Sublattice embed_by_labels(const FiniteLattice& sub, const LatticePtr& parent) {
  std::vector<int> members;
  members.reserve(static_cast<std::size_t>(sub.size()));
  for (const auto& l : sub.labels()) {
    auto idx = parent->index_of(l);
    if (!idx) throw InvalidInput("element '" + l + "' of the sublattice is missing from the parent");
    members.push_back(*idx);
  }
  for (int i = 0; i < sub.size(); ++i)
    for (int j = 0; j < sub.size(); ++j)
      if (sub.leq(i, j) != parent->leq(members[static_cast<std::size_t>(i)], members[static_cast<std::size_t>(j)])) {
        throw InvalidInput("order between '" + sub.label(i) + "' and '" + sub.label(j) +
                           "' differs from the parent lattice");
      }
  return Sublattice(parent, std::move(members));
}

}  // namespace fbl
