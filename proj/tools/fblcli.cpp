// Command-line front end. JSON goes to stdout, a one-line summary to stderr.

#include "fbl/embedding.hpp"
#include "fbl/errors.hpp"
#include "fbl/expression.hpp"
#include "fbl/lattice_io.hpp"
#include "fbl/norm.hpp"
#include "fbl/repro.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitInvalid = 3;
constexpr int kExitUsage = 64;
constexpr int kExitIo = 74;

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const nlohmann::json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Free Banach lattices over finite distributive lattices"};
  app.require_subcommand(1);

  auto* lattice = app.add_subcommand("lattice", "Validate or draw a lattice file");
  lattice->require_subcommand(1);
  std::string lattice_file;
  auto* check = lattice->add_subcommand("check", "Validate a lattice JSON file (exit 0 valid, 1 invalid)");
  check->add_option("file", lattice_file, "lattice JSON")->required();
  bool raw_dot = false;
  auto* dot = lattice->add_subcommand("export-dot", "Hasse diagram in Graphviz syntax");
  dot->add_option("file", lattice_file, "lattice JSON")->required();
  dot->add_flag("--raw", raw_dot, "print DOT text instead of JSON");

  auto* pair = app.add_subcommand("pair", "Sublattice pairs");
  pair->require_subcommand(1);
  std::string sub_file;
  std::string parent_file;
  auto* analyze = pair->add_subcommand(
      "analyze", "Embedding report; exit 0 isometric-certified, 1 isomorphic-only, 2 not injective, 3 error");
  analyze->add_option("sub", sub_file, "sublattice JSON")->required();
  analyze->add_option("parent", parent_file, "parent lattice JSON")->required();
  int explore_n = 2;
  int explore_samples = 100;
  std::uint64_t explore_seed = 7;
  auto* explore = pair->add_subcommand("explore", "Heuristic search for norm-preserving l1^n extensions");
  explore->add_option("sub", sub_file, "sublattice JSON")->required();
  explore->add_option("parent", parent_file, "parent lattice JSON")->required();
  explore->add_option("--n", explore_n, "target dimension")->check(CLI::PositiveNumber);
  explore->add_option("--samples", explore_samples, "number of sampled homomorphisms")->check(CLI::NonNegativeNumber);
  explore->add_option("--seed", explore_seed, "random seed");

  auto* norm = app.add_subcommand("norm", "Certified norm interval for an expression");
  std::string expr_file;
  fbl::SearchParams params;
  norm->add_option("--lattice", lattice_file, "lattice JSON")->required();
  norm->add_option("--expr", expr_file, "expression file (S-expression)")->required();
  norm->add_option("--nmax", params.n_max, "largest tuple size")->check(CLI::PositiveNumber);
  norm->add_option("--restarts", params.restarts, "hill-climbing runs when enumeration is over budget");
  norm->add_option("--seed", params.seed, "random seed");
  norm->add_option("--budget", params.cell_budget, "linear programs per tuple size");

  auto* repro = app.add_subcommand("repro", "Reproduction suites (exit 0 when every check passes)");
  repro->require_subcommand(1);
  auto* diamond_cmd = repro->add_subcommand("example45", "Diamond and its three-element chain");
  auto* grid_cmd = repro->add_subcommand("section5", "Grid pair: isomorphic but not isometric");
  std::string epsilon_text = "1/10";
  fbl::GridPairOptions s5;
  grid_cmd->add_option("--epsilon", epsilon_text, "rational radius in (0, 1/2)");
  grid_cmd->add_option("--samples", s5.samples, "sampled neighborhood points")->check(CLI::NonNegativeNumber);
  grid_cmd->add_option("--budget", s5.budget, "linear programs per tuple size");
  grid_cmd->add_option("--seed", s5.seed, "random seed");
  grid_cmd->add_option("--nmax", s5.n_max, "largest tuple size")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (check->parsed()) {
      try {
        auto l = fbl::load_lattice(lattice_file);
        emit({{"valid", true}, {"size", l.size()}, {"elements", l.labels()}});
        std::cerr << "valid distributive lattice with " << l.size() << " elements\n";
        return 0;
      } catch (const fbl::Error& e) {
        emit({{"valid", false}, {"error", e.what()}});
        std::cerr << "invalid: " << e.what() << "\n";
        return 1;
      }
    }
    if (dot->parsed()) {
      auto text = fbl::to_dot(fbl::load_lattice(lattice_file));
      if (raw_dot) std::cout << text;
      else emit({{"dot", text}});
      return 0;
    }
    if (analyze->parsed() || explore->parsed()) {
      auto sub = fbl::load_lattice(sub_file);
      auto parent = fbl::share(fbl::load_lattice(parent_file));
      auto s = fbl::embed_by_labels(sub, parent);
      if (explore->parsed()) {
        auto rep = fbl::explore_l1n_extension(s, explore_n, explore_samples, explore_seed);
        emit(fbl::to_json(rep, s));
        std::cerr << rep.extended << "/" << rep.samples << " sampled maps extended (heuristic)\n";
        return 0;
      }
      auto rep = fbl::analyze_pair(s, sub_file, parent_file);
      auto j = fbl::to_json(rep, s);
      emit(j);
      std::cerr << j["verdict"].get<std::string>() << "\n";
      return rep.verdict_code();
    }
    if (norm->parsed()) {
      auto l = fbl::share(fbl::load_lattice(lattice_file));
      fbl::NormableFunction f(fbl::parse_expression(read_text(expr_file), l));
      auto est = fbl::estimate_norm(f, params);
      emit(fbl::to_json(est));
      std::cerr << "norm in [" << est.lower.value << ", " << est.upper << "]\n";
      return 0;
    }
    if (diamond_cmd->parsed() || grid_cmd->parsed()) {
      auto rep = diamond_cmd->parsed() ? fbl::repro_diamond_chain() : fbl::repro_grid_pair(fbl::parse_rational(epsilon_text), s5);
      emit(rep.to_json());
      for (const auto& c : rep.checks) std::cerr << (c.pass ? "pass  " : "FAIL  ") << c.name << "\n";
      return rep.pass() ? 0 : 1;
    }
  } catch (const std::ios_base::failure& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const fbl::Error& e) {
    emit({{"error", e.what()}});
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitUsage;
}
