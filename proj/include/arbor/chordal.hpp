#pragma once

#include <optional>
#include <vector>

#include "arbor/core_model.hpp"

namespace arbor {

struct ChordalResult {
  bool chordal = false;
  /// Perfect elimination ordering (vertex indices) when chordal.
  std::vector<std::size_t> peo;
  /// Chordless cycle of length >= 4 when not chordal.
  std::vector<std::size_t> cycle;
};

/// Lexicographic BFS order (the reverse is a PEO iff g is chordal).
std::vector<std::size_t> lex_bfs(const Graph& g);
bool is_peo(const Graph& g, const std::vector<std::size_t>& order);
ChordalResult is_chordal(const Graph& g);

bool is_connected(const Graph& g);
/// Connected components, each sorted, ordered by smallest member.
std::vector<std::vector<std::size_t>> components(const Graph& g);

struct CliqueTree {
  /// Maximal cliques, each sorted; ordered lexicographically.
  std::vector<std::vector<std::size_t>> cliques;
  /// (i, j) clique indices with i < j.
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

/// Maximal cliques from a PEO; throws InputError when g is not chordal.
std::vector<std::vector<std::size_t>> maximal_cliques(const Graph& g);
CliqueTree clique_tree(const Graph& g);

/// Architecture whose processes are the maximal cliques ("k0", "k1", ...)
/// and where each letter's domain is the set of cliques containing it.
/// `controllable` (optional, by vertex) is carried onto the letters.
/// Throws InputError "not triangulated" / "use forest_decompose first".
Architecture tca_from_dependence(const Graph& g, const std::vector<bool>& controllable = {});

/// Connected components of the dependence graph as restricted alphabets.
/// Processes not touched by a component's letters are dropped from it.
std::vector<Alphabet> forest_decompose(const Alphabet& alphabet);

}  // namespace arbor
