#pragma once

#include <cstdint>
#include <random>

#include "arbor/async_automaton.hpp"
#include "arbor/dfa.hpp"

namespace arbor::gen {

using Rng = std::mt19937_64;

/// Uniform in [0, n). Plain modulo keeps streams identical across standard libraries.
inline std::size_t below(Rng& rng, std::size_t n) { return n ? static_cast<std::size_t>(rng() % n) : 0; }
inline bool coin(Rng& rng, double p) { return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p; }

struct TcaOptions {
  std::size_t min_processes = 1;
  std::size_t max_processes = 5;
  std::size_t max_letters = 6;
};

/// Random tree plus letters on connected subtrees, every edge covered.
/// Processes "p0".., letters "a0"..
Architecture random_tca(Rng& rng, const TcaOptions& opts = {});

/// Random partial DFA made I-diamond by merging the two ends of every
/// broken diamond and filling in missing sides, then trimmed to reachable
/// states. The largest of eight such attempts is kept. At most max_states states.
Dfa random_diamond_dfa(Rng& rng, const Alphabet& al, std::size_t max_states = 6, double density = 0.6);

struct PlantOptions {
  std::size_t processes = 1;     ///< random tree on this many processes
  std::size_t max_states = 4;    ///< per process, at least 1
  int max_priority = 2;
  std::size_t conditions = 1;    ///< priority maps per process
  bool short_leaves = false;     ///< local moves of non-root leaves go forward only
  bool leaf_cycle = false;       ///< force a local cycle on the last leaf
  double density = 0.5;
};

/// Letters per process p: "c_p", "d_p" (controllable local), "u_p"
/// (uncontrollable local); per tree edge: "x_p_q" (uncontrollable, both ends).
AsyncAutomaton random_plant(Rng& rng, const PlantOptions& opts = {});

/// A graph on n vertices "v0".. with each edge present with probability p.
Graph random_graph(Rng& rng, std::size_t n, double p);

}  // namespace arbor::gen
