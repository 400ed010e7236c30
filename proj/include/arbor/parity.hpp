#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace arbor {

/// Max-parity, even accepting: the largest priority seen infinitely often decides.
inline bool parity_accepts(int max_inf_priority) { return max_inf_priority % 2 == 0; }

/// Priority assignment over some state space, values in [0, index_count).
struct ParityCondition {
  std::vector<int> priority;
  int index_count = 1;
};

/// Parity-preserving rank compression: consecutive distinct values of equal
/// parity are merged; the smallest value keeps its parity.
std::vector<int> compress_priorities(const std::vector<int>& priorities);

/// Deterministic parity automaton over tuples of priorities accepting
/// exactly the tuple words accepted by every component condition.
///
/// Each condition with priorities [0, c) is split into its Streett pairs
/// (one per odd k < c: seeing k infinitely often demands something above k
/// infinitely often). The record orders all pairs; pairs of one condition
/// always stay in decreasing order, so a record is a word over condition
/// labels. Output priorities are moved onto target states (state = record +
/// last output). With a single condition the automaton is a passthrough.
class IarAutomaton {
 public:
  using State = std::uint32_t;

  explicit IarAutomaton(std::vector<int> counts);

  std::size_t num_conditions() const noexcept { return counts_.size(); }
  const std::vector<int>& counts() const noexcept { return counts_; }
  /// Largest priority the automaton can emit.
  int max_priority() const noexcept;

  State initial() const noexcept { return 0; }
  /// Throws InputError when the tuple is out of range.
  State step(State s, const std::vector<int>& tuple);
  int priority(State s) const { return states_.at(s).marker; }

  struct Record {
    std::vector<std::uint8_t> perm;  ///< condition label per pair slot, oldest first
    int marker = 0;                  ///< output of the transition into this state
    auto operator<=>(const Record&) const = default;
  };
  const Record& record(State s) const { return states_.at(s); }
  std::string serialize(State s) const;

  /// Builds every state reachable over all tuples; returns the count.
  std::size_t explore_all();
  std::size_t num_states() const noexcept { return states_.size(); }

 private:
  State intern(Record r);

  std::vector<int> counts_;
  std::vector<int> pairs_;  // Streett pairs per condition
  std::vector<Record> states_;
  std::map<Record, State> index_;
  std::map<std::pair<State, std::vector<int>>, State> trans_;
};

IarAutomaton iar_conjunction(const std::vector<ParityCondition>& conds);

/// Upper estimate (p0+p)·p!·(p0+1)^p / ∏_{i>0} p_i! on the IAR state count.
double iar_bound(const std::vector<int>& counts);

// ---------------------------------------------------------------------------

enum class Owner : std::uint8_t { System, Environment };

struct ParityGame {
  struct Position {
    std::string id;
    Owner owner = Owner::System;
    int priority = 0;
    /// Positions without successors must be tagged: true = System wins.
    std::optional<bool> terminal_win;
  };
  std::vector<Position> positions;
  std::vector<std::vector<std::size_t>> succ;
  std::size_t initial = 0;

  std::size_t add_position(std::string id, Owner owner, int priority);
  void add_edge(std::size_t u, std::size_t v);
  std::size_t size() const noexcept { return positions.size(); }
  /// Throws InputError when an untagged position has no successor.
  void validate() const;
};

inline constexpr std::size_t kNoMove = static_cast<std::size_t>(-1);

struct GameSolution {
  std::vector<bool> system_wins;
  /// For each position, the successor chosen by its owner when the owner
  /// wins there (kNoMove on terminals and on positions the owner loses).
  std::vector<std::size_t> strategy;
};

/// Recursive attractor-based solver.
GameSolution solve_parity_game(const ParityGame& g);
/// Checks regions are closed and that fixing each winner's strategy leaves
/// no cycle won by the other side. Empty string when fine.
std::string check_solution(const ParityGame& g, const GameSolution& sol);
/// Winner per position by enumerating all positional strategy pairs.
std::vector<bool> brute_force_winners(const ParityGame& g);

}  // namespace arbor
