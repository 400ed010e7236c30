#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "arbor/async_automaton.hpp"
#include "arbor/parity.hpp"

namespace arbor {

// Plants are AsyncAutomaton values carrying a process tree and local
// acceptance (F_p plus one or more priority maps per process, read as a
// conjunction). Max-parity, even accepting.

/// Covering controller: an automaton over the plant's alphabet (no
/// acceptance) with a projection of each local controller state onto a
/// plant state of the same process.
struct Controller {
  AsyncAutomaton automaton;
  std::vector<std::vector<LocalState>> projection;  ///< [process][controller state]

  LocalState project(ProcId p, LocalState c) const { return projection.at(idx(p)).at(c); }
};

/// π = identity, same transitions as the plant.
Controller identity_controller(const AsyncAutomaton& plant);

/// Keeps, at each plant state, only the given controllable letter (or none)
/// plus every uncontrollable transition. `choice[p][s]` must be a
/// controllable p-local letter enabled at s.
Controller positional_controller(const AsyncAutomaton& plant,
                                 const std::vector<std::vector<std::optional<LetterId>>>& choice);

struct ControllerCheck {
  bool ok = true;
  int condition = 0;  ///< 1 transition compatibility, 2 uncontrollable enabledness, 3 initial states
  std::string violation;
};

ControllerCheck check_controller(const AsyncAutomaton& plant, const Controller& c, std::size_t limit = 5'000'000);

struct Counterexample {
  Word stem;
  Word loop;  ///< empty: finite maximal run
  std::string reason;
};

struct WinningVerdict {
  bool winning = true;
  std::optional<Counterexample> counterexample;
  std::size_t explored_states = 0;
};

/// Searches the reachable global states of the controlled plant for a
/// rejecting maximal run (dead state or maximal cycle).
WinningVerdict verify_winning(const AsyncAutomaton& plant, const Controller& c, std::size_t limit = 5'000'000);

// ---------------------------------------------------------------------------

struct LshortResult {
  std::optional<std::size_t> bound;  ///< longest local path when acyclic
  std::vector<LocalState> cycle;     ///< local cycle witness otherwise
  bool short_ok() const noexcept { return bound.has_value(); }
};

/// Throws InputError when l is not a leaf (or the only process).
LshortResult lshort_bound(const AsyncAutomaton& plant, ProcId l);

struct LshortInfo {
  enum class Kind : std::uint8_t { Path, Top, Bottom };
  AsyncAutomaton plant;
  ProcId leaf{};
  std::vector<Kind> kind;                         ///< per new leaf state
  std::vector<std::vector<LocalState>> paths;     ///< per new leaf state (empty for Top/Bottom)
};

/// Leaf states become simple local paths since the last communication. A
/// local move closing a cycle goes to a terminal accepting state when the
/// cycle's maximal priority is even (for every condition), to a terminal
/// rejecting state otherwise.
LshortInfo make_lshort(const AsyncAutomaton& plant, ProcId l);
Controller lift_lshort_controller(const LshortInfo& info, const AsyncAutomaton& original, const Controller& c);

// ---------------------------------------------------------------------------

/// Leaf-local strategies in normal form (decision trees over the reachable
/// local words), hash-consed. Nodes are shared between strategies.
class StrategyStore {
 public:
  using Node = std::uint32_t;

  /// Throws InputError if the plant is not l-short.
  StrategyStore(const AsyncAutomaton& plant, ProcId l, std::size_t cap = 500'000);

  /// All strategies from local state s, deterministically ordered.
  const std::vector<Node>& strategies(LocalState s);

  LocalState state(Node n) const { return nodes_.at(n).state; }
  std::optional<LetterId> choice(Node n) const { return nodes_.at(n).choice; }
  /// Allowed local moves (letter, residual strategy), letters in id order.
  const std::vector<std::pair<LetterId, Node>>& moves(Node n) const { return nodes_.at(n).moves; }
  std::optional<Node> residual(Node n, LetterId b) const;
  /// Every maximal run respecting the strategy ends in F_l.
  bool eventually_final(Node n) const { return nodes_.at(n).eventually_final; }
  std::string serialize(Node n) const;
  std::size_t size() const noexcept { return nodes_.size(); }

 private:
  struct NodeData {
    LocalState state;
    std::optional<LetterId> choice;
    std::vector<std::pair<LetterId, Node>> moves;
    bool eventually_final;
  };
  Node intern(NodeData d);

  struct LocalMove {
    LetterId letter;
    bool controllable;
    LocalState target;
  };
  std::vector<std::vector<LocalMove>> local_;  // per leaf state, letters in id order
  std::vector<bool> final_;
  std::vector<std::string> letter_names_;
  std::size_t cap_;
  mutable std::vector<std::string> text_;
  std::vector<NodeData> nodes_;
  std::unordered_map<std::string, Node> index_;
  std::unordered_map<LocalState, std::vector<Node>> by_state_;
};

std::vector<StrategyStore::Node> enumerate_local_strategies(StrategyStore& store, LocalState s);
bool f_eventually_F(const StrategyStore& store, StrategyStore::Node f);

/// Parent state of the reduced plant.
struct PrimeState {
  enum class Type : std::uint8_t { Choose, Commit, True };
  Type type = Type::Choose;
  LocalState sp = 0;
  LocalState sl = 0;
  StrategyStore::Node f = 0;
  std::optional<LetterId> action;  ///< committed controllable parent action (old id); none = idle
  bool fresh = false;              ///< entered by a leaf-local move
};

struct Elimination {
  AsyncAutomaton plant;
  ProcId parent_old{}, leaf_old{}, parent_new{};
  std::vector<ProcId> old_of_new;
  std::vector<PrimeState> info;  ///< per new parent state
  std::shared_ptr<StrategyStore> store;
  /// New letter -> old letter (nullopt for choice letters).
  std::vector<std::optional<LetterId>> old_letter;
  std::vector<std::optional<LetterId>> new_letter;  ///< old letter -> new letter
};

/// Removes leaf l (which must be l-short), folding it into its parent.
Elimination remove_leaf(const AsyncAutomaton& plant, ProcId l);
Controller reconstruct_controller(const Elimination& elim, const AsyncAutomaton& plant, const Controller& c);

struct IarCompilation {
  AsyncAutomaton plant;
  ProcId proc{};
  std::vector<LocalState> base;  ///< new state -> original state
};

/// Replaces the conjunction of parity conditions of p by one condition via
/// the IAR product. Other processes are unchanged.
IarCompilation compile_conditions(const AsyncAutomaton& plant, ProcId p);
Controller uncompile_controller(const IarCompilation& comp, const Controller& c);

// ---------------------------------------------------------------------------

/// Positions 0..n-1: System at plant state s. Then Environment positions
/// (s, chosen controllable letter or none).
struct PlantGame {
  ParityGame game;
  std::vector<LocalState> env_state;             ///< per Environment position (offset n)
  std::vector<std::optional<LetterId>> env_choice;
  std::size_t num_states = 0;
};

PlantGame to_parity_game(const AsyncAutomaton& plant1);
/// Throws InputError when System loses from the initial position.
Controller strategy_to_controller(const PlantGame& g, const GameSolution& sol, const AsyncAutomaton& plant1);

struct ControlOptions {
  bool verify_stages = false;
  std::size_t verify_limit = 5'000'000;
};

struct ControlResult {
  bool controllable = false;
  std::optional<Controller> controller;
  std::vector<std::string> log;
};

ControlResult solve_control(const AsyncAutomaton& plant, const ControlOptions& opts = {});

/// Single-process or small plants: tries every positional controller
/// (one or no controllable action per local state). Returns the first
/// winning one in enumeration order. Throws UnsupportedInstance beyond `cap`.
std::optional<Controller> brute_force_positional(const AsyncAutomaton& plant, std::size_t cap = 1'000'000);

}  // namespace arbor
