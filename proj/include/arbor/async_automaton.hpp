#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "arbor/core_model.hpp"

namespace arbor {

using LocalState = std::uint32_t;
/// Local states of the processes in a letter's domain, in ProcId order.
using Tuple = std::vector<LocalState>;
/// One local state per process, indexed by ProcId.
using GlobalState = std::vector<LocalState>;

Tuple project(const GlobalState& g, ProcSet dom);
void write_back(GlobalState& g, ProcSet dom, const Tuple& t);

/// Anything that can be simulated letter by letter.
class AutomatonView {
 public:
  virtual ~AutomatonView() = default;
  virtual const Alphabet& alphabet() const = 0;
  virtual GlobalState initial_state() const = 0;
  virtual std::optional<GlobalState> step(const GlobalState& g, LetterId a) const = 0;
  virtual bool accepting(const GlobalState& g) const = 0;
};

struct AaRun {
  std::optional<GlobalState> state;
  std::size_t undefined_at = 0;
};

std::optional<GlobalState> aa_step(const AutomatonView& aa, const GlobalState& g, LetterId a);
AaRun aa_run(const AutomatonView& aa, const Word& w);
bool aa_accepts(const AutomatonView& aa, const Word& w);

/// Parity side of a local acceptance condition: several priority maps over
/// the same local states are read as a conjunction.
struct LocalAcceptance {
  std::vector<bool> final;
  std::vector<std::vector<int>> priorities;
};

/// Explicit asynchronous automaton: per-process state tables, per-letter
/// joint transition tables, optional acceptance.
class AsyncAutomaton : public AutomatonView {
 public:
  enum class AcceptanceKind { None, Global, Local };

  AsyncAutomaton() = default;
  explicit AsyncAutomaton(Alphabet alphabet, std::optional<ProcessTree> tree = std::nullopt);

  const Alphabet& alphabet() const override { return alphabet_; }
  const std::optional<ProcessTree>& tree() const noexcept { return tree_; }
  /// Throws InputError when no tree is attached.
  Architecture architecture() const;

  LocalState add_state(ProcId p, std::string name);
  std::size_t num_states(ProcId p) const { return names_.at(idx(p)).size(); }
  const std::string& state_name(ProcId p, LocalState s) const { return names_.at(idx(p)).at(s); }
  std::optional<LocalState> find_state(ProcId p, std::string_view name) const;

  void set_initial(ProcId p, LocalState s);
  LocalState initial(ProcId p) const { return initial_.at(idx(p)); }
  GlobalState initial_state() const override { return initial_; }

  /// Throws InputError on arity mismatch, unknown states, or a second
  /// different target for the same source tuple.
  void add_transition(LetterId a, Tuple from, Tuple to);
  void remove_transition(LetterId a, const Tuple& from);
  const std::map<Tuple, Tuple>& transitions(LetterId a) const { return delta_.at(idx(a)); }
  const Tuple* delta(LetterId a, const Tuple& from) const;
  std::optional<GlobalState> step(const GlobalState& g, LetterId a) const override;

  AcceptanceKind acceptance_kind() const noexcept { return kind_; }
  void clear_acceptance();
  void set_global_acceptance(std::set<GlobalState> states);
  void set_global_predicate(std::function<bool(const GlobalState&)> pred);
  void set_local_acceptance(std::vector<LocalAcceptance> acc);
  const std::set<GlobalState>& global_acceptance() const noexcept { return global_; }
  bool has_global_predicate() const noexcept { return static_cast<bool>(predicate_); }
  const std::vector<LocalAcceptance>& local_acceptance() const noexcept { return local_; }
  const LocalAcceptance& local_acceptance(ProcId p) const { return local_.at(idx(p)); }
  /// Global: membership/predicate. Local: every coordinate final. None: true.
  bool accepting(const GlobalState& g) const override;

  /// Local letters of p whose transition is defined at local state s.
  std::vector<LetterId> enabled_local(ProcId p, LocalState s) const;

 private:
  Alphabet alphabet_;
  std::optional<ProcessTree> tree_;
  std::vector<std::vector<std::string>> names_;
  GlobalState initial_;
  std::vector<std::map<Tuple, Tuple>> delta_;
  AcceptanceKind kind_ = AcceptanceKind::None;
  std::set<GlobalState> global_;
  std::function<bool(const GlobalState&)> predicate_;
  std::vector<LocalAcceptance> local_;
};

/// Global states reachable from the initial state (BFS, letters in id order).
/// Throws UnsupportedInstance beyond `limit` states.
std::vector<GlobalState> reachable_states(const AutomatonView& aa, std::size_t limit = 2'000'000);

}  // namespace arbor
