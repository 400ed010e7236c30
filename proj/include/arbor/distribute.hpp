#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "arbor/async_automaton.hpp"
#include "arbor/dfa.hpp"

namespace arbor {

/// (s, t): last state shared with the parent, most recent state known here.
struct PairState {
  StateId s = 0;
  StateId t = 0;
  friend bool operator==(PairState, PairState) = default;
};

struct LabeledNode {
  ProcId proc{};
  StateId s = 0;
  StateId t = 0;
  LetterSet cdown;
  std::vector<LabeledNode> children;
};

/// Letters whose whole domain lies in the subtree rooted at p.
LetterSet down_letters(const Architecture& arch, ProcId p);

/// Subtree of the architecture tree induced by the domain of a letter.
struct LetterTree {
  ProcId root{};
  ProcSet nodes;
  /// (parent, child) edges of the induced subtree, ordered by child id.
  std::vector<std::pair<ProcId, ProcId>> edges;
};

LetterTree letter_tree(const Architecture& arch, LetterId a);

/// Fold of Diam over the children (in the order given). DiamError messages
/// are prefixed with the path of the failing node.
StateId tdiam(const Dfa& dfa, const LabeledNode& tree, DiamCache* cache = nullptr);

/// The paired-state asynchronous automaton built from an I-diamond DFA over
/// a tree-like architecture. Transitions are computed on demand and cached.
class Distribution : public AutomatonView {
 public:
  /// Throws InputError if the DFA is not I-diamond, the architecture is not
  /// tree-like, or the alphabets differ.
  Distribution(Dfa dfa, Architecture arch);

  const Alphabet& alphabet() const override { return arch_.alphabet(); }
  const Dfa& dfa() const noexcept { return dfa_; }
  const Architecture& architecture() const noexcept { return arch_; }

  LocalState encode(PairState ps) const noexcept { return ps.s * static_cast<LocalState>(n_) + ps.t; }
  PairState decode(LocalState l) const noexcept {
    return {static_cast<StateId>(l / n_), static_cast<StateId>(l % n_)};
  }
  std::size_t declared_states_per_process() const noexcept { return n_ * n_; }

  GlobalState initial_state() const override;
  std::optional<GlobalState> step(const GlobalState& g, LetterId a) const override;
  /// δ_a on the participants' tuple (ProcId order); nullopt when undefined.
  std::optional<Tuple> delta(LetterId a, const Tuple& from) const;
  bool accepting(const GlobalState& g) const override;

  /// TDiam of the whole tree labeled by g: the DFA state reached by the run.
  StateId global_dfa_state(const GlobalState& g) const;
  /// Labels the subtree of `nodes` rooted at `root` with the pair states of g.
  LabeledNode label(const GlobalState& g, ProcId root, ProcSet nodes) const;

  /// Explicit automaton over the reachable global states; acceptance is the
  /// set of reachable accepting global states. Local state names are "(s,t)".
  AsyncAutomaton materialize(std::size_t limit = 2'000'000) const;
  /// Per-process count of local states occurring in reachable global states.
  std::vector<std::size_t> reachable_local_counts(std::size_t limit = 2'000'000) const;

 private:
  Dfa dfa_;
  Architecture arch_;
  std::size_t n_ = 1;
  std::vector<LetterSet> cdown_;
  std::vector<LetterTree> trees_;
  mutable DiamCache diam_cache_;
  mutable std::mutex mu_;
  mutable std::vector<std::map<Tuple, std::optional<Tuple>>> delta_cache_;
};

/// Parallel composition of distributions over pairwise independent
/// sub-alphabets (a forest of tree-like components).
class ComposedDistribution : public AutomatonView {
 public:
  /// Each part is a distribution of `dfa` restricted to its sub-alphabet.
  /// Process names are prefixed with "<component index>." in the composite.
  ComposedDistribution(std::vector<std::shared_ptr<const Distribution>> parts, Dfa dfa);

  const Alphabet& alphabet() const override { return alphabet_; }
  GlobalState initial_state() const override;
  std::optional<GlobalState> step(const GlobalState& g, LetterId a) const override;
  bool accepting(const GlobalState& g) const override;

 private:
  std::vector<std::shared_ptr<const Distribution>> parts_;
  Dfa dfa_;
  Alphabet alphabet_;
  std::vector<std::size_t> offset_;            // first composite ProcId of each part
  std::vector<std::pair<std::size_t, LetterId>> letter_map_;  // composite letter -> (part, part letter)
  std::vector<LetterSet> part_letters_;        // letters of each part, in composite ids
  mutable DiamCache cache_;
};

/// Restriction of a DFA to a subset of its letters (named in `sub`);
/// transitions on other letters are dropped.
Dfa restrict_dfa(const Dfa& dfa, const Alphabet& sub);

std::shared_ptr<const AutomatonView> parallel_compose(std::vector<std::shared_ptr<const Distribution>> parts,
                                                      const Dfa& dfa);

struct EquivReport {
  bool equal = true;
  std::optional<Word> witness;  ///< first differing word (length-lexicographic)
  std::size_t words_checked = 0;
};

/// Compares DFA acceptance with aa acceptance on every word of length at
/// most max_len, shortest words first, letters in id order.
EquivReport bounded_equivalence(const Dfa& dfa, const AutomatonView& aa, std::size_t max_len);

}  // namespace arbor
