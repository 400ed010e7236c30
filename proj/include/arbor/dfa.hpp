#pragma once

#include <cstdint>
#include <limits>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "arbor/core_model.hpp"

namespace arbor {

using StateId = std::uint32_t;
inline constexpr StateId kNoState = std::numeric_limits<StateId>::max();

/// Deterministic automaton with partial transitions over a distributed alphabet.
class Dfa {
 public:
  Dfa() = default;
  /// States are named "0".."n-1" unless renamed; initial state 0, nothing accepting.
  Dfa(Alphabet alphabet, std::size_t num_states);
  Dfa(Alphabet alphabet, std::vector<std::string> state_names);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t num_states() const noexcept { return names_.size(); }
  StateId initial() const noexcept { return initial_; }
  bool accepting(StateId s) const { return accepting_.at(s); }
  const std::string& state_name(StateId s) const { return names_.at(s); }
  const std::vector<std::string>& state_names() const noexcept { return names_; }
  std::optional<StateId> find_state(std::string_view name) const;

  /// kNoState when undefined.
  StateId delta(StateId s, LetterId a) const { return table_[s * alphabet_.num_letters() + idx(a)]; }
  /// kNoState if any step is undefined (or s is kNoState).
  StateId delta(StateId s, const Word& w) const;

  void set_initial(StateId s);
  void set_accepting(StateId s, bool on = true);
  void set_transition(StateId s, LetterId a, StateId t);
  void clear_transition(StateId s, LetterId a);

 private:
  void check_state(StateId s) const;

  Alphabet alphabet_;
  std::vector<std::string> names_;
  StateId initial_ = 0;
  std::vector<bool> accepting_;
  std::vector<StateId> table_;
};

struct RunResult {
  StateId state = kNoState;   ///< reached state, kNoState when undefined
  std::size_t undefined_at = 0;  ///< index of the first undefined step
  bool defined() const noexcept { return state != kNoState; }
};

RunResult run(const Dfa& dfa, const Word& w);
bool accepts(const Dfa& dfa, const Word& w);

struct DiamondViolation {
  StateId state;
  LetterId a;
  LetterId b;
};

/// First (s, a, b) with a, b independent where Δ(s,ab) and Δ(s,ba) differ
/// (definedness included), or where Δ(s,a) and Δ(s,b) are both defined but
/// Δ(s,ab) is not. Scans s, then a < b in id order.
std::optional<DiamondViolation> diamond_violation(const Dfa& dfa);
inline bool is_diamond(const Dfa& dfa) { return !diamond_violation(dfa).has_value(); }

/// Letters whose domain avoids every domain of a letter in c2.
LetterSet max_independent_letters(const Alphabet& alphabet, const LetterSet& c2);

/// Shortest word over `letters` leading from `from` to `to` (BFS, letters
/// tried in id order), or nullopt.
std::optional<Word> witness_word(const Dfa& dfa, StateId from, StateId to, const LetterSet& letters);

class DiamError : public std::runtime_error {
 public:
  enum class Kind { DiamUndefined, TargetUndefined };
  DiamError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// Memo table for diam; safe for concurrent use.
class DiamCache {
 public:
  std::optional<StateId> lookup(StateId s, StateId s1, StateId s2, const LetterSet& c2) const;
  void store(StateId s, StateId s1, StateId s2, const LetterSet& c2, StateId result);
  std::size_t size() const;

 private:
  struct Key {
    StateId s, s1, s2;
    LetterSet c2;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      return ((std::size_t{k.s} * 1000003u ^ k.s1) * 1000003u ^ k.s2) ^ (k.c2.hash() << 1);
    }
  };
  mutable std::mutex mu_;
  std::unordered_map<Key, StateId, KeyHash> table_;
};

/// Δ(s, w1·w2) for witnesses w1 ∈ C1'* (s →w1 s1) and w2 ∈ C2* (s →w2 s2),
/// where C1' = max_independent_letters(C2). Throws DiamError.
StateId diam(const Dfa& dfa, StateId s, StateId s1, StateId s2, const LetterSet& c2, DiamCache* cache = nullptr);

}  // namespace arbor
