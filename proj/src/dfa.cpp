#include "arbor/dfa.hpp"

#include <deque>

#include "arbor/error.hpp"

namespace arbor {

Dfa::Dfa(Alphabet alphabet, std::size_t num_states) : alphabet_(std::move(alphabet)) {
  if (num_states == 0) throw InputError("a DFA needs at least one state");
  for (std::size_t i = 0; i < num_states; ++i) names_.push_back(std::to_string(i));
  accepting_.assign(num_states, false);
  table_.assign(num_states * alphabet_.num_letters(), kNoState);
}

Dfa::Dfa(Alphabet alphabet, std::vector<std::string> state_names) : Dfa(std::move(alphabet), state_names.size()) {
  for (std::size_t i = 0; i < state_names.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (state_names[i] == state_names[j]) throw InputError("duplicate state '" + state_names[i] + "'");
  names_ = std::move(state_names);
}

std::optional<StateId> Dfa::find_state(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<StateId>(i);
  return std::nullopt;
}

StateId Dfa::delta(StateId s, const Word& w) const {
  for (LetterId a : w) {
    if (s == kNoState) return kNoState;
    s = delta(s, a);
  }
  return s;
}

void Dfa::check_state(StateId s) const {
  if (s >= num_states()) throw InputError("state id " + std::to_string(s) + " out of range");
}

void Dfa::set_initial(StateId s) {
  check_state(s);
  initial_ = s;
}

void Dfa::set_accepting(StateId s, bool on) {
  check_state(s);
  accepting_[s] = on;
}

void Dfa::set_transition(StateId s, LetterId a, StateId t) {
  check_state(s);
  check_state(t);
  alphabet_.require(a);
  table_[s * alphabet_.num_letters() + idx(a)] = t;
}

void Dfa::clear_transition(StateId s, LetterId a) {
  check_state(s);
  alphabet_.require(a);
  table_[s * alphabet_.num_letters() + idx(a)] = kNoState;
}

RunResult run(const Dfa& dfa, const Word& w) {
  RunResult r;
  StateId s = dfa.initial();
  for (std::size_t i = 0; i < w.size(); ++i) {
    dfa.alphabet().require(w[i]);
    s = dfa.delta(s, w[i]);
    if (s == kNoState) {
      r.undefined_at = i;
      return r;
    }
  }
  r.state = s;
  r.undefined_at = w.size();
  return r;
}

bool accepts(const Dfa& dfa, const Word& w) {
  RunResult r = run(dfa, w);
  return r.defined() && dfa.accepting(r.state);
}

std::optional<DiamondViolation> diamond_violation(const Dfa& dfa) {
  const Alphabet& al = dfa.alphabet();
  const std::size_t k = al.num_letters();
  for (StateId s = 0; s < dfa.num_states(); ++s)
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = a + 1; b < k; ++b) {
        LetterId la = letter_id(a), lb = letter_id(b);
        if (!independent(al, la, lb)) continue;
        StateId ab = dfa.delta(s, Word{la, lb});
        StateId ba = dfa.delta(s, Word{lb, la});
        if (ab != ba) return DiamondViolation{s, la, lb};
        // Both letters enabled: they must also be enabled one after the other.
        if (ab == kNoState && dfa.delta(s, la) != kNoState && dfa.delta(s, lb) != kNoState)
          return DiamondViolation{s, la, lb};
      }
  return std::nullopt;
}

LetterSet max_independent_letters(const Alphabet& alphabet, const LetterSet& c2) {
  ProcSet used = alphabet.domain_of(c2);
  LetterSet out(alphabet.num_letters());
  for (std::size_t i = 0; i < alphabet.num_letters(); ++i)
    if (!alphabet.domain(letter_id(i)).intersects(used)) out.insert(letter_id(i));
  return out;
}

std::optional<Word> witness_word(const Dfa& dfa, StateId from, StateId to, const LetterSet& letters) {
  if (from >= dfa.num_states() || to >= dfa.num_states()) return std::nullopt;
  if (from == to) return Word{};
  const auto alph = letters.members();
  std::vector<StateId> pred(dfa.num_states(), kNoState);
  std::vector<LetterId> via(dfa.num_states());
  std::vector<char> seen(dfa.num_states(), 0);
  seen[from] = 1;
  std::deque<StateId> queue{from};
  while (!queue.empty()) {
    StateId s = queue.front();
    queue.pop_front();
    for (LetterId a : alph) {
      StateId t = dfa.delta(s, a);
      if (t == kNoState || seen[t]) continue;
      seen[t] = 1;
      pred[t] = s;
      via[t] = a;
      if (t == to) {
        Word w;
        for (StateId x = to; x != from; x = pred[x]) w.push_back(via[x]);
        return Word(w.rbegin(), w.rend());
      }
      queue.push_back(t);
    }
  }
  return std::nullopt;
}

std::optional<StateId> DiamCache::lookup(StateId s, StateId s1, StateId s2, const LetterSet& c2) const {
  std::lock_guard lock(mu_);
  auto it = table_.find(Key{s, s1, s2, c2});
  if (it == table_.end()) return std::nullopt;
  return it->second;
}

void DiamCache::store(StateId s, StateId s1, StateId s2, const LetterSet& c2, StateId result) {
  std::lock_guard lock(mu_);
  table_.emplace(Key{s, s1, s2, c2}, result);
}

std::size_t DiamCache::size() const {
  std::lock_guard lock(mu_);
  return table_.size();
}

StateId diam(const Dfa& dfa, StateId s, StateId s1, StateId s2, const LetterSet& c2, DiamCache* cache) {
  if (cache)
    if (auto hit = cache->lookup(s, s1, s2, c2)) return *hit;
  LetterSet c1 = max_independent_letters(dfa.alphabet(), c2);
  auto w1 = witness_word(dfa, s, s1, c1);
  if (!w1)
    throw DiamError(DiamError::Kind::DiamUndefined, "diam undefined: no independent witness from " +
                                                        dfa.state_name(s) + " to " + dfa.state_name(s1));
  auto w2 = witness_word(dfa, s, s2, c2);
  if (!w2)
    throw DiamError(DiamError::Kind::DiamUndefined,
                    "diam undefined: no witness from " + dfa.state_name(s) + " to " + dfa.state_name(s2));
  StateId r = dfa.delta(s1, *w2);
  if (r == kNoState)
    throw DiamError(DiamError::Kind::TargetUndefined, "target undefined");
  if (cache) cache->store(s, s1, s2, c2, r);
  return r;
}

}  // namespace arbor
