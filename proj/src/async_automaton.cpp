#include "arbor/async_automaton.hpp"

#include <deque>

#include "arbor/error.hpp"

namespace arbor {

Tuple project(const GlobalState& g, ProcSet dom) {
  Tuple t;
  t.reserve(dom.size());
  for (ProcId p : dom.members()) t.push_back(g[idx(p)]);
  return t;
}

void write_back(GlobalState& g, ProcSet dom, const Tuple& t) {
  std::size_t i = 0;
  for (ProcId p : dom.members()) g[idx(p)] = t[i++];
}

std::optional<GlobalState> aa_step(const AutomatonView& aa, const GlobalState& g, LetterId a) {
  aa.alphabet().require(a);
  return aa.step(g, a);
}

AaRun aa_run(const AutomatonView& aa, const Word& w) {
  AaRun r;
  GlobalState g = aa.initial_state();
  for (std::size_t i = 0; i < w.size(); ++i) {
    auto next = aa_step(aa, g, w[i]);
    if (!next) {
      r.undefined_at = i;
      return r;
    }
    g = std::move(*next);
  }
  r.state = std::move(g);
  r.undefined_at = w.size();
  return r;
}

bool aa_accepts(const AutomatonView& aa, const Word& w) {
  AaRun r = aa_run(aa, w);
  return r.state && aa.accepting(*r.state);
}

AsyncAutomaton::AsyncAutomaton(Alphabet alphabet, std::optional<ProcessTree> tree)
    : alphabet_(std::move(alphabet)), tree_(std::move(tree)) {
  if (tree_ && tree_->size() != alphabet_.num_processes())
    throw InputError("tree size does not match the number of processes");
  names_.resize(alphabet_.num_processes());
  initial_.assign(alphabet_.num_processes(), 0);
  delta_.resize(alphabet_.num_letters());
}

Architecture AsyncAutomaton::architecture() const {
  if (!tree_) throw InputError("automaton has no process tree");
  return Architecture(alphabet_, *tree_);
}

LocalState AsyncAutomaton::add_state(ProcId p, std::string name) {
  alphabet_.require(p);
  auto& names = names_[idx(p)];
  names.push_back(std::move(name));
  return static_cast<LocalState>(names.size() - 1);
}

std::optional<LocalState> AsyncAutomaton::find_state(ProcId p, std::string_view name) const {
  const auto& names = names_.at(idx(p));
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<LocalState>(i);
  return std::nullopt;
}

void AsyncAutomaton::set_initial(ProcId p, LocalState s) {
  alphabet_.require(p);
  if (s >= num_states(p)) throw InputError("initial state out of range for " + alphabet_.process_name(p));
  initial_[idx(p)] = s;
}

void AsyncAutomaton::add_transition(LetterId a, Tuple from, Tuple to) {
  alphabet_.require(a);
  const auto dom = alphabet_.domain(a).members();
  if (from.size() != dom.size() || to.size() != dom.size())
    throw InputError("transition arity mismatch for letter '" + alphabet_.letter_name(a) + "'");
  for (std::size_t i = 0; i < dom.size(); ++i)
    if (from[i] >= num_states(dom[i]) || to[i] >= num_states(dom[i]))
      throw InputError("transition of '" + alphabet_.letter_name(a) + "' uses an unknown state of " +
                       alphabet_.process_name(dom[i]));
  auto [it, inserted] = delta_[idx(a)].emplace(std::move(from), to);
  if (!inserted && it->second != to)
    throw InputError("nondeterministic transitions for letter '" + alphabet_.letter_name(a) + "'");
}

void AsyncAutomaton::remove_transition(LetterId a, const Tuple& from) { delta_.at(idx(a)).erase(from); }

const Tuple* AsyncAutomaton::delta(LetterId a, const Tuple& from) const {
  const auto& m = delta_.at(idx(a));
  auto it = m.find(from);
  return it == m.end() ? nullptr : &it->second;
}

std::optional<GlobalState> AsyncAutomaton::step(const GlobalState& g, LetterId a) const {
  ProcSet dom = alphabet_.domain(a);
  const Tuple* to = delta(a, project(g, dom));
  if (!to) return std::nullopt;
  GlobalState next = g;
  write_back(next, dom, *to);
  return next;
}

void AsyncAutomaton::clear_acceptance() {
  kind_ = AcceptanceKind::None;
  global_.clear();
  predicate_ = nullptr;
  local_.clear();
}

void AsyncAutomaton::set_global_acceptance(std::set<GlobalState> states) {
  clear_acceptance();
  kind_ = AcceptanceKind::Global;
  global_ = std::move(states);
}

void AsyncAutomaton::set_global_predicate(std::function<bool(const GlobalState&)> pred) {
  clear_acceptance();
  kind_ = AcceptanceKind::Global;
  predicate_ = std::move(pred);
}

void AsyncAutomaton::set_local_acceptance(std::vector<LocalAcceptance> acc) {
  if (acc.size() != alphabet_.num_processes()) throw InputError("local acceptance needs one entry per process");
  for (std::size_t p = 0; p < acc.size(); ++p) {
    const std::size_t n = num_states(proc_id(p));
    if (acc[p].final.size() != n) throw InputError("final-state vector size mismatch for " + alphabet_.process_name(proc_id(p)));
    for (const auto& pr : acc[p].priorities) {
      if (pr.size() != n) throw InputError("priority map is not total for " + alphabet_.process_name(proc_id(p)));
      for (int v : pr)
        if (v < 0) throw InputError("negative priority for " + alphabet_.process_name(proc_id(p)));
    }
  }
  clear_acceptance();
  kind_ = AcceptanceKind::Local;
  local_ = std::move(acc);
}

bool AsyncAutomaton::accepting(const GlobalState& g) const {
  switch (kind_) {
    case AcceptanceKind::None:
      return true;
    case AcceptanceKind::Global:
      return predicate_ ? predicate_(g) : global_.count(g) > 0;
    case AcceptanceKind::Local:
      for (std::size_t p = 0; p < g.size(); ++p)
        if (!local_[p].final[g[p]]) return false;
      return true;
  }
  return false;
}

std::vector<LetterId> AsyncAutomaton::enabled_local(ProcId p, LocalState s) const {
  std::vector<LetterId> out;
  for (LetterId a : local_letters(alphabet_, p))
    if (delta(a, Tuple{s})) out.push_back(a);
  return out;
}

std::vector<GlobalState> reachable_states(const AutomatonView& aa, std::size_t limit) {
  std::set<GlobalState> seen;
  std::vector<GlobalState> order;
  std::deque<GlobalState> queue;
  GlobalState init = aa.initial_state();
  seen.insert(init);
  order.push_back(init);
  queue.push_back(init);
  const std::size_t k = aa.alphabet().num_letters();
  while (!queue.empty()) {
    GlobalState g = std::move(queue.front());
    queue.pop_front();
    for (std::size_t a = 0; a < k; ++a) {
      auto next = aa.step(g, letter_id(a));
      if (!next || !seen.insert(*next).second) continue;
      if (seen.size() > limit) throw UnsupportedInstance("reachable global state space exceeds limit");
      order.push_back(*next);
      queue.push_back(std::move(*next));
    }
  }
  return order;
}

}  // namespace arbor
