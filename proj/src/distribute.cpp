#include "arbor/distribute.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "arbor/error.hpp"

namespace arbor {

LetterSet down_letters(const Architecture& arch, ProcId p) {
  const Alphabet& al = arch.alphabet();
  al.require(p);
  ProcSet sub = arch.tree().subtree(p);
  LetterSet out(al.num_letters());
  for (std::size_t i = 0; i < al.num_letters(); ++i)
    if (al.domain(letter_id(i)).subset_of(sub)) out.insert(letter_id(i));
  return out;
}

LetterTree letter_tree(const Architecture& arch, LetterId a) {
  const Alphabet& al = arch.alphabet();
  const ProcessTree& t = arch.tree();
  al.require(a);
  LetterTree lt;
  lt.nodes = al.domain(a);
  auto members = lt.nodes.members();
  lt.root = *std::min_element(members.begin(), members.end(),
                              [&](ProcId x, ProcId y) { return t.depth(x) < t.depth(y); });
  for (ProcId p : members) {
    if (p == lt.root) continue;
    auto par = t.parent(p);
    if (!par || !lt.nodes.contains(*par))
      throw IntegrityError("domain of '" + al.letter_name(a) + "' is not connected in the tree");
    lt.edges.emplace_back(*par, p);
  }
  return lt;
}

StateId tdiam(const Dfa& dfa, const LabeledNode& tree, DiamCache* cache) {
  StateId acc = tree.t;
  for (const LabeledNode& child : tree.children) {
    StateId sub = tdiam(dfa, child, cache);
    try {
      acc = diam(dfa, child.s, acc, sub, child.cdown, cache);
    } catch (const DiamError& e) {
      throw DiamError(e.kind(), "at node " + std::to_string(idx(child.proc)) + ": " + e.what());
    }
  }
  return acc;
}

// ---------------------------------------------------------------------------

Distribution::Distribution(Dfa dfa, Architecture arch) : dfa_(std::move(dfa)), arch_(std::move(arch)) {
  if (!(dfa_.alphabet() == arch_.alphabet())) throw InputError("DFA and architecture use different alphabets");
  arch_.require_tree_like();
  if (auto v = diamond_violation(dfa_)) {
    const Alphabet& al = dfa_.alphabet();
    throw InputError("DFA is not I-diamond: state " + dfa_.state_name(v->state) + ", letters " +
                     al.letter_name(v->a) + "," + al.letter_name(v->b));
  }
  n_ = dfa_.num_states();
  const std::size_t np = arch_.alphabet().num_processes();
  if (n_ * n_ > std::numeric_limits<LocalState>::max()) throw UnsupportedInstance("DFA too large to distribute");
  for (std::size_t p = 0; p < np; ++p) cdown_.push_back(down_letters(arch_, proc_id(p)));
  for (std::size_t a = 0; a < arch_.alphabet().num_letters(); ++a) trees_.push_back(letter_tree(arch_, letter_id(a)));
  delta_cache_.resize(arch_.alphabet().num_letters());
}

GlobalState Distribution::initial_state() const {
  return GlobalState(arch_.alphabet().num_processes(), encode({dfa_.initial(), dfa_.initial()}));
}

LabeledNode Distribution::label(const GlobalState& g, ProcId root, ProcSet nodes) const {
  LabeledNode node;
  node.proc = root;
  PairState ps = decode(g[idx(root)]);
  node.s = ps.s;
  node.t = ps.t;
  node.cdown = cdown_[idx(root)];
  for (ProcId c : arch_.tree().children(root))
    if (nodes.contains(c)) node.children.push_back(label(g, c, nodes));
  return node;
}

std::optional<Tuple> Distribution::delta(LetterId a, const Tuple& from) const {
  {
    std::lock_guard lock(mu_);
    auto& m = delta_cache_.at(idx(a));
    if (auto it = m.find(from); it != m.end()) return it->second;
  }
  const LetterTree& lt = trees_[idx(a)];
  const auto members = lt.nodes.members();
  GlobalState g(arch_.alphabet().num_processes(), 0);
  write_back(g, lt.nodes, from);
  StateId sa = tdiam(dfa_, label(g, lt.root, lt.nodes), &diam_cache_);
  StateId s2 = dfa_.delta(sa, a);
  std::optional<Tuple> result;
  if (s2 != kNoState) {
    Tuple to(members.size());
    for (std::size_t i = 0; i < members.size(); ++i) {
      StateId keep = members[i] == lt.root ? decode(from[i]).s : s2;
      to[i] = encode({keep, s2});
    }
    result = std::move(to);
  }
  std::lock_guard lock(mu_);
  delta_cache_[idx(a)].emplace(from, result);
  return result;
}

std::optional<GlobalState> Distribution::step(const GlobalState& g, LetterId a) const {
  ProcSet dom = arch_.alphabet().domain(a);
  auto to = delta(a, project(g, dom));
  if (!to) return std::nullopt;
  GlobalState next = g;
  write_back(next, dom, *to);
  return next;
}

StateId Distribution::global_dfa_state(const GlobalState& g) const {
  return tdiam(dfa_, label(g, arch_.tree().root(), arch_.alphabet().all_processes()), &diam_cache_);
}

bool Distribution::accepting(const GlobalState& g) const { return dfa_.accepting(global_dfa_state(g)); }

AsyncAutomaton Distribution::materialize(std::size_t limit) const {
  const Alphabet& al = arch_.alphabet();
  const std::size_t np = al.num_processes();
  auto reach = reachable_states(*this, limit);
  AsyncAutomaton out(al, arch_.tree());
  std::vector<std::map<LocalState, LocalState>> ids(np);
  auto local = [&](std::size_t p, LocalState l) {
    auto [it, fresh] = ids[p].emplace(l, 0);
    if (fresh) {
      PairState ps = decode(l);
      it->second = out.add_state(proc_id(p), "(" + dfa_.state_name(ps.s) + "," + dfa_.state_name(ps.t) + ")");
    }
    return it->second;
  };
  for (std::size_t p = 0; p < np; ++p) out.set_initial(proc_id(p), local(p, initial_state()[p]));
  auto map_global = [&](const GlobalState& g) {
    GlobalState m(np);
    for (std::size_t p = 0; p < np; ++p) m[p] = local(p, g[p]);
    return m;
  };
  std::set<GlobalState> acc;
  for (const GlobalState& g : reach) {
    GlobalState mg = map_global(g);
    if (accepting(g)) acc.insert(mg);
    for (std::size_t a = 0; a < al.num_letters(); ++a) {
      ProcSet dom = al.domain(letter_id(a));
      auto next = step(g, letter_id(a));
      if (!next) continue;
      out.add_transition(letter_id(a), project(mg, dom), project(map_global(*next), dom));
    }
  }
  out.set_global_acceptance(std::move(acc));
  return out;
}

std::vector<std::size_t> Distribution::reachable_local_counts(std::size_t limit) const {
  const std::size_t np = arch_.alphabet().num_processes();
  std::vector<std::set<LocalState>> seen(np);
  for (const GlobalState& g : reachable_states(*this, limit))
    for (std::size_t p = 0; p < np; ++p) seen[p].insert(g[p]);
  std::vector<std::size_t> out;
  for (const auto& s : seen) out.push_back(s.size());
  return out;
}

// ---------------------------------------------------------------------------

Dfa restrict_dfa(const Dfa& dfa, const Alphabet& sub) {
  Dfa out(sub, dfa.state_names());
  out.set_initial(dfa.initial());
  for (StateId s = 0; s < dfa.num_states(); ++s) {
    out.set_accepting(s, dfa.accepting(s));
    for (std::size_t i = 0; i < sub.num_letters(); ++i) {
      LetterId orig = dfa.alphabet().letter(sub.letter_name(letter_id(i)));
      StateId t = dfa.delta(s, orig);
      if (t != kNoState) out.set_transition(s, letter_id(i), t);
    }
  }
  return out;
}

ComposedDistribution::ComposedDistribution(std::vector<std::shared_ptr<const Distribution>> parts, Dfa dfa)
    : parts_(std::move(parts)), dfa_(std::move(dfa)) {
  if (parts_.empty()) throw InputError("parallel composition of zero parts");
  const Alphabet& big = dfa_.alphabet();
  letter_map_.assign(big.num_letters(), {parts_.size(), LetterId{}});
  std::vector<std::string> procs;
  std::set<std::string> names;
  bool clash = false;
  for (const auto& part : parts_)
    for (const auto& p : part->alphabet().process_names()) clash |= !names.insert(p).second;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    offset_.push_back(procs.size());
    for (const auto& p : parts_[i]->alphabet().process_names())
      procs.push_back(clash ? std::to_string(i) + "." + p : p);
    const Alphabet& pa = parts_[i]->alphabet();
    for (std::size_t a = 0; a < pa.num_letters(); ++a) {
      LetterId b = big.letter(pa.letter_name(letter_id(a)));
      if (letter_map_[idx(b)].first != parts_.size())
        throw InputError("letter '" + big.letter_name(b) + "' occurs in two components");
      letter_map_[idx(b)] = {i, letter_id(a)};
    }
  }
  std::vector<LetterSpec> specs;
  part_letters_.assign(parts_.size(), LetterSet(big.num_letters()));
  for (std::size_t b = 0; b < big.num_letters(); ++b) {
    auto [i, a] = letter_map_[b];
    if (i == parts_.size()) throw InputError("letter '" + big.letter_name(letter_id(b)) + "' is in no component");
    part_letters_[i].insert(letter_id(b));
    LetterSpec s = parts_[i]->alphabet().spec(a);
    for (auto& p : s.domain) p = clash ? std::to_string(i) + "." + p : p;
    specs.push_back(std::move(s));
  }
  alphabet_ = Alphabet(procs, specs);
  for (std::size_t i = 0; i < parts_.size(); ++i)
    for (std::size_t j = i + 1; j < parts_.size(); ++j)
      for (LetterId a : part_letters_[i].members())
        for (LetterId b : part_letters_[j].members())
          if (!independent(big, a, b)) throw InputError("components are not independent");
}

GlobalState ComposedDistribution::initial_state() const {
  GlobalState g;
  for (const auto& part : parts_) {
    GlobalState pg = part->initial_state();
    g.insert(g.end(), pg.begin(), pg.end());
  }
  return g;
}

std::optional<GlobalState> ComposedDistribution::step(const GlobalState& g, LetterId a) const {
  auto [i, pa] = letter_map_.at(idx(a));
  const auto& part = parts_[i];
  const std::size_t np = part->alphabet().num_processes();
  GlobalState sub(g.begin() + static_cast<std::ptrdiff_t>(offset_[i]),
                  g.begin() + static_cast<std::ptrdiff_t>(offset_[i] + np));
  auto next = part->step(sub, pa);
  if (!next) return std::nullopt;
  GlobalState out = g;
  std::copy(next->begin(), next->end(), out.begin() + static_cast<std::ptrdiff_t>(offset_[i]));
  return out;
}

bool ComposedDistribution::accepting(const GlobalState& g) const {
  const StateId s0 = dfa_.initial();
  StateId acc = s0;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    const std::size_t np = parts_[i]->alphabet().num_processes();
    GlobalState sub(g.begin() + static_cast<std::ptrdiff_t>(offset_[i]),
                    g.begin() + static_cast<std::ptrdiff_t>(offset_[i] + np));
    StateId si = parts_[i]->global_dfa_state(sub);
    acc = diam(dfa_, s0, acc, si, part_letters_[i], &cache_);
  }
  return dfa_.accepting(acc);
}

std::shared_ptr<const AutomatonView> parallel_compose(std::vector<std::shared_ptr<const Distribution>> parts,
                                                      const Dfa& dfa) {
  if (parts.size() == 1) return parts.front();
  return std::make_shared<ComposedDistribution>(std::move(parts), dfa);
}

}  // namespace arbor

namespace arbor {

EquivReport bounded_equivalence(const Dfa& dfa, const AutomatonView& aa, std::size_t max_len) {
  if (!(dfa.alphabet() == aa.alphabet())) throw InputError("DFA and automaton alphabets differ");
  const std::size_t m = dfa.alphabet().num_letters();
  EquivReport r;
  struct Item {
    Word w;
    StateId s;
    std::optional<GlobalState> g;
  };
  // Breadth-first so the first witness is a shortest one.
  std::vector<Item> level{{{}, dfa.initial(), aa.initial_state()}};
  for (std::size_t len = 0; !level.empty(); ++len) {
    for (const Item& it : level) {
      ++r.words_checked;
      bool a = it.s != kNoState && dfa.accepting(it.s);
      bool b = it.g && aa.accepting(*it.g);
      if (a != b) {
        r.equal = false;
        r.witness = it.w;
        return r;
      }
    }
    if (len == max_len) break;
    std::vector<Item> next;
    for (const Item& it : level)
      for (std::size_t i = 0; i < m; ++i) {
        LetterId x = letter_id(i);
        StateId s = it.s == kNoState ? kNoState : dfa.delta(it.s, x);
        std::optional<GlobalState> g = it.g ? aa.step(*it.g, x) : std::nullopt;
        if (s == kNoState && !g) continue;  // both reject every extension
        Word w = it.w;
        w.push_back(x);
        next.push_back({std::move(w), s, std::move(g)});
      }
    level = std::move(next);
  }
  return r;
}

}  // namespace arbor
