#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <tuple>

#include "arbor/control.hpp"
#include "control_util.hpp"

namespace arbor {

StrategyStore::StrategyStore(const AsyncAutomaton& plant, ProcId l, std::size_t cap) : cap_(cap) {
  if (!lshort_bound(plant, l).short_ok())
    throw InputError(plant.alphabet().process_name(l) + " has a local cycle (not short)");
  const Alphabet& al = plant.alphabet();
  local_.resize(plant.num_states(l));
  for (LetterId a : local_letters(al, l))
    for (const auto& [from, to] : plant.transitions(a)) local_[from[0]].push_back({a, al.controllable(a), to[0]});
  for (auto& moves : local_)
    std::sort(moves.begin(), moves.end(), [](const LocalMove& x, const LocalMove& y) { return x.letter < y.letter; });
  final_ = plant.local_acceptance(l).final;
  letter_names_ = al.letter_names();
}

StrategyStore::Node StrategyStore::intern(NodeData d) {
  std::string key = std::to_string(d.state) + "|" + (d.choice ? std::to_string(idx(*d.choice)) : "-");
  for (auto [a, n] : d.moves) key += "|" + std::to_string(idx(a)) + ":" + std::to_string(n);
  auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  if (nodes_.size() >= cap_)
    throw UnsupportedInstance("more than " + std::to_string(cap_) + " local strategy nodes");
  Node id = static_cast<Node>(nodes_.size());
  nodes_.push_back(std::move(d));
  index_.emplace(std::move(key), id);
  return id;
}

const std::vector<StrategyStore::Node>& StrategyStore::strategies(LocalState s) {
  if (auto it = by_state_.find(s); it != by_state_.end()) return it->second;
  std::vector<std::optional<LetterId>> choices{std::nullopt};
  for (const LocalMove& m : local_.at(s))
    if (m.controllable) choices.push_back(m.letter);
  std::vector<Node> result;
  for (const auto& choice : choices) {
    std::vector<const LocalMove*> moves;
    for (const LocalMove& m : local_[s])
      if (!m.controllable || m.letter == choice) moves.push_back(&m);
    std::vector<std::vector<Node>> options;
    for (const LocalMove* m : moves) options.push_back(strategies(m->target));
    std::vector<std::size_t> pick(moves.size(), 0);
    bool empty = std::any_of(options.begin(), options.end(), [](const auto& o) { return o.empty(); });
    while (!empty) {
      NodeData d{s, choice, {}, true};
      for (std::size_t i = 0; i < moves.size(); ++i) {
        Node child = options[i][pick[i]];
        d.moves.emplace_back(moves[i]->letter, child);
        d.eventually_final = d.eventually_final && nodes_[child].eventually_final;
      }
      if (moves.empty()) d.eventually_final = final_[s];
      result.push_back(intern(std::move(d)));
      std::size_t i = 0;
      while (i < pick.size() && ++pick[i] == options[i].size()) pick[i++] = 0;
      if (i == pick.size()) break;
    }
  }
  return by_state_[s] = std::move(result);
}

std::optional<StrategyStore::Node> StrategyStore::residual(Node n, LetterId b) const {
  for (auto [a, child] : nodes_.at(n).moves)
    if (a == b) return child;
  return std::nullopt;
}

std::string StrategyStore::serialize(Node n) const {
  if (text_.size() < nodes_.size()) text_.resize(nodes_.size());
  if (!text_[n].empty()) return text_[n];
  const NodeData& d = nodes_.at(n);
  std::string s = std::to_string(d.state);
  if (d.choice) s += "!" + letter_names_[idx(*d.choice)];
  s += "{";
  for (std::size_t i = 0; i < d.moves.size(); ++i)
    s += (i ? "," : "") + letter_names_[idx(d.moves[i].first)] + ":" + serialize(d.moves[i].second);
  s += "}";
  return text_[n] = s;
}

std::vector<StrategyStore::Node> enumerate_local_strategies(StrategyStore& store, LocalState s) {
  return store.strategies(s);
}

bool f_eventually_F(const StrategyStore& store, StrategyStore::Node f) { return store.eventually_final(f); }

// ---------------------------------------------------------------------------

namespace {

using Key = std::tuple<int, LocalState, LocalState, StrategyStore::Node, long, bool>;

Key key_of(const PrimeState& x) {
  long act = x.action ? static_cast<long>(idx(*x.action)) : -1;
  return {static_cast<int>(x.type), x.sp, x.sl, x.f, act, x.fresh};
}

struct PendingTransition {
  std::size_t letter;
  Tuple from, to;
};

}  // namespace

Elimination remove_leaf(const AsyncAutomaton& plant, ProcId l) {
  detail::require_plant(plant);
  const Alphabet& al = plant.alphabet();
  const ProcessTree& tree = *plant.tree();
  if (!tree.is_leaf(l) || !tree.parent(l)) throw InputError(al.process_name(l) + " is not a non-root leaf");
  const ProcId p = *tree.parent(l);
  const std::size_t np = al.num_processes();

  Elimination el;
  el.parent_old = p;
  el.leaf_old = l;
  el.store = std::make_shared<StrategyStore>(plant, l);
  StrategyStore& store = *el.store;

  std::vector<std::optional<ProcId>> new_of_old(np);
  std::vector<std::string> procs;
  for (std::size_t q = 0; q < np; ++q) {
    if (proc_id(q) == l) continue;
    new_of_old[q] = proc_id(el.old_of_new.size());
    el.old_of_new.push_back(proc_id(q));
    procs.push_back(al.process_name(proc_id(q)));
  }
  el.parent_new = *new_of_old[idx(p)];

  // Letters: old ones first (same order), then ch(a), ch(-), then ch(f).
  std::vector<LetterSpec> specs;
  std::vector<LetterId> p_local_ctrl;
  const std::string pname = al.process_name(p);
  for (std::size_t i = 0; i < al.num_letters(); ++i) {
    LetterId a = letter_id(i);
    LetterSpec s = al.spec(a);
    ProcSet dom = al.domain(a);
    if (dom == ProcSet::single(l)) {
      s.domain = {pname};
      s.controllable = false;
    } else if (dom.contains(l)) {
      if (!dom.contains(p)) throw InputError("letter " + s.id + " involves the leaf but not its parent");
      s.domain.erase(std::find(s.domain.begin(), s.domain.end(), al.process_name(l)));
      s.controllable = false;
    } else if (dom == ProcSet::single(p)) {
      if (s.controllable) p_local_ctrl.push_back(a);
      s.controllable = false;
    }
    el.new_letter.push_back(letter_id(specs.size()));
    el.old_letter.push_back(a);
    specs.push_back(std::move(s));
  }
  std::vector<std::string> taken = al.letter_names();
  auto fresh_name = [&](std::string n) {
    while (std::find(taken.begin(), taken.end(), n) != taken.end()) n += "'";
    taken.push_back(n);
    return n;
  };
  auto add_choice_letter = [&](const std::string& name) {
    specs.push_back(LetterSpec{fresh_name(name), {pname}, true});
    el.old_letter.push_back(std::nullopt);
    return specs.size() - 1;
  };
  std::map<LetterId, std::size_t> ch_action;
  for (LetterId a : p_local_ctrl) ch_action[a] = add_choice_letter("ch(" + al.letter_name(a) + ")");
  const std::size_t ch_idle = add_choice_letter("ch(-)");
  std::map<StrategyStore::Node, std::size_t> ch_strategy;

  std::vector<LetterId> p_local, l_local, joint_p, joint_pl;
  for (std::size_t i = 0; i < al.num_letters(); ++i) {
    LetterId a = letter_id(i);
    ProcSet dom = al.domain(a);
    if (dom == ProcSet::single(p)) p_local.push_back(a);
    else if (dom == ProcSet::single(l)) l_local.push_back(a);
    else if (dom.contains(l)) joint_pl.push_back(a);
    else if (dom.contains(p)) joint_p.push_back(a);
  }
  std::map<LetterId, decltype(detail::by_coordinate(plant, LetterId{}, p))> at_p;
  for (LetterId a : joint_p) at_p[a] = detail::by_coordinate(plant, a, p);
  for (LetterId a : joint_pl) at_p[a] = detail::by_coordinate(plant, a, p);

  std::map<Key, LocalState> index;
  std::deque<LocalState> queue;
  std::vector<PendingTransition> pending;
  auto intern = [&](PrimeState x) {
    Key k = key_of(x);
    auto it = index.find(k);
    if (it != index.end()) return it->second;
    LocalState id = static_cast<LocalState>(el.info.size());
    index.emplace(k, id);
    el.info.push_back(x);
    queue.push_back(id);
    return id;
  };
  using T = PrimeState::Type;
  intern({T::Choose, plant.initial(p), plant.initial(l), 0, std::nullopt, false});

  while (!queue.empty()) {
    LocalState xi = queue.front();
    queue.pop_front();
    const PrimeState x = el.info[xi];
    if (x.type == T::Choose) {
      for (StrategyStore::Node f : store.strategies(x.sl)) {
        auto [it, fresh] = ch_strategy.emplace(f, 0);
        if (fresh) it->second = add_choice_letter("ch(" + store.serialize(f) + ")");
        LocalState y = intern({T::Commit, x.sp, x.sl, f, std::nullopt, false});
        pending.push_back({it->second, {xi}, {y}});
      }
      continue;
    }
    if (x.type == T::Commit) {
      for (LetterId a : p_local_ctrl) {
        if (!plant.delta(a, Tuple{x.sp})) continue;
        LocalState y = intern({T::True, x.sp, x.sl, x.f, a, false});
        pending.push_back({ch_action[a], {xi}, {y}});
      }
      LocalState y = intern({T::True, x.sp, x.sl, x.f, std::nullopt, false});
      pending.push_back({ch_idle, {xi}, {y}});
      continue;
    }
    for (LetterId b : p_local) {
      const Tuple* to = plant.delta(b, Tuple{x.sp});
      if (!to || (al.controllable(b) && x.action != b)) continue;
      LocalState y = intern({T::Commit, (*to)[0], x.sl, x.f, std::nullopt, false});
      pending.push_back({idx(*el.new_letter[idx(b)]), {xi}, {y}});
    }
    for (LetterId b : l_local) {
      auto child = store.residual(x.f, b);
      if (!child) continue;
      LocalState y = intern({T::True, x.sp, store.state(*child), *child, x.action, true});
      pending.push_back({idx(*el.new_letter[idx(b)]), {xi}, {y}});
    }
    for (LetterId b : joint_p) {
      auto it = at_p[b].find(x.sp);
      if (it == at_p[b].end()) continue;
      std::size_t pos = detail::position_in(al.domain(b), p);
      for (const auto* tr : it->second) {
        Tuple from = tr->first, to = tr->second;
        from[pos] = xi;
        to[pos] = intern({T::Commit, tr->second[pos], x.sl, x.f, std::nullopt, false});
        pending.push_back({idx(*el.new_letter[idx(b)]), std::move(from), std::move(to)});
      }
    }
    for (LetterId b : joint_pl) {
      auto it = at_p[b].find(x.sp);
      if (it == at_p[b].end()) continue;
      ProcSet dom = al.domain(b);
      std::size_t pos = detail::position_in(dom, p), lpos = detail::position_in(dom, l);
      for (const auto* tr : it->second) {
        if (tr->first[lpos] != x.sl) continue;
        Tuple from = tr->first, to = tr->second;
        from[pos] = xi;
        to[pos] = intern({T::Choose, tr->second[pos], tr->second[lpos], 0, std::nullopt, false});
        from.erase(from.begin() + static_cast<std::ptrdiff_t>(lpos));
        to.erase(to.begin() + static_cast<std::ptrdiff_t>(lpos));
        pending.push_back({idx(*el.new_letter[idx(b)]), std::move(from), std::move(to)});
      }
    }
  }

  // Build the reduced plant.
  std::vector<std::optional<ProcId>> parent(np - 1);
  for (std::size_t q = 0; q + 1 < np; ++q) {
    auto par = tree.parent(el.old_of_new[q]);
    if (par) parent[q] = new_of_old[idx(*par)];
  }
  ProcessTree new_tree(*new_of_old[idx(tree.root())], parent);
  el.plant = AsyncAutomaton(Alphabet(procs, specs), new_tree);
  AsyncAutomaton& out = el.plant;
  const ProcId pn = el.parent_new;
  for (std::size_t q = 0; q + 1 < np; ++q) {
    ProcId old = el.old_of_new[q];
    if (old == p) continue;
    for (std::size_t s = 0; s < plant.num_states(old); ++s)
      out.add_state(proc_id(q), plant.state_name(old, static_cast<LocalState>(s)));
    out.set_initial(proc_id(q), plant.initial(old));
  }
  for (const PrimeState& x : el.info) {
    std::string body = plant.state_name(p, x.sp);
    if (x.type == T::True) body += "," + (x.action ? al.letter_name(*x.action) : std::string("-"));
    body += "," + plant.state_name(l, x.sl);
    if (x.type != T::Choose) body += ",f" + std::to_string(x.f);
    const char* open = x.type == T::Choose ? "<" : x.type == T::Commit ? "{" : "(";
    const char* close = x.type == T::Choose ? ">" : x.type == T::Commit ? "}" : ")";
    out.add_state(pn, open + body + close + (x.fresh ? "*" : ""));
  }
  out.set_initial(pn, 0);

  for (std::size_t i = 0; i < al.num_letters(); ++i) {
    LetterId a = letter_id(i);
    if (al.domain(a).contains(p) || al.domain(a).contains(l)) continue;
    for (const auto& [from, to] : plant.transitions(a)) out.add_transition(*el.new_letter[i], from, to);
  }
  for (auto& t : pending) out.add_transition(letter_id(t.letter), std::move(t.from), std::move(t.to));

  std::vector<LocalAcceptance> accs;
  for (std::size_t q = 0; q + 1 < np; ++q)
    if (el.old_of_new[q] != p) accs.push_back(plant.local_acceptance(el.old_of_new[q]));
    else accs.emplace_back();
  const LocalAcceptance& ap = plant.local_acceptance(p);
  const LocalAcceptance& alf = plant.local_acceptance(l);
  LocalAcceptance& an = accs[idx(pn)];
  an.priorities.assign(ap.priorities.size() + alf.priorities.size(), {});
  for (const PrimeState& x : el.info) {
    bool evf = x.type != T::Choose && store.eventually_final(x.f);
    an.final.push_back(x.type == T::True && ap.final[x.sp] && evf);
    for (std::size_t k = 0; k < ap.priorities.size(); ++k) an.priorities[k].push_back(ap.priorities[k][x.sp]);
    bool first_visit = x.type == T::Choose || (x.type == T::True && x.fresh);
    for (std::size_t k = 0; k < alf.priorities.size(); ++k)
      an.priorities[ap.priorities.size() + k].push_back(first_visit ? alf.priorities[k][x.sl] + 2 : (evf ? 0 : 1));
  }
  out.set_local_acceptance(std::move(accs));
  return el;
}

Controller reconstruct_controller(const Elimination& el, const AsyncAutomaton& plant, const Controller& c) {
  using T = PrimeState::Type;
  const Alphabet& al = plant.alphabet();
  const Alphabet& nal = el.plant.alphabet();
  const AsyncAutomaton& ca = c.automaton;
  const ProcId p = el.parent_old, l = el.leaf_old, pn = el.parent_new;
  const std::size_t np = al.num_processes();

  std::vector<LetterId> ctrl;
  for (LetterId a : local_letters(nal, pn))
    if (nal.controllable(a)) ctrl.push_back(a);
  auto prime = [&](LocalState cs) -> const PrimeState& { return el.info.at(c.project(pn, cs)); };
  auto local_step = [&](LocalState cs, LetterId a) -> std::optional<LocalState> {
    const Tuple* to = ca.delta(a, Tuple{cs});
    if (!to) return std::nullopt;
    return (*to)[0];
  };
  // Follow the least enabled choice letters until a True state.
  auto ts = [&](LocalState cs) -> std::optional<LocalState> {
    for (int guard = 0; guard < 3 && prime(cs).type != T::True; ++guard) {
      std::optional<LocalState> next;
      for (LetterId a : ctrl)
        if ((next = local_step(cs, a))) break;
      if (!next) return std::nullopt;
      cs = *next;
    }
    if (prime(cs).type != T::True) return std::nullopt;
    return cs;
  };
  auto run = [&](LocalState cs, const Word& w) -> std::optional<LocalState> {
    for (LetterId b : w) {
      auto next = local_step(cs, *el.new_letter[idx(b)]);
      if (!next) return std::nullopt;
      cs = *next;
    }
    return cs;
  };

  Controller out{AsyncAutomaton(al, plant.tree()), {}};
  out.projection.resize(np);
  std::vector<std::optional<ProcId>> new_of_old(np);
  for (std::size_t q = 0; q < el.old_of_new.size(); ++q) new_of_old[idx(el.old_of_new[q])] = proc_id(q);
  for (std::size_t q = 0; q < np; ++q) {
    ProcId old = proc_id(q);
    if (old == p || old == l) continue;
    ProcId nq = *new_of_old[q];
    for (std::size_t s = 0; s < ca.num_states(nq); ++s) {
      out.automaton.add_state(old, ca.state_name(nq, static_cast<LocalState>(s)));
      out.projection[q].push_back(c.project(nq, static_cast<LocalState>(s)));
    }
    out.automaton.set_initial(old, ca.initial(nq));
  }

  std::vector<LocalState> p_of;  // out p-state -> reduced controller state
  std::vector<std::pair<LocalState, Word>> l_of;
  std::map<LocalState, LocalState> p_index;
  std::map<std::pair<LocalState, Word>, LocalState> l_index;
  auto p_state = [&](LocalState cs) {
    auto [it, fresh] = p_index.emplace(cs, 0);
    if (fresh) {
      it->second = out.automaton.add_state(p, ca.state_name(pn, cs));
      out.projection[idx(p)].push_back(prime(cs).sp);
      p_of.push_back(cs);
    }
    return it->second;
  };
  auto l_state = [&](LocalState sync, const Word& w) {
    auto [it, fresh] = l_index.emplace(std::make_pair(sync, w), 0);
    if (fresh) {
      std::string name = ca.state_name(pn, sync) + "|" + al.format_word(w);
      it->second = out.automaton.add_state(l, name);
      auto cw = run(sync, w);
      if (!cw) throw IntegrityError("leaf memory word is not executable");
      out.projection[idx(l)].push_back(prime(*cw).sl);
      l_of.emplace_back(sync, w);
    }
    return it->second;
  };

  auto init_ts = ts(ca.initial(pn));
  if (!init_ts) throw IntegrityError("reduced controller blocks at its initial choice");
  GlobalState init(np);
  for (std::size_t q = 0; q < np; ++q)
    if (proc_id(q) != p && proc_id(q) != l) init[q] = ca.initial(*new_of_old[q]);
  init[idx(p)] = p_state(*init_ts);
  init[idx(l)] = l_state(*init_ts, {});
  out.automaton.set_initial(p, init[idx(p)]);
  out.automaton.set_initial(l, init[idx(l)]);

  std::set<GlobalState> seen{init};
  std::deque<GlobalState> queue{init};
  auto to_new = [&](const GlobalState& g) {
    GlobalState h(np - 1);
    for (std::size_t q = 0; q < np; ++q) {
      if (proc_id(q) == l) continue;
      h[idx(*new_of_old[q])] = proc_id(q) == p ? p_of[g[q]] : g[q];
    }
    return h;
  };
  while (!queue.empty()) {
    GlobalState g = queue.front();
    queue.pop_front();
    GlobalState h = to_new(g);
    for (std::size_t i = 0; i < al.num_letters(); ++i) {
      LetterId a = letter_id(i);
      LetterId na = *el.new_letter[i];
      ProcSet dom = al.domain(a);
      std::optional<GlobalState> next;
      if (!dom.contains(p) && !dom.contains(l)) {
        auto hn = ca.step(h, na);
        if (!hn) continue;
        next = g;
        for (ProcId q : dom.members()) (*next)[idx(q)] = (*hn)[idx(*new_of_old[idx(q)])];
      } else if (dom == ProcSet::single(l)) {
        auto [sync, w] = l_of[g[idx(l)]];
        Word w2 = w;
        w2.push_back(a);
        if (!run(sync, w2)) continue;
        next = g;
        (*next)[idx(l)] = l_state(sync, w2);
      } else if (!dom.contains(l)) {
        auto hn = ca.step(h, na);
        if (!hn) continue;
        auto t = ts((*hn)[idx(pn)]);
        if (!t) continue;
        next = g;
        for (ProcId q : dom.members())
          if (q != p) (*next)[idx(q)] = (*hn)[idx(*new_of_old[idx(q)])];
        (*next)[idx(p)] = p_state(*t);
      } else {
        auto [sync, w] = l_of[g[idx(l)]];
        auto c3 = run(p_of[g[idx(p)]], w);
        if (!c3) continue;
        GlobalState h3 = h;
        h3[idx(pn)] = *c3;
        auto hn = ca.step(h3, na);
        if (!hn) continue;
        auto t = ts((*hn)[idx(pn)]);
        if (!t) continue;
        next = g;
        for (ProcId q : dom.members())
          if (q != p && q != l) (*next)[idx(q)] = (*hn)[idx(*new_of_old[idx(q)])];
        (*next)[idx(p)] = p_state(*t);
        (*next)[idx(l)] = l_state(*t, {});
      }
      Tuple from = project(g, dom), to = project(*next, dom);
      const Tuple* have = out.automaton.delta(a, from);
      if (!have) out.automaton.add_transition(a, from, to);
      else if (*have != to) throw IntegrityError("reconstructed controller is not deterministic");
      if (seen.insert(*next).second) queue.push_back(*next);
    }
  }
  return out;
}

}  // namespace arbor
