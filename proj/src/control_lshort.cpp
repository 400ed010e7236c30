#include <algorithm>
#include <deque>
#include <map>

#include "arbor/control.hpp"
#include "control_util.hpp"

namespace arbor {

namespace {

void require_leaf(const AsyncAutomaton& plant, ProcId l) {
  detail::require_plant(plant);
  plant.alphabet().require(l);
  const ProcessTree& t = *plant.tree();
  if (!t.is_leaf(l)) throw InputError(plant.alphabet().process_name(l) + " is not a leaf");
}

}  // namespace

LshortResult lshort_bound(const AsyncAutomaton& plant, ProcId l) {
  require_leaf(plant, l);
  const std::size_t n = plant.num_states(l);
  std::vector<LetterId> local = local_letters(plant.alphabet(), l);
  std::vector<std::vector<LocalState>> succ(n);
  for (LetterId a : local)
    for (const auto& [from, to] : plant.transitions(a)) succ[from[0]].push_back(to[0]);

  // 0 new, 1 on stack, 2 done
  std::vector<char> color(n, 0);
  std::vector<std::size_t> longest(n, 0);
  LshortResult r;
  for (LocalState root = 0; root < n; ++root) {
    if (color[root]) continue;
    std::vector<std::pair<LocalState, std::size_t>> stack{{root, 0}};
    color[root] = 1;
    while (!stack.empty()) {
      auto& [v, i] = stack.back();
      if (i < succ[v].size()) {
        LocalState w = succ[v][i++];
        if (color[w] == 1) {
          auto it = std::find_if(stack.begin(), stack.end(), [&](const auto& f) { return f.first == w; });
          for (; it != stack.end(); ++it) r.cycle.push_back(it->first);
          return r;
        }
        if (color[w] == 0) {
          color[w] = 1;
          stack.push_back({w, 0});
        }
        continue;
      }
      for (LocalState w : succ[v]) longest[v] = std::max(longest[v], longest[w] + 1);
      color[v] = 2;
      stack.pop_back();
    }
  }
  r.bound = n ? *std::max_element(longest.begin(), longest.end()) : 0;
  return r;
}

LshortInfo make_lshort(const AsyncAutomaton& plant, ProcId l) {
  require_leaf(plant, l);
  const Alphabet& al = plant.alphabet();
  const std::size_t np = al.num_processes();
  const LocalAcceptance& acc = plant.local_acceptance(l);
  const std::size_t nconds = acc.priorities.size();

  LshortInfo info{AsyncAutomaton(al, plant.tree()), l, {}, {}};
  AsyncAutomaton& out = info.plant;
  for (std::size_t p = 0; p < np; ++p) {
    if (proc_id(p) == l) continue;
    for (std::size_t s = 0; s < plant.num_states(proc_id(p)); ++s) out.add_state(proc_id(p), plant.state_name(proc_id(p), static_cast<LocalState>(s)));
    out.set_initial(proc_id(p), plant.initial(proc_id(p)));
  }

  std::map<std::vector<LocalState>, LocalState> index;
  constexpr LocalState kNone = static_cast<LocalState>(-1);
  std::vector<LocalState> special(2, kNone);  // top, bottom
  std::deque<LocalState> queue;
  auto path_name = [&](const std::vector<LocalState>& path) {
    std::string s = "[";
    for (std::size_t i = 0; i < path.size(); ++i) s += (i ? ">" : "") + plant.state_name(l, path[i]);
    return s + "]";
  };
  auto intern = [&](std::vector<LocalState> path) {
    auto it = index.find(path);
    if (it != index.end()) return it->second;
    LocalState id = out.add_state(l, path_name(path));
    index.emplace(path, id);
    info.kind.push_back(LshortInfo::Kind::Path);
    info.paths.push_back(std::move(path));
    queue.push_back(id);
    return id;
  };
  auto terminal = [&](bool top) {
    LocalState& slot = special[top ? 0 : 1];
    if (slot == kNone) {
      slot = out.add_state(l, top ? "top" : "bottom");
      info.kind.push_back(top ? LshortInfo::Kind::Top : LshortInfo::Kind::Bottom);
      info.paths.emplace_back();
    }
    return slot;
  };

  std::vector<LetterId> local;
  std::vector<LetterId> joint;
  for (std::size_t i = 0; i < al.num_letters(); ++i) {
    LetterId a = letter_id(i);
    ProcSet dom = al.domain(a);
    if (!dom.contains(l)) {
      for (const auto& [from, to] : plant.transitions(a)) out.add_transition(a, from, to);
    } else if (dom.size() == 1) {
      local.push_back(a);
    } else {
      joint.push_back(a);
    }
  }
  std::vector<decltype(detail::by_coordinate(plant, LetterId{}, l))> joint_at;
  for (LetterId a : joint) joint_at.push_back(detail::by_coordinate(plant, a, l));

  out.set_initial(l, intern({plant.initial(l)}));
  while (!queue.empty()) {
    LocalState x = queue.front();
    queue.pop_front();
    const std::vector<LocalState> path = info.paths[x];
    LocalState end = path.back();
    for (LetterId a : local) {
      const Tuple* to = plant.delta(a, Tuple{end});
      if (!to) continue;
      LocalState t = (*to)[0];
      auto hit = std::find(path.begin(), path.end(), t);
      LocalState y;
      if (hit == path.end()) {
        std::vector<LocalState> ext = path;
        ext.push_back(t);
        y = intern(std::move(ext));
      } else {
        bool even = true;
        for (std::size_t k = 0; k < nconds; ++k) {
          int top = 0;
          for (auto it = hit; it != path.end(); ++it) top = std::max(top, acc.priorities[k][*it]);
          even = even && top % 2 == 0;
        }
        y = terminal(even);
      }
      out.add_transition(a, {x}, {y});
    }
    for (std::size_t j = 0; j < joint.size(); ++j) {
      auto it = joint_at[j].find(end);
      if (it == joint_at[j].end()) continue;
      std::size_t pos = detail::position_in(al.domain(joint[j]), l);
      for (const auto* tr : it->second) {
        Tuple from = tr->first, to = tr->second;
        from[pos] = x;
        to[pos] = intern({tr->second[pos]});
        out.add_transition(joint[j], std::move(from), std::move(to));
      }
    }
  }

  std::vector<LocalAcceptance> accs = plant.local_acceptance();
  LocalAcceptance& la = accs[idx(l)];
  la.final.clear();
  la.priorities.assign(nconds, {});
  for (std::size_t x = 0; x < info.kind.size(); ++x) {
    LshortInfo::Kind k = info.kind[x];
    la.final.push_back(k == LshortInfo::Kind::Top || (k == LshortInfo::Kind::Path && acc.final[info.paths[x].back()]));
    for (std::size_t c = 0; c < nconds; ++c) {
      int v = k == LshortInfo::Kind::Top ? 0 : k == LshortInfo::Kind::Bottom ? 1 : acc.priorities[c][info.paths[x].back()];
      la.priorities[c].push_back(v);
    }
  }
  out.set_local_acceptance(std::move(accs));
  return info;
}

Controller lift_lshort_controller(const LshortInfo& info, const AsyncAutomaton& original, const Controller& c) {
  const Alphabet& al = original.alphabet();
  const ProcId l = info.leaf;
  const AsyncAutomaton& ca = c.automaton;
  Controller out{AsyncAutomaton(al, original.tree()), {}};
  out.projection.resize(al.num_processes());
  for (std::size_t p = 0; p < al.num_processes(); ++p) {
    if (proc_id(p) == l) continue;
    for (std::size_t s = 0; s < ca.num_states(proc_id(p)); ++s) {
      out.automaton.add_state(proc_id(p), ca.state_name(proc_id(p), static_cast<LocalState>(s)));
      out.projection[p].push_back(c.project(proc_id(p), static_cast<LocalState>(s)));
    }
    out.automaton.set_initial(proc_id(p), ca.initial(proc_id(p)));
  }

  std::vector<LetterId> local, joint;
  for (std::size_t i = 0; i < al.num_letters(); ++i) {
    LetterId a = letter_id(i);
    ProcSet dom = al.domain(a);
    if (!dom.contains(l)) {
      for (const auto& [from, to] : ca.transitions(a)) out.automaton.add_transition(a, from, to);
    } else if (dom.size() == 1) {
      local.push_back(a);
    } else {
      joint.push_back(a);
    }
  }
  std::vector<decltype(detail::by_coordinate(ca, LetterId{}, l))> joint_at;
  for (LetterId a : joint) joint_at.push_back(detail::by_coordinate(ca, a, l));

  // Leaf controller states are stacks of c-states, one per path prefix.
  std::map<std::vector<LocalState>, LocalState> index;
  std::vector<std::vector<LocalState>> stacks;
  std::deque<LocalState> queue;
  auto endpoint = [&](LocalState cs) {
    LocalState ps = c.project(l, cs);
    if (info.kind.at(ps) != LshortInfo::Kind::Path) throw IntegrityError("controller stack holds a terminal state");
    return info.paths[ps].back();
  };
  auto intern = [&](std::vector<LocalState> st) {
    auto it = index.find(st);
    if (it != index.end()) return it->second;
    std::string name;
    for (std::size_t i = 0; i < st.size(); ++i) name += (i ? "/" : "") + ca.state_name(l, st[i]);
    LocalState id = out.automaton.add_state(l, name);
    out.projection[idx(l)].push_back(endpoint(st.back()));
    index.emplace(st, id);
    stacks.push_back(std::move(st));
    queue.push_back(id);
    return id;
  };
  out.automaton.set_initial(l, intern({ca.initial(l)}));
  while (!queue.empty()) {
    LocalState x = queue.front();
    queue.pop_front();
    const std::vector<LocalState> st = stacks[x];
    LocalState top = st.back();
    for (LetterId a : local) {
      const Tuple* to = ca.delta(a, Tuple{top});
      if (!to) continue;
      LocalState next = (*to)[0];
      LocalState ps = c.project(l, next);
      std::vector<LocalState> ns;
      switch (info.kind.at(ps)) {
        case LshortInfo::Kind::Path:
          ns = st;
          ns.push_back(next);
          break;
        case LshortInfo::Kind::Top: {
          const Tuple* orig = original.delta(a, Tuple{endpoint(top)});
          if (!orig) throw IntegrityError("cycle closure without an original transition");
          std::size_t j = 0;
          while (j < st.size() && endpoint(st[j]) != (*orig)[0]) ++j;
          if (j == st.size()) throw IntegrityError("cycle closure target not on the stack");
          ns.assign(st.begin(), st.begin() + static_cast<std::ptrdiff_t>(j) + 1);
          break;
        }
        case LshortInfo::Kind::Bottom:
          throw IntegrityError("controller allows a rejecting local cycle");
      }
      out.automaton.add_transition(a, {x}, {intern(std::move(ns))});
    }
    for (std::size_t j = 0; j < joint.size(); ++j) {
      auto it = joint_at[j].find(top);
      if (it == joint_at[j].end()) continue;
      std::size_t pos = detail::position_in(al.domain(joint[j]), l);
      for (const auto* tr : it->second) {
        Tuple from = tr->first, to = tr->second;
        from[pos] = x;
        to[pos] = intern({tr->second[pos]});
        out.automaton.add_transition(joint[j], std::move(from), std::move(to));
      }
    }
  }
  return out;
}

}  // namespace arbor
