#include <algorithm>
#include <deque>
#include <functional>

#include "arbor/control.hpp"
#include "control_util.hpp"

namespace arbor {

using detail::StateGraph;

Controller identity_controller(const AsyncAutomaton& plant) {
  Controller c{plant, {}};
  c.automaton.clear_acceptance();
  const std::size_t np = plant.alphabet().num_processes();
  c.projection.resize(np);
  for (std::size_t p = 0; p < np; ++p)
    for (std::size_t s = 0; s < plant.num_states(proc_id(p)); ++s)
      c.projection[p].push_back(static_cast<LocalState>(s));
  return c;
}

Controller positional_controller(const AsyncAutomaton& plant,
                                 const std::vector<std::vector<std::optional<LetterId>>>& choice) {
  Controller c = identity_controller(plant);
  const Alphabet& al = plant.alphabet();
  if (choice.size() != al.num_processes()) throw InputError("choice needs one entry per process");
  for (std::size_t p = 0; p < al.num_processes(); ++p) {
    if (choice[p].size() != plant.num_states(proc_id(p))) throw InputError("choice needs one entry per state");
    for (LetterId a : local_letters(al, proc_id(p))) {
      if (!al.controllable(a)) continue;
      for (std::size_t s = 0; s < choice[p].size(); ++s) {
        Tuple t{static_cast<LocalState>(s)};
        if (!plant.delta(a, t)) {
          if (choice[p][s] == a) throw InputError("chosen letter " + al.letter_name(a) + " is not enabled");
          continue;
        }
        if (choice[p][s] != a) c.automaton.remove_transition(a, t);
      }
    }
  }
  return c;
}

namespace {

GlobalState projected(const Controller& c, const GlobalState& g) {
  GlobalState out(g.size());
  for (std::size_t p = 0; p < g.size(); ++p) out[p] = c.project(proc_id(p), g[p]);
  return out;
}

Tuple projected(const Controller& c, ProcSet dom, const Tuple& t) {
  Tuple out(t.size());
  std::size_t i = 0;
  for (ProcId p : dom.members()) {
    out[i] = c.project(p, t[i]);
    ++i;
  }
  return out;
}

void require_shape(const AsyncAutomaton& plant, const Controller& c) {
  const Alphabet& al = plant.alphabet();
  if (!(c.automaton.alphabet() == al)) throw InputError("controller alphabet differs from the plant's");
  if (c.projection.size() != al.num_processes()) throw InputError("projection needs one entry per process");
  for (std::size_t p = 0; p < al.num_processes(); ++p) {
    if (c.projection[p].size() != c.automaton.num_states(proc_id(p)))
      throw InputError("projection of " + al.process_name(proc_id(p)) + " is not total");
    for (LocalState s : c.projection[p])
      if (s >= plant.num_states(proc_id(p))) throw InputError("projection targets an unknown plant state");
  }
}

std::string describe(const Alphabet& al, LetterId a, const Tuple& t) {
  std::string s = al.letter_name(a) + " at (";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
  return s + ")";
}

// Iterative Tarjan restricted to `alive` nodes and edges passing `keep`.
std::vector<int> sccs(const StateGraph& g, const std::vector<std::uint32_t>& nodes, const std::vector<char>& alive,
                      const std::function<bool(LetterId)>& keep, int& count) {
  const std::size_t n = g.nodes.size();
  std::vector<int> comp(n, -1), low(n, 0), num(n, -1);
  std::vector<std::uint32_t> stack;
  std::vector<char> on(n, 0);
  int counter = 0;
  count = 0;
  struct Frame {
    std::uint32_t v;
    std::size_t edge;
  };
  for (std::uint32_t root : nodes) {
    if (num[root] >= 0) continue;
    std::vector<Frame> call{{root, 0}};
    num[root] = low[root] = counter++;
    stack.push_back(root);
    on[root] = 1;
    while (!call.empty()) {
      Frame& f = call.back();
      const auto& out = g.out[f.v];
      if (f.edge < out.size()) {
        auto [a, w] = out[f.edge++];
        if (!alive[w] || !keep(a)) continue;
        if (num[w] < 0) {
          num[w] = low[w] = counter++;
          stack.push_back(w);
          on[w] = 1;
          call.push_back({w, 0});
        } else if (on[w]) {
          low[f.v] = std::min(low[f.v], num[w]);
        }
        continue;
      }
      std::uint32_t v = f.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] == num[v]) {
        std::uint32_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on[w] = 0;
          comp[w] = count;
        } while (w != v);
        ++count;
      }
    }
  }
  return comp;
}

// Closed walk from `entry` inside the component whose letters together
// touch every process the component moves.
Word covering_loop(const StateGraph& g, const Alphabet& al, std::uint32_t entry, const std::vector<int>& comp, int id,
                   const std::function<bool(LetterId)>& keep) {
  auto inside = [&](std::uint32_t v) { return comp[v] == id; };
  auto route = [&](std::uint32_t from, std::uint32_t to, Word& w) {
    if (from == to) return from;
    std::unordered_map<std::uint32_t, std::pair<std::uint32_t, LetterId>> pred;
    std::deque<std::uint32_t> q{from};
    pred[from] = {from, LetterId{}};
    while (!q.empty() && !pred.count(to)) {
      std::uint32_t u = q.front();
      q.pop_front();
      for (auto [a, v] : g.out[u])
        if (inside(v) && keep(a) && !pred.count(v)) {
          pred[v] = {u, a};
          q.push_back(v);
        }
    }
    if (!pred.count(to)) throw IntegrityError("component is not strongly connected");
    Word seg;
    for (std::uint32_t v = to; v != from; v = pred[v].first) seg.push_back(pred[v].second);
    w.insert(w.end(), seg.rbegin(), seg.rend());
    return to;
  };
  Word w;
  std::uint32_t cur = entry;
  ProcSet covered;
  for (std::uint32_t u = 0; u < g.nodes.size(); ++u) {
    if (!inside(u)) continue;
    for (auto [a, v] : g.out[u])
      if (inside(v) && keep(a) && !al.domain(a).subset_of(covered)) {
        cur = route(cur, u, w);
        w.push_back(a);
        cur = v;
        covered |= al.domain(a);
      }
  }
  route(cur, entry, w);
  return w;
}

}  // namespace

ControllerCheck check_controller(const AsyncAutomaton& plant, const Controller& c, std::size_t limit) {
  require_shape(plant, c);
  const Alphabet& al = plant.alphabet();
  ControllerCheck r;
  for (std::size_t i = 0; i < al.num_letters(); ++i) {
    LetterId a = letter_id(i);
    ProcSet dom = al.domain(a);
    for (const auto& [from, to] : c.automaton.transitions(a)) {
      const Tuple* pt = plant.delta(a, projected(c, dom, from));
      if (!pt || *pt != projected(c, dom, to)) {
        r.ok = false;
        r.condition = 1;
        r.violation = "controller transition " + describe(al, a, from) + " has no matching plant transition";
        return r;
      }
    }
  }
  GlobalState init = c.automaton.initial_state();
  if (projected(c, init) != plant.initial_state()) {
    r.ok = false;
    r.condition = 3;
    r.violation = "controller initial state does not project onto the plant's";
    return r;
  }
  StateGraph g = detail::explore(c.automaton, limit);
  for (std::uint32_t v = 0; v < g.nodes.size(); ++v) {
    GlobalState pg = projected(c, g.nodes[v]);
    for (std::size_t i = 0; i < al.num_letters(); ++i) {
      LetterId a = letter_id(i);
      if (al.controllable(a)) continue;
      if (plant.step(pg, a) && !c.automaton.step(g.nodes[v], a)) {
        r.ok = false;
        r.condition = 2;
        r.violation = "uncontrollable " + al.letter_name(a) + " is blocked after '" +
                      al.format_word(detail::path_to(g, v)) + "'";
        return r;
      }
    }
  }
  return r;
}

WinningVerdict verify_winning(const AsyncAutomaton& plant, const Controller& c, std::size_t limit) {
  detail::require_plant(plant);
  require_shape(plant, c);
  const Alphabet& al = plant.alphabet();
  const std::size_t np = al.num_processes();
  if (np > 20) throw UnsupportedInstance("too many processes for cycle analysis");
  WinningVerdict verdict;
  StateGraph g = detail::explore(c.automaton, limit);
  verdict.explored_states = g.nodes.size();
  const std::size_t n = g.nodes.size();

  auto final_at = [&](std::uint32_t v, ProcId p) {
    return plant.local_acceptance(p).final[c.project(p, g.nodes[v][idx(p)])];
  };

  for (std::uint32_t v = 0; v < n; ++v) {
    if (!g.out[v].empty()) continue;
    for (std::size_t p = 0; p < np; ++p)
      if (!final_at(v, proc_id(p))) {
        verdict.winning = false;
        verdict.counterexample = Counterexample{detail::path_to(g, v), {},
                                                "finite run ends outside F at " + al.process_name(proc_id(p))};
        return verdict;
      }
  }

  std::vector<std::uint32_t> all(n);
  for (std::uint32_t v = 0; v < n; ++v) all[v] = v;
  std::vector<char> alive_all(n, 1);

  auto fail = [&](std::uint32_t entry, const std::vector<int>& comp, int id, const std::function<bool(LetterId)>& keep,
                  std::string reason) {
    verdict.winning = false;
    verdict.counterexample =
        Counterexample{detail::path_to(g, entry), covering_loop(g, al, entry, comp, id, keep), std::move(reason)};
  };

  // Domain union of edges inside each component (bits), -1 when trivial.
  auto unions = [&](const std::vector<int>& comp, int count, const std::function<bool(LetterId)>& keep) {
    std::vector<std::uint64_t> u(count, 0);
    std::vector<char> has(count, 0);
    for (std::uint32_t v = 0; v < n; ++v) {
      if (comp[v] < 0) continue;
      for (auto [a, w] : g.out[v])
        if (comp[w] == comp[v] && keep(a)) {
          u[comp[v]] |= al.domain(a).bits();
          has[comp[v]] = 1;
        }
    }
    for (int i = 0; i < count; ++i)
      if (!has[i]) u[i] = 0;
    return u;
  };

  for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << np); ++bits) {
    ProcSet A = ProcSet::from_bits(bits);
    auto keep = [&](LetterId a) { return al.domain(a).subset_of(A); };
    int count = 0;
    std::vector<int> comp = sccs(g, all, alive_all, keep, count);
    std::vector<std::uint64_t> dom = unions(comp, count, keep);
    std::vector<std::uint32_t> entry(count, static_cast<std::uint32_t>(n));
    for (std::uint32_t v = 0; v < n; ++v)
      if (entry[comp[v]] == n) entry[comp[v]] = v;
    for (int k = 0; k < count; ++k) {
      if (dom[k] != bits) continue;
      std::uint32_t e = entry[k];
      bool maximal = true;
      for (std::size_t i = 0; i < al.num_letters() && maximal; ++i) {
        LetterId a = letter_id(i);
        if (!al.domain(a).intersects(A) && c.automaton.step(g.nodes[e], a)) maximal = false;
      }
      if (!maximal) continue;
      for (std::size_t p = 0; p < np; ++p) {
        if (A.contains(proc_id(p)) || final_at(e, proc_id(p))) continue;
        fail(e, comp, k, keep, al.process_name(proc_id(p)) + " stops outside F");
        return verdict;
      }
      std::vector<std::uint32_t> members;
      for (std::uint32_t v = 0; v < n; ++v)
        if (comp[v] == k) members.push_back(v);
      for (ProcId p : A.members()) {
        const auto& conds = plant.local_acceptance(p).priorities;
        for (std::size_t ci = 0; ci < conds.size(); ++ci) {
          auto pr = [&](std::uint32_t v) { return conds[ci][c.project(p, g.nodes[v][idx(p)])]; };
          std::vector<int> odd;
          for (std::uint32_t v : members)
            if (pr(v) % 2) odd.push_back(pr(v));
          std::sort(odd.begin(), odd.end());
          odd.erase(std::unique(odd.begin(), odd.end()), odd.end());
          for (int d : odd) {
            std::vector<char> alive(n, 0);
            std::vector<std::uint32_t> sub;
            for (std::uint32_t v : members)
              if (pr(v) <= d) {
                alive[v] = 1;
                sub.push_back(v);
              }
            int c2 = 0;
            std::vector<int> comp2 = sccs(g, sub, alive, keep, c2);
            std::vector<std::uint64_t> dom2 = unions(comp2, c2, keep);
            for (int k2 = 0; k2 < c2; ++k2) {
              if (dom2[k2] != bits) continue;
              std::uint32_t top = static_cast<std::uint32_t>(n);
              for (std::uint32_t v : sub)
                if (comp2[v] == k2 && pr(v) == d) {
                  top = v;
                  break;
                }
              if (top == n) continue;
              std::uint32_t e2 = top;
              std::string reason = al.process_name(p) + " sees odd priority " + std::to_string(d) + " infinitely often";
              if (conds.size() > 1) reason += " (condition " + std::to_string(ci) + ")";
              fail(e2, comp2, k2, keep, reason);
              return verdict;
            }
          }
        }
      }
    }
  }
  return verdict;
}

}  // namespace arbor
