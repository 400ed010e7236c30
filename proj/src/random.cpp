#include "arbor/random.hpp"

#include <algorithm>
#include <numeric>

#include "arbor/error.hpp"

namespace arbor::gen {

namespace {

std::vector<std::size_t> random_parents(Rng& rng, std::size_t n) {
  std::vector<std::size_t> parent(n, 0);
  for (std::size_t i = 1; i < n; ++i) parent[i] = below(rng, i);
  return parent;
}

ProcessTree tree_of(const std::vector<std::size_t>& parent) {
  std::vector<std::optional<ProcId>> par(parent.size());
  for (std::size_t i = 1; i < parent.size(); ++i) par[i] = proc_id(parent[i]);
  return ProcessTree(proc_id(0), par);
}

}  // namespace

Architecture random_tca(Rng& rng, const TcaOptions& opts) {
  const std::size_t lo = std::max<std::size_t>(1, opts.min_processes);
  const std::size_t n = lo + below(rng, opts.max_processes - lo + 1);
  if (opts.max_letters + 1 < n) throw InputError("too few letters to cover the tree edges");
  std::vector<std::size_t> parent = random_parents(rng, n);
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 1; i < n; ++i) {
    adj[i].push_back(parent[i]);
    adj[parent[i]].push_back(i);
  }
  std::vector<std::string> procs;
  for (std::size_t i = 0; i < n; ++i) procs.push_back("p" + std::to_string(i));

  // Grow a connected set from `seed`.
  auto grow = [&](std::vector<std::size_t> set) {
    std::size_t extra = below(rng, n);
    for (std::size_t k = 0; k < extra; ++k) {
      std::vector<std::size_t> frontier;
      for (std::size_t v : set)
        for (std::size_t w : adj[v])
          if (std::find(set.begin(), set.end(), w) == set.end() &&
              std::find(frontier.begin(), frontier.end(), w) == frontier.end())
            frontier.push_back(w);
      if (frontier.empty()) break;
      std::sort(frontier.begin(), frontier.end());
      set.push_back(frontier[below(rng, frontier.size())]);
    }
    std::sort(set.begin(), set.end());
    return set;
  };

  std::vector<std::vector<std::size_t>> domains;
  for (std::size_t i = 1; i < n; ++i) domains.push_back(grow({parent[i], i}));
  std::size_t total = std::max(domains.size(), 1 + below(rng, opts.max_letters));
  total = std::max<std::size_t>(total, 1);
  while (domains.size() < total) domains.push_back(grow({below(rng, n)}));
  // Shuffle letter order so edge letters are not always first.
  for (std::size_t i = domains.size(); i > 1; --i) std::swap(domains[i - 1], domains[below(rng, i)]);

  std::vector<LetterSpec> letters;
  for (std::size_t k = 0; k < domains.size(); ++k) {
    LetterSpec s;
    s.id = "a" + std::to_string(k);
    for (std::size_t v : domains[k]) s.domain.push_back(procs[v]);
    letters.push_back(std::move(s));
  }
  return Architecture(Alphabet(procs, letters), tree_of(parent));
}

// ---------------------------------------------------------------------------

namespace {

Dfa close_once(Rng& rng, const Alphabet& al, std::size_t max_states, double density) {
  const std::size_t m = al.num_letters();
  std::size_t n = 1 + below(rng, std::max<std::size_t>(max_states, 1));
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::vector<std::size_t>> delta(n, std::vector<std::size_t>(m, kNone));
  std::vector<bool> acc(n);
  for (std::size_t s = 0; s < n; ++s) {
    acc[s] = coin(rng, 0.5);
    for (std::size_t a = 0; a < m; ++a)
      if (coin(rng, density)) delta[s][a] = below(rng, n);
  }

  std::vector<std::size_t> rep(n);
  std::iota(rep.begin(), rep.end(), 0);
  auto find = [&](std::size_t x) {
    while (rep[x] != x) x = rep[x] = rep[rep[x]];
    return x;
  };
  // Merge y into x, then restore determinism by merging successors.
  auto merge = [&](std::size_t x, std::size_t y) {
    std::vector<std::pair<std::size_t, std::size_t>> work{{x, y}};
    while (!work.empty()) {
      auto [u, v] = work.back();
      work.pop_back();
      u = find(u);
      v = find(v);
      if (u == v) continue;
      if (v < u) std::swap(u, v);
      rep[v] = u;
      acc[u] = acc[u] || acc[v];
      for (std::size_t a = 0; a < m; ++a) {
        if (delta[v][a] == kNone) continue;
        if (delta[u][a] == kNone) delta[u][a] = delta[v][a];
        else work.emplace_back(delta[u][a], delta[v][a]);
      }
    }
  };
  auto step = [&](std::size_t s, std::size_t a) {
    std::size_t t = delta[find(s)][a];
    return t == kNone ? kNone : find(t);
  };

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b)
      if (independent(al, letter_id(a), letter_id(b))) pairs.emplace_back(a, b);

  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t s = 0; s < n; ++s) {
      if (find(s) != s) continue;
      for (auto [a0, b0] : pairs) {
        for (int flip = 0; flip < 2; ++flip) {
          std::size_t a = flip ? b0 : a0, b = flip ? a0 : b0;
          std::size_t t = step(s, a);
          std::size_t ab = t == kNone ? kNone : step(t, b);
          std::size_t v = step(s, b);
          std::size_t ba = v == kNone ? kNone : step(v, a);
          if (ab == kNone && t != kNone && v != kNone) {
            delta[find(t)][b] = below(rng, n);
            changed = true;
            break;
          }
          if (ab == kNone || ab == ba) continue;
          if (ba != kNone) {
            merge(ab, ba);
          } else if (v == kNone) {
            delta[s][b] = below(rng, n);
          } else {
            delta[find(v)][a] = ab;
          }
          changed = true;
          break;
        }
        if (changed) break;
      }
      if (changed) break;
    }
  }

  // Reachable quotient states, in BFS order from the initial class.
  std::vector<std::size_t> order{find(0)}, id(n, kNone);
  id[find(0)] = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t a = 0; a < m; ++a) {
      std::size_t t = step(order[i], a);
      if (t != kNone && id[t] == kNone) {
        id[t] = order.size();
        order.push_back(t);
      }
    }
  Dfa dfa(al, order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    dfa.set_accepting(static_cast<StateId>(i), acc[order[i]]);
    for (std::size_t a = 0; a < m; ++a) {
      std::size_t t = step(order[i], a);
      if (t != kNone) dfa.set_transition(static_cast<StateId>(i), letter_id(a), static_cast<StateId>(id[t]));
    }
  }
  if (!is_diamond(dfa)) throw IntegrityError("diamond closure did not converge");
  return dfa;
}

}  // namespace

Dfa random_diamond_dfa(Rng& rng, const Alphabet& al, std::size_t max_states, double density) {
  // Closure merges often collapse the automaton; keep the largest of a few tries.
  Dfa best = close_once(rng, al, max_states, density);
  for (int k = 1; k < 8; ++k) {
    Dfa d = close_once(rng, al, max_states, density);
    if (d.num_states() > best.num_states()) best = std::move(d);
  }
  return best;
}

// ---------------------------------------------------------------------------

AsyncAutomaton random_plant(Rng& rng, const PlantOptions& opts) {
  const std::size_t n = std::max<std::size_t>(opts.processes, 1);
  std::vector<std::size_t> parent = random_parents(rng, n);
  std::vector<std::string> procs;
  for (std::size_t i = 0; i < n; ++i) procs.push_back("p" + std::to_string(i));
  std::vector<LetterSpec> letters;
  for (std::size_t i = 0; i < n; ++i) {
    letters.push_back({"c_" + procs[i], {procs[i]}, true});
    letters.push_back({"d_" + procs[i], {procs[i]}, true});
    letters.push_back({"u_" + procs[i], {procs[i]}, false});
  }
  for (std::size_t i = 1; i < n; ++i)
    letters.push_back({"x_" + procs[parent[i]] + "_" + procs[i], {procs[parent[i]], procs[i]}, false});
  Alphabet al(procs, letters);
  ProcessTree tree = tree_of(parent);
  AsyncAutomaton aa(al, tree);

  std::vector<std::size_t> k(n);
  for (std::size_t i = 0; i < n; ++i) {
    k[i] = 1 + below(rng, std::max<std::size_t>(opts.max_states, 1));
    for (std::size_t s = 0; s < k[i]; ++s) aa.add_state(proc_id(i), "s" + std::to_string(s));
    aa.set_initial(proc_id(i), 0);
  }
  const std::size_t cyclic = n - 1;
  for (std::size_t i = 0; i < n; ++i) {
    bool forward = opts.short_leaves && i != 0 && tree.is_leaf(proc_id(i)) && !(opts.leaf_cycle && i == cyclic);
    for (LetterId a : local_letters(al, proc_id(i)))
      for (std::size_t s = 0; s < k[i]; ++s) {
        if (!coin(rng, opts.density)) continue;
        std::size_t t = forward ? s + 1 + below(rng, k[i] - s) : below(rng, k[i]);
        if (t >= k[i]) continue;
        aa.add_transition(a, {static_cast<LocalState>(s)}, {static_cast<LocalState>(t)});
      }
  }
  if (opts.leaf_cycle) {
    std::vector<LetterId> local = local_letters(al, proc_id(cyclic));
    std::size_t s = below(rng, k[cyclic]);
    std::size_t t = below(rng, s + 1);
    LetterId a = local[below(rng, local.size())];
    aa.remove_transition(a, {static_cast<LocalState>(s)});
    aa.add_transition(a, {static_cast<LocalState>(s)}, {static_cast<LocalState>(t)});
  }
  for (std::size_t i = 1; i < n; ++i) {
    LetterId x = al.letter("x_" + procs[parent[i]] + "_" + procs[i]);
    std::size_t p = parent[i];
    for (std::size_t sp = 0; sp < k[p]; ++sp)
      for (std::size_t sc = 0; sc < k[i]; ++sc)
        if (coin(rng, opts.density))
          aa.add_transition(x, {static_cast<LocalState>(sp), static_cast<LocalState>(sc)},
                            {static_cast<LocalState>(below(rng, k[p])), static_cast<LocalState>(below(rng, k[i]))});
  }
  std::vector<LocalAcceptance> accs(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t s = 0; s < k[i]; ++s) accs[i].final.push_back(coin(rng, 0.5));
    for (std::size_t c = 0; c < opts.conditions; ++c) {
      std::vector<int> pr;
      for (std::size_t s = 0; s < k[i]; ++s) pr.push_back(static_cast<int>(below(rng, static_cast<std::size_t>(opts.max_priority) + 1)));
      accs[i].priorities.push_back(std::move(pr));
    }
  }
  aa.set_local_acceptance(std::move(accs));
  return aa;
}

Graph random_graph(Rng& rng, std::size_t n, double p) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
  Graph g(names);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (coin(rng, p)) g.add_edge(u, v);
  return g;
}

}  // namespace arbor::gen
