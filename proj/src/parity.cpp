#include "arbor/parity.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <set>

#include "arbor/error.hpp"

namespace arbor {

std::vector<int> compress_priorities(const std::vector<int>& priorities) {
  std::set<int> values(priorities.begin(), priorities.end());
  std::map<int, int> rank;
  int cur = -1, prev = -1;
  for (int v : values) {
    if (cur < 0)
      cur = v % 2;
    else if (v % 2 != prev % 2)
      ++cur;
    rank[v] = cur;
    prev = v;
  }
  std::vector<int> out;
  out.reserve(priorities.size());
  for (int v : priorities) out.push_back(rank[v]);
  return out;
}

// ---------------------------------------------------------------------------

IarAutomaton::IarAutomaton(std::vector<int> counts) : counts_(std::move(counts)) {
  if (counts_.empty()) throw InputError("IAR needs at least one parity condition");
  if (counts_.size() > 255) throw UnsupportedInstance("too many parity conditions");
  Record init;
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    if (counts_[i] < 1) throw InputError("parity condition with no priorities");
    pairs_.push_back(counts_[i] / 2);
    for (int k = 0; k < pairs_[i]; ++k) init.perm.push_back(static_cast<std::uint8_t>(i));
  }
  intern(init);
}

int IarAutomaton::max_priority() const noexcept {
  if (counts_.size() == 1) return counts_[0] - 1;
  int k = 0;
  for (int p : pairs_) k += p;
  return 2 * k;
}

IarAutomaton::State IarAutomaton::intern(Record r) {
  auto [it, fresh] = index_.emplace(r, static_cast<State>(states_.size()));
  if (fresh) states_.push_back(std::move(r));
  return it->second;
}

IarAutomaton::State IarAutomaton::step(State s, const std::vector<int>& tuple) {
  if (tuple.size() != counts_.size()) throw InputError("priority tuple has the wrong arity");
  for (std::size_t i = 0; i < tuple.size(); ++i)
    if (tuple[i] < 0 || tuple[i] >= counts_[i]) throw InputError("priority out of range in tuple");
  auto key = std::make_pair(s, tuple);
  if (auto it = trans_.find(key); it != trans_.end()) return it->second;

  Record next;
  if (counts_.size() == 1) {
    next.marker = tuple[0];
  } else {
    const Record& cur = states_.at(s);
    const int K = static_cast<int>(cur.perm.size());
    // Pairs of condition i sit in decreasing order; the j-th occurrence of
    // label i (from the left) is pair 2*(pairs_i - j) - 1.
    std::vector<int> seen(counts_.size(), 0);
    std::vector<std::uint8_t> stay, moved;
    int e = K, f = K;
    for (int pos = 0; pos < K; ++pos) {
      const int i = cur.perm[pos];
      const int pair = 2 * (pairs_[i] - seen[i]) - 1;
      ++seen[i];
      if (pair < tuple[i]) {
        moved.push_back(cur.perm[pos]);
        f = std::min(f, pos);
      } else {
        stay.push_back(cur.perm[pos]);
        if (pair == tuple[i]) e = std::min(e, pos);
      }
    }
    next.perm = std::move(stay);
    next.perm.insert(next.perm.end(), moved.begin(), moved.end());
    if (e < f)
      next.marker = 2 * (K - e) - 1;
    else if (f < K)
      next.marker = 2 * (K - f);
    else
      next.marker = 0;
  }
  State t = intern(std::move(next));
  trans_.emplace(std::move(key), t);
  return t;
}

std::string IarAutomaton::serialize(State s) const {
  const Record& r = states_.at(s);
  std::string out = "{\"perm\":[";
  for (std::size_t i = 0; i < r.perm.size(); ++i) out += (i ? "," : "") + std::to_string(r.perm[i]);
  out += "],\"marker\":" + std::to_string(r.marker) + "}";
  return out;
}

std::size_t IarAutomaton::explore_all() {
  std::vector<std::vector<int>> tuples{{}};
  for (int c : counts_) {
    std::vector<std::vector<int>> next;
    for (const auto& t : tuples)
      for (int v = 0; v < c; ++v) {
        auto u = t;
        u.push_back(v);
        next.push_back(std::move(u));
      }
    tuples = std::move(next);
  }
  std::deque<State> queue{initial()};
  std::set<State> seen{initial()};
  while (!queue.empty()) {
    State s = queue.front();
    queue.pop_front();
    for (const auto& t : tuples) {
      State n = step(s, t);
      if (seen.insert(n).second) queue.push_back(n);
    }
  }
  return seen.size();
}

IarAutomaton iar_conjunction(const std::vector<ParityCondition>& conds) {
  std::vector<int> counts;
  for (const auto& c : conds) counts.push_back(c.index_count);
  return IarAutomaton(std::move(counts));
}

double iar_bound(const std::vector<int>& counts) {
  if (counts.empty()) return 0;
  const double p0 = counts[0];
  double p = 0, denom = 1;
  for (std::size_t i = 1; i < counts.size(); ++i) {
    p += counts[i];
    denom *= std::tgamma(counts[i] + 1.0);
  }
  return (p0 + p) * std::tgamma(p + 1.0) * std::pow(p0 + 1.0, p) / denom;
}

// ---------------------------------------------------------------------------

std::size_t ParityGame::add_position(std::string id, Owner owner, int priority) {
  if (priority < 0) throw InputError("negative priority");
  positions.push_back({std::move(id), owner, priority, std::nullopt});
  succ.emplace_back();
  return positions.size() - 1;
}

void ParityGame::add_edge(std::size_t u, std::size_t v) {
  if (u >= size() || v >= size()) throw InputError("edge endpoint out of range");
  auto& s = succ[u];
  if (std::find(s.begin(), s.end(), v) == s.end()) s.push_back(v);
}

void ParityGame::validate() const {
  if (succ.size() != positions.size()) throw InputError("malformed game");
  if (!positions.empty() && initial >= size()) throw InputError("initial position out of range");
  for (std::size_t v = 0; v < size(); ++v)
    if (succ[v].empty() && !positions[v].terminal_win)
      throw InputError("position '" + positions[v].id + "' has no successor and no terminal tag");
}

namespace {

// Terminals become self-loops with priority 0 (System wins) or 1.
struct Arena {
  std::size_t n = 0;
  std::vector<std::vector<std::size_t>> succ, pred;
  std::vector<int> pri;
  std::vector<int> owner;  // 0 System, 1 Environment

  explicit Arena(const ParityGame& g) : n(g.size()), succ(g.succ), pred(n), pri(n), owner(n) {
    for (std::size_t v = 0; v < n; ++v) {
      owner[v] = g.positions[v].owner == Owner::System ? 0 : 1;
      pri[v] = g.positions[v].priority;
      if (succ[v].empty()) {
        succ[v].push_back(v);
        pri[v] = *g.positions[v].terminal_win ? 0 : 1;
      }
    }
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t u : succ[v]) pred[u].push_back(v);
  }
};

using Mask = std::vector<char>;

Mask attractor(const Arena& a, const Mask& mask, const Mask& target, int pl, std::vector<std::size_t>& strat) {
  Mask attr(a.n, 0);
  std::vector<std::size_t> count(a.n, 0);
  std::deque<std::size_t> queue;
  for (std::size_t v = 0; v < a.n; ++v) {
    if (!mask[v]) continue;
    for (std::size_t u : a.succ[v]) count[v] += mask[u] ? 1 : 0;
    if (target[v]) {
      attr[v] = 1;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    std::size_t u = queue.front();
    queue.pop_front();
    for (std::size_t v : a.pred[u]) {
      if (!mask[v] || attr[v]) continue;
      if (a.owner[v] == pl) {
        attr[v] = 1;
        strat[v] = u;
        queue.push_back(v);
      } else if (--count[v] == 0) {
        attr[v] = 1;
        queue.push_back(v);
      }
    }
  }
  return attr;
}

// win[v] = winning player for v in mask; strat filled for owner-winning v.
void solve_rec(const Arena& a, const Mask& mask, std::vector<int>& win, std::vector<std::size_t>& strat) {
  int d = -1;
  for (std::size_t v = 0; v < a.n; ++v)
    if (mask[v]) d = std::max(d, a.pri[v]);
  if (d < 0) return;
  const int i = d % 2;
  Mask top(a.n, 0);
  for (std::size_t v = 0; v < a.n; ++v) top[v] = mask[v] && a.pri[v] == d;
  std::vector<std::size_t> attr_strat(a.n, kNoMove);
  Mask A = attractor(a, mask, top, i, attr_strat);
  Mask rest(a.n, 0);
  for (std::size_t v = 0; v < a.n; ++v) rest[v] = mask[v] && !A[v];
  solve_rec(a, rest, win, strat);
  Mask opp(a.n, 0);
  bool any = false;
  for (std::size_t v = 0; v < a.n; ++v)
    if (rest[v] && win[v] == 1 - i) opp[v] = 1, any = true;
  if (!any) {
    for (std::size_t v = 0; v < a.n; ++v) {
      if (!A[v]) continue;
      win[v] = i;
      if (a.owner[v] != i) continue;
      if (top[v]) {
        for (std::size_t u : a.succ[v])
          if (mask[u]) {
            strat[v] = u;
            break;
          }
      } else {
        strat[v] = attr_strat[v];
      }
    }
    return;
  }
  std::vector<std::size_t> b_strat(a.n, kNoMove);
  Mask B = attractor(a, mask, opp, 1 - i, b_strat);
  for (std::size_t v = 0; v < a.n; ++v) {
    if (!B[v]) continue;
    win[v] = 1 - i;
    if (!opp[v] && a.owner[v] == 1 - i) strat[v] = b_strat[v];
  }
  Mask rest2(a.n, 0);
  for (std::size_t v = 0; v < a.n; ++v) rest2[v] = mask[v] && !B[v];
  solve_rec(a, rest2, win, strat);
}

// Strongly connected components of the subgraph induced by `nodes` with the
// given successor function; returns component id per node (-1 outside).
std::vector<int> scc(std::size_t n, const Mask& nodes, const std::function<const std::vector<std::size_t>&(std::size_t)>& next,
                     int& count) {
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<char> on(n, 0);
  std::vector<std::size_t> stack;
  int counter = 0;
  count = 0;
  struct Frame {
    std::size_t v, i;
  };
  for (std::size_t root = 0; root < n; ++root) {
    if (!nodes[root] || index[root] >= 0) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on[root] = 1;
    while (!call.empty()) {
      Frame& fr = call.back();
      const auto& out = next(fr.v);
      if (fr.i < out.size()) {
        std::size_t u = out[fr.i++];
        if (!nodes[u]) continue;
        if (index[u] < 0) {
          index[u] = low[u] = counter++;
          stack.push_back(u);
          on[u] = 1;
          call.push_back({u, 0});
        } else if (on[u]) {
          low[fr.v] = std::min(low[fr.v], index[u]);
        }
      } else {
        std::size_t v = fr.v;
        call.pop_back();
        if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
        if (low[v] == index[v]) {
          while (true) {
            std::size_t w = stack.back();
            stack.pop_back();
            on[w] = 0;
            comp[w] = count;
            if (w == v) break;
          }
          ++count;
        }
      }
    }
  }
  return comp;
}

// Is there a cycle inside `nodes` whose maximum priority has parity `bad`?
bool has_cycle_with_parity(const Arena& a, const Mask& nodes,
                           const std::function<const std::vector<std::size_t>&(std::size_t)>& next, int bad) {
  std::set<int> pris;
  for (std::size_t v = 0; v < a.n; ++v)
    if (nodes[v] && a.pri[v] % 2 == bad) pris.insert(a.pri[v]);
  for (int d : pris) {
    Mask sub(a.n, 0);
    for (std::size_t v = 0; v < a.n; ++v) sub[v] = nodes[v] && a.pri[v] <= d;
    int count = 0;
    auto comp = scc(a.n, sub, next, count);
    std::vector<int> size(static_cast<std::size_t>(count), 0);
    std::vector<char> loop(static_cast<std::size_t>(count), 0), hit(static_cast<std::size_t>(count), 0);
    for (std::size_t v = 0; v < a.n; ++v) {
      if (comp[v] < 0) continue;
      ++size[static_cast<std::size_t>(comp[v])];
      if (a.pri[v] == d) hit[static_cast<std::size_t>(comp[v])] = 1;
      for (std::size_t u : next(v))
        if (u == v) loop[static_cast<std::size_t>(comp[v])] = 1;
    }
    for (int c = 0; c < count; ++c) {
      auto k = static_cast<std::size_t>(c);
      if (hit[k] && (size[k] > 1 || loop[k])) return true;
    }
  }
  return false;
}

}  // namespace

GameSolution solve_parity_game(const ParityGame& g) {
  g.validate();
  Arena a(g);
  std::vector<int> win(a.n, 0);
  std::vector<std::size_t> strat(a.n, kNoMove);
  solve_rec(a, Mask(a.n, 1), win, strat);
  GameSolution sol;
  sol.system_wins.resize(a.n);
  sol.strategy.assign(a.n, kNoMove);
  for (std::size_t v = 0; v < a.n; ++v) {
    sol.system_wins[v] = win[v] == 0;
    if (!g.succ[v].empty() && win[v] == a.owner[v]) sol.strategy[v] = strat[v];
  }
  return sol;
}

std::string check_solution(const ParityGame& g, const GameSolution& sol) {
  Arena a(g);
  if (sol.system_wins.size() != a.n || sol.strategy.size() != a.n) return "solution size mismatch";
  std::vector<std::vector<std::size_t>> fixed(a.n);
  for (std::size_t v = 0; v < a.n; ++v) {
    const int w = sol.system_wins[v] ? 0 : 1;
    if (g.succ[v].empty()) {
      if (w != (*g.positions[v].terminal_win ? 0 : 1)) return "terminal " + g.positions[v].id + " misassigned";
      fixed[v] = a.succ[v];
      continue;
    }
    if (a.owner[v] == w) {
      std::size_t u = sol.strategy[v];
      if (u == kNoMove || std::find(a.succ[v].begin(), a.succ[v].end(), u) == a.succ[v].end())
        return "no valid strategy move at " + g.positions[v].id;
      if ((sol.system_wins[u] ? 0 : 1) != w) return "strategy leaves the winning region at " + g.positions[v].id;
      fixed[v] = {u};
    } else {
      for (std::size_t u : a.succ[v])
        if ((sol.system_wins[u] ? 0 : 1) != w) return "region not closed at " + g.positions[v].id;
      fixed[v] = a.succ[v];
    }
  }
  auto next = [&](std::size_t v) -> const std::vector<std::size_t>& { return fixed[v]; };
  for (int w = 0; w < 2; ++w) {
    Mask region(a.n, 0);
    for (std::size_t v = 0; v < a.n; ++v) region[v] = (sol.system_wins[v] ? 0 : 1) == w;
    if (has_cycle_with_parity(a, region, next, 1 - w))
      return w == 0 ? "System strategy admits an odd cycle" : "Environment strategy admits an even cycle";
  }
  return {};
}

std::vector<bool> brute_force_winners(const ParityGame& g) {
  g.validate();
  Arena a(g);
  std::vector<std::size_t> sys, env;
  for (std::size_t v = 0; v < a.n; ++v) (a.owner[v] == 0 ? sys : env).push_back(v);
  auto enumerate = [&](const std::vector<std::size_t>& owned, const std::function<void(const std::vector<std::size_t>&)>& fn) {
    std::vector<std::size_t> choice(owned.size(), 0);
    while (true) {
      fn(choice);
      std::size_t k = 0;
      while (k < owned.size() && ++choice[k] == a.succ[owned[k]].size()) choice[k++] = 0;
      if (k == owned.size()) return;
    }
  };
  std::vector<bool> win(a.n, false);
  enumerate(sys, [&](const std::vector<std::size_t>& sc) {
    std::vector<bool> beats_all(a.n, true);
    enumerate(env, [&](const std::vector<std::size_t>& ec) {
      std::vector<std::size_t> move(a.n);
      for (std::size_t k = 0; k < sys.size(); ++k) move[sys[k]] = a.succ[sys[k]][sc[k]];
      for (std::size_t k = 0; k < env.size(); ++k) move[env[k]] = a.succ[env[k]][ec[k]];
      for (std::size_t v = 0; v < a.n; ++v) {
        std::vector<int> at(a.n, -1);
        std::vector<std::size_t> path;
        std::size_t u = v;
        while (at[u] < 0) {
          at[u] = static_cast<int>(path.size());
          path.push_back(u);
          u = move[u];
        }
        int mx = -1;
        for (std::size_t k = static_cast<std::size_t>(at[u]); k < path.size(); ++k) mx = std::max(mx, a.pri[path[k]]);
        if (!parity_accepts(mx)) beats_all[v] = false;
      }
    });
    for (std::size_t v = 0; v < a.n; ++v)
      if (beats_all[v]) win[v] = true;
  });
  return win;
}

}  // namespace arbor
