#include "arbor/chordal.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <tuple>

#include "arbor/error.hpp"

namespace arbor {

std::vector<std::size_t> lex_bfs(const Graph& g) {
  const std::size_t n = g.size();
  std::vector<std::vector<std::size_t>> label(n);
  std::vector<char> done(n, 0);
  std::vector<std::size_t> order;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t best = n;
    for (std::size_t v = 0; v < n; ++v)
      if (!done[v] && (best == n || label[v] > label[best])) best = v;
    done[best] = 1;
    order.push_back(best);
    for (std::size_t u : g.neighbors(best))
      if (!done[u]) label[u].push_back(n - step);
  }
  return order;
}

bool is_peo(const Graph& g, const std::vector<std::size_t>& order) {
  const std::size_t n = g.size();
  if (order.size() != n) return false;
  std::vector<std::size_t> pos(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (order[i] >= n || pos[order[i]] != n) return false;
    pos[order[i]] = i;
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<std::size_t> later;
    for (std::size_t u : g.neighbors(v))
      if (pos[u] > pos[v]) later.push_back(u);
    for (std::size_t i = 0; i < later.size(); ++i)
      for (std::size_t j = i + 1; j < later.size(); ++j)
        if (!g.adjacent(later[i], later[j])) return false;
  }
  return true;
}

namespace {

// For each v and each pair x, y of non-adjacent neighbours, a shortest x-y
// path avoiding v and the rest of N(v) closes a chordless cycle through v.
std::vector<std::size_t> chordless_cycle(const Graph& g) {
  const std::size_t n = g.size();
  for (std::size_t v = 0; v < n; ++v) {
    const auto& nv = g.neighbors(v);
    for (std::size_t i = 0; i < nv.size(); ++i)
      for (std::size_t j = i + 1; j < nv.size(); ++j) {
        std::size_t x = nv[i], y = nv[j];
        if (g.adjacent(x, y)) continue;
        std::vector<char> blocked(n, 0);
        blocked[v] = 1;
        for (std::size_t u : nv) blocked[u] = 1;
        blocked[x] = blocked[y] = 0;
        std::vector<std::size_t> pred(n, n);
        std::deque<std::size_t> queue{x};
        pred[x] = x;
        while (!queue.empty() && pred[y] == n) {
          std::size_t u = queue.front();
          queue.pop_front();
          for (std::size_t w : g.neighbors(u))
            if (!blocked[w] && pred[w] == n) {
              pred[w] = u;
              queue.push_back(w);
            }
        }
        if (pred[y] == n) continue;
        std::vector<std::size_t> cycle{v};
        std::vector<std::size_t> path;
        for (std::size_t u = y; u != x; u = pred[u]) path.push_back(u);
        path.push_back(x);
        cycle.insert(cycle.end(), path.rbegin(), path.rend());
        return cycle;
      }
  }
  return {};
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

}  // namespace

ChordalResult is_chordal(const Graph& g) {
  ChordalResult r;
  auto order = lex_bfs(g);
  std::reverse(order.begin(), order.end());
  if (is_peo(g, order)) {
    r.chordal = true;
    r.peo = std::move(order);
    return r;
  }
  r.cycle = chordless_cycle(g);
  if (r.cycle.size() < 4) throw IntegrityError("LexBFS rejected the graph but no chordless cycle was found");
  return r;
}

std::vector<std::vector<std::size_t>> components(const Graph& g) {
  UnionFind uf(g.size());
  for (auto [u, v] : g.edges()) uf.unite(u, v);
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> slot(g.size(), g.size());
  for (std::size_t v = 0; v < g.size(); ++v) {
    std::size_t r = uf.find(v);
    if (slot[r] == g.size()) {
      slot[r] = out.size();
      out.emplace_back();
    }
    out[slot[r]].push_back(v);
  }
  return out;
}

bool is_connected(const Graph& g) { return components(g).size() <= 1; }

std::vector<std::vector<std::size_t>> maximal_cliques(const Graph& g) {
  ChordalResult cr = is_chordal(g);
  if (!cr.chordal) throw InputError("not triangulated");
  const std::size_t n = g.size();
  std::vector<std::size_t> pos(n);
  for (std::size_t i = 0; i < n; ++i) pos[cr.peo[i]] = i;
  std::vector<std::vector<std::size_t>> cand;
  for (std::size_t v : cr.peo) {
    std::vector<std::size_t> c{v};
    for (std::size_t u : g.neighbors(v))
      if (pos[u] > pos[v]) c.push_back(u);
    std::sort(c.begin(), c.end());
    cand.push_back(std::move(c));
  }
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t i = 0; i < cand.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < cand.size() && !dominated; ++j) {
      if (i == j) continue;
      bool sub = std::includes(cand[j].begin(), cand[j].end(), cand[i].begin(), cand[i].end());
      dominated = sub && (cand[j].size() > cand[i].size() || j < i);
    }
    if (!dominated) out.push_back(cand[i]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

CliqueTree clique_tree(const Graph& g) {
  CliqueTree t;
  t.cliques = maximal_cliques(g);
  struct Cand {
    std::size_t w, i, j;
  };
  std::vector<Cand> cands;
  for (std::size_t i = 0; i < t.cliques.size(); ++i)
    for (std::size_t j = i + 1; j < t.cliques.size(); ++j) {
      std::vector<std::size_t> sep;
      std::set_intersection(t.cliques[i].begin(), t.cliques[i].end(), t.cliques[j].begin(), t.cliques[j].end(),
                            std::back_inserter(sep));
      if (!sep.empty()) cands.push_back({sep.size(), i, j});
    }
  std::stable_sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
    if (a.w != b.w) return a.w > b.w;
    return std::tie(a.i, a.j) < std::tie(b.i, b.j);
  });
  UnionFind uf(t.cliques.size());
  for (const Cand& c : cands)
    if (uf.unite(c.i, c.j)) t.edges.emplace_back(c.i, c.j);
  return t;
}

Architecture tca_from_dependence(const Graph& g, const std::vector<bool>& controllable) {
  if (g.size() == 0) throw InputError("empty graph");
  ChordalResult cr = is_chordal(g);
  if (!cr.chordal) throw InputError("not triangulated");
  if (!is_connected(g)) throw InputError("use forest_decompose first");
  CliqueTree ct = clique_tree(g);
  const std::size_t m = ct.cliques.size();
  std::vector<std::string> procs;
  for (std::size_t i = 0; i < m; ++i) procs.push_back("k" + std::to_string(i));
  std::vector<LetterSpec> letters;
  for (std::size_t v = 0; v < g.size(); ++v) {
    LetterSpec s;
    s.id = g.name(v);
    for (std::size_t i = 0; i < m; ++i)
      if (std::binary_search(ct.cliques[i].begin(), ct.cliques[i].end(), v)) s.domain.push_back(procs[i]);
    s.controllable = v < controllable.size() && controllable[v];
    letters.push_back(std::move(s));
  }
  // Orient the clique tree away from clique 0.
  std::vector<std::vector<std::size_t>> adj(m);
  for (auto [i, j] : ct.edges) {
    adj[i].push_back(j);
    adj[j].push_back(i);
  }
  std::vector<std::pair<ProcId, ProcId>> edges;
  std::vector<char> seen(m, 0);
  std::deque<std::size_t> queue{0};
  seen[0] = 1;
  while (!queue.empty()) {
    std::size_t u = queue.front();
    queue.pop_front();
    std::sort(adj[u].begin(), adj[u].end());
    for (std::size_t v : adj[u])
      if (!seen[v]) {
        seen[v] = 1;
        edges.emplace_back(proc_id(u), proc_id(v));
        queue.push_back(v);
      }
  }
  Alphabet al(procs, letters);
  return Architecture(al, ProcessTree::from_edges(m, proc_id(0), edges));
}

std::vector<Alphabet> forest_decompose(const Alphabet& alphabet) {
  std::vector<Alphabet> out;
  for (const auto& comp : components(dependence_graph(alphabet))) {
    ProcSet used;
    std::vector<LetterSpec> letters;
    for (std::size_t v : comp) {
      used |= alphabet.domain(letter_id(v));
      letters.push_back(alphabet.spec(letter_id(v)));
    }
    std::vector<std::string> procs;
    for (ProcId p : used.members()) procs.push_back(alphabet.process_name(p));
    out.emplace_back(procs, letters);
  }
  return out;
}

}  // namespace arbor
