#include <functional>
#include <map>

#include "doctest.h"
#include "arbor/error.hpp"
#include "arbor/parity.hpp"
#include "arbor/random.hpp"

using namespace arbor;

namespace {

// In a game where only Environment moves, can it win from v? It wins by
// reaching a losing terminal or a cycle whose top priority is odd.
bool env_wins_one_player(const ParityGame& g, const std::vector<std::vector<std::size_t>>& succ, std::size_t v) {
  std::size_t n = g.size();
  auto reach = [&](std::size_t from, const std::function<bool(std::size_t)>& allowed) {
    std::vector<bool> seen(n);
    std::vector<std::size_t> st{from};
    seen[from] = true;
    while (!st.empty()) {
      std::size_t u = st.back();
      st.pop_back();
      for (std::size_t w : succ[u])
        if (!seen[w] && allowed(w)) seen[w] = true, st.push_back(w);
    }
    return seen;
  };
  auto all = reach(v, [](std::size_t) { return true; });
  for (std::size_t u = 0; u < n; ++u) {
    if (!all[u]) continue;
    if (succ[u].empty() && !*g.positions[u].terminal_win) return true;
    int d = g.positions[u].priority;
    if (d % 2 == 0) continue;
    // Back to u through positions of priority at most d.
    for (std::size_t w : succ[u]) {
      if (g.positions[w].priority > d) continue;
      auto r = reach(w, [&](std::size_t x) { return g.positions[x].priority <= d; });
      if (w == u || r[u]) return true;
    }
  }
  return false;
}

std::vector<bool> winners_oracle(const ParityGame& g) {
  std::size_t n = g.size();
  std::vector<std::size_t> sys;
  for (std::size_t v = 0; v < n; ++v)
    if (g.positions[v].owner == Owner::System && !g.succ[v].empty()) sys.push_back(v);
  std::vector<bool> win(n, false);
  std::vector<std::size_t> choice(sys.size(), 0);
  while (true) {
    auto succ = g.succ;
    for (std::size_t k = 0; k < sys.size(); ++k) succ[sys[k]] = {g.succ[sys[k]][choice[k]]};
    for (std::size_t v = 0; v < n; ++v)
      if (!win[v] && !env_wins_one_player(g, succ, v)) win[v] = true;
    std::size_t k = 0;
    while (k < sys.size() && ++choice[k] == g.succ[sys[k]].size()) choice[k++] = 0;
    if (k == sys.size()) break;
  }
  return win;
}

ParityGame random_game(gen::Rng& rng, std::size_t n, int priorities) {
  ParityGame g;
  for (std::size_t v = 0; v < n; ++v)
    g.add_position("v" + std::to_string(v), gen::coin(rng, 0.5) ? Owner::System : Owner::Environment,
                   static_cast<int>(gen::below(rng, static_cast<std::size_t>(priorities))));
  for (std::size_t v = 0; v < n; ++v) {
    std::size_t k = gen::below(rng, 3);
    for (std::size_t e = 0; e < k; ++e) g.add_edge(v, gen::below(rng, n));
    if (g.succ[v].empty()) g.positions[v].terminal_win = gen::coin(rng, 0.5);
  }
  return g;
}

}  // namespace

TEST_SUITE("parity") {

TEST_CASE("self loops") {
  ParityGame even;
  even.add_position("v", Owner::System, 2);
  even.add_edge(0, 0);
  CHECK(solve_parity_game(even).system_wins[0]);
  ParityGame odd;
  odd.add_position("v", Owner::System, 1);
  odd.add_edge(0, 0);
  CHECK_FALSE(solve_parity_game(odd).system_wins[0]);
}

TEST_CASE("untagged dead ends are rejected") {
  ParityGame g;
  g.add_position("v", Owner::System, 0);
  CHECK_THROWS_AS(g.validate(), InputError);
}

TEST_CASE("solver matches positional enumeration on small games") {
  int games = 0;
  for (std::uint64_t seed = 1; seed <= 400; ++seed) {
    gen::Rng rng(seed);
    ParityGame g = random_game(rng, 1 + gen::below(rng, 5), 1 + static_cast<int>(gen::below(rng, 3)));
    GameSolution sol = solve_parity_game(g);
    CHECK(check_solution(g, sol).empty());
    CHECK(sol.system_wins == winners_oracle(g));
    CHECK(brute_force_winners(g) == sol.system_wins);
    ++games;
  }
  CHECK(games == 400);
}

TEST_CASE("larger games satisfy the certificate check") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    gen::Rng rng(seed);
    ParityGame g = random_game(rng, 200, 6);
    CHECK(check_solution(g, solve_parity_game(g)).empty());
  }
}

TEST_CASE("priority compression keeps parity and order") {
  std::vector<int> p{3, 4, 6, 7, 9, 10};
  std::vector<int> c = compress_priorities(p);
  CHECK(c == std::vector<int>{1, 2, 2, 3, 3, 4});
  CHECK(compress_priorities({0, 2, 4}) == std::vector<int>{0, 0, 0});
}

TEST_CASE("single condition passes through") {
  IarAutomaton iar({3});
  CHECK(iar.max_priority() == 2);
  auto s = iar.step(iar.initial(), {2});
  CHECK(iar.priority(s) == 2);
  CHECK(iar.explore_all() <= 3 + 1);
}

TEST_CASE("conjunction on random lassos") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    gen::Rng rng(seed);
    std::vector<int> counts;
    std::size_t k = 2 + gen::below(rng, 2);
    for (std::size_t i = 0; i < k; ++i) counts.push_back(1 + static_cast<int>(gen::below(rng, 4)));
    IarAutomaton iar(counts);
    for (int t = 0; t < 50; ++t) {
      auto tuple = [&] {
        std::vector<int> v;
        for (int c : counts) v.push_back(static_cast<int>(gen::below(rng, static_cast<std::size_t>(c))));
        return v;
      };
      std::vector<std::vector<int>> stem(gen::below(rng, 5)), loop(1 + gen::below(rng, 5));
      for (auto& v : stem) v = tuple();
      for (auto& v : loop) v = tuple();
      bool want = true;
      for (std::size_t c = 0; c < counts.size(); ++c) {
        int m = 0;
        for (const auto& v : loop) m = std::max(m, v[c]);
        want = want && m % 2 == 0;
      }
      auto s = iar.initial();
      for (const auto& v : stem) s = iar.step(s, v);
      std::map<IarAutomaton::State, std::size_t> at;
      std::vector<int> maxima;
      while (!at.count(s)) {
        at[s] = maxima.size();
        int m = 0;
        for (const auto& v : loop) m = std::max(m, iar.priority(s = iar.step(s, v)));
        maxima.push_back(m);
      }
      int m = 0;
      for (std::size_t i = at[s]; i < maxima.size(); ++i) m = std::max(m, maxima[i]);
      CHECK((m % 2 == 0) == want);
    }
  }
}

TEST_CASE("state counts against the closed form") {
  for (std::vector<int> counts : std::vector<std::vector<int>>{{2, 2}, {3, 3}, {3, 3, 3}, {1, 3, 2}}) {
    IarAutomaton iar(counts);
    CHECK(static_cast<double>(iar.explore_all()) <= 4 * iar_bound(counts));
  }
  CHECK_THROWS_AS(IarAutomaton({}), InputError);
  CHECK_THROWS_AS(IarAutomaton({2, 0}), InputError);
}

}
