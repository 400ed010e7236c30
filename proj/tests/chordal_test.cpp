#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "arbor/chordal.hpp"
#include "arbor/error.hpp"
#include "arbor/random.hpp"

using namespace arbor;

namespace {

Graph named(std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> edges) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
  Graph g(names);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

// Maximal cliques by checking every vertex subset.
std::set<std::vector<std::size_t>> cliques_oracle(const Graph& g) {
  std::size_t n = g.size();
  std::vector<std::vector<std::size_t>> all;
  for (std::uint32_t m = 1; m < (1u << n); ++m) {
    std::vector<std::size_t> vs;
    for (std::size_t v = 0; v < n; ++v)
      if (m >> v & 1) vs.push_back(v);
    bool clique = true;
    for (std::size_t i = 0; i < vs.size() && clique; ++i)
      for (std::size_t j = i + 1; j < vs.size(); ++j) clique = clique && g.adjacent(vs[i], vs[j]);
    if (clique) all.push_back(vs);
  }
  std::set<std::vector<std::size_t>> out;
  for (const auto& c : all) {
    bool maximal = std::none_of(all.begin(), all.end(), [&](const auto& d) {
      return d.size() > c.size() && std::includes(d.begin(), d.end(), c.begin(), c.end());
    });
    if (maximal) out.insert(c);
  }
  return out;
}

std::vector<std::size_t> uf_components(const Graph& g, std::vector<std::size_t>& rep) {
  rep.resize(g.size());
  std::iota(rep.begin(), rep.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) { return rep[x] == x ? x : rep[x] = find(rep[x]); };
  for (auto [u, v] : g.edges()) rep[find(u)] = find(v);
  for (std::size_t v = 0; v < g.size(); ++v) rep[v] = find(v);
  return rep;
}

}  // namespace

TEST_SUITE("chordal") {

TEST_CASE("triangle and square") {
  Graph k3 = named(3, {{0, 1}, {1, 2}, {0, 2}});
  CHECK(is_chordal(k3).chordal);
  Graph c4 = named(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  ChordalResult r = is_chordal(c4);
  CHECK_FALSE(r.chordal);
  std::vector<std::size_t> cyc = r.cycle;
  std::sort(cyc.begin(), cyc.end());
  CHECK(cyc == std::vector<std::size_t>{0, 1, 2, 3});
}

TEST_CASE("tree5 dependence graph") {
  Graph g = dependence_graph(fixtures::tree5().alphabet());
  CHECK(is_chordal(g).chordal);
  CHECK(is_connected(g));
  Architecture one = tca_from_dependence(g);
  CHECK(one.alphabet().num_processes() == 1);
  CHECK(dependence_graph(one.alphabet()) == g);
}

TEST_CASE("peo and chordless cycle witnesses on random graphs") {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    gen::Rng rng(seed);
    Graph g = gen::random_graph(rng, 2 + gen::below(rng, 6), 0.5);
    ChordalResult r = is_chordal(g);
    if (r.chordal) {
      CHECK(is_peo(g, r.peo));
    } else {
      const auto& c = r.cycle;
      REQUIRE(c.size() >= 4);
      for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = i + 1; j < c.size(); ++j) {
          bool consecutive = j == i + 1 || (i == 0 && j == c.size() - 1);
          CHECK(g.adjacent(c[i], c[j]) == consecutive);
        }
    }
  }
}

TEST_CASE("triangle maps to one process") {
  Architecture a = tca_from_dependence(named(3, {{0, 1}, {1, 2}, {0, 2}}));
  CHECK(a.alphabet().num_processes() == 1);
  for (std::size_t l = 0; l < 3; ++l) CHECK(a.alphabet().is_local(letter_id(l)));
}

TEST_CASE("path maps to two cliques") {
  Graph g = named(3, {{0, 1}, {1, 2}});
  auto cl = maximal_cliques(g);
  CHECK(std::set<std::vector<std::size_t>>(cl.begin(), cl.end()) == cliques_oracle(g));
  Architecture a = tca_from_dependence(g);
  CHECK(a.alphabet().num_processes() == 2);
  CHECK(a.alphabet().domain(a.alphabet().letter("b")).size() == 2);
  CHECK(validate_tca(a).valid());
}

TEST_CASE("cliques and clique trees on random chordal graphs") {
  int chordal = 0;
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    gen::Rng rng(seed);
    Graph g = gen::random_graph(rng, 1 + gen::below(rng, 7), 0.6);
    if (!is_chordal(g).chordal || !is_connected(g)) continue;
    ++chordal;
    auto cl = maximal_cliques(g);
    CHECK(std::set<std::vector<std::size_t>>(cl.begin(), cl.end()) == cliques_oracle(g));
    CliqueTree t = clique_tree(g);
    CHECK(t.edges.size() + 1 == t.cliques.size());
    Architecture a = tca_from_dependence(g);
    CHECK(validate_tca(a).valid());
    CHECK(dependence_graph(a.alphabet()) == g);
  }
  CHECK(chordal > 20);
}

TEST_CASE("components") {
  Graph full = named(3, {{0, 1}, {1, 2}});
  CHECK(components(full).size() == 1);
  Graph empty = named(4, {});
  CHECK(components(empty).size() == 4);
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    gen::Rng rng(seed);
    Graph g = gen::random_graph(rng, 1 + gen::below(rng, 8), 0.25);
    std::vector<std::size_t> rep;
    uf_components(g, rep);
    auto comps = components(g);
    std::set<std::size_t> roots(rep.begin(), rep.end());
    CHECK(comps.size() == roots.size());
    for (const auto& c : comps)
      for (std::size_t v : c) CHECK(rep[v] == rep[c.front()]);
  }
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(tca_from_dependence(named(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}})), InputError);
  CHECK_THROWS_AS(tca_from_dependence(named(2, {})), InputError);
}

TEST_CASE("forest decomposition") {
  Alphabet al({"p", "q", "r"}, {{"a", {"p"}}, {"b", {"q", "r"}}, {"c", {"r"}}});
  auto parts = forest_decompose(al);
  REQUIRE(parts.size() == 2);
  CHECK(parts[0].letter_names() == std::vector<std::string>{"a"});
  CHECK(parts[1].letter_names() == std::vector<std::string>{"b", "c"});
  CHECK(parts[0].process_names() == std::vector<std::string>{"p"});
}

}
