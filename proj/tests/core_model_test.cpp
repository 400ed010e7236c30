#include <algorithm>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "arbor/error.hpp"
#include "arbor/random.hpp"

using namespace arbor;

TEST_SUITE("core_model") {

TEST_CASE("tree5 independence") {
  Architecture a = fixtures::tree5();
  const Alphabet& al = a.alphabet();
  CHECK_FALSE(independent(al, al.letter("a1"), al.letter("a3")));
  CHECK_FALSE(independent(al, al.letter("a2"), al.letter("a2")));
  Alphabet two({"p1", "p2"}, {{"x", {"p1"}}, {"y", {"p2"}}});
  CHECK(independent(two, two.letter("x"), two.letter("y")));
}

TEST_CASE("dependence graph") {
  Architecture a = fixtures::tree5();
  Graph g = dependence_graph(a.alphabet());
  CHECK(g.num_edges() == 3);

  Alphabet disjoint({"p", "q", "r"}, {{"a", {"p"}}, {"b", {"q"}}, {"c", {"r"}}});
  CHECK(dependence_graph(disjoint).num_edges() == 0);

  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    gen::Rng rng(seed);
    Architecture r = gen::random_tca(rng);
    const Alphabet& al = r.alphabet();
    Graph d = dependence_graph(al);
    for (std::size_t i = 0; i < al.num_letters(); ++i)
      for (std::size_t j = 0; j < al.num_letters(); ++j) {
        if (i == j) continue;
        bool meet = (al.domain(letter_id(i)).bits() & al.domain(letter_id(j)).bits()) != 0;
        CHECK(d.adjacent(i, j) == meet);
      }
  }
}

TEST_CASE("validate_tca on tree5 and its perturbation") {
  TcaReport good = validate_tca(fixtures::tree5());
  CHECK(good.valid());
  Architecture bad = fixtures::tree5_broken();
  TcaReport r = validate_tca(bad);
  CHECK_FALSE(r.connectivity_holds());
  // Dropping p3 from a2 also leaves the edge p3-p4 without a shared letter.
  CHECK_FALSE(r.coverage_holds());
  const Alphabet& al = bad.alphabet();
  std::vector<std::string> uncovered;
  for (const auto& e : r.edges)
    if (!e.covered) uncovered.push_back(al.process_name(e.parent) + "-" + al.process_name(e.child));
  CHECK(uncovered == std::vector<std::string>{"p3-p4"});
  auto it = std::find_if(r.letters.begin(), r.letters.end(), [](const auto& l) { return !l.connected; });
  REQUIRE(it != r.letters.end());
  CHECK(al.letter_name(it->letter) == "a2");
  std::vector<std::string> path;
  for (ProcId p : it->broken_path) path.push_back(al.process_name(p));
  CHECK(path == std::vector<std::string>{"p1", "p3", "p4"});
  CHECK_THROWS_AS(bad.require_tree_like(), InputError);
}

TEST_CASE("uncovered edge") {
  Architecture a = fixtures::arch({"r", "c"}, {{"x", {"r"}}, {"y", {"c"}}}, "r", {{"r", "c"}});
  TcaReport rep = validate_tca(a);
  CHECK(rep.connectivity_holds());
  CHECK_FALSE(rep.coverage_holds());
}

TEST_CASE("single process with local letters is valid") {
  Architecture a = fixtures::arch({"p"}, {{"a", {"p"}}, {"b", {"p"}}}, "p", {});
  CHECK(validate_tca(a).valid());
}

// Closure under swapping adjacent independent letters, computed by saturation.
static std::set<Word> swap_fixpoint(const Alphabet& al, const Word& u) {
  std::set<Word> seen{u};
  std::vector<Word> todo{u};
  while (!todo.empty()) {
    Word w = todo.back();
    todo.pop_back();
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (!independent(al, w[i], w[i + 1])) continue;
      Word v = w;
      std::swap(v[i], v[i + 1]);
      if (seen.insert(v).second) todo.push_back(v);
    }
  }
  return seen;
}

TEST_CASE("trace closure") {
  Alphabet two({"p1", "p2"}, {{"a", {"p1"}}, {"b", {"p2"}}, {"c", {"p1", "p2"}}});
  Word ab = two.parse_word("a b");
  auto cl = trace_closure(two, ab, 8);
  CHECK(cl.size() == 2);
  CHECK(trace_closure(two, two.parse_word("a c b"), 8).size() == 1);

  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    gen::Rng rng(seed);
    Architecture r = gen::random_tca(rng);
    Word u;
    for (int k = 0; k < 5; ++k) u.push_back(letter_id(gen::below(rng, r.alphabet().num_letters())));
    auto got = trace_closure(r.alphabet(), u, 8);
    auto want = swap_fixpoint(r.alphabet(), u);
    CHECK(std::set<Word>(got.begin(), got.end()) == want);
    CHECK(std::is_sorted(got.begin(), got.end()));
  }
  CHECK_THROWS_AS(trace_closure(two, two.parse_word("a b a b a"), 4), InputError);
}

TEST_CASE("local letters") {
  AsyncAutomaton plant = io::parse_automaton(io::read_file(fixtures::data("server_client.json")));
  const Alphabet& al = plant.alphabet();
  std::vector<std::string> names;
  for (LetterId a : local_letters(al, al.process("c1"))) names.push_back(al.letter_name(a));
  CHECK(names == std::vector<std::string>{"p1_1", "p2_1"});

  Alphabet shared({"p", "q"}, {{"x", {"p", "q"}}});
  CHECK(local_letters(shared, shared.process("q")).empty());

  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    gen::Rng rng(seed);
    Architecture r = gen::random_tca(rng);
    const Alphabet& a = r.alphabet();
    for (std::size_t p = 0; p < a.num_processes(); ++p) {
      std::vector<LetterId> want;
      for (std::size_t l = 0; l < a.num_letters(); ++l)
        if (a.domain(letter_id(l)).size() == 1 && a.domain(letter_id(l)).contains(proc_id(p)))
          want.push_back(letter_id(l));
      CHECK(local_letters(a, proc_id(p)) == want);
    }
  }
}

TEST_CASE("alphabet rejects bad input") {
  CHECK_THROWS_AS(Alphabet({"p", "p"}, {}), InputError);
  CHECK_THROWS_AS(Alphabet({"p"}, {{"a", {"q"}}}), InputError);
  CHECK_THROWS_AS(Alphabet({"p"}, {{"a", {}}}), InputError);
  CHECK_THROWS_AS(Alphabet({"p", "q"}, {{"a", {"p", "q"}, true}}), InputError);
}

TEST_CASE("process tree") {
  Architecture a = fixtures::tree5();
  const ProcessTree& t = a.tree();
  const Alphabet& al = a.alphabet();
  CHECK(t.root() == al.process("p1"));
  CHECK(t.depth(al.process("p5")) == 2);
  std::vector<std::string> path;
  for (ProcId p : t.path(al.process("p2"), al.process("p4"))) path.push_back(al.process_name(p));
  CHECK(path == std::vector<std::string>{"p2", "p1", "p3", "p4"});
  CHECK_THROWS_AS(ProcessTree(proc_id(0), {proc_id(1), proc_id(0)}), InputError);
}

}
