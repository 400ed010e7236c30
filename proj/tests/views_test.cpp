#include "doctest.h"
#include "fixtures.hpp"
#include "arbor/distribute.hpp"
#include "arbor/random.hpp"
#include "arbor/views.hpp"

using namespace arbor;

namespace {

bool is_subsequence(const Word& sub, const Word& w) {
  std::size_t i = 0;
  for (LetterId a : w)
    if (i < sub.size() && sub[i] == a) ++i;
  return i == sub.size();
}

}  // namespace

TEST_SUITE("views") {

TEST_CASE("view basics") {
  Architecture a = fixtures::tree5();
  const Alphabet& al = a.alphabet();
  ProcSet p5 = ProcSet::single(al.process("p5"));
  CHECK(view(al, p5, {}).empty());
  CHECK(view(al, p5, al.parse_word("a1 a3")) == al.parse_word("a1 a3"));
  CHECK(view(al, ProcSet::single(al.process("p2")), al.parse_word("a3")).empty());
  Word w = al.parse_word("a3 a2 a1 a3");
  CHECK(view(al, al.all_processes(), w) == w);
}

TEST_CASE("parent view") {
  Architecture a = fixtures::tree5();
  const Alphabet& al = a.alphabet();
  Word w = al.parse_word("a3 a1");
  CHECK(parent_view(a, al.process("p1"), w).empty());
  CHECK(parent_view(a, al.process("p3"), w) == w);
  CHECK(parent_view(a, al.process("p5"), al.parse_word("a1 a2")).empty());
}

TEST_CASE("views are subsequences") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    gen::Rng rng(seed);
    Architecture arch = gen::random_tca(rng);
    const Alphabet& al = arch.alphabet();
    Word w;
    for (int i = 0; i < 8; ++i) w.push_back(letter_id(gen::below(rng, al.num_letters())));
    for (std::size_t p = 0; p < al.num_processes(); ++p) {
      Word v = view(al, ProcSet::single(proc_id(p)), w);
      CHECK(is_subsequence(v, w));
      CHECK(is_subsequence(parent_view(arch, proc_id(p), w), v));
    }
  }
}

TEST_CASE("invariants hold on distributions") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    gen::Rng rng(seed);
    Architecture arch = gen::random_tca(rng);
    Dfa dfa = gen::random_diamond_dfa(rng, arch.alphabet());
    Distribution dist(dfa, arch);
    CHECK(check_invariants(dist, {}).ok());
    for (std::size_t len = 0; len <= 3; ++len)
      for (const Word& w : fixtures::words_of_length(arch.alphabet().num_letters(), len)) {
        InvariantReport r = check_invariants(dist, w);
        CHECK_MESSAGE(r.ok(), "seed ", seed, ": ", r.ok() ? "" : r.violation->detail);
        CHECK(check_tdiam_views(dist, w).ok());
      }
  }
}

TEST_CASE("a dropped transition is reported") {
  Architecture a = fixtures::tree5();
  Dfa dfa = io::parse_dfa(io::read_file(fixtures::data("tree5_dfa.json")), a.alphabet());
  Distribution dist(dfa, a);
  AsyncAutomaton m = dist.materialize();
  const Alphabet& al = a.alphabet();
  LetterId a1 = al.letter("a1");
  Tuple from = m.transitions(a1).begin()->first;
  m.remove_transition(a1, from);
  // Definedness fails before any state needs decoding.
  auto decode = [&](LocalState) { return PairState{0, 0}; };
  InvariantReport r = check_invariants(dfa, a, m, al.parse_word("a1"), decode);
  REQUIRE_FALSE(r.ok());
  CHECK(r.violation->kind == InvariantViolation::Kind::Def);
}

}
