// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "arbor/chordal.hpp"
#include "arbor/control.hpp"
#include "arbor/distribute.hpp"
#include "arbor/error.hpp"
#include "arbor/io.hpp"
#include "arbor/parity.hpp"
#include "arbor/random.hpp"
#include "arbor/views.hpp"

#ifndef ARBOR_DATA_DIR
#define ARBOR_DATA_DIR "data"
#endif

using namespace arbor;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, const char* title, bool ok, const std::string& detail, double secs) {
  std::printf("[%s] criterion %d %s: %s (%.2f s)\n", ok ? "PASS" : "FAIL", id, title, detail.c_str(), secs);
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string data(const std::string& name) { return std::string(ARBOR_DATA_DIR) + "/" + name; }

// ---------------------------------------------------------------------------

void criterion1() {
  auto t0 = Clock::now();
  std::string detail;
  bool ok = true;
  try {
    Architecture good = io::parse_architecture(io::read_file(data("tree5.json")));
    Architecture bad = io::parse_architecture(io::read_file(data("tree5_broken.json")));
    TcaReport rg = validate_tca(good), rb = validate_tca(bad);
    ok = rg.valid() && !rb.connectivity_holds();
    std::string path;
    for (const auto& l : rb.letters) {
      if (l.connected) continue;
      path = bad.alphabet().letter_name(l.letter) + ":";
      for (ProcId p : l.broken_path) path += " " + bad.alphabet().process_name(p);
    }
    ok = ok && path == "a2: p1 p3 p4";
    detail = std::string("tree5 ") + (rg.valid() ? "valid" : "INVALID") + ", perturbed broken letter " + path;
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  double secs = seconds_since(t0);
  report(1, "tree5 validation", ok && secs < 1.0, detail, secs);
}

// ---------------------------------------------------------------------------

// Every word up to max_len, depth first. A branch where both runs are
// undefined is cut: both sides reject every extension.
struct WordOracle {
  const Dfa& dfa;
  const AutomatonView& aa;
  std::size_t max_len;
  std::size_t mismatches = 0;
  std::size_t words = 0;

  void go(StateId s, const std::optional<GlobalState>& g, std::size_t len) {
    ++words;
    bool da = s != kNoState && dfa.accepting(s);
    bool ab = g && aa.accepting(*g);
    if (da != ab) ++mismatches;
    if (len == max_len || (s == kNoState && !g)) return;
    for (std::size_t a = 0; a < dfa.alphabet().num_letters(); ++a) {
      StateId s2 = s == kNoState ? kNoState : dfa.delta(s, letter_id(a));
      std::optional<GlobalState> g2;
      if (g) g2 = aa.step(*g, letter_id(a));
      go(s2, g2, len + 1);
    }
  }
};

struct DistInstance {
  Architecture arch;
  Dfa dfa;
};

DistInstance make_instance(std::uint64_t seed) {
  gen::Rng rng(seed);
  gen::TcaOptions to;
  to.max_processes = 5;
  to.max_letters = 6;
  Architecture arch = gen::random_tca(rng, to);
  Dfa dfa = gen::random_diamond_dfa(rng, arch.alphabet(), 6);
  return {std::move(arch), std::move(dfa)};
}

void criteria2and3() {
  auto t0 = Clock::now();
  std::size_t mismatched = 0, words = 0, errors = 0, over = 0, max_count = 0, max_count_bound = 1;
  std::string first;
  for (std::uint64_t i = 0; i < 100; ++i) {
    try {
      DistInstance in = make_instance(20000 + i);
      Distribution dist(in.dfa, in.arch);
      WordOracle o{in.dfa, dist, 7};
      o.go(in.dfa.initial(), dist.initial_state(), 0);
      words += o.words;
      if (o.mismatches) {
        ++mismatched;
        if (first.empty()) first = "seed " + std::to_string(20000 + i);
      }
      std::size_t n = in.dfa.num_states();
      for (std::size_t c : dist.reachable_local_counts()) {
        if (c > n * n) ++over;
        if (c > max_count) {
          max_count = c;
          max_count_bound = n * n;
        }
      }
    } catch (const std::exception& e) {
      ++errors;
      if (first.empty()) first = e.what();
    }
  }
  double secs = seconds_since(t0);
  std::ostringstream d2;
  d2 << "100 instances, " << words << " words compared, " << mismatched << " mismatching, " << errors << " errors";
  if (!first.empty()) d2 << " (first: " << first << ")";
  report(2, "distribution equivalence", mismatched == 0 && errors == 0 && secs < 60.0, d2.str(), secs);
  std::ostringstream d3;
  d3 << over << " processes above n^2; largest count " << max_count << " with n^2 = " << max_count_bound;
  report(3, "size bound", over == 0 && errors == 0, d3.str(), secs);
}

// ---------------------------------------------------------------------------

// Materialized automaton with one transition altered. Returns the word that
// reaches the altered entry, or nullopt if nothing could be altered.
struct Mutant {
  AsyncAutomaton aa;
  Word word;
};

std::optional<Mutant> mutate(const Distribution& dist, gen::Rng& rng) {
  const AsyncAutomaton orig = dist.materialize();
  AsyncAutomaton aa = orig;
  const Alphabet& al = aa.alphabet();
  std::vector<std::pair<LetterId, Tuple>> entries;
  for (std::size_t a = 0; a < al.num_letters(); ++a)
    for (const auto& [from, to] : aa.transitions(letter_id(a))) entries.push_back({letter_id(a), from});
  if (entries.empty()) return std::nullopt;
  auto [a, from] = entries[gen::below(rng, entries.size())];
  Tuple to = *aa.delta(a, from);
  ProcSet dom = al.domain(a);
  std::vector<ProcId> procs = dom.members();
  std::size_t k = gen::below(rng, procs.size());
  ProcId p = procs[k];
  const Dfa& dfa = dist.dfa();
  std::size_t n = dfa.num_states();
  bool drop = n == 1 || gen::coin(rng, 0.2);
  if (!drop) {
    // Any other pair state: existing or freshly added.
    StateId s = static_cast<StateId>(gen::below(rng, n)), t = static_cast<StateId>(gen::below(rng, n));
    std::string name = "(" + dfa.state_name(s) + "," + dfa.state_name(t) + ")";
    if (name == aa.state_name(p, to[k])) {
      t = static_cast<StateId>((t + 1) % n);
      name = "(" + dfa.state_name(s) + "," + dfa.state_name(t) + ")";
    }
    auto existing = aa.find_state(p, name);
    to[k] = existing ? *existing : aa.add_state(p, name);
  }
  aa.remove_transition(a, from);
  if (!drop) aa.add_transition(a, from, to);

  // Shortest word reaching a global state whose projection is `from`, then a.
  std::map<GlobalState, Word> seen{{orig.initial_state(), {}}};
  std::vector<GlobalState> queue{orig.initial_state()};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    GlobalState g = queue[head];
    Word w = seen[g];
    if (project(g, dom) == from) {
      w.push_back(a);
      return Mutant{std::move(aa), std::move(w)};
    }
    for (std::size_t b = 0; b < al.num_letters(); ++b) {
      auto g2 = orig.step(g, letter_id(b));
      if (!g2 || seen.count(*g2)) continue;
      Word w2 = w;
      w2.push_back(letter_id(b));
      seen.emplace(*g2, w2);
      queue.push_back(*g2);
    }
  }
  return std::nullopt;
}

void criterion4() {
  auto t0 = Clock::now();
  std::size_t violations = 0, errors = 0, prefixes = 0, defined_words = 0;
  std::string first;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    try {
      DistInstance in = make_instance(40000 + i);
      gen::Rng rng(90000 + i);
      Distribution dist(in.dfa, in.arch);
      // Mostly defined moves of the DFA, sometimes any letter.
      Word w;
      std::size_t len = gen::below(rng, 9);
      const std::size_t m = in.arch.alphabet().num_letters();
      StateId s = in.dfa.initial();
      for (std::size_t k = 0; k < len; ++k) {
        std::vector<LetterId> defined;
        for (std::size_t a = 0; a < m && s != kNoState; ++a)
          if (in.dfa.delta(s, letter_id(a)) != kNoState) defined.push_back(letter_id(a));
        LetterId a = !defined.empty() && gen::coin(rng, 0.85) ? defined[gen::below(rng, defined.size())]
                                                               : letter_id(gen::below(rng, m));
        w.push_back(a);
        if (s != kNoState) s = in.dfa.delta(s, a);
      }
      if (s != kNoState) ++defined_words;
      InvariantReport r =
          check_invariants(in.dfa, in.arch, dist, w, [&dist](LocalState l) { return dist.decode(l); });
      prefixes += r.prefixes_checked;
      if (!r.ok()) {
        ++violations;
        if (first.empty()) first = "seed " + std::to_string(40000 + i) + ": " + r.violation->detail;
      }
    } catch (const std::exception& e) {
      ++errors;
      if (first.empty()) first = e.what();
    }
  }

  // Mutation trials on the materialized automaton.
  std::size_t trials = 0, detected = 0;
  for (std::uint64_t i = 0; trials < 100 && i < 1000; ++i) {
    DistInstance in = make_instance(60000 + i);
    gen::Rng rng(70000 + i);
    Distribution dist(in.dfa, in.arch);
    std::optional<Mutant> m;
    try {
      m = mutate(dist, rng);
    } catch (const std::exception&) {
      continue;
    }
    if (!m) continue;
    ++trials;
    const AsyncAutomaton& aa = m->aa;
    const Dfa& dfa = in.dfa;
    // Materialized ids are per process and the decoder gets no process, so
    // re-encode every "(s,t)" state as s*n+t.
    std::size_t n = dfa.num_states();
    const Alphabet& al = aa.alphabet();
    AsyncAutomaton enc(al, aa.tree());
    std::vector<std::vector<LocalState>> remap(al.num_processes());
    for (std::size_t p = 0; p < al.num_processes(); ++p) {
      ProcId pp = proc_id(p);
      std::map<LocalState, LocalState> by_code;
      for (std::size_t code = 0; code < n * n; ++code) {
        std::string name =
            "(" + dfa.state_name(static_cast<StateId>(code / n)) + "," + dfa.state_name(static_cast<StateId>(code % n)) + ")";
        enc.add_state(pp, name);
      }
      for (std::size_t s = 0; s < aa.num_states(pp); ++s) {
        const std::string& name = aa.state_name(pp, static_cast<LocalState>(s));
        remap[p].push_back(*enc.find_state(pp, name));
      }
      enc.set_initial(pp, remap[p][aa.initial(pp)]);
    }
    for (std::size_t a = 0; a < al.num_letters(); ++a) {
      ProcSet dom = al.domain(letter_id(a));
      std::vector<ProcId> procs = dom.members();
      for (const auto& [from, to] : aa.transitions(letter_id(a))) {
        Tuple f = from, t = to;
        for (std::size_t k = 0; k < procs.size(); ++k) {
          f[k] = remap[idx(procs[k])][from[k]];
          t[k] = remap[idx(procs[k])][to[k]];
        }
        enc.add_transition(letter_id(a), f, t);
      }
    }
    InvariantReport r = check_invariants(dfa, in.arch, enc, m->word, [n](LocalState l) {
      return PairState{static_cast<StateId>(l / n), static_cast<StateId>(l % n)};
    });
    if (!r.ok()) ++detected;
  }
  double secs = seconds_since(t0);
  std::ostringstream d;
  d << "1000 instances (" << defined_words << " words defined), " << prefixes << " prefixes, " << violations << " violations, " << errors << " errors; mutations detected "
    << detected << "/" << trials;
  if (!first.empty()) d << " (first: " << first << ")";
  bool ok = violations == 0 && errors == 0 && trials == 100 && detected * 100 >= 99 * trials;
  report(4, "view invariants", ok, d.str(), secs);
}

// ---------------------------------------------------------------------------

using Adj = std::vector<std::vector<bool>>;

bool connected(const Adj& g) {
  std::size_t n = g.size();
  if (n == 0) return true;
  std::vector<bool> seen(n);
  std::vector<std::size_t> st{0};
  seen[0] = true;
  while (!st.empty()) {
    std::size_t u = st.back();
    st.pop_back();
    for (std::size_t v = 0; v < n; ++v)
      if (g[u][v] && !seen[v]) seen[v] = true, st.push_back(v);
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

// Chordal iff no vertex subset of size >= 4 induces a cycle.
bool chordal_oracle(const Adj& g) {
  std::size_t n = g.size();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) < 4) continue;
    std::vector<std::size_t> vs;
    for (std::size_t v = 0; v < n; ++v)
      if (mask >> v & 1) vs.push_back(v);
    bool deg2 = true;
    for (std::size_t u : vs) {
      int d = 0;
      for (std::size_t v : vs) d += g[u][v];
      deg2 = deg2 && d == 2;
    }
    if (!deg2) continue;
    Adj sub(vs.size(), std::vector<bool>(vs.size()));
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = 0; j < vs.size(); ++j) sub[i][j] = g[vs[i]][vs[j]];
    if (connected(sub)) return false;
  }
  return true;
}

std::uint32_t canonical(const Adj& g) {
  std::size_t n = g.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::uint32_t best = ~0u;
  do {
    std::uint32_t code = 0, bit = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j, ++bit)
        if (g[perm[i]][perm[j]]) code |= 1u << bit;
    best = std::min(best, code);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

Adj adj_of(const Graph& g) {
  Adj a(g.size(), std::vector<bool>(g.size()));
  for (auto [u, v] : g.edges()) a[u][v] = a[v][u] = true;
  return a;
}

void criterion5() {
  auto t0 = Clock::now();
  const std::size_t expected[] = {0, 1, 1, 2, 5, 15, 58};
  std::size_t failed = 0, classes = 0;
  std::string counts, first;
  for (std::size_t n = 1; n <= 6; ++n) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) pairs.push_back({i, j});
    std::set<std::uint32_t> seen;
    for (std::uint32_t mask = 0; mask < (1u << pairs.size()); ++mask) {
      Adj a(n, std::vector<bool>(n));
      for (std::size_t k = 0; k < pairs.size(); ++k)
        if (mask >> k & 1) a[pairs[k].first][pairs[k].second] = a[pairs[k].second][pairs[k].first] = true;
      if (!connected(a) || !chordal_oracle(a)) continue;
      if (!seen.insert(canonical(a)).second) continue;
      std::vector<std::string> names;
      for (std::size_t v = 0; v < n; ++v) names.push_back("v" + std::to_string(v));
      Graph g(names);
      for (auto [u, v] : pairs)
        if (a[u][v]) g.add_edge(u, v);
      try {
        Architecture arch = tca_from_dependence(g);
        bool ok = validate_tca(arch).valid() && adj_of(dependence_graph(arch.alphabet())) == a &&
                  arch.alphabet().letter_names() == names;
        if (!ok) {
          ++failed;
          if (first.empty()) first = "graph mask " + std::to_string(mask) + " on " + std::to_string(n);
        }
      } catch (const std::exception& e) {
        ++failed;
        if (first.empty()) first = e.what();
      }
    }
    classes += seen.size();
    counts += (n > 1 ? "," : "") + std::to_string(seen.size());
    if (seen.size() != expected[n]) ++failed;
  }
  std::size_t bad_random = 0;
  for (std::uint64_t i = 0; i < 200; ++i) {
    gen::Rng rng(50000 + i);
    Architecture arch = gen::random_tca(rng);
    Adj a = adj_of(dependence_graph(arch.alphabet()));
    if (!validate_tca(arch).valid() || !connected(a) || !chordal_oracle(a)) ++bad_random;
  }
  double secs = seconds_since(t0);
  std::ostringstream d;
  d << "class counts " << counts << " (" << classes << " graphs), " << failed << " failures; random TCAs bad "
    << bad_random << "/200";
  if (!first.empty()) d << " (first: " << first << ")";
  report(5, "chordal round trips", failed == 0 && bad_random == 0, d.str(), secs);
}

// ---------------------------------------------------------------------------

void criterion6() {
  auto t0 = Clock::now();
  std::size_t combos = 0, disagreements = 0, too_big = 0;
  double worst = 0;
  std::vector<std::vector<int>> all;
  for (int n = 0; n <= 2; ++n) {
    std::vector<int> c(n + 1, 1);
    while (true) {
      all.push_back(c);
      std::size_t k = 0;
      while (k < c.size() && c[k] == 3) c[k++] = 1;
      if (k == c.size()) break;
      ++c[k];
    }
  }
  for (const auto& counts : all) {
    ++combos;
    IarAutomaton iar(counts);
    gen::Rng rng(60000 + combos);
    for (int t = 0; t < 500; ++t) {
      auto tuple = [&] {
        std::vector<int> v;
        for (int c : counts) v.push_back(static_cast<int>(gen::below(rng, c)));
        return v;
      };
      std::size_t sl = gen::below(rng, 9), ll = 1 + gen::below(rng, 8);
      std::vector<std::vector<int>> stem, loop;
      for (std::size_t k = 0; k < sl; ++k) stem.push_back(tuple());
      for (std::size_t k = 0; k < ll; ++k) loop.push_back(tuple());
      bool expect = true;
      for (std::size_t c = 0; c < counts.size(); ++c) {
        int m = 0;
        for (const auto& v : loop) m = std::max(m, v[c]);
        expect = expect && m % 2 == 0;
      }
      auto s = iar.initial();
      for (const auto& v : stem) s = iar.step(s, v);
      // Iterate the loop until its entry state repeats, then read the cycle.
      std::map<IarAutomaton::State, std::size_t> entry;
      std::vector<int> maxima;
      while (!entry.count(s)) {
        entry[s] = maxima.size();
        int m = 0;
        for (const auto& v : loop) {
          s = iar.step(s, v);
          m = std::max(m, iar.priority(s));
        }
        maxima.push_back(m);
      }
      int m = 0;
      for (std::size_t k = entry[s]; k < maxima.size(); ++k) m = std::max(m, maxima[k]);
      if ((m % 2 == 0) != expect) ++disagreements;
    }
    double states = static_cast<double>(iar.explore_all());
    double bound = iar_bound(counts);
    worst = std::max(worst, states / bound);
    if (states > 4 * bound) ++too_big;
  }
  double secs = seconds_since(t0);
  std::ostringstream d;
  d << combos << " condition vectors x 500 lassos, " << disagreements << " disagreements; worst states/formula "
    << worst << ", " << too_big << " above 4x";
  report(6, "IAR conjunction", disagreements == 0 && too_big == 0, d.str(), secs);
}

// ---------------------------------------------------------------------------

void criterion7() {
  auto t0 = Clock::now();
  std::string detail;
  bool ok = false;
  try {
    AsyncAutomaton plant = io::parse_automaton(io::read_file(data("server_client.json")));
    Controller rr = io::parse_controller(io::read_file(data("server_client_round_robin.json")), plant);
    Controller naive = io::parse_controller(io::read_file(data("server_client_naive.json")), plant);
    bool rr_ok = check_controller(plant, rr).ok && verify_winning(plant, rr).winning;
    WinningVerdict nv = verify_winning(plant, naive);
    bool naive_loses = check_controller(plant, naive).ok && !nv.winning;
    ControlResult r = solve_control(plant);
    bool synth_ok = r.controllable && r.controller && check_controller(plant, *r.controller).ok &&
                    verify_winning(plant, *r.controller).winning;
    // The synthesized controller survives its document round trip.
    if (synth_ok) {
      Controller back = io::parse_controller(io::to_json(*r.controller, plant), plant);
      synth_ok = verify_winning(plant, back).winning;
    }
    ok = rr_ok && naive_loses && synth_ok;
    detail = std::string("round-robin ") + (rr_ok ? "winning" : "NOT winning") + ", naive " +
             (naive_loses ? "losing" : "NOT losing");
    if (nv.counterexample)
      detail += " (loop " + plant.alphabet().format_word(nv.counterexample->loop) + ")";
    detail += std::string(", synthesize ") + (synth_ok ? "controllable, verified" : "FAILED");
  } catch (const std::exception& e) {
    detail = e.what();
  }
  double secs = seconds_since(t0);
  report(7, "server-client n=3", ok && secs < 300.0, detail, secs);
}

// ---------------------------------------------------------------------------

// Every controller that keeps at most one controllable action enabled per
// local state (plus all uncontrollable ones); first winning one.
std::optional<Controller> positional_oracle(const AsyncAutomaton& plant) {
  const Alphabet& al = plant.alphabet();
  std::vector<std::vector<std::vector<std::optional<LetterId>>>> options(al.num_processes());
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t p = 0; p < al.num_processes(); ++p) {
    options[p].resize(plant.num_states(proc_id(p)));
    for (std::size_t s = 0; s < plant.num_states(proc_id(p)); ++s) {
      auto& o = options[p][s];
      o.push_back(std::nullopt);
      for (LetterId a : plant.enabled_local(proc_id(p), static_cast<LocalState>(s)))
        if (al.controllable(a)) o.push_back(a);
      if (o.size() > 1) slots.push_back({p, s});
    }
  }
  std::vector<std::size_t> digit(slots.size(), 0);
  while (true) {
    std::vector<std::vector<std::optional<LetterId>>> choice(al.num_processes());
    for (std::size_t p = 0; p < al.num_processes(); ++p) choice[p].assign(plant.num_states(proc_id(p)), std::nullopt);
    for (std::size_t k = 0; k < slots.size(); ++k)
      choice[slots[k].first][slots[k].second] = options[slots[k].first][slots[k].second][digit[k]];
    Controller c = positional_controller(plant, choice);
    if (verify_winning(plant, c).winning) return c;
    std::size_t k = 0;
    while (k < slots.size() && ++digit[k] == options[slots[k].first][slots[k].second].size()) digit[k++] = 0;
    if (k == slots.size()) return std::nullopt;
  }
}

bool certified(const AsyncAutomaton& plant, const Controller& c) {
  return check_controller(plant, c).ok && verify_winning(plant, c).winning;
}

void criterion8() {
  auto t0 = Clock::now();
  std::size_t bad = 0, yes = 0;
  std::string first;
  for (std::uint64_t i = 0; i < 50; ++i) {
    gen::Rng rng(80000 + i);
    gen::PlantOptions o;
    o.processes = 2;
    o.max_states = 4;
    o.max_priority = 2;
    o.short_leaves = true;
    AsyncAutomaton plant = gen::random_plant(rng, o);
    try {
      ControlResult r = solve_control(plant);
      bool consistent = r.controllable ? (r.controller && certified(plant, *r.controller)) : !positional_oracle(plant);
      yes += r.controllable;
      if (!consistent) {
        ++bad;
        if (first.empty()) first = "seed " + std::to_string(80000 + i);
      }
    } catch (const std::exception& e) {
      ++bad;
      if (first.empty()) first = "seed " + std::to_string(80000 + i) + ": " + e.what();
    }
  }
  double secs = seconds_since(t0);
  std::ostringstream d;
  d << "50 plants, " << yes << " controllable, " << bad << " inconsistent";
  if (!first.empty()) d << " (first: " << first << ")";
  report(8, "two-process consistency", bad == 0, d.str(), secs);
}

void criterion9() {
  auto t0 = Clock::now();
  std::size_t bad = 0, yes = 0;
  std::string first;
  for (std::uint64_t i = 0; i < 100; ++i) {
    gen::Rng rng(81000 + i);
    gen::PlantOptions o;
    o.processes = 1;
    o.max_states = 6;
    AsyncAutomaton plant = gen::random_plant(rng, o);
    try {
      ControlResult r = solve_control(plant);
      bool oracle = positional_oracle(plant).has_value();
      yes += r.controllable;
      bool ok = r.controllable == oracle && (!r.controllable || (r.controller && certified(plant, *r.controller)));
      if (!ok) {
        ++bad;
        if (first.empty()) first = "seed " + std::to_string(81000 + i);
      }
    } catch (const std::exception& e) {
      ++bad;
      if (first.empty()) first = "seed " + std::to_string(81000 + i) + ": " + e.what();
    }
  }
  double secs = seconds_since(t0);
  std::ostringstream d;
  d << "100 plants, " << yes << " controllable, " << bad << " mismatches";
  if (!first.empty()) d << " (first: " << first << ")";
  report(9, "single-process endgame", bad == 0, d.str(), secs);
}

void criterion10() {
  auto t0 = Clock::now();
  std::size_t bad = 0, yes = 0, cyclic = 0;
  std::string first;
  for (std::uint64_t i = 0; i < 30; ++i) {
    gen::Rng rng(82000 + i);
    gen::PlantOptions o;
    o.processes = 1 + i % 2;
    o.max_states = 3;
    o.leaf_cycle = true;
    AsyncAutomaton plant = gen::random_plant(rng, o);
    ProcId leaf = proc_id(o.processes - 1);
    try {
      if (!lshort_bound(plant, leaf).short_ok()) ++cyclic;
      LshortInfo info = make_lshort(plant, leaf);
      ControlResult after = solve_control(info.plant);
      yes += after.controllable;
      bool ok;
      if (o.processes == 1) {
        // Exact oracle on both sides.
        bool before = positional_oracle(plant).has_value();
        ok = before == after.controllable && before == positional_oracle(info.plant).has_value();
      } else if (after.controllable) {
        // A controller for the unfolded plant must lift to a winning one.
        Controller lifted = lift_lshort_controller(info, plant, *after.controller);
        ok = certified(plant, lifted);
      } else {
        ok = !positional_oracle(plant);
      }
      if (!ok) {
        ++bad;
        if (first.empty()) first = "seed " + std::to_string(82000 + i);
      }
    } catch (const std::exception& e) {
      ++bad;
      if (first.empty()) first = "seed " + std::to_string(82000 + i) + ": " + e.what();
    }
  }
  double secs = seconds_since(t0);
  std::ostringstream d;
  d << "30 plants (" << cyclic << " with local cycles), " << yes << " controllable after unfolding, " << bad
    << " disagreements";
  if (!first.empty()) d << " (first: " << first << ")";
  report(10, "local-cycle unfolding", bad == 0 && cyclic == 30, d.str(), secs);
}

}  // namespace

int main() {
  criterion1();
  criteria2and3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
