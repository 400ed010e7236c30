#include "arbor/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "arbor/error.hpp"

namespace arbor::io {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw InputError((path.empty() ? std::string("/") : path) + ": " + msg);
}

std::string at(const std::string& path, const std::string& key) {
  std::string k;
  for (char c : key) {
    if (c == '~') k += "~0";
    else if (c == '/') k += "~1";
    else k += c;
  }
  return path + "/" + k;
}
std::string at(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

const json& field(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(at(path, key), "missing field");
  return *it;
}

const json* optional_field(const json& j, const std::string& key) {
  if (!j.is_object()) return nullptr;
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

std::string str(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

long integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<long>();
}

const json& array(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

const json& object(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  return j;
}

ProcId process_of(const Alphabet& al, const json& j, const std::string& path) {
  std::string name = str(j, path);
  auto p = al.find_process(name);
  if (!p) fail(path, "unknown process '" + name + "'");
  return *p;
}

LetterId letter_of(const Alphabet& al, const json& j, const std::string& path) {
  std::string name = str(j, path);
  auto a = al.find_letter(name);
  if (!a) fail(path, "unknown letter '" + name + "'");
  return *a;
}

ProcessTree parse_tree(const json& t, const Alphabet& al, const std::string& path) {
  ProcId root = process_of(al, field(t, "root", path), at(path, "root"));
  std::vector<std::pair<ProcId, ProcId>> edges;
  const std::string ep = at(path, "edges");
  const json& e = array(field(t, "edges", path), ep);
  for (std::size_t i = 0; i < e.size(); ++i) {
    const json& pair = array(e[i], at(ep, i));
    if (pair.size() != 2) fail(at(ep, i), "expected [parent, child]");
    edges.emplace_back(process_of(al, pair[0], at(at(ep, i), 0)), process_of(al, pair[1], at(at(ep, i), 1)));
  }
  try {
    return ProcessTree::from_edges(al.num_processes(), root, edges);
  } catch (const InputError& err) {
    fail(path, err.what());
  }
}

json tree_json(const ProcessTree& t, const Alphabet& al) {
  json edges = json::array();
  for (auto [p, c] : t.edges()) edges.push_back({al.process_name(p), al.process_name(c)});
  return {{"root", al.process_name(t.root())}, {"edges", edges}};
}

LocalState state_of(const AsyncAutomaton& aa, ProcId p, const json& j, const std::string& path) {
  std::string name = str(j, path);
  auto s = aa.find_state(p, name);
  if (!s) fail(path, "unknown state '" + name + "' of " + aa.alphabet().process_name(p));
  return *s;
}

json state_tuple(const AsyncAutomaton& aa, ProcSet dom, const Tuple& t) {
  json out = json::array();
  std::size_t i = 0;
  for (ProcId p : dom.members()) out.push_back(aa.state_name(p, t[i++]));
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

Alphabet parse_alphabet(const json& doc) {
  object(doc, "");
  const json& procs = array(field(doc, "processes", ""), "/processes");
  std::vector<std::string> names;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < procs.size(); ++i) {
    names.push_back(str(procs[i], at("/processes", i)));
    if (!seen.insert(names.back()).second) fail(at("/processes", i), "duplicate process '" + names.back() + "'");
  }
  const json& letters = array(field(doc, "letters", ""), "/letters");
  std::vector<LetterSpec> specs;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    const std::string lp = at("/letters", i);
    LetterSpec s;
    s.id = str(field(letters[i], "id", lp), at(lp, "id"));
    const json& dom = array(field(letters[i], "domain", lp), at(lp, "domain"));
    if (dom.empty()) fail(at(lp, "domain"), "empty domain");
    for (std::size_t k = 0; k < dom.size(); ++k) {
      std::string p = str(dom[k], at(at(lp, "domain"), k));
      if (!seen.count(p)) fail(at(at(lp, "domain"), k), "unknown process '" + p + "'");
      s.domain.push_back(std::move(p));
    }
    if (const json* c = optional_field(letters[i], "controllable")) {
      if (!c->is_boolean()) fail(at(lp, "controllable"), "expected a boolean");
      s.controllable = c->get<bool>();
    }
    specs.push_back(std::move(s));
  }
  try {
    return Alphabet(names, specs);
  } catch (const InputError& e) {
    fail("/letters", e.what());
  }
}

Architecture parse_architecture(const json& doc) {
  Alphabet al = parse_alphabet(doc);
  return Architecture(al, parse_tree(field(doc, "tree", ""), al, "/tree"));
}

json to_json(const Alphabet& al) {
  json doc;
  doc["processes"] = al.process_names();
  json letters = json::array();
  for (std::size_t i = 0; i < al.num_letters(); ++i) {
    LetterId a = letter_id(i);
    json dom = json::array();
    for (ProcId p : al.domain(a).members()) dom.push_back(al.process_name(p));
    letters.push_back({{"id", al.letter_name(a)}, {"domain", dom}, {"controllable", al.controllable(a)}});
  }
  doc["letters"] = letters;
  return doc;
}

json to_json(const Architecture& arch) {
  json doc = to_json(arch.alphabet());
  doc["tree"] = tree_json(arch.tree(), arch.alphabet());
  return doc;
}

// ---------------------------------------------------------------------------

Dfa parse_dfa(const json& doc, const Alphabet& al) {
  object(doc, "");
  const json& states = array(field(doc, "states", ""), "/states");
  std::vector<std::string> names;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < states.size(); ++i) {
    names.push_back(str(states[i], at("/states", i)));
    if (!seen.insert(names.back()).second) fail(at("/states", i), "duplicate state '" + names.back() + "'");
  }
  if (names.empty()) fail("/states", "a DFA needs at least one state");
  Dfa dfa(al, names);
  auto state = [&](const json& j, const std::string& path) {
    std::string n = str(j, path);
    auto s = dfa.find_state(n);
    if (!s) fail(path, "unknown state '" + n + "'");
    return *s;
  };
  dfa.set_initial(state(field(doc, "initial", ""), "/initial"));
  const json& acc = array(field(doc, "accepting", ""), "/accepting");
  for (std::size_t i = 0; i < acc.size(); ++i) dfa.set_accepting(state(acc[i], at("/accepting", i)));
  const json& tr = array(field(doc, "transitions", ""), "/transitions");
  for (std::size_t i = 0; i < tr.size(); ++i) {
    const std::string tp = at("/transitions", i);
    const json& t = array(tr[i], tp);
    if (t.size() != 3) fail(tp, "expected [src, letter, dst]");
    StateId s = state(t[0], at(tp, 0));
    LetterId a = letter_of(al, t[1], at(tp, 1));
    StateId d = state(t[2], at(tp, 2));
    if (dfa.delta(s, a) != kNoState && dfa.delta(s, a) != d) fail(tp, "second target for the same state and letter");
    dfa.set_transition(s, a, d);
  }
  return dfa;
}

json to_json(const Dfa& dfa) {
  const Alphabet& al = dfa.alphabet();
  json doc;
  doc["states"] = dfa.state_names();
  doc["initial"] = dfa.state_name(dfa.initial());
  json acc = json::array(), tr = json::array();
  for (StateId s = 0; s < dfa.num_states(); ++s) {
    if (dfa.accepting(s)) acc.push_back(dfa.state_name(s));
    for (std::size_t a = 0; a < al.num_letters(); ++a) {
      StateId t = dfa.delta(s, letter_id(a));
      if (t != kNoState) tr.push_back({dfa.state_name(s), al.letter_name(letter_id(a)), dfa.state_name(t)});
    }
  }
  doc["accepting"] = acc;
  doc["transitions"] = tr;
  return doc;
}

// ---------------------------------------------------------------------------

AsyncAutomaton parse_automaton(const json& doc) {
  Alphabet al = parse_alphabet(doc);
  std::optional<ProcessTree> tree;
  if (const json* t = optional_field(doc, "tree")) tree = parse_tree(*t, al, "/tree");
  AsyncAutomaton aa(al, tree);

  const json& states = object(field(doc, "states", ""), "/states");
  for (std::size_t i = 0; i < al.num_processes(); ++i) {
    ProcId p = proc_id(i);
    const std::string& pn = al.process_name(p);
    const std::string sp = at("/states", pn);
    const json& list = array(field(states, pn, "/states"), sp);
    if (list.empty()) fail(sp, "process needs at least one state");
    std::set<std::string> seen;
    for (std::size_t k = 0; k < list.size(); ++k) {
      std::string n = str(list[k], at(sp, k));
      if (!seen.insert(n).second) fail(at(sp, k), "duplicate state '" + n + "'");
      aa.add_state(p, n);
    }
  }
  for (auto it = states.begin(); it != states.end(); ++it)
    if (!al.find_process(it.key())) fail(at("/states", it.key()), "unknown process");

  const json& init = object(field(doc, "initial", ""), "/initial");
  for (std::size_t i = 0; i < al.num_processes(); ++i) {
    ProcId p = proc_id(i);
    const std::string& pn = al.process_name(p);
    aa.set_initial(p, state_of(aa, p, field(init, pn, "/initial"), at("/initial", pn)));
  }

  const json& trans = object(field(doc, "transitions", ""), "/transitions");
  for (auto it = trans.begin(); it != trans.end(); ++it) {
    const std::string lp = at("/transitions", it.key());
    auto a = al.find_letter(it.key());
    if (!a) fail(lp, "unknown letter");
    std::vector<ProcId> dom = al.domain(*a).members();
    const json& list = array(it.value(), lp);
    for (std::size_t k = 0; k < list.size(); ++k) {
      const std::string tp = at(lp, k);
      const json& pair = array(list[k], tp);
      if (pair.size() != 2) fail(tp, "expected [from tuple, to tuple]");
      Tuple from, to;
      for (int side = 0; side < 2; ++side) {
        const std::string sp = at(tp, static_cast<std::size_t>(side));
        const json& t = array(pair[side], sp);
        if (t.size() != dom.size()) fail(sp, "tuple needs one state per domain process");
        for (std::size_t m = 0; m < dom.size(); ++m)
          (side ? to : from).push_back(state_of(aa, dom[m], t[m], at(sp, m)));
      }
      if (const Tuple* have = aa.delta(*a, from); have && *have != to) fail(tp, "second target for the same tuple");
      aa.add_transition(*a, from, to);
    }
  }

  if (const json* acc = optional_field(doc, "acceptance")) {
    object(*acc, "/acceptance");
    if (const json* per = optional_field(*acc, "perProcess")) {
      const std::string pp = "/acceptance/perProcess";
      object(*per, pp);
      std::vector<LocalAcceptance> accs(al.num_processes());
      for (std::size_t i = 0; i < al.num_processes(); ++i) {
        ProcId p = proc_id(i);
        const std::string& pn = al.process_name(p);
        const std::size_t n = aa.num_states(p);
        accs[i].final.assign(n, false);
        const json* entry = optional_field(*per, pn);
        if (!entry) continue;
        const std::string ep = at(pp, pn);
        if (const json* fin = optional_field(*entry, "final")) {
          array(*fin, at(ep, "final"));
          for (std::size_t k = 0; k < fin->size(); ++k)
            accs[i].final[state_of(aa, p, (*fin)[k], at(at(ep, "final"), k))] = true;
        }
        if (const json* pr = optional_field(*entry, "priority")) {
          std::vector<std::pair<const json*, std::string>> maps;
          if (pr->is_array()) {
            for (std::size_t k = 0; k < pr->size(); ++k) maps.emplace_back(&(*pr)[k], at(at(ep, "priority"), k));
          } else {
            maps.emplace_back(pr, at(ep, "priority"));
          }
          for (auto [m, mp] : maps) {
            object(*m, mp);
            std::vector<int> v(n, 0);
            for (auto jt = m->begin(); jt != m->end(); ++jt) {
              long x = integer(jt.value(), at(mp, jt.key()));
              if (x < 0) fail(at(mp, jt.key()), "negative priority");
              v[state_of(aa, p, json(jt.key()), at(mp, jt.key()))] = static_cast<int>(x);
            }
            accs[i].priorities.push_back(std::move(v));
          }
        }
      }
      for (auto it = per->begin(); it != per->end(); ++it)
        if (!al.find_process(it.key())) fail(at(pp, it.key()), "unknown process");
      aa.set_local_acceptance(std::move(accs));
    } else if (const json* glob = optional_field(*acc, "global")) {
      const std::string gp = "/acceptance/global";
      array(*glob, gp);
      std::set<GlobalState> set;
      for (std::size_t k = 0; k < glob->size(); ++k) {
        const json& t = array((*glob)[k], at(gp, k));
        if (t.size() != al.num_processes()) fail(at(gp, k), "global state needs one entry per process");
        GlobalState g;
        for (std::size_t m = 0; m < t.size(); ++m) g.push_back(state_of(aa, proc_id(m), t[m], at(at(gp, k), m)));
        set.insert(std::move(g));
      }
      aa.set_global_acceptance(std::move(set));
    } else {
      fail("/acceptance", "expected \"perProcess\" or \"global\"");
    }
  }
  return aa;
}

json to_json(const AsyncAutomaton& aa) {
  const Alphabet& al = aa.alphabet();
  json doc = to_json(al);
  if (aa.tree()) doc["tree"] = tree_json(*aa.tree(), al);
  json states = json::object(), init = json::object();
  for (std::size_t i = 0; i < al.num_processes(); ++i) {
    ProcId p = proc_id(i);
    json list = json::array();
    for (std::size_t s = 0; s < aa.num_states(p); ++s) list.push_back(aa.state_name(p, static_cast<LocalState>(s)));
    states[al.process_name(p)] = list;
    if (aa.num_states(p)) init[al.process_name(p)] = aa.state_name(p, aa.initial(p));
  }
  doc["states"] = states;
  doc["initial"] = init;
  json trans = json::object();
  for (std::size_t i = 0; i < al.num_letters(); ++i) {
    LetterId a = letter_id(i);
    json list = json::array();
    for (const auto& [from, to] : aa.transitions(a))
      list.push_back(json::array({state_tuple(aa, al.domain(a), from), state_tuple(aa, al.domain(a), to)}));
    trans[al.letter_name(a)] = list;
  }
  doc["transitions"] = trans;
  switch (aa.acceptance_kind()) {
    case AsyncAutomaton::AcceptanceKind::None:
      break;
    case AsyncAutomaton::AcceptanceKind::Global: {
      if (aa.has_global_predicate()) throw InputError("a predicate acceptance cannot be serialized");
      json list = json::array();
      for (const GlobalState& g : aa.global_acceptance()) {
        json t = json::array();
        for (std::size_t p = 0; p < g.size(); ++p) t.push_back(aa.state_name(proc_id(p), g[p]));
        list.push_back(t);
      }
      doc["acceptance"] = {{"global", list}};
      break;
    }
    case AsyncAutomaton::AcceptanceKind::Local: {
      json per = json::object();
      for (std::size_t i = 0; i < al.num_processes(); ++i) {
        ProcId p = proc_id(i);
        const LocalAcceptance& la = aa.local_acceptance(p);
        json fin = json::array();
        for (std::size_t s = 0; s < la.final.size(); ++s)
          if (la.final[s]) fin.push_back(aa.state_name(p, static_cast<LocalState>(s)));
        json maps = json::array();
        for (const auto& pr : la.priorities) {
          json m = json::object();
          for (std::size_t s = 0; s < pr.size(); ++s) m[aa.state_name(p, static_cast<LocalState>(s))] = pr[s];
          maps.push_back(m);
        }
        json entry = {{"final", fin}};
        if (maps.size() == 1) entry["priority"] = maps[0];
        else if (!maps.empty()) entry["priority"] = maps;
        per[al.process_name(p)] = entry;
      }
      doc["acceptance"] = {{"perProcess", per}};
      break;
    }
  }
  return doc;
}

// ---------------------------------------------------------------------------

Controller parse_controller(const json& doc, const AsyncAutomaton& plant) {
  Controller c{parse_automaton(doc), {}};
  const Alphabet& al = c.automaton.alphabet();
  if (!(al == plant.alphabet())) fail("/letters", "controller alphabet differs from the plant's");
  const json& proj = object(field(doc, "projection", ""), "/projection");
  c.projection.resize(al.num_processes());
  for (std::size_t i = 0; i < al.num_processes(); ++i) {
    ProcId p = proc_id(i);
    const std::string& pn = al.process_name(p);
    const std::string pp = at("/projection", pn);
    const json& m = object(field(proj, pn, "/projection"), pp);
    const std::size_t n = c.automaton.num_states(p);
    c.projection[i].assign(n, 0);
    std::vector<char> set(n, 0);
    for (auto it = m.begin(); it != m.end(); ++it) {
      LocalState cs = state_of(c.automaton, p, json(it.key()), at(pp, it.key()));
      c.projection[i][cs] = state_of(plant, p, it.value(), at(pp, it.key()));
      set[cs] = 1;
    }
    for (std::size_t s = 0; s < n; ++s)
      if (!set[s]) fail(pp, "no projection for state '" + c.automaton.state_name(p, static_cast<LocalState>(s)) + "'");
  }
  return c;
}

json to_json(const Controller& c, const AsyncAutomaton& plant) {
  json doc = to_json(c.automaton);
  doc.erase("acceptance");
  const Alphabet& al = c.automaton.alphabet();
  json proj = json::object();
  for (std::size_t i = 0; i < al.num_processes(); ++i) {
    ProcId p = proc_id(i);
    json m = json::object();
    for (std::size_t s = 0; s < c.automaton.num_states(p); ++s)
      m[c.automaton.state_name(p, static_cast<LocalState>(s))] = plant.state_name(p, c.projection[i][s]);
    proj[al.process_name(p)] = m;
  }
  doc["projection"] = proj;
  return doc;
}

// ---------------------------------------------------------------------------

ParityGame parse_game(const json& doc) {
  object(doc, "");
  ParityGame g;
  const json& pos = array(field(doc, "positions", ""), "/positions");
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    const std::string pp = at("/positions", i);
    std::string id = str(field(pos[i], "id", pp), at(pp, "id"));
    std::string owner = str(field(pos[i], "owner", pp), at(pp, "owner"));
    Owner o;
    if (owner == "system") o = Owner::System;
    else if (owner == "environment") o = Owner::Environment;
    else fail(at(pp, "owner"), "expected \"system\" or \"environment\"");
    long pr = integer(field(pos[i], "priority", pp), at(pp, "priority"));
    if (pr < 0) fail(at(pp, "priority"), "negative priority");
    if (!index.emplace(id, i).second) fail(at(pp, "id"), "duplicate position '" + id + "'");
    g.add_position(id, o, static_cast<int>(pr));
    if (const json* t = optional_field(pos[i], "terminal")) {
      if (!t->is_string() || (*t != "win" && *t != "lose")) fail(at(pp, "terminal"), "expected \"win\" or \"lose\"");
      g.positions.back().terminal_win = *t == "win";
    }
  }
  auto position = [&](const json& j, const std::string& path) {
    std::string id = str(j, path);
    auto it = index.find(id);
    if (it == index.end()) fail(path, "unknown position '" + id + "'");
    return it->second;
  };
  const json& edges = array(field(doc, "edges", ""), "/edges");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string ep = at("/edges", i);
    const json& e = array(edges[i], ep);
    if (e.size() != 2) fail(ep, "expected [from, to]");
    g.add_edge(position(e[0], at(ep, 0)), position(e[1], at(ep, 1)));
  }
  if (g.size() == 0) fail("/positions", "a game needs at least one position");
  g.initial = optional_field(doc, "initial") ? position(doc["initial"], "/initial") : 0;
  try {
    g.validate();
  } catch (const InputError& e) {
    fail("/edges", e.what());
  }
  return g;
}

json to_json(const ParityGame& g) {
  json pos = json::array(), edges = json::array();
  for (const auto& p : g.positions) {
    json j = {{"id", p.id}, {"owner", p.owner == Owner::System ? "system" : "environment"}, {"priority", p.priority}};
    if (p.terminal_win) j["terminal"] = *p.terminal_win ? "win" : "lose";
    pos.push_back(j);
  }
  for (std::size_t u = 0; u < g.size(); ++u)
    for (std::size_t v : g.succ[u]) edges.push_back({g.positions[u].id, g.positions[v].id});
  return {{"positions", pos}, {"edges", edges}, {"initial", g.positions.at(g.initial).id}};
}

json to_json(const ParityGame& g, const GameSolution& sol) {
  json sys = json::array(), env = json::array(), strat = json::object();
  for (std::size_t u = 0; u < g.size(); ++u) {
    (sol.system_wins[u] ? sys : env).push_back(g.positions[u].id);
    if (sol.strategy[u] != kNoMove) strat[g.positions[u].id] = g.positions[sol.strategy[u]].id;
  }
  return {{"winner", sol.system_wins[g.initial] ? "system" : "environment"},
          {"system", sys},
          {"environment", env},
          {"strategy", strat}};
}

// ---------------------------------------------------------------------------

Graph parse_graph(const json& doc) {
  object(doc, "");
  const json& vs = array(field(doc, "vertices", ""), "/vertices");
  std::vector<std::string> names;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    names.push_back(str(vs[i], at("/vertices", i)));
    if (!seen.insert(names.back()).second) fail(at("/vertices", i), "duplicate vertex '" + names.back() + "'");
  }
  Graph g(names);
  const json& es = array(field(doc, "edges", ""), "/edges");
  for (std::size_t i = 0; i < es.size(); ++i) {
    const std::string ep = at("/edges", i);
    const json& e = array(es[i], ep);
    if (e.size() != 2) fail(ep, "expected [u, v]");
    std::size_t uv[2];
    for (int k = 0; k < 2; ++k) {
      std::string n = str(e[k], at(ep, static_cast<std::size_t>(k)));
      auto v = g.find(n);
      if (!v) fail(at(ep, static_cast<std::size_t>(k)), "unknown vertex '" + n + "'");
      uv[k] = *v;
    }
    if (uv[0] == uv[1]) fail(ep, "self-loop");
    g.add_edge(uv[0], uv[1]);
  }
  return g;
}

std::vector<bool> parse_graph_controllable(const json& doc, const Graph& g) {
  std::vector<bool> out;
  const json* c = optional_field(doc, "controllable");
  if (!c) return out;
  array(*c, "/controllable");
  out.assign(g.size(), false);
  for (std::size_t i = 0; i < c->size(); ++i) {
    std::string n = str((*c)[i], at("/controllable", i));
    auto v = g.find(n);
    if (!v) fail(at("/controllable", i), "unknown vertex '" + n + "'");
    out[*v] = true;
  }
  return out;
}

json to_json(const Graph& g) {
  json edges = json::array();
  for (auto [u, v] : g.edges()) edges.push_back({g.name(u), g.name(v)});
  return {{"vertices", g.names()}, {"edges", edges}};
}

json to_json(const TcaReport& r, const Alphabet& al) {
  json letters = json::array(), edges = json::array();
  for (const auto& l : r.letters) {
    json j = {{"letter", al.letter_name(l.letter)}, {"connected", l.connected}};
    if (!l.connected) {
      json path = json::array();
      for (ProcId p : l.broken_path) path.push_back(al.process_name(p));
      j["path"] = path;
    }
    letters.push_back(j);
  }
  for (const auto& e : r.edges)
    edges.push_back({{"parent", al.process_name(e.parent)}, {"child", al.process_name(e.child)}, {"covered", e.covered}});
  return {{"valid", r.valid()},
          {"connectivity", r.connectivity_holds()},
          {"coverage", r.coverage_holds()},
          {"letters", letters},
          {"edges", edges}};
}

json to_json(const Counterexample& cx, const Alphabet& al) {
  auto word = [&](const Word& w) {
    json out = json::array();
    for (LetterId a : w) out.push_back(al.letter_name(a));
    return out;
  };
  return {{"stem", word(cx.stem)}, {"loop", word(cx.loop)}, {"reason", cx.reason}};
}

// ---------------------------------------------------------------------------

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str());
}

}  // namespace arbor::io
