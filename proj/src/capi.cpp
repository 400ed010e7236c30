#include "arbor/arbor.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>
#include <variant>

#include "arbor/chordal.hpp"
#include "arbor/control.hpp"
#include "arbor/distribute.hpp"
#include "arbor/error.hpp"
#include "arbor/io.hpp"
#include "arbor/views.hpp"

using arbor::io::json;

struct arbor_arch {
  arbor::Architecture arch;
};
struct arbor_dfa {
  arbor::Dfa dfa;
};
struct arbor_automaton {
  // Either an explicit automaton or a lazily evaluated distribution.
  std::variant<arbor::AsyncAutomaton, std::shared_ptr<const arbor::Distribution>> value;

  const arbor::AutomatonView& view() const {
    if (auto* aa = std::get_if<arbor::AsyncAutomaton>(&value)) return *aa;
    return *std::get<1>(value);
  }
  const arbor::Distribution* dist() const {
    auto* d = std::get_if<1>(&value);
    return d ? d->get() : nullptr;
  }
};
struct arbor_controller {
  arbor::Controller ctrl;
  arbor::AsyncAutomaton plant;  // needed to name projections
};
struct arbor_game {
  arbor::ParityGame game;
};

namespace {

thread_local std::string last_error;

char* copy_out(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void put(char** out, const json& doc) {
  if (out) *out = copy_out(arbor::io::dump(doc));
}

template <class F>
arbor_status guard(F&& f) {
  last_error.clear();
  try {
    return f();
  } catch (const arbor::InputError& e) {
    last_error = e.what();
    return ARBOR_INPUT_ERROR;
  } catch (const arbor::UnsupportedInstance& e) {
    last_error = e.what();
    return ARBOR_UNSUPPORTED;
  } catch (const std::exception& e) {
    last_error = e.what();
    return ARBOR_INTERNAL_ERROR;
  } catch (...) {
    last_error = "unknown exception";
    return ARBOR_INTERNAL_ERROR;
  }
}

arbor_status null_arg(const char* what) {
  last_error = std::string("null argument: ") + what;
  return ARBOR_INPUT_ERROR;
}

std::string local_name(const arbor_automaton& a, arbor::ProcId p, arbor::LocalState s) {
  if (auto* aa = std::get_if<arbor::AsyncAutomaton>(&a.value)) return aa->state_name(p, s);
  const arbor::Distribution& d = *a.dist();
  arbor::PairState ps = d.decode(s);
  return "(" + d.dfa().state_name(ps.s) + "," + d.dfa().state_name(ps.t) + ")";
}

json global_json(const arbor_automaton& a, const arbor::GlobalState& g) {
  const arbor::Alphabet& al = a.view().alphabet();
  json out = json::object();
  for (std::size_t p = 0; p < al.num_processes(); ++p)
    out[al.process_name(arbor::proc_id(p))] = local_name(a, arbor::proc_id(p), g[p]);
  return out;
}

json word_json(const arbor::Alphabet& al, const arbor::Word& w) {
  json out = json::array();
  for (arbor::LetterId x : w) out.push_back(al.letter_name(x));
  return out;
}

arbor::Word parse_word(const arbor::Alphabet& al, const char* text) {
  return al.parse_word(text ? text : "");
}

}  // namespace

extern "C" {

const char* arbor_version(void) { return "0.1.0"; }
const char* arbor_last_error(void) { return last_error.c_str(); }
void arbor_string_free(char* s) { std::free(s); }

arbor_status arbor_arch_parse(const char* text, arbor_arch** out) {
  if (!text || !out) return null_arg("arch_parse");
  return guard([&] {
    *out = new arbor_arch{arbor::io::parse_architecture(arbor::io::parse_text(text))};
    return ARBOR_OK;
  });
}
void arbor_arch_free(arbor_arch* a) { delete a; }

arbor_status arbor_arch_to_json(const arbor_arch* a, char** out) {
  if (!a || !out) return null_arg("arch_to_json");
  return guard([&] {
    put(out, arbor::io::to_json(a->arch));
    return ARBOR_OK;
  });
}

arbor_status arbor_arch_validate(const arbor_arch* a, char** report) {
  if (!a) return null_arg("arch_validate");
  return guard([&] {
    arbor::TcaReport r = arbor::validate_tca(a->arch);
    put(report, arbor::io::to_json(r, a->arch.alphabet()));
    return r.valid() ? ARBOR_OK : ARBOR_NEGATIVE;
  });
}

arbor_status arbor_dfa_parse(const char* text, const arbor_arch* alphabet, arbor_dfa** out) {
  if (!text || !alphabet || !out) return null_arg("dfa_parse");
  return guard([&] {
    *out = new arbor_dfa{arbor::io::parse_dfa(arbor::io::parse_text(text), alphabet->arch.alphabet())};
    return ARBOR_OK;
  });
}
void arbor_dfa_free(arbor_dfa* d) { delete d; }

arbor_status arbor_dfa_to_json(const arbor_dfa* d, char** out) {
  if (!d || !out) return null_arg("dfa_to_json");
  return guard([&] {
    put(out, arbor::io::to_json(d->dfa));
    return ARBOR_OK;
  });
}

arbor_status arbor_dfa_check_diamond(const arbor_dfa* d, char** report) {
  if (!d) return null_arg("dfa_check_diamond");
  return guard([&] {
    auto v = arbor::diamond_violation(d->dfa);
    json r = {{"diamond", !v}};
    if (v) {
      const arbor::Alphabet& al = d->dfa.alphabet();
      auto name = [&](arbor::StateId s) { return s == arbor::kNoState ? json(nullptr) : json(d->dfa.state_name(s)); };
      r["witness"] = {{"state", d->dfa.state_name(v->state)},
                      {"a", al.letter_name(v->a)},
                      {"b", al.letter_name(v->b)},
                      {"ab", name(d->dfa.delta(v->state, arbor::Word{v->a, v->b}))},
                      {"ba", name(d->dfa.delta(v->state, arbor::Word{v->b, v->a}))}};
    }
    put(report, r);
    return v ? ARBOR_NEGATIVE : ARBOR_OK;
  });
}

arbor_status arbor_automaton_parse(const char* text, arbor_automaton** out) {
  if (!text || !out) return null_arg("automaton_parse");
  return guard([&] {
    *out = new arbor_automaton{arbor::io::parse_automaton(arbor::io::parse_text(text))};
    return ARBOR_OK;
  });
}
void arbor_automaton_free(arbor_automaton* a) { delete a; }

arbor_status arbor_automaton_to_json(const arbor_automaton* a, char** out) {
  if (!a || !out) return null_arg("automaton_to_json");
  return guard([&] {
    if (auto* d = a->dist())
      put(out, arbor::io::to_json(d->materialize()));
    else
      put(out, arbor::io::to_json(std::get<arbor::AsyncAutomaton>(a->value)));
    return ARBOR_OK;
  });
}

arbor_status arbor_distribute(const arbor_dfa* d, const arbor_arch* arch, arbor_automaton** out) {
  if (!d || !arch || !out) return null_arg("distribute");
  return guard([&] {
    *out = new arbor_automaton{std::make_shared<const arbor::Distribution>(d->dfa, arch->arch)};
    return ARBOR_OK;
  });
}

arbor_status arbor_simulate(const arbor_automaton* a, const char* word, char** report) {
  if (!a) return null_arg("simulate");
  return guard([&] {
    const arbor::AutomatonView& v = a->view();
    arbor::Word w = parse_word(v.alphabet(), word);
    arbor::AaRun r = arbor::aa_run(v, w);
    json out = {{"word", word_json(v.alphabet(), w)}, {"defined", r.state.has_value()}};
    bool acc = false;
    if (r.state) {
      acc = v.accepting(*r.state);
      out["state"] = global_json(*a, *r.state);
      if (auto* d = a->dist()) out["dfaState"] = d->dfa().state_name(d->global_dfa_state(*r.state));
    } else {
      out["undefinedAt"] = r.undefined_at;
    }
    out["accepted"] = acc;
    put(report, out);
    return acc ? ARBOR_OK : ARBOR_NEGATIVE;
  });
}

arbor_status arbor_equiv(const arbor_automaton* dist, size_t max_len, char** report) {
  if (!dist) return null_arg("equiv");
  return guard([&] {
    const arbor::Distribution* d = dist->dist();
    if (!d) throw arbor::InputError("equiv needs a distributed automaton");
    arbor::EquivReport r = arbor::bounded_equivalence(d->dfa(), *d, max_len);
    json out = {{"equal", r.equal}, {"maxlen", max_len}, {"wordsChecked", r.words_checked}};
    if (r.witness) {
      out["witness"] = word_json(d->alphabet(), *r.witness);
      out["dfaAccepts"] = arbor::accepts(d->dfa(), *r.witness);
    }
    put(report, out);
    return r.equal ? ARBOR_OK : ARBOR_NEGATIVE;
  });
}

arbor_status arbor_invariants(const arbor_automaton* dist, const char* word, char** report) {
  if (!dist) return null_arg("invariants");
  return guard([&] {
    const arbor::Distribution* d = dist->dist();
    if (!d) throw arbor::InputError("invariants needs a distributed automaton");
    arbor::Word w = parse_word(d->alphabet(), word);
    arbor::InvariantReport r = arbor::check_invariants(d->dfa(), d->architecture(), *d, w,
                                                       [d](arbor::LocalState l) { return d->decode(l); });
    json out = {{"ok", r.ok()}, {"prefixesChecked", r.prefixes_checked}};
    if (r.violation) {
      const auto& v = *r.violation;
      json j = {{"kind", arbor::to_string(v.kind)}, {"prefixLength", v.prefix_len}, {"detail", v.detail}};
      if (v.proc) j["process"] = d->alphabet().process_name(*v.proc);
      out["violation"] = j;
    }
    put(report, out);
    return r.ok() ? ARBOR_OK : ARBOR_NEGATIVE;
  });
}

arbor_status arbor_chordal_to_tca(const char* graph_json, char** out) {
  if (!graph_json || !out) return null_arg("chordal_to_tca");
  return guard([&] {
    json doc = arbor::io::parse_text(graph_json);
    arbor::Graph g = arbor::io::parse_graph(doc);
    std::vector<bool> ctl = arbor::io::parse_graph_controllable(doc, g);
    arbor::ChordalResult cr = arbor::is_chordal(g);
    if (!cr.chordal) {
      json cyc = json::array();
      for (std::size_t v : cr.cycle) cyc.push_back(g.name(v));
      put(out, {{"chordal", false}, {"chordlessCycle", cyc}});
      return ARBOR_NEGATIVE;
    }
    put(out, arbor::io::to_json(arbor::tca_from_dependence(g, ctl)));
    return ARBOR_OK;
  });
}

arbor_status arbor_synthesize(const arbor_automaton* plant, int verify_stages, arbor_controller** out,
                              char** report) {
  if (!plant) return null_arg("synthesize");
  return guard([&] {
    auto* aa = std::get_if<arbor::AsyncAutomaton>(&plant->value);
    if (!aa) throw arbor::InputError("synthesize needs an explicit plant");
    arbor::ControlOptions opts;
    opts.verify_stages = verify_stages != 0;
    arbor::ControlResult r = arbor::solve_control(*aa, opts);
    put(report, {{"controllable", r.controllable}, {"log", r.log}});
    if (out) *out = r.controller ? new arbor_controller{*r.controller, *aa} : nullptr;
    return r.controllable ? ARBOR_OK : ARBOR_NEGATIVE;
  });
}

arbor_status arbor_controller_parse(const char* text, const arbor_automaton* plant, arbor_controller** out) {
  if (!text || !plant || !out) return null_arg("controller_parse");
  return guard([&] {
    auto* aa = std::get_if<arbor::AsyncAutomaton>(&plant->value);
    if (!aa) throw arbor::InputError("controllers refer to an explicit plant");
    *out = new arbor_controller{arbor::io::parse_controller(arbor::io::parse_text(text), *aa), *aa};
    return ARBOR_OK;
  });
}
void arbor_controller_free(arbor_controller* c) { delete c; }

arbor_status arbor_controller_to_json(const arbor_controller* c, char** out) {
  if (!c || !out) return null_arg("controller_to_json");
  return guard([&] {
    put(out, arbor::io::to_json(c->ctrl, c->plant));
    return ARBOR_OK;
  });
}

arbor_status arbor_verify(const arbor_automaton* plant, const arbor_controller* c, char** report) {
  if (!plant || !c) return null_arg("verify");
  return guard([&] {
    auto* aa = std::get_if<arbor::AsyncAutomaton>(&plant->value);
    if (!aa) throw arbor::InputError("verify needs an explicit plant");
    arbor::ControllerCheck chk = arbor::check_controller(*aa, c->ctrl);
    json out = {{"valid", chk.ok}};
    if (!chk.ok) {
      out["condition"] = chk.condition;
      out["violation"] = chk.violation;
      out["winning"] = false;
      put(report, out);
      return ARBOR_NEGATIVE;
    }
    arbor::WinningVerdict v = arbor::verify_winning(*aa, c->ctrl);
    out["winning"] = v.winning;
    out["exploredStates"] = v.explored_states;
    if (v.counterexample) out["counterexample"] = arbor::io::to_json(*v.counterexample, aa->alphabet());
    put(report, out);
    return v.winning ? ARBOR_OK : ARBOR_NEGATIVE;
  });
}

arbor_status arbor_game_parse(const char* text, arbor_game** out) {
  if (!text || !out) return null_arg("game_parse");
  return guard([&] {
    *out = new arbor_game{arbor::io::parse_game(arbor::io::parse_text(text))};
    return ARBOR_OK;
  });
}
void arbor_game_free(arbor_game* g) { delete g; }

arbor_status arbor_game_solve(const arbor_game* g, char** report) {
  if (!g) return null_arg("game_solve");
  return guard([&] {
    arbor::GameSolution sol = arbor::solve_parity_game(g->game);
    std::string err = arbor::check_solution(g->game, sol);
    if (!err.empty()) throw arbor::IntegrityError("solver self-check: " + err);
    put(report, arbor::io::to_json(g->game, sol));
    return sol.system_wins[g->game.initial] ? ARBOR_OK : ARBOR_NEGATIVE;
  });
}

}  // extern "C"
