#pragma once

#include <string>

#include "json.hpp"

#include "arbor/async_automaton.hpp"
#include "arbor/control.hpp"
#include "arbor/dfa.hpp"
#include "arbor/parity.hpp"

namespace arbor::io {

using json = nlohmann::json;

/// Parse failures throw InputError naming the offending field as a JSON
/// pointer, e.g. "/letters/2/domain/0: unknown process 'p9'".

Alphabet parse_alphabet(const json& doc);
Architecture parse_architecture(const json& doc);
json to_json(const Alphabet& al);
json to_json(const Architecture& arch);

Dfa parse_dfa(const json& doc, const Alphabet& al);
json to_json(const Dfa& dfa);

/// Architecture fields plus "states", "initial", "transitions" and an
/// optional "acceptance" ("perProcess" local conditions or "global" list).
AsyncAutomaton parse_automaton(const json& doc);
json to_json(const AsyncAutomaton& aa);

/// Automaton document plus "projection": {process: {state: plant state}}.
Controller parse_controller(const json& doc, const AsyncAutomaton& plant);
json to_json(const Controller& c, const AsyncAutomaton& plant);

ParityGame parse_game(const json& doc);
json to_json(const ParityGame& g);
json to_json(const ParityGame& g, const GameSolution& sol);

Graph parse_graph(const json& doc);
/// Controllable flags per vertex ("controllable": [names]), empty when absent.
std::vector<bool> parse_graph_controllable(const json& doc, const Graph& g);
json to_json(const Graph& g);

json to_json(const TcaReport& r, const Alphabet& al);
json to_json(const Counterexample& cx, const Alphabet& al);

/// Deterministic text form (two-space indent, trailing newline).
std::string dump(const json& doc);
/// Throws InputError on malformed JSON.
json parse_text(const std::string& text);
json read_file(const std::string& path);

}  // namespace arbor::io
