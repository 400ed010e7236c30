// arbor command-line front end. Talks to the library only through arbor.h.
// JSON results go to stdout (or --output), diagnostics to stderr.
// Exit codes: 0 positive, 1 negative, 2 input error, 3 internal/unsupported.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "arbor/arbor.h"

namespace {

using json = nlohmann::ordered_json;

enum class Level { Debug, Info, Warn, Error, Quiet };

Level log_level() {
  const char* env = std::getenv("ARBOR_LOG_LEVEL");
  std::string v = env ? env : "warn";
  if (v == "debug") return Level::Debug;
  if (v == "info") return Level::Info;
  if (v == "error") return Level::Error;
  if (v == "quiet") return Level::Quiet;
  return Level::Warn;
}

void log(Level lv, const std::string& msg) {
  static const Level threshold = log_level();
  static const char* names[] = {"debug", "info", "warn", "error"};
  if (lv >= threshold && lv != Level::Quiet) std::cerr << "[" << names[static_cast<int>(lv)] << "] " << msg << "\n";
}

struct Failure {
  arbor_status status;
  std::string file;
  std::string message;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure{ARBOR_INPUT_ERROR, path, "cannot read file"};
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Treat anything other than OK/NEGATIVE as fatal for this input.
arbor_status check(arbor_status st, const std::string& file) {
  if (st != ARBOR_OK && st != ARBOR_NEGATIVE) throw Failure{st, file};
  return st;
}

struct Str {
  char* p = nullptr;
  ~Str() { arbor_string_free(p); }
  std::string get() const { return p ? p : ""; }
};

template <class T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  ~Handle() { Free(p); }
};
using Arch = Handle<arbor_arch, arbor_arch_free>;
using Dfa = Handle<arbor_dfa, arbor_dfa_free>;
using Aut = Handle<arbor_automaton, arbor_automaton_free>;
using Ctl = Handle<arbor_controller, arbor_controller_free>;
using Game = Handle<arbor_game, arbor_game_free>;

struct Output {
  std::string path;
  void write(const std::string& text) const {
    if (path.empty() || path == "-") {
      std::cout << text;
      return;
    }
    std::ofstream out(path);
    if (!out) throw Failure{ARBOR_INPUT_ERROR, path, "cannot write file"};
    out << text;
  }
};

int exit_code(arbor_status st) {
  switch (st) {
    case ARBOR_OK: return 0;
    case ARBOR_NEGATIVE: return 1;
    case ARBOR_INPUT_ERROR: return 2;
    default: return 3;
  }
}

int report_failure(const Failure& f) {
  std::string msg = f.message.empty() ? arbor_last_error() : f.message;
  std::string pointer;
  if (!msg.empty() && msg[0] == '/') {
    auto colon = msg.find(": ");
    pointer = msg.substr(0, colon);
    if (colon != std::string::npos) msg = msg.substr(colon + 2);
  }
  const char* kind = f.status == ARBOR_INPUT_ERROR ? "input" : f.status == ARBOR_UNSUPPORTED ? "unsupported" : "internal";
  json doc = {{"error", kind}, {"file", f.file}, {"pointer", pointer}, {"message", msg}};
  std::cout << doc.dump(2) << "\n";
  std::cerr << f.file << (pointer.empty() ? "" : ":" + pointer) << ": " << msg << "\n";
  return exit_code(f.status);
}

json parsed(const Str& s) { return json::parse(s.get()); }
std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

void load_dist(const std::string& arch_path, const std::string& dfa_path, Arch& arch, Dfa& dfa, Aut& aut) {
  check(arbor_arch_parse(slurp(arch_path).c_str(), &arch.p), arch_path);
  check(arbor_dfa_parse(slurp(dfa_path).c_str(), arch.p, &dfa.p), dfa_path);
  check(arbor_distribute(dfa.p, arch.p, &aut.p), dfa_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributed automata and controller synthesis over tree architectures"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(arbor_version()));

  Output out;
  std::uint64_t seed = 1;
  std::size_t maxlen = 7;
  app.add_option("-o,--output", out.path, "Write the JSON result here instead of stdout");
  app.add_option("--seed", seed, "Seed for sampled words (invariants)");
  app.add_option("--maxlen", maxlen, "Word length bound (equiv, invariants)");

  std::string arch_path, dfa_path, plant_path, ctl_path, graph_path, game_path, word;
  bool has_word = false;
  std::size_t samples = 200;
  bool verify_stages = false;

  auto* validate = app.add_subcommand("validate", "Check tree-likeness of an architecture (and I-diamond of a DFA)");
  validate->add_option("arch,--arch", arch_path, "Architecture JSON")->required();
  validate->add_option("--dfa", dfa_path, "DFA JSON over the same alphabet");

  auto* distribute = app.add_subcommand("distribute", "Build the distributed automaton of a DFA");
  distribute->add_option("arch,--arch", arch_path)->required();
  distribute->add_option("dfa,--dfa", dfa_path)->required();

  auto* simulate = app.add_subcommand("simulate", "Run a word on a distributed DFA or an explicit automaton");
  simulate->add_option("arch,--arch", arch_path, "Architecture JSON (with dfa) or automaton JSON (alone)")->required();
  simulate->add_option("dfa,--dfa", dfa_path);
  simulate->add_option("--word", word, "Space-separated letters")->required();

  auto* equiv = app.add_subcommand("equiv", "Compare a DFA with its distribution on all words up to --maxlen");
  equiv->add_option("arch,--arch", arch_path)->required();
  equiv->add_option("dfa,--dfa", dfa_path)->required();

  auto* invariants = app.add_subcommand("invariants", "Check the view invariants along a word or sampled words");
  invariants->add_option("arch,--arch", arch_path)->required();
  invariants->add_option("dfa,--dfa", dfa_path)->required();
  auto* word_opt = invariants->add_option("--word", word, "Check this word only");
  invariants->add_option("--words,--samples", samples, "Number of sampled words when --word is absent");

  auto* chordal = app.add_subcommand("chordal2tca", "Build an architecture from a triangulated dependence graph");
  chordal->add_option("graph,--graph", graph_path)->required();

  auto* synth = app.add_subcommand("synthesize", "Decide controllability and build a controller");
  synth->add_option("plant,--plant", plant_path)->required();
  synth->add_flag("--verify-stages", verify_stages, "Check every intermediate controller");

  auto* verify = app.add_subcommand("verify", "Check that a controller is valid and winning for a plant");
  verify->add_option("plant,--plant", plant_path)->required();
  verify->add_option("controller,--controller", ctl_path, "Controller document or synthesize result")->required();

  auto* game = app.add_subcommand("solve-game", "Solve a parity game");
  game->add_option("game,--game", game_path)->required();

  CLI11_PARSE(app, argc, argv);
  has_word = word_opt->count() > 0;

  try {
    if (*validate) {
      Arch arch;
      check(arbor_arch_parse(slurp(arch_path).c_str(), &arch.p), arch_path);
      Str rep;
      arbor_status st = check(arbor_arch_validate(arch.p, &rep.p), arch_path);
      json doc = {{"architecture", parsed(rep)}};
      if (!dfa_path.empty()) {
        Dfa dfa;
        check(arbor_dfa_parse(slurp(dfa_path).c_str(), arch.p, &dfa.p), dfa_path);
        Str drep;
        if (check(arbor_dfa_check_diamond(dfa.p, &drep.p), dfa_path) == ARBOR_NEGATIVE) st = ARBOR_NEGATIVE;
        doc["dfa"] = parsed(drep);
      }
      out.write(dump(doc));
      return exit_code(st);
    }
    if (*distribute) {
      Arch arch;
      Dfa dfa;
      Aut aut;
      load_dist(arch_path, dfa_path, arch, dfa, aut);
      Str doc;
      check(arbor_automaton_to_json(aut.p, &doc.p), dfa_path);
      out.write(doc.get());
      return 0;
    }
    if (*simulate) {
      Arch arch;
      Dfa dfa;
      Aut aut;
      if (dfa_path.empty())
        check(arbor_automaton_parse(slurp(arch_path).c_str(), &aut.p), arch_path);
      else
        load_dist(arch_path, dfa_path, arch, dfa, aut);
      Str rep;
      arbor_status st = check(arbor_simulate(aut.p, word.c_str(), &rep.p), "--word");
      out.write(rep.get());
      return exit_code(st);
    }
    if (*equiv) {
      Arch arch;
      Dfa dfa;
      Aut aut;
      load_dist(arch_path, dfa_path, arch, dfa, aut);
      Str rep;
      arbor_status st = check(arbor_equiv(aut.p, maxlen, &rep.p), dfa_path);
      out.write(rep.get());
      return exit_code(st);
    }
    if (*invariants) {
      Arch arch;
      Dfa dfa;
      Aut aut;
      load_dist(arch_path, dfa_path, arch, dfa, aut);
      if (has_word) {
        Str rep;
        arbor_status st = check(arbor_invariants(aut.p, word.c_str(), &rep.p), "--word");
        out.write(rep.get());
        return exit_code(st);
      }
      // Sample words over the alphabet; the letter list comes from the architecture document.
      Str archdoc;
      check(arbor_arch_to_json(arch.p, &archdoc.p), arch_path);
      std::vector<std::string> letters;
      const json adoc = parsed(archdoc);
      for (const json& l : adoc["letters"]) letters.push_back(l["id"].get<std::string>());
      std::mt19937_64 rng(seed);
      std::size_t checked = 0;
      for (std::size_t i = 0; i < samples && !letters.empty(); ++i) {
        std::size_t len = static_cast<std::size_t>(rng() % (maxlen + 1));
        std::string w;
        for (std::size_t k = 0; k < len; ++k) w += (k ? " " : "") + letters[rng() % letters.size()];
        Str rep;
        arbor_status st = check(arbor_invariants(aut.p, w.c_str(), &rep.p), "--word");
        ++checked;
        if (st == ARBOR_NEGATIVE) {
          out.write(dump({{"ok", false}, {"wordsChecked", checked}, {"word", w}, {"report", parsed(rep)}}));
          return 1;
        }
      }
      out.write(dump({{"ok", true}, {"wordsChecked", checked}, {"seed", seed}, {"maxlen", maxlen}}));
      return 0;
    }
    if (*chordal) {
      Str rep;
      arbor_status st = check(arbor_chordal_to_tca(slurp(graph_path).c_str(), &rep.p), graph_path);
      out.write(rep.get());
      return exit_code(st);
    }
    if (*synth) {
      Aut plant;
      check(arbor_automaton_parse(slurp(plant_path).c_str(), &plant.p), plant_path);
      Ctl ctl;
      Str rep;
      arbor_status st = check(arbor_synthesize(plant.p, verify_stages ? 1 : 0, &ctl.p, &rep.p), plant_path);
      json r = parsed(rep);
      for (const json& line : r["log"]) log(Level::Info, line.get<std::string>());
      json doc = {{"controllable", st == ARBOR_OK}};
      if (ctl.p) {
        Str c;
        check(arbor_controller_to_json(ctl.p, &c.p), plant_path);
        doc["controller"] = parsed(c);
      }
      doc["log"] = r["log"];
      out.write(dump(doc));
      return exit_code(st);
    }
    if (*verify) {
      Aut plant;
      check(arbor_automaton_parse(slurp(plant_path).c_str(), &plant.p), plant_path);
      Ctl ctl;
      std::string text = slurp(ctl_path);
      // A synthesize result carries the controller under "controller".
      try {
        json doc = json::parse(text);
        if (doc.is_object() && doc.contains("controller")) text = doc["controller"].dump();
      } catch (const json::parse_error&) {
      }
      check(arbor_controller_parse(text.c_str(), plant.p, &ctl.p), ctl_path);
      Str rep;
      arbor_status st = check(arbor_verify(plant.p, ctl.p, &rep.p), ctl_path);
      out.write(rep.get());
      return exit_code(st);
    }
    if (*game) {
      Game g;
      check(arbor_game_parse(slurp(game_path).c_str(), &g.p), game_path);
      Str rep;
      arbor_status st = check(arbor_game_solve(g.p, &rep.p), game_path);
      out.write(rep.get());
      return exit_code(st);
    }
  } catch (const Failure& f) {
    return report_failure(f);
  }
  return 2;
}
