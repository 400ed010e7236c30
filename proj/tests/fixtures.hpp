#pragma once

#include <string>
#include <vector>

#include "arbor/async_automaton.hpp"
#include "arbor/core_model.hpp"
#include "arbor/dfa.hpp"
#include "arbor/io.hpp"

#ifndef ARBOR_DATA_DIR
#define ARBOR_DATA_DIR "data"
#endif

namespace fixtures {

inline std::string data(const std::string& name) { return std::string(ARBOR_DATA_DIR) + "/" + name; }

inline arbor::Architecture tree5() { return arbor::io::parse_architecture(arbor::io::read_file(data("tree5.json"))); }
inline arbor::Architecture tree5_broken() {
  return arbor::io::parse_architecture(arbor::io::read_file(data("tree5_broken.json")));
}

inline arbor::Architecture arch(std::vector<std::string> procs, std::vector<arbor::LetterSpec> letters,
                                const std::string& root, std::vector<std::pair<std::string, std::string>> edges) {
  arbor::Alphabet al(std::move(procs), std::move(letters));
  std::vector<std::pair<arbor::ProcId, arbor::ProcId>> e;
  for (auto& [p, c] : edges) e.push_back({al.process(p), al.process(c)});
  auto tree = arbor::ProcessTree::from_edges(al.num_processes(), al.process(root), e);
  return arbor::Architecture(al, tree);
}

/// Every word over the alphabet of length exactly n.
inline std::vector<arbor::Word> words_of_length(std::size_t letters, std::size_t n) {
  std::vector<arbor::Word> out{{}};
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<arbor::Word> next;
    for (const auto& w : out)
      for (std::size_t a = 0; a < letters; ++a) {
        next.push_back(w);
        next.back().push_back(arbor::letter_id(a));
      }
    out = std::move(next);
  }
  return out;
}

inline arbor::AsyncAutomaton plant_from(const std::string& text) {
  return arbor::io::parse_automaton(arbor::io::parse_text(text));
}

}  // namespace fixtures
