#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "arbor/async_automaton.hpp"
#include "arbor/error.hpp"

namespace arbor::detail {

struct GlobalStateHash {
  std::size_t operator()(const GlobalState& g) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (LocalState s : g) h = (h ^ s) * 0x100000001b3ULL;
    return h;
  }
};

/// Reachable part of an automaton: BFS tree plus every edge.
struct StateGraph {
  std::vector<GlobalState> nodes;
  std::vector<std::vector<std::pair<LetterId, std::uint32_t>>> out;
  std::vector<std::uint32_t> parent;
  std::vector<LetterId> via;
};

inline StateGraph explore(const AsyncAutomaton& aa, std::size_t limit) {
  StateGraph g;
  std::unordered_map<GlobalState, std::uint32_t, GlobalStateHash> index;
  auto add = [&](GlobalState s, std::uint32_t from, LetterId a) {
    auto [it, fresh] = index.emplace(s, static_cast<std::uint32_t>(g.nodes.size()));
    if (fresh) {
      if (g.nodes.size() >= limit) throw UnsupportedInstance("state space exceeds " + std::to_string(limit) + " states");
      g.nodes.push_back(std::move(s));
      g.out.emplace_back();
      g.parent.push_back(from);
      g.via.push_back(a);
    }
    return it->second;
  };
  add(aa.initial_state(), 0, LetterId{});
  const std::size_t nl = aa.alphabet().num_letters();
  for (std::size_t i = 0; i < g.nodes.size(); ++i)
    for (std::size_t a = 0; a < nl; ++a)
      if (auto next = aa.step(g.nodes[i], letter_id(a))) {
        std::uint32_t j = add(std::move(*next), static_cast<std::uint32_t>(i), letter_id(a));
        g.out[i].emplace_back(letter_id(a), j);
      }
  return g;
}

inline Word path_to(const StateGraph& g, std::uint32_t v) {
  Word w;
  while (v != 0) {
    w.push_back(g.via[v]);
    v = g.parent[v];
  }
  return {w.rbegin(), w.rend()};
}

inline void require_plant(const AsyncAutomaton& plant) {
  if (!plant.tree()) throw InputError("plant has no process tree");
  if (plant.acceptance_kind() != AsyncAutomaton::AcceptanceKind::Local)
    throw InputError("plant needs local acceptance (final states and priorities)");
}

/// Transitions of letter a grouped by the local state of process p.
inline std::unordered_map<LocalState, std::vector<const std::pair<const Tuple, Tuple>*>> by_coordinate(
    const AsyncAutomaton& aa, LetterId a, ProcId p) {
  std::unordered_map<LocalState, std::vector<const std::pair<const Tuple, Tuple>*>> out;
  ProcSet dom = aa.alphabet().domain(a);
  std::size_t pos = 0;
  for (ProcId q : dom.members()) {
    if (q == p) break;
    ++pos;
  }
  for (const auto& tr : aa.transitions(a)) out[tr.first[pos]].push_back(&tr);
  return out;
}

inline std::size_t position_in(ProcSet dom, ProcId p) {
  std::size_t pos = 0;
  for (ProcId q : dom.members()) {
    if (q == p) return pos;
    ++pos;
  }
  throw IntegrityError("process not in domain");
}

}  // namespace arbor::detail
