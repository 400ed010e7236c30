#pragma once

#include <functional>
#include <optional>
#include <string>

#include "arbor/distribute.hpp"

namespace arbor {

/// Subword of w that the processes in X can see through shared actions,
/// computed by the backward recursion.
Word view(const Alphabet& alphabet, ProcSet x, const Word& w);
RunResult state_view(const Dfa& dfa, ProcSet x, const Word& w);

/// View of {p} on the shortest prefix containing every letter shared by p
/// and its parent; ε at the root.
Word parent_view(const Architecture& arch, ProcId p, const Word& w);
RunResult state_parent_view(const Dfa& dfa, const Architecture& arch, ProcId p, const Word& w);

struct InvariantViolation {
  enum class Kind { Def, S, T, Tree };
  Kind kind = Kind::Def;
  std::size_t prefix_len = 0;
  std::optional<ProcId> proc;
  std::string detail;
};

struct InvariantReport {
  std::size_t prefixes_checked = 0;
  std::optional<InvariantViolation> violation;
  bool ok() const noexcept { return !violation; }
};

const char* to_string(InvariantViolation::Kind k);

/// Checks I_def, I_s and I_t on every prefix of w. `decode` maps a local
/// state of `aa` to its (s, t) pair.
InvariantReport check_invariants(const Dfa& dfa, const Architecture& arch, const AutomatonView& aa, const Word& w,
                                 const std::function<PairState(LocalState)>& decode);
InvariantReport check_invariants(const Distribution& dist, const Word& w);

/// For every prefix of w (run defined), compares tdiam of each letter tree
/// and of the whole tree with the state view of its processes.
InvariantReport check_tdiam_views(const Distribution& dist, const Word& w);

}  // namespace arbor
