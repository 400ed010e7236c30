#include "arbor/views.hpp"

#include <algorithm>

namespace arbor {

Word view(const Alphabet& alphabet, ProcSet x, const Word& w) {
  // ⟨wa⟩_X = ⟨w⟩_X if C(a) ∩ X = ∅, else ⟨w⟩_{X ∪ C(a)} · a
  Word out;
  for (std::size_t i = w.size(); i-- > 0;) {
    ProcSet d = alphabet.domain(w[i]);
    if (!d.intersects(x)) continue;
    out.push_back(w[i]);
    x |= d;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

RunResult state_view(const Dfa& dfa, ProcSet x, const Word& w) { return run(dfa, view(dfa.alphabet(), x, w)); }

Word parent_view(const Architecture& arch, ProcId p, const Word& w) {
  const Alphabet& al = arch.alphabet();
  al.require(p);
  auto par = arch.tree().parent(p);
  if (!par) return {};
  ProcSet edge = ProcSet::single(p) | ProcSet::single(*par);
  std::size_t cut = 0;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (edge.subset_of(al.domain(w[i]))) cut = i + 1;
  return view(al, ProcSet::single(p), Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(cut)));
}

RunResult state_parent_view(const Dfa& dfa, const Architecture& arch, ProcId p, const Word& w) {
  return run(dfa, parent_view(arch, p, w));
}

const char* to_string(InvariantViolation::Kind k) {
  switch (k) {
    case InvariantViolation::Kind::Def: return "I_def";
    case InvariantViolation::Kind::S: return "I_s";
    case InvariantViolation::Kind::T: return "I_t";
    case InvariantViolation::Kind::Tree: return "tdiam";
  }
  return "?";
}

InvariantReport check_invariants(const Dfa& dfa, const Architecture& arch, const AutomatonView& aa, const Word& w,
                                 const std::function<PairState(LocalState)>& decode) {
  InvariantReport rep;
  const std::size_t np = arch.alphabet().num_processes();
  std::optional<GlobalState> g = aa.initial_state();
  for (std::size_t len = 0; len <= w.size(); ++len) {
    Word prefix(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(len));
    if (len > 0) {
      try {
        g = aa.step(*g, w[len - 1]);
      } catch (const std::exception& e) {
        rep.violation = InvariantViolation{InvariantViolation::Kind::Def, len, std::nullopt,
                                           std::string("automaton step failed: ") + e.what()};
        return rep;
      }
    }
    ++rep.prefixes_checked;
    bool dfa_defined = run(dfa, prefix).defined();
    if (dfa_defined != g.has_value()) {
      rep.violation = InvariantViolation{InvariantViolation::Kind::Def, len, std::nullopt,
                                         dfa_defined ? "automaton undefined, DFA defined" : "automaton defined, DFA undefined"};
      return rep;
    }
    if (!g) return rep;
    for (std::size_t p = 0; p < np; ++p) {
      PairState ps = decode((*g)[p]);
      RunResult spv = state_parent_view(dfa, arch, proc_id(p), prefix);
      if (!spv.defined() || spv.state != ps.s) {
        rep.violation = InvariantViolation{InvariantViolation::Kind::S, len, proc_id(p), "s component differs from the parent view"};
        return rep;
      }
      RunResult sv = state_view(dfa, ProcSet::single(proc_id(p)), prefix);
      if (!sv.defined() || sv.state != ps.t) {
        rep.violation = InvariantViolation{InvariantViolation::Kind::T, len, proc_id(p), "t component differs from the view"};
        return rep;
      }
    }
  }
  return rep;
}

InvariantReport check_invariants(const Distribution& dist, const Word& w) {
  return check_invariants(dist.dfa(), dist.architecture(), dist, w, [&](LocalState l) { return dist.decode(l); });
}

InvariantReport check_tdiam_views(const Distribution& dist, const Word& w) {
  InvariantReport rep;
  const Architecture& arch = dist.architecture();
  const Alphabet& al = arch.alphabet();
  GlobalState g = dist.initial_state();
  for (std::size_t len = 0; len <= w.size(); ++len) {
    Word prefix(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(len));
    if (len > 0) {
      auto next = dist.step(g, w[len - 1]);
      if (!next) return rep;
      g = std::move(*next);
    }
    ++rep.prefixes_checked;
    for (std::size_t a = 0; a <= al.num_letters(); ++a) {
      ProcSet nodes;
      ProcId root;
      if (a < al.num_letters()) {
        LetterTree lt = letter_tree(arch, letter_id(a));
        nodes = lt.nodes;
        root = lt.root;
      } else {
        nodes = al.all_processes();
        root = arch.tree().root();
      }
      StateId got = tdiam(dist.dfa(), dist.label(g, root, nodes));
      RunResult want = state_view(dist.dfa(), nodes, prefix);
      if (!want.defined() || want.state != got) {
        rep.violation = InvariantViolation{InvariantViolation::Kind::Tree, len, root, "tdiam differs from the state view"};
        return rep;
      }
    }
  }
  return rep;
}

}  // namespace arbor
