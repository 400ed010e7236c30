#include <deque>
#include <map>
#include <variant>

#include "arbor/control.hpp"
#include "control_util.hpp"

namespace arbor {

IarCompilation compile_conditions(const AsyncAutomaton& plant, ProcId p) {
  detail::require_plant(plant);
  const Alphabet& al = plant.alphabet();
  const LocalAcceptance& acc = plant.local_acceptance(p);
  std::vector<std::vector<int>> comp;
  std::vector<int> counts;
  for (const auto& pr : acc.priorities) {
    comp.push_back(compress_priorities(pr));
    int top = 0;
    for (int v : comp.back()) top = std::max(top, v);
    counts.push_back(top + 1);
  }
  if (counts.empty()) {
    comp.emplace_back(plant.num_states(p), 0);
    counts.push_back(1);
  }
  IarAutomaton iar(counts);
  auto tuple_at = [&](LocalState x) {
    std::vector<int> t;
    for (const auto& c : comp) t.push_back(c[x]);
    return t;
  };

  IarCompilation out{AsyncAutomaton(al, plant.tree()), p, {}};
  AsyncAutomaton& aa = out.plant;
  for (std::size_t q = 0; q < al.num_processes(); ++q) {
    if (proc_id(q) == p) continue;
    for (std::size_t s = 0; s < plant.num_states(proc_id(q)); ++s)
      aa.add_state(proc_id(q), plant.state_name(proc_id(q), static_cast<LocalState>(s)));
    aa.set_initial(proc_id(q), plant.initial(proc_id(q)));
  }
  std::vector<IarAutomaton::State> rec;
  std::map<std::pair<LocalState, IarAutomaton::State>, LocalState> index;
  std::deque<LocalState> queue;
  auto intern = [&](LocalState x, IarAutomaton::State q) {
    auto [it, fresh] = index.emplace(std::make_pair(x, q), 0);
    if (fresh) {
      it->second = aa.add_state(p, plant.state_name(p, x) + "#" + std::to_string(q));
      out.base.push_back(x);
      rec.push_back(q);
      queue.push_back(it->second);
    }
    return it->second;
  };
  LocalState x0 = plant.initial(p);
  aa.set_initial(p, intern(x0, iar.step(iar.initial(), tuple_at(x0))));

  std::vector<LetterId> mine;
  std::vector<decltype(detail::by_coordinate(plant, LetterId{}, p))> at;
  for (std::size_t i = 0; i < al.num_letters(); ++i) {
    LetterId a = letter_id(i);
    if (al.domain(a).contains(p)) {
      mine.push_back(a);
      at.push_back(detail::by_coordinate(plant, a, p));
    } else {
      for (const auto& [from, to] : plant.transitions(a)) aa.add_transition(a, from, to);
    }
  }
  while (!queue.empty()) {
    LocalState y = queue.front();
    queue.pop_front();
    LocalState x = out.base[y];
    IarAutomaton::State q = rec[y];
    for (std::size_t j = 0; j < mine.size(); ++j) {
      auto it = at[j].find(x);
      if (it == at[j].end()) continue;
      std::size_t pos = detail::position_in(al.domain(mine[j]), p);
      for (const auto* tr : it->second) {
        Tuple from = tr->first, to = tr->second;
        LocalState x2 = to[pos];
        from[pos] = y;
        to[pos] = intern(x2, iar.step(q, tuple_at(x2)));
        aa.add_transition(mine[j], std::move(from), std::move(to));
      }
    }
  }
  std::vector<LocalAcceptance> accs = plant.local_acceptance();
  LocalAcceptance& la = accs[idx(p)];
  la.final.clear();
  la.priorities.assign(1, {});
  for (std::size_t y = 0; y < out.base.size(); ++y) {
    la.final.push_back(acc.final[out.base[y]]);
    la.priorities[0].push_back(iar.priority(rec[y]));
  }
  aa.set_local_acceptance(std::move(accs));
  return out;
}

Controller uncompile_controller(const IarCompilation& comp, const Controller& c) {
  Controller out = c;
  for (LocalState& s : out.projection.at(idx(comp.proc))) s = comp.base.at(s);
  return out;
}

// ---------------------------------------------------------------------------

PlantGame to_parity_game(const AsyncAutomaton& plant1) {
  detail::require_plant(plant1);
  const Alphabet& al = plant1.alphabet();
  if (al.num_processes() != 1) throw InputError("game construction needs a single-process plant");
  const ProcId p = proc_id(0);
  const LocalAcceptance& acc = plant1.local_acceptance(p);
  if (acc.priorities.size() > 1) throw InputError("game construction needs a single parity condition");
  const std::size_t n = plant1.num_states(p);
  auto prio = [&](LocalState s) { return acc.priorities.empty() ? 0 : acc.priorities[0][s]; };

  PlantGame pg;
  pg.num_states = n;
  for (std::size_t s = 0; s < n; ++s)
    pg.game.add_position("s:" + plant1.state_name(p, static_cast<LocalState>(s)), Owner::System,
                         prio(static_cast<LocalState>(s)));
  pg.game.initial = plant1.initial(p);
  for (std::size_t si = 0; si < n; ++si) {
    LocalState s = static_cast<LocalState>(si);
    std::vector<LetterId> enabled = plant1.enabled_local(p, s);
    std::vector<std::optional<LetterId>> choices{std::nullopt};
    for (LetterId a : enabled)
      if (al.controllable(a)) choices.push_back(a);
    for (const auto& ch : choices) {
      std::string id = "e:" + plant1.state_name(p, s) + ":" + (ch ? al.letter_name(*ch) : std::string("-"));
      std::size_t e = pg.game.add_position(id, Owner::Environment, prio(s));
      pg.env_state.push_back(s);
      pg.env_choice.push_back(ch);
      pg.game.add_edge(si, e);
      bool any = false;
      for (LetterId a : enabled) {
        if (al.controllable(a) && a != ch) continue;
        pg.game.add_edge(e, (*plant1.delta(a, Tuple{s}))[0]);
        any = true;
      }
      if (!any) pg.game.positions[e].terminal_win = static_cast<bool>(acc.final[s]);
    }
  }
  pg.game.validate();
  return pg;
}

Controller strategy_to_controller(const PlantGame& g, const GameSolution& sol, const AsyncAutomaton& plant1) {
  if (!sol.system_wins.at(g.game.initial)) throw InputError("System loses from the initial position");
  std::vector<std::vector<std::optional<LetterId>>> choice(1, std::vector<std::optional<LetterId>>(g.num_states));
  for (std::size_t s = 0; s < g.num_states; ++s) {
    std::size_t e = sol.strategy[s];
    if (!sol.system_wins[s] || e == kNoMove) continue;
    choice[0][s] = g.env_choice.at(e - g.num_states);
  }
  return positional_controller(plant1, choice);
}

// ---------------------------------------------------------------------------

namespace {

struct LshortStep {
  LshortInfo info;
  AsyncAutomaton before;
};
struct LeafStep {
  Elimination el;
  AsyncAutomaton before;
};
struct IarStep {
  IarCompilation comp;
  AsyncAutomaton before;
};
using Stage = std::variant<LshortStep, LeafStep, IarStep>;

std::size_t total_states(const AsyncAutomaton& aa) {
  std::size_t n = 0;
  for (std::size_t p = 0; p < aa.alphabet().num_processes(); ++p) n += aa.num_states(proc_id(p));
  return n;
}

void require_sound(const AsyncAutomaton& plant, const Controller& c, std::size_t limit, const std::string& where) {
  ControllerCheck chk = check_controller(plant, c, limit);
  if (!chk.ok) throw IntegrityError(where + ": controller violates condition " + std::to_string(chk.condition) + ": " + chk.violation);
  WinningVerdict v = verify_winning(plant, c, limit);
  if (!v.winning)
    throw IntegrityError(where + ": controller is not winning (" + v.counterexample->reason + ")");
}

}  // namespace

ControlResult solve_control(const AsyncAutomaton& plant, const ControlOptions& opts) {
  detail::require_plant(plant);
  plant.architecture().require_tree_like();
  ControlResult res;
  std::vector<Stage> stages;
  AsyncAutomaton cur = plant;

  auto compile_if_needed = [&](ProcId p) {
    if (cur.local_acceptance(p).priorities.size() <= 1) return;
    IarCompilation comp = compile_conditions(cur, p);
    res.log.push_back("compile conditions of " + cur.alphabet().process_name(p) + ": " +
                      std::to_string(comp.plant.num_states(p)) + " states");
    AsyncAutomaton next = comp.plant;
    stages.push_back(IarStep{std::move(comp), std::move(cur)});
    cur = std::move(next);
  };

  while (cur.alphabet().num_processes() > 1) {
    const ProcessTree& t = *cur.tree();
    std::optional<ProcId> parent;
    for (std::size_t q = 0; q < t.size(); ++q) {
      ProcId p = proc_id(q);
      if (t.is_leaf(p)) continue;
      bool ready = true;
      for (ProcId ch : t.children(p)) ready = ready && t.is_leaf(ch);
      if (ready && (!parent || t.depth(p) > t.depth(*parent))) parent = p;
    }
    ProcId p = *parent;
    while (!cur.tree()->is_leaf(p)) {
      ProcId l = cur.tree()->children(p).front();
      for (ProcId ch : cur.tree()->children(p)) l = std::min(l, ch);
      const std::string lname = cur.alphabet().process_name(l);
      if (!lshort_bound(cur, l).short_ok()) {
        LshortInfo info = make_lshort(cur, l);
        if (!lshort_bound(info.plant, l).short_ok())
          throw UnsupportedInstance(lname + " stays cyclic after path unfolding");
        res.log.push_back("unfold local cycles of " + lname + ": " + std::to_string(info.plant.num_states(l)) + " states");
        AsyncAutomaton next = info.plant;
        stages.push_back(LshortStep{std::move(info), std::move(cur)});
        cur = std::move(next);
      }
      Elimination el = remove_leaf(cur, l);
      res.log.push_back("remove " + lname + " into " + cur.alphabet().process_name(p) + ": " +
                        std::to_string(el.plant.num_states(el.parent_new)) + " states, " +
                        std::to_string(el.store->size()) + " strategy nodes");
      AsyncAutomaton next = el.plant;
      p = el.parent_new;
      stages.push_back(LeafStep{std::move(el), std::move(cur)});
      cur = std::move(next);
    }
    compile_if_needed(p);
  }
  compile_if_needed(proc_id(0));

  PlantGame game = to_parity_game(cur);
  GameSolution sol = solve_parity_game(game.game);
  res.log.push_back("parity game: " + std::to_string(game.game.size()) + " positions, " +
                    std::to_string(total_states(cur)) + " states");
  if (!sol.system_wins[game.game.initial]) {
    res.log.push_back("Environment wins");
    return res;
  }
  Controller c = strategy_to_controller(game, sol, cur);
  if (opts.verify_stages) require_sound(cur, c, opts.verify_limit, "game stage");
  for (auto it = stages.rbegin(); it != stages.rend(); ++it) {
    std::visit(
        [&](auto& st) {
          using S = std::decay_t<decltype(st)>;
          if constexpr (std::is_same_v<S, LshortStep>) c = lift_lshort_controller(st.info, st.before, c);
          else if constexpr (std::is_same_v<S, LeafStep>) c = reconstruct_controller(st.el, st.before, c);
          else c = uncompile_controller(st.comp, c);
          if (opts.verify_stages) require_sound(st.before, c, opts.verify_limit, "unwind stage");
        },
        *it);
  }
  require_sound(plant, c, opts.verify_limit, "final controller");
  res.controllable = true;
  res.controller = std::move(c);
  return res;
}

std::optional<Controller> brute_force_positional(const AsyncAutomaton& plant, std::size_t cap) {
  detail::require_plant(plant);
  const Alphabet& al = plant.alphabet();
  struct Slot {
    std::size_t p;
    LocalState s;
    std::vector<std::optional<LetterId>> options;
  };
  std::vector<Slot> slots;
  double total = 1;
  for (std::size_t p = 0; p < al.num_processes(); ++p)
    for (std::size_t s = 0; s < plant.num_states(proc_id(p)); ++s) {
      Slot sl{p, static_cast<LocalState>(s), {std::nullopt}};
      for (LetterId a : plant.enabled_local(proc_id(p), sl.s))
        if (al.controllable(a)) sl.options.push_back(a);
      total *= static_cast<double>(sl.options.size());
      if (sl.options.size() > 1) slots.push_back(std::move(sl));
    }
  if (total > static_cast<double>(cap)) throw UnsupportedInstance("too many positional controllers to enumerate");
  std::vector<std::vector<std::optional<LetterId>>> choice(al.num_processes());
  for (std::size_t p = 0; p < al.num_processes(); ++p) choice[p].resize(plant.num_states(proc_id(p)));
  std::vector<std::size_t> pick(slots.size(), 0);
  while (true) {
    for (std::size_t i = 0; i < slots.size(); ++i) choice[slots[i].p][slots[i].s] = slots[i].options[pick[i]];
    Controller c = positional_controller(plant, choice);
    if (verify_winning(plant, c).winning) return c;
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == slots[i].options.size()) pick[i++] = 0;
    if (i == pick.size()) return std::nullopt;
  }
}

}  // namespace arbor
