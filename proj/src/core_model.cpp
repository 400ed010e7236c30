#include "arbor/core_model.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <sstream>

#include "arbor/error.hpp"

namespace arbor {

std::vector<ProcId> ProcSet::members() const {
  std::vector<ProcId> out;
  for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(proc_id(static_cast<std::size_t>(__builtin_ctzll(b))));
  return out;
}

LetterSet LetterSet::all(std::size_t universe) {
  LetterSet s(universe);
  for (std::size_t i = 0; i < universe; ++i) s.insert(letter_id(i));
  return s;
}

LetterSet LetterSet::of(std::size_t universe, const std::vector<LetterId>& letters) {
  LetterSet s(universe);
  for (LetterId a : letters) s.insert(a);
  return s;
}

std::size_t LetterSet::size() const noexcept {
  std::size_t n = 0;
  for (std::uint64_t w : words_) n += static_cast<std::size_t>(__builtin_popcountll(w));
  return n;
}

std::vector<LetterId> LetterSet::members() const {
  std::vector<LetterId> out;
  for (std::size_t i = 0; i < words_.size(); ++i)
    for (std::uint64_t b = words_[i]; b != 0; b &= b - 1)
      out.push_back(letter_id(i * 64 + static_cast<std::size_t>(__builtin_ctzll(b))));
  return out;
}

std::size_t LetterSet::hash() const noexcept {
  std::size_t h = universe_;
  for (std::uint64_t w : words_) h = h * 0x9e3779b97f4a7c15ULL ^ (w + (h >> 7));
  return h;
}

// ---------------------------------------------------------------------------

Alphabet::Alphabet(std::vector<std::string> processes, std::vector<LetterSpec> letters) {
  if (processes.size() > kMaxProcesses)
    throw InputError("too many processes (" + std::to_string(processes.size()) + " > 64)");
  for (std::size_t i = 0; i < processes.size(); ++i) {
    if (processes[i].empty()) throw InputError("empty process name");
    if (!process_index_.emplace(processes[i], static_cast<std::uint32_t>(i)).second)
      throw InputError("duplicate process '" + processes[i] + "'");
  }
  process_names_ = std::move(processes);
  for (std::size_t i = 0; i < letters.size(); ++i) {
    LetterSpec& spec = letters[i];
    if (spec.id.empty()) throw InputError("empty letter name");
    if (!letter_index_.emplace(spec.id, static_cast<std::uint32_t>(i)).second)
      throw InputError("duplicate letter '" + spec.id + "'");
    if (spec.domain.empty()) throw InputError("letter '" + spec.id + "' has an empty domain");
    ProcSet dom;
    for (const auto& p : spec.domain) {
      auto it = process_index_.find(p);
      if (it == process_index_.end())
        throw InputError("letter '" + spec.id + "': unknown process '" + p + "' in domain");
      dom.insert(proc_id(it->second));
    }
    if (spec.controllable && dom.size() != 1)
      throw InputError("controllable letter '" + spec.id + "' is not local");
    letter_names_.push_back(spec.id);
    domains_.push_back(dom);
    controllable_.push_back(spec.controllable);
  }
}

std::optional<LetterId> Alphabet::find_letter(std::string_view name) const {
  auto it = letter_index_.find(std::string(name));
  if (it == letter_index_.end()) return std::nullopt;
  return letter_id(it->second);
}

std::optional<ProcId> Alphabet::find_process(std::string_view name) const {
  auto it = process_index_.find(std::string(name));
  if (it == process_index_.end()) return std::nullopt;
  return proc_id(it->second);
}

LetterId Alphabet::letter(std::string_view name) const {
  if (auto a = find_letter(name)) return *a;
  throw InputError("unknown letter '" + std::string(name) + "'");
}

ProcId Alphabet::process(std::string_view name) const {
  if (auto p = find_process(name)) return *p;
  throw InputError("unknown process '" + std::string(name) + "'");
}

LetterSpec Alphabet::spec(LetterId a) const {
  require(a);
  LetterSpec s;
  s.id = letter_name(a);
  for (ProcId p : domain(a).members()) s.domain.push_back(process_name(p));
  s.controllable = controllable(a);
  return s;
}

std::vector<LetterSpec> Alphabet::specs() const {
  std::vector<LetterSpec> out;
  for (std::size_t i = 0; i < num_letters(); ++i) out.push_back(spec(letter_id(i)));
  return out;
}

ProcSet Alphabet::domain_of(const LetterSet& letters) const {
  ProcSet out;
  for (LetterId a : letters.members()) out |= domain(a);
  return out;
}

void Alphabet::require(LetterId a) const {
  if (idx(a) >= num_letters()) throw InputError("unknown letter id " + std::to_string(idx(a)));
}

void Alphabet::require(ProcId p) const {
  if (idx(p) >= num_processes()) throw InputError("unknown process id " + std::to_string(idx(p)));
}

Word Alphabet::parse_word(std::string_view text) const {
  Word w;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) w.push_back(letter(tok));
  return w;
}

std::string Alphabet::format_word(const Word& w) const {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += letter_name(w[i]);
  }
  return out;
}

bool independent(const Alphabet& alphabet, LetterId a, LetterId b) {
  alphabet.require(a);
  alphabet.require(b);
  return !alphabet.domain(a).intersects(alphabet.domain(b));
}

std::vector<LetterId> local_letters(const Alphabet& alphabet, ProcId p) {
  alphabet.require(p);
  std::vector<LetterId> out;
  for (std::size_t i = 0; i < alphabet.num_letters(); ++i)
    if (alphabet.domain(letter_id(i)) == ProcSet::single(p)) out.push_back(letter_id(i));
  return out;
}

std::vector<Word> trace_closure(const Alphabet& alphabet, const Word& u, std::size_t max_len) {
  if (u.size() > max_len)
    throw InputError("word of length " + std::to_string(u.size()) + " exceeds max_len " + std::to_string(max_len));
  for (LetterId a : u) alphabet.require(a);
  constexpr std::size_t kLimit = 1'000'000;
  std::set<Word> seen{u};
  std::deque<Word> queue{u};
  while (!queue.empty()) {
    Word w = std::move(queue.front());
    queue.pop_front();
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (w[i] == w[i + 1] || !independent(alphabet, w[i], w[i + 1])) continue;
      Word v = w;
      std::swap(v[i], v[i + 1]);
      if (seen.insert(v).second) {
        if (seen.size() > kLimit) throw UnsupportedInstance("class too large");
        queue.push_back(std::move(v));
      }
    }
  }
  return {seen.begin(), seen.end()};
}

// ---------------------------------------------------------------------------

Graph::Graph(std::vector<std::string> names)
    : names_(std::move(names)), adj_(names_.size(), std::vector<char>(names_.size(), 0)), nbrs_(names_.size()) {}

std::optional<std::size_t> Graph::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

void Graph::add_edge(std::size_t u, std::size_t v) {
  if (u >= size() || v >= size()) throw InputError("edge endpoint out of range");
  if (u == v) throw InputError("self-loop on vertex '" + names_[u] + "'");
  if (adj_[u][v]) return;
  adj_[u][v] = adj_[v][u] = 1;
  nbrs_[u].insert(std::lower_bound(nbrs_[u].begin(), nbrs_[u].end(), v), v);
  nbrs_[v].insert(std::lower_bound(nbrs_[v].begin(), nbrs_[v].end(), u), u);
}

std::vector<std::pair<std::size_t, std::size_t>> Graph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t u = 0; u < size(); ++u)
    for (std::size_t v : nbrs_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

std::size_t Graph::num_edges() const {
  std::size_t n = 0;
  for (const auto& l : nbrs_) n += l.size();
  return n / 2;
}

DependenceGraph dependence_graph(const Alphabet& alphabet) {
  Graph g(alphabet.letter_names());
  for (std::size_t a = 0; a < alphabet.num_letters(); ++a)
    for (std::size_t b = a + 1; b < alphabet.num_letters(); ++b)
      if (alphabet.domain(letter_id(a)).intersects(alphabet.domain(letter_id(b)))) g.add_edge(a, b);
  return g;
}

// ---------------------------------------------------------------------------

ProcessTree::ProcessTree(ProcId root, std::vector<std::optional<ProcId>> parent)
    : root_(root), parent_(std::move(parent)) {
  const std::size_t n = parent_.size();
  if (n == 0) throw InputError("process tree has no nodes");
  if (idx(root_) >= n) throw InputError("tree root out of range");
  if (parent_[idx(root_)]) throw InputError("tree root has a parent");
  children_.assign(n, {});
  depth_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == idx(root_)) continue;
    if (!parent_[i]) throw InputError("node " + std::to_string(i) + " has no parent and is not the root");
    if (idx(*parent_[i]) >= n) throw InputError("parent out of range");
    children_[idx(*parent_[i])].push_back(proc_id(i));
  }
  // Depths by BFS from the root; any node not reached sits on a cycle.
  std::vector<char> seen(n, 0);
  std::deque<ProcId> queue{root_};
  seen[idx(root_)] = 1;
  std::size_t reached = 1;
  while (!queue.empty()) {
    ProcId p = queue.front();
    queue.pop_front();
    for (ProcId c : children_[idx(p)]) {
      if (seen[idx(c)]) continue;
      seen[idx(c)] = 1;
      ++reached;
      depth_[idx(c)] = depth_[idx(p)] + 1;
      queue.push_back(c);
    }
  }
  if (reached != n) throw InputError("process tree is cyclic or disconnected");
}

ProcessTree ProcessTree::from_edges(std::size_t n, ProcId root, const std::vector<std::pair<ProcId, ProcId>>& edges) {
  std::vector<std::optional<ProcId>> parent(n);
  for (auto [p, c] : edges) {
    if (idx(p) >= n || idx(c) >= n) throw InputError("tree edge endpoint out of range");
    if (parent[idx(c)]) throw InputError("node " + std::to_string(idx(c)) + " has two parents");
    parent[idx(c)] = p;
  }
  return ProcessTree(root, std::move(parent));
}

ProcSet ProcessTree::subtree(ProcId p) const {
  ProcSet out = ProcSet::single(p);
  for (ProcId c : children(p)) out |= subtree(c);
  return out;
}

std::vector<ProcId> ProcessTree::path(ProcId p, ProcId q) const {
  std::vector<ProcId> up, down;
  while (depth(p) > depth(q)) {
    up.push_back(p);
    p = *parent(p);
  }
  while (depth(q) > depth(p)) {
    down.push_back(q);
    q = *parent(q);
  }
  while (p != q) {
    up.push_back(p);
    down.push_back(q);
    p = *parent(p);
    q = *parent(q);
  }
  up.push_back(p);
  up.insert(up.end(), down.rbegin(), down.rend());
  return up;
}

std::vector<std::pair<ProcId, ProcId>> ProcessTree::edges() const {
  std::vector<std::pair<ProcId, ProcId>> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (parent_[i]) out.emplace_back(*parent_[i], proc_id(i));
  return out;
}

std::vector<ProcId> ProcessTree::preorder() const {
  std::vector<ProcId> out;
  std::function<void(ProcId)> go = [&](ProcId p) {
    out.push_back(p);
    for (ProcId c : children(p)) go(c);
  };
  go(root_);
  return out;
}

Architecture::Architecture(Alphabet alphabet, ProcessTree tree) : alphabet_(std::move(alphabet)), tree_(std::move(tree)) {
  if (tree_.size() != alphabet_.num_processes())
    throw InputError("tree has " + std::to_string(tree_.size()) + " nodes but the alphabet has " +
                     std::to_string(alphabet_.num_processes()) + " processes");
}

void Architecture::require_tree_like() const {
  TcaReport r = validate_tca(*this);
  for (const auto& l : r.letters)
    if (!l.connected) {
      std::string path;
      for (ProcId p : l.broken_path) path += (path.empty() ? "" : "-") + alphabet_.process_name(p);
      throw InputError("not tree-like: domain of '" + alphabet_.letter_name(l.letter) + "' is not connected (path " +
                       path + ")");
    }
  for (const auto& e : r.edges)
    if (!e.covered)
      throw InputError("not tree-like: tree edge " + alphabet_.process_name(e.parent) + "-" +
                       alphabet_.process_name(e.child) + " is not covered by any letter");
}

bool TcaReport::connectivity_holds() const {
  return std::all_of(letters.begin(), letters.end(), [](const auto& l) { return l.connected; });
}

bool TcaReport::coverage_holds() const {
  return std::all_of(edges.begin(), edges.end(), [](const auto& e) { return e.covered; });
}

TcaReport validate_tca(const Architecture& arch) {
  const Alphabet& al = arch.alphabet();
  const ProcessTree& t = arch.tree();
  if (t.size() != al.num_processes()) throw InputError("tree nodes do not match the alphabet's processes");
  TcaReport report;
  const auto tree_edges = t.edges();
  for (std::size_t i = 0; i < al.num_letters(); ++i) {
    LetterConnectivity lc;
    lc.letter = letter_id(i);
    ProcSet dom = al.domain(lc.letter);
    // A forest on k nodes is a tree iff it has k-1 edges.
    std::size_t inner = 0;
    for (auto [p, c] : tree_edges)
      if (dom.contains(p) && dom.contains(c)) ++inner;
    lc.connected = inner + 1 == dom.size();
    if (!lc.connected) {
      auto members = dom.members();
      for (std::size_t x = 0; x < members.size() && lc.broken_path.empty(); ++x)
        for (std::size_t y = x + 1; y < members.size(); ++y) {
          auto path = t.path(members[x], members[y]);
          if (std::any_of(path.begin(), path.end(), [&](ProcId p) { return !dom.contains(p); })) {
            lc.broken_path = std::move(path);
            break;
          }
        }
    }
    report.letters.push_back(std::move(lc));
  }
  for (auto [p, c] : tree_edges) {
    EdgeCoverage ec{p, c, false};
    ProcSet pair = ProcSet::single(p) | ProcSet::single(c);
    for (std::size_t i = 0; i < al.num_letters() && !ec.covered; ++i)
      ec.covered = pair.subset_of(al.domain(letter_id(i)));
    report.edges.push_back(ec);
  }
  return report;
}

}  // namespace arbor
