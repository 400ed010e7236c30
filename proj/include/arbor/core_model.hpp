#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace arbor {

enum class LetterId : std::uint32_t {};
enum class ProcId : std::uint32_t {};

constexpr std::size_t idx(LetterId a) noexcept { return static_cast<std::size_t>(a); }
constexpr std::size_t idx(ProcId p) noexcept { return static_cast<std::size_t>(p); }
constexpr LetterId letter_id(std::size_t i) noexcept { return static_cast<LetterId>(i); }
constexpr ProcId proc_id(std::size_t i) noexcept { return static_cast<ProcId>(i); }

using Word = std::vector<LetterId>;

inline constexpr std::size_t kMaxProcesses = 64;

/// Set of processes of one architecture, stored as a bit mask.
class ProcSet {
 public:
  constexpr ProcSet() = default;
  static constexpr ProcSet from_bits(std::uint64_t bits) noexcept {
    ProcSet s;
    s.bits_ = bits;
    return s;
  }
  static ProcSet single(ProcId p) noexcept { return from_bits(std::uint64_t{1} << idx(p)); }
  static ProcSet first(std::size_t n) noexcept {
    return from_bits(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }

  bool contains(ProcId p) const noexcept { return (bits_ >> idx(p)) & 1U; }
  void insert(ProcId p) noexcept { bits_ |= std::uint64_t{1} << idx(p); }
  void erase(ProcId p) noexcept { bits_ &= ~(std::uint64_t{1} << idx(p)); }
  bool empty() const noexcept { return bits_ == 0; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(__builtin_popcountll(bits_)); }
  bool intersects(ProcSet o) const noexcept { return (bits_ & o.bits_) != 0; }
  bool subset_of(ProcSet o) const noexcept { return (bits_ & ~o.bits_) == 0; }
  std::uint64_t bits() const noexcept { return bits_; }
  std::vector<ProcId> members() const;

  friend ProcSet operator|(ProcSet a, ProcSet b) noexcept { return from_bits(a.bits_ | b.bits_); }
  friend ProcSet operator&(ProcSet a, ProcSet b) noexcept { return from_bits(a.bits_ & b.bits_); }
  friend ProcSet operator-(ProcSet a, ProcSet b) noexcept { return from_bits(a.bits_ & ~b.bits_); }
  ProcSet& operator|=(ProcSet o) noexcept {
    bits_ |= o.bits_;
    return *this;
  }
  friend bool operator==(ProcSet, ProcSet) = default;

 private:
  std::uint64_t bits_ = 0;
};

/// Subset of the letters of one alphabet (dynamic bit set).
class LetterSet {
 public:
  LetterSet() = default;
  explicit LetterSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}
  static LetterSet all(std::size_t universe);
  static LetterSet of(std::size_t universe, const std::vector<LetterId>& letters);

  std::size_t universe() const noexcept { return universe_; }
  bool contains(LetterId a) const noexcept {
    return idx(a) < universe_ && ((words_[idx(a) / 64] >> (idx(a) % 64)) & 1U);
  }
  void insert(LetterId a) { words_[idx(a) / 64] |= std::uint64_t{1} << (idx(a) % 64); }
  void erase(LetterId a) { words_[idx(a) / 64] &= ~(std::uint64_t{1} << (idx(a) % 64)); }
  std::size_t size() const noexcept;
  bool empty() const noexcept { return size() == 0; }
  std::vector<LetterId> members() const;
  std::size_t hash() const noexcept;

  friend bool operator==(const LetterSet&, const LetterSet&) = default;

 private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

struct LetterSpec {
  std::string id;
  std::vector<std::string> domain;
  bool controllable = false;
};

/// Letters, processes, the domain map and the controllable subset.
/// Letters and processes are interned: their ids follow declaration order.
class Alphabet {
 public:
  Alphabet() = default;
  /// Throws InputError on duplicate names, empty or unknown domains, more
  /// than kMaxProcesses processes, or a controllable non-local letter.
  Alphabet(std::vector<std::string> processes, std::vector<LetterSpec> letters);

  std::size_t num_letters() const noexcept { return letter_names_.size(); }
  std::size_t num_processes() const noexcept { return process_names_.size(); }

  const std::string& letter_name(LetterId a) const { return letter_names_.at(idx(a)); }
  const std::string& process_name(ProcId p) const { return process_names_.at(idx(p)); }
  const std::vector<std::string>& letter_names() const noexcept { return letter_names_; }
  const std::vector<std::string>& process_names() const noexcept { return process_names_; }

  std::optional<LetterId> find_letter(std::string_view name) const;
  std::optional<ProcId> find_process(std::string_view name) const;
  LetterId letter(std::string_view name) const;
  ProcId process(std::string_view name) const;

  ProcSet domain(LetterId a) const { return domains_.at(idx(a)); }
  bool controllable(LetterId a) const { return controllable_.at(idx(a)); }
  bool is_local(LetterId a) const { return domain(a).size() == 1; }
  LetterSpec spec(LetterId a) const;
  std::vector<LetterSpec> specs() const;

  ProcSet all_processes() const noexcept { return ProcSet::first(num_processes()); }
  ProcSet domain_of(const LetterSet& letters) const;
  LetterSet all_letters() const { return LetterSet::all(num_letters()); }

  /// Checks that `a` is a letter of this alphabet.
  void require(LetterId a) const;
  void require(ProcId p) const;

  Word parse_word(std::string_view text) const;
  std::string format_word(const Word& w) const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<std::string> process_names_;
  std::vector<std::string> letter_names_;
  std::vector<ProcSet> domains_;
  std::vector<bool> controllable_;
  std::unordered_map<std::string, std::uint32_t> letter_index_;
  std::unordered_map<std::string, std::uint32_t> process_index_;
};

bool independent(const Alphabet& alphabet, LetterId a, LetterId b);
std::vector<LetterId> local_letters(const Alphabet& alphabet, ProcId p);

/// Mazurkiewicz class of `u`, sorted. Throws InputError when |u| > max_len
/// and UnsupportedInstance when the class exceeds 10^6 words.
std::vector<Word> trace_closure(const Alphabet& alphabet, const Word& u, std::size_t max_len);

/// Undirected simple graph over named vertices.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::vector<std::string> names);

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(std::size_t v) const { return names_.at(v); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<std::size_t> find(std::string_view name) const;

  void add_edge(std::size_t u, std::size_t v);
  bool adjacent(std::size_t u, std::size_t v) const { return adj_.at(u).at(v) != 0; }
  const std::vector<std::size_t>& neighbors(std::size_t v) const { return nbrs_.at(v); }
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;
  std::size_t num_edges() const;

  friend bool operator==(const Graph& a, const Graph& b) { return a.names_ == b.names_ && a.adj_ == b.adj_; }

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<char>> adj_;
  std::vector<std::vector<std::size_t>> nbrs_;
};

using DependenceGraph = Graph;

/// Vertices are letters (same order); edge iff domains intersect.
DependenceGraph dependence_graph(const Alphabet& alphabet);

/// Rooted tree over the processes of an alphabet, stored as a parent map.
class ProcessTree {
 public:
  ProcessTree() = default;
  /// Throws InputError when the parent map is cyclic or some node does not reach `root`.
  ProcessTree(ProcId root, std::vector<std::optional<ProcId>> parent);
  static ProcessTree from_edges(std::size_t n, ProcId root, const std::vector<std::pair<ProcId, ProcId>>& edges);

  std::size_t size() const noexcept { return parent_.size(); }
  ProcId root() const noexcept { return root_; }
  std::optional<ProcId> parent(ProcId p) const { return parent_.at(idx(p)); }
  const std::vector<ProcId>& children(ProcId p) const { return children_.at(idx(p)); }
  std::size_t depth(ProcId p) const { return depth_.at(idx(p)); }
  bool is_leaf(ProcId p) const { return children(p).empty(); }

  ProcSet subtree(ProcId p) const;
  /// Nodes on the unique path from p to q, both included.
  std::vector<ProcId> path(ProcId p, ProcId q) const;
  /// (parent, child) pairs ordered by child id.
  std::vector<std::pair<ProcId, ProcId>> edges() const;
  std::vector<ProcId> preorder() const;

  friend bool operator==(const ProcessTree& a, const ProcessTree& b) {
    return a.root_ == b.root_ && a.parent_ == b.parent_;
  }

 private:
  ProcId root_{};
  std::vector<std::optional<ProcId>> parent_;
  std::vector<std::vector<ProcId>> children_;
  std::vector<std::size_t> depth_;
};

/// A distributed alphabet paired with a rooted process tree. Tree-likeness
/// is not enforced at construction; see validate_tca.
class Architecture {
 public:
  Architecture() = default;
  Architecture(Alphabet alphabet, ProcessTree tree);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  const ProcessTree& tree() const noexcept { return tree_; }

  /// Throws InputError describing the first violated condition.
  void require_tree_like() const;

  friend bool operator==(const Architecture&, const Architecture&) = default;

 private:
  Alphabet alphabet_;
  ProcessTree tree_;
};

struct LetterConnectivity {
  LetterId letter{};
  bool connected = true;
  /// Tree path between two domain nodes that leaves the domain (empty when connected).
  std::vector<ProcId> broken_path;
};

struct EdgeCoverage {
  ProcId parent{};
  ProcId child{};
  bool covered = true;
};

struct TcaReport {
  std::vector<LetterConnectivity> letters;
  std::vector<EdgeCoverage> edges;

  bool connectivity_holds() const;
  bool coverage_holds() const;
  bool valid() const { return connectivity_holds() && coverage_holds(); }
};

TcaReport validate_tca(const Architecture& arch);

}  // namespace arbor
