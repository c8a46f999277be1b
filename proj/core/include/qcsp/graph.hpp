#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qcsp {

// A {0,1}-string naming a partially reflexive path or cycle. Position i
// (1-based) carries a loop iff the i-th symbol is '1'.
class ReflexivityWord {
 public:
  ReflexivityWord() = default;
  explicit ReflexivityWord(std::string_view bits);

  [[nodiscard]] std::size_t size() const noexcept { return bits_.size(); }
  [[nodiscard]] bool loop(std::size_t position) const { return bits_.at(position - 1) == '1'; }
  [[nodiscard]] const std::string& str() const noexcept { return bits_; }

  [[nodiscard]] std::size_t ones() const;
  [[nodiscard]] std::size_t zeros() const { return size() - ones(); }

  // Cyclic left rotation by k: result[i] = this[(i + k) mod n].
  [[nodiscard]] ReflexivityWord rotated(std::size_t k) const;
  [[nodiscard]] ReflexivityWord reversed() const;

  friend bool operator==(const ReflexivityWord&, const ReflexivityWord&) = default;
  friend auto operator<=>(const ReflexivityWord&, const ReflexivityWord&) = default;

 private:
  std::string bits_;
};

// Finite undirected graph on vertices 1..n. Loops are allowed; every edge is
// stored in both adjacency lists so E(x,y) and E(y,x) always agree.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int vertices);

  [[nodiscard]] int size() const noexcept { return static_cast<int>(adjacency_.size()); }
  int add_vertex();

  void add_edge(int u, int v);
  void add_loop(int v) { add_edge(v, v); }
  [[nodiscard]] bool has_edge(int u, int v) const;
  [[nodiscard]] bool has_loop(int v) const { return has_edge(v, v); }

  // Sorted neighbour list; contains v itself iff v is looped.
  [[nodiscard]] std::span<const int> neighbours(int v) const;

  // Every edge once, as (u, v) with u <= v, in lexicographic order.
  [[nodiscard]] std::vector<std::pair<int, int>> edges() const;
  [[nodiscard]] std::size_t edge_count() const noexcept { return edge_count_; }

  void set_label(const std::string& name, int v);
  [[nodiscard]] std::optional<int> vertex(std::string_view label) const;
  [[nodiscard]] const std::map<std::string, int, std::less<>>& labels() const noexcept {
    return labels_;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.adjacency_ == b.adjacency_ && a.labels_ == b.labels_;
  }

 private:
  void check_vertex(int v) const;

  std::vector<std::vector<int>> adjacency_;
  std::size_t edge_count_ = 0;
  std::map<std::string, int, std::less<>> labels_;
};

Graph make_path(const ReflexivityWord& word);
Graph make_cycle(const ReflexivityWord& word);
Graph make_path(std::string_view word);
Graph make_cycle(std::string_view word);
// Loopless complete graph K_k.
Graph make_clique(int k);

// Vertex (a, b) of g x h is numbered (a - 1) * |h| + b.
Graph direct_product(const Graph& g, const Graph& h);
// k-fold product; vertex (a_1..a_k) is numbered 1 + sum (a_i - 1) |g|^(k-i).
Graph power(const Graph& g, int k);

// Lexicographically least word over all rotations and reflections.
ReflexivityWord cycle_normal_form(const ReflexivityWord& word);

struct DSpectrum {
  std::vector<int> entries;      // ceil(d_i / 2), same order as gap_lengths
  std::vector<int> gap_lengths;  // maximal cyclic runs of non-loops
  int max_entry = 0;
  int k = 0;                     // multiplicity of max_entry
  int g_plus = 0;                // longest gap whose entry is max_entry
};

enum class LoopKind { kIrreflexive, kReflexive, kSingleRun, kDisconnected };

struct LoopStructure {
  LoopKind kind = LoopKind::kIrreflexive;
  int d = 0;  // non-loops
  int e = 0;  // loops
  std::optional<DSpectrum> spectrum;
};

LoopStructure loop_structure(const ReflexivityWord& word);
std::string_view to_string(LoopKind kind);

// Text format: "vertices N", "loop I", "edge I J", "label NAME I"; '#' comments.
Graph parse_graph(std::string_view text);
std::string format_graph(const Graph& g);

}  // namespace qcsp
