#pragma once

// The one constraint-search engine behind homomorphism search, polymorphism
// search and the game evaluator. Variables are 0-based; values are target
// vertices 1..|T| stored as bits of a 64-bit mask.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "qcsp/graph.hpp"

namespace qcsp {

using VertexMask = std::uint64_t;
inline constexpr int kMaxTargetVertices = 64;

constexpr VertexMask vertex_bit(int v) { return VertexMask{1} << (v - 1); }
VertexMask full_mask(int n);
int popcount(VertexMask m);
int lowest_vertex(VertexMask m);
std::vector<int> mask_vertices(VertexMask m);
VertexMask mask_of(std::span<const int> vertices);

enum class ArcKind : std::uint8_t { kEdge, kEqual };

struct Arc {
  int other;
  ArcKind kind;
};

// Binary constraints over variables, all valued in one target graph.
class ConstraintNetwork {
 public:
  ConstraintNetwork(int variables, const Graph& target);

  void add_edge(int a, int b);
  void add_equal(int a, int b);

  [[nodiscard]] int variables() const noexcept { return static_cast<int>(arcs_.size()); }
  [[nodiscard]] int target_size() const noexcept { return target_size_; }
  [[nodiscard]] std::span<const Arc> arcs(int v) const { return arcs_[static_cast<std::size_t>(v)]; }
  [[nodiscard]] bool self_edge(int v) const { return self_edge_[static_cast<std::size_t>(v)]; }
  [[nodiscard]] VertexMask adjacency(int t) const { return adjacency_[static_cast<std::size_t>(t - 1)]; }
  [[nodiscard]] VertexMask looped() const noexcept { return looped_; }
  [[nodiscard]] VertexMask all() const noexcept { return full_mask(target_size_); }
  // Union of target neighbourhoods over the vertices in m.
  [[nodiscard]] VertexMask support(VertexMask m) const;

 private:
  int target_size_;
  std::vector<VertexMask> adjacency_;
  VertexMask looped_ = 0;
  std::vector<std::vector<Arc>> arcs_;
  std::vector<bool> self_edge_;
};

struct SearchOptions {
  // Branching goes to the lowest priority first, then smallest domain, then
  // lowest variable index. Empty means all zero.
  std::vector<int> priority;
  // Value tried first for each variable when still in its domain (0 = none).
  std::vector<int> preferred;
  // Universally quantified variables; only decide() accepts them.
  std::vector<bool> universal;
  bool decompose = true;
  bool memo = true;
};

class SearchEngine {
 public:
  SearchEngine(const ConstraintNetwork& network, std::vector<VertexMask> domains,
               SearchOptions options = {});

  // Existential search; returns one value per variable.
  std::optional<std::vector<int>> find();

  // Solutions covering every target vertex.
  std::optional<std::vector<int>> find_surjective();

  // Visits solutions in search order until the visitor returns true.
  // Returns whether the visitor stopped the enumeration.
  bool enumerate(const std::function<bool(std::span<const int>)>& visitor);

  // Truth of the quantified problem: variables are played in priority order,
  // universals over their whole initial domain.
  bool decide();

  [[nodiscard]] std::uint64_t nodes() const noexcept { return nodes_; }

 private:
  bool restrict(int var, VertexMask mask);
  bool propagate();
  void push();
  void pop();
  [[nodiscard]] VertexMask domain(int v) const { return domains_[static_cast<std::size_t>(v)]; }
  [[nodiscard]] bool fixed(int v) const;
  [[nodiscard]] bool universals_intact() const;
  [[nodiscard]] int priority(int v) const;
  [[nodiscard]] std::vector<int> value_order(int var) const;

  std::vector<std::vector<int>> components(std::span<const int> vars) const;
  [[nodiscard]] int choose(std::span<const int> vars) const;
  std::vector<int> open_variables() const;

  bool solve_all(std::span<const int> vars);
  bool solve_component(std::span<const int> comp);
  bool decide_all(std::span<const int> vars);
  bool decide_component(std::span<const int> comp);
  std::string memo_key(std::span<const int> comp) const;
  bool surjective_possible() const;
  bool surjective_search();
  bool enumerate_search(const std::function<bool(std::span<const int>)>& visitor);
  std::vector<int> solution() const;

  const ConstraintNetwork& network_;
  SearchOptions options_;
  std::vector<VertexMask> domains_;
  std::vector<VertexMask> ranges_;
  std::vector<bool> played_;
  std::vector<std::pair<int, VertexMask>> trail_;
  std::vector<std::size_t> levels_;
  std::vector<int> queue_;
  std::vector<bool> queued_;
  std::unordered_map<std::string, bool> memo_;
  std::uint64_t nodes_ = 0;
  bool consistent_ = true;
};

}  // namespace qcsp
