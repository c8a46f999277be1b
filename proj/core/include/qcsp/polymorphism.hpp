#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qcsp/graph.hpp"

namespace qcsp {

// Dense k-ary operation table on 1..n. Undefined entries hold kUnset.
// Tuple (a_1..a_k) lives at row-major index sum (a_i - 1) n^(k-i), which is
// also vertex index - 1 in power(g, k).
class OpTable {
 public:
  static constexpr int kUnset = 0;

  OpTable(int arity, int size, bool idempotent = false);

  [[nodiscard]] int arity() const noexcept { return arity_; }
  [[nodiscard]] int size() const noexcept { return size_; }
  [[nodiscard]] bool idempotent() const noexcept { return idempotent_; }
  [[nodiscard]] std::size_t entry_count() const noexcept { return entries_.size(); }

  [[nodiscard]] std::size_t index(std::span<const int> tuple) const;
  [[nodiscard]] std::vector<int> tuple(std::size_t index) const;

  [[nodiscard]] int at(std::span<const int> tuple) const { return entries_[index(tuple)]; }
  [[nodiscard]] int at_index(std::size_t i) const { return entries_.at(i); }
  void set(std::span<const int> tuple, int value);
  void set_index(std::size_t i, int value);

  [[nodiscard]] bool total() const;

  friend bool operator==(const OpTable&, const OpTable&) = default;

 private:
  int arity_;
  int size_;
  bool idempotent_;
  std::vector<int> entries_;
};

OpTable projection(int arity, int size, int coordinate = 1);

struct PolymorphismCheck {
  bool preserved = true;
  // A k-tuple of edges (as argument tuples `from`, `to`) whose image is not an edge.
  std::vector<int> from;
  std::vector<int> to;
};

// Throws std::invalid_argument for partial tables or a size mismatch.
PolymorphismCheck check_polymorphism(const Graph& g, const OpTable& table);
bool is_polymorphism(const Graph& g, const OpTable& table);

std::optional<OpTable> find_majority_polymorphism(const Graph& g);

// Completes seed to a total table preserving the graph on 1..seed.size()
// whose edges are preserved_pairs (each pair read as an undirected edge).
// Untouched entries prefer the first projection, so an unconstrained seed
// completes to it.
std::optional<OpTable> complete_polymorphism(const OpTable& seed,
                                             const std::vector<std::pair<int, int>>& preserved_pairs);
// Graph-driven overload: preserved_pairs must have vertices in g.
std::optional<OpTable> complete_polymorphism(const Graph& g, const OpTable& seed,
                                             const std::vector<std::pair<int, int>>& preserved_pairs);

// Visits completions in search order until the visitor returns true.
bool enumerate_completions(const OpTable& seed,
                           const std::vector<std::pair<int, int>>& preserved_pairs,
                           const std::function<bool(const OpTable&)>& visitor);

// Smallest c such that every binary slice obtained by fixing one argument of
// a ternary table to c is surjective.
std::optional<int> surjective_slice_constant(const OpTable& ternary);

// Seed syntax: "arity K; size N; idempotent; preserves 01 10 ...; value 302=0"
// with statements separated by ';' or newlines. Digits are 0-based vertex
// names, mapped to 1-based vertices; tuple digits are in argument order.
struct PolymorphismSeed {
  OpTable table;
  std::vector<std::pair<int, int>> preserves;
  // Values the flags forbid (e.g. a diagonal entry breaking idempotence);
  // such a seed has no completion.
  std::vector<std::string> conflicts;
};

PolymorphismSeed parse_polymorphism_seed(std::string_view text);
std::optional<OpTable> complete_polymorphism(const PolymorphismSeed& seed);

}  // namespace qcsp
