#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qcsp/graph.hpp"

namespace qcsp {

enum class Quantifier { kExists, kForall };
enum class AtomKind { kEdge, kEqual };

struct Atom {
  AtomKind kind = AtomKind::kEdge;
  std::string left;
  std::string right;

  friend bool operator==(const Atom&, const Atom&) = default;
};

inline Atom edge(std::string a, std::string b) { return {AtomKind::kEdge, std::move(a), std::move(b)}; }
inline Atom eq(std::string a, std::string b) { return {AtomKind::kEqual, std::move(a), std::move(b)}; }

struct QuantBlock {
  Quantifier quantifier = Quantifier::kExists;
  std::vector<std::string> variables;
  // Relativisation: allowed template vertices, sorted and distinct.
  std::optional<std::vector<int>> range;

  friend bool operator==(const QuantBlock&, const QuantBlock&) = default;
};

// Prenex positive Horn formula. Blocks are outermost first. A formula with
// free variables is an open fragment; a sentence has none.
struct Formula {
  std::vector<QuantBlock> blocks;
  std::vector<Atom> matrix;

  [[nodiscard]] std::vector<std::string> bound_variables() const;
  [[nodiscard]] std::set<std::string> atom_variables() const;
  [[nodiscard]] std::set<std::string> free_variables() const;
  [[nodiscard]] std::set<std::string> all_variables() const;
  [[nodiscard]] std::size_t variable_count() const { return bound_variables().size(); }
  [[nodiscard]] bool has_equalities() const;

  friend bool operator==(const Formula&, const Formula&) = default;
};

using PHSentence = Formula;

// Throws std::invalid_argument on duplicate quantification, repeated block
// variables, empty or unsorted ranges, or (for sentences) free variables.
void validate(const Formula& f, bool require_closed = true);

// Sentence grammar:
//   sentence := block (";" block)* ";" conj
//   block    := ("forall"|"exists") var+ ["in" "{" int ("," int)* "}"]
//   conj     := atom ("&" atom)* | "true"
//   atom     := "edge(" var "," var ")" | "eq(" var "," var ")"
// Variables match [A-Za-z_][A-Za-z0-9_']*. '#' starts a comment.
PHSentence parse_sentence(std::string_view text);
std::string serialize(const Formula& f);

// JSON text mirroring the structs field for field.
std::string formula_json(const Formula& f);
Formula formula_from_json(std::string_view text);

struct EqualityElimination {
  // Set unless the sentence is degenerate.
  std::optional<PHSentence> sentence;
  // False on every template with at least 2 vertices. When the cause is a
  // universal whose range is not inside an equated existential's range, false
  // on every template where the universal can leave that range.
  bool degenerate = false;
  std::string reason;
};

EqualityElimination eliminate_equalities(const PHSentence& s);

struct InstanceGraph {
  Graph graph;  // vertex i is variable names[i - 1], in prefix order
  std::vector<std::string> names;
  std::vector<Quantifier> quantifier;
  std::vector<int> block;     // 0-based block index
  std::vector<int> position;  // 0-based position in the prefix

  [[nodiscard]] int vertex(std::string_view name) const;
};

// Throws std::invalid_argument when equality atoms are present.
InstanceGraph instance_graph(const PHSentence& s);

// Consecutive edge atoms along vars.
std::vector<Atom> chain(std::span<const std::string> vars);

// Indices 1..m from i to j along the shorter arc of the m-cycle; ties go
// ascending. first_step (i+1 or i-1 mod m) forces the direction.
std::vector<int> cycle_chain(int i, int j, int m, std::optional<int> first_step = std::nullopt);

// Loop atoms E(v,v) at each index of cycle_chain(i, j, names.size());
// names[k - 1] names index k.
std::vector<Atom> ref_atoms(int i, int j, std::span<const std::string> names);
// Edge atoms along cycle_chain(i, j, names.size(), first_step).
std::vector<Atom> cycle_chain_atoms(int i, int j, std::span<const std::string> names,
                                    std::optional<int> first_step = std::nullopt);

// base followed by enough primes to avoid every name in used.
std::string fresh_name(const std::string& base, const std::set<std::string>& used);

// Quantifier macros. Each binds var (free in body) and returns the expanded
// fragment with new blocks placed in front of body's blocks.
Formula counting_exists(int i, const std::string& var, const Formula& body);
Formula diamond(const std::string& var, const Formula& body, int m);
Formula heart(const std::string& var, const Formula& body);

// Number of intermediate existentials in diamond(_, _, m).
int diamond_intermediates(int m);

// Prepends a block binding vars.
Formula quantify(Quantifier q, std::vector<std::string> vars, Formula body,
                 std::optional<std::vector<int>> range = std::nullopt);

std::string_view to_string(Quantifier q);

}  // namespace qcsp
