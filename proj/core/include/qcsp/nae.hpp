#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qcsp/formula.hpp"

namespace qcsp {

// Quantified not-all-equal 3-SAT with positive literals.
struct NAEInstance {
  std::vector<std::pair<Quantifier, std::string>> prefix;
  std::vector<std::array<std::string, 3>> clauses;

  [[nodiscard]] bool universal(std::string_view var) const;
  [[nodiscard]] std::size_t position(std::string_view var) const;
};

// Throws std::invalid_argument for repeated prefix variables or clause
// variables missing from the prefix.
void validate(const NAEInstance& inst);

// Does some clause consist of three universal variables?
bool has_universal_clause(const NAEInstance& inst);

// "var NAME forall|exists" lines, then "clause A B C" lines; '#' comments.
NAEInstance parse_nae(std::string_view text);
std::string format_nae(const NAEInstance& inst);

inline constexpr std::size_t kNaeVariableLimit = 20;

// Game-tree evaluation. Throws GuardError above kNaeVariableLimit variables.
bool nae_solve(const NAEInstance& inst);

// Uniform random instance over vars variables and clauses clauses; no clause
// has three universals.
NAEInstance random_nae(std::uint64_t seed, int vars, int clauses, double universal_rate = 0.3);

}  // namespace qcsp
