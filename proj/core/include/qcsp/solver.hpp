#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qcsp/formula.hpp"
#include "qcsp/graph.hpp"

namespace qcsp {

enum class EvalEngine { kGame, kNaive };

struct EvalOptions {
  EvalEngine engine = EvalEngine::kGame;
  bool memo = true;
  // Build an EvalWitness; costs extra evaluations.
  bool witness = false;
  int strategy_samples = 4;
  std::uint64_t seed = 1;
};

inline constexpr std::size_t kNaiveVariableLimit = 12;

struct Move {
  std::string variable;
  int value = 0;

  friend bool operator==(const Move&, const Move&) = default;
};

struct EvalWitness {
  bool outcome = false;
  // True outcome: full satisfying assignments, one per sampled universal
  // assignment, produced by a winning existential strategy.
  std::vector<std::vector<Move>> strategy_sample;
  // False outcome: a play in prefix order fixing every universal (and the
  // existentials before the last one) after which no existential completion
  // satisfies the matrix.
  std::vector<Move> refutation;
  std::uint64_t nodes = 0;
};

// Truth of s on t. Throws std::invalid_argument for invalid sentences or
// ranges outside t, GuardError when the naive engine exceeds its limit.
EvalWitness qcsp_eval(const PHSentence& s, const Graph& t, const EvalOptions& opts = {});
bool qcsp_eval_naive(const PHSentence& s, const Graph& t);

// Truth of s with the given variables fixed. Pinned universals are treated
// as fixed moves.
bool qcsp_eval_pinned(const PHSentence& s, const Graph& t, const std::map<std::string, int>& pins,
                      bool memo = true);

// Mechanical check of the witness against s and t.
bool replay(const PHSentence& s, const Graph& t, const EvalWitness& w);

std::string witness_json(const EvalWitness& w);

struct RelativisationReport {
  std::size_t checked = 0;
  // Sentences whose equalities are degenerate; relativisation is stated for
  // equality-free sentences.
  std::size_t skipped = 0;
  // Indices into the sample where relativised and plain truth differ.
  std::vector<std::size_t> disagreements;
};

// Replaces every universal block's range by u_range and every existential
// block's range by x_range.
PHSentence relativise(const PHSentence& s, const std::vector<int>& u_range,
                      const std::vector<int>& x_range);

// Equalities are eliminated before comparing.
RelativisationReport check_relativisation(const Graph& t, const std::vector<int>& u_range,
                                          const std::vector<int>& x_range,
                                          const std::vector<PHSentence>& sample);

}  // namespace qcsp
