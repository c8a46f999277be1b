#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qcsp/formula.hpp"
#include "qcsp/graph.hpp"

namespace qcsp {

enum class UpperBound { kL, kNL, kNP, kPspace };
enum class LowerBound { kTrivial, kNPHard, kPspaceHard };

struct ComplexityVerdict {
  ReflexivityWord word;
  ReflexivityWord normal_form;
  UpperBound upper = UpperBound::kPspace;
  LowerBound lower = LowerBound::kTrivial;
  // Tags of the results that fired, e.g. "prop-c0111" or "thm-over4-nl".
  std::vector<std::string> rules;
};

std::string_view to_string(UpperBound u);
std::string_view to_string(LowerBound l);

// Complexity of QCSP on the partially reflexive cycle named by word.
// Throws std::invalid_argument when |word| < 3.
ComplexityVerdict classify(const ReflexivityWord& word);
std::string verdict_json(const ComplexityVerdict& v);

enum class ForbiddenCase { kI, kII, kIII, kIV };

struct ForbiddenWitness {
  ForbiddenCase kind = ForbiddenCase::kI;
  // 1-based instance-graph vertices. Case i: the edge's endpoints. Case ii:
  // the existential then three of its universals. Cases iii and iv: the
  // path y_1..y_m.
  std::vector<int> vertices;
  // Cases iii and iv: the universals Adversary plays away from 1. Case iii
  // lists the one at y_1 then the one at y_m; case iv lists the one at y_m.
  // Every other universal on the pattern plays 1.
  std::vector<int> forcing;
};

std::string_view to_string(ForbiddenCase c);

// Complete search for the four forbidden subinstances of QCSP(C0111). The
// path cases require the forcing universals to be realisable: they are
// distinct and none of them is the only earlier universal of a path vertex.
std::optional<ForbiddenWitness> find_forbidden_pattern(const InstanceGraph& ig);

// Checks a witness against the instance graph exactly as the case requires.
bool replay_forbidden(const InstanceGraph& ig, const ForbiddenWitness& w);

// Truth on C0111 by the forbidden-pattern scan. Sentences with explicit
// ranges fall outside the scan's hypotheses and are evaluated by the game
// solver instead.
bool decide_c0111(const PHSentence& s);

}  // namespace qcsp
