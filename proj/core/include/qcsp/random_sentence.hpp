#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "qcsp/formula.hpp"

namespace qcsp {

struct RandomSentenceOptions {
  int max_variables = 8;
  int max_atoms = 10;
  // Chance that an atom is an equality.
  double equality_rate = 0.1;
  // Chance that a block carries a random range over 1..template_size.
  double range_rate = 0.0;
  int template_size = 4;
};

// Deterministic in seed. Variables are x1..xn; consecutive variables share a
// block with probability 1/2 when their quantifiers agree.
PHSentence random_sentence(std::uint64_t seed, const RandomSentenceOptions& opts = {});

// Suite member i uses seed + i.
std::vector<PHSentence> random_suite(std::uint64_t seed, std::size_t count,
                                     const RandomSentenceOptions& opts = {});

// Every sentence with 1..max_variables variables, one variable per block,
// each quantifier pattern and each subset of the possible atoms (edge atoms
// on unordered pairs including loops, equalities on distinct pairs).
void for_each_small_sentence(int max_variables, bool with_equalities,
                             const std::function<void(const PHSentence&)>& visit);

}  // namespace qcsp
