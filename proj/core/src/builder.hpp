#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qcsp/formula.hpp"

namespace qcsp::detail {

// Accumulates the matrix and provenance of a reduction output.
class Builder {
 public:
  std::string add(const std::string& name, const std::string& role) {
    if (!provenance.emplace(name, role).second) throw std::logic_error("duplicate variable " + name);
    return name;
  }
  void edge(const std::string& a, const std::string& b) { matrix.push_back(qcsp::edge(a, b)); }
  void loop(const std::string& a) { edge(a, a); }
  void eq(const std::string& a, const std::string& b) { matrix.push_back(qcsp::eq(a, b)); }

  // Path from..to shaped like word (endpoints included); interior vertices
  // are named prefix_1.. and looped where word has '1'.
  std::vector<std::string> path(const std::string& from, const std::string& to, std::string_view word,
                                const std::string& prefix, const std::string& role) {
    if (word.size() < 2) throw std::invalid_argument("path word needs two endpoints");
    std::vector<std::string> interior;
    std::string prev = from;
    for (std::size_t i = 1; i + 1 < word.size(); ++i) {
      const std::string name = prefix + "_" + std::to_string(i);
      add(name, role + " / " + std::to_string(i));
      if (word[i] == '1') loop(name);
      edge(prev, name);
      prev = name;
      interior.push_back(name);
    }
    edge(prev, to);
    return interior;
  }

  // Chain through consecutive names.
  void chain(const std::vector<std::string>& names) {
    for (std::size_t i = 0; i + 1 < names.size(); ++i) edge(names[i], names[i + 1]);
  }

  std::vector<Atom> matrix;
  std::map<std::string, std::string> provenance;
};

// Appends a block, merging with the last one when the quantifier matches.
inline void push_block(std::vector<QuantBlock>& blocks, Quantifier q, const std::vector<std::string>& vars) {
  if (vars.empty()) return;
  if (!blocks.empty() && blocks.back().quantifier == q && !blocks.back().range) {
    blocks.back().variables.insert(blocks.back().variables.end(), vars.begin(), vars.end());
  } else {
    blocks.push_back({q, vars, std::nullopt});
  }
}

// Merges adjacent blocks with equal quantifiers.
inline Formula merged(const Formula& f) {
  Formula out;
  out.matrix = f.matrix;
  for (const auto& b : f.blocks) {
    if (b.range) {
      out.blocks.push_back(b);
    } else {
      push_block(out.blocks, b.quantifier, b.variables);
    }
  }
  return out;
}

}  // namespace qcsp::detail
