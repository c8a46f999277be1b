#include "qcsp/nae.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "qcsp/errors.hpp"

namespace qcsp {

bool NAEInstance::universal(std::string_view var) const {
  return prefix.at(position(var)).first == Quantifier::kForall;
}

std::size_t NAEInstance::position(std::string_view var) const {
  for (std::size_t i = 0; i < prefix.size(); ++i)
    if (prefix[i].second == var) return i;
  throw std::invalid_argument("variable '" + std::string(var) + "' not in prefix");
}

void validate(const NAEInstance& inst) {
  std::set<std::string> seen;
  for (const auto& [q, v] : inst.prefix) {
    if (!seen.insert(v).second) throw std::invalid_argument("variable '" + v + "' declared twice");
  }
  for (const auto& c : inst.clauses)
    for (const auto& v : c)
      if (!seen.count(v)) throw std::invalid_argument("clause variable '" + v + "' not declared");
}

bool has_universal_clause(const NAEInstance& inst) {
  return std::any_of(inst.clauses.begin(), inst.clauses.end(), [&](const auto& c) {
    return std::all_of(c.begin(), c.end(), [&](const std::string& v) { return inst.universal(v); });
  });
}

NAEInstance parse_nae(std::string_view text) {
  NAEInstance inst;
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::vector<std::string> w;
    for (std::string s; words >> s;) w.push_back(s);
    if (w.empty()) continue;
    if (w[0] == "var") {
      if (w.size() != 3 || (w[2] != "forall" && w[2] != "exists"))
        throw ParseError("expected 'var NAME forall|exists'", number, 1);
      if (!inst.clauses.empty()) throw ParseError("var after clause", number, 1);
      inst.prefix.emplace_back(w[2] == "forall" ? Quantifier::kForall : Quantifier::kExists, w[1]);
    } else if (w[0] == "clause") {
      if (w.size() != 4) throw ParseError("expected 'clause A B C'", number, 1);
      inst.clauses.push_back({w[1], w[2], w[3]});
    } else {
      throw ParseError("unknown directive '" + w[0] + "'", number, 1);
    }
  }
  try {
    validate(inst);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), 0, 0);
  }
  return inst;
}

std::string format_nae(const NAEInstance& inst) {
  std::ostringstream out;
  for (const auto& [q, v] : inst.prefix) out << "var " << v << ' ' << to_string(q) << '\n';
  for (const auto& c : inst.clauses) out << "clause " << c[0] << ' ' << c[1] << ' ' << c[2] << '\n';
  return out.str();
}

bool nae_solve(const NAEInstance& inst) {
  validate(inst);
  if (inst.prefix.size() > kNaeVariableLimit) {
    throw GuardError("nae_solve refuses " + std::to_string(inst.prefix.size()) + " variables (limit " +
                     std::to_string(kNaeVariableLimit) + ")");
  }
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < inst.prefix.size(); ++i) index[inst.prefix[i].second] = i;
  std::vector<std::array<std::size_t, 3>> clauses;
  for (const auto& c : inst.clauses) clauses.push_back({index[c[0]], index[c[1]], index[c[2]]});
  std::vector<bool> value(inst.prefix.size());
  std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
    if (i == inst.prefix.size()) {
      return std::all_of(clauses.begin(), clauses.end(), [&](const auto& c) {
        return !(value[c[0]] == value[c[1]] && value[c[1]] == value[c[2]]);
      });
    }
    const bool universal = inst.prefix[i].first == Quantifier::kForall;
    for (bool b : {false, true}) {
      value[i] = b;
      const bool ok = rec(i + 1);
      if (universal && !ok) return false;
      if (!universal && ok) return true;
    }
    return universal;
  };
  return rec(0);
}

NAEInstance random_nae(std::uint64_t seed, int vars, int clauses, double universal_rate) {
  if (vars < 1) throw std::invalid_argument("random_nae needs a variable");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution forall(universal_rate);
  std::uniform_int_distribution<int> pick(0, vars - 1);
  NAEInstance inst;
  for (int i = 0; i < vars; ++i)
    inst.prefix.emplace_back(forall(rng) ? Quantifier::kForall : Quantifier::kExists, "a" + std::to_string(i + 1));
  const bool any_existential = std::any_of(inst.prefix.begin(), inst.prefix.end(),
                                           [](const auto& p) { return p.first == Quantifier::kExists; });
  if (!any_existential) inst.prefix.back().first = Quantifier::kExists;
  while (static_cast<int>(inst.clauses.size()) < clauses) {
    std::array<std::string, 3> c;
    for (auto& v : c) v = inst.prefix[static_cast<std::size_t>(pick(rng))].second;
    if (std::all_of(c.begin(), c.end(), [&](const std::string& v) { return inst.universal(v); })) continue;
    inst.clauses.push_back(std::move(c));
  }
  return inst;
}

}  // namespace qcsp
