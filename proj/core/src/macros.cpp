#include <stdexcept>

#include "qcsp/formula.hpp"

namespace qcsp {

std::string fresh_name(const std::string& base, const std::set<std::string>& used) {
  std::string name = base + "'";
  while (used.contains(name)) name += '\'';
  return name;
}

Formula quantify(Quantifier q, std::vector<std::string> vars, Formula body,
                 std::optional<std::vector<int>> range) {
  if (vars.empty()) return body;
  body.blocks.insert(body.blocks.begin(), QuantBlock{q, std::move(vars), std::move(range)});
  return body;
}

Formula counting_exists(int i, const std::string& var, const Formula& body) {
  if (i < 1 || i > 3) throw std::invalid_argument("counting quantifier index must be 1, 2 or 3");
  Formula out = body;
  out = quantify(Quantifier::kExists, {var}, std::move(out));
  if (i == 1) return out;
  auto used = body.all_variables();
  used.insert(var);
  const std::string p1 = fresh_name(var, used);
  used.insert(p1);
  out.matrix.push_back(edge(p1, var));
  std::vector<std::string> universals{p1};
  if (i == 3) {
    const std::string p2 = fresh_name(var, used);
    out.matrix.push_back(edge(p2, var));
    universals.insert(universals.begin(), p2);
  }
  return quantify(Quantifier::kForall, std::move(universals), std::move(out));
}

int diamond_intermediates(int m) {
  if (m < 5) throw std::invalid_argument("diamond needs m >= 5");
  return m / 2 - 2;
}

Formula diamond(const std::string& var, const Formula& body, int m) {
  const int k = diamond_intermediates(m);
  auto used = body.all_variables();
  used.insert(var);
  const std::string prime = fresh_name(var, used);
  used.insert(prime);
  std::vector<std::string> path{prime};
  for (int i = 1; i <= k; ++i) {
    std::string name = var + "_" + std::to_string(i);
    while (used.contains(name)) name += '\'';
    used.insert(name);
    path.push_back(std::move(name));
  }
  path.push_back(var);
  Formula out = body;
  const auto atoms = chain(path);
  out.matrix.insert(out.matrix.end(), atoms.begin(), atoms.end());
  out = quantify(Quantifier::kExists, {var}, std::move(out));
  out = quantify(Quantifier::kExists, std::vector<std::string>(path.begin() + 1, path.end() - 1),
                 std::move(out));
  return quantify(Quantifier::kForall, {prime}, std::move(out));
}

Formula heart(const std::string& var, const Formula& body) {
  auto used = body.all_variables();
  used.insert(var);
  const std::string prime = fresh_name(var, used);
  Formula out = body;
  out.matrix.push_back(edge(prime, var));
  out = quantify(Quantifier::kExists, {var}, std::move(out));
  return quantify(Quantifier::kForall, {prime}, std::move(out));
}

}  // namespace qcsp
