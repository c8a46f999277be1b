#include "qcsp/formula.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

namespace qcsp {

std::vector<std::string> Formula::bound_variables() const {
  std::vector<std::string> out;
  for (const auto& b : blocks) out.insert(out.end(), b.variables.begin(), b.variables.end());
  return out;
}

std::set<std::string> Formula::atom_variables() const {
  std::set<std::string> out;
  for (const auto& a : matrix) {
    out.insert(a.left);
    out.insert(a.right);
  }
  return out;
}

std::set<std::string> Formula::free_variables() const {
  auto out = atom_variables();
  for (const auto& v : bound_variables()) out.erase(v);
  return out;
}

std::set<std::string> Formula::all_variables() const {
  auto out = atom_variables();
  for (const auto& v : bound_variables()) out.insert(v);
  return out;
}

bool Formula::has_equalities() const {
  return std::any_of(matrix.begin(), matrix.end(),
                     [](const Atom& a) { return a.kind == AtomKind::kEqual; });
}

std::string_view to_string(Quantifier q) { return q == Quantifier::kForall ? "forall" : "exists"; }

void validate(const Formula& f, bool require_closed) {
  std::set<std::string> seen;
  for (const auto& b : f.blocks) {
    if (b.variables.empty()) throw std::invalid_argument("empty quantifier block");
    for (const auto& v : b.variables) {
      if (!seen.insert(v).second) throw std::invalid_argument("variable '" + v + "' quantified twice");
    }
    if (b.range) {
      if (b.range->empty()) throw std::invalid_argument("empty range");
      if (!std::is_sorted(b.range->begin(), b.range->end()) ||
          std::adjacent_find(b.range->begin(), b.range->end()) != b.range->end()) {
        throw std::invalid_argument("range must be sorted and distinct");
      }
      if (b.range->front() < 1) throw std::invalid_argument("range vertices start at 1");
    }
  }
  if (require_closed) {
    const auto free = f.free_variables();
    if (!free.empty()) throw std::invalid_argument("variable '" + *free.begin() + "' unquantified");
  }
}

std::string formula_json(const Formula& f) {
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& b : f.blocks) {
    nlohmann::json jb{{"quantifier", to_string(b.quantifier)}, {"variables", b.variables}};
    jb["range"] = b.range ? nlohmann::json(*b.range) : nlohmann::json(nullptr);
    blocks.push_back(std::move(jb));
  }
  nlohmann::json matrix = nlohmann::json::array();
  for (const auto& a : f.matrix) {
    matrix.push_back({{"kind", a.kind == AtomKind::kEdge ? "edge" : "equality"},
                      {"left", a.left},
                      {"right", a.right}});
  }
  return nlohmann::json{{"blocks", blocks}, {"matrix", matrix}}.dump();
}

Formula formula_from_json(std::string_view text) {
  Formula f;
  try {
    const auto j = nlohmann::json::parse(text);
    for (const auto& jb : j.at("blocks")) {
      QuantBlock b;
      const auto q = jb.at("quantifier").get<std::string>();
      if (q != "forall" && q != "exists") throw std::invalid_argument("bad quantifier " + q);
      b.quantifier = q == "forall" ? Quantifier::kForall : Quantifier::kExists;
      b.variables = jb.at("variables").get<std::vector<std::string>>();
      if (jb.contains("range") && !jb["range"].is_null()) b.range = jb["range"].get<std::vector<int>>();
      f.blocks.push_back(std::move(b));
    }
    for (const auto& ja : j.at("matrix")) {
      const auto kind = ja.at("kind").get<std::string>();
      if (kind != "edge" && kind != "equality") throw std::invalid_argument("bad atom kind " + kind);
      f.matrix.push_back({kind == "edge" ? AtomKind::kEdge : AtomKind::kEqual,
                          ja.at("left").get<std::string>(), ja.at("right").get<std::string>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("formula json: ") + e.what());
  }
  validate(f, false);
  return f;
}

namespace {

struct PrefixInfo {
  std::map<std::string, int> position;
  std::vector<std::string> names;
  std::vector<Quantifier> quantifier;
  std::vector<int> block;
  std::vector<const std::optional<std::vector<int>>*> range;
};

PrefixInfo prefix_info(const Formula& f) {
  PrefixInfo p;
  for (std::size_t b = 0; b < f.blocks.size(); ++b) {
    for (const auto& v : f.blocks[b].variables) {
      p.position[v] = static_cast<int>(p.names.size());
      p.names.push_back(v);
      p.quantifier.push_back(f.blocks[b].quantifier);
      p.block.push_back(static_cast<int>(b));
      p.range.push_back(&f.blocks[b].range);
    }
  }
  return p;
}

std::optional<std::vector<int>> intersect(const std::optional<std::vector<int>>& a,
                                          const std::optional<std::vector<int>>& b) {
  if (!a) return b;
  if (!b) return a;
  std::vector<int> out;
  std::set_intersection(a->begin(), a->end(), b->begin(), b->end(), std::back_inserter(out));
  return out;
}

bool contained(const std::optional<std::vector<int>>& inner,
               const std::optional<std::vector<int>>& outer) {
  if (!outer) return true;
  if (!inner) return false;
  return std::includes(outer->begin(), outer->end(), inner->begin(), inner->end());
}

}  // namespace

EqualityElimination eliminate_equalities(const PHSentence& input) {
  validate(input);
  // A universal over one value is an existential over that value.
  PHSentence s = input;
  for (auto& b : s.blocks)
    if (b.range && b.range->size() == 1) b.quantifier = Quantifier::kExists;
  const PrefixInfo p = prefix_info(s);
  const int n = static_cast<int>(p.names.size());
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (const auto& a : s.matrix) {
    if (a.kind != AtomKind::kEqual) continue;
    int x = find(p.position.at(a.left));
    int y = find(p.position.at(a.right));
    if (x == y) continue;
    // The representative is the earliest variable of the class.
    if (y < x) std::swap(x, y);
    parent[static_cast<std::size_t>(y)] = x;
  }

  EqualityElimination result;
  std::vector<std::optional<std::vector<int>>> class_range(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) class_range[static_cast<std::size_t>(v)] = *p.range[static_cast<std::size_t>(v)];
  for (int v = 0; v < n; ++v) {
    const int r = find(v);
    if (r == v) continue;
    const auto& name = p.names[static_cast<std::size_t>(v)];
    const auto& rep = p.names[static_cast<std::size_t>(r)];
    if (p.quantifier[static_cast<std::size_t>(v)] == Quantifier::kForall) {
      result.degenerate = true;
      result.reason = "universal '" + name + "' equated with earlier variable '" + rep + "'";
      return result;
    }
    auto& cr = class_range[static_cast<std::size_t>(r)];
    if (p.quantifier[static_cast<std::size_t>(r)] == Quantifier::kForall) {
      if (!contained(cr, *p.range[static_cast<std::size_t>(v)])) {
        result.degenerate = true;
        result.reason = "range of universal '" + rep + "' exceeds range of '" + name + "'";
        return result;
      }
    } else {
      cr = intersect(cr, *p.range[static_cast<std::size_t>(v)]);
      if (cr && cr->empty()) {
        result.degenerate = true;
        result.reason = "equality class of '" + rep + "' has an empty range";
        return result;
      }
    }
  }

  PHSentence out;
  for (std::size_t b = 0; b < s.blocks.size(); ++b) {
    QuantBlock kept{s.blocks[b].quantifier, {}, s.blocks[b].range};
    std::vector<QuantBlock> split;
    for (const auto& v : s.blocks[b].variables) {
      const int i = p.position.at(v);
      if (find(i) != i) continue;
      const auto& r = class_range[static_cast<std::size_t>(i)];
      if (r == s.blocks[b].range) {
        kept.variables.push_back(v);
      } else {
        split.push_back({s.blocks[b].quantifier, {v}, r});
      }
    }
    if (!kept.variables.empty()) out.blocks.push_back(std::move(kept));
    for (auto& blk : split) out.blocks.push_back(std::move(blk));
  }
  for (const auto& a : s.matrix) {
    if (a.kind == AtomKind::kEqual) continue;
    out.matrix.push_back(edge(p.names[static_cast<std::size_t>(find(p.position.at(a.left)))],
                              p.names[static_cast<std::size_t>(find(p.position.at(a.right)))]));
  }
  result.sentence = std::move(out);
  return result;
}

int InstanceGraph::vertex(std::string_view name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<int>(i) + 1;
  throw std::invalid_argument("no variable named '" + std::string(name) + "'");
}

InstanceGraph instance_graph(const PHSentence& s) {
  validate(s);
  if (s.has_equalities()) throw std::invalid_argument("instance graph needs an equality-free sentence");
  const PrefixInfo p = prefix_info(s);
  InstanceGraph ig{Graph(static_cast<int>(p.names.size())), p.names, p.quantifier, p.block, {}};
  ig.position.resize(p.names.size());
  std::iota(ig.position.begin(), ig.position.end(), 0);
  for (const auto& a : s.matrix) ig.graph.add_edge(p.position.at(a.left) + 1, p.position.at(a.right) + 1);
  return ig;
}

std::vector<Atom> chain(std::span<const std::string> vars) {
  if (vars.size() < 2) throw std::invalid_argument("chain needs at least 2 variables");
  std::vector<Atom> out;
  for (std::size_t i = 0; i + 1 < vars.size(); ++i) out.push_back(edge(vars[i], vars[i + 1]));
  return out;
}

std::vector<int> cycle_chain(int i, int j, int m, std::optional<int> first_step) {
  if (m < 1 || i < 1 || i > m || j < 1 || j > m) throw std::invalid_argument("cycle_chain index out of range");
  auto wrap = [m](int x) { return ((x - 1) % m + m) % m + 1; };
  const int forward = ((j - i) % m + m) % m;
  int step = forward <= m - forward ? 1 : -1;
  if (first_step) {
    if (m >= 3 && *first_step == wrap(i + 1)) {
      step = 1;
    } else if (m >= 3 && *first_step == wrap(i - 1)) {
      step = -1;
    } else {
      throw std::invalid_argument("forced first step must be adjacent to the start");
    }
  }
  std::vector<int> out{i};
  for (int x = i; x != j;) {
    x = wrap(x + step);
    out.push_back(x);
  }
  return out;
}

std::vector<Atom> ref_atoms(int i, int j, std::span<const std::string> names) {
  std::vector<Atom> out;
  for (int k : cycle_chain(i, j, static_cast<int>(names.size()))) {
    const auto& v = names[static_cast<std::size_t>(k - 1)];
    out.push_back(edge(v, v));
  }
  return out;
}

std::vector<Atom> cycle_chain_atoms(int i, int j, std::span<const std::string> names,
                                    std::optional<int> first_step) {
  const auto idx = cycle_chain(i, j, static_cast<int>(names.size()), first_step);
  std::vector<Atom> out;
  for (std::size_t k = 0; k + 1 < idx.size(); ++k) {
    out.push_back(edge(names[static_cast<std::size_t>(idx[k] - 1)],
                       names[static_cast<std::size_t>(idx[k + 1] - 1)]));
  }
  return out;
}

}  // namespace qcsp
