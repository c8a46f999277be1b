#include "qcsp/polymorphism.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>
#include <string>

#include "qcsp/errors.hpp"
#include "qcsp/search.hpp"

namespace qcsp {

OpTable::OpTable(int arity, int size, bool idempotent)
    : arity_(arity), size_(size), idempotent_(idempotent) {
  if (arity < 1) throw std::invalid_argument("arity must be >= 1");
  if (size < 1) throw std::invalid_argument("size must be >= 1");
  std::size_t count = 1;
  for (int i = 0; i < arity; ++i) {
    count *= static_cast<std::size_t>(size);
    if (count > (std::size_t{1} << 24)) throw GuardError("operation table too large");
  }
  entries_.assign(count, kUnset);
}

std::size_t OpTable::index(std::span<const int> tuple) const {
  if (static_cast<int>(tuple.size()) != arity_) throw std::invalid_argument("tuple arity mismatch");
  std::size_t i = 0;
  for (int a : tuple) {
    if (a < 1 || a > size_) throw std::invalid_argument("tuple entry out of range");
    i = i * static_cast<std::size_t>(size_) + static_cast<std::size_t>(a - 1);
  }
  return i;
}

std::vector<int> OpTable::tuple(std::size_t index) const {
  std::vector<int> t(static_cast<std::size_t>(arity_));
  for (int pos = arity_ - 1; pos >= 0; --pos) {
    t[static_cast<std::size_t>(pos)] = static_cast<int>(index % static_cast<std::size_t>(size_)) + 1;
    index /= static_cast<std::size_t>(size_);
  }
  return t;
}

void OpTable::set(std::span<const int> tuple, int value) { set_index(index(tuple), value); }

void OpTable::set_index(std::size_t i, int value) {
  if (value < 1 || value > size_) {
    throw std::invalid_argument("table value " + std::to_string(value) + " outside 1.." +
                                std::to_string(size_));
  }
  if (idempotent_) {
    const auto t = tuple(i);
    bool diagonal = true;
    for (int a : t) diagonal = diagonal && a == t[0];
    if (diagonal && value != t[0]) {
      throw std::invalid_argument("idempotent table requires f(x,...,x) = x");
    }
  }
  entries_.at(i) = value;
}

bool OpTable::total() const {
  for (int v : entries_)
    if (v == kUnset) return false;
  return true;
}

OpTable projection(int arity, int size, int coordinate) {
  OpTable t(arity, size);
  for (std::size_t i = 0; i < t.entry_count(); ++i) {
    t.set_index(i, t.tuple(i)[static_cast<std::size_t>(coordinate - 1)]);
  }
  return t;
}

PolymorphismCheck check_polymorphism(const Graph& g, const OpTable& table) {
  if (!table.total()) throw std::invalid_argument("polymorphism check needs a total table");
  if (table.size() != g.size()) throw std::invalid_argument("table size differs from graph");
  std::vector<std::pair<int, int>> arcs;
  for (int u = 1; u <= g.size(); ++u)
    for (int v : g.neighbours(u)) arcs.emplace_back(u, v);
  const int k = table.arity();
  PolymorphismCheck result;
  if (arcs.empty()) return result;
  std::vector<std::size_t> choice(static_cast<std::size_t>(k), 0);
  std::vector<int> from(static_cast<std::size_t>(k)), to(static_cast<std::size_t>(k));
  while (true) {
    for (int i = 0; i < k; ++i) {
      from[static_cast<std::size_t>(i)] = arcs[choice[static_cast<std::size_t>(i)]].first;
      to[static_cast<std::size_t>(i)] = arcs[choice[static_cast<std::size_t>(i)]].second;
    }
    if (!g.has_edge(table.at(from), table.at(to))) {
      result.preserved = false;
      result.from = from;
      result.to = to;
      return result;
    }
    int pos = k - 1;
    while (pos >= 0 && ++choice[static_cast<std::size_t>(pos)] == arcs.size()) {
      choice[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return result;
}

bool is_polymorphism(const Graph& g, const OpTable& table) {
  return check_polymorphism(g, table).preserved;
}

namespace {

struct CompletionProblem {
  Graph relation;
  Graph source;
  std::vector<VertexMask> domains;
  std::vector<int> preferred;
};

CompletionProblem completion_problem(const OpTable& seed,
                                     const std::vector<std::pair<int, int>>& preserved_pairs) {
  const int n = seed.size();
  if (n > kMaxTargetVertices) throw std::invalid_argument("table size exceeds search limit");
  CompletionProblem p{Graph(n), Graph(), {}, {}};
  for (auto [a, b] : preserved_pairs) {
    if (a < 1 || a > n || b < 1 || b > n) {
      throw std::invalid_argument("preserved pair outside 1.." + std::to_string(n));
    }
    p.relation.add_edge(a, b);
  }
  p.source = power(p.relation, seed.arity());
  p.domains.assign(seed.entry_count(), full_mask(n));
  p.preferred.resize(seed.entry_count());
  for (std::size_t i = 0; i < seed.entry_count(); ++i) {
    const auto t = seed.tuple(i);
    p.preferred[i] = t[0];
    if (const int v = seed.at_index(i); v != OpTable::kUnset) p.domains[i] = vertex_bit(v);
    if (seed.idempotent()) {
      bool diagonal = true;
      for (int a : t) diagonal = diagonal && a == t[0];
      if (diagonal) p.domains[i] &= vertex_bit(t[0]);
    }
  }
  return p;
}

OpTable table_from(const OpTable& seed, std::span<const int> values) {
  OpTable out(seed.arity(), seed.size(), seed.idempotent());
  for (std::size_t i = 0; i < values.size(); ++i) out.set_index(i, values[i]);
  return out;
}

}  // namespace

std::optional<OpTable> complete_polymorphism(
    const OpTable& seed, const std::vector<std::pair<int, int>>& preserved_pairs) {
  auto p = completion_problem(seed, preserved_pairs);
  const ConstraintNetwork net = [&] {
    ConstraintNetwork n(p.source.size(), p.relation);
    for (auto [u, v] : p.source.edges()) n.add_edge(u - 1, v - 1);
    return n;
  }();
  SearchOptions options;
  options.preferred = p.preferred;
  SearchEngine engine(net, std::move(p.domains), options);
  if (auto s = engine.find()) return table_from(seed, *s);
  return std::nullopt;
}

std::optional<OpTable> complete_polymorphism(
    const Graph& g, const OpTable& seed, const std::vector<std::pair<int, int>>& preserved_pairs) {
  if (g.size() != seed.size()) throw std::invalid_argument("seed size differs from graph");
  return complete_polymorphism(seed, preserved_pairs);
}

bool enumerate_completions(const OpTable& seed,
                           const std::vector<std::pair<int, int>>& preserved_pairs,
                           const std::function<bool(const OpTable&)>& visitor) {
  auto p = completion_problem(seed, preserved_pairs);
  ConstraintNetwork net(p.source.size(), p.relation);
  for (auto [u, v] : p.source.edges()) net.add_edge(u - 1, v - 1);
  SearchOptions options;
  options.preferred = p.preferred;
  options.decompose = false;
  SearchEngine engine(net, std::move(p.domains), options);
  return engine.enumerate(
      [&](std::span<const int> values) { return visitor(table_from(seed, values)); });
}

std::optional<OpTable> find_majority_polymorphism(const Graph& g) {
  const int n = g.size();
  OpTable seed(3, n);
  for (int x = 1; x <= n; ++x) {
    for (int y = 1; y <= n; ++y) {
      const int a[] = {x, x, y};
      const int b[] = {x, y, x};
      const int c[] = {y, x, x};
      seed.set(a, x);
      seed.set(b, x);
      seed.set(c, x);
    }
  }
  return complete_polymorphism(g, seed, g.edges());
}

std::optional<int> surjective_slice_constant(const OpTable& t) {
  if (t.arity() != 3) throw std::invalid_argument("slices are defined for ternary tables");
  const int n = t.size();
  for (int c = 1; c <= n; ++c) {
    bool all = true;
    for (int position = 0; position < 3 && all; ++position) {
      std::vector<bool> hit(static_cast<std::size_t>(n + 1), false);
      for (int u = 1; u <= n; ++u) {
        for (int v = 1; v <= n; ++v) {
          int args[3];
          int other = 0;
          for (int i = 0; i < 3; ++i) args[i] = i == position ? c : (other++ == 0 ? u : v);
          hit[static_cast<std::size_t>(t.at(args))] = true;
        }
      }
      for (int v = 1; v <= n; ++v) all = all && hit[static_cast<std::size_t>(v)];
    }
    if (all) return c;
  }
  return std::nullopt;
}

std::optional<OpTable> complete_polymorphism(const PolymorphismSeed& seed) {
  if (!seed.conflicts.empty()) return std::nullopt;
  return complete_polymorphism(seed.table, seed.preserves);
}

PolymorphismSeed parse_polymorphism_seed(std::string_view text) {
  // Normalize statement separators, dropping '#' comments.
  std::string flat;
  bool comment = false;
  for (char c : text) {
    if (c == '#') comment = true;
    if (c == '\n') comment = false;
    if (comment) continue;
    flat += (c == '\n') ? ';' : c;
  }
  std::optional<int> arity, size;
  bool idempotent = false;
  std::vector<std::pair<int, int>> preserves;
  std::vector<std::pair<std::string, std::string>> values;
  std::istringstream statements(flat);
  int index = 0;
  for (std::string stmt; std::getline(statements, stmt, ';');) {
    ++index;
    std::istringstream words(stmt);
    std::string key;
    if (!(words >> key)) continue;
    if (key == "arity" || key == "size") {
      int v = 0;
      if (!(words >> v)) throw ParseError("'" + key + "' needs an integer", index, 1);
      (key == "arity" ? arity : size) = v;
    } else if (key == "idempotent") {
      idempotent = true;
    } else if (key == "preserves") {
      for (std::string pair; words >> pair;) {
        if (pair.size() != 2 || !std::isdigit(static_cast<unsigned char>(pair[0])) ||
            !std::isdigit(static_cast<unsigned char>(pair[1]))) {
          throw ParseError("bad preserved pair '" + pair + "'", index, 1);
        }
        preserves.emplace_back(pair[0] - '0' + 1, pair[1] - '0' + 1);
      }
    } else if (key == "value") {
      std::string rest;
      std::getline(words, rest);
      rest.erase(0, rest.find_first_not_of(' '));
      const auto eq = rest.find('=');
      if (eq == std::string::npos) throw ParseError("value needs 'TUPLE=V'", index, 1);
      auto trim = [](std::string s) {
        s.erase(0, s.find_first_not_of(' '));
        s.erase(s.find_last_not_of(' ') + 1);
        return s;
      };
      values.emplace_back(trim(rest.substr(0, eq)), trim(rest.substr(eq + 1)));
    } else {
      throw ParseError("unknown statement '" + key + "'", index, 1);
    }
  }
  if (!arity || !size) throw ParseError("seed needs both 'arity' and 'size'", 0, 0);
  PolymorphismSeed seed{OpTable(*arity, *size, idempotent), std::move(preserves), {}};
  for (const auto& [tuple_text, value_text] : values) {
    if (static_cast<int>(tuple_text.size()) != *arity || value_text.size() != 1) {
      throw ParseError("bad value statement '" + tuple_text + "=" + value_text + "'", 0, 0);
    }
    std::vector<int> tuple;
    for (char c : tuple_text) {
      if (!std::isdigit(static_cast<unsigned char>(c))) throw ParseError("bad tuple digit", 0, 0);
      tuple.push_back(c - '0' + 1);
    }
    if (!std::isdigit(static_cast<unsigned char>(value_text[0]))) {
      throw ParseError("bad value digit", 0, 0);
    }
    const int value = value_text[0] - '0' + 1;
    if (value > *size) throw ParseError("value outside size", 0, 0);
    try {
      seed.table.set(tuple, value);
    } catch (const std::invalid_argument& e) {
      seed.conflicts.push_back(tuple_text + "=" + value_text + ": " + e.what());
    }
  }
  for (auto [a, b] : seed.preserves) {
    if (a > *size || b > *size) throw ParseError("preserved pair outside size", 0, 0);
  }
  return seed;
}

}  // namespace qcsp
