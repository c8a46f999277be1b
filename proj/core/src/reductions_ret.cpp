#include <algorithm>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "builder.hpp"
#include "qcsp/errors.hpp"
#include "qcsp/reductions.hpp"

namespace qcsp {

using detail::Builder;
using detail::push_block;

RetInstance parse_ret_instance(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string graph_text;
  std::vector<std::pair<int, std::pair<int, int>>> embeds;
  int line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    std::string body = line.substr(0, line.find('#'));
    std::istringstream words(body);
    std::string key;
    if (words >> key && key == "embed") {
      int c = 0, v = 0;
      std::string extra;
      if (!(words >> c >> v) || (words >> extra)) throw ParseError("expected 'embed CYCLEVERTEX GRAPHVERTEX'", line_no, 1);
      embeds.push_back({line_no, {c, v}});
      graph_text += '\n';
    } else {
      graph_text += line + '\n';
    }
  }
  RetInstance inst{parse_graph(graph_text), {}};
  for (const auto& [line, cv] : embeds) {
    if (cv.second < 1 || cv.second > inst.g.size()) throw ParseError("embed target out of range", line, 1);
    if (!inst.embedding.emplace(cv.first, cv.second).second) throw ParseError("cycle vertex embedded twice", line, 1);
  }
  return inst;
}

std::string format_ret_instance(const RetInstance& inst) {
  std::string out = format_graph(inst.g);
  for (const auto& [c, v] : inst.embedding) out += "embed " + std::to_string(c) + ' ' + std::to_string(v) + '\n';
  return out;
}

bool has_induced_p11100(const ReflexivityWord& word) {
  const std::string& w = word.str();
  const std::size_t m = w.size();
  if (m < 6) return false;
  for (std::size_t i = 0; i < m; ++i) {
    std::string window;
    for (std::size_t k = 0; k < 5; ++k) window += w[(i + k) % m];
    if (window == "11100" || window == "00111") return true;
  }
  return false;
}

namespace {

// Template vertex that the reduction means v_i to occupy: v_1 sits on the
// centre of the non-loop run, v_2.. walk towards the loops.
struct Layout {
  int m = 0;
  int zeros = 0;
  std::size_t rotation = 0;

  [[nodiscard]] int image(int i) const {
    const int p = (zeros / 2 + i - 1) % m;
    return static_cast<int>((static_cast<std::size_t>(p) + rotation) % static_cast<std::size_t>(m)) + 1;
  }
};

Layout single_run_layout(const ReflexivityWord& word) {
  const auto ls = loop_structure(word);
  if (ls.kind != LoopKind::kSingleRun) throw std::invalid_argument("word is not a single run of loops");
  const std::string normal = std::string(static_cast<std::size_t>(ls.d), '0') + std::string(static_cast<std::size_t>(ls.e), '1');
  for (std::size_t r = 0; r < word.size(); ++r)
    if (word.rotated(r).str() == normal) return {static_cast<int>(word.size()), ls.d, r};
  throw std::logic_error("single run without a normal rotation");
}

// Appends inst.g: embedded cycle vertex c becomes cycle_var(c), every other
// vertex a fresh innermost existential.
template <class CycleVar>
void add_payload(Builder& b, Formula& f, const RetInstance& inst, int m, CycleVar cycle_var, const std::string& tag) {
  if (static_cast<int>(inst.embedding.size()) != m) throw std::invalid_argument("embedding must cover the cycle");
  std::map<int, std::string> name;
  for (const auto& [c, v] : inst.embedding) {
    if (c < 1 || c > m || v < 1 || v > inst.g.size()) throw std::invalid_argument("embedding out of range");
    if (!name.emplace(v, cycle_var(c)).second) throw std::invalid_argument("embedding is not injective");
  }
  std::vector<std::string> rest;
  for (int v = 1; v <= inst.g.size(); ++v) {
    if (name.count(v)) continue;
    name[v] = b.add(tag + std::to_string(v), "graph vertex " + std::to_string(v));
    rest.push_back(name[v]);
  }
  for (const auto& [u, v] : inst.g.edges()) b.edge(name[u], name[v]);
  push_block(f.blocks, Quantifier::kExists, rest);
}

std::vector<std::string> names(const std::string& prefix, int from, int to) {
  std::vector<std::string> out;
  for (int i = from; i <= to; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

ReductionOutput finish(const std::string& kind, Builder& b, Formula f, bool best_effort = false) {
  f.matrix = b.matrix;
  ReductionOutput r{kind, std::move(f), b.provenance, best_effort};
  validate(r.sentence);
  return r;
}

void add_all(Builder& b, const std::vector<std::string>& vars, const std::string& role) {
  for (const auto& v : vars) b.add(v, role);
}

void refs(Builder& b, const std::vector<std::string>& vars) {
  for (const auto& v : vars) b.loop(v);
}

std::optional<std::vector<RetPin>> cached_pins(const ReflexivityWord& word) {
  static std::mutex mu;
  static std::map<std::string, std::optional<std::vector<RetPin>>> cache;
  const std::lock_guard lock(mu);
  auto it = cache.find(word.str());
  if (it == cache.end()) it = cache.emplace(word.str(), find_ret_pins(word)).first;
  return it->second;
}

// v_i is cycle vertex i. Each pin adds a universal joined to its cycle vertex
// by the pin's walk; everything else is existential.
ReductionOutput pinned_copy(const std::string& kind, const ReflexivityWord& word, const std::vector<RetPin>& pins,
                            const RetInstance& inst) {
  const int m = static_cast<int>(word.size());
  Builder b;
  add_all(b, names("v", 1, m), "cycle copy");
  for (int i = 1; i <= m; ++i) {
    b.edge("v" + std::to_string(i), "v" + std::to_string(i % m + 1));
    if (word.loop(static_cast<std::size_t>(i))) b.loop("v" + std::to_string(i));
  }
  std::vector<std::string> universals, walks;
  for (std::size_t j = 0; j < pins.size(); ++j) {
    const std::string target = "v" + std::to_string(pins[j].position);
    if (pins[j].steps.empty()) {
      universals.push_back(target);
      continue;
    }
    const std::string u = b.add("u" + std::to_string(j + 1), "pin " + std::to_string(j + 1) + " / universal");
    universals.push_back(u);
    std::string prev = u;
    for (std::size_t k = 0; k < pins[j].steps.size(); ++k) {
      const bool last = k + 1 == pins[j].steps.size();
      const std::string next =
          last ? target : b.add(u + "_" + std::to_string(k + 1), "pin " + std::to_string(j + 1) + " / walk " + std::to_string(k + 1));
      if (!last) walks.push_back(next);
      b.edge(prev, next);
      if (pins[j].steps[k] == '1') b.loop(next);
      prev = next;
    }
  }
  std::vector<std::string> rest = walks;
  for (const auto& v : names("v", 1, m))
    if (std::find(universals.begin(), universals.end(), v) == universals.end()) rest.push_back(v);
  Formula f;
  push_block(f.blocks, Quantifier::kForall, universals);
  push_block(f.blocks, Quantifier::kExists, rest);
  add_payload(b, f, inst, m, [](int c) { return "v" + std::to_string(c); }, "g");
  return finish(kind, b, f);
}

}  // namespace

ReductionOutput reduce_ret_odd(const ReflexivityWord& word, const RetInstance& inst) {
  const int m = static_cast<int>(word.size());
  if (m % 2 == 0) throw std::invalid_argument("ret-odd needs an odd cycle");
  const Layout lay = single_run_layout(word);
  if (!has_induced_p11100(word) && !(lay.zeros == 2 && m == 5))
    throw std::invalid_argument("cycle has no induced P_11100");
  const int h = (m + 1) / 2;
  const int plain = (lay.zeros + 1) / 2;
  Builder b;
  add_all(b, names("v", 1, m), "cycle copy");
  add_all(b, names("x", 1, h - 1), "second chain");
  b.add("x" + std::to_string(h), "second chain / meets v" + std::to_string(h));
  b.chain(names("v", 1, h));
  b.chain(names("x", 1, h));
  refs(b, names("v", plain + 1, h));
  refs(b, names("x", plain + 1, h));
  b.eq("x" + std::to_string(h), "v" + std::to_string(h));
  b.eq("x" + std::to_string(h - 1), "v" + std::to_string(h + 1));
  auto back = names("v", h, m);
  back.push_back("v1");
  b.chain(back);
  b.loop("v" + std::to_string(h + 1));

  Formula f;
  push_block(f.blocks, Quantifier::kForall, {"v1"});
  push_block(f.blocks, Quantifier::kExists, names("v", 2, h - 1));
  push_block(f.blocks, Quantifier::kForall, {"x1"});
  auto mid = names("x", 2, h);
  mid.push_back("v" + std::to_string(h));
  push_block(f.blocks, Quantifier::kExists, mid);
  push_block(f.blocks, Quantifier::kExists, names("v", h + 1, m));
  std::map<int, std::string> at;
  for (int i = 1; i <= m; ++i) at[lay.image(i)] = "v" + std::to_string(i);
  add_payload(b, f, inst, m, [&](int c) { return at.at(c); }, "g");
  return finish("ret-odd", b, f);
}

ReductionOutput reduce_ret_even(const ReflexivityWord& word, const RetInstance& inst) {
  const int m = static_cast<int>(word.size());
  if (m % 2 == 1) throw std::invalid_argument("ret-even needs an even cycle");
  if (!has_induced_p11100(word)) throw std::invalid_argument("cycle has no induced P_11100");
  single_run_layout(word);
  const auto pins = cached_pins(word);
  if (!pins) throw std::invalid_argument("no pin gadget for " + word.str());
  return pinned_copy("ret-even", word, *pins, inst);
}

ReductionOutput reduce_ret_even_two_loops(int m, const RetInstance& inst) {
  if (m < 6 || m % 2 == 1) throw std::invalid_argument("ret-two-loops needs an even m >= 6");
  const int h = m / 2;
  Builder b;
  add_all(b, names("v", 1, m), "cycle copy v");
  add_all(b, names("w", 1, m), "cycle copy w");
  add_all(b, names("x", 2, h), "z chain to v");
  add_all(b, names("y", 2, h), "z chain to w");
  b.add("z_all", "heart selector");
  b.add("z", "heart variable");
  b.edge("z_all", "z");
  for (const char* t : {"v", "w"}) {
    const std::string s(t);
    b.chain(names(s, 1, h));
    b.loop(s + std::to_string(h));
  }
  for (const auto& [track, chain] : {std::pair{std::string("v"), std::string("x")}, std::pair{std::string("w"), std::string("y")}}) {
    const std::string a = track + std::to_string(h + 1), c = track + std::to_string(h + 2);
    b.loop(a);
    b.edge(a, c);
    auto path = names(chain, 2, h);
    path.insert(path.begin(), "z");
    path.push_back(a);
    path.push_back(c);
    b.chain(path);
    b.eq(a, chain + std::to_string(h));
    b.eq(c, chain + std::to_string(h - 1));
    auto tail = names(track, h + 2, m);
    tail.push_back(track + "1");
    b.chain(tail);
  }

  Formula f;
  push_block(f.blocks, Quantifier::kForall, {"v1"});
  push_block(f.blocks, Quantifier::kExists, names("v", 2, h));
  push_block(f.blocks, Quantifier::kForall, {"w1"});
  push_block(f.blocks, Quantifier::kExists, names("w", 2, h));
  push_block(f.blocks, Quantifier::kForall, {"z_all"});
  push_block(f.blocks, Quantifier::kExists, {"z"});
  for (const auto& [track, chain] : {std::pair{"v", "x"}, std::pair{"w", "y"}}) {
    auto vars = names(chain, 2, h);
    vars.push_back(track + std::to_string(h + 1));
    vars.push_back(track + std::to_string(h + 2));
    push_block(f.blocks, Quantifier::kExists, vars);
  }
  push_block(f.blocks, Quantifier::kExists, names("v", h + 3, m));
  push_block(f.blocks, Quantifier::kExists, names("w", h + 3, m));
  add_payload(b, f, inst, m, [](int c) { return "v" + std::to_string(c); }, "g");
  return finish("ret-two-loops", b, f, true);
}

}  // namespace qcsp
