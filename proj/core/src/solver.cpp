#include "qcsp/solver.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "qcsp/errors.hpp"
#include "qcsp/search.hpp"

namespace qcsp {
namespace {

// Sentence variables in prefix order, compiled against one template.
struct Compiled {
  std::vector<std::string> names;
  std::map<std::string, int> index;
  std::vector<bool> universal;
  std::vector<int> block;
  std::vector<VertexMask> range;
  ConstraintNetwork network;
};

Compiled compile(const PHSentence& s, const Graph& t) {
  validate(s);
  if (t.size() < 1) throw std::invalid_argument("template has no vertices");
  if (t.size() > kMaxTargetVertices) throw std::invalid_argument("template exceeds 64 vertices");
  std::vector<std::string> names;
  std::map<std::string, int> index;
  std::vector<bool> universal;
  std::vector<int> block;
  std::vector<VertexMask> range;
  for (std::size_t b = 0; b < s.blocks.size(); ++b) {
    const auto& blk = s.blocks[b];
    VertexMask r = full_mask(t.size());
    if (blk.range) {
      if (blk.range->back() > t.size()) {
        throw std::invalid_argument("range vertex " + std::to_string(blk.range->back()) +
                                    " outside template");
      }
      r = mask_of(*blk.range);
    }
    for (const auto& v : blk.variables) {
      index[v] = static_cast<int>(names.size());
      names.push_back(v);
      universal.push_back(blk.quantifier == Quantifier::kForall);
      block.push_back(static_cast<int>(b));
      range.push_back(r);
    }
  }
  ConstraintNetwork net(static_cast<int>(names.size()), t);
  for (const auto& a : s.matrix) {
    const int x = index.at(a.left), y = index.at(a.right);
    if (a.kind == AtomKind::kEdge) {
      net.add_edge(x, y);
    } else if (x != y) {
      net.add_equal(x, y);
    }
  }
  return {std::move(names), std::move(index), std::move(universal), std::move(block),
          std::move(range), std::move(net)};
}

bool decide_pinned(const Compiled& c, const std::map<int, int>& pins, bool memo,
                   std::uint64_t* nodes = nullptr) {
  std::vector<VertexMask> domains = c.range;
  std::vector<bool> universal = c.universal;
  for (auto [v, value] : pins) {
    domains[static_cast<std::size_t>(v)] &= vertex_bit(value);
    universal[static_cast<std::size_t>(v)] = false;
  }
  SearchOptions options;
  options.priority = c.block;
  options.universal = std::move(universal);
  options.memo = memo;
  SearchEngine engine(c.network, std::move(domains), options);
  const bool result = engine.decide();
  if (nodes) *nodes += engine.nodes();
  return result;
}

bool satisfies(const PHSentence& s, const std::map<std::string, int>& a, const Graph& t) {
  for (const auto& atom : s.matrix) {
    const int x = a.at(atom.left), y = a.at(atom.right);
    if (atom.kind == AtomKind::kEdge ? !t.has_edge(x, y) : x != y) return false;
  }
  return true;
}

std::vector<std::vector<Move>> strategy_sample(const Compiled& c, const EvalOptions& opts) {
  std::vector<std::vector<Move>> out;
  std::mt19937_64 rng(opts.seed);
  for (int k = 0; k < opts.strategy_samples; ++k) {
    std::map<int, int> pins;
    std::vector<Move> moves;
    for (std::size_t v = 0; v < c.names.size(); ++v) {
      const auto values = mask_vertices(c.range[v]);
      int chosen = 0;
      if (c.universal[v]) {
        // Sample 0 is the lexicographically least universal play.
        chosen = k == 0 ? values.front()
                        : values[std::uniform_int_distribution<std::size_t>(0, values.size() - 1)(rng)];
      } else {
        for (int value : values) {
          pins[static_cast<int>(v)] = value;
          if (decide_pinned(c, pins, opts.memo)) {
            chosen = value;
            break;
          }
        }
        if (chosen == 0) throw std::logic_error("strategy lost a won position");
      }
      pins[static_cast<int>(v)] = chosen;
      moves.push_back({c.names[v], chosen});
    }
    if (std::find(out.begin(), out.end(), moves) == out.end()) out.push_back(std::move(moves));
  }
  return out;
}

std::vector<Move> refutation(const Compiled& c, bool memo) {
  std::size_t last_universal = 0;
  bool any = false;
  for (std::size_t v = 0; v < c.names.size(); ++v) {
    if (c.universal[v]) {
      last_universal = v;
      any = true;
    }
  }
  std::vector<Move> moves;
  if (!any) return moves;
  std::map<int, int> pins;
  for (std::size_t v = 0; v <= last_universal; ++v) {
    const auto values = mask_vertices(c.range[v]);
    int chosen = values.front();
    if (c.universal[v]) {
      chosen = 0;
      for (int value : values) {
        pins[static_cast<int>(v)] = value;
        if (!decide_pinned(c, pins, memo)) {
          chosen = value;
          break;
        }
      }
      if (chosen == 0) throw std::logic_error("adversary lost a won position");
    }
    pins[static_cast<int>(v)] = chosen;
    moves.push_back({c.names[v], chosen});
  }
  return moves;
}

}  // namespace

bool qcsp_eval_naive(const PHSentence& s, const Graph& t) {
  validate(s);
  const auto vars = s.bound_variables();
  if (vars.size() > kNaiveVariableLimit) {
    throw GuardError("naive evaluator refuses " + std::to_string(vars.size()) + " variables (limit " +
                     std::to_string(kNaiveVariableLimit) + ")");
  }
  const Compiled c = compile(s, t);
  std::map<std::string, int> assignment;
  std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
    if (i == vars.size()) return satisfies(s, assignment, t);
    const bool universal = c.universal[i];
    for (int value : mask_vertices(c.range[i])) {
      assignment[vars[i]] = value;
      const bool ok = rec(i + 1);
      if (universal && !ok) return false;
      if (!universal && ok) return true;
    }
    return universal;
  };
  return rec(0);
}

EvalWitness qcsp_eval(const PHSentence& s, const Graph& t, const EvalOptions& opts) {
  EvalWitness w;
  if (opts.engine == EvalEngine::kNaive) {
    w.outcome = qcsp_eval_naive(s, t);
    if (!opts.witness) return w;
  }
  const Compiled c = compile(s, t);
  if (opts.engine == EvalEngine::kGame) w.outcome = decide_pinned(c, {}, opts.memo, &w.nodes);
  if (opts.witness) {
    if (w.outcome) {
      w.strategy_sample = strategy_sample(c, opts);
    } else {
      w.refutation = refutation(c, opts.memo);
    }
  }
  return w;
}

bool qcsp_eval_pinned(const PHSentence& s, const Graph& t, const std::map<std::string, int>& pins,
                      bool memo) {
  const Compiled c = compile(s, t);
  std::map<int, int> p;
  for (const auto& [name, value] : pins) {
    const auto it = c.index.find(name);
    if (it == c.index.end()) throw std::invalid_argument("no variable named '" + name + "'");
    if (value < 1 || value > t.size()) throw std::invalid_argument("pin outside template");
    p[it->second] = value;
  }
  return decide_pinned(c, p, memo);
}

bool replay(const PHSentence& s, const Graph& t, const EvalWitness& w) {
  const Compiled c = compile(s, t);
  auto in_range = [&](const Move& m) {
    const auto it = c.index.find(m.variable);
    return it != c.index.end() && m.value >= 1 && m.value <= t.size() &&
           (c.range[static_cast<std::size_t>(it->second)] & vertex_bit(m.value)) != 0;
  };
  if (w.outcome) {
    if (w.strategy_sample.empty()) return false;
    for (const auto& sample : w.strategy_sample) {
      if (sample.size() != c.names.size()) return false;
      std::map<std::string, int> a;
      for (std::size_t i = 0; i < sample.size(); ++i) {
        if (sample[i].variable != c.names[i] || !in_range(sample[i])) return false;
        a[sample[i].variable] = sample[i].value;
      }
      if (!satisfies(s, a, t)) return false;
    }
    return true;
  }
  // The play must be a prefix covering every universal; the rest is then an
  // existential search.
  std::map<int, int> pins;
  for (std::size_t i = 0; i < w.refutation.size(); ++i) {
    const auto& m = w.refutation[i];
    if (i >= c.names.size() || m.variable != c.names[i] || !in_range(m)) return false;
    pins[static_cast<int>(i)] = m.value;
  }
  for (std::size_t v = w.refutation.size(); v < c.names.size(); ++v) {
    if (c.universal[v]) return false;
  }
  std::vector<VertexMask> domains = c.range;
  for (auto [v, value] : pins) domains[static_cast<std::size_t>(v)] &= vertex_bit(value);
  SearchEngine engine(c.network, std::move(domains));
  return !engine.find().has_value();
}

std::string witness_json(const EvalWitness& w) {
  auto moves = [](const std::vector<Move>& ms) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& m : ms) a.push_back({{"variable", m.variable}, {"value", m.value}});
    return a;
  };
  nlohmann::json samples = nlohmann::json::array();
  for (const auto& s : w.strategy_sample) samples.push_back(moves(s));
  return nlohmann::json{{"outcome", w.outcome},
                        {"strategy_sample", samples},
                        {"refutation", moves(w.refutation)},
                        {"nodes", w.nodes}}
      .dump();
}

PHSentence relativise(const PHSentence& s, const std::vector<int>& u_range,
                      const std::vector<int>& x_range) {
  auto norm = [](std::vector<int> r) {
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    if (r.empty()) throw std::invalid_argument("relativisation range is empty");
    return r;
  };
  const auto u = norm(u_range), x = norm(x_range);
  PHSentence out = s;
  for (auto& b : out.blocks) b.range = b.quantifier == Quantifier::kForall ? u : x;
  return out;
}

RelativisationReport check_relativisation(const Graph& t, const std::vector<int>& u_range,
                                          const std::vector<int>& x_range,
                                          const std::vector<PHSentence>& sample) {
  RelativisationReport report;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const auto reduced = eliminate_equalities(sample[i]);
    if (!reduced.sentence) {
      ++report.skipped;
      continue;
    }
    const bool plain = qcsp_eval(*reduced.sentence, t).outcome;
    const bool rel = qcsp_eval(relativise(*reduced.sentence, u_range, x_range), t).outcome;
    ++report.checked;
    if (plain != rel) report.disagreements.push_back(i);
  }
  return report;
}

}  // namespace qcsp
