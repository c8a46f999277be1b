#include "qcsp/dichotomy.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "qcsp/solver.hpp"

namespace qcsp {

std::string_view to_string(UpperBound u) {
  switch (u) {
    case UpperBound::kL: return "L";
    case UpperBound::kNL: return "NL";
    case UpperBound::kNP: return "NP";
    case UpperBound::kPspace: return "Pspace";
  }
  return "?";
}

std::string_view to_string(LowerBound l) {
  switch (l) {
    case LowerBound::kTrivial: return "trivial";
    case LowerBound::kNPHard: return "NP-hard";
    case LowerBound::kPspaceHard: return "Pspace-hard";
  }
  return "?";
}

std::string_view to_string(ForbiddenCase c) {
  switch (c) {
    case ForbiddenCase::kI: return "i";
    case ForbiddenCase::kII: return "ii";
    case ForbiddenCase::kIII: return "iii";
    case ForbiddenCase::kIV: return "iv";
  }
  return "?";
}

ComplexityVerdict classify(const ReflexivityWord& word) {
  if (word.size() < 3) throw std::invalid_argument("classify needs a word of length at least 3");
  ComplexityVerdict v;
  v.word = word;
  v.normal_form = cycle_normal_form(word);
  const std::string& nf = v.normal_form.str();
  const int m = static_cast<int>(nf.size());
  const auto ls = loop_structure(v.normal_form);

  auto easy = [&](UpperBound u, const char* rule) {
    v.upper = u;
    v.lower = LowerBound::kTrivial;
    v.rules.push_back(rule);
  };
  auto hard = [&](LowerBound l, const char* rule) {
    v.upper = UpperBound::kPspace;
    v.lower = l;
    v.rules.push_back(rule);
  };

  if (m <= 4) {
    static const std::set<std::string> majority{"001", "011", "111", "0000", "0001", "0011"};
    if (majority.count(nf)) {
      easy(UpperBound::kNL, "majority-small");
    } else if (nf == "0111") {
      easy(UpperBound::kL, "prop-c0111");
    } else if (nf == "1111") {
      hard(LowerBound::kPspaceHard, "prop-c1111");
    } else if (nf == "000") {
      hard(LowerBound::kPspaceHard, "odd-irreflexive");
    } else {
      hard(LowerBound::kPspaceHard, "cor-disconnected");  // 0101
    }
    return v;
  }

  const int d = ls.d, e = ls.e;
  if (ls.kind == LoopKind::kDisconnected) {
    hard(LowerBound::kPspaceHard, "cor-disconnected");
  } else if (ls.kind == LoopKind::kIrreflexive && m % 2 == 1) {
    hard(LowerBound::kPspaceHard, "odd-irreflexive");
  } else if ((m % 2 == 1 && (e == 1 || e == 2)) || (m % 2 == 0 && (e == 0 || e == 1))) {
    easy(UpperBound::kNL, "thm-over4-nl");
  } else if (ls.kind == LoopKind::kReflexive) {
    hard(LowerBound::kNPHard, "prop-reflexive");
  } else {
    if (m % 2 == 1) {
      hard(LowerBound::kNPHard, "prop-odds");
    } else if (e == 2) {
      hard(LowerBound::kNPHard, "prop-evens2");
    } else {
      hard(LowerBound::kNPHard, "prop-evens");
    }
    if (d >= 1 && ((d % 2 == 1 && e > d + 3) || (d % 2 == 0 && e > d + 2))) {
      hard(LowerBound::kPspaceHard, "prop-missing");
    }
  }
  return v;
}

std::string verdict_json(const ComplexityVerdict& v) {
  return nlohmann::json{{"word", v.word.str()},
                        {"normal_form", v.normal_form.str()},
                        {"upper", to_string(v.upper)},
                        {"lower", to_string(v.lower)},
                        {"rules", v.rules}}
      .dump();
}

namespace {

bool is_universal(const InstanceGraph& ig, int v) {
  return ig.quantifier[static_cast<std::size_t>(v - 1)] == Quantifier::kForall;
}

int pos(const InstanceGraph& ig, int v) { return ig.position[static_cast<std::size_t>(v - 1)]; }

// Universal neighbours of an existential that precede it.
std::vector<int> earlier_universals(const InstanceGraph& ig, int y) {
  std::vector<int> out;
  for (int u : ig.graph.neighbours(y))
    if (u != y && is_universal(ig, u) && pos(ig, u) < pos(ig, y)) out.push_back(u);
  return out;
}

// Whether y has an earlier universal neighbour outside the forcing set, i.e.
// one Adversary can play as 1 to rule out 3.
bool pushable(const InstanceGraph& ig, int y, const std::vector<int>& forcing) {
  if (is_universal(ig, y)) return false;
  const auto us = earlier_universals(ig, y);
  return std::any_of(us.begin(), us.end(),
                     [&](int u) { return std::find(forcing.begin(), forcing.end(), u) == forcing.end(); });
}

// y has exactly two earlier universals: q and one outside the forcing set.
bool forced_by(const InstanceGraph& ig, int y, int q, const std::vector<int>& forcing) {
  const auto us = earlier_universals(ig, y);
  return us.size() == 2 && std::find(us.begin(), us.end(), q) != us.end() && pushable(ig, y, forcing);
}

// Shortest path from s through pushable existentials to a vertex accepted
// by goal (other than s itself).
template <class Goal>
std::vector<int> pushable_path(const InstanceGraph& ig, const std::vector<int>& forcing, int s, Goal goal) {
  const int n = ig.graph.size();
  std::vector<int> parent(static_cast<std::size_t>(n + 1), 0);
  std::deque<int> queue{s};
  parent[static_cast<std::size_t>(s)] = s;
  while (!queue.empty()) {
    const int x = queue.front();
    queue.pop_front();
    if (x != s && goal(x)) {
      std::vector<int> path;
      for (int y = x; y != s; y = parent[static_cast<std::size_t>(y)]) path.push_back(y);
      path.push_back(s);
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (int y : ig.graph.neighbours(x)) {
      if (parent[static_cast<std::size_t>(y)] != 0 || !pushable(ig, y, forcing)) continue;
      parent[static_cast<std::size_t>(y)] = x;
      queue.push_back(y);
    }
  }
  return {};
}

}  // namespace

std::optional<ForbiddenWitness> find_forbidden_pattern(const InstanceGraph& ig) {
  const int n = ig.graph.size();
  for (const auto& [a, b] : ig.graph.edges()) {
    if (is_universal(ig, pos(ig, a) > pos(ig, b) ? a : b)) return ForbiddenWitness{ForbiddenCase::kI, {a, b}, {}};
  }
  // marks[y] = number of earlier universal neighbours; 0 for universals.
  std::vector<int> marks(static_cast<std::size_t>(n + 1), 0);
  for (int y = 1; y <= n; ++y) {
    if (is_universal(ig, y)) continue;
    const auto us = earlier_universals(ig, y);
    marks[static_cast<std::size_t>(y)] = static_cast<int>(us.size());
    if (us.size() >= 3) return ForbiddenWitness{ForbiddenCase::kII, {y, us[0], us[1], us[2]}, {}};
  }
  std::vector<int> universals;
  for (int u = 1; u <= n; ++u)
    if (is_universal(ig, u)) universals.push_back(u);
  // Case iii: y_1 forced to 2 by p, y_m forced to 4 by q.
  for (int s = 1; s <= n; ++s) {
    if (marks[static_cast<std::size_t>(s)] != 2) continue;
    for (int p : earlier_universals(ig, s)) {
      for (int q : universals) {
        const std::vector<int> forcing{p, q};
        if (q == p || !forced_by(ig, s, p, forcing)) continue;
        auto path = pushable_path(ig, forcing, s, [&](int t) { return forced_by(ig, t, q, forcing); });
        if (!path.empty()) return ForbiddenWitness{ForbiddenCase::kIII, std::move(path), forcing};
      }
    }
  }
  // Case iv: Prover commits y_1 to 2 or 4, then q forces y_m to the other.
  for (int s = 1; s <= n; ++s) {
    if (marks[static_cast<std::size_t>(s)] < 1) continue;
    for (int q : universals) {
      const std::vector<int> forcing{q};
      if (pos(ig, q) < pos(ig, s)) continue;
      auto path = pushable_path(ig, forcing, s, [&](int t) { return forced_by(ig, t, q, forcing); });
      if (!path.empty()) return ForbiddenWitness{ForbiddenCase::kIV, std::move(path), forcing};
    }
  }
  return std::nullopt;
}

bool replay_forbidden(const InstanceGraph& ig, const ForbiddenWitness& w) {
  const int n = ig.graph.size();
  const auto& vs = w.vertices;
  if (std::any_of(vs.begin(), vs.end(), [n](int v) { return v < 1 || v > n; })) return false;
  switch (w.kind) {
    case ForbiddenCase::kI:
      return vs.size() == 2 && ig.graph.has_edge(vs[0], vs[1]) &&
             is_universal(ig, pos(ig, vs[0]) > pos(ig, vs[1]) ? vs[0] : vs[1]);
    case ForbiddenCase::kII: {
      if (vs.size() != 4 || is_universal(ig, vs[0])) return false;
      const std::set<int> us(vs.begin() + 1, vs.end());
      if (us.size() != 3) return false;
      return std::all_of(us.begin(), us.end(), [&](int u) {
        return is_universal(ig, u) && pos(ig, u) < pos(ig, vs[0]) && ig.graph.has_edge(u, vs[0]);
      });
    }
    case ForbiddenCase::kIII:
    case ForbiddenCase::kIV: {
      const auto& f = w.forcing;
      if (vs.size() < 2 || std::set<int>(vs.begin(), vs.end()).size() != vs.size()) return false;
      if (f.size() != (w.kind == ForbiddenCase::kIII ? 2u : 1u) || std::set<int>(f.begin(), f.end()).size() != f.size())
        return false;
      if (std::any_of(f.begin(), f.end(), [&](int u) { return u < 1 || u > n || !is_universal(ig, u); })) return false;
      for (std::size_t i = 0; i < vs.size(); ++i) {
        if (!pushable(ig, vs[i], f)) return false;
        if (i + 1 < vs.size() && !ig.graph.has_edge(vs[i], vs[i + 1])) return false;
      }
      if (!forced_by(ig, vs.back(), f.back(), f)) return false;
      if (w.kind == ForbiddenCase::kIII) return forced_by(ig, vs.front(), f.front(), f);
      return pos(ig, f.back()) > pos(ig, vs.front());
    }
  }
  return false;
}

bool decide_c0111(const PHSentence& s) {
  validate(s);
  if (std::any_of(s.blocks.begin(), s.blocks.end(), [](const QuantBlock& b) { return b.range.has_value(); })) {
    static const Graph c0111 = make_cycle("0111");
    return qcsp_eval(s, c0111).outcome;
  }
  const auto reduced = eliminate_equalities(s);
  // Without ranges the only degenerate case is a universal equated with an
  // earlier variable, which Adversary refutes by playing a different vertex.
  if (!reduced.sentence) return false;
  return !find_forbidden_pattern(instance_graph(*reduced.sentence)).has_value();
}

}  // namespace qcsp
