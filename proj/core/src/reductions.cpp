#include "qcsp/reductions.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

#include "builder.hpp"
#include "qcsp/solver.hpp"

namespace qcsp {

using detail::Builder;
using detail::push_block;

namespace {

void cover_macro_variables(ReductionOutput& out) {
  for (const auto& v : out.sentence.bound_variables()) out.provenance.emplace(v, "quantifier macro");
}

std::string repeat(std::string_view s, int n) {
  std::string out;
  for (int i = 0; i < n; ++i) out += s;
  return out;
}

std::string centre(const std::vector<std::string>& interior) { return interior[(interior.size() - 1) / 2]; }

}  // namespace

std::string provenance_json(const ReductionOutput& out) {
  return nlohmann::json{{"kind", out.kind},
                        {"best_effort", out.best_effort},
                        {"variables", out.sentence.bound_variables().size()},
                        {"provenance", out.provenance}}
      .dump(2);
}

Graph edge_gadget(int m) {
  if (m < 4) throw std::invalid_argument("edge gadget needs m >= 4");
  auto id = [m](int copy, int j) { return copy * m + j; };
  Graph g(m * m);
  for (int c = 0; c < m; ++c) {
    for (int j = 1; j <= m; ++j) {
      g.add_loop(id(c, j));
      g.add_edge(id(c, j), id(c, j % m + 1));
      if (c + 1 < m) {
        g.add_edge(id(c, j), id(c + 1, j));
        g.add_edge(id(c, j), id(c + 1, j % m + 1));
      }
    }
  }
  int tail = 0;
  if (m % 2 == 0) {
    g.set_label("y", id(0, m / 2 + 1));
    tail = id(0, 1);
    for (int i = 0; i < m / 2 - 1; ++i) {
      const int v = g.add_vertex();
      g.add_loop(v);
      g.add_edge(tail, v);
      tail = v;
    }
  } else {
    g.set_label("y", id(0, (m + 1) / 2 + 1));
    tail = g.add_vertex();
    g.add_loop(tail);
    g.add_edge(tail, id(0, 1));
    g.add_edge(tail, id(0, 2));
    for (int i = 0; i < (m - 3) / 2; ++i) {
      const int v = g.add_vertex();
      g.add_loop(v);
      g.add_edge(tail, v);
      tail = v;
    }
  }
  g.set_label("x", tail);
  for (int j = 1; j <= m; ++j) g.set_label(std::to_string(j), id(m - 1, j));
  return g;
}

ReductionOutput reduce_csp_km_to_reflexive(int m, const Graph& input) {
  if (m < 4) throw std::invalid_argument("m must be at least 4");
  for (int v = 1; v <= input.size(); ++v)
    if (input.has_loop(v)) throw std::invalid_argument("input graph has a loop at " + std::to_string(v));
  Builder b;
  std::vector<std::string> v(static_cast<std::size_t>(m) + 1);
  for (int i = 1; i <= m; ++i) v[static_cast<std::size_t>(i)] = b.add("v" + std::to_string(i), "cycle vertex " + std::to_string(i));
  for (int i = 1; i <= m; ++i) b.edge(v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(i % m + 1)]);
  std::vector<std::string> inputs, interior;
  for (int i = 1; i <= input.size(); ++i) inputs.push_back(b.add("g" + std::to_string(i), "input vertex " + std::to_string(i)));

  const Graph gadget = edge_gadget(m);
  std::map<int, std::string> weld;
  for (int j = 1; j <= m; ++j) weld[*gadget.vertex(std::to_string(j))] = v[static_cast<std::size_t>(j)];
  const int gx = *gadget.vertex("x"), gy = *gadget.vertex("y");
  int index = 0;
  for (const auto& [a, c] : input.edges()) {
    ++index;
    std::map<int, std::string> name = weld;
    name[gx] = inputs[static_cast<std::size_t>(a - 1)];
    name[gy] = inputs[static_cast<std::size_t>(c - 1)];
    for (int u = 1; u <= gadget.size(); ++u) {
      if (name.count(u)) continue;
      const std::string n = "e" + std::to_string(index) + "_" + std::to_string(u);
      name[u] = b.add(n, "edge " + std::to_string(index) + " gadget vertex " + std::to_string(u));
      interior.push_back(n);
    }
    // The template is reflexive, so loop atoms carry no information.
    for (const auto& [p, q] : gadget.edges())
      if (p != q) b.edge(name[p], name[q]);
  }

  Formula psi;
  push_block(psi.blocks, Quantifier::kExists, inputs);
  push_block(psi.blocks, Quantifier::kExists, interior);
  psi.matrix = b.matrix;
  auto vs = [&](int from, int to) {
    std::vector<std::string> out;
    for (int i = from; i <= to; ++i) out.push_back(v[static_cast<std::size_t>(i)]);
    return out;
  };
  auto add_chain = [](Formula& f, const std::vector<std::string>& names) {
    const auto atoms = chain(names);
    f.matrix.insert(f.matrix.end(), atoms.begin(), atoms.end());
  };

  Formula out;
  if (m == 4) {
    out = counting_exists(2, v[4], psi);
    out = counting_exists(3, v[3], out);
    out = counting_exists(2, v[2], out);
    out = quantify(Quantifier::kExists, {v[1]}, out);
  } else if (m % 2 == 0) {
    const int h = m / 2;
    Formula inner = psi;
    auto back = vs(h + 1, m);
    back.push_back(v[1]);
    add_chain(inner, back);
    inner = quantify(Quantifier::kExists, vs(h + 3, m), inner);
    out = diamond(v[static_cast<std::size_t>(h + 2)], inner, m);
    add_chain(out, vs(1, h + 1));
    out = quantify(Quantifier::kExists, vs(2, h), out);
    out = quantify(Quantifier::kForall, {v[static_cast<std::size_t>(h + 1)]}, out);
    out = quantify(Quantifier::kExists, {v[1]}, out);
  } else {
    const int mid = (m + 3) / 2;
    Formula inner = psi;
    add_chain(inner, vs(2, mid));
    auto back = vs(mid, m);
    back.push_back(v[1]);
    add_chain(inner, back);
    auto rest = vs(3, mid - 1);
    const auto tail = vs(mid + 1, m);
    rest.insert(rest.end(), tail.begin(), tail.end());
    inner = quantify(Quantifier::kExists, rest, inner);
    inner = quantify(Quantifier::kForall, {v[static_cast<std::size_t>(mid)]}, inner);
    inner.matrix.push_back(edge(v[1], v[2]));
    out = diamond(v[2], inner, m);
    out = quantify(Quantifier::kExists, {v[1]}, out);
  }
  ReductionOutput r{"km-reflexive", detail::merged(out), b.provenance, false};
  cover_macro_variables(r);
  validate(r.sentence);
  return r;
}

NaeCore nae_core(const ReflexivityWord& pattern, const ReflexivityWord& selector, const NAEInstance& inst,
                 bool tie_universals) {
  validate(inst);
  const std::string pat = pattern.str();
  if (pat.size() < 3 || pat.front() != '1' || pat.back() != '1')
    throw std::invalid_argument("pattern needs looped ends and at least one interior vertex");
  std::string sel = selector.str();
  if (!sel.empty() && sel.front() == '1') std::reverse(sel.begin(), sel.end());
  if (sel.size() < 2 || sel.front() != '0' || sel.back() != '1')
    throw std::invalid_argument("selector needs one unlooped and one looped end");
  if (has_universal_clause(inst)) throw std::invalid_argument("a clause has three universal variables");

  NaeCore core;
  Builder b;
  const auto& vt = b.add(core.v_top, "v_top");
  const auto& vb = b.add(core.v_bot, "v_bot");
  b.loop(vt);
  b.loop(vb);
  Formula& f = core.formula;
  std::vector<std::string> inner;
  std::map<std::string, std::string> vertex;
  // Looped gadget vertices see both anchors through a pattern and reach the
  // centre of the spine; only the anchors themselves qualify.
  const auto spine = b.path(vt, vb, pat, "spine", "spine");
  inner.insert(inner.end(), spine.begin(), spine.end());
  const std::string tie(pat.size() / 2 + 1, '0');
  auto pin = [&](const std::string& v, const std::string& role, bool tied) {
    for (const auto& s : b.path(vt, v, pat, v + "_top", role + " / top pattern")) inner.push_back(s);
    for (const auto& s : b.path(v, vb, pat, v + "_bot", role + " / bottom pattern")) inner.push_back(s);
    if (!tied) return;
    for (const auto& s : b.path(v, centre(spine), tie, v + "_tie", role + " / tie")) inner.push_back(s);
  };
  for (std::size_t i = 0; i < inst.prefix.size(); ++i) {
    const auto& [q, var] = inst.prefix[i];
    const std::string name = "a" + std::to_string(i + 1);
    const std::string role = "variable " + var;
    vertex[var] = b.add(name, role);
    b.loop(name);
    pin(name, role, tie_universals || q == Quantifier::kExists);
    if (q == Quantifier::kExists) {
      push_block(f.blocks, Quantifier::kExists, {name});
    } else {
      const std::string all = b.add(name + "_all", role + " / forall vertex");
      auto selected = b.path(all, name, sel, name + "_sel", role + " / selector");
      selected.push_back(name);
      push_block(f.blocks, Quantifier::kForall, {all});
      push_block(f.blocks, Quantifier::kExists, selected);
    }
  }
  for (std::size_t j = 0; j < inst.clauses.size(); ++j) {
    auto c = inst.clauses[j];
    if (inst.universal(c[1])) std::swap(c[1], inst.universal(c[0]) ? c[2] : c[0]);
    const std::string tag = "c" + std::to_string(j + 1);
    const std::string role = "clause " + std::to_string(j + 1);
    const std::string fv = b.add(tag + "_f", role + " / f");
    b.loop(fv);
    inner.push_back(fv);
    pin(fv, role, true);
    // Four pattern copies N-W, N-E, S-W, S-E braced at their centres.
    auto diamond_gadget = [&](const std::string& d, const std::string& n, const std::string& e,
                              const std::string& s, const std::string& w) {
      const auto nw = b.path(n, w, pat, d + "_nw", role + " / " + d + " nw");
      const auto ne = b.path(n, e, pat, d + "_ne", role + " / " + d + " ne");
      const auto sw = b.path(s, w, pat, d + "_sw", role + " / " + d + " sw");
      const auto se = b.path(s, e, pat, d + "_se", role + " / " + d + " se");
      b.edge(centre(nw), centre(ne));
      b.edge(centre(sw), centre(se));
      for (const auto* part : {&nw, &ne, &sw, &se}) inner.insert(inner.end(), part->begin(), part->end());
    };
    diamond_gadget(tag + "_d1", vt, fv, vb, vertex[c[1]]);
    diamond_gadget(tag + "_d2", fv, vertex[c[2]], fv, vertex[c[0]]);
  }
  push_block(f.blocks, Quantifier::kExists, inner);
  f.matrix = std::move(b.matrix);
  core.provenance = std::move(b.provenance);
  return core;
}

bool nae_core_holds(const NaeCore& core, const Graph& t, int top, int bot) {
  const auto s = quantify(Quantifier::kExists, {core.v_top, core.v_bot}, core.formula);
  return qcsp_eval_pinned(s, t, {{core.v_top, top}, {core.v_bot, bot}});
}

namespace {

// Quantifier prefix and atoms of an anchor chain shaped like word, from a
// universal first vertex to the looped anchor.
void anchor_chain(Builder& b, Formula& f, const std::string& word, const std::string& tag,
                  const std::string& anchor) {
  const std::string u = b.add(tag + "_0", tag + " chain / universal");
  if (word.front() == '1') b.loop(u);
  auto rest = b.path(u, anchor, word, tag, tag + " chain");
  rest.push_back(anchor);
  push_block(f.blocks, Quantifier::kForall, {u});
  push_block(f.blocks, Quantifier::kExists, rest);
}

ReductionOutput wrap(const std::string& kind, Builder& b, Formula prefix, const NaeCore& core, bool best_effort) {
  for (const auto& blk : core.formula.blocks) push_block(prefix.blocks, blk.quantifier, blk.variables);
  prefix.matrix = b.matrix;
  prefix.matrix.insert(prefix.matrix.end(), core.formula.matrix.begin(), core.formula.matrix.end());
  ReductionOutput r{kind, std::move(prefix), core.provenance, best_effort};
  for (const auto& [k, v] : b.provenance) r.provenance.emplace(k, v);
  validate(r.sentence);
  return r;
}

}  // namespace

ReductionOutput reduce_qnae_to_p101(const NAEInstance& inst) {
  const auto core = nae_core(ReflexivityWord("101"), ReflexivityWord("10"), inst);
  Builder b;
  const auto& ta = b.add("v_top_all", "v_top selector");
  const auto& ba = b.add("v_bot_all", "v_bot selector");
  b.edge(ta, core.v_top);
  b.edge(ba, core.v_bot);
  Formula prefix;
  push_block(prefix.blocks, Quantifier::kForall, {ta, ba});
  push_block(prefix.blocks, Quantifier::kExists, {core.v_top, core.v_bot});
  return wrap("qnae-p101", b, prefix, core, false);
}

ReductionOutput reduce_qnae_to_missing(int d, int e, const NAEInstance& inst) {
  if (d < 1 || e < 1) throw std::invalid_argument("d and e must be positive");
  if (!(d % 2 == 1 ? e > d + 3 : e > d + 2))
    throw std::invalid_argument("need e > d+3 for odd d or e > d+2 for even d");
  const auto core = nae_core(ReflexivityWord("1" + std::string(static_cast<std::size_t>(d), '0') + "1"),
                             ReflexivityWord(std::string(static_cast<std::size_t>(e / 2), '0') + "1"), inst);
  const int h = d % 2 == 1 ? (d + 1) / 2 : d / 2;
  const int refs = std::max(0, (e - d - 3) / 2 - h + 1);
  // x_1 (universal), h-1 plain vertices, refs looped vertices, then the anchor.
  const std::string word = std::string(static_cast<std::size_t>(h), '0') +
                           std::string(static_cast<std::size_t>(refs), '1') + "1";
  Builder b;
  Formula prefix;
  anchor_chain(b, prefix, word, "x", core.v_top);
  anchor_chain(b, prefix, word, "y", core.v_bot);
  const auto z = b.path(core.v_top, core.v_bot, "1" + std::string(static_cast<std::size_t>(d), '0') + "1", "z",
                        "z path");
  push_block(prefix.blocks, Quantifier::kExists, z);
  // No chain length preserves truth on these shapes.
  const bool unverified = (d == 1 && e % 2 == 0) || (d % 2 == 0 && e == d + 3);
  return wrap("qnae-missing", b, prefix, core, unverified);
}

ReductionOutput reduce_disconnected(const ReflexivityWord& word, const NAEInstance& inst) {
  const auto ls = loop_structure(word);
  if (ls.kind != LoopKind::kDisconnected) throw std::invalid_argument("loops are not disconnected");
  const auto& sp = *ls.spectrum;
  if (sp.k == 1) throw std::invalid_argument("unique maximal gap value is out of scope");
  const bool single = std::all_of(sp.entries.begin(), sp.entries.end(), [&](int x) { return x == sp.max_entry; });
  const int f = sp.max_entry;
  const int n = static_cast<int>(word.size());
  const std::string ones(static_cast<std::size_t>(n), '1');
  const std::string motif = single ? ones + repeat("0", 2 * f)
                                   : ones + repeat(repeat("0", 2 * f - 2) + ones, n) + repeat("0", 2 * f);
  const int half = sp.k / 2 - 1;
  const int top_alternations = (half + 1) / 2, bot_alternations = half / 2;
  const auto core = nae_core(ReflexivityWord("1" + repeat("0", sp.g_plus) + "1"),
                             ReflexivityWord(repeat("0", f) + "1"), inst, false);
  Builder b;
  Formula prefix;
  anchor_chain(b, prefix, repeat("0", f) + "1" + repeat(motif, top_alternations) + ones, "top", core.v_top);
  anchor_chain(b, prefix, repeat("0", f) + "1" + repeat(motif, bot_alternations) + ones, "bot", core.v_bot);
  return wrap("disconnected", b, prefix, core, true);
}

}  // namespace qcsp
