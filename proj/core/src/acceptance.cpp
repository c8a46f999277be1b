#include "qcsp/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <mutex>
#include <random>
#include <sstream>

#include "parallel.hpp"
#include "qcsp/dichotomy.hpp"
#include "qcsp/polymorphism.hpp"
#include "qcsp/random_sentence.hpp"
#include "qcsp/reductions.hpp"
#include "qcsp/solver.hpp"

namespace qcsp {

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

class Runner {
 public:
  explicit Runner(const AcceptanceOptions& o) : o_(o) {}

  [[nodiscard]] std::size_t count(std::size_t normal, std::size_t quick) const { return o_.quick ? quick : normal; }
  [[nodiscard]] unsigned threads() const { return std::max(1U, o_.threads); }
  [[nodiscard]] const AcceptanceOptions& options() const { return o_; }

  void log(const std::string& line) const {
    if (!o_.log) return;
    const std::lock_guard lock(mu_);
    o_.log(line);
  }

 private:
  const AcceptanceOptions& o_;
  mutable std::mutex mu_;
};

const std::vector<std::pair<std::string, Graph>>& oracle_templates() {
  static const std::vector<std::pair<std::string, Graph>> t{
      {"C0111", make_cycle("0111")}, {"C1111", make_cycle("1111")}, {"K3", make_clique(3)}, {"P101", make_path("101")}};
  return t;
}

const Graph& c0111() { return oracle_templates()[0].second; }

std::vector<PHSentence> random_sample(const Runner& r) {
  RandomSentenceOptions opts;
  opts.max_variables = 8;
  opts.max_atoms = 10;
  return random_suite(r.options().seed, r.count(10000, 1000), opts);
}

// Indices where pred fails, sorted.
template <class Pred>
std::vector<std::size_t> failures(const Runner& r, std::size_t n, Pred pred) {
  std::mutex mu;
  std::vector<std::size_t> bad;
  detail::parallel_for(n, r.threads(), [&](std::size_t i) {
    if (pred(i)) return;
    const std::lock_guard lock(mu);
    bad.push_back(i);
  });
  std::sort(bad.begin(), bad.end());
  return bad;
}

std::string first_of(const std::vector<std::size_t>& bad, const std::vector<PHSentence>& sample) {
  return bad.empty() ? "" : "; first: " + serialize(sample[bad.front()]);
}

Outcome oracle_cross_validation(const Runner& r) {
  std::vector<PHSentence> small;
  for_each_small_sentence(3, true, [&](const PHSentence& s) { small.push_back(s); });
  const auto& ts = oracle_templates();
  auto agree = [&](const PHSentence& s) {
    for (const auto& [name, t] : ts)
      if (qcsp_eval(s, t).outcome != qcsp_eval_naive(s, t)) return false;
    return true;
  };
  const auto bad_small = failures(r, small.size(), [&](std::size_t i) { return agree(small[i]); });
  const auto sample = random_sample(r);
  const auto bad_random = failures(r, sample.size(), [&](std::size_t i) { return agree(sample[i]); });
  std::ostringstream os;
  os << "exhaustive " << small.size() - bad_small.size() << "/" << small.size() << ", random "
     << sample.size() - bad_random.size() << "/" << sample.size() << " (seed " << r.options().seed << ") x "
     << ts.size() << " templates" << first_of(bad_small, small) << first_of(bad_random, sample);
  return {bad_small.empty() && bad_random.empty(), os.str()};
}

const std::vector<std::pair<ForbiddenCase, const char*>>& forbidden_witnesses() {
  static const std::vector<std::pair<ForbiddenCase, const char*>> w{
      {ForbiddenCase::kI, "exists y; forall x; edge(x,y)"},
      {ForbiddenCase::kII, "forall x1 x2 x3; exists y; edge(x1,y) & edge(x2,y) & edge(x3,y)"},
      {ForbiddenCase::kIII,
       "forall u1 u2; exists y1; forall u3 u4; exists y2; "
       "edge(u1,y1) & edge(u2,y1) & edge(y1,y2) & edge(u3,y2) & edge(u4,y2)"},
      {ForbiddenCase::kIV,
       "forall u1; exists y1; forall u2 u3; exists y2 y3; "
       "edge(u1,y1) & edge(y1,y2) & edge(u2,y2) & edge(y2,y3) & edge(u2,y3) & edge(u3,y3)"},
  };
  return w;
}

Outcome c0111_decider(const Runner& r) {
  const auto sample = random_sample(r);
  const auto bad =
      failures(r, sample.size(), [&](std::size_t i) { return decide_c0111(sample[i]) == qcsp_eval(sample[i], c0111()).outcome; });
  int witnesses = 0;
  std::string wrong;
  for (const auto& [kind, text] : forbidden_witnesses()) {
    const auto s = parse_sentence(text);
    const auto w = find_forbidden_pattern(instance_graph(s));
    if (w && w->kind == kind && !decide_c0111(s) && !qcsp_eval(s, c0111()).outcome) ++witnesses;
    else wrong += " " + std::string(to_string(kind));
  }
  std::ostringstream os;
  os << "random " << sample.size() - bad.size() << "/" << sample.size() << ", forbidden cases false " << witnesses
     << "/4" << (wrong.empty() ? "" : "; wrong:" + wrong) << first_of(bad, sample);
  return {bad.empty() && wrong.empty(), os.str()};
}

Outcome relativisation(const Runner& r) {
  const auto sample = random_sample(r);
  const std::size_t chunk = 250;
  const std::size_t chunks = (sample.size() + chunk - 1) / chunk;
  std::vector<RelativisationReport> parts(chunks);
  detail::parallel_for(chunks, r.threads(), [&](std::size_t c) {
    const auto lo = sample.begin() + static_cast<std::ptrdiff_t>(c * chunk);
    const auto hi = sample.begin() + static_cast<std::ptrdiff_t>(std::min(sample.size(), (c + 1) * chunk));
    parts[c] = check_relativisation(c0111(), {1, 2, 4}, {2, 3, 4}, std::vector<PHSentence>(lo, hi));
  });
  std::size_t checked = 0, skipped = 0, disagreements = 0;
  std::string first;
  for (std::size_t c = 0; c < chunks; ++c) {
    checked += parts[c].checked;
    skipped += parts[c].skipped;
    disagreements += parts[c].disagreements.size();
    if (first.empty() && !parts[c].disagreements.empty())
      first = "; first: " + serialize(sample[c * chunk + parts[c].disagreements.front()]);
  }
  std::ostringstream os;
  os << "checked " << checked << ", skipped (degenerate equalities) " << skipped << ", disagreements "
     << disagreements << first;
  return {disagreements == 0 && checked > 0, os.str()};
}

// Restricts var's block to `range`, splitting it out of a shared block.
Formula restrict_to(Formula f, const std::string& var, std::vector<int> range) {
  for (std::size_t k = 0; k < f.blocks.size(); ++k) {
    auto& vars = f.blocks[k].variables;
    const auto it = std::find(vars.begin(), vars.end(), var);
    if (it == vars.end()) continue;
    vars.erase(it);
    QuantBlock own{f.blocks[k].quantifier, {var}, std::move(range)};
    f.blocks.insert(f.blocks.begin() + static_cast<std::ptrdiff_t>(k) + 1, std::move(own));
    if (vars.empty()) f.blocks.erase(f.blocks.begin() + static_cast<std::ptrdiff_t>(k));
    return f;
  }
  throw std::logic_error("variable not bound: " + var);
}

std::vector<int> subset(unsigned bits, int n) {
  std::vector<int> out;
  for (int v = 1; v <= n; ++v)
    if (bits >> (v - 1) & 1U) out.push_back(v);
  return out;
}

Outcome macro_semantics(const Runner&) {
  int checked = 0;
  std::vector<std::string> bad;

  // counting_exists on the reflexive 4-cycle, body = edges to <= 2 pinned vertices.
  const Graph c4 = make_cycle("1111");
  std::vector<std::vector<int>> pin_sets{{}};
  for (int a = 1; a <= 4; ++a) {
    pin_sets.push_back({a});
    for (int b = a + 1; b <= 4; ++b) pin_sets.push_back({a, b});
  }
  for (int i = 1; i <= 3; ++i) {
    for (const auto& pins : pin_sets) {
      Formula body;
      for (std::size_t k = 0; k < pins.size(); ++k) body.matrix.push_back(edge("x", "p" + std::to_string(k)));
      Formula f = counting_exists(i, "x", body);
      for (std::size_t k = pins.size(); k-- > 0;)
        f = quantify(Quantifier::kExists, {"p" + std::to_string(k)}, f, std::vector<int>{pins[k]});
      int satisfying = 0;
      for (int x = 1; x <= 4; ++x)
        satisfying += std::all_of(pins.begin(), pins.end(), [&](int p) { return c4.has_edge(x, p); });
      ++checked;
      if (qcsp_eval(f, c4).outcome != (satisfying >= i)) bad.push_back("counting " + std::to_string(i));
    }
  }

  // diamond on reflexive C5 / C6 over every nonempty satisfying set.
  for (int m : {5, 6}) {
    const Graph c = make_cycle(std::string(static_cast<std::size_t>(m), '1'));
    for (unsigned bits = 1; bits < (1U << m); ++bits) {
      const auto s = subset(bits, m);
      bool want = m % 2 == 0 ? s.size() >= 2 : false;
      if (m % 2 == 1)
        for (int u : s)
          for (int v : s)
            if (u != v && !c.has_edge(u, v)) want = true;
      const auto f = restrict_to(diamond("x", Formula{}, m), "x", s);
      ++checked;
      if (qcsp_eval(f, c).outcome != want) bad.push_back("diamond m=" + std::to_string(m) + " S=" + std::to_string(bits));
    }
  }

  // heart on the 6-cycle with loops at 3 and 4, over all 2^6 sets.
  const Graph h = make_cycle("001100");
  for (unsigned bits = 0; bits < 64; ++bits) {
    const auto s = subset(bits, 6);
    bool covers = true;
    for (int v = 1; v <= 6; ++v) {
      bool hit = false;
      for (int u : s) hit = hit || h.has_edge(v, u);
      covers = covers && hit;
    }
    const bool got = !s.empty() && qcsp_eval(restrict_to(heart("u", Formula{}), "u", s), h).outcome;
    ++checked;
    const bool in2 = bits & 2U, in5 = bits & 16U, in1 = bits & 1U, in6 = bits & 32U;
    if (got != covers || (got && !in2 && !in5 && !(in1 && in6)))
      bad.push_back("heart S=" + std::to_string(bits));
  }

  std::ostringstream os;
  os << "checked " << checked << " bodies, mismatches " << bad.size();
  if (!bad.empty()) os << "; first: " << bad.front();
  return {bad.empty(), os.str()};
}

Outcome polymorphisms(const Runner&) {
  std::string bad;
  for (const char* w : {"001", "011", "111", "0000", "0001", "0011"}) {
    const Graph g = make_cycle(w);
    const auto p = find_majority_polymorphism(g);
    if (!p || !is_polymorphism(g, *p)) bad += std::string(" majority missing on ") + w;
  }
  if (find_majority_polymorphism(make_cycle("0111"))) bad += " majority found on 0111";

  const auto seed = parse_polymorphism_seed(maroti_seed_text());
  Graph g(seed.table.size());
  for (auto [a, b] : seed.preserves) g.add_edge(a, b);
  const auto full = complete_polymorphism(seed);
  bool extends = full && full->total() && is_polymorphism(g, *full);
  if (extends) {
    for (std::size_t i = 0; i < seed.table.entry_count(); ++i)
      if (seed.table.at_index(i) != OpTable::kUnset && full->at_index(i) != seed.table.at_index(i)) extends = false;
    for (int x = 1; x <= seed.table.size(); ++x) {
      const int d[] = {x, x, x};
      if (full->at(d) != x) extends = false;
    }
  }
  if (!extends) bad += " seed does not extend";

  std::optional<int> c;
  enumerate_completions(seed.table, seed.preserves, [&](const OpTable& t) {
    if (!is_polymorphism(g, t)) return false;
    c = surjective_slice_constant(t);
    return c.has_value();
  });
  if (!c) bad += " no completion with surjective slices";
  std::ostringstream os;
  os << "majority 6/6 present, absent on 0111; seed completed; surjective slices at c="
     << (c ? std::to_string(*c - 1) : "none") << " (0-based)";
  return {bad.empty(), bad.empty() ? os.str() : "failed:" + bad};
}

// --- reductions ---

struct KindTally {
  std::string kind;
  int yes = 0;
  int no = 0;
  int disagree = 0;
  std::string first;
};

Graph random_loopless(std::uint64_t seed, int n, double p) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  Graph g(n);
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v)
      if (coin(rng)) g.add_edge(u, v);
  return g;
}

RetInstance random_ret(std::uint64_t seed, const ReflexivityWord& word) {
  std::mt19937_64 rng(seed);
  const int m = static_cast<int>(word.size());
  RetInstance inst{make_cycle(word), {}};
  for (int c = 1; c <= m; ++c) inst.embedding[c] = c;
  std::bernoulli_distribution edge(0.3), loop(0.5);
  for (std::uint64_t k = 0; k <= seed % 3; ++k) {
    const int v = inst.g.add_vertex();
    if (loop(rng)) inst.g.add_loop(v);
    for (int u = 1; u < v; ++u)
      if (edge(rng)) inst.g.add_edge(u, v);
  }
  return inst;
}

// Draws inputs until want_yes positives and want_no negatives were compared.
template <class Make, class Oracle, class Reduce>
KindTally tally(std::string kind, const Graph& t, int want_yes, int want_no, Make make, Oracle oracle, Reduce reduce) {
  KindTally k;
  k.kind = std::move(kind);
  for (std::uint64_t seed = 0; seed < 5000 && (k.yes < want_yes || k.no < want_no); ++seed) {
    const auto input = make(seed);
    const bool expected = oracle(input);
    if ((expected && k.yes >= want_yes) || (!expected && k.no >= want_no)) continue;
    const auto out = reduce(input);
    bool total = true;
    for (const auto& v : out.sentence.all_variables()) total = total && out.provenance.count(v) > 0;
    const bool got = qcsp_eval(out.sentence, t).outcome;
    (expected ? k.yes : k.no)++;
    if (got != expected || !total) {
      if (k.disagree++ == 0)
        k.first = "seed " + std::to_string(seed) + " source " + (expected ? "true" : "false") + " output " +
                  (got ? "true" : "false") + (total ? "" : " provenance incomplete");
    }
  }
  return k;
}

Outcome reductions(const Runner& r) {
  const int yes = static_cast<int>(r.count(20, 6));
  const int no = static_cast<int>(r.count(5, 2));
  using Task = std::function<KindTally()>;
  auto nae = [&](std::string kind, const Graph& t, int vars, int clauses,
                 std::function<ReductionOutput(const NAEInstance&)> reduce) -> Task {
    return [=] {
      return tally(kind, t, yes, no, [&](std::uint64_t s) { return random_nae(s, vars, clauses); },
                   [](const NAEInstance& i) { return nae_solve(i); }, reduce);
    };
  };
  auto km = [&](int m) -> Task {
    return [=] {
      const Graph t = make_cycle(std::string(static_cast<std::size_t>(m), '1'));
      return tally(
          "km-reflexive m=" + std::to_string(m), t, yes, no,
          [&](std::uint64_t s) { return random_loopless(s * 7 + static_cast<std::uint64_t>(m), m + 1, s % 2 ? 0.95 : 0.6); },
          [&](const Graph& g) { return find_homomorphism(g, make_clique(m)).has_value(); },
          [&](const Graph& g) { return reduce_csp_km_to_reflexive(m, g); });
    };
  };
  auto ret = [&](std::string kind, const char* word, std::function<ReductionOutput(const RetInstance&)> reduce) -> Task {
    return [=] {
      const ReflexivityWord w(word);
      const Graph t = make_cycle(w);
      return tally(
          kind + " " + word, t, yes, no, [&](std::uint64_t s) { return random_ret(s, w); },
          [&](const RetInstance& i) { return retraction_exists(i.g, i.embedding, t); }, reduce);
    };
  };
  auto disc = [&](const char* word) {
    const ReflexivityWord w(word);
    return nae(std::string("disconnected ") + word, make_cycle(w), 3, 3,
               [w](const NAEInstance& i) { return reduce_disconnected(w, i); });
  };
  const std::vector<Task> tasks{
      km(4),
      km(5),
      nae("qnae-p101", make_path("101"), 4, 4, [](const NAEInstance& i) { return reduce_qnae_to_p101(i); }),
      nae("qnae-missing (1,5)", make_cycle("011111"), 3, 3,
          [](const NAEInstance& i) { return reduce_qnae_to_missing(1, 5, i); }),
      ret("ret-odd", "0011111", [](const RetInstance& i) { return reduce_ret_odd(ReflexivityWord("0011111"), i); }),
      ret("ret-even", "001111", [](const RetInstance& i) { return reduce_ret_even(ReflexivityWord("001111"), i); }),
      ret("ret-two-loops", "001100", [](const RetInstance& i) { return reduce_ret_even_two_loops(6, i); }),
      disc("0101"),
      disc("010101"),
  };
  std::vector<KindTally> tallies(tasks.size());
  detail::parallel_for(tasks.size(), r.threads(), [&](std::size_t i) {
    try {
      tallies[i] = tasks[i]();
    } catch (const std::exception& e) {
      tallies[i].kind = "task " + std::to_string(i);
      tallies[i].disagree = 1;
      tallies[i].first = e.what();
    }
  });
  bool ok = true;
  std::ostringstream os;
  std::string sep;
  for (const auto& k : tallies) {
    const bool kind_ok = k.disagree == 0 && k.yes >= yes && k.no >= no;
    ok = ok && kind_ok;
    std::ostringstream line;
    line << "  " << (kind_ok ? "ok  " : "BAD ") << k.kind << ": " << k.yes + k.no - k.disagree << "/" << k.yes + k.no
         << " agree (" << k.no << " negative)" << (k.first.empty() ? "" : "; first: " + k.first);
    r.log(line.str());
    if (!kind_ok) {
      os << sep << k.kind;
      sep = ", ";
    }
  }
  return {ok, ok ? std::to_string(tasks.size()) + " kinds agree" : "disagreeing: " + os.str()};
}

Outcome closure(const Runner& r) {
  const Graph t = make_path("101");
  const std::size_t want = r.count(40, 10);
  std::size_t seen = 0, bad = 0;
  std::string first;
  for (std::uint64_t seed = 0; seed < 20000 && seen < want; ++seed) {
    const auto inst = random_nae(seed, 4, 4);
    if (!nae_solve(inst)) continue;
    ++seen;
    const auto core = nae_core(ReflexivityWord("101"), ReflexivityWord("10"), inst);
    for (auto [top, bot] : {std::pair{1, 3}, std::pair{3, 1}, std::pair{1, 1}, std::pair{3, 3}}) {
      if (nae_core_holds(core, t, top, bot)) continue;
      if (bad++ == 0) first = "; first: seed " + std::to_string(seed) + " at (" + std::to_string(top) + "," +
                              std::to_string(bot) + ")";
    }
  }
  return {bad == 0 && seen == want,
          std::to_string(seen) + " true instances x 4 anchor pairs, failures " + std::to_string(bad) + first};
}

struct GoldenRow {
  const char* nf;
  const char* upper;
  const char* lower;
};

// Every normal form of length 3 to 6, derived by hand from the classification.
const std::vector<GoldenRow>& golden_table() {
  static const std::vector<GoldenRow> t{
      {"000", "Pspace", "Pspace-hard"},   {"001", "NL", "trivial"},           {"011", "NL", "trivial"},
      {"111", "NL", "trivial"},           {"0000", "NL", "trivial"},          {"0001", "NL", "trivial"},
      {"0011", "NL", "trivial"},          {"0101", "Pspace", "Pspace-hard"},  {"0111", "L", "trivial"},
      {"1111", "Pspace", "Pspace-hard"},  {"00000", "Pspace", "Pspace-hard"}, {"00001", "NL", "trivial"},
      {"00011", "NL", "trivial"},         {"00101", "Pspace", "Pspace-hard"}, {"00111", "Pspace", "NP-hard"},
      {"01011", "Pspace", "Pspace-hard"}, {"01111", "Pspace", "NP-hard"},     {"11111", "Pspace", "NP-hard"},
      {"000000", "NL", "trivial"},        {"000001", "NL", "trivial"},        {"000011", "Pspace", "NP-hard"},
      {"000101", "Pspace", "Pspace-hard"}, {"000111", "Pspace", "NP-hard"},   {"001001", "Pspace", "Pspace-hard"},
      {"001011", "Pspace", "Pspace-hard"}, {"001111", "Pspace", "NP-hard"},   {"010101", "Pspace", "Pspace-hard"},
      {"010111", "Pspace", "Pspace-hard"}, {"011011", "Pspace", "Pspace-hard"}, {"011111", "Pspace", "Pspace-hard"},
      {"111111", "Pspace", "NP-hard"},
  };
  return t;
}

Outcome classifier(const Runner&) {
  std::map<std::string, const GoldenRow*> golden;
  for (const auto& row : golden_table()) golden[row.nf] = &row;
  int words = 0;
  std::string bad;
  for (int m = 3; m <= 6; ++m) {
    for (unsigned bits = 0; bits < (1U << m); ++bits) {
      std::string w;
      for (int i = 0; i < m; ++i) w += (bits >> i) & 1U ? '1' : '0';
      const auto v = classify(ReflexivityWord(w));
      ++words;
      const auto it = golden.find(v.normal_form.str());
      if (it == golden.end() || to_string(v.upper) != it->second->upper || to_string(v.lower) != it->second->lower)
        bad += " " + w;
    }
  }
  const auto c0101 = classify(ReflexivityWord("0101"));
  const auto c0111v = classify(ReflexivityWord("0111"));
  if (c0101.lower != LowerBound::kPspaceHard) bad += " 0101-not-Pspace-hard";
  if (c0111v.upper != UpperBound::kL) bad += " 0111-not-L";
  return {bad.empty(), std::to_string(words) + " words against " + std::to_string(golden.size()) + " normal forms" +
                           (bad.empty() ? "" : "; mismatches:" + bad)};
}

Outcome surjective_facts(const Runner&) {
  struct Fact {
    const char* name;
    Graph source;
    Graph target;
  };
  const Graph p001 = make_path("001");
  const Graph p01 = make_path("01");
  const std::vector<Fact> facts{
      {"(P001)^2 -> C0001", direct_product(p001, p001), make_cycle("0001")},
      {"C0001 -> P001", make_cycle("0001"), p001},
      {"(P01)^2 -> C001", direct_product(p01, p01), make_cycle("001")},
      {"(P01)^2 -> C011", direct_product(p01, p01), make_cycle("011")},
  };
  std::string bad;
  for (const auto& f : facts) {
    const auto h = find_surjective_homomorphism(f.source, f.target);
    bool ok = h && is_homomorphism(f.source, f.target, h->image);
    if (ok) {
      std::vector<bool> hit(static_cast<std::size_t>(f.target.size()) + 1);
      for (int v : h->image) hit[static_cast<std::size_t>(v)] = true;
      for (int v = 1; v <= f.target.size(); ++v) ok = ok && hit[static_cast<std::size_t>(v)];
    }
    if (!ok) bad += std::string(" ") + f.name;
  }
  return {bad.empty(), bad.empty() ? "4/4 witnesses found and checked" : "missing:" + bad};
}

Outcome conjecture(const Runner& r) {
  std::ostringstream os;
  bool ok = true;
  std::vector<int> sizes{4};
  if (r.options().full) sizes.push_back(5);
  for (int m : sizes) {
    const auto rep = check_conjecture_gen(m, false, r.threads());
    std::size_t replayed = 0;
    for (const auto& c : rep.counterexamples) replayed += replays(m, c);
    ok = ok && replayed == rep.counterexamples.size();
    os << "m=" << m << ": " << (rep.holds ? "holds" : "counterexamples") << " (" << rep.maps << " maps, " << rep.cases
       << " cases, " << replayed << "/" << rep.counterexamples.size() << " replay) ";
  }
  return {ok, os.str()};
}

Outcome edge_gadget_property(const Runner&) {
  int checked = 0;
  std::string bad;
  for (int m : {4, 5}) {
    const Graph g = edge_gadget(m);
    const Graph c = make_cycle(std::string(static_cast<std::size_t>(m), '1'));
    for (int a = 1; a <= m; ++a) {
      for (int b = 1; b <= m; ++b) {
        Pins pins{{*g.vertex("x"), a}, {*g.vertex("y"), b}};
        for (int j = 1; j <= m; ++j) pins[*g.vertex(std::to_string(j))] = j;
        ++checked;
        if (find_homomorphism(g, c, pins).has_value() != (a != b))
          bad += " m=" + std::to_string(m) + "(" + std::to_string(a) + "," + std::to_string(b) + ")";
      }
    }
  }
  return {bad.empty(), std::to_string(checked) + " (x,y) placements" + (bad.empty() ? "" : "; wrong:" + bad)};
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  Outcome (*run)(const Runner&);
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> c{
      {1, "oracle-cross-validation", 300, oracle_cross_validation},
      {2, "c0111-decider", 300, c0111_decider},
      {3, "relativisation", 300, relativisation},
      {4, "macro-semantics", 60, macro_semantics},
      {5, "polymorphisms", 600, polymorphisms},
      {6, "reduction-truth", 1800, reductions},
      {7, "closure", 300, closure},
      {8, "classifier-golden", 1, classifier},
      {9, "surjective-homomorphisms", 300, surjective_facts},
      {10, "conjecture", 1200, conjecture},
      {11, "edge-gadget", 120, edge_gadget_property},
  };
  return c;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts) {
  const Runner runner(opts);
  std::vector<CriterionResult> out;
  for (const auto& c : criteria()) {
    if (!opts.only.empty() && !opts.only.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run(runner);
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget_seconds) {
      o.passed = false;
      o.detail += "; over budget " + std::to_string(c.budget_seconds) + "s";
    }
    out.push_back({c.id, c.name, o.passed, o.detail, secs});
    runner.log(format_result(out.back()));
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  char secs[32];
  std::snprintf(secs, sizeof secs, "%.2fs", r.seconds);
  return std::string(r.passed ? "PASS " : "FAIL ") + std::to_string(r.id) + " " + r.name + ": " + r.detail + " [" +
         secs + "]";
}

std::string_view maroti_seed_text() {
  return "arity 3;\nsize 4;\nidempotent;\npreserves 01 10 12 21 23 32 30 03 00 11 22;\n"
         "value 302=0;\nvalue 320=2;\nvalue 311=1;\nvalue 123=1;\nvalue 223=2;\n"
         "value 003=0;\nvalue 032=0;\nvalue 030=1;\nvalue 230=2\n";
}

}  // namespace qcsp
