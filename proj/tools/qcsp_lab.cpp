// qcsp-lab: command line front end.
//
// Exit codes: 0 success, 1 negative answer to a boolean query, 2 usage or
// input error, 3 guard or internal error.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "qcsp/acceptance.hpp"
#include "qcsp/dichotomy.hpp"
#include "qcsp/errors.hpp"
#include "qcsp/polymorphism.hpp"
#include "qcsp/reductions.hpp"
#include "qcsp/solver.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace qcsp;

enum Exit { kOk = 0, kNegative = 1, kUsage = 2, kGuard = 3 };

// Input errors that are not parse errors.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

// "cycle:WORD", "path:WORD" or a graph file.
Graph load_template(const std::string& spec) {
  if (spec.rfind("cycle:", 0) == 0) return make_cycle(ReflexivityWord(spec.substr(6)));
  if (spec.rfind("path:", 0) == 0) return make_path(ReflexivityWord(spec.substr(5)));
  return parse_graph(read_file(spec));
}

unsigned thread_budget() {
  unsigned n = std::max(1U, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("QCSP_LAB_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) n = std::min(n, static_cast<unsigned>(cap));
  }
  return n;
}

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

json table_json(const OpTable& t) {
  json entries = json::array();
  for (std::size_t i = 0; i < t.entry_count(); ++i) entries.push_back(t.at_index(i));
  return {{"arity", t.arity()}, {"size", t.size()}, {"idempotent", t.idempotent()}, {"entries", entries}};
}

// One "a1 a2 .. ak -> v" line per tuple, 1-based.
std::string table_text(const OpTable& t) {
  std::ostringstream os;
  for (std::size_t i = 0; i < t.entry_count(); ++i) {
    for (int a : t.tuple(i)) os << a << ' ';
    os << "-> " << t.at_index(i) << '\n';
  }
  return os.str();
}

// --- eval ---

struct EvalArgs {
  std::string sentence;
  std::string target;
  std::string engine = "game";
  bool json = false;
};

int cmd_eval(const EvalArgs& a) {
  const auto s = parse_sentence(read_file(a.sentence));
  const Graph t = load_template(a.target);
  EvalOptions opts;
  opts.engine = a.engine == "naive" ? EvalEngine::kNaive : EvalEngine::kGame;
  opts.witness = a.json && opts.engine == EvalEngine::kGame;
  const auto w = qcsp_eval(s, t, opts);
  if (a.json) {
    json out{{"command", "eval"}, {"engine", a.engine}, {"result", w.outcome}};
    if (opts.witness) out["witness"] = json::parse(witness_json(w));
    print(out);
  } else {
    std::cout << (w.outcome ? "true" : "false") << '\n';
  }
  return w.outcome ? kOk : kNegative;
}

// --- classify ---

int cmd_classify(const std::string& word, bool as_json) {
  const auto v = classify(ReflexivityWord(word));
  if (as_json) {
    json out{{"command", "classify"}};
    out.update(json::parse(verdict_json(v)));
    print(out);
  } else {
    std::cout << v.word.str() << " (normal form " << v.normal_form.str() << "): upper " << to_string(v.upper)
              << ", lower " << to_string(v.lower) << "; rules";
    for (const auto& r : v.rules) std::cout << ' ' << r;
    std::cout << '\n';
  }
  return kOk;
}

// --- reduce ---

struct ReduceArgs {
  std::string kind;
  std::string source;
  int m = 0;
  int d = 0;
  int e = 0;
  std::string word;
  std::string out;
  bool verify = false;
  bool json = false;
};

struct Reduced {
  ReductionOutput output;
  Graph target;
  bool source_verdict = false;
};

int require(int value, const char* flag) {
  if (value <= 0) throw UsageError(std::string("missing --") + flag);
  return value;
}

ReflexivityWord require_word(const std::string& w) {
  if (w.empty()) throw UsageError("missing --word");
  return ReflexivityWord(w);
}

Reduced run_reduction(const ReduceArgs& a) {
  const std::string text = read_file(a.source);
  if (a.kind == "km-reflexive") {
    const int m = require(a.m, "m");
    const Graph g = parse_graph(text);
    auto out = reduce_csp_km_to_reflexive(m, g);
    const bool src = a.verify && find_homomorphism(g, make_clique(m)).has_value();
    return {std::move(out), make_cycle(std::string(static_cast<std::size_t>(m), '1')), src};
  }
  if (a.kind == "qnae-p101" || a.kind == "qnae-missing" || a.kind == "disconnected") {
    const auto inst = parse_nae(text);
    const bool src = a.verify && nae_solve(inst);
    if (a.kind == "qnae-p101") return {reduce_qnae_to_p101(inst), make_path("101"), src};
    if (a.kind == "qnae-missing") {
      const int d = require(a.d, "d"), e = require(a.e, "e");
      auto out = reduce_qnae_to_missing(d, e, inst);
      return {std::move(out),
              make_cycle(std::string(static_cast<std::size_t>(d), '0') + std::string(static_cast<std::size_t>(e), '1')),
              src};
    }
    const auto w = require_word(a.word);
    return {reduce_disconnected(w, inst), make_cycle(w), src};
  }
  const auto inst = parse_ret_instance(text);
  auto ret_source = [&](const Graph& t) { return a.verify && retraction_exists(inst.g, inst.embedding, t); };
  if (a.kind == "ret-odd" || a.kind == "ret-even") {
    const auto w = require_word(a.word);
    const Graph t = make_cycle(w);
    auto out = a.kind == "ret-odd" ? reduce_ret_odd(w, inst) : reduce_ret_even(w, inst);
    return {std::move(out), t, ret_source(t)};
  }
  if (a.kind == "ret-two-loops") {
    const int m = require(a.m, "m");
    auto out = reduce_ret_even_two_loops(m, inst);
    const std::string zeros(static_cast<std::size_t>(m / 2 - 1), '0');
    const Graph t = make_cycle(zeros + "11" + zeros);
    return {std::move(out), t, ret_source(t)};
  }
  throw UsageError("unknown reduction kind " + a.kind);
}

int cmd_reduce(const ReduceArgs& a) {
  const auto r = run_reduction(a);
  const std::string sentence = serialize(r.output.sentence);
  const std::string provenance = provenance_json(r.output);
  if (!a.out.empty()) {
    write_file(a.out, sentence + "\n");
    write_file(a.out + ".provenance.json", provenance + "\n");
  }
  bool output_verdict = false;
  if (a.verify) output_verdict = qcsp_eval(r.output.sentence, r.target).outcome;
  const bool agree = r.source_verdict == output_verdict;
  if (a.json) {
    json out{{"command", "reduce"},
             {"kind", a.kind},
             {"best_effort", r.output.best_effort},
             {"sentence", sentence},
             {"provenance", json::parse(provenance)["provenance"]}};
    if (a.verify)
      out["verify"] = {{"source", r.source_verdict}, {"output", output_verdict}, {"agree", agree}};
    print(out);
  } else {
    if (a.out.empty()) std::cout << sentence << '\n';
    if (r.output.best_effort) std::cout << "best-effort: true\n";
    if (a.verify)
      std::cout << (agree ? "agree: " : "disagree: ") << (r.source_verdict ? "true" : "false") << '/'
                << (output_verdict ? "true" : "false") << '\n';
  }
  return a.verify && !agree ? kNegative : kOk;
}

// --- poly ---

struct PolyArgs {
  std::string target;
  std::string mode;
  std::string seed;
  bool json = false;
};

int cmd_poly(const PolyArgs& a) {
  const Graph g = load_template(a.target);
  std::optional<OpTable> table;
  std::optional<int> slice;
  if (a.mode == "majority") {
    table = find_majority_polymorphism(g);
  } else {
    if (a.seed.empty()) throw UsageError("complete needs --seed");
    const auto seed = parse_polymorphism_seed(read_file(a.seed));
    if (seed.table.size() != g.size()) throw UsageError("seed size differs from the template");
    if (seed.conflicts.empty())
      table = complete_polymorphism(g, seed.table, seed.preserves.empty() ? g.edges() : seed.preserves);
    if (table && table->arity() == 3) slice = surjective_slice_constant(*table);
  }
  if (a.json) {
    json out{{"command", "poly"}, {"mode", a.mode}, {"found", table.has_value()}};
    if (table) out["table"] = table_json(*table);
    if (slice) out["surjective_slice_constant"] = *slice;
    print(out);
  } else if (table) {
    std::cout << "witness\n" << table_text(*table);
    if (slice) std::cout << "surjective slices at " << *slice << '\n';
  } else {
    std::cout << "absent\n";
  }
  return table ? kOk : kNegative;
}

// --- conjecture ---

int cmd_conjecture(int m, bool force, bool as_json) {
  const auto rep = check_conjecture_gen(m, force, thread_budget());
  if (as_json) {
    json ces = json::array();
    for (const auto& c : rep.counterexamples)
      ces.push_back({{"f", c.f}, {"i", c.i}, {"j", c.j}, {"replays", replays(m, c)}});
    print({{"command", "conjecture"},
           {"m", m},
           {"holds", rep.holds},
           {"maps", rep.maps},
           {"cases", rep.cases},
           {"counterexamples", ces}});
  } else {
    std::cout << "m=" << m << ": " << (rep.holds ? "holds" : "fails") << " (" << rep.maps << " maps, " << rep.cases
              << " cases)\n";
    for (const auto& c : rep.counterexamples) {
      std::cout << "counterexample f=";
      for (int v : c.f) std::cout << v;
      std::cout << " x->" << c.i << " y->" << c.j << (replays(m, c) ? " (replays)" : " (does not replay)") << '\n';
    }
  }
  return kOk;
}

// --- selftest ---

int cmd_selftest(bool quick, bool full, bool as_json, const std::set<int>& expect_fail) {
  AcceptanceOptions opts;
  opts.quick = quick;
  opts.full = full;
  opts.threads = thread_budget();
  if (!as_json) {
    std::cout << "seed " << opts.seed << '\n';
    opts.log = [](const std::string& line) { std::cout << line << '\n' << std::flush; };
  }
  const auto results = run_acceptance(opts);
  bool ok = true;
  json criteria = json::array();
  for (const auto& r : results) {
    ok = ok && (r.passed != expect_fail.count(r.id) > 0);
    criteria.push_back(
        {{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}, {"seconds", r.seconds}});
  }
  if (as_json)
    print({{"command", "selftest"},
           {"mode", full ? "full" : quick ? "quick" : "default"},
           {"seed", opts.seed},
           {"passed", ok},
           {"criteria", criteria}});
  return ok ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qcsp-lab: QCSP on partially reflexive cycles"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "Evaluate a sentence on a template");
  eval->add_option("sentence", ev.sentence, "Sentence file")->required();
  eval->add_option("template", ev.target, "Graph file, cycle:WORD or path:WORD")->required();
  eval->add_option("--engine", ev.engine)->check(CLI::IsMember({"game", "naive"}));
  eval->add_flag("--json", ev.json);

  std::string word;
  bool classify_json = false;
  auto* cls = app.add_subcommand("classify", "Complexity of QCSP on a cycle");
  cls->add_option("word", word, "Reflexivity word, e.g. 0111")->required();
  cls->add_flag("--json", classify_json);

  ReduceArgs rd;
  auto* red = app.add_subcommand("reduce", "Build a reduction output");
  red->add_option("kind", rd.kind)
      ->required()
      ->check(CLI::IsMember({"km-reflexive", "qnae-p101", "qnae-missing", "ret-odd", "ret-even", "ret-two-loops",
                             "disconnected"}));
  red->add_option("source", rd.source, "Graph, NAE or Ret instance file")->required();
  red->add_option("--m", rd.m);
  red->add_option("--d", rd.d);
  red->add_option("--e", rd.e);
  red->add_option("--word", rd.word);
  red->add_option("-o,--out", rd.out, "Write the sentence here and provenance to OUT.provenance.json");
  red->add_flag("--verify", rd.verify, "Compare source and output oracles");
  red->add_flag("--json", rd.json);

  PolyArgs po;
  auto* poly = app.add_subcommand("poly", "Polymorphism search");
  poly->add_option("template", po.target)->required();
  poly->add_option("mode", po.mode)->required()->check(CLI::IsMember({"majority", "complete"}));
  poly->add_option("--seed", po.seed, "Seed file (arity/size/idempotent/preserves/value lines)");
  poly->add_flag("--json", po.json);

  int m = 0;
  bool force = false, conj_json = false;
  auto* conj = app.add_subcommand("conjecture", "Exhaustive check of the edge-gadget conjecture");
  conj->add_option("m", m)->required();
  conj->add_flag("--force", force, "Allow m > 5");
  conj->add_flag("--json", conj_json);

  bool quick = false, full = false, self_json = false;
  std::set<int> expect_fail;
  auto* self = app.add_subcommand("selftest", "Run the acceptance suite");
  self->add_flag("--quick", quick);
  self->add_flag("--full", full);
  self->add_flag("--json", self_json);
  self->add_option("--expect-fail", expect_fail, "Criteria known to fail")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kOk : kUsage;
  }

  try {
    if (*eval) return cmd_eval(ev);
    if (*cls) return cmd_classify(word, classify_json);
    if (*red) return cmd_reduce(rd);
    if (*poly) return cmd_poly(po);
    if (*conj) return cmd_conjecture(m, force, conj_json);
    if (*self) return cmd_selftest(quick, full, self_json, expect_fail);
  } catch (const GuardError& e) {
    std::cerr << "guard: " << e.what() << '\n';
    return kGuard;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kGuard;
  }
  return kUsage;
}
