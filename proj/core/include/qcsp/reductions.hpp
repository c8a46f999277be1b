#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qcsp/formula.hpp"
#include "qcsp/graph.hpp"
#include "qcsp/homomorphism.hpp"
#include "qcsp/nae.hpp"

namespace qcsp {

struct ReductionOutput {
  std::string kind;
  PHSentence sentence;
  // Sentence variable -> role, e.g. "v_top" or "clause 3 / f".
  std::map<std::string, std::string> provenance;
  // Constructions the text leaves under-determined; verified only by oracle.
  bool best_effort = false;
};

std::string provenance_json(const ReductionOutput& out);

// m chained reflexive m-cycles with the left-end labels x and y; the last
// copy carries labels "1".."m". Throws std::invalid_argument for m < 4.
Graph edge_gadget(int m);

// CSP(K_m) -> QCSP(C_{1^m}). input must be loopless; every input vertex is
// existential.
ReductionOutput reduce_csp_km_to_reflexive(int m, const Graph& input);

// The open formula Psi'(v_top, v_bot) built from the variable and clause
// gadgets for the given pattern and selector paths.
struct NaeCore {
  Formula formula;
  std::string v_top = "v_top";
  std::string v_bot = "v_bot";
  std::map<std::string, std::string> provenance;
};

// Throws std::invalid_argument for a clause of three universals, a pattern
// shorter than 3 or a selector without exactly one looped end. Looped gadget
// vertices are tied to the centre of a spine pattern between the anchors;
// tie_universals extends this to the vertices behind a forall-selector.
NaeCore nae_core(const ReflexivityWord& pattern, const ReflexivityWord& selector, const NAEInstance& inst,
                 bool tie_universals = true);

// Truth of Psi'(top, bot) on t.
bool nae_core_holds(const NaeCore& core, const Graph& t, int top, int bot);

ReductionOutput reduce_qnae_to_p101(const NAEInstance& inst);

// QNAE -> QCSP(C_{0^d 1^e}); requires e > d+3 (d odd) or e > d+2 (d even).
ReductionOutput reduce_qnae_to_missing(int d, int e, const NAEInstance& inst);

// QNAE -> QCSP(C) for a cycle whose loops are disconnected and whose
// maximal gap value repeats. Refuses the unique-maximum case.
ReductionOutput reduce_disconnected(const ReflexivityWord& word, const NAEInstance& inst);

// Ret(C) instance: g contains a copy of the cycle given by embedding
// (cycle vertex -> g vertex).
struct RetInstance {
  Graph g;
  Pins embedding;
};

// "embed CYCLEVERTEX GRAPHVERTEX" lines mixed into the graph text format.
RetInstance parse_ret_instance(std::string_view text);
std::string format_ret_instance(const RetInstance& inst);

// Does word (as a cycle) contain an induced P_{11100}?
bool has_induced_p11100(const ReflexivityWord& word);

// A universal variable joined to cycle vertex `position` by a walk whose
// i-th step must land on a loop when steps[i] == '1'. An empty walk makes the
// cycle vertex itself universal.
struct RetPin {
  int position = 1;
  std::string steps;
};

// Smallest pin set (by count, then position and walk) such that every
// universal play is answered by some endomorphism of the cycle while one play
// is answered by automorphisms only. Empty when none exists within the bounds.
std::optional<std::vector<RetPin>> find_ret_pins(const ReflexivityWord& word, int max_pins = 3, int max_steps = 3);

ReductionOutput reduce_ret_odd(const ReflexivityWord& word, const RetInstance& inst);
// Built from find_ret_pins; throws std::invalid_argument when no pins exist.
ReductionOutput reduce_ret_even(const ReflexivityWord& word, const RetInstance& inst);
// Template: the m-cycle with loops at m/2 and m/2+1. The payload rides on the
// v-track. Always best_effort: the sentence is false even on the bare cycle.
ReductionOutput reduce_ret_even_two_loops(int m, const RetInstance& inst);

// A non-surjective map f of the labelled copy 1..m of edge_gadget(m) into
// C_{1^m} (f[k-1] is the image of k) together with pins x -> i, y -> j.
struct ConjectureCase {
  std::vector<int> f;
  int i = 0;
  int j = 0;
};

struct ConjectureReport {
  int m = 0;
  bool holds = true;
  std::uint64_t maps = 0;
  std::uint64_t cases = 0;
  std::vector<ConjectureCase> counterexamples;
};

// Exhaustive check that every such case extends to a homomorphism from
// edge_gadget(m). GuardError for m outside 4..5 unless allow_large.
ConjectureReport check_conjecture_gen(int m, bool allow_large = false, unsigned threads = 1);

// Re-derives a reported counterexample: f is a non-surjective homomorphism
// and the pinned extension does not exist.
bool replays(int m, const ConjectureCase& c);

}  // namespace qcsp
