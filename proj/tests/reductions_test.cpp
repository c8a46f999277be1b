#include <gtest/gtest.h>

#include <random>

#include "qcsp/reductions.hpp"
#include "qcsp/solver.hpp"

using namespace qcsp;

namespace {

Graph random_loopless(std::uint64_t seed, int n, double p) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  Graph g(n);
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v)
      if (coin(rng)) g.add_edge(u, v);
  return g;
}

bool holds(const ReductionOutput& r, const Graph& t) { return qcsp_eval(r.sentence, t).outcome; }

void expect_total_provenance(const ReductionOutput& r) {
  for (const auto& v : r.sentence.all_variables()) EXPECT_TRUE(r.provenance.count(v)) << r.kind << ": " << v;
}

// Runs seeds until enough positives and negatives have been compared.
template <class Make, class Oracle, class Check>
void agree(Make make, Oracle oracle, Check check, int want_yes, int want_no, int max_seeds) {
  int yes = 0, no = 0;
  for (int seed = 0; seed < max_seeds && (yes < want_yes || no < want_no); ++seed) {
    auto input = make(static_cast<std::uint64_t>(seed));
    const bool expected = oracle(input);
    if ((expected && yes >= want_yes) || (!expected && no >= want_no)) continue;
    ASSERT_EQ(check(input), expected) << "seed " << seed;
    (expected ? yes : no)++;
  }
  EXPECT_GE(yes, want_yes);
  EXPECT_GE(no, want_no);
}

}  // namespace

TEST(EdgeGadget, Shape) {
  EXPECT_EQ(edge_gadget(4).size(), 17);
  EXPECT_THROW(edge_gadget(3), std::invalid_argument);
}

TEST(EdgeGadget, ForbidsEqualEnds) {
  for (int m : {4, 5, 6, 7}) {
    const Graph g = edge_gadget(m);
    const Graph c = make_cycle(std::string(static_cast<std::size_t>(m), '1'));
    for (int a = 1; a <= m; ++a) {
      for (int b = 1; b <= m; ++b) {
        Pins pins{{*g.vertex("x"), a}, {*g.vertex("y"), b}};
        for (int j = 1; j <= m; ++j) pins[*g.vertex(std::to_string(j))] = j;
        EXPECT_EQ(find_homomorphism(g, c, pins).has_value(), a != b) << m << ' ' << a << ' ' << b;
      }
    }
  }
}

class KmReduction : public ::testing::TestWithParam<int> {};

TEST_P(KmReduction, MatchesColouring) {
  const int m = GetParam();
  const Graph t = make_cycle(std::string(static_cast<std::size_t>(m), '1'));
  agree([&](std::uint64_t seed) { return random_loopless(seed * 7 + static_cast<std::uint64_t>(m), m + 1, seed % 2 ? 0.95 : 0.6); },
        [&](const Graph& g) { return find_homomorphism(g, make_clique(m)).has_value(); },
        [&](const Graph& g) {
          const auto r = reduce_csp_km_to_reflexive(m, g);
          expect_total_provenance(r);
          return holds(r, t);
        },
        20, 5, 2000);
}

INSTANTIATE_TEST_SUITE_P(Sizes, KmReduction, ::testing::Values(4, 5));

TEST(KmReduction, RejectsLoops) {
  Graph g(2);
  g.add_loop(1);
  EXPECT_THROW(reduce_csp_km_to_reflexive(4, g), std::invalid_argument);
}

TEST(NaeCore, ClosureOnP101) {
  const Graph t = make_path("101");
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto inst = random_nae(seed, 4, 3);
    const auto core = nae_core(ReflexivityWord("101"), ReflexivityWord("10"), inst);
    const bool v = nae_solve(inst);
    // Anchors at distinct loops encode the instance; a shared anchor admits
    // everything through the constant map to it.
    EXPECT_EQ(nae_core_holds(core, t, 1, 3), v);
    EXPECT_EQ(nae_core_holds(core, t, 3, 1), v);
    EXPECT_TRUE(nae_core_holds(core, t, 1, 1));
    EXPECT_TRUE(nae_core_holds(core, t, 3, 3));
  }
}

TEST(NaeCore, Rejections) {
  const auto inst = parse_nae("var x forall\nvar y forall\nvar z forall\nvar w exists\nclause x y z\nclause x y w\n");
  EXPECT_THROW(nae_core(ReflexivityWord("101"), ReflexivityWord("10"), inst), std::invalid_argument);
  const auto ok = parse_nae("var x exists\nclause x x x\n");
  EXPECT_THROW(nae_core(ReflexivityWord("11"), ReflexivityWord("10"), ok), std::invalid_argument);
  EXPECT_THROW(nae_core(ReflexivityWord("101"), ReflexivityWord("11"), ok), std::invalid_argument);
}

namespace {

void nae_agreement(const std::function<ReductionOutput(const NAEInstance&)>& reduce, const Graph& t, int vars,
                   int clauses) {
  agree([&](std::uint64_t seed) { return random_nae(seed, vars, clauses); },
        [](const NAEInstance& inst) { return nae_solve(inst); },
        [&](const NAEInstance& inst) {
          const auto r = reduce(inst);
          expect_total_provenance(r);
          return holds(r, t);
        },
        20, 5, 2000);
}

}  // namespace

TEST(QnaeReduction, P101) {
  nae_agreement([](const NAEInstance& i) { return reduce_qnae_to_p101(i); }, make_path("101"), 4, 4);
}

class Missing : public ::testing::TestWithParam<std::pair<int, int>> {};

TEST_P(Missing, MatchesNae) {
  const auto [d, e] = GetParam();
  const Graph t = make_cycle(std::string(static_cast<std::size_t>(d), '0') + std::string(static_cast<std::size_t>(e), '1'));
  nae_agreement([&](const NAEInstance& i) { return reduce_qnae_to_missing(d, e, i); }, t, 3, 3);
}

INSTANTIATE_TEST_SUITE_P(Shapes, Missing,
                         ::testing::Values(std::pair{1, 5}, std::pair{1, 7}, std::pair{2, 6}, std::pair{2, 8},
                                           std::pair{3, 7}, std::pair{3, 10}, std::pair{4, 8}));

TEST(Missing, FlagsUnverifiedShapes) {
  const auto inst = parse_nae("var x exists\nvar y exists\nclause x x y\n");
  EXPECT_FALSE(reduce_qnae_to_missing(1, 5, inst).best_effort);
  EXPECT_TRUE(reduce_qnae_to_missing(1, 6, inst).best_effort);
  EXPECT_TRUE(reduce_qnae_to_missing(2, 5, inst).best_effort);
}

TEST(Missing, RejectsSmallE) {
  const auto inst = parse_nae("var x exists\nclause x x x\n");
  EXPECT_THROW(reduce_qnae_to_missing(2, 3, inst), std::invalid_argument);
  EXPECT_THROW(reduce_qnae_to_missing(1, 4, inst), std::invalid_argument);
}

class Disconnected : public ::testing::TestWithParam<const char*> {};

TEST_P(Disconnected, MatchesNae) {
  const ReflexivityWord w(GetParam());
  nae_agreement([&](const NAEInstance& i) { return reduce_disconnected(w, i); }, make_cycle(w), 3, 3);
}

INSTANTIATE_TEST_SUITE_P(Words, Disconnected, ::testing::Values("0101", "0100101"));

// Three equal gaps leave a third loop that a forall-selector can reach from
// either anchor; the output is then false on some true instances.
TEST(Disconnected, KnownGapOnThreeGaps) {
  const ReflexivityWord w("010101");
  const Graph t = make_cycle(w);
  bool false_negative = false;
  for (std::uint64_t seed = 0; seed < 40 && !false_negative; ++seed) {
    const auto inst = random_nae(seed, 3, 3);
    const auto r = reduce_disconnected(w, inst);
    EXPECT_TRUE(r.best_effort);
    if (nae_solve(inst)) false_negative = !holds(r, t);
    else EXPECT_FALSE(holds(r, t));
  }
  EXPECT_TRUE(false_negative);
}

TEST(Disconnected, Refusals) {
  const auto inst = parse_nae("var x exists\nclause x x x\n");
  EXPECT_THROW(reduce_disconnected(ReflexivityWord("0111"), inst), std::invalid_argument);
  EXPECT_THROW(reduce_disconnected(ReflexivityWord("0100011"), inst), std::invalid_argument);
}

TEST(Provenance, Json) {
  const auto r = reduce_qnae_to_p101(parse_nae("var x forall\nvar y exists\nclause x y y\n"));
  const auto j = provenance_json(r);
  EXPECT_NE(j.find("\"kind\": \"qnae-p101\""), std::string::npos);
  EXPECT_NE(j.find("v_top_all"), std::string::npos);
}
