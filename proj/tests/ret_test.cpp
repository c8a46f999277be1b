#include <gtest/gtest.h>

#include <random>

#include "qcsp/errors.hpp"
#include "qcsp/reductions.hpp"
#include "qcsp/solver.hpp"

using namespace qcsp;

namespace {

// The template cycle on 1..m plus up to three extra vertices with random
// edges and loops.
RetInstance random_ret(std::uint64_t seed, const ReflexivityWord& word) {
  std::mt19937_64 rng(seed);
  const int m = static_cast<int>(word.size());
  const int extra = 1 + static_cast<int>(seed % 3);
  RetInstance inst{make_cycle(word), {}};
  for (int c = 1; c <= m; ++c) inst.embedding[c] = c;
  std::bernoulli_distribution edge(0.3), loop(0.5);
  for (int k = 0; k < extra; ++k) {
    const int v = inst.g.add_vertex();
    if (loop(rng)) inst.g.add_loop(v);
    for (int u = 1; u < v; ++u)
      if (edge(rng)) inst.g.add_edge(u, v);
  }
  return inst;
}

template <class Reduce>
void ret_agreement(const ReflexivityWord& word, Reduce reduce) {
  const Graph t = make_cycle(word);
  int yes = 0, no = 0;
  for (std::uint64_t seed = 0; seed < 3000 && (yes < 20 || no < 5); ++seed) {
    const auto inst = random_ret(seed, word);
    const bool expected = retraction_exists(inst.g, inst.embedding, t);
    if ((expected && yes >= 20) || (!expected && no >= 5)) continue;
    const auto r = reduce(inst);
    for (const auto& v : r.sentence.all_variables()) EXPECT_TRUE(r.provenance.count(v)) << v;
    ASSERT_EQ(qcsp_eval(r.sentence, t).outcome, expected) << "seed " << seed << '\n' << format_ret_instance(inst);
    (expected ? yes : no)++;
  }
  EXPECT_GE(yes, 20);
  EXPECT_GE(no, 5);
}

}  // namespace

TEST(RetFormat, RoundTrip) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto inst = random_ret(seed, ReflexivityWord("0011111"));
    const auto back = parse_ret_instance(format_ret_instance(inst));
    EXPECT_EQ(back.g, inst.g);
    EXPECT_EQ(back.embedding, inst.embedding);
  }
}

TEST(RetFormat, Errors) {
  EXPECT_THROW(parse_ret_instance("vertices 2\nembed 1\n"), ParseError);
  EXPECT_THROW(parse_ret_instance("vertices 2\nembed 1 3\n"), ParseError);
  EXPECT_THROW(parse_ret_instance("vertices 2\nembed 1 1\nembed 1 2\n"), ParseError);
}

TEST(RetWords, InducedP11100) {
  EXPECT_TRUE(has_induced_p11100(ReflexivityWord("0011111")));
  EXPECT_TRUE(has_induced_p11100(ReflexivityWord("001111")));
  EXPECT_FALSE(has_induced_p11100(ReflexivityWord("001100")));
  EXPECT_FALSE(has_induced_p11100(ReflexivityWord("00111")));
  EXPECT_FALSE(has_induced_p11100(ReflexivityWord("011111")));
}

class RetOdd : public ::testing::TestWithParam<const char*> {};

TEST_P(RetOdd, MatchesRetraction) {
  const ReflexivityWord w(GetParam());
  ret_agreement(w, [&](const RetInstance& i) { return reduce_ret_odd(w, i); });
}

INSTANTIATE_TEST_SUITE_P(Words, RetOdd, ::testing::Values("0011111", "1100111", "0001111"));

class RetEven : public ::testing::TestWithParam<const char*> {};

TEST_P(RetEven, MatchesRetraction) {
  const ReflexivityWord w(GetParam());
  ret_agreement(w, [&](const RetInstance& i) { return reduce_ret_even(w, i); });
}

INSTANTIATE_TEST_SUITE_P(Words, RetEven, ::testing::Values("001111", "111001", "00011111"));

// The displayed two-track sentence fails whenever v_1 lands on vertex 1 or
// w_1 on vertex m, so it is false even on the bare cycle.
TEST(RetTwoLoops, KnownGapOnBareCycle) {
  for (int m : {6, 8}) {
    std::string word(static_cast<std::size_t>(m), '0');
    word[static_cast<std::size_t>(m / 2 - 1)] = word[static_cast<std::size_t>(m / 2)] = '1';
    RetInstance inst{make_cycle(word), {}};
    for (int c = 1; c <= m; ++c) inst.embedding[c] = c;
    ASSERT_TRUE(retraction_exists(inst.g, inst.embedding, make_cycle(word)));
    const auto r = reduce_ret_even_two_loops(m, inst);
    EXPECT_TRUE(r.best_effort);
    for (const auto& v : r.sentence.all_variables()) EXPECT_TRUE(r.provenance.count(v)) << v;
    EXPECT_FALSE(qcsp_eval(r.sentence, make_cycle(word)).outcome);
  }
}

TEST(RetPins, NoneForTwoLoops) {
  EXPECT_FALSE(find_ret_pins(ReflexivityWord("001100"), 2, 2).has_value());
}

TEST(RetPins, FoundForEvenWords) {
  for (const char* w : {"001111", "0011111", "00111"}) {
    const auto pins = find_ret_pins(ReflexivityWord(w));
    ASSERT_TRUE(pins.has_value()) << w;
    EXPECT_LE(pins->size(), 3U);
  }
}

TEST(Ret, Refusals) {
  const auto inst = random_ret(0, ReflexivityWord("10000"));
  EXPECT_THROW(reduce_ret_odd(ReflexivityWord("10000"), inst), std::invalid_argument);
  EXPECT_THROW(reduce_ret_odd(ReflexivityWord("001111"), inst), std::invalid_argument);
  EXPECT_THROW(reduce_ret_even(ReflexivityWord("0011111"), inst), std::invalid_argument);
  EXPECT_THROW(reduce_ret_even_two_loops(4, inst), std::invalid_argument);
}
