#include <gtest/gtest.h>

#include <map>

#include "qcsp/dichotomy.hpp"
#include "qcsp/polymorphism.hpp"
#include "qcsp/random_sentence.hpp"
#include "qcsp/solver.hpp"

using namespace qcsp;

namespace {

struct Row {
  const char* nf;
  const char* upper;
  const char* lower;
  const char* rule;
};

// Every normal form of length 3 to 6, transcribed by hand from the
// classification.
const std::vector<Row> kGolden{
    {"000", "Pspace", "Pspace-hard", "odd-irreflexive"},
    {"001", "NL", "trivial", "majority-small"},
    {"011", "NL", "trivial", "majority-small"},
    {"111", "NL", "trivial", "majority-small"},
    {"0000", "NL", "trivial", "majority-small"},
    {"0001", "NL", "trivial", "majority-small"},
    {"0011", "NL", "trivial", "majority-small"},
    {"0101", "Pspace", "Pspace-hard", "cor-disconnected"},
    {"0111", "L", "trivial", "prop-c0111"},
    {"1111", "Pspace", "Pspace-hard", "prop-c1111"},
    {"00000", "Pspace", "Pspace-hard", "odd-irreflexive"},
    {"00001", "NL", "trivial", "thm-over4-nl"},
    {"00011", "NL", "trivial", "thm-over4-nl"},
    {"00101", "Pspace", "Pspace-hard", "cor-disconnected"},
    {"00111", "Pspace", "NP-hard", "prop-odds"},
    {"01011", "Pspace", "Pspace-hard", "cor-disconnected"},
    {"01111", "Pspace", "NP-hard", "prop-odds"},
    {"11111", "Pspace", "NP-hard", "prop-reflexive"},
    {"000000", "NL", "trivial", "thm-over4-nl"},
    {"000001", "NL", "trivial", "thm-over4-nl"},
    {"000011", "Pspace", "NP-hard", "prop-evens2"},
    {"000101", "Pspace", "Pspace-hard", "cor-disconnected"},
    {"000111", "Pspace", "NP-hard", "prop-evens"},
    {"001001", "Pspace", "Pspace-hard", "cor-disconnected"},
    {"001011", "Pspace", "Pspace-hard", "cor-disconnected"},
    {"001111", "Pspace", "NP-hard", "prop-evens"},
    {"010101", "Pspace", "Pspace-hard", "cor-disconnected"},
    {"010111", "Pspace", "Pspace-hard", "cor-disconnected"},
    {"011011", "Pspace", "Pspace-hard", "cor-disconnected"},
    {"011111", "Pspace", "Pspace-hard", "prop-missing"},
    {"111111", "Pspace", "NP-hard", "prop-reflexive"},
};

std::vector<std::string> all_words(int m) {
  std::vector<std::string> out;
  for (int bits = 0; bits < (1 << m); ++bits) {
    std::string w;
    for (int i = 0; i < m; ++i) w += (bits >> i) & 1 ? '1' : '0';
    out.push_back(w);
  }
  return out;
}

const Graph& c0111() {
  static const Graph g = make_cycle("0111");
  return g;
}

ForbiddenWitness forbidden(const std::string& text) {
  const auto ig = instance_graph(parse_sentence(text));
  const auto w = find_forbidden_pattern(ig);
  EXPECT_TRUE(w.has_value()) << text;
  if (!w) return {};
  EXPECT_TRUE(replay_forbidden(ig, *w)) << text;
  return *w;
}

}  // namespace

TEST(Classify, SpecExamples) {
  EXPECT_EQ(classify(ReflexivityWord("1111")).lower, LowerBound::kPspaceHard);
  EXPECT_EQ(classify(ReflexivityWord("0111")).upper, UpperBound::kL);
  EXPECT_EQ(classify(ReflexivityWord("000001")).upper, UpperBound::kNL);
  EXPECT_EQ(classify(ReflexivityWord("011111")).lower, LowerBound::kPspaceHard);
  EXPECT_EQ(classify(ReflexivityWord("0101")).lower, LowerBound::kPspaceHard);
  const auto r = classify(ReflexivityWord("11111"));
  EXPECT_EQ(r.lower, LowerBound::kNPHard);
  EXPECT_EQ(r.upper, UpperBound::kPspace);
  EXPECT_THROW(classify(ReflexivityWord("01")), std::invalid_argument);
}

TEST(Classify, GoldenTableCoversEveryNormalForm) {
  std::map<std::string, Row> golden;
  for (const auto& r : kGolden) golden[r.nf] = r;
  for (int m = 3; m <= 6; ++m) {
    for (const auto& w : all_words(m)) {
      const auto v = classify(ReflexivityWord(w));
      const auto it = golden.find(v.normal_form.str());
      ASSERT_NE(it, golden.end()) << "no golden row for " << v.normal_form.str();
      EXPECT_EQ(to_string(v.upper), it->second.upper) << w;
      EXPECT_EQ(to_string(v.lower), it->second.lower) << w;
      ASSERT_FALSE(v.rules.empty());
      EXPECT_EQ(v.rules.back(), it->second.rule) << w;
    }
  }
}

TEST(Classify, InvariantUnderRotationAndReflection) {
  for (int m = 3; m <= 9; ++m) {
    for (const auto& w : all_words(m)) {
      const ReflexivityWord word(w);
      const auto v = classify(word);
      for (std::size_t k = 0; k < word.size(); ++k) {
        const auto r = classify(word.rotated(k));
        EXPECT_EQ(r.upper, v.upper);
        EXPECT_EQ(r.lower, v.lower);
        const auto f = classify(word.rotated(k).reversed());
        EXPECT_EQ(f.upper, v.upper);
        EXPECT_EQ(f.lower, v.lower);
      }
    }
  }
}

TEST(Classify, BoundsAreConsistent) {
  for (int m = 3; m <= 10; ++m) {
    for (const auto& w : all_words(m)) {
      const auto v = classify(ReflexivityWord(w));
      if (v.upper == UpperBound::kL || v.upper == UpperBound::kNL) EXPECT_EQ(v.lower, LowerBound::kTrivial);
      if (v.lower == LowerBound::kPspaceHard) EXPECT_EQ(v.upper, UpperBound::kPspace);
    }
  }
}

TEST(Classify, MajorityRuleMatchesPolymorphismSearch) {
  for (int m = 3; m <= 4; ++m) {
    for (const auto& w : all_words(m)) {
      const auto v = classify(ReflexivityWord(w));
      const bool majority = find_majority_polymorphism(make_cycle(w)).has_value();
      if (v.rules.back() == "majority-small") EXPECT_TRUE(majority) << w;
      if (v.normal_form.str() == "0111") EXPECT_FALSE(majority);
    }
  }
}

TEST(Classify, Json) {
  const auto text = verdict_json(classify(ReflexivityWord("1110")));
  EXPECT_EQ(text,
            R"({"lower":"trivial","normal_form":"0111","rules":["prop-c0111"],"upper":"L","word":"1110"})");
}

TEST(ForbiddenPattern, Examples) {
  EXPECT_EQ(forbidden("exists y; forall x; edge(x,y)").kind, ForbiddenCase::kI);
  EXPECT_EQ(forbidden("forall x; edge(x,x)").kind, ForbiddenCase::kI);
  EXPECT_EQ(forbidden("forall x1 x2 x3; exists y; edge(x1,y)&edge(x2,y)&edge(x3,y)").kind, ForbiddenCase::kII);
  const auto iii = forbidden(
      "forall u1 u2; exists y1; forall u3 u4; exists y2; "
      "edge(u1,y1)&edge(u2,y1)&edge(y1,y2)&edge(u3,y2)&edge(u4,y2)");
  EXPECT_EQ(iii.kind, ForbiddenCase::kIII);
  EXPECT_EQ(iii.vertices.size(), 2u);
  const auto iv = forbidden(
      "forall u1; exists y1; forall u2 u3; exists y2 y3; "
      "edge(u1,y1)&edge(y1,y2)&edge(u2,y2)&edge(y2,y3)&edge(u2,y3)&edge(u3,y3)");
  EXPECT_EQ(iv.kind, ForbiddenCase::kIV);
  EXPECT_EQ(iv.vertices.size(), 3u);
  EXPECT_FALSE(find_forbidden_pattern(instance_graph(parse_sentence("forall x; exists y; edge(x,y)"))));
}

TEST(ForbiddenPattern, HandWitnessesAreFalse) {
  for (const char* text :
       {"exists y; forall x; edge(x,y)", "forall x1 x2 x3; exists y; edge(x1,y)&edge(x2,y)&edge(x3,y)",
        "forall u1 u2; exists y1; forall u3 u4; exists y2; "
        "edge(u1,y1)&edge(u2,y1)&edge(y1,y2)&edge(u3,y2)&edge(u4,y2)",
        "forall u1; exists y1; forall u2 u3; exists y2 y3; "
        "edge(u1,y1)&edge(y1,y2)&edge(u2,y2)&edge(y2,y3)&edge(u2,y3)&edge(u3,y3)"}) {
    const auto s = parse_sentence(text);
    EXPECT_FALSE(decide_c0111(s)) << text;
    EXPECT_FALSE(qcsp_eval_naive(s, c0111())) << text;
  }
}

TEST(ForbiddenPattern, TamperedWitnessFailsReplay) {
  const auto ig = instance_graph(parse_sentence("forall x1 x2 x3; exists y; edge(x1,y)&edge(x2,y)&edge(x3,y)"));
  auto w = *find_forbidden_pattern(ig);
  w.vertices[3] = w.vertices[2];
  EXPECT_FALSE(replay_forbidden(ig, w));
  w.kind = ForbiddenCase::kIII;
  EXPECT_FALSE(replay_forbidden(ig, w));
}

TEST(DecideC0111, Examples) {
  EXPECT_TRUE(decide_c0111(parse_sentence("forall x; exists y; edge(x,y)")));
  EXPECT_FALSE(decide_c0111(parse_sentence("forall x; exists y; eq(x,y) & edge(y,y)")));
  EXPECT_FALSE(decide_c0111(parse_sentence("exists y; forall x; eq(x,y)")));
  EXPECT_FALSE(decide_c0111(parse_sentence("exists y; forall x in {1,2,4}; edge(x,y)")));
}

TEST(DecideC0111, ExhaustiveSmallSentencesMatchSolver) {
  for_each_small_sentence(3, true, [](const PHSentence& s) {
    ASSERT_EQ(decide_c0111(s), qcsp_eval(s, c0111()).outcome) << serialize(s);
  });
  for_each_small_sentence(4, false, [](const PHSentence& s) {
    ASSERT_EQ(decide_c0111(s), qcsp_eval(s, c0111()).outcome) << serialize(s);
  });
}

TEST(DecideC0111, RandomSentencesMatchSolver) {
  RandomSentenceOptions opts;
  opts.max_variables = 8;
  opts.max_atoms = 10;
  int trues = 0;
  for (std::uint64_t i = 0; i < 10000; ++i) {
    const auto s = random_sentence(11000 + i, opts);
    const bool expected = qcsp_eval(s, c0111()).outcome;
    ASSERT_EQ(decide_c0111(s), expected) << serialize(s);
    trues += expected;
  }
  EXPECT_GT(trues, 500);
  EXPECT_LT(trues, 9500);
}

TEST(DecideC0111, DenseUniversalSentencesMatchSolver) {
  RandomSentenceOptions opts;
  opts.max_variables = 11;
  opts.max_atoms = 9;
  opts.equality_rate = 0.0;
  int patterns[4] = {0, 0, 0, 0};
  for (std::uint64_t i = 0; i < 20000; ++i) {
    const auto s = random_sentence(31000 + i, opts);
    const auto w = find_forbidden_pattern(instance_graph(s));
    ASSERT_EQ(!w.has_value(), qcsp_eval(s, c0111()).outcome) << serialize(s);
    if (w) ++patterns[static_cast<int>(w->kind)];
  }
  EXPECT_GT(patterns[2] + patterns[3], 0);
}

TEST(DecideC0111, SharedEndUniversalsAreNotForbidden) {
  // Both ends see the same two universals, so they cannot be forced apart.
  const auto s = parse_sentence(
      "forall x1; forall x2; exists x3; exists x4; "
      "edge(x1,x3) & edge(x1,x4) & edge(x2,x3) & edge(x2,x4) & edge(x3,x4)");
  EXPECT_FALSE(find_forbidden_pattern(instance_graph(s)).has_value());
  EXPECT_TRUE(qcsp_eval_naive(s, c0111()));
}
