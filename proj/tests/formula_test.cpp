#include <gtest/gtest.h>

#include "qcsp/errors.hpp"
#include "qcsp/formula.hpp"
#include "qcsp/random_sentence.hpp"
#include "qcsp/solver.hpp"

using namespace qcsp;

namespace {

std::vector<std::string> names(int m) {
  std::vector<std::string> out;
  for (int i = 1; i <= m; ++i) out.push_back("v" + std::to_string(i));
  return out;
}

}  // namespace

TEST(Parse, Examples) {
  const auto a = parse_sentence("forall x; exists y; edge(x,y)");
  EXPECT_EQ(a.blocks.size(), 2u);
  EXPECT_EQ(a.matrix.size(), 1u);
  EXPECT_EQ(a.blocks[0].quantifier, Quantifier::kForall);

  const auto b = parse_sentence("exists x y; edge(x,y) & eq(x,y)");
  EXPECT_EQ(b.blocks.size(), 1u);
  EXPECT_EQ(b.matrix.size(), 2u);
  EXPECT_EQ(b.matrix[1].kind, AtomKind::kEqual);

  try {
    parse_sentence("exists x; edge(x,z)");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1);
    EXPECT_EQ(e.column(), 18);
    EXPECT_NE(std::string(e.what()).find("z"), std::string::npos);
  }
}

TEST(Parse, RangesCommentsAndErrors) {
  const auto s = parse_sentence("# relativised\nforall x in {4, 1,2};\n exists y in {3}; edge(x , y)");
  ASSERT_TRUE(s.blocks[0].range);
  EXPECT_EQ(*s.blocks[0].range, (std::vector<int>{1, 2, 4}));
  EXPECT_EQ(parse_sentence("exists x; true").matrix.size(), 0u);
  EXPECT_THROW(parse_sentence("exists x; exists x; edge(x,x)"), ParseError);
  EXPECT_THROW(parse_sentence("exists x x; edge(x,x)"), ParseError);
  EXPECT_THROW(parse_sentence("edge(x,y)"), ParseError);
  EXPECT_THROW(parse_sentence("exists x; edge(x,x) &"), ParseError);
  EXPECT_THROW(parse_sentence("exists x; edge(x,x) junk"), ParseError);
  EXPECT_THROW(parse_sentence("exists x in {}; true"), ParseError);
  EXPECT_THROW(parse_sentence("exists x in {1,1}; true"), ParseError);
  EXPECT_THROW(parse_sentence("exists edge; true"), ParseError);
  EXPECT_THROW(parse_sentence("exists x; loop(x)"), ParseError);
  try {
    parse_sentence("exists x;\n  edge(x,\n   w)");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_EQ(e.column(), 4);
  }
}

TEST(Serialize, RoundTripExamples) {
  for (const char* text : {"forall x; exists y; edge(x,y)", "exists x y; edge(x,y) & eq(x,y)",
                           "forall x in {1,2,4}; exists y in {2,3}; edge(x,y) & edge(y,y)"}) {
    const auto s = parse_sentence(text);
    EXPECT_EQ(parse_sentence(serialize(s)), s) << text;
    EXPECT_EQ(serialize(s), text);
  }
}

TEST(Serialize, RoundTripRandom) {
  RandomSentenceOptions opts;
  opts.range_rate = 0.3;
  opts.equality_rate = 0.2;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const auto s = random_sentence(1000 + i, opts);
    EXPECT_EQ(parse_sentence(serialize(s)), s) << serialize(s);
    EXPECT_EQ(formula_from_json(formula_json(s)), s);
  }
}

TEST(EliminateEqualities, Examples) {
  const auto a = eliminate_equalities(parse_sentence("exists x y; eq(x,y) & edge(x,y)"));
  ASSERT_TRUE(a.sentence);
  EXPECT_EQ(*a.sentence, parse_sentence("exists x; edge(x,x)"));

  const auto b = eliminate_equalities(parse_sentence("forall x; forall y; eq(x,y)"));
  EXPECT_TRUE(b.degenerate);
  EXPECT_FALSE(b.sentence);

  const auto c = eliminate_equalities(parse_sentence("forall x; exists y; eq(x,y) & edge(y,y)"));
  ASSERT_TRUE(c.sentence);
  EXPECT_EQ(*c.sentence, parse_sentence("forall x; edge(x,x)"));

  // A universal equated with an earlier existential cannot be matched.
  EXPECT_TRUE(eliminate_equalities(parse_sentence("exists y; forall x; eq(x,y)")).degenerate);
  // A universal whose range escapes the existential's range.
  EXPECT_TRUE(eliminate_equalities(parse_sentence("forall x; exists y in {1,2}; eq(x,y)")).degenerate);
  EXPECT_FALSE(
      eliminate_equalities(parse_sentence("forall x in {2}; exists y in {1,2}; eq(x,y)")).degenerate);
  // A universal over a single value is a constant, not a degenerate pattern.
  const auto d = eliminate_equalities(parse_sentence("exists y; forall x in {2}; eq(x,y) & edge(y,y)"));
  ASSERT_TRUE(d.sentence);
  EXPECT_EQ(*d.sentence, parse_sentence("exists y in {2}; edge(y,y)"));
}

TEST(EliminateEqualities, PreservesTruthOnTemplatesWithTwoOrMoreVertices) {
  // Ranges are drawn from {1,2}; a universal without a range then escapes
  // them only on templates with a third vertex, so ranged sentences are
  // checked on those.
  const std::vector<Graph> small{make_clique(2), make_path("10")};
  const std::vector<Graph> large{make_cycle("0111"), make_cycle("000"), make_path("101"),
                                 make_cycle("1111")};
  int degenerate = 0;
  for (double range_rate : {0.0, 0.15}) {
    RandomSentenceOptions opts;
    opts.max_variables = 6;
    opts.max_atoms = 7;
    opts.equality_rate = 0.35;
    opts.range_rate = range_rate;
    opts.template_size = 2;
    for (std::uint64_t i = 0; i < 1000; ++i) {
      const auto s = random_sentence(50000 + i, opts);
      const auto r = eliminate_equalities(s);
      EXPECT_EQ(r.sentence.has_value(), !r.degenerate);
      if (r.sentence) EXPECT_FALSE(r.sentence->has_equalities());
      if (r.degenerate) ++degenerate;
      std::vector<Graph> templates = large;
      if (range_rate == 0.0) templates.insert(templates.end(), small.begin(), small.end());
      for (const auto& t : templates) {
        const bool expected = qcsp_eval_naive(s, t);
        if (r.degenerate) {
          EXPECT_FALSE(expected) << serialize(s);
        } else {
          EXPECT_EQ(qcsp_eval_naive(*r.sentence, t), expected) << serialize(s);
        }
      }
    }
  }
  EXPECT_GT(degenerate, 0);
}

TEST(InstanceGraph, Examples) {
  const auto a = instance_graph(parse_sentence("forall x; exists y; edge(x,y)"));
  EXPECT_EQ(a.graph.size(), 2);
  EXPECT_EQ(a.graph.edge_count(), 1u);
  EXPECT_EQ(a.quantifier[0], Quantifier::kForall);
  EXPECT_EQ(a.quantifier[1], Quantifier::kExists);
  EXPECT_LT(a.position[0], a.position[1]);

  const auto b = instance_graph(parse_sentence("exists x; edge(x,x)"));
  EXPECT_TRUE(b.graph.has_loop(1));

  const auto star = instance_graph(
      parse_sentence("forall x1 x2 x3; exists y; edge(x1,y) & edge(x2,y) & edge(x3,y)"));
  const int y = star.vertex("y");
  EXPECT_EQ(star.graph.neighbours(y).size(), 3u);
  for (const char* leaf : {"x1", "x2", "x3"}) {
    EXPECT_EQ(star.quantifier[static_cast<std::size_t>(star.vertex(leaf) - 1)], Quantifier::kForall);
    EXPECT_EQ(star.graph.neighbours(star.vertex(leaf)).size(), 1u);
  }
  EXPECT_THROW(instance_graph(parse_sentence("exists x y; eq(x,y)")), std::invalid_argument);
}

TEST(Chain, Examples) {
  const std::vector<std::string> fwd{"v1", "v2", "v3"};
  EXPECT_EQ(chain(fwd), (std::vector<Atom>{edge("v1", "v2"), edge("v2", "v3")}));
  const std::vector<std::string> back{"v3", "v2", "v1"};
  EXPECT_EQ(chain(back), (std::vector<Atom>{edge("v3", "v2"), edge("v2", "v1")}));
  const std::vector<std::string> two{"a", "b"};
  EXPECT_EQ(chain(two), (std::vector<Atom>{edge("a", "b")}));
  const std::vector<std::string> one{"a"};
  EXPECT_THROW(chain(one), std::invalid_argument);
}

TEST(CycleChain, Examples) {
  EXPECT_EQ(cycle_chain(4, 1, 5), (std::vector<int>{4, 5, 1}));
  EXPECT_EQ(cycle_chain(1, 3, 5), (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(cycle_chain(1, 3, 4), (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(cycle_chain(3, 1, 4), (std::vector<int>{3, 4, 1}));
  EXPECT_EQ(cycle_chain(2, 2, 5), (std::vector<int>{2}));
  // Forced first step takes the long way round.
  EXPECT_EQ(cycle_chain(1, 3, 6, 6), (std::vector<int>{1, 6, 5, 4, 3}));
  EXPECT_THROW(cycle_chain(1, 3, 6, 3), std::invalid_argument);
  EXPECT_THROW(cycle_chain(0, 3, 6), std::invalid_argument);
  const auto v = names(5);
  EXPECT_EQ(cycle_chain_atoms(4, 1, v), (std::vector<Atom>{edge("v4", "v5"), edge("v5", "v1")}));
}

TEST(RefAtoms, Examples) {
  const auto v = names(5);
  EXPECT_EQ(ref_atoms(2, 4, v), (std::vector<Atom>{edge("v2", "v2"), edge("v3", "v3"), edge("v4", "v4")}));
  EXPECT_EQ(ref_atoms(1, 1, v), (std::vector<Atom>{edge("v1", "v1")}));
  EXPECT_EQ(ref_atoms(5, 2, v), (std::vector<Atom>{edge("v5", "v5"), edge("v1", "v1"), edge("v2", "v2")}));
}

TEST(Macros, CountingExistsShape) {
  const Formula body{{}, {edge("x", "a")}};
  const auto one = counting_exists(1, "x", body);
  ASSERT_EQ(one.blocks.size(), 1u);
  EXPECT_EQ(one.blocks[0].quantifier, Quantifier::kExists);

  const auto two = counting_exists(2, "x", body);
  EXPECT_EQ(serialize(two), "forall x'; exists x; edge(x,a) & edge(x',x)");

  const auto three = counting_exists(3, "x", body);
  EXPECT_EQ(serialize(three), "forall x'' x'; exists x; edge(x,a) & edge(x',x) & edge(x'',x)");
  EXPECT_THROW(counting_exists(4, "x", body), std::invalid_argument);
}

TEST(Macros, DiamondShape) {
  const Formula body{{}, {edge("x", "a")}};
  EXPECT_EQ(serialize(diamond("x", body, 6)), "forall x'; exists x_1; exists x; edge(x,a) & edge(x',x_1) & edge(x_1,x)");
  EXPECT_EQ(serialize(diamond("x", body, 5)), "forall x'; exists x; edge(x,a) & edge(x',x)");
  EXPECT_EQ(diamond_intermediates(7), 1);
  EXPECT_EQ(diamond_intermediates(8), 2);
  EXPECT_THROW(diamond("x", body, 4), std::invalid_argument);
}

TEST(Macros, HeartShape) {
  const Formula body{{}, {edge("u", "w")}};
  const auto h = heart("u", body);
  EXPECT_EQ(serialize(h), "forall u'; exists u; edge(u,w) & edge(u',u)");
  EXPECT_EQ(h.variable_count(), body.variable_count() + 2);
  // Nested hearts pick distinct primes; u' is taken, so the second uses u''.
  const auto hh = heart("v", Formula{{}, {edge("v", "u'")}});
  EXPECT_EQ(hh.blocks[0].variables[0], "v'");
  const auto h2 = heart("u", quantify(Quantifier::kExists, {"u'"}, Formula{{}, {edge("u", "u'")}}));
  EXPECT_EQ(h2.blocks[0].variables[0], "u''");
}
