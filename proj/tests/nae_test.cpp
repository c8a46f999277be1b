#include <gtest/gtest.h>

#include <cstdint>

#include "qcsp/errors.hpp"
#include "qcsp/nae.hpp"

using namespace qcsp;

namespace {

// Bottom-up oracle: the truth table over all assignments, folded one
// quantifier at a time from the innermost variable.
bool fold_oracle(const NAEInstance& inst) {
  const std::size_t n = inst.prefix.size();
  std::vector<bool> table(std::size_t{1} << n);
  for (std::uint64_t a = 0; a < table.size(); ++a) {
    bool ok = true;
    for (const auto& c : inst.clauses) {
      const auto bit = [&](const std::string& v) { return (a >> inst.position(v)) & 1U; };
      if (bit(c[0]) == bit(c[1]) && bit(c[1]) == bit(c[2])) ok = false;
    }
    table[a] = ok;
  }
  for (std::size_t i = n; i-- > 0;) {
    std::vector<bool> next(std::size_t{1} << i);
    for (std::uint64_t a = 0; a < next.size(); ++a) {
      const bool lo = table[a], hi = table[a | (std::uint64_t{1} << i)];
      next[a] = inst.prefix[i].first == Quantifier::kForall ? (lo && hi) : (lo || hi);
    }
    table = std::move(next);
  }
  return table[0];
}

}  // namespace

TEST(Nae, HandInstances) {
  EXPECT_TRUE(nae_solve(parse_nae("var x exists\nvar y exists\nvar z exists\nclause x y z\n")));
  EXPECT_FALSE(nae_solve(parse_nae("var x exists\nclause x x x\n")));
  EXPECT_TRUE(nae_solve(parse_nae("var x forall\nvar y forall\nvar z exists\nclause x y z\n")));
  EXPECT_TRUE(nae_solve(parse_nae("var x forall\nvar z exists\nclause x x z\n")));
  EXPECT_FALSE(nae_solve(parse_nae("var z exists\nvar x forall\nclause x x z\n")));
}

TEST(Nae, MatchesFoldOracle) {
  int yes = 0;
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    const auto inst = random_nae(seed, 2 + static_cast<int>(seed % 7), 1 + static_cast<int>(seed % 9));
    const bool v = nae_solve(inst);
    ASSERT_EQ(v, fold_oracle(inst)) << format_nae(inst);
    yes += v;
  }
  EXPECT_GT(yes, 200);
  EXPECT_LT(yes, 1800);
}

TEST(Nae, RoundTrip) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto inst = random_nae(seed, 5, 6);
    const auto back = parse_nae(format_nae(inst));
    EXPECT_EQ(back.prefix, inst.prefix);
    EXPECT_EQ(back.clauses, inst.clauses);
  }
}

TEST(Nae, RandomHasNoUniversalClause) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto inst = random_nae(seed, 4, 8, 0.8);
    EXPECT_FALSE(has_universal_clause(inst));
  }
}

TEST(Nae, ParseErrors) {
  EXPECT_THROW(parse_nae("var x sometimes\n"), ParseError);
  EXPECT_THROW(parse_nae("clause x y z\n"), ParseError);
  EXPECT_THROW(parse_nae("var x exists\nclause x x x\nvar y exists\n"), ParseError);
  EXPECT_THROW(parse_nae("var x exists\nvar x forall\n"), ParseError);
  EXPECT_THROW(parse_nae("frobnicate\n"), ParseError);
}

TEST(Nae, Guard) {
  EXPECT_THROW(nae_solve(random_nae(1, static_cast<int>(kNaeVariableLimit) + 1, 3)), GuardError);
}
