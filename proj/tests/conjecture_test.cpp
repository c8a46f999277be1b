#include <gtest/gtest.h>

#include "qcsp/errors.hpp"
#include "qcsp/reductions.hpp"

using namespace qcsp;

TEST(Conjecture, HoldsAtFour) {
  const auto r = check_conjecture_gen(4, false, 2);
  EXPECT_GT(r.maps, 0U);
  EXPECT_EQ(r.cases, r.maps * 16);
  for (const auto& c : r.counterexamples) EXPECT_TRUE(replays(4, c));
  EXPECT_EQ(r.holds, r.counterexamples.empty());
  EXPECT_TRUE(r.holds);
}

TEST(Conjecture, SurjectiveMapsExcluded) {
  // The identity on the labelled copy is surjective, so it never appears as a case.
  EXPECT_FALSE(replays(4, ConjectureCase{{1, 2, 3, 4}, 1, 3}));
}

TEST(Conjecture, ReplayRejectsExtendableCase) {
  EXPECT_FALSE(replays(4, ConjectureCase{{1, 1, 1, 1}, 1, 1}));
}

TEST(Conjecture, Guard) {
  EXPECT_THROW(check_conjecture_gen(6), GuardError);
  EXPECT_THROW(check_conjecture_gen(3), std::invalid_argument);
}
