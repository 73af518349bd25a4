#include <gtest/gtest.h>

#include "properties.hpp"

using namespace rfx::testing::props;

namespace {

class Seeded : public ::testing::TestWithParam<unsigned> {};

void expect(const CaseResult& r) { EXPECT_TRUE(r.ok) << r.detail; }

}  // namespace

TEST_P(Seeded, Groebner) { expect(groebner_case(GetParam())); }
TEST_P(Seeded, ComplexesSquareToZeroAndDualTwice) { expect(complex_case(GetParam())); }
TEST_P(Seeded, KernelAndCokernelOfSigmaMatchExt) { expect(canonical_iso_case(GetParam())); }
TEST_P(Seeded, TwoOutOfThree) { expect(two_of_three_case(GetParam())); }
TEST_P(Seeded, TransposeSequence) { expect(transpose_sequence_case(GetParam())); }

INSTANTIATE_TEST_SUITE_P(Cases, Seeded, ::testing::Range(0u, 100u));

// Guard against vacuous suites: enough cases meet the hypotheses, some extensions are not
// split and σ_M is often not an isomorphism.
TEST(Coverage, ExtensionSuitesAreExercised) {
  int two = 0, seq = 0, nonsplit = 0, sigma = 0;
  for (unsigned s = 0; s < 100; ++s) {
    bool ns = false;
    bool ex = two_of_three_case(s, &ns).exercised;
    two += ex;
    nonsplit += ex && ns;
    seq += transpose_sequence_case(s).exercised;
    sigma += canonical_iso_case(s).exercised;
  }
  EXPECT_GE(two, 30);
  EXPECT_GE(seq, 30);
  EXPECT_GE(nonsplit, 20);
  EXPECT_GE(sigma, 20);
  std::printf("two-out-of-three exercised %d, transpose sequence exercised %d, exercised and nonsplit %d, sigma not iso %d\n", two, seq, nonsplit, sigma);
}
