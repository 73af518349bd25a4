#include <gtest/gtest.h>

#include "rfx/error.hpp"
#include "support.hpp"

using namespace rfx;
using rfx::testing::P;

namespace {

RingPtr qxy() { return make_ring(Field::rationals(), {"x", "y"}); }

}  // namespace

TEST(PolyArith, Cancellation) {
  auto r = qxy();
  EXPECT_EQ(P(r, "x+y") + P(r, "x-y"), P(r, "2*x"));
  EXPECT_EQ((P(r, "x+y") + P(r, "x-y")).to_string(), "2*x");
}

TEST(PolyArith, DifferenceOfSquares) {
  auto r = qxy();
  EXPECT_EQ(poly_arith(P(r, "x+y"), P(r, "x-y"), '*').to_string(), "x^2 - y^2");
}

TEST(PolyArith, FrobeniusInCharacteristicTwo) {
  auto r = make_ring(Field::prime(2), {"x", "y"});
  EXPECT_EQ(P(r, "(x+y)^2").to_string(), "x^2 + y^2");
}

TEST(PolyArith, RingMismatchThrows) {
  auto a = qxy();
  auto b = make_ring(Field::rationals(), {"u", "v"});
  EXPECT_THROW(P(a, "x") + P(b, "u"), Error);
}

TEST(PolyArith, PrimeFieldResidues) {
  auto r = make_ring(Field::prime(5), {"x"});
  EXPECT_EQ(P(r, "-x").to_string(), "4*x");
  EXPECT_EQ(P(r, "1/2*x").to_string(), "3*x");
  EXPECT_THROW(P(r, "1/5*x"), Error);
  EXPECT_THROW(Field::prime(6), Error);
}

TEST(Differentiate, Examples) {
  auto r = qxy();
  EXPECT_EQ(differentiate(P(r, "x^2-y^3"), "x"), P(r, "2*x"));
  EXPECT_EQ(differentiate(P(r, "x^2-y^3"), "y"), P(r, "-3*y^2"));
  EXPECT_TRUE(differentiate(P(r, "7"), "x").is_zero());
  EXPECT_THROW(differentiate(P(r, "x"), "z"), Error);
}

TEST(CompareMonomials, Examples) {
  Exponents x2{2, 0}, xy{1, 1}, y3{0, 3}, x{1, 0};
  EXPECT_EQ(compare_monomials(x2, xy, MonomialOrder::degrevlex()), std::strong_ordering::greater);
  EXPECT_EQ(compare_monomials(y3, x, MonomialOrder::lex()), std::strong_ordering::less);
  EXPECT_EQ(compare_monomials(xy, xy, MonomialOrder::lex()), std::strong_ordering::equal);
  Exponents three{1, 2, 3};
  EXPECT_THROW(compare_monomials(x2, three, MonomialOrder::lex()), Error);
}

TEST(CompareMonomials, DegRevLexTieBreak) {
  // x*z < y^2 in degrevlex with x > y > z
  Exponents xz{1, 0, 1}, y2{0, 2, 0};
  EXPECT_EQ(compare_monomials(xz, y2, MonomialOrder::degrevlex()), std::strong_ordering::less);
  EXPECT_EQ(compare_monomials(xz, y2, MonomialOrder::lex()), std::strong_ordering::greater);
}

TEST(CompareMonomials, BlockOrderEliminatesFirstBlock) {
  auto ord = MonomialOrder::block({{MonomialOrder::Kind::DegRevLex, 1},
                                   {MonomialOrder::Kind::DegRevLex, 2}});
  Exponents t{1, 0, 0}, big{0, 5, 5};
  EXPECT_EQ(compare_monomials(t, big, ord), std::strong_ordering::greater);
}

TEST(Printer, RoundTrip) {
  auto r = qxy();
  for (std::string s : {"2*x^2*y - 1/3*y^3", "-x + 1", "0", "x*y^2 - 5/7", "-3/2"}) {
    EXPECT_EQ(P(r, s).to_string(), s);
  }
  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) {
    Polynomial f = rfx::testing::random_poly(r, rng, 5, 4, 9).scaled(Scalar(1, 1 + i % 5));
    EXPECT_EQ(P(r, f.to_string()), f);
  }
}

TEST(Parser, ReportsPosition) {
  auto r = qxy();
  try {
    P(r, "x + * y");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("column 5"), std::string::npos);
  }
  EXPECT_THROW(P(r, "x + z"), Error);
  EXPECT_EQ(P(r, "(x - y)*(x + y)/2"), P(r, "1/2*x^2 - 1/2*y^2"));
}

// Ring axioms over GF(5), two variables, degree <= 3.
TEST(PolyProperties, RingAxioms) {
  auto r = make_ring(Field::prime(5), {"x", "y"});
  std::mt19937 rng(1);
  for (int i = 0; i < 300; ++i) {
    auto a = rfx::testing::random_poly(r, rng, 4, 3);
    auto b = rfx::testing::random_poly(r, rng, 4, 3);
    auto c = rfx::testing::random_poly(r, rng, 4, 3);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ(a + b, b + a);
    EXPECT_TRUE((a - a).is_zero());
  }
}

TEST(PolyProperties, Leibniz) {
  auto r = make_ring(Field::rationals(), {"x", "y", "z"});
  std::mt19937 rng(2);
  for (int i = 0; i < 200; ++i) {
    auto f = rfx::testing::random_poly(r, rng, 4, 3);
    auto g = rfx::testing::random_poly(r, rng, 4, 3);
    for (const char* v : {"x", "y", "z"})
      EXPECT_EQ(differentiate(f * g, v), f * differentiate(g, v) + g * differentiate(f, v));
  }
}

TEST(PolyProperties, OrdersAreMultiplicative) {
  std::vector<Exponents> monos;
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; a + b <= 3; ++b)
      for (int c = 0; a + b + c <= 3; ++c) monos.push_back({a, b, c});
  auto blk = MonomialOrder::block({{MonomialOrder::Kind::Lex, 1}, {MonomialOrder::Kind::DegRevLex, 2}});
  for (const auto& ord : {MonomialOrder::degrevlex(), MonomialOrder::lex(), blk})
    for (const auto& m1 : monos)
      for (const auto& m2 : monos) {
        auto c = ord.compare(m1, m2);
        EXPECT_EQ(ord.compare(m2, m1), 0 <=> c);
        for (const auto& m : monos) EXPECT_EQ(ord.compare(mul(m, m1), mul(m, m2)), c);
      }
}
