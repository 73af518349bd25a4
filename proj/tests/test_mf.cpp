#include <gtest/gtest.h>

#include "support.hpp"
#include "rfx/error.hpp"
#include "rfx/mf.hpp"

using namespace rfx;
using rfx::testing::M;
using rfx::testing::P;

namespace {

QRingPtr plane() { return polynomial_ring(Field::rationals(), {"x", "y"}); }

struct Family {
  QRingPtr S, T;
  RingMap h, section;
};

// S = Q[b,c] -> S[x,y], section x -> b, y -> c
Family ex_family() {
  auto S = polynomial_ring(Field::rationals(), {"b", "c"});
  auto T = polynomial_ring(Field::rationals(), {"b", "c", "x", "y"});
  return {S, T, make_map(S, T, {"b", "c"}), make_map(T, S, {"b", "c", "b", "c"})};
}

// q(x) - q(s) with q = x1^2 + g x1 x2 + d x2^2, section x -> s
Family knudsen_family() {
  auto S = polynomial_ring(Field::rationals(), {"s1", "s2"});
  auto T = polynomial_ring(Field::rationals(), {"s1", "s2", "x1", "x2"});
  return {S, T, make_map(S, T, {"s1", "s2"}), make_map(T, S, {"s1", "s2", "s1", "s2"})};
}

std::string knudsen_F(const std::string& g, const std::string& d) {
  return "x1^2+(" + g + ")*x1*x2+(" + d + ")*x2^2-s1^2-(" + g + ")*s1*s2-(" + d + ")*s2^2";
}

}  // namespace

TEST(MakeMF, MonomialFactorization) {
  auto T = plane();
  auto mf = make_mf(T, M(T->ambient(), {{"x"}}), M(T->ambient(), {{"y"}}), P(T->ambient(), "x*y"));
  EXPECT_EQ(mf.Phi.rows(), 1u);
}

TEST(MakeMF, NodeIdeal) {
  auto T = plane();
  auto Phi = M(T->ambient(), {{"y", "y"}, {"-x", "0"}});
  auto Psi = M(T->ambient(), {{"0", "-y"}, {"x", "y"}});
  // the oracle: multiply out
  EXPECT_EQ(Phi * Psi, Matrix::identity(T->ambient(), 2).scaled(P(T->ambient(), "x*y")));
  EXPECT_NO_THROW(make_mf(T, Phi, Psi, P(T->ambient(), "x*y")));
}

TEST(MakeMF, RejectsWithEntry) {
  auto T = plane();
  try {
    make_mf(T, M(T->ambient(), {{"x"}}), M(T->ambient(), {{"x"}}), P(T->ambient(), "x*y"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("(1,1)"), std::string::npos) << e.what();
  }
  EXPECT_THROW(make_mf(T, M(T->ambient(), {{"x", "y"}}), M(T->ambient(), {{"y"}}), P(T->ambient(), "x*y")), Error);
}

TEST(PlaneCurve, FamilyXYMinusBC) {
  auto f = ex_family();
  auto p = plane_curve_mf(P(f.T->ambient(), "x*y-b*c"), f.h, f.section);
  const auto& a = f.T->ambient();
  EXPECT_EQ(p.data.X1, P(a, "x-b"));
  EXPECT_EQ(p.data.X2, P(a, "y-c"));
  EXPECT_EQ(p.data.X1 * p.data.G1 + p.data.X2 * p.data.G2, P(a, "x*y-b*c"));
  EXPECT_EQ(p.data.G1, P(a, "y"));
  EXPECT_EQ(p.data.G2, P(a, "b"));
  auto c = cokernel_is_section_ideal(p);
  EXPECT_TRUE(c.holds()) << c.to_string();
}

TEST(PlaneCurve, KnudsenQuadraticForm) {
  auto f = knudsen_family();
  for (auto [g, d] : std::vector<std::pair<std::string, std::string>>{{"0", "-1"}, {"3", "2"}, {"1/2", "-5"}}) {
    auto p = plane_curve_mf(P(f.T->ambient(), knudsen_F(g, d)), f.h, f.section);
    const auto& a = f.T->ambient();
    EXPECT_EQ(p.data.X1 * p.data.G1 + p.data.X2 * p.data.G2, p.data.F);
    EXPECT_EQ(p.data.G1, P(a, "x1+(" + g + ")*x2+s1")) << g << " " << d;
    EXPECT_EQ(p.data.G2, P(a, "(" + d + ")*(x2+s2)+(" + g + ")*s1")) << g << " " << d;
  }
}

TEST(PlaneCurve, TrivialBase) {
  auto S = polynomial_ring(Field::rationals(), {});
  auto T = plane();
  auto p = plane_curve_mf(P(T->ambient(), "x*y"), RingMap(S, T, {}), make_map(T, S, {"0", "0"}));
  EXPECT_EQ(p.data.G1, P(T->ambient(), "y"));
  EXPECT_TRUE(p.data.G2.is_zero());
}

TEST(PlaneCurve, SectionOffTheCurve) {
  auto f = ex_family();
  RingMap bad = make_map(f.T, f.S, {"b", "c", "b", "0"});
  EXPECT_THROW(plane_curve_mf(P(f.T->ambient(), "x*y-b*c"), f.h, bad), Error);
}

TEST(PlaneCurve, SpecializationCommutes) {
  auto f = ex_family();
  auto p = plane_curve_mf(P(f.T->ambient(), "x*y-b*c"), f.h, f.section);
  for (auto pt : std::vector<std::vector<Scalar>>{{0, 0}, {1, 1}, {2, -3}}) {
    PlaneCurveData s = specialize(p.data, pt);
    auto q = plane_curve_mf(s.F, s.h, s.section);
    EXPECT_EQ(q.data.X1, s.X1);
    EXPECT_EQ(q.data.X2, s.X2);
    EXPECT_EQ(q.data.G1, s.G1);
    EXPECT_EQ(q.data.G2, s.G2);
  }
}

TEST(TwoPeriodic, NodeComplex) {
  auto T = plane();
  auto mf = make_mf(T, M(T->ambient(), {{"y", "y"}, {"-x", "0"}}), M(T->ambient(), {{"0", "-y"}, {"x", "y"}}),
                    P(T->ambient(), "x*y"));
  auto pc = two_periodic(mf, -3, 4);
  EXPECT_TRUE(pc.certificate.holds()) << pc.certificate.to_string();
  EXPECT_TRUE(pc.complex.is_graded());
}

TEST(TwoPeriodic, KnudsenFamilyAcyclicAndSelfDual) {
  auto f = knudsen_family();
  auto p = plane_curve_mf(P(f.T->ambient(), knudsen_F("0", "-1")), f.h, f.section);
  auto pc = two_periodic(p.mf, -3, 4, &f.h, {{0, 0}, {1, 0}});
  EXPECT_TRUE(pc.certificate.holds()) << pc.certificate.to_string();
  FreeComplex dual = dual_complex(pc.complex);
  MatrixFactorization t{p.mf.ambient, p.mf.F, p.mf.Phi.transpose(), p.mf.Psi.transpose()};
  auto pt = two_periodic(t, -3, 4);
  EXPECT_EQ(dual.lo(), pt.complex.lo());
  for (int i = -3; i < 4; ++i) EXPECT_EQ(dual.differential(i), pt.complex.differential(i)) << i;
}

TEST(TwoPeriodic, ZeroDivisorIsReported) {
  auto T = make_quotient(make_ring(Field::rationals(), {"x", "y"}), std::vector<std::string>{"x*y"});
  auto mf = make_mf(T, M(T->ambient(), {{"x"}}), M(T->ambient(), {{"x"}}), P(T->ambient(), "x^2"));
  auto pc = two_periodic(mf, 0, 3);
  EXPECT_EQ(pc.certificate.verdict, Verdict::Fails);
}

TEST(MFProperty, DeterminantIdentity) {
  std::mt19937 rng(11);
  auto f = ex_family();
  for (int seed = 0; seed < 100; ++seed) {
    // random curve through the section: F = X1*A + X2*B
    const auto& a = f.T->ambient();
    Polynomial A = rfx::testing::random_poly(a, rng, 3, 2), B = rfx::testing::random_poly(a, rng, 3, 2);
    Polynomial F = P(a, "x-b") * A + P(a, "y-c") * B;
    if (fibre_ring(f.h, {0, 0}).specialize.apply(F).is_zero()) continue;
    auto p = plane_curve_mf(F, f.h, f.section);
    EXPECT_EQ(determinant(p.mf.Phi) * determinant(p.mf.Psi), F.pow(2)) << "seed " << seed;
  }
}
