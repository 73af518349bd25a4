#include <gtest/gtest.h>

#include "rfx/error.hpp"
#include "rfx/stab.hpp"
#include "support.hpp"

using namespace rfx;
using rfx::testing::P;

namespace {

QRingPtr quotient(std::vector<std::string> vars, std::vector<std::string> rel) {
  return make_quotient(make_ring(Field::rationals(), std::move(vars)), rel);
}

// The ground field as a base, with the section sending every variable to 0.
struct Trivial {
  QRingPtr S;
  RingMap h, section;
};
Trivial trivial(const QRingPtr& A) {
  QRingPtr S = polynomial_ring(Field::rationals(), {});
  std::vector<Polynomial> zeros(A->nvars(), Polynomial(S->ambient()));
  return {S, RingMap(S, A, {}), RingMap(A, S, zeros)};
}

QRingPtr xy_bc_family() { return quotient({"b", "c", "x", "y"}, {"x*y-b*c"}); }

GroebnerBasis ideal_of(const RingPtr& r, const std::vector<std::string>& gens) {
  std::vector<Polynomial> ps;
  for (const auto& g : gens) ps.push_back(parse_polynomial(r, g));
  return ideal_basis(r, ps);
}

}  // namespace

TEST(SocleEpsilon, NodeWithSumOfVariables) {
  auto A = quotient({"x", "y"}, {"x*y"});
  auto e = socle_epsilon(A, A->parse("x+y"));
  EXPECT_TRUE(e.certificate.holds()) << e.certificate.to_string();
  EXPECT_EQ(e.f, A->parse("x"));
  ASSERT_EQ(e.values.size(), 2u);
  EXPECT_EQ(e.values[0], A->parse("x"));
  EXPECT_TRUE(e.values[1].is_zero());
  // (x+y)·ε(v) = f·v
  for (std::size_t i = 0; i < 2; ++i)
    EXPECT_TRUE(A->is_zero(A->parse("x+y") * e.values[i] - e.f * A->var(i == 0 ? "x" : "y")));
}

TEST(SocleEpsilon, RegularLine) {
  auto A = polynomial_ring(Field::rationals(), {"x"});
  auto e = socle_epsilon(A, A->var("x"));
  EXPECT_TRUE(e.certificate.holds()) << e.certificate.to_string();
  EXPECT_EQ(e.f, A->one());
  ASSERT_EQ(e.values.size(), 1u);
  EXPECT_EQ(e.values[0], A->one());
}

TEST(SocleEpsilon, Cusp) {
  auto A = quotient({"x", "y"}, {"y^2-x^3"});
  auto e = socle_epsilon(A, A->var("x"));
  EXPECT_TRUE(e.certificate.holds()) << e.certificate.to_string();
  EXPECT_EQ(e.f, A->var("y"));
  EXPECT_EQ(e.values[0], A->var("y"));
  EXPECT_EQ(e.values[1], A->parse("x^2"));
  // y^2 = x^3, so (y/x)·y = x^2
  EXPECT_TRUE(A->is_zero(A->var("x") * A->parse("x^2") - A->var("y") * A->var("y")));
}

TEST(SocleEpsilon, RejectsZeroDivisorAndNonGorenstein) {
  auto node = quotient({"x", "y"}, {"x*y"});
  EXPECT_THROW(socle_epsilon(node, node->var("x")), Error);
  auto axes = quotient({"x", "y", "z"}, {"x*y", "x*z", "y*z"});
  try {
    socle_epsilon(axes, axes->parse("x+y+z"));
    FAIL() << "three coordinate axes accepted";
  } catch (const Error& err) {
    EXPECT_NE(std::string(err.what()).find("length 2"), std::string::npos) << err.what();
  }
}

TEST(Knudsen, XYMinusBCFamily) {
  auto R = xy_bc_family();
  auto S = polynomial_ring(Field::rationals(), {"b", "c"});
  RingMap h = make_map(S, R, {"b", "c"});
  RingMap sec = make_map(R, S, {"b", "c", "b", "c"});
  auto k = knudsen_invariants(h, sec, {{Scalar(0), Scalar(0)}, {Scalar(1), Scalar(1)}}, 4);
  EXPECT_TRUE(k.certificate.holds()) << k.certificate.to_string();

  // I·I* = (x, y, b, c)
  EXPECT_EQ(k.pairing, ideal_in(*R, {R->var("x"), R->var("y"), R->var("b"), R->var("c")}));
  // Second route: I and the multiplication by (x-c)/(x+y-b-c), with values x and -c.
  IdealModule I = ideal_module(R, k.ideal);
  EXPECT_TRUE(is_well_defined(I.module, FPModule::free(R, 1), Matrix::row_vector(R->ambient(), {R->var("x"), R->parse("-c")})));
  std::vector<Polynomial> by_hand = k.ideal;
  by_hand.push_back(R->var("x"));
  by_hand.push_back(R->parse("-c"));
  EXPECT_EQ(ideal_in(*R, by_hand), k.pairing);

  const RingPtr& s = S->ambient();
  ASSERT_EQ(k.section_fitting.size(), 3u);
  EXPECT_EQ(k.section_fitting[0].size(), 0u);
  EXPECT_EQ(k.section_fitting[1], ideal_of(s, {"b", "c"}));
  EXPECT_TRUE(k.section_fitting[2].is_unit_ideal());
  // S ⊕ S/(b,c) presented by [0; b c] has the same Fitting ideals.
  FPModule oracle(S, Matrix::parse(s, {{"0", "0"}, {"b", "c"}}));
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(fitting_ideal(oracle, i), k.section_fitting[i]) << i;

  EXPECT_EQ(k.quotient_fitting[0].size(), 0u);
  EXPECT_TRUE(k.quotient_fitting[1].is_unit_ideal());
  EXPECT_FALSE(k.closed_regular);
  EXPECT_EQ(k.closed_dual_dimension, 2u);
}

TEST(Knudsen, NodeOverField) {
  auto A = quotient({"x", "y"}, {"x*y"});
  auto t = trivial(A);
  auto k = knudsen_invariants(t.h, t.section);
  EXPECT_TRUE(k.certificate.holds()) << k.certificate.to_string();
  EXPECT_EQ(k.closed_pairing, ideal_of(A->ambient(), {"x", "y", "x*y"}));
  EXPECT_EQ(k.closed_dual_dimension, 2u);
  // m*/A ≅ k: free of rank 1 over the field.
  EXPECT_EQ(k.quotient_fitting[0].size(), 0u);
  EXPECT_TRUE(k.quotient_fitting[1].is_unit_ideal());
}

TEST(Knudsen, RegularLine) {
  auto A = polynomial_ring(Field::rationals(), {"x"});
  auto t = trivial(A);
  auto k = knudsen_invariants(t.h, t.section);
  EXPECT_TRUE(k.certificate.holds()) << k.certificate.to_string();
  EXPECT_TRUE(k.closed_regular);
  EXPECT_TRUE(k.closed_pairing.is_unit_ideal());
  EXPECT_EQ(k.closed_dual_dimension, 1u);
}

TEST(Knudsen, DichotomyOverCurveCorpus) {
  struct Case {
    std::vector<std::string> vars, rel;
    bool regular;
  };
  std::vector<Case> corpus = {
      {{"x", "y"}, {"x*y"}, false},          {{"x", "y"}, {"y^2-x^3"}, false},
      {{"x", "y"}, {"y^2-x^4"}, false},      {{"x", "y"}, {"x*y*(x-y)"}, false},
      {{"x", "y"}, {"y-x^2"}, true},         {{"x"}, {}, true},
      {{"x", "y", "z"}, {"x*y", "z^2-x^2-y^2"}, false},
  };
  for (const auto& c : corpus) {
    auto A = quotient(c.vars, c.rel);
    auto t = trivial(A);
    auto k = knudsen_invariants(t.h, t.section);
    EXPECT_TRUE(k.dichotomy.holds()) << A->to_string() << "\n" << k.dichotomy.to_string();
    EXPECT_EQ(k.closed_regular, c.regular) << A->to_string();
    std::vector<Polynomial> vars;
    for (std::size_t v = 0; v < A->nvars(); ++v) vars.push_back(Polynomial::variable(A->ambient(), v));
    bool is_m = k.closed_pairing == ideal_in(*A, vars);
    EXPECT_EQ(is_m, k.closed_dual_dimension == 2) << A->to_string();
  }
}

TEST(Knudsen, RejectsNonCurveFibre) {
  auto A = quotient({"x", "y", "z"}, {"x*y-z^2"});
  auto t = trivial(A);
  EXPECT_THROW(knudsen_invariants(t.h, t.section), Error);
}

namespace {

// x2 (δ v^2 + γ v + 1) and x2 (u^2 + γ u + δ), instantiated.
void expect_closed_charts(const StabilizationReport& st, const Scalar& g, const Scalar& d) {
  const RingPtr& ru = st.closed_U_eliminated->ambient();
  Polynomial x2 = Polynomial::variable(ru, "x2"), v = Polynomial::variable(ru, st.v_name);
  Polynomial one = Polynomial::constant(ru, 1);
  Polynomial U = x2 * ((v * v).scaled(d) + v.scaled(g) + one);
  EXPECT_EQ(st.closed_U_eliminated->ideal(), ideal_basis(ru, {U})) << st.closed_U_eliminated->to_string();
  const RingPtr& rv = st.closed_V_eliminated->ambient();
  Polynomial y2 = Polynomial::variable(rv, "x2"), u = Polynomial::variable(rv, st.u_name);
  Polynomial V = y2 * (u * u + u.scaled(g) + Polynomial::constant(rv, d));
  EXPECT_EQ(st.closed_V_eliminated->ideal(), ideal_basis(rv, {V})) << st.closed_V_eliminated->to_string();
  // v = 0 is not a root of δ v^2 + γ v + 1
  EXPECT_NE(d * 0 * 0 + g * 0 + 1, 0);
}

}  // namespace

TEST(Stabilization, KnudsenChartsAtOrigin) {
  for (auto [g, d] : std::vector<std::pair<Scalar, Scalar>>{{0, -1}, {3, 2}, {Scalar(1, 2), -5}}) {
    auto data = knudsen_family(Field::rationals(), g, d);
    auto st = stabilization(data);
    EXPECT_TRUE(st.certificate.holds()) << st.certificate.to_string();
    expect_closed_charts(st, g, d);
    EXPECT_EQ(st.exceptional_dimension, 2u);
    EXPECT_EQ(st.exceptional_fibre_dim, 1);
  }
}

TEST(Stabilization, SpecificInstance) {
  auto data = knudsen_family(Field::rationals(), 0, -1);
  auto st = stabilization(data);
  const RingPtr& ru = st.closed_U_eliminated->ambient();
  EXPECT_EQ(st.closed_U_eliminated->ideal(), ideal_of(ru, {"x2*(1-v^2)"}));
  const RingPtr& rv = st.closed_V_eliminated->ambient();
  EXPECT_EQ(st.closed_V_eliminated->ideal(), ideal_of(rv, {"x2*(u^2-1)"}));
  EXPECT_TRUE(st.flatness.holds());
  EXPECT_TRUE(st.section.holds()) << st.section.to_string();
  EXPECT_TRUE(st.gluing.holds());
}

TEST(Stabilization, KnudsenFamilyGuards) {
  EXPECT_THROW(knudsen_family(Field::rationals(), 2, 1), Error);
  EXPECT_THROW(knudsen_family(Field::prime(2), 1, 1), Error);
  EXPECT_NO_THROW(knudsen_family(Field::prime(5), 0, 1));
}

TEST(Stabilization, NodeOverField) {
  auto P = polynomial_ring(Field::rationals(), {"x", "y"});
  auto t = trivial(P);
  auto mf = plane_curve_mf(P->parse("x*y"), t.h, t.section);
  auto st = stabilization(mf.data);
  EXPECT_TRUE(st.certificate.holds()) << st.certificate.to_string();
  EXPECT_EQ(st.exceptional_dimension, 2u);
  EXPECT_EQ(st.exceptional_fibre_dim, 1);
}

TEST(Stabilization, SmoothFibreOfXYMinusBC) {
  auto S = polynomial_ring(Field::rationals(), {"b", "c"});
  auto P = polynomial_ring(Field::rationals(), {"b", "c", "x", "y"});
  RingMap h = make_map(S, P, {"b", "c"});
  RingMap sec = make_map(P, S, {"b", "c", "b", "c"});
  auto mf = plane_curve_mf(P->parse("x*y-b*c"), h, sec);
  auto at = specialize(mf.data, {Scalar(1), Scalar(1)});
  auto st = stabilization(at);
  EXPECT_TRUE(st.certificate.holds()) << st.certificate.to_string();
  EXPECT_EQ(st.exceptional_dimension, 1u);
  EXPECT_EQ(st.exceptional_fibre_dim, 0);
  // The family itself over the origin inserts a P^1.
  auto st0 = stabilization(mf.data);
  EXPECT_TRUE(st0.certificate.holds()) << st0.certificate.to_string();
  EXPECT_EQ(st0.exceptional_dimension, 2u);
}

TEST(Stabilization, SymPresentation) {
  auto data = knudsen_family(Field::rationals(), 0, -1);
  auto st = stabilization(data);
  const RingPtr& r = st.sym->ambient();
  auto want = ideal_basis(r, {transfer(data.F, r), transfer(data.X2, r) * P(r, "U") + transfer(data.G1, r) * P(r, "V"),
                              transfer(data.G2, r) * P(r, "V") - transfer(data.X1, r) * P(r, "U")});
  EXPECT_EQ(st.sym->ideal(), want);
}

TEST(Stabilization, SymEqualsReesForXYMinusBCFamily) {
  auto S = polynomial_ring(Field::rationals(), {"b", "c"});
  auto P0 = polynomial_ring(Field::rationals(), {"b", "c", "x", "y"});
  RingMap h = make_map(S, P0, {"b", "c"});
  RingMap sec = make_map(P0, S, {"b", "c", "b", "c"});
  auto mf = plane_curve_mf(P0->parse("x*y-b*c"), h, sec);
  auto st = stabilization(mf.data);
  // I* = coker Φ^T embeds in R along the first column (G2, X1) of Ψ.
  auto rees = rees_ideal(mf.data.R, mf.data.G2, mf.data.X1, st.sym);
  EXPECT_EQ(rees, st.sym->ideal());
}

TEST(T1, Node) {
  auto P = polynomial_ring(Field::rationals(), {"x", "y"});
  auto t = versal_T1(P, {P->parse("x*y")});
  EXPECT_EQ(t.N(), 0u);
  ASSERT_EQ(t.basis.size(), 1u);
  EXPECT_EQ(total_degree(t.basis[0].exponents), 0);
}

TEST(T1, CuspAgainstLinearAlgebra) {
  auto P = polynomial_ring(Field::rationals(), {"x", "y"});
  auto t = versal_T1(P, {P->parse("y^2-x^3")});
  ASSERT_EQ(t.N(), 1u);
  EXPECT_EQ(t.g[0][0], P->var("x"));
  ASSERT_EQ(t.basis.size(), 2u);

  // Oracle: multiples of (3x^2, 2y, y^2 - x^3) up to degree 4 span all monomials of degree
  // <= 4 except a 2-dimensional complement in which 1 and x are independent.
  const RingPtr& r = P->ambient();
  std::vector<Polynomial> gens = {P->parse("3*x^2"), P->parse("2*y"), P->parse("y^2-x^3")};
  std::vector<std::map<Exponents, Scalar>> rows;
  int D = 4;
  std::size_t all = 0;
  for (int d = 0; d <= D; ++d)
    for (const auto& m : rfx::testing::monomials_of_degree(2, {1, 1}, d)) {
      ++all;
      for (const auto& g : gens)
        if (g.degree() + d <= D) {
          std::map<Exponents, Scalar> row;
          Polynomial shifted = g.times_term(m, 1);
          for (const auto& term : shifted.terms()) row[term.exponents] = term.coeff;
          rows.push_back(row);
        }
    }
  std::size_t span = rfx::testing::rank_of(rows);
  EXPECT_EQ(all - span, 2u);
  auto with = rows;
  for (const char* s : {"1", "x"}) {
    std::map<Exponents, Scalar> row;
    Polynomial p = rfx::testing::P(r, s);
    for (const auto& term : p.terms()) row[term.exponents] = term.coeff;
    with.push_back(row);
  }
  EXPECT_EQ(rfx::testing::rank_of(with), span + 2);
}

TEST(T1, TwoSquares) {
  auto P = polynomial_ring(Field::rationals(), {"x", "y"});
  auto t = versal_T1(P, {P->parse("x^2"), P->parse("y^2")});
  ASSERT_EQ(t.basis.size(), 4u);
  EXPECT_EQ(t.N(), 2u);
  EXPECT_EQ(t.g[0][0], P->var("y"));
  EXPECT_TRUE(t.g[0][1].is_zero());
  EXPECT_TRUE(t.g[1][0].is_zero());
  EXPECT_EQ(t.g[1][1], P->var("x"));
}

TEST(T1, Rejections) {
  auto P = polynomial_ring(Field::rationals(), {"x", "y"});
  EXPECT_THROW(versal_T1(P, {P->parse("x^2")}), Error);   // not isolated
  EXPECT_THROW(versal_T1(P, {P->parse("x+y^2")}), Error);  // not in (x)^2
  EXPECT_THROW(versal_T1(P, {P->parse("x*y"), P->parse("x^2*y")}), Error);  // not regular
}

TEST(Versal, PointedNodeIsXYMinusBC) {
  auto P = polynomial_ring(Field::rationals(), {"x", "y"});
  auto p = pointed_versal(P, {P->parse("x*y")});
  EXPECT_TRUE(p.certificate.holds()) << p.certificate.to_string();
  const RingPtr& r = p.total->ambient();
  EXPECT_EQ(p.total->ideal(), ideal_of(r, {"x*y-s1*s2"}));
  // Rename s1 -> b, s2 -> c.
  auto R = xy_bc_family();
  std::vector<Polynomial> images;
  for (const auto& name : r->variables())
    images.push_back(Polynomial::variable(R->ambient(), name == "s1" ? "b" : name == "s2" ? "c" : name));
  std::vector<Polynomial> renamed;
  for (const auto& g : p.total->relations()) renamed.push_back(substitute(g, R->ambient(), images));
  EXPECT_EQ(ideal_basis(R->ambient(), renamed), R->ideal());
}

TEST(Versal, PointedCusp) {
  auto P = polynomial_ring(Field::rationals(), {"x", "y"});
  auto v = versal_family(P, {P->parse("y^2-x^3")});
  EXPECT_TRUE(v.pointed.certificate.holds()) << v.pointed.certificate.to_string();
  const RingPtr& r = v.pointed.total->ambient();
  EXPECT_EQ(v.pointed.total->ideal(), ideal_of(r, {"y^2-x^3+t1*x-(s2^2-s1^3+t1*s1)"}));
  EXPECT_EQ(v.F.size(), 1u);
  EXPECT_EQ(v.unpointed_total->nvars(), 4u);
}

TEST(Versal, NoDeformationParameters) {
  auto P = polynomial_ring(Field::rationals(), {"x", "y", "z"});
  auto p = pointed_versal(P, {P->parse("x*y-z^2")});
  const RingPtr& r = p.total->ambient();
  EXPECT_EQ(p.total->ideal(), ideal_of(r, {"x*y-z^2-(s1*s2-s3^2)"}));
}

TEST(Square, TrivialBase) {
  auto A = quotient({"x", "y"}, {"x*y"});
  auto t = trivial(A);
  auto sq = square_construction(t.h);
  EXPECT_TRUE(sq.certificate.holds()) << sq.certificate.to_string();
  EXPECT_EQ(sq.total->ideal(), ideal_of(sq.total->ambient(), {"x*y", "x_*y_"}));
}

TEST(Square, LineFamilyEliminatesToQuadric) {
  auto S = polynomial_ring(Field::rationals(), {"z"});
  auto R = quotient({"x", "y", "z"}, {"x*y+z"});
  RingMap h = make_map(S, R, {"z"});
  auto sq = square_construction(h);
  EXPECT_TRUE(sq.certificate.holds()) << sq.certificate.to_string();
  auto E = eliminate(sq.total, {"z"});
  EXPECT_EQ(E->ideal(), ideal_of(E->ambient(), {"x*y-x_*y_"}));
}

TEST(Square, VersalNodeRecoversPointedFamily) {
  auto P = polynomial_ring(Field::rationals(), {"x", "y"});
  auto v = versal_family(P, {P->parse("x*y")});
  auto sq = square_construction(v.unpointed);
  auto E = eliminate(sq.total, {"z1"});
  // x -> s1, y -> s2, x_ -> x, y_ -> y
  const RingPtr& target = v.pointed.total->ambient();
  std::vector<Polynomial> images;
  for (const auto& name : E->ambient()->variables()) {
    std::string to = name == "x" ? "s1" : name == "y" ? "s2" : name == "x_" ? "x" : "y";
    images.push_back(Polynomial::variable(target, to));
  }
  std::vector<Polynomial> renamed;
  for (const auto& g : E->relations()) renamed.push_back(substitute(g, target, images));
  EXPECT_EQ(ideal_basis(target, renamed), v.pointed.total->ideal());
}

TEST(Stabilization, SymCarriesTorsionOverTheNodeFibre) {
  // Over A = k[x,y]/(xy) with U -> -y, V -> x+y the Rees algebra also kills U(U+V) = -xy,
  // which Sym does not.
  auto P = polynomial_ring(Field::rationals(), {"x", "y"});
  auto t = trivial(P);
  auto mf = plane_curve_mf(P->parse("x*y"), t.h, t.section);
  auto st = stabilization(mf.data);
  auto rees = rees_ideal(mf.data.R, -mf.data.G1 + mf.data.G2, mf.data.X1 + mf.data.X2, st.sym);
  const RingPtr& r = st.sym->ambient();
  EXPECT_FALSE(rees == st.sym->ideal());
  EXPECT_TRUE(st.sym->ideal().reduce(rfx::testing::P(r, "x*y")).is_zero());
  EXPECT_FALSE(st.sym->ideal().reduce(rfx::testing::P(r, "U^2+U*V")).is_zero());
  EXPECT_TRUE(rees.reduce(rfx::testing::P(r, "U^2+U*V")).is_zero());
}

namespace {

std::pair<Scalar, Scalar> random_form(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-6, 6), den(1, 3);
  while (true) {
    Scalar g(num(rng), den(rng)), d(num(rng), den(rng));
    g.canonicalize();
    d.canonicalize();
    if (g * g - 4 * d != 0) return {g, d};
  }
}

}  // namespace

TEST(StabilizationProperty, KnudsenChartsFlatAndGlued) {
  std::mt19937 rng(5);
  for (int seed = 0; seed < 100; ++seed) {
    auto [g, d] = random_form(rng);
    auto data = knudsen_family(Field::rationals(), g, d);
    auto st = stabilization(data);
    ASSERT_TRUE(st.certificate.holds()) << "seed " << seed << " γ=" << g << " δ=" << d << "\n" << st.certificate.to_string();
    expect_closed_charts(st, g, d);
  }
}

TEST(StabilizationProperty, SymEqualsReesOnKnudsenFamilies) {
  std::mt19937 rng(6);
  for (int seed = 0; seed < 100; ++seed) {
    auto [g, d] = random_form(rng);
    auto data = knudsen_family(Field::rationals(), g, d);
    auto st = stabilization(data);
    auto rees = rees_ideal(data.R, data.G2, data.X1, st.sym);
    ASSERT_EQ(rees, st.sym->ideal()) << "seed " << seed << " γ=" << g << " δ=" << d;
  }
}

TEST(KnudsenProperty, DichotomyOnRandomPlaneCurves) {
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> degree(1, 3);
  auto P = polynomial_ring(Field::rationals(), {"x", "y"});
  for (int seed = 0; seed < 100; ++seed) {
    int deg = degree(rng);
    Polynomial F(P->ambient());
    while (F.is_zero()) F = rfx::testing::random_homogeneous(P->ambient(), rng, 3, deg);
    auto A = make_quotient(P->ambient(), std::vector<Polynomial>{F});
    auto t = trivial(A);
    auto k = knudsen_invariants(t.h, t.section);
    ASSERT_TRUE(k.certificate.holds()) << "seed " << seed << " F=" << F.to_string() << "\n" << k.certificate.to_string();
    EXPECT_EQ(k.closed_regular, deg == 1) << F.to_string();
    bool is_m = k.closed_pairing == ideal_of(A->ambient(), {"x", "y"});
    EXPECT_EQ(is_m, deg > 1) << F.to_string();
    EXPECT_EQ(k.closed_dual_dimension, deg > 1 ? 2u : 1u) << F.to_string();
  }
}
