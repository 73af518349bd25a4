// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "properties.hpp"
#include "support.hpp"
#include "rfx/approx.hpp"
#include "rfx/error.hpp"
#include "rfx/stab.hpp"

using namespace rfx;
using rfx::testing::props::CaseResult;

namespace {

QRingPtr quotient(const std::vector<std::string>& vars, const std::vector<std::string>& rels) {
  return make_quotient(make_ring(Field::rationals(), vars), rels);
}

GroebnerBasis ideal_of(const RingPtr& r, const std::vector<std::string>& gens) {
  std::vector<Polynomial> ps;
  for (const auto& g : gens) ps.push_back(parse_polynomial(r, g));
  return ideal_basis(r, ps);
}

bool series_is_one(const HilbertSeries& h) {
  auto r = h.reduced();
  return r.numerator_coefficients() == std::vector<mpz_class>{1} && r.denominator().empty();
}

struct Trivial {
  QRingPtr S;
  RingMap h, section;
};

Trivial trivial(const QRingPtr& A) {
  QRingPtr S = polynomial_ring(Field::rationals(), {});
  std::vector<Polynomial> zeros(A->nvars(), Polynomial(S->ambient()));
  return {S, RingMap(S, A, {}), RingMap(A, S, zeros)};
}

// Ext^i(k, A) over the node, from the library and from the hand resolution
// A <-(x y)- A^2 <-diag(y,x)- A^2 <-diag(x,y)- A^2 <- ... dualized.
CaseResult node_ext_table() {
  CaseResult r;
  auto A = quotient({"x", "y"}, {"x*y"});
  const RingPtr& P = A->ambient();
  auto e = ext_modules(FPModule::residue_field(A), FPModule::free(A, 1), 6);
  r.require(e[0].is_zero(), "Ext^0(k,A) != 0");
  r.require(series_is_one(hilbert_series(e[1])), "Ext^1(k,A) has series " + hilbert_series(e[1]).to_string());
  for (std::size_t i = 2; i <= 6; ++i) r.require(e[i].is_zero(), "Ext^" + std::to_string(i) + "(k,A) != 0");

  std::vector<Matrix> d = {Matrix::parse(P, {{"x", "y"}})};
  for (int i = 1; i <= 7; ++i)
    d.push_back(i % 2 ? Matrix::parse(P, {{"y", "0"}, {"0", "x"}}) : Matrix::parse(P, {{"x", "0"}, {"0", "y"}}));
  for (std::size_t i = 0; i + 1 < d.size(); ++i)
    r.require(A->reduce(d[i] * d[i + 1]).is_zero(), "hand resolution is not a complex");
  for (std::size_t i = 0; i <= 6; ++i) {
    std::size_t rank = i == 0 ? 1 : 2;
    Matrix alpha = i == 0 ? Matrix(P, 1, 0) : d[i - 1].transpose();
    Matrix beta = d[i].transpose();
    std::vector<int> deg(rank, -static_cast<int>(i));
    FPModule h = homology_at(A, alpha, beta, Matrix(P, rank, 0), Matrix(P, beta.rows(), 0), deg);
    bool expect_one = i == 1;
    r.require(expect_one ? series_is_one(hilbert_series(h)) : h.is_zero(),
              "hand route disagrees at Ext^" + std::to_string(i));
  }
  return r;
}

CaseResult node_dichotomy() {
  CaseResult r;
  auto A = quotient({"x", "y"}, {"x*y"});
  auto t = trivial(A);
  auto k = knudsen_invariants(t.h, t.section);
  r.require(k.certificate.holds(), k.certificate.to_string());
  r.require(k.closed_pairing == ideal_of(A->ambient(), {"x", "y"}), "node pairing image is not (x,y)");
  r.require(!k.closed_regular, "node reported regular");
  r.require(k.closed_dual_dimension == 2, "dim m* (x) k != 2 at the node");
  // m*/A ≅ k: free of rank one over the field, and H(m*) = H(A) + 1.
  r.require(k.quotient_fitting[0].size() == 0 && k.quotient_fitting[1].is_unit_ideal(), "m*/A is not k");
  auto m = ideal_module(A, {A->var("x"), A->var("y")}).module;
  HilbertSeries one({{0, 1}}, {});
  r.require(hilbert_series(dual_module(m).module) == hilbert_series(A) + one, "H(m*) != H(A) + 1");
  r.require(pairing_image(ideal_module(A, {A->var("x"), A->var("y")})) == ideal_of(A->ambient(), {"x", "y"}),
            "pairing_image route disagrees at the node");

  auto L = polynomial_ring(Field::rationals(), {"x"});
  auto tl = trivial(L);
  auto kl = knudsen_invariants(tl.h, tl.section);
  r.require(kl.certificate.holds(), kl.certificate.to_string());
  r.require(kl.closed_regular && kl.closed_pairing.is_unit_ideal(), "line pairing image is not (1)");
  r.require(kl.closed_dual_dimension == 1, "dim m* (x) k != 1 on the line");
  return r;
}

CaseResult family_example() {
  CaseResult r;
  auto R = quotient({"b", "c", "x", "y"}, {"x*y-b*c"});
  auto S = polynomial_ring(Field::rationals(), {"b", "c"});
  RingMap h = make_map(S, R, {"b", "c"});
  RingMap sec = make_map(R, S, {"b", "c", "b", "c"});
  auto k = knudsen_invariants(h, sec);
  r.require(k.certificate.holds(), k.certificate.to_string());
  r.require(k.pairing == ideal_of(R->ambient(), {"x", "y", "b", "c"}), "I.I* != (x,y,b,c)");
  auto cyclic = FPModule::cyclic(R, k.pairing.polynomials());
  r.require(series_is_one(hilbert_series(cyclic)), "R/I.I* is not S/(b,c)");
  r.require(k.section_fitting.size() == 3, "expected three Fitting ideals");
  r.require(k.section_fitting[0].size() == 0, "Fitt_0 != 0");
  r.require(k.section_fitting[1] == ideal_of(S->ambient(), {"b", "c"}), "Fitt_1 != (b,c)");
  r.require(k.section_fitting[2].is_unit_ideal(), "Fitt_2 != (1)");
  // S ⊕ S/(b,c) computed directly
  FPModule oracle(S, Matrix::parse(S->ambient(), {{"0", "0"}, {"b", "c"}}));
  for (std::size_t i = 0; i < 3; ++i)
    r.require(fitting_ideal(oracle, i) == k.section_fitting[i], "Fitting oracle differs at " + std::to_string(i));
  return r;
}

CaseResult knudsen_factorization() {
  CaseResult r;
  for (auto [g, d] : std::vector<std::pair<Scalar, Scalar>>{{0, -1}, {Scalar(3, 2), Scalar(-2, 7)}}) {
    auto data = knudsen_family(Field::rationals(), g, d);
    auto p = plane_curve_mf(data.F, data.h, data.section);
    const auto& mf = p.mf;
    const RingPtr& T = mf.ambient->ambient();
    Matrix FId = Matrix::identity(T, 2).scaled(mf.F);
    r.require(mf.Phi * mf.Psi == FId && mf.Psi * mf.Phi == FId, "Phi Psi != F Id");
    auto pc = two_periodic(mf, -4, 5, &data.h, {{0, 0}, {1, 2}});
    r.require(pc.certificate.holds(), pc.certificate.to_string());
    int interior = 0;
    for (int i = pc.complex.lo() + 1; i < pc.complex.hi(); ++i, ++interior)
      r.require(cohomology(pc.complex, i).is_zero(), "H^" + std::to_string(i) + " != 0");
    r.require(interior >= 8, "window narrower than 8");
    FreeComplex dual = dual_complex(pc.complex);
    MatrixFactorization t{mf.ambient, mf.F, mf.Phi.transpose(), mf.Psi.transpose()};
    auto pt = two_periodic(t, -4, 5);
    r.require(dual.lo() == pt.complex.lo() && dual.hi() == pt.complex.hi(), "dual window differs");
    for (int i = dual.lo(); i < dual.hi(); ++i)
      r.require(dual.differential(i) == pt.complex.differential(i), "dual differs at " + std::to_string(i));
  }
  return r;
}

CaseResult stabilization_charts() {
  CaseResult r;
  auto data = knudsen_family(Field::rationals(), 0, -1);
  auto st = stabilization(data);
  r.require(st.certificate.holds(), st.certificate.to_string());
  const RingPtr& ru = st.closed_U_eliminated->ambient();
  r.require(st.closed_U_eliminated->ideal() == ideal_of(ru, {"x2*(1-v^2)"}), "U chart " + st.closed_U_eliminated->to_string());
  const RingPtr& rv = st.closed_V_eliminated->ambient();
  r.require(st.closed_V_eliminated->ideal() == ideal_of(rv, {"x2*(u^2-1)"}), "V chart " + st.closed_V_eliminated->to_string());
  // δ v^2 + γ v + 1 at v = 0
  Scalar gamma = 0, delta = -1, v = 0;
  r.require(delta * v * v + gamma * v + 1 != 0, "v = 0 is a root");
  r.require(st.section.holds(), st.section.to_string());
  r.require(st.flatness.holds(), st.flatness.to_string());
  // Independent flatness route: the two defining equations of each chart in its ambient
  // polynomial ring, X2 + G1 v, X1 - G2 v and X2 u + G1, X1 u - G2.
  const QRingPtr& S = data.h.source();
  auto paren = [](const Polynomial& f) { return "(" + f.to_string() + ")"; };
  std::string X1 = paren(data.X1), X2 = paren(data.X2), G1 = paren(data.G1), G2 = paren(data.G2);
  std::string v_ = st.v_name, u_ = st.u_name;
  std::vector<std::pair<QRingPtr, std::vector<std::string>>> charts = {
      {st.chart_U, {X2 + "+" + G1 + "*" + v_, X1 + "-" + G2 + "*" + v_}},
      {st.chart_V, {X2 + "*" + u_ + "+" + G1, X1 + "*" + u_ + "-" + G2}}};
  for (const auto& [chart, eqs] : charts) {
    auto Pc = polynomial_ring(Field::rationals(), chart->ambient()->variables());
    std::vector<Polynomial> rels;
    for (const auto& e : eqs) rels.push_back(parse_polynomial(Pc->ambient(), e));
    r.require(ideal_basis(Pc->ambient(), rels) == chart->ideal(), "chart is not cut out by its two equations");
    RingMap hc = make_map(S, Pc, S->ambient()->variables());
    r.require(is_regular_sequence_on_fibre(rels, hc, {0, 0}), "chart equations are not regular on the fibre");
  }
  return r;
}

CaseResult node_approximation() {
  CaseResult r;
  auto A = quotient({"x", "y"}, {"x*y"});
  auto a = approximate(FPModule::residue_field(A), 1, 2);
  auto m = ideal_module(A, {A->var("x"), A->var("y")}).module;
  r.require(hilbert_series(a.M) == hilbert_series(dual_module(m).module), "H(M) != H(m*)");
  FPModule L = prune(a.L).module;
  r.require(L.is_free_presentation() && L.generators() == 1, "L is not free of rank 1");
  auto c = verify(a);
  r.require(c.holds(), c.to_string());
  r.require(a.L_to_M.is_injective() && a.M_to_N.is_surjective() && is_exact_at(a.L_to_M, a.M_to_N),
            "first sequence is not exact");
  r.require(a.N_to_Lp.is_injective() && a.Lp_to_Mp.is_surjective() && is_exact_at(a.N_to_Lp, a.Lp_to_Mp),
            "second sequence is not exact");

  auto R = quotient({"b", "c", "x", "y"}, {"x*y-b*c"});
  auto S = polynomial_ring(Field::rationals(), {"b", "c"});
  RingMap h = make_map(S, R, {"b", "c"});
  auto p = pointed_approximation(h, make_map(R, S, {"b", "c", "b", "c"}));
  r.require(p.diagram.holds(), p.diagram.to_string());
  auto at = verify(p.result, h, {Scalar(1), Scalar(1)});
  r.require(at.holds(), at.to_string());
  return r;
}

CaseResult cone_orthogonality() {
  CaseResult r;
  auto A = quotient({"x", "y", "u", "v"}, {"x*y-u*v"});
  auto k = FPModule::residue_field(A);
  auto e = ext_modules(k, FPModule::free(A, 1), 2);
  r.require(e[1].is_zero() && e[2].is_zero(), "Ext^1 or Ext^2 (k,A) != 0");
  r.require(is_left_n_orthogonal(k, 2).holds(), "k is not left 2-orthogonal");
  auto o = orthogonal_to_syzygy(k, 1);
  r.require(o.conclusion.holds(), o.conclusion.to_string());
  auto refl = is_reflexive(syzygy(k, 2));
  r.require(refl.holds(), refl.to_string());
  auto ev = evaluation_map(syzygy(k, 2));
  r.require(ev.kernel.is_zero() && ev.cokernel.is_zero(), "sigma is not an isomorphism on the second syzygy");
  return r;
}

CaseResult versal_pipeline() {
  CaseResult r;
  auto P = polynomial_ring(Field::rationals(), {"x", "y"});
  r.require(versal_T1(P, {P->parse("x*y")}).N() == 0, "T1 of the node is not spanned by e_1");
  auto p = pointed_versal(P, {P->parse("x*y")});
  r.require(p.certificate.holds(), p.certificate.to_string());
  auto R = quotient({"b", "c", "x", "y"}, {"x*y-b*c"});
  const RingPtr& src = p.total->ambient();
  std::vector<Polynomial> images;
  for (const auto& name : src->variables())
    images.push_back(Polynomial::variable(R->ambient(), name == "s1" ? "b" : name == "s2" ? "c" : name));
  std::vector<Polynomial> renamed;
  for (const auto& g : p.total->relations()) renamed.push_back(substitute(g, R->ambient(), images));
  r.require(ideal_basis(R->ambient(), renamed) == R->ideal(), "pointed versal node differs from xy - bc");

  auto t = versal_T1(P, {P->parse("y^2-x^3")});
  r.require(t.N() == 1 && t.basis.size() == 2 && t.g[0][0] == P->var("x"), "cusp T1 is not {e_1, x e_1}");
  // Oracle: standard monomials of (3x^2, 2y, y^2 - x^3) by linear algebra up to degree 4.
  const RingPtr& a = P->ambient();
  std::vector<Polynomial> gens = {P->parse("3*x^2"), P->parse("2*y"), P->parse("y^2-x^3")};
  std::vector<std::map<Exponents, Scalar>> rows;
  const int D = 4;
  std::size_t all = 0;
  auto row_of = [](const Polynomial& f) {
    std::map<Exponents, Scalar> row;
    for (const auto& term : f.terms()) row[term.exponents] = term.coeff;
    return row;
  };
  for (int d = 0; d <= D; ++d)
    for (const auto& m : rfx::testing::monomials_of_degree(2, {1, 1}, d)) {
      ++all;
      for (const auto& g : gens)
        if (g.degree() + d <= D) rows.push_back(row_of(g.times_term(m, 1)));
    }
  std::size_t span = rfx::testing::rank_of(rows);
  auto with = rows;
  with.push_back(row_of(rfx::testing::P(a, "1")));
  with.push_back(row_of(rfx::testing::P(a, "x")));
  r.require(all - span == 2, "oracle complement has dimension " + std::to_string(all - span));
  r.require(rfx::testing::rank_of(with) == span + 2, "1 and x are dependent modulo the Jacobian ideal");
  r.notes.push_back("oracle: " + std::to_string(all) + " monomials of degree <= " + std::to_string(D) + ", span " +
                    std::to_string(span) + ", complement spanned by 1, x");
  return r;
}

CaseResult property_suites() {
  using namespace rfx::testing::props;
  CaseResult r;
  std::vector<std::pair<std::string, std::function<CaseResult(unsigned)>>> suites = {
      {"groebner", [](unsigned s) { return groebner_case(s); }},
      {"complexes", [](unsigned s) { return complex_case(s); }},
      {"canonical-isomorphisms", [](unsigned s) { return canonical_iso_case(s); }},
      {"two-out-of-three", [](unsigned s) { return two_of_three_case(s); }},
  };
  for (const auto& [name, run] : suites) {
    int failures = 0, exercised = 0;
    for (unsigned seed = 0; seed < 100; ++seed) {
      CaseResult c;
      try {
        c = run(seed);
      } catch (const std::exception& e) {
        c.require(false, e.what());
      }
      exercised += c.exercised;
      if (!c.ok) {
        ++failures;
        r.require(false, name + " seed " + std::to_string(seed) + ": " + c.detail);
      }
    }
    r.notes.push_back(name + ": 100 cases, " + std::to_string(failures) + " failures, " + std::to_string(exercised) +
                      " with hypotheses met");
  }
  return r;
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<CaseResult()>>> criteria = {
      {"node Ext table", node_ext_table},
      {"m*/A and the pairing dichotomy", node_dichotomy},
      {"xy - bc family: I.I* and Fitting ideals", family_example},
      {"Knudsen matrix factorization and 2-periodic complex", knudsen_factorization},
      {"stabilization charts", stabilization_charts},
      {"approximation of k over the node", node_approximation},
      {"syzygy orthogonality over xy - uv", cone_orthogonality},
      {"versal pipeline", versal_pipeline},
      {"seeded property suites", property_suites},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto start = std::chrono::steady_clock::now();
    CaseResult r;
    try {
      r = criteria[i].second();
    } catch (const std::exception& e) {
      r.require(false, std::string("exception: ") + e.what());
    }
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    std::printf("AC%zu %s  %s (%.0f ms)\n", i + 1, r.ok ? "PASS" : "FAIL", criteria[i].first.c_str(), ms);
    for (const auto& note : r.notes) std::printf("      %s\n", note.c_str());
    if (!r.ok) {
      std::printf("      %s\n", r.detail.c_str());
      ++failed;
    }
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
