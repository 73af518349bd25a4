#include "rfx/stab.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "rfx/approx.hpp"
#include "rfx/error.hpp"

namespace rfx {

namespace {

Witness check(const std::string& what, const std::string& subject, bool ok, const std::string& detail = "") {
  return {what, subject, ok, detail.empty() ? (ok ? "yes" : "no") : detail};
}

std::string fresh(const std::vector<std::string>& used, std::string name) {
  while (std::find(used.begin(), used.end(), name) != used.end()) name += "_";
  return name;
}

std::string point_string(const std::vector<Scalar>& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + p[i].get_str();
  return s + ")";
}

std::string ideal_string(const GroebnerBasis& gb) {
  if (gb.is_unit_ideal()) return "(1)";
  std::string s = "(";
  auto ps = gb.polynomials();
  for (std::size_t i = 0; i < ps.size(); ++i) s += (i ? ", " : "") + ps[i].to_string();
  return s + ")";
}

bool is_zero_ideal(const GroebnerBasis& gb) { return gb.size() == 0; }

// Base variables of h (their indices in the target ambient); throws unless S maps onto
// distinct variables.
std::vector<bool> base_mask(const RingMap& h, const char* who) {
  const RingPtr& P = h.target()->ambient();
  std::vector<bool> base(P->nvars(), false);
  for (std::size_t i = 0; i < h.source()->nvars(); ++i) {
    int v = h.image_variable(i);
    if (v < 0 || base[static_cast<std::size_t>(v)])
      throw Error(std::string(who) + " needs the base variables to map onto distinct variables");
    base[static_cast<std::size_t>(v)] = true;
  }
  return base;
}

Scalar value_at(const Polynomial& f, const std::vector<Scalar>& point) {
  RingPtr k = make_ring(f.ring()->field(), {});
  std::vector<Polynomial> images;
  for (const auto& c : point) images.push_back(Polynomial::constant(k, c));
  return substitute(f, k, images).constant_coefficient();
}

// Rank of a matrix of field elements.
std::size_t scalar_rank(const Field& k, std::vector<std::vector<Scalar>> rows) {
  std::size_t rank = 0;
  std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t p = rank;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    Scalar inv = k.inv(rows[rank][c]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      Scalar f = k.mul(rows[r][c], inv);
      for (std::size_t j = c; j < cols; ++j) rows[r][j] = k.sub(rows[r][j], k.mul(f, rows[rank][j]));
    }
    ++rank;
  }
  return rank;
}

// Rank of the normal forms of `polys` as vectors over k.
std::size_t span_rank(const Field& k, const std::vector<Polynomial>& polys) {
  std::map<Exponents, std::size_t> index;
  for (const auto& p : polys)
    for (const auto& t : p.terms()) index.emplace(t.exponents, index.size());
  std::vector<std::vector<Scalar>> rows;
  for (const auto& p : polys) {
    std::vector<Scalar> row(index.size(), Scalar(0));
    for (const auto& t : p.terms()) row[index[t.exponents]] = t.coeff;
    rows.push_back(row);
  }
  return scalar_rank(k, rows);
}

bool is_nonzerodivisor(const QuotientRing& A, const Polynomial& x) {
  if (A.is_zero(x)) return false;
  if (A.is_polynomial_ring()) return true;
  return syzygies(A, Matrix::row_vector(A.ambient(), {x})).cols() == 0;
}

bool artinian_quotient(const QuotientRing& A, const Polynomial& x) {
  std::vector<Polynomial> rel = A.relations();
  rel.push_back(x);
  return lead_ideal_dimension(ideal_basis(A.ambient(), rel)) == 0;
}

std::vector<Exponents> monomials_of_degree(std::size_t n, int d) {
  std::vector<Exponents> out;
  Exponents e(n, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t v, int left) {
    if (v + 1 >= n) {
      if (n == 0) {
        if (left == 0) out.push_back(e);
        return;
      }
      e[v] = left;
      out.push_back(e);
      e[v] = 0;
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[v] = k;
      rec(v + 1, left - k);
    }
    e[v] = 0;
  };
  rec(0, d);
  return out;
}

RingPtr with_variables(const RingPtr& P, const std::vector<std::string>& extra) {
  std::vector<std::string> names = P->variables();
  names.insert(names.end(), extra.begin(), extra.end());
  MonomialOrder ord = P->order().kind() == MonomialOrder::Kind::Lex ? MonomialOrder::lex() : MonomialOrder::degrevlex();
  return make_ring(P->field(), names, ord);
}

std::vector<Polynomial> transferred(const std::vector<Polynomial>& ps, const RingPtr& target) {
  std::vector<Polynomial> out;
  for (const auto& p : ps) out.push_back(transfer(p, target));
  return out;
}

}  // namespace

MarkedFibre marked_fibre(const RingMap& h, const RingMap& section, const std::vector<Scalar>& point) {
  const QRingPtr& S = h.source();
  const QRingPtr& R = h.target();
  if (!same_ring(section.source(), R) || !same_ring(section.target(), S))
    throw Error("section must map the total ring to the base");
  if (point.size() != S->nvars()) throw Error("point needs " + std::to_string(S->nvars()) + " coordinates");
  std::vector<bool> base = base_mask(h, "marked_fibre");
  const RingPtr& P = R->ambient();
  std::vector<std::string> names;
  std::vector<int> weights;
  for (std::size_t v = 0; v < P->nvars(); ++v)
    if (!base[v]) {
      names.push_back(P->variables()[v]);
      weights.push_back(R->weights()[v]);
    }
  MonomialOrder ord = P->order().kind() == MonomialOrder::Kind::Lex ? MonomialOrder::lex() : MonomialOrder::degrevlex();
  RingPtr Q = make_ring(P->field(), names, ord);
  std::vector<Polynomial> images(P->nvars(), Polynomial(Q));
  for (std::size_t i = 0; i < S->nvars(); ++i)
    images[static_cast<std::size_t>(h.image_variable(i))] = Polynomial::constant(Q, point[i]);
  std::vector<Polynomial> gens;
  for (std::size_t v = 0; v < P->nvars(); ++v) {
    if (base[v]) continue;
    Polynomial x = Polynomial::variable(P, v);
    Polynomial a = section.apply(x);
    images[v] = Polynomial::variable(Q, P->variables()[v]) + Polynomial::constant(Q, value_at(a, point));
    gens.push_back(x - h.apply(a));
  }
  std::vector<Polynomial> rel;
  for (const auto& g : R->relations()) rel.push_back(substitute(g, Q, images));
  QRingPtr ring = make_quotient(Q, rel, weights);
  MarkedFibre out{ring, RingMap(R, ring, images), gens, {}};
  for (const auto& g : gens) out.maximal.push_back(out.specialize.apply(g));
  return out;
}

SocleEpsilon socle_epsilon(const QRingPtr& ring, const Polynomial& x_in) {
  const auto& A = *ring;
  const RingPtr& P = A.ambient();
  const Field& k = A.field();
  SocleEpsilon out;
  out.x = A.reduce(x_in);
  Certificate& c = out.certificate;
  c.record(check("x is a nonzerodivisor", "A", is_nonzerodivisor(A, out.x), out.x.to_string()));
  if (!c.holds()) throw Error("socle_epsilon: " + out.x.to_string() + " is a zero divisor");
  std::vector<Polynomial> rel = A.relations();
  rel.push_back(out.x);
  QRingPtr B = make_quotient(P, rel, A.weights());
  int dim = lead_ideal_dimension(B->ideal());
  c.record(check("A/(x) has dimension 0", "A/(x)", dim == 0, "dimension " + std::to_string(dim)));
  if (dim != 0) throw Error("socle_epsilon: A/(x) has dimension " + std::to_string(dim));

  std::vector<Polynomial> vars;
  for (std::size_t v = 0; v < P->nvars(); ++v) vars.push_back(Polynomial::variable(P, v));
  std::vector<Polynomial> ann;
  if (vars.empty()) {
    ann.push_back(B->one());
  } else {
    Matrix syz = syzygies(*B, Matrix::column_vector(P, vars));
    for (std::size_t j = 0; j < syz.cols(); ++j) {
      Polynomial g = B->reduce(syz(0, j));
      if (!g.is_zero()) ann.push_back(g);
    }
  }
  // ann(m) is killed by m, so its generators span it over k.
  std::size_t length = span_rank(k, ann);
  out.socle = ann;
  std::string listing;
  for (std::size_t i = 0; i < ann.size(); ++i) listing += (i ? ", " : "") + ann[i].to_string();
  c.record(check("socle of A/(x) has length 1", "A/(x)", length == 1,
                 "length " + std::to_string(length) + ": {" + listing + "}"));
  if (length != 1) throw Error("socle_epsilon: socle of A/(x) has length " + std::to_string(length) + ": {" + listing + "}");

  // Prefer a monomial representative, smallest degree first and larger monomials first.
  auto in_socle = [&](const Polynomial& f) {
    if (B->is_zero(f)) return false;
    return std::all_of(vars.begin(), vars.end(), [&](const Polynomial& v) { return B->is_zero(v * f); });
  };
  auto std_terms = standard_terms(B->ideal());
  int top = 0;
  if (std_terms)
    for (const auto& t : *std_terms) top = std::max(top, total_degree(t.exponents));
  bool found = false;
  for (int d = 0; d <= top && !found; ++d)
    for (const auto& e : monomials_of_degree(P->nvars(), d)) {
      Polynomial m = Polynomial::monomial(P, e, Scalar(1));
      if (in_socle(m)) {
        out.f = m;
        found = true;
        break;
      }
    }
  if (!found)
    for (const auto& g : ann)
      if (in_socle(g)) {
        out.f = g;
        found = true;
        break;
      }
  if (!found) throw Error("internal: no socle representative");

  // ε·v = f v / x
  Matrix xm = Matrix::row_vector(P, {out.x});
  for (const auto& v : vars) {
    auto q = lift(A, Matrix::row_vector(P, {out.f * v}), xm);
    if (!q) throw Error("internal: f·v is not divisible by x");
    out.values.push_back(A.reduce((*q)(0, 0)));
  }
  out.maximal = ideal_module(ring, vars);
  FPModule Aone = FPModule::free(ring, 1);
  bool hom_ok = is_well_defined(out.maximal.module, Aone, Matrix::row_vector(P, out.values));
  c.record(check("m_ε is A-linear m -> A", "m*", hom_ok));
  if (!hom_ok) throw Error("internal: m_ε is not a homomorphism");
  out.hom = ModuleHom(out.maximal.module, Aone, Matrix::row_vector(P, out.values));

  DualModule D = dual_module(out.maximal.module);
  Matrix j = *lift(A, Matrix::column_vector(P, vars), D.generators);
  auto cv = lift(A, Matrix::column_vector(P, out.values), D.generators);
  Matrix qpres = hconcat(D.module.presentation(), j);
  FPModule Q(ring, qpres);
  std::size_t qgens = minimal_generator_count(Q);
  c.record(check("m*/A is cyclic and nonzero", "m*/A", qgens == 1, std::to_string(qgens) + " generators"));
  bool generates = cv && minimal_generator_count(FPModule(ring, hconcat(qpres, *cv))) == 0;
  c.record(check("m_ε generates m*/A", "m*/A", generates));
  return out;
}

KnudsenReport knudsen_invariants(const RingMap& h, const RingMap& section,
                                 std::vector<std::vector<Scalar>> points, int window) {
  const QRingPtr& Sring = h.source();
  const QRingPtr& ring = h.target();
  const auto& R = *ring;
  const RingPtr& P = R.ambient();
  if (!h.then(section).is_identity()) throw Error("knudsen_invariants: section is not a section of the family");
  std::vector<Scalar> origin(Sring->nvars(), Scalar(0));
  if (points.empty()) points.push_back(origin);
  KnudsenReport out;
  out.fibre = curve_fibre_certificate(h);
  if (!out.fibre.holds())
    throw Error("knudsen_invariants: closed fibre is not a 1-dimensional complete intersection\n" + out.fibre.to_string());
  MarkedFibre mf = marked_fibre(h, section, origin);
  const auto& A = *mf.ring;
  const RingPtr& Pa = A.ambient();
  for (std::size_t v = 0; v < Pa->nvars(); ++v)
    if (!A.is_zero(mf.maximal[v] - Polynomial::variable(Pa, v)))
      throw Error("knudsen_invariants: the marked point of the closed fibre must be the origin");
  out.ideal = mf.generators;
  Certificate& all = out.certificate;
  all.absorb(out.fibre, "fibre: ");

  // (i)
  IdealModule I = ideal_module(ring, out.ideal);
  FlatnessWitness fw{FlatnessWitness::Kind::IdealQuotient, out.ideal};
  out.reflexive = relative_certificate(I.module, h, points, window, fw);
  all.absorb(out.reflexive, "I: ");

  // (ii)
  DualModule D = dual_module(I.module);
  out.dual = D.module;
  out.dual_generators = D.generators;
  Matrix jcol = Matrix::column_vector(P, out.ideal);
  auto j = lift(R, jcol, D.generators);
  if (!j) throw Error("internal: R -> I* does not lift");
  Matrix qpres = hconcat(D.module.presentation(), *j);
  std::size_t nq = qpres.rows();
  bool killed = true;
  for (const auto& u : out.ideal)
    killed = killed && in_span(R, Matrix::identity(P, nq).scaled(u), qpres);
  out.quotient_free.record(check("I annihilates I*/R", "I*/R", killed));
  out.quotient = FPModule(Sring, section.apply(qpres));
  out.quotient_fitting = {fitting_ideal(out.quotient, 0), fitting_ideal(out.quotient, 1)};
  out.quotient_free.record(check("Fitt_0 = 0", "I*/R over S", is_zero_ideal(out.quotient_fitting[0]),
                                 ideal_string(out.quotient_fitting[0])));
  out.quotient_free.record(check("Fitt_1 = (1)", "I*/R over S", out.quotient_fitting[1].is_unit_ideal(),
                                 ideal_string(out.quotient_fitting[1])));
  all.absorb(out.quotient_free, "");

  // (iii)
  std::size_t m = Pa->nvars();
  std::vector<std::vector<Scalar>> choices;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Scalar> e(m, Scalar(0));
    e[i] = 1;
    choices.push_back(e);
  }
  choices.push_back(std::vector<Scalar>(m, Scalar(1)));
  std::vector<Scalar> ramp;
  for (std::size_t i = 0; i < m; ++i) ramp.push_back(Scalar(static_cast<long>(i + 1)));
  choices.push_back(ramp);
  std::optional<std::vector<Scalar>> coeff;
  for (const auto& ch : choices) {
    Polynomial x(Pa);
    for (std::size_t i = 0; i < m; ++i) x += Polynomial::variable(Pa, i).scaled(ch[i]);
    if (is_nonzerodivisor(A, x) && artinian_quotient(A, x)) {
      coeff = ch;
      break;
    }
  }
  if (!coeff) throw Error("knudsen_invariants: no linear nonzerodivisor with artinian quotient found");
  Polynomial xa(Pa);
  out.x_lift = Polynomial(P);
  for (std::size_t i = 0; i < m; ++i) {
    xa += Polynomial::variable(Pa, i).scaled((*coeff)[i]);
    out.x_lift += out.ideal[i].scaled((*coeff)[i]);
  }
  out.x_lift = R.reduce(out.x_lift);
  out.closed_epsilon = socle_epsilon(mf.ring, xa);
  all.absorb(out.closed_epsilon.certificate, "closed fibre: ");

  Matrix EA = mf.specialize.apply(D.generators);
  auto ca = lift(A, Matrix::column_vector(Pa, out.closed_epsilon.values), EA);
  if (!ca) throw Error("knudsen_invariants: I* -> m* is not onto ε");
  Matrix ct = substitute(*ca, P, out.ideal);
  Matrix psi = R.reduce(D.generators * ct);
  for (std::size_t i = 0; i < psi.rows(); ++i) out.epsilon_values.push_back(psi(i, 0));
  out.f_lift = Polynomial(P);
  for (std::size_t i = 0; i < m; ++i) out.f_lift += out.epsilon_values[i].scaled((*coeff)[i]);
  out.f_lift = R.reduce(out.f_lift);
  Certificate& e = out.epsilon;
  e.record(check("x~ is a nonzerodivisor", "R", is_nonzerodivisor(R, out.x_lift), out.x_lift.to_string()));
  bool identities = true;
  for (std::size_t i = 0; i < m; ++i)
    identities = identities && R.is_zero(out.x_lift * out.epsilon_values[i] - out.ideal[i] * out.f_lift);
  e.record(check("x~·ψ(u) = u·ψ(x~) for the generators u of I", "ψ = f~/x~",
                 identities, "f~ = " + out.f_lift.to_string()));
  bool restricts = true;
  for (std::size_t i = 0; i < m; ++i)
    restricts = restricts && A.is_zero(mf.specialize.apply(out.epsilon_values[i]) - out.closed_epsilon.values[i]);
  e.record(check("ψ restricts to ε on the closed fibre", "I* -> m*", restricts));
  bool generates = minimal_generator_count(FPModule(ring, hconcat(qpres, ct))) == 0;
  e.record(check("ψ generates I*/R at the origin", "I*/R", generates));
  all.absorb(e, "");

  out.pairing = pairing_image(I);
  out.dual_on_section = base_change(D.module, section);
  for (std::size_t i = 0; i < 3; ++i) out.section_fitting.push_back(fitting_ideal(out.dual_on_section, i));

  // (iv)
  std::vector<Polynomial> vars;
  for (std::size_t v = 0; v < m; ++v) vars.push_back(Polynomial::variable(Pa, v));
  const IdealModule& mA = out.closed_epsilon.maximal;
  out.closed_pairing = pairing_image(mA);
  out.closed_dual_dimension = minimal_generator_count(dual_module(mA.module).module);
  out.closed_regular = minimal_generator_count(mA.module) == 1;
  GroebnerBasis mideal = ideal_in(A, vars);
  Certificate& d = out.dichotomy;
  std::vector<Polynomial> me = vars;
  for (const auto& v : out.closed_epsilon.values) me.push_back(v);
  d.record(check("pairing image = m + ε·m", "closed fibre", ideal_in(A, me) == out.closed_pairing,
                 ideal_string(out.closed_pairing)));
  if (out.closed_regular) {
    d.record(check("regular: pairing image = A", "closed fibre", out.closed_pairing.is_unit_ideal(),
                   ideal_string(out.closed_pairing)));
    d.record(check("regular: dim m*⊗k = 1", "closed fibre", out.closed_dual_dimension == 1,
                   std::to_string(out.closed_dual_dimension)));
  } else {
    d.record(check("singular: pairing image = m", "closed fibre", out.closed_pairing == mideal,
                   ideal_string(out.closed_pairing)));
    d.record(check("singular: dim m*⊗k = 2", "closed fibre", out.closed_dual_dimension == 2,
                   std::to_string(out.closed_dual_dimension)));
  }
  all.absorb(d, "");
  return out;
}

PlaneCurveData knudsen_family(const Field& k, const Scalar& gamma, const Scalar& delta) {
  if (k.characteristic() == 2) throw Error("knudsen_family: characteristic 2 is not supported");
  Scalar g = k.canonical(gamma), d = k.canonical(delta);
  Scalar disc = k.sub(k.mul(g, g), k.mul(k.from_int(4), d));
  if (disc == 0) throw Error("knudsen_family: discriminant γ^2 - 4δ vanishes");
  QRingPtr S = polynomial_ring(k, {"s1", "s2"});
  QRingPtr P = polynomial_ring(k, {"s1", "s2", "x1", "x2"});
  const RingPtr& r = P->ambient();
  auto q = [&](const Polynomial& a, const Polynomial& b) {
    return a * a + (a * b).scaled(g) + (b * b).scaled(d);
  };
  Polynomial F = q(P->var("x1"), P->var("x2")) - q(P->var("s1"), P->var("s2"));
  RingMap h(S, P, {Polynomial::variable(r, "s1"), Polynomial::variable(r, "s2")});
  const RingPtr& sr = S->ambient();
  RingMap section(P, S, {Polynomial::variable(sr, "s1"), Polynomial::variable(sr, "s2"),
                         Polynomial::variable(sr, "s1"), Polynomial::variable(sr, "s2")});
  return plane_curve_mf(F, h, section).data;
}

StabilizationReport stabilization(const PlaneCurveData& d, std::vector<Scalar> point) {
  const QRingPtr& S = d.h.source();
  if (point.empty()) point.assign(S->nvars(), Scalar(0));
  if (point.size() != S->nvars()) throw Error("stabilization: point needs " + std::to_string(S->nvars()) + " coordinates");
  if (!d.P->is_polynomial_ring()) throw Error("stabilization needs the data over a polynomial ring S[x1,x2]");
  const RingPtr& Pa = d.P->ambient();
  const Field& k = Pa->field();
  std::vector<std::string> used = Pa->variables();
  StabilizationReport out{nullptr, nullptr, nullptr, d.h, d.h, nullptr, nullptr, nullptr, nullptr, {}, {}, {}, 0, 0, {}, {}, {}, {}, {}};
  out.v_name = fresh(used, "v");
  out.u_name = fresh(used, "u");
  std::string Un = fresh(used, "U"), Vn = fresh(used, "V");
  std::string at = "at " + point_string(point);

  {
    RingPtr r = with_variables(Pa, {Un, Vn});
    Polynomial U = Polynomial::variable(r, Un), V = Polynomial::variable(r, Vn);
    Polynomial F = transfer(d.F, r), X1 = transfer(d.X1, r), X2 = transfer(d.X2, r);
    Polynomial G1 = transfer(d.G1, r), G2 = transfer(d.G2, r);
    out.sym = make_quotient(r, std::vector<Polynomial>{F, X2 * U + G1 * V, G2 * V - X1 * U});
  }
  auto chart = [&](const std::string& name, bool u_chart, QRingPtr& ring, QRingPtr& poly, RingMap& hc,
                   std::vector<Polynomial>& rel) {
    RingPtr r = with_variables(Pa, {name});
    Polynomial t = Polynomial::variable(r, name);
    Polynomial X1 = transfer(d.X1, r), X2 = transfer(d.X2, r), G1 = transfer(d.G1, r), G2 = transfer(d.G2, r);
    rel = u_chart ? std::vector<Polynomial>{X2 + G1 * t, X1 - G2 * t} : std::vector<Polynomial>{X2 * t + G1, X1 * t - G2};
    ring = make_quotient(r, rel);
    poly = make_quotient(r, std::vector<Polynomial>{});
    hc = RingMap(S, ring, transferred(d.h.images(), r));
  };
  QRingPtr polyU, polyV;
  std::vector<Polynomial> relU, relV;
  chart(out.v_name, true, out.chart_U, polyU, out.h_U, relU);
  chart(out.u_name, false, out.chart_V, polyV, out.h_V, relV);
  out.closed_U = fibre_ring(out.h_U, point).ring;
  out.closed_V = fibre_ring(out.h_V, point).ring;
  out.closed_U_eliminated = eliminate(out.closed_U, {d.fibre_variables[0]});
  out.closed_V_eliminated = eliminate(out.closed_V, {d.fibre_variables[0]});

  RingMap hU(S, polyU, out.h_U.images()), hV(S, polyV, out.h_V.images());
  out.flatness.record(check("U-chart relations regular on the fibre", at, is_regular_sequence_on_fibre(relU, hU, point)));
  out.flatness.record(check("V-chart relations regular on the fibre", at, is_regular_sequence_on_fibre(relV, hV, point)));
  if (!out.flatness.holds()) throw Error("stabilization: a chart is not flat over the base\n" + out.flatness.to_string());

  // Section: V = 0, i.e. v = 0 in the U-chart.
  const RingPtr& ru = out.chart_U->ambient();
  Polynomial v = Polynomial::variable(ru, out.v_name);
  out.section_ideal = {v};
  {
    std::vector<Polynomial> a = relU;
    a.push_back(v);
    bool same = ideal_basis(ru, a) == ideal_basis(ru, {v, transfer(d.X1, ru), transfer(d.X2, ru)});
    out.section.record(check("U-chart / (v) = P / (X1, X2)", "section", same));
  }
  // The marked point of the closed fibre, in the closed U-chart.
  std::vector<Scalar> marked;
  const RingPtr& cu = out.closed_U->ambient();
  for (const auto& name : cu->variables()) {
    if (name == out.v_name) {
      marked.push_back(Scalar(0));
      continue;
    }
    Polynomial a = d.section.apply(Polynomial::variable(Pa, name));
    marked.push_back(value_at(a, point));
  }
  bool on_chart = std::all_of(out.closed_U->relations().begin(), out.closed_U->relations().end(),
                              [&](const Polynomial& g) { return value_at(g, marked) == 0; });
  int cdim = lead_ideal_dimension(out.closed_U->ideal());
  std::size_t codim = cu->nvars() - static_cast<std::size_t>(std::max(cdim, 0));
  std::vector<std::vector<Scalar>> jac;
  for (const auto& g : out.closed_U->relations()) {
    std::vector<Scalar> row;
    for (const auto& name : cu->variables()) row.push_back(value_at(differentiate(g, name), marked));
    jac.push_back(row);
  }
  bool smooth = on_chart && scalar_rank(k, jac) == codim;
  out.section.record(check("section point lies on the closed U-chart", at, on_chart, point_string(marked)));
  out.section.record(check("section point is a smooth point of the closed fibre", at, smooth));

  // Exceptional fibre.
  QRingPtr R = d.R ? d.R : make_quotient(Pa, std::vector<Polynomial>{d.F}, d.P->weights());
  RingMap hR(S, R, d.h.images());
  RingMap sR(R, S, d.section.images());
  MarkedFibre mf = marked_fibre(hR, sR, point);
  std::vector<Polynomial> vars;
  for (std::size_t i = 0; i < mf.ring->nvars(); ++i) vars.push_back(Polynomial::variable(mf.ring->ambient(), i));
  IdealModule mA = ideal_module(mf.ring, vars);
  out.exceptional_dimension = minimal_generator_count(dual_module(mA.module).module);
  auto over_point = [&](const QRingPtr& closed) {
    std::vector<Polynomial> rel = closed->relations();
    const RingPtr& r = closed->ambient();
    for (std::size_t i = 0; i < r->nvars(); ++i) {
      const std::string& name = r->variables()[i];
      if (name == out.v_name || name == out.u_name) continue;
      rel.push_back(Polynomial::variable(r, i) - Polynomial::constant(r, marked[i]));
    }
    return lead_ideal_dimension(ideal_basis(r, rel));
  };
  out.exceptional_fibre_dim = std::max(over_point(out.closed_U), over_point(out.closed_V));
  bool consistent = (out.exceptional_dimension == 2 && out.exceptional_fibre_dim == 1) ||
                    (out.exceptional_dimension == 1 && out.exceptional_fibre_dim == 0);
  out.exceptional.record(check("fibre over the marked point is P^(dim m*⊗k - 1)", at, consistent,
                               "dim m*⊗k = " + std::to_string(out.exceptional_dimension) + ", chart fibre dimension " +
                                   std::to_string(out.exceptional_fibre_dim)));

  // Gluing on U,V invertible: v w = 1 with w playing u.
  {
    std::vector<std::string> names = used;
    names.push_back(out.v_name);
    std::string w = fresh(names, "w");
    RingPtr r = with_variables(Pa, {out.v_name, w});
    Polynomial vv = Polynomial::variable(r, out.v_name), ww = Polynomial::variable(r, w);
    Polynomial inv = vv * ww - Polynomial::constant(r, 1);
    std::vector<Polynomial> a = transferred(relU, r), b;
    a.push_back(inv);
    std::vector<Polynomial> images;
    for (const auto& name : out.chart_V->ambient()->variables())
      images.push_back(name == out.u_name ? ww : Polynomial::variable(r, name));
    for (const auto& g : relV) b.push_back(substitute(g, r, images));
    b.push_back(inv);
    out.gluing.record(check("charts agree on the overlap (v = 1/u)", "gluing", ideal_basis(r, a) == ideal_basis(r, b)));
  }

  out.certificate.absorb(out.flatness, "flatness: ");
  out.certificate.absorb(out.section, "section: ");
  out.certificate.absorb(out.exceptional, "exceptional: ");
  out.certificate.absorb(out.gluing, "");
  return out;
}

GroebnerBasis rees_ideal(const QRingPtr& R, const Polynomial& a, const Polynomial& b, const QRingPtr& sym) {
  const RingPtr& target = sym->ambient();
  if (target->nvars() != R->nvars() + 2) throw Error("rees_ideal: sym must have two extra variables");
  std::string t = fresh(target->variables(), "t");
  std::vector<std::string> names = target->variables();
  names.push_back(t);
  RingPtr big = make_ring(target->field(), names);
  Polynomial tt = Polynomial::variable(big, t);
  std::vector<Polynomial> rel = transferred(R->relations(), big);
  rel.push_back(Polynomial::variable(big, R->nvars()) - transfer(a, big) * tt);
  rel.push_back(Polynomial::variable(big, R->nvars() + 1) - transfer(b, big) * tt);
  QRingPtr E = eliminate(make_quotient(big, rel), {t});
  return ideal_basis(target, transferred(E->relations(), target));
}

T1Basis versal_T1(const QRingPtr& P, const std::vector<Polynomial>& f) {
  if (!P->is_polynomial_ring()) throw Error("versal_T1 needs a polynomial ring");
  if (f.empty()) throw Error("versal_T1 needs at least one equation");
  const RingPtr& r = P->ambient();
  for (const auto& g : f)
    for (const auto& t : g.terms())
      if (total_degree(t.exponents) < 2) throw Error("versal_T1: " + g.to_string() + " is not in (x)^2");
  if (!is_regular_sequence(P, f)) throw Error("versal_T1: the equations do not form a regular sequence");
  T1Basis out;
  out.f = f;
  out.A = make_quotient(r, f, P->weights());
  out.jacobian = Matrix(r, f.size(), r->nvars());
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < r->nvars(); ++j) out.jacobian(i, j) = differentiate(f[i], r->variables()[j]);
  out.module = span_basis(*out.A, out.jacobian);
  auto terms = standard_terms(out.module);
  if (!terms) throw Error("versal_T1: A^c / im ∇f is not finite dimensional (singularity not isolated)");
  out.basis = *terms;
  for (const auto& t : out.basis) {
    if (total_degree(t.exponents) == 0) continue;
    std::vector<Polynomial> g(f.size(), Polynomial(r));
    g[t.comp] = Polynomial::monomial(r, t.exponents, Scalar(1));
    out.g.push_back(g);
  }
  return out;
}

VersalFamily versal_family(const QRingPtr& P, const std::vector<Polynomial>& f) {
  const RingPtr& r = P->ambient();
  std::vector<Polynomial> id;
  for (std::size_t v = 0; v < r->nvars(); ++v) id.push_back(Polynomial::variable(r, v));
  RingMap placeholder(P, P, id);
  VersalFamily out{versal_T1(P, f), {}, nullptr, nullptr, placeholder, {nullptr, nullptr, placeholder, placeholder, {}}};
  const Field& k = r->field();
  std::size_t m = r->nvars(), c = f.size(), N = out.t1.N();
  std::vector<std::string> used = r->variables(), s, t, z;
  for (std::size_t i = 0; i < m; ++i) s.push_back(fresh(used, "s" + std::to_string(i + 1)));
  for (std::size_t j = 0; j < N; ++j) t.push_back(fresh(used, "t" + std::to_string(j + 1)));
  for (std::size_t i = 0; i < c; ++i) z.push_back(fresh(used, "z" + std::to_string(i + 1)));
  auto cat = [](std::vector<std::string> a, const std::vector<std::string>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };

  RingPtr tx = make_ring(k, cat(t, r->variables()));
  for (std::size_t i = 0; i < c; ++i) {
    Polynomial Fi = transfer(f[i], tx);
    for (std::size_t j = 0; j < N; ++j) Fi += Polynomial::variable(tx, t[j]) * transfer(out.t1.g[j][i], tx);
    out.F.push_back(Fi);
  }

  out.unpointed_base = polynomial_ring(k, cat(t, z));
  RingPtr tzx = make_ring(k, cat(cat(t, z), r->variables()));
  std::vector<Polynomial> rel;
  for (std::size_t i = 0; i < c; ++i) rel.push_back(transfer(out.F[i], tzx) + Polynomial::variable(tzx, z[i]));
  out.unpointed_total = make_quotient(tzx, rel);
  std::vector<Polynomial> up;
  for (const auto& name : out.unpointed_base->ambient()->variables()) up.push_back(Polynomial::variable(tzx, name));
  out.unpointed = RingMap(out.unpointed_base, out.unpointed_total, up);

  PointedFamily& p = out.pointed;
  p.base = polynomial_ring(k, cat(s, t));
  RingPtr stx = make_ring(k, cat(cat(s, t), r->variables()));
  std::vector<Polynomial> at_s;
  for (const auto& name : tx->variables()) {
    auto it = std::find(r->variables().begin(), r->variables().end(), name);
    at_s.push_back(it == r->variables().end() ? Polynomial::variable(stx, name)
                                              : Polynomial::variable(stx, s[static_cast<std::size_t>(it - r->variables().begin())]));
  }
  std::vector<Polynomial> prel;
  for (const auto& Fi : out.F) prel.push_back(transfer(Fi, stx) - substitute(Fi, stx, at_s));
  p.total = make_quotient(stx, prel);
  std::vector<Polynomial> hi, sec;
  const RingPtr& br = p.base->ambient();
  for (const auto& name : br->variables()) hi.push_back(Polynomial::variable(stx, name));
  for (const auto& name : stx->variables()) {
    auto it = std::find(r->variables().begin(), r->variables().end(), name);
    sec.push_back(it == r->variables().end() ? Polynomial::variable(br, name)
                                             : Polynomial::variable(br, s[static_cast<std::size_t>(it - r->variables().begin())]));
  }
  p.h = RingMap(p.base, p.total, hi);
  p.section = RingMap(p.total, p.base, sec);
  p.certificate.record(check("x -> s is a section", "pointed family", p.h.then(p.section).is_identity()));
  std::vector<Scalar> origin(br->nvars(), Scalar(0));
  Fibre fr = fibre_ring(p.h, origin);
  bool recovers = fr.ring->ideal() == ideal_basis(fr.ring->ambient(), transferred(out.t1.A->relations(), fr.ring->ambient()));
  p.certificate.record(check("fibre over the origin is A", "pointed family", recovers));
  RingMap hp(p.base, make_quotient(stx, std::vector<Polynomial>{}), hi);
  p.certificate.record(check("equations regular on the closed fibre (flat)", "pointed family",
                             is_regular_sequence_on_fibre(prel, hp, origin)));
  return out;
}

PointedFamily pointed_versal(const QRingPtr& P, const std::vector<Polynomial>& f) {
  return versal_family(P, f).pointed;
}

PointedFamily square_construction(const RingMap& h) {
  const QRingPtr& R = h.target();
  const RingPtr& P = R->ambient();
  std::vector<bool> base = base_mask(h, "square_construction");
  std::vector<std::string> used = P->variables(), copies;
  std::vector<int> weights = R->weights();
  std::vector<std::size_t> fibre;
  for (std::size_t v = 0; v < P->nvars(); ++v)
    if (!base[v]) {
      std::string c = fresh(used, P->variables()[v] + "_");
      used.push_back(c);
      copies.push_back(c);
      fibre.push_back(v);
      weights.push_back(R->weights()[v]);
    }
  RingPtr big = with_variables(P, copies);
  std::vector<Polynomial> second(P->nvars(), Polynomial(big));
  for (std::size_t v = 0; v < P->nvars(); ++v) second[v] = Polynomial::variable(big, v);
  for (std::size_t i = 0; i < fibre.size(); ++i) second[fibre[i]] = Polynomial::variable(big, copies[i]);
  std::vector<Polynomial> rel = transferred(R->relations(), big);
  for (const auto& g : R->relations()) rel.push_back(substitute(g, big, second));
  PointedFamily out{R, make_quotient(big, rel, weights), h, h, {}};
  std::vector<Polynomial> hi, sec;
  for (std::size_t v = 0; v < P->nvars(); ++v) hi.push_back(Polynomial::variable(big, v));
  for (std::size_t v = 0; v < P->nvars(); ++v) sec.push_back(Polynomial::variable(P, v));
  for (auto v : fibre) sec.push_back(Polynomial::variable(P, v));
  out.h = RingMap(R, out.total, hi);
  out.section = RingMap(out.total, R, sec);
  out.certificate.record(check("multiplication is a section", "square", out.h.then(out.section).is_identity()));
  // Fibre over the origin of R is the closed fibre of h in the copied variables.
  Fibre f2 = fibre_ring(out.h, std::vector<Scalar>(R->nvars(), Scalar(0)));
  Fibre f1 = fibre_ring(h, std::vector<Scalar>(h.source()->nvars(), Scalar(0)));
  std::vector<Polynomial> renamed;
  const RingPtr& r1 = f1.ring->ambient();
  const RingPtr& r2 = f2.ring->ambient();
  std::vector<Polynomial> images;
  for (const auto& name : r1->variables()) {
    std::size_t i = static_cast<std::size_t>(P->index_of(name));
    std::size_t pos = static_cast<std::size_t>(std::find(fibre.begin(), fibre.end(), i) - fibre.begin());
    images.push_back(Polynomial::variable(r2, copies[pos]));
  }
  for (const auto& g : f1.ring->relations()) renamed.push_back(substitute(g, r2, images));
  out.certificate.record(check("fibre over the origin is the closed fibre of h", "square",
                               ideal_basis(r2, renamed) == f2.ring->ideal()));
  return out;
}

}  // namespace rfx
