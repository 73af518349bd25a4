#include "rfx/mf.hpp"

#include <algorithm>
#include <map>

#include "rfx/error.hpp"

namespace rfx {

QRingPtr MatrixFactorization::hypersurface() const {
  std::vector<Polynomial> rel = ambient->relations();
  rel.push_back(F);
  return make_quotient(ambient->ambient(), rel, ambient->weights());
}

namespace {

void check_product(const QuotientRing& T, const Matrix& A, const Matrix& B, const Polynomial& F,
                   const std::string& name) {
  Matrix prod = T.reduce(A * B);
  Polynomial f = T.reduce(F);
  for (std::size_t i = 0; i < prod.rows(); ++i)
    for (std::size_t j = 0; j < prod.cols(); ++j) {
      Polynomial want = i == j ? f : T.zero();
      if (!(prod(i, j) == want))
        throw Error(name + " differs from F*Id at entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                    "): " + prod(i, j).to_string() + " instead of " + want.to_string());
    }
}

// (F - F|_{x_v = a}) / (x_v - a), with a free of x_v.
Polynomial divided_difference(const Polynomial& F, std::size_t v, const Polynomial& a) {
  const RingPtr& ring = F.ring();
  std::map<int, std::vector<Term>> parts;
  for (const auto& t : F.terms()) {
    Term c = t;
    int k = c.exponents[v];
    c.exponents[v] = 0;
    parts[k].push_back(c);
  }
  Polynomial x = Polynomial::variable(ring, v);
  Polynomial out(ring);
  for (auto& [k, terms] : parts) {
    if (k == 0) continue;
    Polynomial c = Polynomial::from_terms(ring, terms);
    // (x^k - a^k) / (x - a) = sum_j x^j a^(k-1-j)
    Polynomial sum(ring);
    for (int j = 0; j < k; ++j) sum += x.pow(static_cast<unsigned>(j)) * a.pow(static_cast<unsigned>(k - 1 - j));
    out += c * sum;
  }
  return out;
}

Polynomial evaluate_at(const Polynomial& F, std::size_t v, const Polynomial& a) {
  const RingPtr& ring = F.ring();
  std::vector<Polynomial> images;
  for (std::size_t u = 0; u < ring->nvars(); ++u) images.push_back(u == v ? a : Polynomial::variable(ring, u));
  return substitute(F, ring, images);
}

}  // namespace

MatrixFactorization make_mf(const QRingPtr& T, const Matrix& Phi, const Matrix& Psi, const Polynomial& F) {
  if (Phi.rows() != Phi.cols() || Psi.rows() != Psi.cols() || Phi.rows() != Psi.rows())
    throw Error("matrix factorization needs square matrices of equal size");
  check_product(*T, Phi, Psi, F, "Phi*Psi");
  check_product(*T, Psi, Phi, F, "Psi*Phi");
  return {T, T->reduce(F), T->reduce(Phi), T->reduce(Psi)};
}

PlaneCurveMF plane_curve_mf(const Polynomial& F, const RingMap& h, const RingMap& section) {
  const QRingPtr& P = h.target();
  if (!P->is_polynomial_ring()) throw Error("plane_curve_mf needs F in a polynomial ring S[x1,x2]");
  if (!same_ring(section.source(), P) || !same_ring(section.target(), h.source()))
    throw Error("section must map S[x1,x2] to S");
  if (!h.then(section).is_identity()) throw Error("section is not a section of S -> S[x1,x2]");
  const RingPtr& amb = P->ambient();
  std::vector<bool> base(amb->nvars(), false);
  for (std::size_t i = 0; i < h.source()->nvars(); ++i) {
    int v = h.image_variable(i);
    if (v < 0) throw Error("plane_curve_mf needs S to map onto variables");
    base[static_cast<std::size_t>(v)] = true;
  }
  std::vector<std::size_t> fibre;
  for (std::size_t v = 0; v < amb->nvars(); ++v)
    if (!base[v]) fibre.push_back(v);
  if (fibre.size() != 2) throw Error("plane_curve_mf needs exactly two fibre variables");

  PlaneCurveData d{P, nullptr, h, section, {}, F, {}, {}, {}, {}};
  for (auto v : fibre) d.fibre_variables.push_back(amb->variables()[v]);
  Polynomial x1 = Polynomial::variable(amb, fibre[0]), x2 = Polynomial::variable(amb, fibre[1]);
  d.X1 = x1 - h.apply(section.apply(x1));
  d.X2 = x2 - h.apply(section.apply(x2));

  std::vector<Scalar> origin(h.source()->nvars(), Scalar(0));
  Fibre closed = fibre_ring(h, origin);
  if (closed.specialize.apply(F).is_zero()) throw Error("F vanishes on the closed fibre");

  // G1 = (F(x1,x2) - F(a1,x2)) / (x1 - a1), G2 = (F(a1,x2) - F(a1,a2)) / (x2 - a2)
  Polynomial a1 = x1 - d.X1, a2 = x2 - d.X2;
  Polynomial F1 = evaluate_at(F, fibre[0], a1);
  if (!evaluate_at(F1, fibre[1], a2).is_zero())
    throw Error("F is not in (X1, X2): the section does not land on the curve");
  d.G1 = divided_difference(F, fibre[0], a1);
  d.G2 = divided_difference(F1, fibre[1], a2);
  d.R = make_quotient(amb, std::vector<Polynomial>{F}, P->weights());

  Matrix Phi = Matrix::from_rows(amb, {{d.X2, d.G1}, {-d.X1, d.G2}});
  Matrix Psi = Matrix::from_rows(amb, {{d.G2, -d.G1}, {d.X1, d.X2}});
  return {d, make_mf(P, Phi, Psi, F)};
}

PlaneCurveData specialize(const PlaneCurveData& d, const std::vector<Scalar>& point) {
  Fibre fr = fibre_ring(d.h, point);
  const RingMap& sp = fr.specialize;
  const QRingPtr& S = d.h.source();
  // The base of the fibre is the ground field, modeled as the polynomial ring in no variables.
  QRingPtr k = polynomial_ring(S->field(), {});
  RingMap hk(k, fr.ring, {});
  std::vector<Polynomial> sect;
  std::vector<Polynomial> base_point;
  for (const auto& c : point) base_point.push_back(Polynomial::constant(k->ambient(), c));
  RingMap eval(S, k, base_point);
  for (const auto& name : fr.ring->ambient()->variables()) {
    Polynomial x = Polynomial::variable(d.P->ambient(), name);
    sect.push_back(eval.apply(d.section.apply(x)));
  }
  RingMap section(fr.ring, k, sect);
  PlaneCurveData out{fr.ring, nullptr, hk, section, d.fibre_variables, sp.apply(d.F), sp.apply(d.X1),
                     sp.apply(d.X2), sp.apply(d.G1), sp.apply(d.G2)};
  out.R = make_quotient(fr.ring->ambient(), std::vector<Polynomial>{out.F}, fr.ring->weights());
  return out;
}

PeriodicComplex two_periodic(const MatrixFactorization& mf, int lo, int hi, const RingMap* h,
                             const std::vector<std::vector<Scalar>>& points) {
  if (hi <= lo) throw Error("two_periodic needs a window with at least two terms");
  const QRingPtr R = mf.hypersurface();
  const auto& T = *mf.ambient;
  const RingPtr& P = T.ambient();
  std::size_t n = mf.Phi.rows();
  PeriodicComplex out;
  Certificate& c = out.certificate;
  c.window = hi - lo;

  auto product_ok = [&](const Matrix& A, const Matrix& B) {
    return T.reduce(A * B) == T.reduce(Matrix::identity(P, n).scaled(mf.F));
  };
  c.record({"Phi*Psi = F*Id", "factorization", product_ok(mf.Phi, mf.Psi), "over the ambient ring"});
  c.record({"Psi*Phi = F*Id", "factorization", product_ok(mf.Psi, mf.Phi), "over the ambient ring"});
  bool nzd = !T.is_zero(mf.F) && (T.is_polynomial_ring() || syzygies(T, Matrix::row_vector(P, {mf.F})).cols() == 0);
  c.record({"F is a nonzerodivisor", "ambient ring", nzd, nzd ? "annihilator of F is zero" : "F has a nonzero annihilator"});

  std::vector<std::size_t> ranks(static_cast<std::size_t>(hi - lo + 1), n);
  std::vector<Matrix> d;
  for (int i = lo; i < hi; ++i) d.push_back(i % 2 != 0 ? mf.Phi : mf.Psi);
  std::optional<std::vector<std::vector<int>>> deg;
  if (R->is_graded()) {
    FPModule coker(R, mf.Phi);
    auto F_deg = mf.F.homogeneous_degree(R->weights());
    if (coker.is_graded() && F_deg) {
      std::vector<int> e0 = coker.degrees();
      auto e1 = column_degrees(*R, R->reduce(mf.Phi), e0);  // degrees of E^{-1}
      if (e1) {
        deg.emplace();
        for (int i = lo; i <= hi; ++i) {
          // E^{2k} = E^0 - k deg F, E^{2k-1} = E^{-1} - k deg F
          bool even = i % 2 == 0;
          const std::vector<int>& base = even ? e0 : *e1;
          int shift = even ? i / 2 : (i + 1) / 2;
          std::vector<int> row;
          for (int x : base) row.push_back(x - shift * *F_deg);
          deg->push_back(row);
        }
      }
    }
  }
  try {
    out.complex = FreeComplex(R, lo, ranks, d, deg);
  } catch (const Error&) {
    out.complex = FreeComplex(R, lo, ranks, d);
  }
  for (int i = lo + 1; i < hi; ++i)
    c.record(vanishing("H^" + std::to_string(i) + " = 0", "periodic complex", cohomology(out.complex, i)));
  if (h) {
    for (const auto& p : points) {
      bool ok = is_regular_sequence_on_fibre({mf.F}, *h, p);
      std::string at = "(";
      for (std::size_t q = 0; q < p.size(); ++q) at += (q ? "," : "") + p[q].get_str();
      at += ")";
      c.record({"F regular on the fibre", "fibre at " + at, ok, ok ? "yes" : "F is a zero divisor there"});
      c.sampled_points.push_back(p);
    }
  }
  return out;
}

Certificate cokernel_is_section_ideal(const PlaneCurveMF& p) {
  const auto& R = *p.data.R;
  const RingPtr& amb = R.ambient();
  Matrix syz = syzygies(R, Matrix::row_vector(amb, {p.data.X1, p.data.X2}));
  Matrix Phi = R.reduce(p.mf.Phi);
  Certificate c;
  c.record({"relations of (X1,X2) lie in the columns of Phi", "R", in_span(R, syz, Phi), ""});
  c.record({"columns of Phi are relations of (X1,X2)", "R", in_span(R, Phi, syz), ""});
  return c;
}

}  // namespace rfx
