#include "rfx/approx.hpp"

#include <algorithm>

#include "rfx/error.hpp"

namespace rfx {

namespace {

using Degrees = std::optional<std::vector<int>>;

std::vector<int> negated(const std::vector<int>& v) {
  std::vector<int> r;
  for (int x : v) r.push_back(-x);
  return r;
}

std::vector<int> concat(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

int weighted(const Exponents& e, const std::vector<int>& w) {
  int d = 0;
  for (std::size_t v = 0; v < e.size(); ++v) d += e[v] * w[v];
  return d;
}

// Keeps the terms of entry (i, j) of degree col[j] - row[i].
Matrix homogeneous_part(const QuotientRing& R, const Matrix& X, const std::vector<int>& row,
                        const std::vector<int>& col) {
  Matrix out(X.ring(), X.rows(), X.cols());
  for (std::size_t i = 0; i < X.rows(); ++i)
    for (std::size_t j = 0; j < X.cols(); ++j) {
      std::vector<Term> keep;
      for (const auto& t : X(i, j).terms())
        if (weighted(t.exponents, R.weights()) == col[j] - row[i]) keep.push_back(t);
      out(i, j) = Polynomial::from_sorted(X.ring(), keep);
    }
  return out;
}

Matrix must_lift(const QuotientRing& R, const Matrix& b, const Matrix& G, const char* what) {
  if (b.cols() == 0) return Matrix(b.ring(), G.cols(), 0);
  if (G.cols() == 0) {
    if (!R.reduce(b).is_zero()) throw Error(std::string("internal: no lift for ") + what);
    return Matrix(b.ring(), 0, b.cols());
  }
  auto x = lift(R, b, G);
  if (!x) throw Error(std::string("internal: no lift for ") + what);
  return *x;
}

struct Sub {
  FPModule module;
  Matrix gens;
};

// The submodule generated by the columns of G, presented on those columns.
FPModule presented_on(const QRingPtr& ring, const Matrix& G, const Degrees& row_degrees) {
  const auto& R = *ring;
  Degrees gdeg;
  if (row_degrees && R.is_graded()) gdeg = column_degrees(R, G, *row_degrees);
  if (G.cols() == 0) return FPModule(ring, Matrix(R.ambient(), 0, 0), std::vector<int>{});
  Matrix S = G.rows() == 0 ? Matrix::identity(R.ambient(), G.cols()) : syzygies(R, G);
  S = minimal_columns(R, S, Matrix(R.ambient(), G.cols(), 0), gdeg);
  return FPModule(ring, S, gdeg);
}

Sub kernel_of(const QRingPtr& ring, const Matrix& d, const Degrees& deg) {
  const auto& R = *ring;
  Matrix K = d.rows() == 0 ? Matrix::identity(R.ambient(), d.cols())
             : d.cols() == 0 ? Matrix(R.ambient(), 0, 0)
                             : syzygies(R, d);
  K = minimal_columns(R, K, Matrix(R.ambient(), d.cols(), 0), deg);
  return {presented_on(ring, K, deg), K};
}

// Places blocks into a matrix of the given size.
struct Block {
  std::size_t row, col;
  Matrix m;
};
Matrix assemble(const RingPtr& P, std::size_t rows, std::size_t cols, const std::vector<Block>& blocks) {
  Matrix out(P, rows, cols);
  for (const auto& b : blocks)
    for (std::size_t i = 0; i < b.m.rows(); ++i)
      for (std::size_t j = 0; j < b.m.cols(); ++j) out(b.row + i, b.col + j) = b.m(i, j);
  return out;
}

Witness check(const std::string& what, const std::string& subject, bool ok, const std::string& detail = "") {
  return {what, subject, ok, detail.empty() ? (ok ? "yes" : "no") : detail};
}

void record_exactness(Certificate& c, const ModuleHom& f, const ModuleHom& g, const std::string& name) {
  c.record(check("injective", name + " first map", f.is_injective()));
  c.record(check("exact in the middle", name, is_exact_at(f, g)));
  c.record(check("surjective", name + " second map", g.is_surjective()));
}

void record_cone_pattern(Certificate& c, const FreeComplex& C, int n, int r) {
  for (int i = C.lo() + 1; i <= std::min(n + 1, C.hi() - 1); ++i)
    c.record(vanishing("H^" + std::to_string(i) + "(C) = 0", "mapping cone", cohomology(C, i)));
  FreeComplex Cd = dual_complex(C);
  for (int i = Cd.lo() + 1; i <= std::min(r, Cd.hi() - 1); ++i)
    c.record(vanishing("H^" + std::to_string(i) + "(C^dual) = 0", "dual mapping cone", cohomology(Cd, i)));
}

Certificate stably_reflexive_or_trivial(const FPModule& M, int level) {
  if (level < 1) return {};
  return is_n_stably_reflexive(M, level);
}

}  // namespace

Witness projdim_at_most(const FPModule& L, int k) {
  std::string what = "pd <= " + std::to_string(k);
  if (k < 0) return vanishing(what, "module", L);
  FPModule omega = prune(syzygy(L, static_cast<std::size_t>(k))).module;
  bool ok = omega.is_free_presentation();
  std::string detail = "syzygy " + std::to_string(k) + (ok ? " free of rank " + std::to_string(omega.generators())
                                                           : " not free");
  return {what, "module", ok, detail};
}

ApproximationResult approximate(const FPModule& N, int n, int r, bool minimal) {
  if (n < 0 || r < 1) throw Error("approximate needs n >= 0 and r >= 1");
  const QRingPtr& ring = N.ring();
  const auto& R = *ring;
  const RingPtr& P = R.ambient();
  const int W = std::max(r, 2) + 1;
  const std::size_t un = static_cast<std::size_t>(n);

  Resolution res = free_resolution(N, un + 2, true);
  bool graded = res.graded;
  auto fdeg = [&](std::size_t j) -> const std::vector<int>& { return res.degrees[j]; };
  Degrees omega_deg;
  if (graded) omega_deg = fdeg(un);
  FPModule omega(ring, res.maps[un], omega_deg);

  ApproximationResult a;
  a.N = N;
  a.n = n;
  a.r = r;
  a.s = n + 1;
  a.hypothesis = is_n_stably_reflexive(omega, r + n);
  if (!a.hypothesis.holds())
    throw Error("approximate: syzygy " + std::to_string(n) + " is not certified " + std::to_string(r + n) +
                "-stably reflexive\n" + a.hypothesis.to_string());

  // K = ker(d^{n+1}) of P^∨, the dual of Ω^n N, resolved on its given generators by G.
  DualModule K = dual_module(omega);
  const Matrix& EK = K.generators;
  Resolution G = free_resolution(K.module, un + 1 + static_cast<std::size_t>(W), true);
  graded = graded && G.graded;
  auto g_map = [&](std::size_t j) { return G.maps[j - 1]; };  // G_j -> G_{j-1}
  auto dP = [&](int i) { return res.maps[static_cast<std::size_t>(i) - 1].transpose(); };  // F_{i-1}^* -> F_i^*

  // Q^i = (P^∨)^i ⊕ G_{n+1-i} for 1 <= i <= n, Q^{n+1} = G_0 and Q^i = G_{n+1-i} for i <= 0.
  auto prank = [&](int i) -> std::size_t { return i >= 1 && i <= n ? res.rank(static_cast<std::size_t>(i) - 1) : 0; };
  auto gidx = [&](int i) { return static_cast<std::size_t>(n + 1 - i); };
  auto qrank = [&](int i) { return prank(i) + G.rank(gidx(i)); };

  std::map<int, Matrix> mu;  // (P^∨)^i -> G_{n-i}
  if (n >= 1) {
    mu[n] = must_lift(R, dP(n), EK, "the truncation map");
    if (graded) mu[n] = homogeneous_part(R, mu[n], G.degrees[0], negated(fdeg(un - 1)));
    for (int i = n - 1; i >= 1; --i) {
      Matrix b = R.reduce(-(mu[i + 1] * dP(i)));
      std::size_t gi = un - static_cast<std::size_t>(i);
      mu[i] = must_lift(R, b, g_map(gi), "a comparison map");
      if (graded) mu[i] = homogeneous_part(R, mu[i], G.degrees[gi], negated(fdeg(static_cast<std::size_t>(i) - 1)));
    }
  }

  std::vector<std::size_t> ranks;
  std::vector<Matrix> diffs;
  std::vector<std::vector<int>> qdeg;
  for (int i = -W; i <= n + 1; ++i) {
    ranks.push_back(qrank(i));
    if (graded) {
      std::vector<int> d = prank(i) ? negated(fdeg(static_cast<std::size_t>(i) - 1)) : std::vector<int>{};
      qdeg.push_back(concat(d, G.degrees[gidx(i)]));
    }
    if (i == n + 1) break;
    std::size_t p0 = prank(i), p1 = prank(i + 1);
    std::vector<Block> blocks;
    if (p0 && p1) blocks.push_back({0, 0, dP(i)});
    if (p0) blocks.push_back({p1, 0, mu[i]});
    blocks.push_back({p1, p0, g_map(gidx(i))});
    diffs.push_back(assemble(P, qrank(i + 1), qrank(i), blocks));
  }
  std::optional<std::vector<std::vector<int>>> qdegrees;
  if (graded) qdegrees = qdeg;
  FreeComplex Q(ring, -W, ranks, diffs, qdegrees);

  FreeComplex Pdual = dual_complex(resolution_complex(res));
  std::map<int, Matrix> f;
  for (int i = 1; i <= n; ++i)
    f[i] = assemble(P, prank(i), qrank(i), {{0, 0, Matrix::identity(P, prank(i))}});
  f[n + 1] = EK;
  ComplexMap fmap(Q, Pdual, f);
  FreeComplex C = mapping_cone(fmap);

  FreeComplex D = dual_complex(Q);
  Matrix into = f[1].transpose();  // F_0 -> D^0
  if (minimal) {
    ReducedComplex rc = reduce_complex(D, 0, into);
    D = rc.complex;
    into = *rc.into;
  }

  Sub Msub = kernel_of(ring, D.differential(0), D.degrees(0));
  Sub Mpsub = kernel_of(ring, D.differential(1), D.degrees(1));
  Matrix dm1 = D.differential(-1);
  a.L = FPModule(ring, D.differential(-2), D.degrees(-1));
  a.M = Msub.module;
  a.Lp = FPModule(ring, dm1, D.degrees(0));
  a.Mp = Mpsub.module;
  a.L_to_M = ModuleHom(a.L, a.M, must_lift(R, dm1, Msub.gens, "L -> M"));
  Matrix toN = must_lift(R, Msub.gens, hconcat(into, dm1), "M -> N").row_range(0, N.generators());
  a.M_to_N = ModuleHom(a.M, N, toN);
  a.N_to_Lp = ModuleHom(N, a.Lp, into);
  a.Lp_to_Mp = ModuleHom(a.Lp, a.Mp, must_lift(R, D.differential(0), Mpsub.gens, "L' -> M'"));
  a.resolving = D;
  a.cone = C;
  return a;
}

Certificate verify(const ApproximationResult& a) {
  Certificate c;
  c.window = a.r;
  record_exactness(c, a.L_to_M, a.M_to_N, "0 -> L -> M -> N -> 0");
  record_exactness(c, a.N_to_Lp, a.Lp_to_Mp, "0 -> N -> L' -> M' -> 0");
  Witness wl = projdim_at_most(a.L, a.s - 2);
  wl.subject = "L";
  c.record(wl);
  Witness wlp = projdim_at_most(a.Lp, a.s - 1);
  wlp.subject = "L'";
  c.record(wlp);
  if (a.resolving) {
    const FreeComplex& D = *a.resolving;
    for (int i = D.lo(); i <= -1; ++i)
      c.record(vanishing("H^" + std::to_string(i) + "(Q^dual) = 0", "resolution of L and L'", cohomology(D, i)));
  }
  c.absorb(stably_reflexive_or_trivial(a.M, a.r), "M: ");
  c.absorb(stably_reflexive_or_trivial(a.Mp, a.r - 1), "M': ");
  if (a.cone) record_cone_pattern(c, *a.cone, a.n, a.r);
  return c;
}

Certificate verify(const ApproximationResult& a, const RingMap& h, const std::vector<Scalar>& point) {
  Fibre fr = fibre_ring(h, point);
  const RingMap& sp = fr.specialize;
  ApproximationResult b;
  b.n = a.n;
  b.r = a.r;
  b.s = a.s;
  b.N = base_change(a.N, sp);
  b.L_to_M = base_change(a.L_to_M, sp);
  b.M_to_N = base_change(a.M_to_N, sp);
  b.N_to_Lp = base_change(a.N_to_Lp, sp);
  b.Lp_to_Mp = base_change(a.Lp_to_Mp, sp);
  b.L = b.L_to_M.source();
  b.M = b.M_to_N.source();
  b.Lp = b.Lp_to_Mp.source();
  b.Mp = b.Lp_to_Mp.target();
  if (a.resolving) b.resolving = base_change(*a.resolving, sp);
  if (a.cone) b.cone = base_change(*a.cone, sp);
  Certificate c = verify(b);
  c.sampled_points.push_back(point);
  return c;
}

std::optional<ModuleHom> lift_through(const ModuleHom& phi, const ApproximationResult& a) {
  if (a.s > a.r)
    throw Error("lift_through needs s <= r (s = " + std::to_string(a.s) + ", r = " + std::to_string(a.r) +
                "): Ext^i(M1, L) = 0 is only known for 0 < i < r - pd L");
  if (!(phi.target() == a.N)) throw Error("lift_through: map does not end in the approximated module");
  Certificate c = is_n_stably_reflexive(phi.source(), a.r);
  if (!c.holds())
    throw Error("lift_through: source is not certified " + std::to_string(a.r) + "-stably reflexive\n" +
                c.to_string());
  return hom_lift(phi, a.M_to_N);
}

std::optional<ModuleHom> coapprox_extend(const ModuleHom& iota, const ApproximationResult& a) {
  if (a.s > a.r - 2)
    throw Error("coapprox_extend needs s <= r - 2 (s = " + std::to_string(a.s) + ", r = " +
                std::to_string(a.r) + ")");
  if (!(iota.source() == a.N)) throw Error("coapprox_extend: map does not start at the approximated module");
  Witness w = projdim_at_most(iota.target(), a.s - 1);
  if (!w.ok) throw Error("coapprox_extend: target has no certified " + w.check + ": " + w.detail);
  return hom_extend(iota, a.N_to_Lp);
}

Certificate curve_fibre_certificate(const RingMap& h) {
  Certificate c;
  Fibre closed = fibre_ring(h, std::vector<Scalar>(h.source()->nvars(), Scalar(0)));
  const auto& A = *closed.ring;
  int dim = lead_ideal_dimension(A.ideal());
  c.record(check("dimension 1", "closed fibre", dim == 1, "dimension " + std::to_string(dim)));
  std::size_t mingens = 0;
  if (!A.relations().empty()) {
    QRingPtr amb = make_quotient(A.ambient(), std::vector<Polynomial>{}, A.weights());
    mingens = minimal_generator_count(ideal_module(amb, A.relations()).module);
  }
  bool ci = dim >= 0 && mingens + static_cast<std::size_t>(dim) == A.nvars();
  c.record(check("complete intersection", "closed fibre", ci,
                 std::to_string(mingens) + " minimal relations in " + std::to_string(A.nvars()) + " variables"));
  return c;
}

PointedApproximation pointed_approximation(const RingMap& h, const RingMap& section, int r) {
  if (r < 1) throw Error("pointed_approximation needs r >= 1");
  const QRingPtr& Sring = h.source();
  const QRingPtr& ring = h.target();
  const auto& R = *ring;
  const RingPtr& P = R.ambient();
  if (!same_ring(section.source(), ring) || !same_ring(section.target(), Sring))
    throw Error("section must map the total ring to the base");
  if (!h.then(section).is_identity()) throw Error("section is not a section of the family");

  PointedApproximation out;

  out.fibre = curve_fibre_certificate(h);
  if (!out.fibre.holds()) throw Error("pointed_approximation: closed fibre is not a 1-dimensional complete intersection\n" +
                                      out.fibre.to_string());

  // I = kernel of the section, generated by v - h(section(v)).
  for (std::size_t v = 0; v < P->nvars(); ++v) {
    Polynomial x = Polynomial::variable(P, v);
    Polynomial g = R.reduce(x - h.apply(section.apply(x)));
    if (!g.is_zero()) out.ideal.push_back(g);
  }
  std::size_t k = out.ideal.size();
  if (k == 0) throw Error("pointed_approximation: the section is an isomorphism");
  IdealModule I = ideal_module(ring, out.ideal);
  DualModule Id = dual_module(I.module);
  const FPModule& Istar = Id.module;
  const Matrix& E = Id.generators;
  Matrix jcol = Matrix::column_vector(P, out.ideal);
  Matrix j = must_lift(R, jcol, E, "R -> I*");

  FPModule quotient(ring, hconcat(Istar.presentation(), j));
  Pruned pq = prune(quotient);
  FPModule S = FPModule::cyclic(ring, out.ideal);
  bool cyclic = pq.module.generators() == 1;
  if (cyclic) {
    std::vector<Polynomial> rel;
    for (std::size_t c = 0; c < pq.module.relations(); ++c) rel.push_back(pq.module.presentation()(0, c));
    cyclic = ideal_in(R, rel).polynomials() == ideal_in(R, out.ideal).polynomials();
  }
  if (!cyclic) throw Error("pointed_approximation: I*/R did not reduce to R/I");

  ApproximationResult& a = out.result;
  a.N = S;
  a.n = 1;
  a.r = r;
  a.s = 2;
  a.hypothesis = is_n_stably_reflexive(I.module, r + 1);
  a.L = FPModule::free(ring, 1);
  a.M = Istar;
  a.L_to_M = ModuleHom(a.L, Istar, j);
  a.M_to_N = ModuleHom(Istar, S, pq.to_new);

  out.Fstar = FPModule::free(ring, k);
  a.Lp = FPModule(ring, jcol);
  a.N_to_Lp = ModuleHom(S, a.Lp, R.reduce(E * pq.to_old));
  FPModule omega = presented_on(ring, I.module.presentation(), Degrees{});
  DualModule Od = dual_module(omega);
  a.Mp = Od.module;
  Matrix restrict = must_lift(R, I.module.presentation().transpose(), Od.generators, "F* -> (ΩI)*");
  a.Lp_to_Mp = ModuleHom(a.Lp, a.Mp, restrict);

  out.R_to_Fstar = ModuleHom(a.L, out.Fstar, jcol);
  out.Istar_to_Fstar = ModuleHom(Istar, out.Fstar, E);
  out.Fstar_to_Lp = ModuleHom(out.Fstar, a.Lp, Matrix::identity(P, k));
  out.Fstar_to_Mp = ModuleHom(out.Fstar, a.Mp, restrict);

  Certificate& c = out.diagram;
  auto same = [&](const ModuleHom& f, const ModuleHom& g) {
    return ModuleHom(f.source(), f.target(), f.matrix() - g.matrix()).is_zero();
  };
  c.record(check("commutes", "R -> I* -> F*", same(out.Istar_to_Fstar.compose(a.L_to_M), out.R_to_Fstar)));
  c.record(check("commutes", "I* -> S -> L' = I* -> F* -> L'",
                 same(a.N_to_Lp.compose(a.M_to_N), out.Fstar_to_Lp.compose(out.Istar_to_Fstar))));
  c.record(check("commutes", "F* -> L' -> (ΩI)*", same(a.Lp_to_Mp.compose(out.Fstar_to_Lp), out.Fstar_to_Mp)));
  record_exactness(c, a.L_to_M, a.M_to_N, "0 -> R -> I* -> S -> 0");
  record_exactness(c, out.R_to_Fstar, out.Fstar_to_Lp, "0 -> R -> F* -> L' -> 0");
  record_exactness(c, out.Istar_to_Fstar, out.Fstar_to_Mp, "0 -> I* -> F* -> (ΩI)* -> 0");
  record_exactness(c, a.N_to_Lp, a.Lp_to_Mp, "0 -> S -> L' -> (ΩI)* -> 0");
  // The square is cartesian and cocartesian: 0 -> I* -> F* ⊕ S -> L' -> 0 is exact.
  FPModule sum(ring, block_diagonal(Matrix(P, k, 0), S.presentation()));
  ModuleHom into_sum(Istar, sum, vconcat(E, pq.to_new));
  ModuleHom out_of_sum(sum, a.Lp, hconcat(Matrix::identity(P, k), -a.N_to_Lp.matrix()));
  record_exactness(c, into_sum, out_of_sum, "0 -> I* -> F* + S -> L' -> 0");
  return out;
}

}  // namespace rfx
