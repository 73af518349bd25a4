#pragma once

// Seeded property cases shared by the unit suites and the acceptance runner. Each case
// returns a CaseResult instead of using gtest assertions.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "support.hpp"
#include "rfx/complexes.hpp"
#include "rfx/groebner.hpp"
#include "rfx/module.hpp"
#include "rfx/reflexivity.hpp"

namespace rfx::testing::props {

struct CaseResult {
  bool ok = true;
  bool exercised = true;  // false when the implication's hypothesis did not hold
  std::string detail;
  std::vector<std::string> notes;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

inline QRingPtr quotient(const std::vector<std::string>& vars, const std::vector<std::string>& rels) {
  return make_quotient(make_ring(Field::rationals(), vars), rels);
}

inline std::vector<QRingPtr> graded_rings() {
  return {quotient({"x", "y"}, {"x*y"}), quotient({"x", "y"}, {}), quotient({"x", "y"}, {"x^2"}),
          quotient({"x", "y", "u", "v"}, {"x*y-u*v"})};
}

template <class T>
const T& pick(std::mt19937& rng, const std::vector<T>& v) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

inline int uniform(std::mt19937& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

// coker of a random homogeneous matrix; generators in degrees 0 or 1.
inline FPModule random_graded_module(const QRingPtr& R, std::mt19937& rng) {
  const RingPtr& A = R->ambient();
  std::size_t n = static_cast<std::size_t>(uniform(rng, 1, 2));
  std::size_t m = static_cast<std::size_t>(uniform(rng, 1, 3));
  std::vector<int> rows(n), cols(m);
  for (auto& d : rows) d = uniform(rng, 0, 1);
  int top = *std::max_element(rows.begin(), rows.end());
  for (auto& d : cols) d = top + uniform(rng, 1, 2);
  Matrix P(A, n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (uniform(rng, 0, 3) > 0) P(i, j) = random_homogeneous(A, rng, uniform(rng, 1, 2), cols[j] - rows[i]);
  return FPModule(R, P, rows);
}

inline bool reduces_to_zero(const QuotientRing& R, const Matrix& m) { return R.reduce(m).is_zero(); }

// Buchberger confluence (basis independent of generator order and S-pairs reduce to 0),
// idempotent normal forms, division identity, syzygy annihilation and lifting.
inline CaseResult groebner_case(unsigned seed) {
  CaseResult r;
  std::mt19937 rng(seed);
  auto ring = make_ring(Field::rationals(), {"x", "y", "z"});
  int n = uniform(rng, 1, 2), m = uniform(rng, 1, 3);
  Matrix G(ring, static_cast<std::size_t>(n), static_cast<std::size_t>(m));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) G(i, j) = random_poly(ring, rng, 2, 2);
  auto gb = buchberger(G);
  r.require(is_groebner(gb), "module basis fails the S-pair criterion");

  std::vector<Polynomial> gens;
  for (int k = uniform(rng, 2, 4); k > 0; --k) gens.push_back(random_poly(ring, rng, 3, 3));
  auto first = ideal_basis(ring, gens);
  std::vector<Polynomial> shuffled = gens;
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  shuffled.push_back(gens[0] * random_poly(ring, rng, 2, 1) + gens.back());
  r.require(is_groebner(first), "ideal basis fails the S-pair criterion");
  r.require(first == ideal_basis(ring, shuffled), "reduced basis depends on the generators");

  Matrix v(ring, static_cast<std::size_t>(n), 1);
  for (int i = 0; i < n; ++i) v(i, 0) = random_poly(ring, rng, 3, 3);
  SparseVec once = gb.reduce(to_sparse(v, 0));
  SparseVec twice = gb.reduce(once);
  r.require(to_matrix(ring, static_cast<std::size_t>(n), {once}) == to_matrix(ring, static_cast<std::size_t>(n), {twice}),
            "normal form is not idempotent");
  auto d = gb.normal_form(to_sparse(v, 0));
  SparseVec rebuilt = d.remainder;
  for (std::size_t k = 0; k < gb.size(); ++k)
    rebuilt = vec_add(*ring, rebuilt, vec_mul_poly(*ring, gb.elements()[k], d.quotients[k]));
  r.require(to_matrix(ring, static_cast<std::size_t>(n), {rebuilt}) == v, "division identity fails");

  Matrix S = syzygies(G);
  r.require((G * S).is_zero(), "syzygies do not annihilate");
  Matrix coeff(ring, static_cast<std::size_t>(m), 1);
  for (int j = 0; j < m; ++j) coeff(j, 0) = random_poly(ring, rng, 2, 2);
  Matrix target = G * coeff;
  auto l = lift(target, G);
  r.require(l && G * *l == target, "lift of a combination fails");
  return r;
}

// The resolution of a random graded module as a complex F_len -> ... -> F_0 in indices -len..0.
inline FreeComplex resolution_complex(const FPModule& M, std::size_t len) {
  Resolution res = free_resolution(M, len);
  std::vector<std::size_t> ranks;
  std::vector<Matrix> diffs;
  for (std::size_t k = res.maps.size(); k-- > 0;) diffs.push_back(res.maps[k]);
  for (std::size_t k = res.maps.size() + 1; k-- > 0;) ranks.push_back(res.rank(k));
  return FreeComplex(M.ring(), -static_cast<int>(res.maps.size()), ranks, diffs);
}

// d^2 = 0 on resolutions, their duals and complexes built from syzygies; E^∨∨ = E.
inline CaseResult complex_case(unsigned seed) {
  CaseResult r;
  std::mt19937 rng(seed);
  auto rings = graded_rings();
  const QRingPtr& R = pick(rng, rings);
  FPModule M = random_graded_module(R, rng);
  FreeComplex E = resolution_complex(M, 3);
  FreeComplex D = dual_complex(E);
  for (const FreeComplex* C : {&E, &D})
    for (int i = C->lo(); i + 1 < C->hi(); ++i)
      r.require(reduces_to_zero(*R, C->differential(i + 1) * C->differential(i)),
                "d^2 != 0 at index " + std::to_string(i));
  r.require(dual_complex(D) == E, "double dual of a resolution differs");

  const RingPtr& A = R->ambient();
  std::size_t a = static_cast<std::size_t>(uniform(rng, 1, 3)), b = static_cast<std::size_t>(uniform(rng, 1, 3));
  Matrix d1(A, a, b);
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = 0; j < b; ++j) d1(i, j) = random_poly(A, rng, 2, 2);
  Matrix d0 = syzygies(*R, d1);
  FreeComplex K(R, -1, {d0.cols(), b, a}, {d0, d1});
  r.require(reduces_to_zero(*R, K.differential(0) * K.differential(-1)), "d^2 != 0 on a syzygy complex");
  r.require(dual_complex(dual_complex(K)) == K, "double dual of a syzygy complex differs");
  return r;
}

// ker σ_M and coker σ_M have the Hilbert series of Ext^1 and Ext^2 of the transpose.
// Exercised means σ_M is not an isomorphism.
inline CaseResult canonical_iso_case(unsigned seed) {
  CaseResult r;
  std::mt19937 rng(seed);
  auto rings = graded_rings();
  const QRingPtr& R = pick(rng, rings);
  FPModule M = random_graded_module(R, rng);
  EvaluationData ev = evaluation_map(M);
  auto e = ext_modules(transpose(M), FPModule::free(R, 1), 2);
  r.exercised = !ev.kernel.is_zero() || !ev.cokernel.is_zero();
  r.require(hilbert_series(ev.kernel) == hilbert_series(e[1]),
            "ker sigma " + hilbert_series(ev.kernel).to_string() + " vs Ext^1(D(M),A) " +
                hilbert_series(e[1]).to_string() + " for " + M.to_string());
  r.require(hilbert_series(ev.cokernel) == hilbert_series(e[2]),
            "coker sigma " + hilbert_series(ev.cokernel).to_string() + " vs Ext^2(D(M),A) " +
                hilbert_series(e[2]).to_string() + " for " + M.to_string());
  return r;
}

// 0 -> M1 -> M2 -> M3 -> 0 with M2 presented by [[a, psi], [0, d1]] over a = pres(M1) and a
// presentation d1 of M3; psi is a random cocycle (psi d2 in the image of a), or 0.
struct Extension {
  FPModule m1, m2, m3;
  ModuleHom iota, pi;
  bool split = true;
};

// The first four are reflexive over the node; they are drawn three times out of four.
inline std::vector<FPModule> extension_pool(const QRingPtr& R) {
  const RingPtr& A = R->ambient();
  auto p = [&](const std::vector<std::vector<std::string>>& rows) { return FPModule(R, Matrix::parse(A, rows)); };
  return {FPModule::free(R, 1), p({{"y"}}), p({{"x"}}), p({{"y", "0"}, {"0", "x"}}), p({{"x", "y"}}),
          p({{"x+y"}}), p({{"x^2"}}), FPModule::free(R, 2), p({{"y", "x^2"}})};
}

inline FPModule pick_module(std::mt19937& rng, const std::vector<FPModule>& pool) {
  int hi = uniform(rng, 0, 3) > 0 ? 3 : static_cast<int>(pool.size()) - 1;
  return pool[static_cast<std::size_t>(uniform(rng, 0, hi))];
}

inline Extension random_extension(const QRingPtr& R, std::mt19937& rng) {
  const RingPtr& A = R->ambient();
  auto pool = extension_pool(R);
  FPModule m1 = pick_module(rng, pool), m3 = pick_module(rng, pool);
  Resolution res = free_resolution(m3, 2, true);
  Matrix d1 = res.maps[0];
  Matrix d2 = res.maps.size() > 1 ? res.maps[1] : Matrix(A, d1.cols(), 0);
  const std::vector<int>& f0 = res.degrees[0];
  const std::vector<int>& f1 = res.degrees[1];
  m3 = FPModule(R, d1, f0);
  std::size_t g0 = m1.generators();
  // shift M1 so that every entry of psi has a nonnegative degree
  int shift = 0;
  if (!f1.empty()) shift = *std::min_element(f1.begin(), f1.end()) - uniform(rng, 0, 1);
  std::vector<int> deg1 = m1.degrees();
  int top = deg1.empty() ? 0 : *std::max_element(deg1.begin(), deg1.end());
  for (auto& d : deg1) d += shift - top;
  m1 = FPModule(R, m1.presentation(), deg1);

  Matrix psi(A, g0, d1.cols());
  bool split = true;
  for (int attempt = 0; attempt < 6; ++attempt) {
    Matrix trial(A, g0, d1.cols());
    for (std::size_t i = 0; i < g0; ++i)
      for (std::size_t j = 0; j < d1.cols(); ++j) {
        int deg = f1[j] - deg1[i];
        if (deg >= 0 && uniform(rng, 0, 2) > 0) trial(i, j) = random_homogeneous(A, rng, uniform(rng, 1, 2), deg);
      }
    if (trial.is_zero()) continue;
    Matrix obstruction = R->reduce(trial * d2);
    bool cocycle = obstruction.is_zero() ||
                   (m1.relations() > 0 && in_span(*R, obstruction, m1.presentation()));
    if (cocycle) {
      psi = trial;
      split = false;
      break;
    }
  }
  std::size_t r1 = m1.relations(), n3 = d1.rows(), c3 = d1.cols();
  Matrix P(A, g0 + n3, r1 + c3);
  for (std::size_t i = 0; i < g0; ++i) {
    for (std::size_t j = 0; j < r1; ++j) P(i, j) = m1.presentation()(i, j);
    for (std::size_t j = 0; j < c3; ++j) P(i, r1 + j) = psi(i, j);
  }
  for (std::size_t i = 0; i < n3; ++i)
    for (std::size_t j = 0; j < c3; ++j) P(g0 + i, r1 + j) = d1(i, j);
  std::vector<int> deg2 = deg1;
  deg2.insert(deg2.end(), f0.begin(), f0.end());
  FPModule m2(R, P, deg2);
  Matrix inc(A, g0 + n3, g0), proj(A, n3, g0 + n3);
  for (std::size_t i = 0; i < g0; ++i) inc(i, i) = Polynomial::constant(A, 1);
  for (std::size_t i = 0; i < n3; ++i) proj(i, g0 + i) = Polynomial::constant(A, 1);
  return {m1, m2, m3, ModuleHom(m1, m2, inc), ModuleHom(m2, m3, proj), split};
}

inline std::vector<QRingPtr> extension_rings() {
  return {quotient({"x", "y"}, {"x*y"}), quotient({"x", "y"}, {"x^2"})};
}

inline CaseResult exact_extension(const Extension& e) {
  CaseResult r;
  r.require(e.iota.is_injective(), "M1 -> M2 is not injective");
  r.require(e.pi.is_surjective(), "M2 -> M3 is not surjective");
  r.require(is_exact_at(e.iota, e.pi), "extension is not exact in the middle");
  return r;
}

// With M1, M3 n-stably reflexive so is M2; with M2, M3 n-stably reflexive (n > 1) M1 is
// (n-1)-stably reflexive.
inline CaseResult two_of_three_case(unsigned seed, bool* nonsplit = nullptr) {
  std::mt19937 rng(seed);
  auto rings = extension_rings();
  const QRingPtr& R = pick(rng, rings);
  Extension e = random_extension(R, rng);
  if (nonsplit) *nonsplit = !e.split;
  CaseResult r = exact_extension(e);
  int n = uniform(rng, 1, 3);
  bool s1 = is_n_stably_reflexive(e.m1, n).holds();
  bool s2 = is_n_stably_reflexive(e.m2, n).holds();
  bool s3 = is_n_stably_reflexive(e.m3, n).holds();
  r.exercised = false;
  if (s1 && s3) {
    r.exercised = true;
    r.require(s2, "M1, M3 are " + std::to_string(n) + "-stably reflexive but M2 = " + e.m2.to_string() + " is not");
  }
  if (n > 1 && s2 && s3) {
    r.exercised = true;
    r.require(is_n_stably_reflexive(e.m1, n - 1).holds(),
              "M2, M3 are " + std::to_string(n) + "-stably reflexive but M1 = " + e.m1.to_string() + " is not " +
                  std::to_string(n - 1) + "-stably reflexive");
  }
  return r;
}

// 0 -> M3* -> M2* -> M1* -> D(M3) -> D(M2) -> D(M1) -> 0 for the compatible presentations,
// checked through the alternating sum of Hilbert series when Ext^1(M3, A) = 0.
inline CaseResult transpose_sequence_case(unsigned seed) {
  std::mt19937 rng(seed);
  auto rings = extension_rings();
  const QRingPtr& R = pick(rng, rings);
  Extension e = random_extension(R, rng);
  CaseResult r = exact_extension(e);
  r.exercised = ext(e.m3, FPModule::free(R, 1), 1).is_zero();
  if (!r.exercised) return r;
  auto h = [](const FPModule& M) { return hilbert_series(M); };
  HilbertSeries even = h(dual_module(e.m3).module) + h(dual_module(e.m1).module) + h(transpose(e.m2));
  HilbertSeries odd = h(dual_module(e.m2).module) + h(transpose(e.m3)) + h(transpose(e.m1));
  r.require(even == odd, "alternating Hilbert series sum is nonzero: " + even.to_string() + " vs " + odd.to_string());
  r.require(transpose(e.m2).generators() == transpose(e.m1).generators() + transpose(e.m3).generators(),
            "transpose ranks are not additive");
  return r;
}

}  // namespace rfx::testing::props
