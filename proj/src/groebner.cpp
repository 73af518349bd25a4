#include "rfx/groebner.hpp"

#include <algorithm>
#include <functional>
#include <bit>
#include <set>

#include "rfx/error.hpp"

namespace rfx {

std::strong_ordering compare_terms(const MonomialOrder& ord, const VecTerm& a, const VecTerm& b) {
  auto c = ord.compare(a.exponents, b.exponents);
  if (c != 0) return c;
  return b.comp <=> a.comp;
}

SparseVec to_sparse(const Polynomial& f, std::uint32_t comp) {
  SparseVec v;
  v.reserve(f.size());
  for (const auto& t : f.terms()) v.push_back({t.exponents, comp, t.coeff});
  return v;
}

SparseVec to_sparse(const Matrix& m, std::size_t col) {
  SparseVec v;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (const auto& t : m(i, col).terms())
      v.push_back({t.exponents, static_cast<std::uint32_t>(i), t.coeff});
  const auto& ord = m.ring()->order();
  std::sort(v.begin(), v.end(),
            [&](const VecTerm& a, const VecTerm& b) { return compare_terms(ord, a, b) > 0; });
  return v;
}

std::vector<SparseVec> columns_of(const Matrix& m) {
  std::vector<SparseVec> cols;
  cols.reserve(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) cols.push_back(to_sparse(m, j));
  return cols;
}

Matrix to_matrix(const RingPtr& ring, std::size_t rank, const std::vector<SparseVec>& cols) {
  Matrix m(ring, rank, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    std::vector<std::vector<Term>> rows(rank);
    for (const auto& t : cols[j]) {
      if (t.comp >= rank) throw Error("vector component out of range");
      rows[t.comp].push_back({t.exponents, t.coeff});
    }
    for (std::size_t i = 0; i < rank; ++i)
      if (!rows[i].empty()) m(i, j) = Polynomial::from_sorted(ring, std::move(rows[i]));
  }
  return m;
}

Polynomial component(const RingPtr& ring, const SparseVec& v, std::uint32_t comp) {
  std::vector<Term> terms;
  for (const auto& t : v)
    if (t.comp == comp) terms.push_back({t.exponents, t.coeff});
  return Polynomial::from_sorted(ring, std::move(terms));
}

namespace {

// a[from..] - c * mono * b[bfrom..]
SparseVec axpy(const PolyRing& r, const SparseVec& a, std::size_t from, const SparseVec& b,
               std::size_t bfrom, const Exponents& mono, const Scalar& c) {
  const auto& k = r.field();
  const auto& ord = r.order();
  SparseVec out;
  out.reserve(a.size() - from + b.size() - bfrom);
  std::size_t i = from, j = bfrom;
  VecTerm shifted;
  bool have = false;
  auto load = [&]() {
    if (j < b.size()) {
      shifted.exponents = mul(b[j].exponents, mono);
      shifted.comp = b[j].comp;
      shifted.coeff = k.mul(b[j].coeff, c);
      have = true;
    } else {
      have = false;
    }
  };
  load();
  while (i < a.size() && have) {
    auto cmp = compare_terms(ord, a[i], shifted);
    if (cmp > 0) {
      out.push_back(a[i++]);
    } else if (cmp < 0) {
      shifted.coeff = k.neg(shifted.coeff);
      out.push_back(std::move(shifted));
      ++j;
      load();
    } else {
      Scalar s = k.sub(a[i].coeff, shifted.coeff);
      if (s != 0) out.push_back({a[i].exponents, a[i].comp, std::move(s)});
      ++i;
      ++j;
      load();
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  while (have) {
    shifted.coeff = k.neg(shifted.coeff);
    out.push_back(std::move(shifted));
    ++j;
    load();
  }
  return out;
}


Exponents one(std::size_t n) { return Exponents(n, 0); }

}  // namespace

SparseVec vec_add(const PolyRing& r, const SparseVec& a, const SparseVec& b) {
  return axpy(r, a, 0, b, 0, one(r.nvars()), r.field().from_int(-1));
}

SparseVec vec_sub(const PolyRing& r, const SparseVec& a, const SparseVec& b) {
  return axpy(r, a, 0, b, 0, one(r.nvars()), Scalar(1));
}

SparseVec vec_scale(const PolyRing& r, const SparseVec& a, const Exponents& mono,
                    const Scalar& c) {
  SparseVec out;
  if (c == 0) return out;
  out.reserve(a.size());
  for (const auto& t : a) out.push_back({mul(t.exponents, mono), t.comp, r.field().mul(t.coeff, c)});
  return out;
}

SparseVec vec_mul_poly(const PolyRing& r, const SparseVec& a, const Polynomial& f) {
  SparseVec acc;
  for (const auto& t : f.terms()) acc = axpy(r, acc, 0, a, 0, t.exponents, r.field().neg(t.coeff));
  return acc;
}

std::vector<Polynomial> GroebnerBasis::polynomials() const {
  std::vector<Polynomial> out;
  for (const auto& e : elems_) out.push_back(component(ring_, e, 0));
  return out;
}

namespace {

int find_divisor(const std::vector<SparseVec>& basis, const VecTerm& t) {
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const auto& l = basis[k].front();
    if (l.comp == t.comp && divides(l.exponents, t.exponents)) return static_cast<int>(k);
  }
  return -1;
}

}  // namespace

DivisionResult GroebnerBasis::normal_form(const SparseVec& v) const {
  const auto& r = *ring_;
  DivisionResult res;
  std::vector<std::vector<Term>> q(elems_.size());
  SparseVec p = v;
  std::size_t start = 0;
  while (start < p.size()) {
    const VecTerm& t = p[start];
    int k = find_divisor(elems_, t);
    if (k < 0) {
      res.remainder.push_back(t);
      ++start;
      continue;
    }
    const auto& g = elems_[k];
    Exponents m = quotient(t.exponents, g.front().exponents);
    Scalar c = r.field().div(t.coeff, g.front().coeff);
    q[k].push_back({m, c});
    p = axpy(r, p, start + 1, g, 1, m, c);
    start = 0;
  }
  res.quotients.reserve(elems_.size());
  for (auto& terms : q) res.quotients.push_back(Polynomial::from_terms(ring_, std::move(terms)));
  return res;
}

SparseVec GroebnerBasis::reduce(const SparseVec& v) const {
  const auto& r = *ring_;
  SparseVec rem;
  SparseVec p = v;
  std::size_t start = 0;
  while (start < p.size()) {
    const VecTerm& t = p[start];
    int k = find_divisor(elems_, t);
    if (k < 0) {
      rem.push_back(t);
      ++start;
      continue;
    }
    const auto& g = elems_[k];
    Exponents m = quotient(t.exponents, g.front().exponents);
    Scalar c = r.field().div(t.coeff, g.front().coeff);
    p = axpy(r, p, start + 1, g, 1, m, c);
    start = 0;
  }
  return rem;
}

Polynomial GroebnerBasis::reduce(const Polynomial& f) const {
  if (rank_ != 1) throw Error("polynomial reduction needs an ideal basis");
  return component(ring_, reduce(to_sparse(f, 0)), 0);
}

bool GroebnerBasis::is_unit_ideal() const {
  for (const auto& e : elems_)
    if (total_degree(e.front().exponents) == 0) return true;
  return false;
}

bool GroebnerBasis::is_whole_module() const {
  std::vector<bool> hit(rank_, false);
  for (const auto& e : elems_)
    if (total_degree(e.front().exponents) == 0) hit[e.front().comp] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

bool operator==(const GroebnerBasis& a, const GroebnerBasis& b) {
  if (a.rank_ != b.rank_ || a.elems_.size() != b.elems_.size()) return false;
  for (std::size_t i = 0; i < a.elems_.size(); ++i) {
    const auto& x = a.elems_[i];
    const auto& y = b.elems_[i];
    if (x.size() != y.size()) return false;
    for (std::size_t t = 0; t < x.size(); ++t)
      if (x[t].comp != y[t].comp || x[t].exponents != y[t].exponents || x[t].coeff != y[t].coeff)
        return false;
  }
  return true;
}

namespace {

struct Pair {
  int degree;
  VecTerm lcm;  // coefficient unused
  std::size_t i, j;
};

struct Engine {
  const PolyRing& r;
  bool track;
  std::vector<SparseVec> g, rep;

  // Top-reduce (v, w) by the current basis until the lead is irreducible.
  void top_reduce(SparseVec& v, SparseVec& w) const {
    while (!v.empty()) {
      int k = find_divisor(g, v.front());
      if (k < 0) return;
      Exponents m = quotient(v.front().exponents, g[k].front().exponents);
      Scalar c = r.field().div(v.front().coeff, g[k].front().coeff);
      v = axpy(r, v, 1, g[k], 1, m, c);
      if (track) w = axpy(r, w, 0, rep[k], 0, m, c);
    }
  }

  void make_monic(SparseVec& v, SparseVec& w) const {
    Scalar c = r.field().inv(v.front().coeff);
    if (c == 1) return;
    for (auto& t : v) t.coeff = r.field().mul(t.coeff, c);
    for (auto& t : w) t.coeff = r.field().mul(t.coeff, c);
  }
};

}  // namespace

GroebnerBasis buchberger(const RingPtr& ring, std::size_t rank, std::vector<SparseVec> gens,
                         const GroebnerOptions& opts) {
  const auto& r = *ring;
  const auto& ord = r.order();
  for (const auto& v : gens)
    for (const auto& t : v) {
      if (t.comp >= rank) throw Error("generator component out of range");
      if (t.exponents.size() != r.nvars()) throw Error("generator in the wrong ring");
    }
  Engine eng{r, opts.track_representation, {}, {}};

  auto pair_less = [&](const Pair& a, const Pair& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    auto c = compare_terms(ord, a.lcm, b.lcm);
    if (c != 0) return c < 0;
    if (a.j != b.j) return a.j < b.j;
    return a.i < b.i;
  };
  std::set<Pair, decltype(pair_less)> pairs(pair_less);

  auto add = [&](SparseVec v, SparseVec w) {
    eng.make_monic(v, w);
    std::size_t idx = eng.g.size();
    const auto& lv = v.front();
    for (std::size_t i = 0; i < idx; ++i) {
      const auto& li = eng.g[i].front();
      if (li.comp != lv.comp) continue;
      if (opts.product_criterion && rank == 1 && coprime(li.exponents, lv.exponents)) continue;
      Pair p{0, {lcm(li.exponents, lv.exponents), lv.comp, 0}, i, idx};
      p.degree = total_degree(p.lcm.exponents);
      pairs.insert(std::move(p));
    }
    eng.g.push_back(std::move(v));
    eng.rep.push_back(std::move(w));
  };

  for (std::size_t i = 0; i < gens.size(); ++i) {
    SparseVec v = gens[i];
    SparseVec w;
    if (eng.track) w.push_back({one(r.nvars()), static_cast<std::uint32_t>(i), Scalar(1)});
    eng.top_reduce(v, w);
    if (!v.empty()) add(std::move(v), std::move(w));
  }

  while (!pairs.empty()) {
    Pair p = *pairs.begin();
    pairs.erase(pairs.begin());
    const auto& gi = eng.g[p.i];
    const auto& gj = eng.g[p.j];
    Exponents mi = quotient(p.lcm.exponents, gi.front().exponents);
    Exponents mj = quotient(p.lcm.exponents, gj.front().exponents);
    SparseVec s = axpy(r, vec_scale(r, SparseVec(gi.begin() + 1, gi.end()), mi, Scalar(1)), 0, gj,
                       1, mj, Scalar(1));
    SparseVec w;
    if (eng.track)
      w = axpy(r, vec_scale(r, eng.rep[p.i], mi, Scalar(1)), 0, eng.rep[p.j], 0, mj, Scalar(1));
    eng.top_reduce(s, w);
    if (!s.empty()) add(std::move(s), std::move(w));
  }

  // minimalize
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < eng.g.size(); ++i) {
    const auto& li = eng.g[i].front();
    bool redundant = false;
    for (std::size_t j = 0; j < eng.g.size() && !redundant; ++j) {
      if (j == i) continue;
      const auto& lj = eng.g[j].front();
      if (lj.comp != li.comp || !divides(lj.exponents, li.exponents)) continue;
      redundant = lj.exponents != li.exponents || j < i;
    }
    if (!redundant) keep.push_back(i);
  }
  std::sort(keep.begin(), keep.end(), [&](std::size_t a, std::size_t b) {
    return compare_terms(ord, eng.g[a].front(), eng.g[b].front()) < 0;
  });

  // interreduce in ascending lead order: tails can only be divisible by smaller leads
  GroebnerBasis gb;
  gb.ring_ = ring;
  gb.rank_ = rank;
  gb.tracked_ = eng.track;
  gb.inputs_ = gens.size();
  for (std::size_t idx : keep) {
    SparseVec v = eng.g[idx];
    SparseVec w = eng.track ? eng.rep[idx] : SparseVec{};
    SparseVec out{v.front()};
    SparseVec p(v.begin() + 1, v.end());
    std::size_t start = 0;
    while (start < p.size()) {
      int k = find_divisor(gb.elems_, p[start]);
      if (k < 0) {
        out.push_back(p[start++]);
        continue;
      }
      const auto& g = gb.elems_[k];
      Exponents m = quotient(p[start].exponents, g.front().exponents);
      Scalar c = r.field().div(p[start].coeff, g.front().coeff);
      if (eng.track) w = axpy(r, w, 0, gb.reps_[k], 0, m, c);
      p = axpy(r, p, start + 1, g, 1, m, c);
      start = 0;
      // already-emitted terms stay; restart scanning the remaining tail
    }
    eng.make_monic(out, w);
    gb.elems_.push_back(std::move(out));
    gb.reps_.push_back(std::move(w));
  }
  return gb;
}

GroebnerBasis buchberger(const Matrix& columns, const GroebnerOptions& opts) {
  return buchberger(columns.ring(), columns.rows(), columns_of(columns), opts);
}

GroebnerBasis ideal_basis(const RingPtr& ring, const std::vector<Polynomial>& gens,
                          const GroebnerOptions& opts) {
  std::vector<SparseVec> v;
  for (const auto& f : gens) {
    if (!same_ring(f.ring(), ring)) throw Error("ideal generator in the wrong ring");
    v.push_back(to_sparse(f, 0));
  }
  return buchberger(ring, 1, std::move(v), opts);
}

namespace {

SparseVec s_vector(const PolyRing& r, const SparseVec& gi, const SparseVec& gj, Exponents& mi,
                   Exponents& mj) {
  Exponents l = lcm(gi.front().exponents, gj.front().exponents);
  mi = quotient(l, gi.front().exponents);
  mj = quotient(l, gj.front().exponents);
  Scalar ci = r.field().inv(gi.front().coeff), cj = r.field().inv(gj.front().coeff);
  SparseVec a = vec_scale(r, gi, mi, ci);
  return axpy(r, a, 0, gj, 0, mj, cj);
}

}  // namespace

bool is_groebner(const GroebnerBasis& gb) {
  const auto& e = gb.elements();
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t j = i + 1; j < e.size(); ++j) {
      if (e[i].front().comp != e[j].front().comp) continue;
      Exponents mi, mj;
      if (!gb.reduce(s_vector(*gb.ring(), e[i], e[j], mi, mj)).empty()) return false;
    }
  return true;
}

namespace {

SparseVec normalize_sign(const PolyRing& r, SparseVec v) {
  if (v.empty()) return v;
  Scalar c = r.field().inv(v.front().coeff);
  for (auto& t : v) t.coeff = r.field().mul(t.coeff, c);
  return v;
}

bool same_vec(const SparseVec& a, const SparseVec& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].comp != b[i].comp || a[i].exponents != b[i].exponents || a[i].coeff != b[i].coeff)
      return false;
  return true;
}

}  // namespace

Matrix syzygies(const Matrix& G) {
  const RingPtr& ring = G.ring();
  const auto& r = *ring;
  auto cols = columns_of(G);
  GroebnerBasis gb = buchberger(ring, G.rows(), cols, {.track_representation = true});
  const auto& e = gb.elements();
  const auto& reps = gb.representations();
  std::vector<SparseVec> out;
  auto push = [&](SparseVec v) {
    if (v.empty()) return;
    v = normalize_sign(r, std::move(v));
    for (const auto& w : out)
      if (same_vec(w, v)) return;
    out.push_back(std::move(v));
  };
  // in the coordinates of the inputs: sum_k coeff_k * rep_k
  auto convert = [&](const std::vector<std::pair<std::size_t, Polynomial>>& coeffs) {
    SparseVec acc;
    for (const auto& [k, f] : coeffs) acc = vec_add(r, acc, vec_mul_poly(r, reps[k], f));
    return acc;
  };
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t j = i + 1; j < e.size(); ++j) {
      if (e[i].front().comp != e[j].front().comp) continue;
      Exponents mi, mj;
      SparseVec s = s_vector(r, e[i], e[j], mi, mj);
      DivisionResult d = gb.normal_form(s);
      if (!d.remainder.empty()) throw Error("internal: S-vector did not reduce to zero");
      std::vector<std::pair<std::size_t, Polynomial>> coeffs;
      coeffs.push_back({i, Polynomial::monomial(ring, mi, r.field().inv(e[i].front().coeff))});
      coeffs.push_back({j, -Polynomial::monomial(ring, mj, r.field().inv(e[j].front().coeff))});
      for (std::size_t k = 0; k < d.quotients.size(); ++k)
        if (!d.quotients[k].is_zero()) coeffs.push_back({k, -d.quotients[k]});
      push(convert(coeffs));
    }
  for (std::size_t l = 0; l < cols.size(); ++l) {
    DivisionResult d = gb.normal_form(cols[l]);
    std::vector<std::pair<std::size_t, Polynomial>> coeffs;
    for (std::size_t k = 0; k < d.quotients.size(); ++k)
      if (!d.quotients[k].is_zero()) coeffs.push_back({k, d.quotients[k]});
    SparseVec unit{{one(r.nvars()), static_cast<std::uint32_t>(l), Scalar(1)}};
    push(vec_sub(r, unit, convert(coeffs)));
  }
  return to_matrix(ring, G.cols(), out);
}

std::optional<Matrix> lift(const Matrix& b, const Matrix& G) {
  if (b.rows() != G.rows()) throw Error("lift: row count mismatch");
  if (!same_ring(b.ring(), G.ring())) throw Error("lift: ring mismatch");
  const RingPtr& ring = G.ring();
  GroebnerBasis gb = buchberger(ring, G.rows(), columns_of(G), {.track_representation = true});
  std::vector<SparseVec> sols;
  for (std::size_t c = 0; c < b.cols(); ++c) {
    DivisionResult d = gb.normal_form(to_sparse(b, c));
    if (!d.remainder.empty()) return std::nullopt;
    SparseVec acc;
    for (std::size_t k = 0; k < d.quotients.size(); ++k)
      if (!d.quotients[k].is_zero())
        acc = vec_add(*ring, acc, vec_mul_poly(*ring, gb.representations()[k], d.quotients[k]));
    sols.push_back(std::move(acc));
  }
  return to_matrix(ring, G.cols(), sols);
}

int lead_ideal_dimension(const GroebnerBasis& gb) {
  if (gb.rank() != 1) throw Error("lead_ideal_dimension needs an ideal");
  if (gb.is_unit_ideal()) return -1;
  std::size_t n = gb.ring()->nvars();
  if (n > 24) throw Error("too many variables for the subset search");
  std::vector<std::uint32_t> supports;
  for (const auto& e : gb.elements()) {
    std::uint32_t s = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (e.front().exponents[i] > 0) s |= 1u << i;
    supports.push_back(s);
  }
  int best = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    int size = std::popcount(mask);
    if (size <= best) continue;
    bool ok = true;
    for (auto s : supports)
      if ((s & ~mask) == 0) {
        ok = false;
        break;
      }
    if (ok) best = size;
  }
  return best;
}

std::optional<std::vector<VecTerm>> standard_terms(const GroebnerBasis& gb) {
  const RingPtr& ring = gb.ring();
  std::size_t n = ring->nvars();
  std::vector<VecTerm> out;
  for (std::uint32_t c = 0; c < gb.rank(); ++c) {
    std::vector<Exponents> leads;
    for (const auto& e : gb.elements())
      if (e.front().comp == c) leads.push_back(e.front().exponents);
    std::vector<int> bound(n, -1);
    for (const auto& l : leads) {
      std::size_t support = 0, var = 0;
      for (std::size_t v = 0; v < n; ++v)
        if (l[v] > 0) ++support, var = v;
      if (support == 0) bound.assign(n, 0);
      if (support == 1 && (bound[var] < 0 || l[var] < bound[var])) bound[var] = l[var];
    }
    bool constant_lead = std::any_of(leads.begin(), leads.end(), [](const Exponents& l) { return total_degree(l) == 0; });
    if (constant_lead) continue;
    if (std::any_of(bound.begin(), bound.end(), [](int b) { return b < 0; })) return std::nullopt;
    Exponents e(n, 0);
    std::function<void(std::size_t)> rec = [&](std::size_t v) {
      if (v == n) {
        for (const auto& l : leads)
          if (divides(l, e)) return;
        out.push_back({e, c, Scalar(1)});
        return;
      }
      for (int k = 0; k < bound[v]; ++k) {
        e[v] = k;
        rec(v + 1);
      }
      e[v] = 0;
    };
    rec(0);
  }
  const MonomialOrder& ord = ring->order();
  std::sort(out.begin(), out.end(), [&](const VecTerm& a, const VecTerm& b) {
    int da = total_degree(a.exponents), db = total_degree(b.exponents);
    if (da != db) return da < db;
    if (a.comp != b.comp) return a.comp < b.comp;
    return ord.compare(a.exponents, b.exponents) > 0;
  });
  return out;
}

}  // namespace rfx
