#include "rfx/complexes.hpp"

#include <algorithm>

#include "rfx/error.hpp"

namespace rfx {

FreeComplex::FreeComplex(QRingPtr ring, int lo, std::vector<std::size_t> ranks,
                         std::vector<Matrix> differentials,
                         std::optional<std::vector<std::vector<int>>> degrees)
    : ring_(std::move(ring)), lo_(lo), ranks_(std::move(ranks)), d_(std::move(differentials)),
      degrees_(std::move(degrees)) {
  if (ranks_.empty()) throw Error("complex needs at least one term");
  if (d_.size() + 1 != ranks_.size()) throw Error("complex needs one differential between consecutive terms");
  for (std::size_t k = 0; k < d_.size(); ++k) {
    if (d_[k].rows() != ranks_[k + 1] || d_[k].cols() != ranks_[k])
      throw Error("differential d^" + std::to_string(lo_ + static_cast<int>(k)) + " has the wrong size");
    d_[k] = ring_->reduce(d_[k]);
  }
  for (std::size_t k = 0; k + 1 < d_.size(); ++k)
    if (!ring_->reduce(d_[k + 1] * d_[k]).is_zero())
      throw Error("d^" + std::to_string(lo_ + static_cast<int>(k) + 1) + " d^" +
                  std::to_string(lo_ + static_cast<int>(k)) + " is not zero");
  if (degrees_) {
    if (!ring_->is_graded() || degrees_->size() != ranks_.size()) {
      degrees_.reset();
      return;
    }
    for (std::size_t k = 0; k < d_.size(); ++k) {
      auto cd = column_degrees(*ring_, d_[k], (*degrees_)[k + 1]);
      bool ok = cd.has_value();
      for (std::size_t j = 0; ok && j < d_[k].cols(); ++j)
        if (!d_[k].column_is_zero(j) && (*cd)[j] != (*degrees_)[k][j]) ok = false;
      if (!ok) throw Error("differential is not homogeneous for the given degrees");
    }
  }
}

FreeComplex FreeComplex::zero(QRingPtr ring, int index) {
  return FreeComplex(std::move(ring), index, {0}, {}, std::vector<std::vector<int>>{{}});
}

std::size_t FreeComplex::rank(int i) const {
  return in_window(i) ? ranks_[static_cast<std::size_t>(i - lo_)] : 0;
}

Matrix FreeComplex::differential(int i) const {
  if (i >= lo() && i < hi()) return d_[static_cast<std::size_t>(i - lo_)];
  return Matrix(ring_->ambient(), rank(i + 1), rank(i));
}

std::optional<std::vector<int>> FreeComplex::degrees(int i) const {
  if (!degrees_) return std::nullopt;
  if (!in_window(i)) return std::vector<int>{};
  return (*degrees_)[static_cast<std::size_t>(i - lo_)];
}

bool operator==(const FreeComplex& a, const FreeComplex& b) {
  return same_ring(a.ring_, b.ring_) && a.lo_ == b.lo_ && a.ranks_ == b.ranks_ && a.d_ == b.d_;
}

ComplexMap::ComplexMap(FreeComplex source, FreeComplex target, std::map<int, Matrix> maps)
    : src_(std::move(source)), tgt_(std::move(target)), maps_(std::move(maps)) {
  const auto& R = *src_.ring();
  for (auto& [i, m] : maps_) {
    if (m.rows() != tgt_.rank(i) || m.cols() != src_.rank(i))
      throw Error("complex map component " + std::to_string(i) + " has the wrong size");
    m = R.reduce(m);
  }
  int lo = std::min(src_.lo(), tgt_.lo()) - 1, hi = std::max(src_.hi(), tgt_.hi()) + 1;
  for (int i = lo; i <= hi; ++i)
    if (!R.reduce(tgt_.differential(i) * at(i) - at(i + 1) * src_.differential(i)).is_zero())
      throw Error("complex map does not commute with d^" + std::to_string(i));
}

Matrix ComplexMap::at(int i) const {
  auto it = maps_.find(i);
  if (it != maps_.end()) return it->second;
  return Matrix(src_.ring()->ambient(), tgt_.rank(i), src_.rank(i));
}

namespace {

bool homogeneous_for(const QuotientRing& R, const Matrix& d, const std::vector<int>& cols,
                     const std::vector<int>& rows) {
  auto cd = column_degrees(R, d, rows);
  if (!cd) return false;
  for (std::size_t j = 0; j < d.cols(); ++j)
    if (!d.column_is_zero(j) && (*cd)[j] != cols[j]) return false;
  return true;
}

std::vector<int> negate(std::vector<int> v) {
  for (int& x : v) x = -x;
  return v;
}

}  // namespace

FreeComplex dual_complex(const FreeComplex& E) {
  int lo = 1 - E.hi();
  std::vector<std::size_t> ranks;
  std::vector<Matrix> d;
  std::vector<std::vector<int>> deg;
  for (int i = lo; i <= 1 - E.lo(); ++i) {
    ranks.push_back(E.rank(1 - i));
    if (E.is_graded()) deg.push_back(negate(*E.degrees(1 - i)));
    if (i < 1 - E.lo()) d.push_back(E.differential(-i).transpose());
  }
  std::optional<std::vector<std::vector<int>>> degrees;
  if (E.is_graded()) degrees = deg;
  return FreeComplex(E.ring(), lo, ranks, d, degrees);
}

FPModule cohomology(const FreeComplex& E, int i) {
  const RingPtr& P = E.ring()->ambient();
  std::size_t n = E.rank(i);
  return homology_at(E.ring(), E.differential(i - 1), E.differential(i), Matrix(P, n, 0),
                     Matrix(P, E.rank(i + 1), 0), E.degrees(i));
}

FPModule ext(const FPModule& M, const FPModule& N, std::size_t i, std::size_t length) {
  if (length < i + 1)
    throw Error("Ext^" + std::to_string(i) + " needs a resolution of length at least " + std::to_string(i + 1));
  return ext(M, N, i);
}

FreeComplex mapping_cone(const ComplexMap& f) {
  const FreeComplex& Q = f.source();
  const FreeComplex& P = f.target();
  const auto& ring = Q.ring();
  const RingPtr& A = ring->ambient();
  int lo = std::min(Q.lo() - 1, P.lo()), hi = std::max(Q.hi() - 1, P.hi());
  std::vector<std::size_t> ranks;
  std::vector<Matrix> d;
  bool graded = Q.is_graded() && P.is_graded();
  std::vector<std::vector<int>> deg;
  for (int i = lo; i <= hi; ++i) {
    ranks.push_back(Q.rank(i + 1) + P.rank(i));
    if (graded) {
      auto a = *Q.degrees(i + 1), b = *P.degrees(i);
      a.insert(a.end(), b.begin(), b.end());
      deg.push_back(a);
    }
    if (i < hi) {
      Matrix top = hconcat(-Q.differential(i + 1), Matrix(A, Q.rank(i + 2), P.rank(i)));
      Matrix bottom = hconcat(f.at(i + 1), P.differential(i));
      d.push_back(vconcat(top, bottom));
      if (graded) {
        auto a = *Q.degrees(i + 2), b = *P.degrees(i + 1);
        a.insert(a.end(), b.begin(), b.end());
        graded = homogeneous_for(*ring, d.back(), deg.back(), a);
      }
    }
  }
  std::optional<std::vector<std::vector<int>>> degrees;
  if (graded) degrees = deg;
  return FreeComplex(ring, lo, ranks, d, degrees);
}

FreeComplex truncate(const FreeComplex& E, int n) {
  if (n < E.lo()) return FreeComplex::zero(E.ring(), n);
  int hi = std::min(n, E.hi());
  std::vector<std::size_t> ranks;
  std::vector<Matrix> d;
  std::vector<std::vector<int>> deg;
  for (int i = E.lo(); i <= hi; ++i) {
    ranks.push_back(E.rank(i));
    if (E.is_graded()) deg.push_back(*E.degrees(i));
    if (i < hi) d.push_back(E.differential(i));
  }
  std::optional<std::vector<std::vector<int>>> degrees;
  if (E.is_graded()) degrees = deg;
  return FreeComplex(E.ring(), E.lo(), ranks, d, degrees);
}

FreeComplex resolution_complex(const Resolution& res) {
  int len = static_cast<int>(res.maps.size());
  std::vector<std::size_t> ranks;
  std::vector<Matrix> d;
  std::vector<std::vector<int>> deg;
  for (int j = len; j >= 0; --j) {
    ranks.push_back(res.rank(static_cast<std::size_t>(j)));
    if (res.graded) deg.push_back(res.degrees[static_cast<std::size_t>(j)]);
    if (j > 0) d.push_back(res.maps[static_cast<std::size_t>(j - 1)]);
  }
  std::optional<std::vector<std::vector<int>>> degrees;
  if (res.graded) degrees = deg;
  return FreeComplex(res.ring, -len, ranks, d, degrees);
}

Splice splice(const FPModule& M, std::size_t left, std::size_t right) {
  const auto& ring = M.ring();
  DualModule dual = dual_module(M);
  Resolution P = free_resolution(M, left, true);
  Resolution Q = free_resolution(dual.module, right == 0 ? 0 : right - 1, true);
  FreeComplex left_part = resolution_complex(P);
  std::vector<std::size_t> ranks = left_part.ranks();
  std::vector<Matrix> d;
  for (int i = left_part.lo(); i < 0; ++i) d.push_back(left_part.differential(i));
  bool graded = P.graded && Q.graded && dual.module.is_graded();
  std::vector<std::vector<int>> deg;
  if (graded)
    for (int i = left_part.lo(); i <= 0; ++i) deg.push_back(*left_part.degrees(i));
  if (right > 0) {
    d.push_back(dual.generators.transpose());
    for (std::size_t i = 1; i <= right; ++i) {
      ranks.push_back(Q.rank(i - 1));
      if (graded) deg.push_back(negate(Q.degrees[i - 1]));
      if (i < right) d.push_back(Q.maps[i - 1].transpose());
    }
  }
  std::optional<std::vector<std::vector<int>>> degrees;
  if (graded) degrees = deg;
  Splice s{FreeComplex(ring, left_part.lo(), ranks, d, degrees), true};
  s.torsionless = evaluation_map(M).kernel.is_zero();
  return s;
}

FreeComplex koszul_complex(const QRingPtr& ring, const std::vector<Polynomial>& seq) {
  const RingPtr& A = ring->ambient();
  std::size_t r = seq.size();
  if (r > 16) throw Error("Koszul complex on more than 16 elements");
  // subsets of {0..r-1} of each size, in lexicographic bitmask order
  std::vector<std::vector<unsigned>> subsets(r + 1);
  for (unsigned mask = 0; mask < (1u << r); ++mask) subsets[static_cast<std::size_t>(__builtin_popcount(mask))].push_back(mask);
  std::vector<std::size_t> ranks;
  for (const auto& s : subsets) ranks.push_back(s.size());
  std::optional<std::vector<int>> fdeg;
  if (ring->is_graded()) {
    std::vector<int> dv;
    for (const auto& f : seq) {
      auto e = f.homogeneous_degree(ring->weights());
      if (!e && !f.is_zero()) break;
      dv.push_back(e.value_or(0));
    }
    if (dv.size() == r) fdeg = dv;
  }
  std::vector<Matrix> d;
  std::vector<std::vector<int>> deg;
  for (std::size_t k = 0; k <= r; ++k) {
    if (fdeg) {
      std::vector<int> dk;
      for (unsigned mask : subsets[k]) {
        int s = 0;
        for (std::size_t j = 0; j < r; ++j)
          if (mask >> j & 1u) s += (*fdeg)[j];
        dk.push_back(-s);
      }
      deg.push_back(dk);
    }
    if (k == r) break;
    Matrix m(A, subsets[k + 1].size(), subsets[k].size());
    for (std::size_t c = 0; c < subsets[k].size(); ++c) {
      unsigned S = subsets[k][c];
      for (std::size_t j = 0; j < r; ++j) {
        if (S >> j & 1u) continue;
        unsigned T = S | (1u << j);
        auto row = std::find(subsets[k + 1].begin(), subsets[k + 1].end(), T) - subsets[k + 1].begin();
        int below = __builtin_popcount(S & ((1u << j) - 1u));
        m(static_cast<std::size_t>(row), c) = below % 2 ? -seq[j] : seq[j];
      }
    }
    d.push_back(m);
  }
  std::optional<std::vector<std::vector<int>>> degrees;
  if (fdeg) degrees = deg;
  return FreeComplex(ring, 0, ranks, d, degrees);
}

bool is_regular_sequence(const QRingPtr& ring, const std::vector<Polynomial>& seq) {
  if (seq.empty()) return true;
  std::vector<Polynomial> reduced;
  for (const auto& f : seq) reduced.push_back(ring->reduce(f));
  FreeComplex K = koszul_complex(ring, reduced);
  int r = static_cast<int>(seq.size());
  for (int i = 0; i < r; ++i)
    if (!cohomology(K, i).is_zero()) return false;
  return !cohomology(K, r).is_zero();
}

bool is_regular_sequence_on_fibre(const std::vector<Polynomial>& seq, const RingMap& h,
                                  const std::vector<Scalar>& point) {
  Fibre f = fibre_ring(h, point);
  std::vector<Polynomial> s;
  for (const auto& g : seq) s.push_back(f.specialize.apply(g));
  return is_regular_sequence(f.ring, s);
}

}  // namespace rfx

namespace rfx {

bool has_unit_entries(const FreeComplex& E) {
  for (int i = E.lo(); i < E.hi(); ++i) {
    Matrix d = E.differential(i);
    for (std::size_t r = 0; r < d.rows(); ++r)
      for (std::size_t c = 0; c < d.cols(); ++c)
        if (d(r, c).is_unit_constant()) return true;
  }
  return false;
}

ReducedComplex reduce_complex(const FreeComplex& E, int k, std::optional<Matrix> into) {
  const auto& R = *E.ring();
  const RingPtr& P = R.ambient();
  const Field& F = R.field();
  int lo = E.lo();
  std::vector<std::size_t> ranks = E.ranks();
  std::vector<Matrix> d;
  for (int i = lo; i < E.hi(); ++i) d.push_back(E.differential(i));
  std::optional<std::vector<std::vector<int>>> deg;
  if (E.is_graded()) {
    deg.emplace();
    for (int i = lo; i <= E.hi(); ++i) deg->push_back(*E.degrees(i));
  }
  auto all_but = [](std::size_t n, std::size_t skip) {
    std::vector<std::size_t> v;
    for (std::size_t a = 0; a < n; ++a)
      if (a != skip) v.push_back(a);
    return v;
  };
  for (;;) {
    std::size_t pos = 0, pr = 0, pc = 0;
    bool found = false;
    for (std::size_t t = 0; t < d.size() && !found; ++t)
      for (std::size_t c = 0; c < d[t].cols() && !found; ++c)
        for (std::size_t r = 0; r < d[t].rows() && !found; ++r)
          if (d[t](r, c).is_unit_constant()) {
            pos = t;
            pr = r;
            pc = c;
            found = true;
          }
    if (!found) break;
    const Matrix& D = d[pos];
    Scalar uinv = F.inv(D(pr, pc).constant_coefficient());
    auto rows = all_but(D.rows(), pr), cols = all_but(D.cols(), pc);
    Matrix nd(P, rows.size(), cols.size());
    for (std::size_t a = 0; a < rows.size(); ++a) {
      Polynomial g = D(rows[a], pc).scaled(uinv);
      for (std::size_t b = 0; b < cols.size(); ++b) nd(a, b) = D(rows[a], cols[b]) - g * D(pr, cols[b]);
    }
    int i = lo + static_cast<int>(pos);
    if (into && k == i + 1) {
      Matrix& X = *into;
      Matrix nx(P, rows.size(), X.cols());
      for (std::size_t a = 0; a < rows.size(); ++a) {
        Polynomial g = D(rows[a], pc).scaled(uinv);
        for (std::size_t b = 0; b < X.cols(); ++b) nx(a, b) = X(rows[a], b) - g * X(pr, b);
      }
      X = R.reduce(nx);
    }
    if (into && k == i) *into = into->select_rows(cols);
    if (pos > 0) d[pos - 1] = d[pos - 1].select_rows(cols);
    if (pos + 1 < d.size()) d[pos + 1] = d[pos + 1].select_columns(rows);
    d[pos] = R.reduce(nd);
    ranks[pos] -= 1;
    ranks[pos + 1] -= 1;
    if (deg) {
      (*deg)[pos].erase((*deg)[pos].begin() + static_cast<long>(pc));
      (*deg)[pos + 1].erase((*deg)[pos + 1].begin() + static_cast<long>(pr));
    }
  }
  return {FreeComplex(E.ring(), lo, ranks, d, deg), into};
}

FreeComplex base_change(const FreeComplex& E, const RingMap& phi) {
  if (!same_ring(E.ring(), phi.source())) throw Error("base change along a map from a different ring");
  std::vector<Matrix> d;
  for (int i = E.lo(); i < E.hi(); ++i) d.push_back(phi.apply(E.differential(i)));
  std::optional<std::vector<std::vector<int>>> deg;
  if (E.is_graded() && phi.target()->is_graded()) {
    deg.emplace();
    for (int i = E.lo(); i <= E.hi(); ++i) deg->push_back(*E.degrees(i));
    for (std::size_t t = 0; t < d.size() && deg; ++t) {
      auto cd = column_degrees(*phi.target(), d[t], (*deg)[t + 1]);
      bool ok = cd.has_value();
      for (std::size_t j = 0; ok && j < d[t].cols(); ++j)
        if (!d[t].column_is_zero(j) && (*cd)[j] != (*deg)[t][j]) ok = false;
      if (!ok) deg.reset();
    }
  }
  return FreeComplex(phi.target(), E.lo(), E.ranks(), d, deg);
}

}  // namespace rfx
