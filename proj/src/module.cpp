#include "rfx/module.hpp"

#include <algorithm>
#include <deque>

#include "rfx/error.hpp"

namespace rfx {

namespace {

// Solve c_j - r_i = deg(d_ij) over the bipartite graph of nonzero entries.
std::optional<std::vector<int>> infer_degrees(const QuotientRing& R, const Matrix& d) {
  std::size_t n = d.rows(), m = d.cols();
  std::vector<std::optional<int>> row(n), col(m);
  std::vector<std::vector<std::optional<int>>> deg(n, std::vector<std::optional<int>>(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (d(i, j).is_zero()) continue;
      auto e = d(i, j).homogeneous_degree(R.weights());
      if (!e) return std::nullopt;
      deg[i][j] = e;
    }
  for (std::size_t start = 0; start < n; ++start) {
    if (row[start]) continue;
    std::vector<std::size_t> comp_rows;
    row[start] = 0;
    std::deque<std::pair<bool, std::size_t>> queue{{true, start}};
    while (!queue.empty()) {
      auto [is_row, idx] = queue.front();
      queue.pop_front();
      if (is_row) {
        comp_rows.push_back(idx);
        for (std::size_t j = 0; j < m; ++j) {
          if (!deg[idx][j]) continue;
          int want = *row[idx] + *deg[idx][j];
          if (!col[j]) {
            col[j] = want;
            queue.push_back({false, j});
          } else if (*col[j] != want) {
            return std::nullopt;
          }
        }
      } else {
        for (std::size_t i = 0; i < n; ++i) {
          if (!deg[i][idx]) continue;
          int want = *col[idx] - *deg[i][idx];
          if (!row[i]) {
            row[i] = want;
            queue.push_back({true, i});
          } else if (*row[i] != want) {
            return std::nullopt;
          }
        }
      }
    }
    int lo = 0;
    bool first = true;
    for (auto i : comp_rows) {
      if (first || *row[i] < lo) lo = *row[i];
      first = false;
    }
    for (auto i : comp_rows) row[i] = *row[i] - lo;
  }
  std::vector<int> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = *row[i];
  return out;
}

Matrix vec_of(const Matrix& X) {
  Matrix v(X.ring(), X.rows() * X.cols(), 1);
  for (std::size_t j = 0; j < X.cols(); ++j)
    for (std::size_t i = 0; i < X.rows(); ++i) v(j * X.rows() + i, 0) = X(i, j);
  return v;
}

Matrix unvec(const Matrix& v, std::size_t rows, std::size_t cols) {
  Matrix X(v.ring(), rows, cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i) X(i, j) = v(j * rows + i, 0);
  return X;
}

std::vector<int> negated(const std::vector<int>& v) {
  std::vector<int> r;
  for (int x : v) r.push_back(-x);
  return r;
}

std::optional<std::vector<int>> neg_opt(const std::optional<std::vector<int>>& v) {
  if (!v) return std::nullopt;
  return negated(*v);
}

}  // namespace

FPModule::FPModule(QRingPtr ring, Matrix presentation, std::optional<std::vector<int>> degrees)
    : ring_(std::move(ring)) {
  if (!same_ring(presentation.ring(), ring_->ambient()))
    throw Error("presentation matrix over a different ring");
  pres_ = ring_->reduce(presentation);
  if (!ring_->is_graded()) return;
  if (degrees) {
    if (degrees->size() != pres_.rows()) throw Error("one degree per generator required");
    if (!column_degrees(*ring_, pres_, *degrees))
      throw Error("presentation is not homogeneous for the given degrees");
    degrees_ = std::move(degrees);
  } else {
    degrees_ = infer_degrees(*ring_, pres_);
  }
}

FPModule FPModule::free(QRingPtr ring, std::size_t rank, std::vector<int> degrees) {
  if (degrees.empty()) degrees.assign(rank, 0);
  Matrix d(ring->ambient(), rank, 0);
  return FPModule(std::move(ring), d, degrees);
}

FPModule FPModule::cyclic(QRingPtr ring, const std::vector<Polynomial>& gens) {
  Matrix d = Matrix::row_vector(ring->ambient(), gens);
  std::optional<std::vector<int>> deg;
  if (ring->is_graded() && column_degrees(*ring, ring->reduce(d), {0})) deg = std::vector<int>{0};
  return FPModule(std::move(ring), d, deg);
}

FPModule FPModule::residue_field(QRingPtr ring) {
  std::vector<Polynomial> vars;
  for (std::size_t i = 0; i < ring->nvars(); ++i) vars.push_back(Polynomial::variable(ring->ambient(), i));
  return cyclic(std::move(ring), vars);
}

const std::vector<int>& FPModule::degrees() const {
  if (!degrees_) throw Error("module is not graded");
  return *degrees_;
}

std::vector<int> FPModule::relation_degrees() const {
  return column_degrees(*ring_, pres_, degrees()).value();
}

bool FPModule::is_zero() const {
  if (generators() == 0) return true;
  return span_basis(*ring_, pres_).is_whole_module();
}

std::string FPModule::to_string() const {
  std::string s = "coker " + pres_.to_string();
  if (pres_.cols() == 0) s = "free rank " + std::to_string(pres_.rows());
  if (degrees_) {
    s += " degrees (";
    for (std::size_t i = 0; i < degrees_->size(); ++i) s += (i ? "," : "") + std::to_string((*degrees_)[i]);
    s += ")";
  }
  return s;
}

bool operator==(const FPModule& a, const FPModule& b) {
  return same_ring(a.ring_, b.ring_) && a.pres_ == b.pres_ && a.degrees_ == b.degrees_;
}

bool is_well_defined(const FPModule& source, const FPModule& target, const Matrix& matrix) {
  if (matrix.rows() != target.generators() || matrix.cols() != source.generators()) return false;
  if (source.relations() == 0) return true;
  return in_span(*target.ring(), matrix * source.presentation(), target.presentation());
}

ModuleHom::ModuleHom(FPModule source, FPModule target, Matrix matrix)
    : src_(std::move(source)), tgt_(std::move(target)) {
  if (!same_ring(src_.ring(), tgt_.ring())) throw Error("homomorphism between modules over different rings");
  if (matrix.rows() != tgt_.generators() || matrix.cols() != src_.generators())
    throw Error("homomorphism matrix has the wrong size");
  mat_ = tgt_.ring()->reduce(matrix);
  if (!is_well_defined(src_, tgt_, mat_)) throw Error("matrix does not define a homomorphism");
}

Matrix ModuleHom::kernel_generators() const {
  const auto& R = *src_.ring();
  std::size_t n = src_.generators();
  if (tgt_.generators() == 0) return Matrix::identity(R.ambient(), n);
  Matrix S = syzygies(R, hconcat(mat_, tgt_.presentation()));
  Matrix K = S.row_range(0, n);
  return minimal_columns(R, K, src_.presentation(), src_.maybe_degrees());
}

FPModule ModuleHom::kernel() const {
  return subquotient(src_.ring(), kernel_generators(), src_.presentation(), src_.maybe_degrees());
}

FPModule ModuleHom::cokernel() const {
  Matrix d = hconcat(mat_, tgt_.presentation());
  d = minimal_columns(*tgt_.ring(), d, Matrix(d.ring(), d.rows(), 0), tgt_.maybe_degrees());
  return FPModule(tgt_.ring(), d, tgt_.maybe_degrees());
}

FPModule ModuleHom::image() const {
  return subquotient(tgt_.ring(), mat_, tgt_.presentation(), tgt_.maybe_degrees());
}

bool ModuleHom::is_injective() const {
  Matrix K = kernel_generators();
  return K.cols() == 0 || in_span(*src_.ring(), K, src_.presentation());
}

bool ModuleHom::is_surjective() const {
  if (tgt_.generators() == 0) return true;
  return span_basis(*tgt_.ring(), hconcat(mat_, tgt_.presentation())).is_whole_module();
}

bool ModuleHom::is_zero() const {
  return mat_.cols() == 0 || in_span(*tgt_.ring(), mat_, tgt_.presentation());
}

ModuleHom ModuleHom::compose(const ModuleHom& first) const {
  return ModuleHom(first.src_, tgt_, mat_ * first.mat_);
}

bool is_exact_at(const ModuleHom& f, const ModuleHom& g) {
  // im f ⊆ ker g and ker g ⊆ im f + relations
  if (!g.compose(f).is_zero()) return false;
  Matrix K = g.kernel_generators();
  if (K.cols() == 0) return true;
  return in_span(*g.source().ring(), K, hconcat(f.matrix(), g.source().presentation()));
}

FPModule subquotient(const QRingPtr& ring, const Matrix& gens, const Matrix& rels,
                     const std::optional<std::vector<int>>& row_degrees) {
  const auto& R = *ring;
  Matrix G = minimal_columns(R, gens, rels, row_degrees);
  std::optional<std::vector<int>> gdeg;
  if (row_degrees && R.is_graded()) gdeg = column_degrees(R, G, *row_degrees);
  if (G.cols() == 0) return FPModule(ring, Matrix(R.ambient(), 0, 0), std::vector<int>{});
  Matrix S = G.rows() == 0 ? Matrix::identity(R.ambient(), G.cols())
                           : syzygies(R, hconcat(G, rels)).row_range(0, G.cols());
  S = minimal_columns(R, S, Matrix(R.ambient(), G.cols(), 0), gdeg);
  return FPModule(ring, S, gdeg);
}

Pruned prune(const FPModule& M) {
  const auto& R = *M.ring();
  const RingPtr& P = R.ambient();
  Matrix d = M.presentation();
  std::size_t n0 = M.generators();
  Matrix to_new = Matrix::identity(P, n0), to_old = Matrix::identity(P, n0);
  std::optional<std::vector<int>> deg = M.maybe_degrees();
  for (;;) {
    std::size_t pi = 0, pj = 0;
    bool found = false;
    for (std::size_t j = 0; j < d.cols() && !found; ++j)
      for (std::size_t i = 0; i < d.rows() && !found; ++i)
        if (d(i, j).is_unit_constant()) {
          pi = i;
          pj = j;
          found = true;
        }
    if (!found) break;
    Scalar u = d(pi, pj).constant_coefficient();
    Scalar uinv = R.field().inv(u);
    std::size_t n = d.rows();
    // e_i = -u^{-1} sum_{k != i} d_kj e_k
    Matrix E(P, n - 1, n);
    std::vector<std::size_t> rows_keep, cols_keep;
    for (std::size_t k = 0; k < n; ++k)
      if (k != pi) rows_keep.push_back(k);
    for (std::size_t l = 0; l < d.cols(); ++l)
      if (l != pj) cols_keep.push_back(l);
    for (std::size_t a = 0; a < rows_keep.size(); ++a) {
      E(a, rows_keep[a]) = Polynomial::constant(P, 1);
      E(a, pi) = d(rows_keep[a], pj).scaled(R.field().neg(uinv));
    }
    Matrix nd(P, n, cols_keep.size());
    for (std::size_t b = 0; b < cols_keep.size(); ++b) {
      std::size_t l = cols_keep[b];
      Polynomial f = d(pi, l).scaled(uinv);
      for (std::size_t k = 0; k < n; ++k) nd(k, b) = d(k, l) - f * d(k, pj);
    }
    d = R.reduce(nd.select_rows(rows_keep));
    to_new = R.reduce(E * to_new);
    Matrix sel(P, n, n - 1);
    for (std::size_t a = 0; a < rows_keep.size(); ++a) sel(rows_keep[a], a) = Polynomial::constant(P, 1);
    to_old = to_old * sel;
    if (deg) {
      std::vector<int> nd2;
      for (auto k : rows_keep) nd2.push_back((*deg)[k]);
      deg = nd2;
    }
  }
  d = minimal_columns(R, d, Matrix(P, d.rows(), 0), deg);
  return {FPModule(M.ring(), d, deg), to_new, to_old};
}

IdealModule ideal_module(const QRingPtr& ring, const std::vector<Polynomial>& generators) {
  std::vector<Polynomial> g;
  for (const auto& f : generators) g.push_back(ring->reduce(f));
  Matrix row = Matrix::row_vector(ring->ambient(), g);
  std::optional<std::vector<int>> deg;
  if (ring->is_graded()) {
    std::vector<int> d;
    for (const auto& f : g) {
      auto e = f.homogeneous_degree(ring->weights());
      if (!e) {
        d.clear();
        break;
      }
      d.push_back(*e);
    }
    if (d.size() == g.size()) deg = d;
  }
  Matrix S = syzygies(*ring, row);
  S = minimal_columns(*ring, S, Matrix(ring->ambient(), g.size(), 0), deg);
  return {FPModule(ring, S, deg), g};
}

DualModule dual_module(const FPModule& M) {
  const QRingPtr& ring = M.ring();
  const auto& R = *ring;
  std::size_t n = M.generators();
  std::optional<std::vector<int>> dual_deg = neg_opt(M.maybe_degrees());
  Matrix K = M.relations() == 0 ? Matrix::identity(R.ambient(), n)
                                : syzygies(R, M.presentation().transpose());
  K = minimal_columns(R, K, Matrix(R.ambient(), n, 0), dual_deg);
  std::optional<std::vector<int>> kdeg;
  if (dual_deg && R.is_graded()) kdeg = column_degrees(R, K, *dual_deg);
  if (K.cols() == 0) return {FPModule(ring, Matrix(R.ambient(), 0, 0), std::vector<int>{}), K};
  Matrix S = syzygies(R, K);
  S = minimal_columns(R, S, Matrix(R.ambient(), K.cols(), 0), kdeg);
  return {FPModule(ring, S, kdeg), K};
}

FPModule transpose(const FPModule& M) {
  std::optional<std::vector<int>> deg;
  if (M.is_graded()) deg = negated(M.relation_degrees());
  return FPModule(M.ring(), M.presentation().transpose(), deg);
}

EvaluationData evaluation_map(const FPModule& M) {
  const auto& R = *M.ring();
  DualModule d1 = dual_module(M);
  DualModule d2 = dual_module(d1.module);
  Matrix sigma(R.ambient(), d2.generators.cols(), M.generators());
  if (d1.generators.cols() > 0 && d2.generators.cols() > 0) {
    auto s = lift(R, d1.generators.transpose(), d2.generators);
    if (!s) throw Error("internal: evaluation map does not factor through the double dual");
    sigma = *s;
  }
  ModuleHom hom(M, d2.module, sigma);
  FPModule ker = hom.kernel();
  FPModule cok = hom.cokernel();
  return {std::move(d1), std::move(d2), std::move(hom), std::move(ker), std::move(cok)};
}

std::size_t Resolution::rank(std::size_t i) const {
  if (i == 0) return maps.empty() ? rank0 : maps[0].rows();
  if (i - 1 < maps.size()) return maps[i - 1].cols();
  return 0;
}

std::vector<std::size_t> Resolution::betti() const {
  std::vector<std::size_t> b;
  for (std::size_t i = 0; i <= maps.size(); ++i) b.push_back(rank(i));
  return b;
}

namespace {

// Drops columns of d made redundant by unit entries of its syzygies (ungraded case).
Matrix drop_unit_syzygy_columns(const QuotientRing& R, Matrix& d) {
  for (;;) {
    Matrix S = syzygies(R, d);
    bool found = false;
    for (std::size_t c = 0; c < S.cols() && !found; ++c)
      for (std::size_t r = 0; r < S.rows() && !found; ++r)
        if (S(r, c).is_unit_constant()) {
          std::vector<std::size_t> keep;
          for (std::size_t k = 0; k < d.cols(); ++k)
            if (k != r) keep.push_back(k);
          d = d.select_columns(keep);
          found = true;
        }
    if (!found) return S;
  }
}

}  // namespace

Resolution free_resolution(const FPModule& input, std::size_t length, bool keep_generators) {
  FPModule M = input;
  if (!keep_generators) M = prune(input).module;
  const QRingPtr& ring = M.ring();
  const auto& R = *ring;
  Resolution res;
  res.ring = ring;
  res.graded = M.is_graded();
  res.rank0 = M.generators();
  if (res.graded) res.degrees.push_back(M.degrees());
  if (length == 0) return res;
  std::optional<std::vector<int>> deg = M.maybe_degrees();
  Matrix d = minimal_columns(R, M.presentation(), Matrix(R.ambient(), M.generators(), 0), deg);
  for (std::size_t step = 0; step < length; ++step) {
    if (res.graded) deg = column_degrees(R, d, res.degrees.back());
    Matrix S(R.ambient(), d.cols(), 0);
    if (step + 1 < length) {
      if (d.cols() > 0) {
        S = res.graded ? syzygies(R, d) : drop_unit_syzygy_columns(R, d);
        if (!res.graded) deg.reset();
        S = minimal_columns(R, S, Matrix(R.ambient(), d.cols(), 0), deg);
      }
    }
    res.maps.push_back(d);
    if (res.graded) res.degrees.push_back(*deg);
    d = S;
  }
  return res;
}

FPModule syzygy(const FPModule& M, std::size_t n) {
  if (n == 0) return M;
  Resolution res = free_resolution(M, n + 1);
  std::optional<std::vector<int>> deg;
  if (res.graded) deg = res.degrees[n];
  return FPModule(M.ring(), res.maps[n], deg);
}

FPModule base_change(const FPModule& M, const RingMap& phi) {
  if (!same_ring(M.ring(), phi.source())) throw Error("base change along a map from a different ring");
  Matrix d = phi.apply(M.presentation());
  const auto& T = *phi.target();
  std::optional<std::vector<int>> deg;
  if (M.is_graded() && T.is_graded() && column_degrees(T, d, M.degrees())) deg = M.degrees();
  return FPModule(phi.target(), d, deg);
}

Fibre fibre_ring(const RingMap& h, const std::vector<Scalar>& point) {
  const auto& S = *h.source();
  const auto& R = *h.target();
  if (point.size() != S.nvars())
    throw Error("point needs " + std::to_string(S.nvars()) + " coordinates");
  const RingPtr& P = R.ambient();
  const Field& k = R.field();
  std::vector<int> base_vars;
  bool plain = true;
  for (std::size_t i = 0; i < S.nvars(); ++i) {
    int v = h.image_variable(i);
    if (v < 0 || std::find(base_vars.begin(), base_vars.end(), v) != base_vars.end()) plain = false;
    base_vars.push_back(v);
  }
  if (plain) {
    std::vector<std::string> names;
    std::vector<int> weights;
    for (std::size_t v = 0; v < P->nvars(); ++v)
      if (std::find(base_vars.begin(), base_vars.end(), static_cast<int>(v)) == base_vars.end()) {
        names.push_back(P->variables()[v]);
        weights.push_back(R.weights()[v]);
      }
    MonomialOrder ord = P->order().kind() == MonomialOrder::Kind::Lex ? MonomialOrder::lex()
                                                                       : MonomialOrder::degrevlex();
    RingPtr Q = make_ring(k, names, ord);
    std::vector<Polynomial> images;
    for (std::size_t v = 0; v < P->nvars(); ++v) {
      auto it = std::find(base_vars.begin(), base_vars.end(), static_cast<int>(v));
      if (it != base_vars.end()) images.push_back(Polynomial::constant(Q, point[it - base_vars.begin()]));
      else images.push_back(Polynomial::variable(Q, P->variables()[v]));
    }
    std::vector<Polynomial> rel;
    for (const auto& g : R.relations()) rel.push_back(substitute(g, Q, images));
    QRingPtr ring = make_quotient(Q, rel, weights);
    return {ring, RingMap(h.target(), ring, images)};
  }
  std::vector<Polynomial> rel = R.relations();
  for (std::size_t i = 0; i < S.nvars(); ++i)
    rel.push_back(h.images()[i] - Polynomial::constant(P, point[i]));
  QRingPtr ring = make_quotient(P, rel, R.weights());
  std::vector<Polynomial> images;
  for (std::size_t v = 0; v < P->nvars(); ++v) images.push_back(Polynomial::variable(P, v));
  return {ring, RingMap(h.target(), ring, images)};
}

FPModule fibre(const FPModule& M, const RingMap& h, const std::vector<Scalar>& point) {
  return base_change(M, fibre_ring(h, point).specialize);
}

namespace {

using Laurent = std::map<int, mpz_class>;

void add_into(Laurent& a, const Laurent& b, int shift, int sign) {
  for (const auto& [e, c] : b) {
    mpz_class& x = a[e + shift];
    x += sign * c;
    if (x == 0) a.erase(e + shift);
  }
}

std::vector<Exponents> minimalize(std::vector<Exponents> gens) {
  std::sort(gens.begin(), gens.end(),
            [](const Exponents& a, const Exponents& b) { return total_degree(a) < total_degree(b); });
  std::vector<Exponents> out;
  for (auto& g : gens) {
    bool redundant = false;
    for (const auto& h : out)
      if (divides(h, g)) {
        redundant = true;
        break;
      }
    if (!redundant) out.push_back(std::move(g));
  }
  return out;
}

int weighted_degree(const Exponents& e, const std::vector<int>& w) {
  int d = 0;
  for (std::size_t i = 0; i < e.size(); ++i) d += e[i] * w[i];
  return d;
}

// Numerator of the Hilbert series of P / (gens) over prod (1 - t^w).
Laurent monomial_numerator(std::vector<Exponents> gens, const std::vector<int>& w) {
  gens = minimalize(std::move(gens));
  Laurent out{{0, 1}};
  if (gens.empty()) return out;
  bool pairwise = true;
  for (std::size_t a = 0; a < gens.size() && pairwise; ++a)
    for (std::size_t b = a + 1; b < gens.size() && pairwise; ++b) pairwise = coprime(gens[a], gens[b]);
  if (pairwise) {
    for (const auto& g : gens) {
      Laurent next = out;
      add_into(next, out, weighted_degree(g, w), -1);
      out = std::move(next);
    }
    return out;
  }
  Exponents m = gens.back();
  gens.pop_back();
  std::vector<Exponents> colon;
  for (const auto& g : gens) colon.push_back(quotient(lcm(g, m), m));
  out = monomial_numerator(gens, w);
  add_into(out, monomial_numerator(colon, w), weighted_degree(m, w), -1);
  return out;
}

}  // namespace

HilbertSeries hilbert_series(const FPModule& M) {
  if (!M.is_graded()) throw Error("Hilbert series needs a graded module");
  const auto& R = *M.ring();
  std::size_t n = M.generators();
  GroebnerBasis gb = span_basis(R, M.presentation());
  std::vector<std::vector<Exponents>> leads(n);
  for (const auto& v : gb.elements()) leads[v.front().comp].push_back(v.front().exponents);
  Laurent num;
  for (std::size_t i = 0; i < n; ++i)
    add_into(num, monomial_numerator(leads[i], R.weights()), M.degrees()[i], 1);
  return HilbertSeries(num, R.weights());
}

HilbertSeries hilbert_series(const QRingPtr& ring) {
  return hilbert_series(FPModule::free(ring, 1));
}

GroebnerBasis ideal_in(const QuotientRing& R, const std::vector<Polynomial>& gens) {
  std::vector<Polynomial> all = gens;
  for (const auto& g : R.relations()) all.push_back(g);
  return ideal_basis(R.ambient(), all);
}

GroebnerBasis fitting_ideal(const FPModule& M, std::size_t i) {
  const auto& R = *M.ring();
  std::size_t n = M.generators();
  if (i >= n) return ideal_basis(R.ambient(), {R.one()});
  std::size_t k = n - i;
  if (k > M.relations()) return ideal_in(R, {});
  return ideal_in(R, minors(M.presentation(), k));
}

std::optional<ModuleHom> hom_lift(const ModuleHom& phi, const ModuleHom& pi) {
  if (!(phi.target() == pi.target())) throw Error("hom_lift: maps have different targets");
  const FPModule& M1 = phi.source();
  const FPModule& M = pi.source();
  const FPModule& N = pi.target();
  const auto& R = *M.ring();
  const RingPtr& P = R.ambient();
  std::size_t n1 = M1.generators(), nM = M.generators(), nN = N.generators();
  if (n1 == 0) return ModuleHom(M1, M, Matrix(P, nM, 0));
  // vec X ranges over matrices with X d_{M1} in im d_M
  Matrix KH = Matrix::identity(P, nM * n1);
  if (M1.relations() > 0 && nM > 0) {
    Matrix A = kronecker(M1.presentation().transpose(), Matrix::identity(P, nM));
    Matrix B = kronecker(Matrix::identity(P, M1.relations()), M.presentation());
    KH = syzygies(R, hconcat(A, B)).row_range(0, nM * n1);
  }
  if (nN == 0) return ModuleHom(M1, M, unvec(KH.cols() ? KH.column(0).scaled(R.zero()) : Matrix(P, nM * n1, 1), nM, n1));
  Matrix C = kronecker(Matrix::identity(P, n1), pi.matrix()) * KH;
  Matrix D = kronecker(Matrix::identity(P, n1), N.presentation());
  auto c = lift(R, vec_of(phi.matrix()), hconcat(C, D));
  if (!c) return std::nullopt;
  Matrix X = unvec(R.reduce(KH * c->row_range(0, KH.cols())), nM, n1);
  return ModuleHom(M1, M, X);
}

std::optional<ModuleHom> hom_extend(const ModuleHom& iota, const ModuleHom& j) {
  if (!(iota.source() == j.source())) throw Error("hom_extend: maps have different sources");
  const FPModule& N = j.source();
  const FPModule& L = j.target();
  const FPModule& T = iota.target();
  const auto& R = *N.ring();
  const RingPtr& P = R.ambient();
  std::size_t nL = L.generators(), nT = T.generators(), nN = N.generators();
  if (nL == 0 || nT == 0) {
    if (!iota.is_zero()) return std::nullopt;
    return ModuleHom(L, T, Matrix(P, nT, nL));
  }
  // vec X ranges over matrices with X d_L in im d_T
  Matrix KH = Matrix::identity(P, nT * nL);
  if (L.relations() > 0) {
    Matrix A = kronecker(L.presentation().transpose(), Matrix::identity(P, nT));
    Matrix B = kronecker(Matrix::identity(P, L.relations()), T.presentation());
    KH = syzygies(R, hconcat(A, B)).row_range(0, nT * nL);
  }
  if (nN == 0) return ModuleHom(L, T, Matrix(P, nT, nL));
  Matrix C = kronecker(j.matrix().transpose(), Matrix::identity(P, nT)) * KH;
  Matrix D = kronecker(Matrix::identity(P, nN), T.presentation());
  auto c = lift(R, vec_of(iota.matrix()), hconcat(C, D));
  if (!c) return std::nullopt;
  Matrix X = unvec(R.reduce(KH * c->row_range(0, KH.cols())), nT, nL);
  return ModuleHom(L, T, X);
}

ModuleHom base_change(const ModuleHom& f, const RingMap& phi) {
  return ModuleHom(base_change(f.source(), phi), base_change(f.target(), phi), phi.apply(f.matrix()));
}

GroebnerBasis pairing_image(const IdealModule& M) {
  const auto& R = *M.module.ring();
  DualModule d = dual_module(M.module);
  std::vector<Polynomial> entries;
  for (std::size_t i = 0; i < d.generators.rows(); ++i)
    for (std::size_t j = 0; j < d.generators.cols(); ++j)
      if (!d.generators(i, j).is_zero()) entries.push_back(d.generators(i, j));
  return ideal_in(R, entries);
}

std::size_t minimal_generator_count(const FPModule& M) {
  return M.generators() - rank_at_origin(M.presentation());
}

}  // namespace rfx
