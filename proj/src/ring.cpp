#include "rfx/ring.hpp"

#include <algorithm>
#include <numeric>

#include "rfx/error.hpp"

namespace rfx {

QuotientRing::QuotientRing(RingPtr ambient, const std::vector<Polynomial>& relations,
                           std::vector<int> weights)
    : ambient_(std::move(ambient)), weights_(std::move(weights)) {
  if (weights_.empty()) weights_.assign(ambient_->nvars(), 1);
  if (weights_.size() != ambient_->nvars()) throw Error("one weight per variable required");
  bool positive = std::all_of(weights_.begin(), weights_.end(), [](int w) { return w > 0; });
  if (!positive) throw Error("weights must be positive");
  ideal_ = ideal_basis(ambient_, relations);
  relations_ = ideal_.polynomials();
  graded_ = std::all_of(relations_.begin(), relations_.end(),
                        [&](const Polynomial& g) { return g.is_homogeneous(weights_); });
}

Polynomial QuotientRing::reduce(const Polynomial& f) const {
  if (!same_ring(f.ring(), ambient_)) throw Error("element of a different ring");
  if (relations_.empty()) return f;
  return ideal_.reduce(f);
}

Matrix QuotientRing::reduce(const Matrix& m) const {
  if (relations_.empty()) return m;
  Matrix r = m;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) r(i, j) = reduce(m(i, j));
  return r;
}

Matrix QuotientRing::relation_block(std::size_t n) const {
  Matrix b(ambient_, n, n * relations_.size());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < relations_.size(); ++k) b(i, i * relations_.size() + k) = relations_[k];
  return b;
}

std::string QuotientRing::to_string() const {
  std::string s = field().name() + "[";
  for (std::size_t i = 0; i < nvars(); ++i) s += (i ? "," : "") + ambient_->variables()[i];
  s += "]";
  if (!relations_.empty()) {
    s += "/(";
    for (std::size_t i = 0; i < relations_.size(); ++i) s += (i ? ", " : "") + relations_[i].to_string();
    s += ")";
  }
  return s;
}

bool QuotientRing::operator==(const QuotientRing& o) const {
  return *ambient_ == *o.ambient_ && weights_ == o.weights_ && relations_ == o.relations_;
}

QRingPtr make_quotient(RingPtr ambient, const std::vector<Polynomial>& relations,
                       std::vector<int> weights) {
  return std::make_shared<const QuotientRing>(std::move(ambient), relations, std::move(weights));
}

QRingPtr make_quotient(RingPtr ambient, const std::vector<std::string>& relations,
                       std::vector<int> weights) {
  std::vector<Polynomial> rel;
  for (const auto& s : relations) rel.push_back(parse_polynomial(ambient, s));
  return make_quotient(std::move(ambient), rel, std::move(weights));
}

QRingPtr polynomial_ring(Field field, std::vector<std::string> variables, MonomialOrder order) {
  return make_quotient(make_ring(field, std::move(variables), std::move(order)),
                       std::vector<Polynomial>{});
}

bool same_ring(const QRingPtr& a, const QRingPtr& b) { return a == b || (a && b && *a == *b); }

QRingPtr eliminate(const QRingPtr& R, const std::vector<std::string>& drop) {
  const RingPtr& P = R->ambient();
  std::vector<std::string> names = drop, keep;
  std::vector<int> keep_weights;
  for (std::size_t v = 0; v < P->nvars(); ++v) {
    const std::string& name = P->variables()[v];
    if (std::find(drop.begin(), drop.end(), name) == drop.end()) {
      keep.push_back(name);
      keep_weights.push_back(R->weights()[v]);
    }
  }
  if (keep.size() + drop.size() != P->nvars()) throw Error("eliminate: unknown variable");
  names.insert(names.end(), keep.begin(), keep.end());
  MonomialOrder ord = drop.empty() || keep.empty()
                          ? MonomialOrder::degrevlex()
                          : MonomialOrder::block({{MonomialOrder::Kind::DegRevLex, drop.size()},
                                                  {MonomialOrder::Kind::DegRevLex, keep.size()}});
  RingPtr big = make_ring(P->field(), names, ord);
  std::vector<Polynomial> rel;
  for (const auto& g : R->relations()) rel.push_back(transfer(g, big));
  RingPtr small = make_ring(P->field(), keep);
  std::vector<Polynomial> kept;
  for (const auto& g : ideal_basis(big, rel).polynomials()) {
    bool free_of_drop = std::all_of(g.terms().begin(), g.terms().end(), [&](const Term& t) {
      for (std::size_t v = 0; v < drop.size(); ++v)
        if (t.exponents[v] > 0) return false;
      return true;
    });
    if (free_of_drop) kept.push_back(transfer(g, small));
  }
  return make_quotient(small, kept, keep_weights);
}

RingMap::RingMap(QRingPtr source, QRingPtr target, std::vector<Polynomial> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (images_.size() != source_->nvars())
    throw Error("ring map needs " + std::to_string(source_->nvars()) + " images");
  for (auto& im : images_) im = target_->reduce(im);
  for (const auto& g : source_->relations())
    if (!apply(g).is_zero())
      throw Error("ring map is not well defined: relation " + g.to_string() + " maps to " +
                  apply(g).to_string());
}

Polynomial RingMap::apply(const Polynomial& f) const {
  return target_->reduce(substitute(f, target_->ambient(), images_));
}

Matrix RingMap::apply(const Matrix& m) const {
  Matrix r(target_->ambient(), m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) r(i, j) = apply(m(i, j));
  return r;
}

RingMap RingMap::then(const RingMap& next) const {
  std::vector<Polynomial> im;
  for (const auto& p : images_) im.push_back(next.apply(p));
  return RingMap(source_, next.target_, im);
}

bool RingMap::is_identity() const {
  if (!same_ring(source_, target_)) return false;
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (!(images_[i] == Polynomial::variable(target_->ambient(), i))) return false;
  return true;
}

int RingMap::image_variable(std::size_t i) const {
  const auto& p = images_[i];
  if (p.size() != 1 || p.lead().coeff != 1 || total_degree(p.lead().exponents) != 1) return -1;
  for (std::size_t v = 0; v < p.lead().exponents.size(); ++v)
    if (p.lead().exponents[v]) return static_cast<int>(v);
  return -1;
}

RingMap make_map(QRingPtr source, QRingPtr target, const std::vector<std::string>& images) {
  std::vector<Polynomial> im;
  for (const auto& s : images) im.push_back(target->parse(s));
  return RingMap(std::move(source), std::move(target), im);
}

namespace {

Matrix with_relations(const QuotientRing& R, const Matrix& G) {
  if (R.is_polynomial_ring()) return G;
  return hconcat(G, R.relation_block(G.rows()));
}

Matrix clean_columns(const QuotientRing& R, const Matrix& S) {
  Matrix red = R.reduce(S);
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < red.cols(); ++j) {
    if (red.column_is_zero(j)) continue;
    bool dup = false;
    for (auto k : keep) {
      bool same = true, neg = true;
      for (std::size_t i = 0; i < red.rows() && (same || neg); ++i) {
        same = same && red(i, j) == red(i, k);
        neg = neg && red(i, j) == -red(i, k);
      }
      if (same || neg) {
        dup = true;
        break;
      }
    }
    if (!dup) keep.push_back(j);
  }
  return red.select_columns(keep);
}

}  // namespace

Matrix syzygies(const QuotientRing& R, const Matrix& G) {
  if (!same_ring(G.ring(), R.ambient())) throw Error("matrix over a different ring");
  Matrix S = syzygies(with_relations(R, G));
  return clean_columns(R, S.row_range(0, G.cols()));
}

std::optional<Matrix> lift(const QuotientRing& R, const Matrix& b, const Matrix& G) {
  auto v = lift(b, with_relations(R, G));
  if (!v) return std::nullopt;
  return R.reduce(v->row_range(0, G.cols()));
}

GroebnerBasis span_basis(const QuotientRing& R, const Matrix& G) {
  return buchberger(with_relations(R, G));
}

bool in_span(const QuotientRing& R, const Matrix& b, const Matrix& G) {
  GroebnerBasis gb = span_basis(R, G);
  for (std::size_t j = 0; j < b.cols(); ++j)
    if (!gb.contains(to_sparse(b, j))) return false;
  return true;
}

std::optional<std::vector<int>> column_degrees(const QuotientRing& R, const Matrix& G,
                                               const std::vector<int>& row_degrees) {
  if (row_degrees.size() != G.rows()) throw Error("row degree count mismatch");
  std::vector<int> out(G.cols(), 0);
  for (std::size_t j = 0; j < G.cols(); ++j) {
    std::optional<int> deg;
    for (std::size_t i = 0; i < G.rows(); ++i) {
      if (G(i, j).is_zero()) continue;
      auto e = G(i, j).homogeneous_degree(R.weights());
      if (!e) return std::nullopt;
      int c = *e + row_degrees[i];
      if (deg && *deg != c) return std::nullopt;
      deg = c;
    }
    out[j] = deg.value_or(0);
  }
  return out;
}

Matrix minimal_columns(const QuotientRing& R, const Matrix& G, const Matrix& modulo,
                       const std::optional<std::vector<int>>& row_degrees) {
  Matrix C = clean_columns(R, G);
  GroebnerBasis base = span_basis(R, modulo);
  std::vector<std::size_t> cand;
  for (std::size_t j = 0; j < C.cols(); ++j)
    if (!base.contains(to_sparse(C, j))) cand.push_back(j);

  std::optional<std::vector<int>> degs;
  if (row_degrees && R.is_graded()) degs = column_degrees(R, C, *row_degrees);

  std::vector<std::size_t> kept;
  if (degs) {
    std::stable_sort(cand.begin(), cand.end(),
                     [&](std::size_t a, std::size_t b) { return (*degs)[a] < (*degs)[b]; });
    GroebnerBasis gb = base;
    for (auto j : cand) {
      if (gb.contains(to_sparse(C, j))) continue;
      kept.push_back(j);
      gb = span_basis(R, hconcat(modulo, C.select_columns(kept)));
    }
    std::sort(kept.begin(), kept.end());
    return C.select_columns(kept);
  }
  kept = cand;
  if (kept.size() > 60) return C.select_columns(kept);
  for (std::size_t t = kept.size(); t-- > 0;) {
    std::vector<std::size_t> others;
    for (std::size_t s = 0; s < kept.size(); ++s)
      if (s != t) others.push_back(kept[s]);
    if (span_basis(R, hconcat(modulo, C.select_columns(others))).contains(to_sparse(C, kept[t])))
      kept = others;
  }
  return C.select_columns(kept);
}

std::size_t rank_at_origin(const Matrix& m) {
  const Field& k = m.ring()->field();
  std::vector<std::vector<Scalar>> a(m.rows(), std::vector<Scalar>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m(i, j).constant_coefficient();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t p = rank;
    while (p < m.rows() && a[p][c] == 0) ++p;
    if (p == m.rows()) continue;
    std::swap(a[p], a[rank]);
    Scalar inv = k.inv(a[rank][c]);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == rank || a[i][c] == 0) continue;
      Scalar f = k.mul(a[i][c], inv);
      for (std::size_t j = c; j < m.cols(); ++j) a[i][j] = k.sub(a[i][j], k.mul(f, a[rank][j]));
    }
    ++rank;
  }
  return rank;
}

}  // namespace rfx
