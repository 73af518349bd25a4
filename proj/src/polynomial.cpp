#include "rfx/polynomial.hpp"

#include <algorithm>
#include <set>

#include "rfx/error.hpp"

namespace rfx {

PolyRing::PolyRing(Field field, std::vector<std::string> variables, MonomialOrder order)
    : field_(field), vars_(std::move(variables)), order_(std::move(order)) {
  std::set<std::string> seen;
  for (const auto& v : vars_) {
    if (v.empty()) throw Error("empty variable name");
    if (!seen.insert(v).second) throw Error("duplicate variable name '" + v + "'");
  }
  if (order_.kind() == MonomialOrder::Kind::Block && order_.block_span() != vars_.size())
    throw Error("block order covers " + std::to_string(order_.block_span()) + " of " +
                std::to_string(vars_.size()) + " variables");
}

int PolyRing::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return static_cast<int>(i);
  return -1;
}

RingPtr make_ring(Field field, std::vector<std::string> variables, MonomialOrder order) {
  return std::make_shared<const PolyRing>(field, std::move(variables), std::move(order));
}

bool same_ring(const RingPtr& a, const RingPtr& b) {
  return a == b || (a && b && *a == *b);
}

namespace {

std::vector<Term> merge(const Field& k, const MonomialOrder& ord, const std::vector<Term>& a,
                        const std::vector<Term>& b, bool subtract) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    auto c = ord.compare(a[i].exponents, b[j].exponents);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back({b[j].exponents, subtract ? k.neg(b[j].coeff) : b[j].coeff});
      ++j;
    } else {
      Scalar s = subtract ? k.sub(a[i].coeff, b[j].coeff) : k.add(a[i].coeff, b[j].coeff);
      if (s != 0) out.push_back({a[i].exponents, std::move(s)});
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) out.push_back({b[j].exponents, subtract ? k.neg(b[j].coeff) : b[j].coeff});
  return out;
}

}  // namespace

Polynomial Polynomial::constant(const RingPtr& ring, const Scalar& c) {
  Polynomial p(ring);
  Scalar v = ring->field().canonical(c);
  if (v != 0) p.terms_.push_back({Exponents(ring->nvars(), 0), v});
  return p;
}

Polynomial Polynomial::variable(const RingPtr& ring, std::size_t index) {
  if (index >= ring->nvars()) throw Error("variable index out of range");
  Exponents e(ring->nvars(), 0);
  e[index] = 1;
  return monomial(ring, std::move(e), 1);
}

Polynomial Polynomial::variable(const RingPtr& ring, std::string_view name) {
  int i = ring->index_of(name);
  if (i < 0) throw Error("unknown variable '" + std::string(name) + "'");
  return variable(ring, static_cast<std::size_t>(i));
}

Polynomial Polynomial::monomial(const RingPtr& ring, Exponents e, const Scalar& c) {
  if (e.size() != ring->nvars()) throw Error("monomial length mismatch");
  Polynomial p(ring);
  Scalar v = ring->field().canonical(c);
  if (v != 0) p.terms_.push_back({std::move(e), v});
  return p;
}

Polynomial Polynomial::from_terms(const RingPtr& ring, std::vector<Term> terms) {
  const auto& ord = ring->order();
  const auto& k = ring->field();
  for (auto& t : terms) {
    if (t.exponents.size() != ring->nvars()) throw Error("monomial length mismatch");
    t.coeff = k.canonical(t.coeff);
  }
  std::sort(terms.begin(), terms.end(), [&](const Term& a, const Term& b) {
    return ord.compare(a.exponents, b.exponents) > 0;
  });
  Polynomial p(ring);
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().exponents == t.exponents) {
      p.terms_.back().coeff = k.add(p.terms_.back().coeff, t.coeff);
    } else {
      if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
  return p;
}

Polynomial Polynomial::from_sorted(const RingPtr& ring, std::vector<Term> terms) {
  Polynomial p(ring);
  p.terms_ = std::move(terms);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && total_degree(terms_[0].exponents) == 0);
}

Scalar Polynomial::constant_coefficient() const {
  if (terms_.empty()) return 0;
  const auto& t = terms_.back();
  return total_degree(t.exponents) == 0 ? t.coeff : Scalar(0);
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, total_degree(t.exponents));
  return d;
}

std::optional<int> Polynomial::homogeneous_degree(std::span<const int> weights) const {
  std::optional<int> deg;
  for (const auto& t : terms_) {
    int d = 0;
    for (std::size_t i = 0; i < t.exponents.size(); ++i) d += weights[i] * t.exponents[i];
    if (deg && *deg != d) return std::nullopt;
    deg = d;
  }
  return deg;
}

bool Polynomial::is_homogeneous(std::span<const int> weights) const {
  return is_zero() || homogeneous_degree(weights).has_value();
}

void Polynomial::check_ring(const Polynomial& b) const {
  if (!same_ring(ring_, b.ring_)) throw Error("polynomials belong to different rings");
}

Polynomial Polynomial::operator-() const {
  Polynomial r(ring_);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.exponents, ring_->field().neg(t.coeff)});
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& b) {
  check_ring(b);
  terms_ = merge(ring_->field(), ring_->order(), terms_, b.terms_, false);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& b) {
  check_ring(b);
  terms_ = merge(ring_->field(), ring_->order(), terms_, b.terms_, true);
  return *this;
}

Polynomial Polynomial::times_term(const Exponents& e, const Scalar& c) const {
  Polynomial r(ring_);
  if (c == 0) return r;
  const auto& k = ring_->field();
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({mul(t.exponents, e), k.mul(t.coeff, c)});
  return r;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_ring(b);
  const Polynomial& small = a.size() <= b.size() ? a : b;
  const Polynomial& big = a.size() <= b.size() ? b : a;
  std::vector<Polynomial> parts;
  parts.reserve(small.size());
  for (const auto& t : small.terms_) parts.push_back(big.times_term(t.exponents, t.coeff));
  if (parts.empty()) return Polynomial(a.ring_);
  // balanced pairwise merging
  while (parts.size() > 1) {
    std::vector<Polynomial> next;
    for (std::size_t i = 0; i + 1 < parts.size(); i += 2) next.push_back(parts[i] + parts[i + 1]);
    if (parts.size() % 2) next.push_back(std::move(parts.back()));
    parts = std::move(next);
  }
  return std::move(parts[0]);
}

Polynomial& Polynomial::operator*=(const Polynomial& b) {
  *this = *this * b;
  return *this;
}

Polynomial Polynomial::scaled(const Scalar& c) const {
  return times_term(Exponents(ring_->nvars(), 0), ring_->field().canonical(c));
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial result = constant(ring_, 1), base = *this;
  while (k) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return result;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  return scaled(ring_->field().inv(lead().coeff));
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (!same_ring(a.ring_, b.ring_)) return false;
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].exponents != b.terms_[i].exponents || a.terms_[i].coeff != b.terms_[i].coeff)
      return false;
  return true;
}

std::string format_monomial(const PolyRing& ring, const Exponents& e) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (!e[i]) continue;
    if (!s.empty()) s += "*";
    s += ring.variables()[i];
    if (e[i] > 1) s += "^" + std::to_string(e[i]);
  }
  return s;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& t : terms_) {
    Scalar c = t.coeff;
    bool negative = c < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) s += "-";
    } else {
      s += negative ? " - " : " + ";
    }
    first = false;
    std::string mono = format_monomial(*ring_, t.exponents);
    if (mono.empty()) {
      s += c.get_str();
    } else if (c == 1) {
      s += mono;
    } else {
      s += c.get_str() + "*" + mono;
    }
  }
  return s;
}

Polynomial poly_arith(const Polynomial& a, const Polynomial& b, char op) {
  switch (op) {
    case '+': return a + b;
    case '-': return a - b;
    case '*': return a * b;
    default: throw Error(std::string("unsupported operation '") + op + "'");
  }
}

Polynomial differentiate(const Polynomial& f, std::string_view var) {
  int v = f.ring()->index_of(var);
  if (v < 0) throw Error("unknown variable '" + std::string(var) + "'");
  std::vector<Term> out;
  const auto& k = f.ring()->field();
  for (const auto& t : f.terms()) {
    if (t.exponents[v] == 0) continue;
    Term d{t.exponents, k.mul(t.coeff, k.from_int(t.exponents[v]))};
    d.exponents[v] -= 1;
    if (d.coeff != 0) out.push_back(std::move(d));
  }
  // order is preserved by dividing every term by the same variable
  return Polynomial::from_sorted(f.ring(), std::move(out));
}

Polynomial substitute(const Polynomial& f, const RingPtr& target,
                      std::span<const Polynomial> images) {
  if (images.size() != f.ring()->nvars()) throw Error("substitution needs one image per variable");
  for (const auto& im : images)
    if (!same_ring(im.ring(), target)) throw Error("substitution image in the wrong ring");
  std::vector<std::vector<Polynomial>> powers(images.size());
  auto power = [&](std::size_t v, int e) -> const Polynomial& {
    auto& cache = powers[v];
    if (cache.empty()) cache.push_back(Polynomial::constant(target, 1));
    while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * images[v]);
    return cache[e];
  };
  Polynomial result(target);
  const auto& k = target->field();
  for (const auto& t : f.terms()) {
    Polynomial m = Polynomial::constant(target, k.canonical(t.coeff));
    for (std::size_t v = 0; v < images.size() && !m.is_zero(); ++v)
      if (t.exponents[v]) m *= power(v, t.exponents[v]);
    result += m;
  }
  return result;
}

Polynomial transfer(const Polynomial& f, const RingPtr& target) {
  std::vector<Polynomial> images;
  images.reserve(f.ring()->nvars());
  for (const auto& name : f.ring()->variables()) {
    if (target->index_of(name) < 0) {
      bool used = false;
      int idx = f.ring()->index_of(name);
      for (const auto& t : f.terms()) used = used || t.exponents[idx] > 0;
      if (used) throw Error("variable '" + name + "' has no counterpart in the target ring");
      images.push_back(Polynomial(target));
    } else {
      images.push_back(Polynomial::variable(target, name));
    }
  }
  return substitute(f, target, images);
}

}  // namespace rfx
