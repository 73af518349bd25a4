#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rfx/groebner.hpp"

namespace rfx {

// P / I with a reduced Gröbner basis of I and per-variable weights.
class QuotientRing {
 public:
  QuotientRing(RingPtr ambient, const std::vector<Polynomial>& relations = {},
               std::vector<int> weights = {});

  const RingPtr& ambient() const { return ambient_; }
  const Field& field() const { return ambient_->field(); }
  std::size_t nvars() const { return ambient_->nvars(); }
  const GroebnerBasis& ideal() const { return ideal_; }
  const std::vector<Polynomial>& relations() const { return relations_; }
  const std::vector<int>& weights() const { return weights_; }
  // Weights positive and every relation homogeneous.
  bool is_graded() const { return graded_; }
  bool is_polynomial_ring() const { return relations_.empty(); }

  Polynomial reduce(const Polynomial& f) const;
  Matrix reduce(const Matrix& m) const;
  bool is_zero(const Polynomial& f) const { return reduce(f).is_zero(); }
  // n × (n·g) block with columns g_k e_i for every relation g_k.
  Matrix relation_block(std::size_t n) const;
  Polynomial zero() const { return Polynomial(ambient_); }
  Polynomial one() const { return Polynomial::constant(ambient_, 1); }
  Polynomial var(const std::string& name) const { return Polynomial::variable(ambient_, name); }
  Polynomial parse(std::string_view text) const { return reduce(parse_polynomial(ambient_, text)); }

  std::string to_string() const;
  bool operator==(const QuotientRing& o) const;

 private:
  RingPtr ambient_;
  GroebnerBasis ideal_;
  std::vector<Polynomial> relations_;
  std::vector<int> weights_;
  bool graded_ = false;
};

using QRingPtr = std::shared_ptr<const QuotientRing>;

QRingPtr make_quotient(RingPtr ambient, const std::vector<Polynomial>& relations = {},
                       std::vector<int> weights = {});
QRingPtr polynomial_ring(Field field, std::vector<std::string> variables,
                         MonomialOrder order = MonomialOrder::degrevlex());
// Convenience: parse relations in the ambient ring.
QRingPtr make_quotient(RingPtr ambient, const std::vector<std::string>& relations,
                       std::vector<int> weights = {});
bool same_ring(const QRingPtr& a, const QRingPtr& b);

// A ring homomorphism given by the images of the source variables.
class RingMap {
 public:
  RingMap(QRingPtr source, QRingPtr target, std::vector<Polynomial> images);

  const QRingPtr& source() const { return source_; }
  const QRingPtr& target() const { return target_; }
  const std::vector<Polynomial>& images() const { return images_; }

  Polynomial apply(const Polynomial& f) const;
  Matrix apply(const Matrix& m) const;
  RingMap then(const RingMap& next) const;  // next ∘ this
  bool is_identity() const;
  // Source variable i is sent to a target variable; its index, else -1.
  int image_variable(std::size_t i) const;

 private:
  QRingPtr source_, target_;
  std::vector<Polynomial> images_;
};

// R ∩ k[remaining variables], as a quotient of the polynomial ring in the remaining variables.
QRingPtr eliminate(const QRingPtr& R, const std::vector<std::string>& drop);

RingMap make_map(QRingPtr source, QRingPtr target, const std::vector<std::string>& images);

// Over R: reduced, nonzero, pairwise distinct columns generating { v : G v = 0 }.
Matrix syzygies(const QuotientRing& R, const Matrix& G);
// Over R: v with G v = b (columnwise), or nullopt.
std::optional<Matrix> lift(const QuotientRing& R, const Matrix& b, const Matrix& G);
// Gröbner basis of im G + I·P^n in P^n.
GroebnerBasis span_basis(const QuotientRing& R, const Matrix& G);
bool in_span(const QuotientRing& R, const Matrix& b, const Matrix& G);
// Degree of each column given row degrees; nullopt if some entry is inhomogeneous or degrees clash.
std::optional<std::vector<int>> column_degrees(const QuotientRing& R, const Matrix& G,
                                               const std::vector<int>& row_degrees);
// A subset of the columns of G that together with `modulo` spans the same submodule.
// Minimal when row degrees are given (graded case).
Matrix minimal_columns(const QuotientRing& R, const Matrix& G, const Matrix& modulo,
                       const std::optional<std::vector<int>>& row_degrees);
// Rank of the constant part of a matrix (all variables set to zero).
std::size_t rank_at_origin(const Matrix& m);

}  // namespace rfx
