#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rfx/field.hpp"
#include "rfx/monomial.hpp"

namespace rfx {

class PolyRing {
 public:
  PolyRing(Field field, std::vector<std::string> variables,
           MonomialOrder order = MonomialOrder::degrevlex());

  const Field& field() const { return field_; }
  std::size_t nvars() const { return vars_.size(); }
  const std::vector<std::string>& variables() const { return vars_; }
  const MonomialOrder& order() const { return order_; }
  // -1 when absent.
  int index_of(std::string_view name) const;

  bool operator==(const PolyRing& o) const {
    return field_ == o.field_ && vars_ == o.vars_ && order_ == o.order_;
  }

 private:
  Field field_;
  std::vector<std::string> vars_;
  MonomialOrder order_;
};

using RingPtr = std::shared_ptr<const PolyRing>;

RingPtr make_ring(Field field, std::vector<std::string> variables,
                  MonomialOrder order = MonomialOrder::degrevlex());
bool same_ring(const RingPtr& a, const RingPtr& b);

struct Term {
  Exponents exponents;
  Scalar coeff;
};

class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

  static Polynomial constant(const RingPtr& ring, const Scalar& c);
  static Polynomial variable(const RingPtr& ring, std::size_t index);
  static Polynomial variable(const RingPtr& ring, std::string_view name);
  static Polynomial monomial(const RingPtr& ring, Exponents e, const Scalar& c);
  // Sorts, merges equal monomials, canonicalizes coefficients and drops zeros.
  static Polynomial from_terms(const RingPtr& ring, std::vector<Term> terms);
  // Terms already sorted descending, distinct, nonzero and canonical.
  static Polynomial from_sorted(const RingPtr& ring, std::vector<Term> terms);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // Nonzero constant.
  bool is_unit_constant() const { return is_constant() && !is_zero(); }
  Scalar constant_coefficient() const;
  const Term& lead() const { return terms_.front(); }

  // Largest standard degree of a term; -1 for zero.
  int degree() const;
  // Weighted degree if homogeneous for the weights (zero counts as homogeneous, returns nullopt).
  std::optional<int> homogeneous_degree(std::span<const int> weights) const;
  bool is_homogeneous(std::span<const int> weights) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& b);
  Polynomial& operator-=(const Polynomial& b);
  Polynomial& operator*=(const Polynomial& b);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial scaled(const Scalar& c) const;
  Polynomial times_term(const Exponents& e, const Scalar& c) const;
  Polynomial pow(unsigned k) const;
  Polynomial monic() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);

  std::string to_string() const;

 private:
  void check_ring(const Polynomial& b) const;
  RingPtr ring_;
  std::vector<Term> terms_;
};

Polynomial poly_arith(const Polynomial& a, const Polynomial& b, char op);
Polynomial differentiate(const Polynomial& f, std::string_view var);
// Replace each variable of f's ring by the corresponding image (all in the target ring).
Polynomial substitute(const Polynomial& f, const RingPtr& target,
                      std::span<const Polynomial> images);
// Same polynomial in a ring with the same variable names (possibly reordered/extended).
Polynomial transfer(const Polynomial& f, const RingPtr& target);

Polynomial parse_polynomial(const RingPtr& ring, std::string_view text);
std::string format_monomial(const PolyRing& ring, const Exponents& e);

}  // namespace rfx

namespace rfx {

// Parses the longest polynomial expression starting at `pos` (skipping blanks) and
// advances `pos` past it. Stops before any character that cannot continue the expression.
Polynomial parse_polynomial_prefix(const RingPtr& ring, std::string_view text, std::size_t& pos);

}  // namespace rfx
