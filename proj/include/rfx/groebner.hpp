#pragma once

#include <optional>
#include <vector>

#include "rfx/matrix.hpp"

namespace rfx {

// One term of a vector in a free module P^n.
struct VecTerm {
  Exponents exponents;
  std::uint32_t comp;
  Scalar coeff;
};

// Sorted descending in the term-over-position order (equal monomials: lower component first).
using SparseVec = std::vector<VecTerm>;

// Module order comparison of two terms.
std::strong_ordering compare_terms(const MonomialOrder& ord, const VecTerm& a, const VecTerm& b);

SparseVec to_sparse(const Matrix& m, std::size_t col);
SparseVec to_sparse(const Polynomial& f, std::uint32_t comp = 0);
std::vector<SparseVec> columns_of(const Matrix& m);
Matrix to_matrix(const RingPtr& ring, std::size_t rank, const std::vector<SparseVec>& cols);
Polynomial component(const RingPtr& ring, const SparseVec& v, std::uint32_t comp);

SparseVec vec_add(const PolyRing& r, const SparseVec& a, const SparseVec& b);
SparseVec vec_sub(const PolyRing& r, const SparseVec& a, const SparseVec& b);
SparseVec vec_scale(const PolyRing& r, const SparseVec& a, const Exponents& mono,
                    const Scalar& c);
SparseVec vec_mul_poly(const PolyRing& r, const SparseVec& a, const Polynomial& f);

struct DivisionResult {
  SparseVec remainder;
  std::vector<Polynomial> quotients;  // one per basis element
};

struct GroebnerOptions {
  bool track_representation = false;
  bool product_criterion = false;  // ideal case only
};

class GroebnerBasis {
 public:
  GroebnerBasis() = default;

  const RingPtr& ring() const { return ring_; }
  std::size_t rank() const { return rank_; }
  std::size_t size() const { return elems_.size(); }
  const std::vector<SparseVec>& elements() const { return elems_; }
  Matrix matrix() const { return to_matrix(ring_, rank_, elems_); }
  // Ideal case: the basis as polynomials.
  std::vector<Polynomial> polynomials() const;

  // Each element as a combination of the input generators, when tracked.
  bool tracks_representation() const { return tracked_; }
  std::size_t input_count() const { return inputs_; }
  const std::vector<SparseVec>& representations() const { return reps_; }

  DivisionResult normal_form(const SparseVec& v) const;
  SparseVec reduce(const SparseVec& v) const;
  Polynomial reduce(const Polynomial& f) const;
  bool contains(const SparseVec& v) const { return reduce(v).empty(); }
  bool contains(const Polynomial& f) const { return reduce(f).is_zero(); }
  bool is_unit_ideal() const;
  bool is_whole_module() const;

  friend bool operator==(const GroebnerBasis& a, const GroebnerBasis& b);

 private:
  friend GroebnerBasis buchberger(const RingPtr&, std::size_t, std::vector<SparseVec>,
                                  const GroebnerOptions&);
  RingPtr ring_;
  std::size_t rank_ = 0;
  std::vector<SparseVec> elems_;
  bool tracked_ = false;
  std::size_t inputs_ = 0;
  std::vector<SparseVec> reps_;
};

// Reduced Gröbner basis of the submodule of P^rank generated by gens.
GroebnerBasis buchberger(const RingPtr& ring, std::size_t rank, std::vector<SparseVec> gens,
                         const GroebnerOptions& opts = {});
GroebnerBasis buchberger(const Matrix& columns, const GroebnerOptions& opts = {});
GroebnerBasis ideal_basis(const RingPtr& ring, const std::vector<Polynomial>& gens,
                          const GroebnerOptions& opts = {});

// Every S-pair of the basis reduces to zero (confluence re-check).
bool is_groebner(const GroebnerBasis& gb);

// Columns generating { v : G v = 0 } over the polynomial ring (Schreyer construction).
Matrix syzygies(const Matrix& G);
// Columns v with G v = b, one per column of b, or nullopt if some column is not in im G.
std::optional<Matrix> lift(const Matrix& b, const Matrix& G);

// Krull dimension of P/I from the leading monomials of a Gröbner basis of I; -1 for the unit ideal.
int lead_ideal_dimension(const GroebnerBasis& gb);

// Terms m·e_i not divisible by any leading term, sorted by degree, then component, then
// descending monomial order. Empty optional when there are infinitely many.
std::optional<std::vector<VecTerm>> standard_terms(const GroebnerBasis& gb);

}  // namespace rfx
