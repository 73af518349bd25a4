#pragma once

#include <optional>
#include <vector>

#include "rfx/module.hpp"

namespace rfx {

// E^lo -> ... -> E^hi with d^i: E^i -> E^{i+1}. Outside the window all terms are zero.
class FreeComplex {
 public:
  FreeComplex() = default;
  // differentials[k] is d^{lo+k}; there are ranks.size() - 1 of them.
  FreeComplex(QRingPtr ring, int lo, std::vector<std::size_t> ranks, std::vector<Matrix> differentials,
              std::optional<std::vector<std::vector<int>>> degrees = {});
  static FreeComplex zero(QRingPtr ring, int index);

  const QRingPtr& ring() const { return ring_; }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(ranks_.size()) - 1; }
  bool in_window(int i) const { return i >= lo() && i <= hi(); }
  // Cohomology at an edge misses one of its differentials.
  bool is_edge(int i) const { return i <= lo() || i >= hi(); }
  std::size_t rank(int i) const;
  std::vector<std::size_t> ranks() const { return ranks_; }
  // d^i, a zero matrix when i or i+1 lies outside the window.
  Matrix differential(int i) const;
  bool is_graded() const { return degrees_.has_value(); }
  std::optional<std::vector<int>> degrees(int i) const;

  friend bool operator==(const FreeComplex& a, const FreeComplex& b);

 private:
  QRingPtr ring_;
  int lo_ = 0;
  std::vector<std::size_t> ranks_;
  std::vector<Matrix> d_;
  std::optional<std::vector<std::vector<int>>> degrees_;
};

// f^i: S^i -> T^i commuting with the differentials.
class ComplexMap {
 public:
  ComplexMap(FreeComplex source, FreeComplex target, std::map<int, Matrix> maps);
  const FreeComplex& source() const { return src_; }
  const FreeComplex& target() const { return tgt_; }
  Matrix at(int i) const;

 private:
  FreeComplex src_, tgt_;
  std::map<int, Matrix> maps_;
};

// (E^∨)^i = (E^{1-i})^* with differential the transpose of d^{-i}.
FreeComplex dual_complex(const FreeComplex& E);
FPModule cohomology(const FreeComplex& E, int i);
// Ext^i(M, N) from a resolution of the given length; throws if the length is below i + 1.
FPModule ext(const FPModule& M, const FPModule& N, std::size_t i, std::size_t length);
// C^i = Q^{i+1} ⊕ P^i for f: Q -> P.
FreeComplex mapping_cone(const ComplexMap& f);
// Keeps E^i for i <= n.
FreeComplex truncate(const FreeComplex& E, int n);
// Cohomological form of a resolution: E^{-j} = F_j.
FreeComplex resolution_complex(const Resolution& res);

// P resolves M, Q resolves M* on the generators of dual_module(M); E^{-j} = P_j, E^{i} = Q_{i-1}^*
// and d^0 is F_0 -> M -> M** -> Q_0^*.
struct Splice {
  FreeComplex complex;
  bool torsionless = true;  // σ_M injective
};
Splice splice(const FPModule& M, std::size_t left, std::size_t right);

// Splits off summands R -u-> R with u a nonzero constant; the result is homotopy equivalent.
// `into` is a matrix with rows indexed by E^k and is carried along the projection onto the
// reduced complex.
struct ReducedComplex {
  FreeComplex complex;
  std::optional<Matrix> into;
};
ReducedComplex reduce_complex(const FreeComplex& E, int k = 0, std::optional<Matrix> into = {});
// Some differential has a nonzero constant entry.
bool has_unit_entries(const FreeComplex& E);
// Entrywise image under a ring map.
FreeComplex base_change(const FreeComplex& E, const RingMap& phi);

// K^i = Λ^i R^r, d = wedge with Σ f_j e_j.
FreeComplex koszul_complex(const QRingPtr& ring, const std::vector<Polynomial>& seq);
// Koszul cohomology below the top vanishes and R/(seq) is nonzero.
bool is_regular_sequence(const QRingPtr& ring, const std::vector<Polynomial>& seq);
bool is_regular_sequence_on_fibre(const std::vector<Polynomial>& seq, const RingMap& h,
                                  const std::vector<Scalar>& point);

}  // namespace rfx
