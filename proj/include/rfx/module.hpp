#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rfx/hilbert.hpp"
#include "rfx/ring.hpp"

namespace rfx {

// M = coker(d: R^m -> R^n). Generator (row) degrees are kept when R is graded and d is
// homogeneous for them.
class FPModule {
 public:
  FPModule() = default;
  // Without degrees, consistent degrees are inferred when possible.
  FPModule(QRingPtr ring, Matrix presentation, std::optional<std::vector<int>> degrees = {});
  static FPModule free(QRingPtr ring, std::size_t rank, std::vector<int> degrees = {});
  // R / (gens)
  static FPModule cyclic(QRingPtr ring, const std::vector<Polynomial>& gens);
  // k = R / (all variables), generator in degree 0.
  static FPModule residue_field(QRingPtr ring);

  const QRingPtr& ring() const { return ring_; }
  const Matrix& presentation() const { return pres_; }
  std::size_t generators() const { return pres_.rows(); }
  std::size_t relations() const { return pres_.cols(); }
  bool is_graded() const { return degrees_.has_value(); }
  const std::vector<int>& degrees() const;
  const std::optional<std::vector<int>>& maybe_degrees() const { return degrees_; }
  std::vector<int> relation_degrees() const;

  bool is_zero() const;
  bool is_free_presentation() const { return pres_.is_zero(); }

  std::string to_string() const;
  friend bool operator==(const FPModule& a, const FPModule& b);

 private:
  QRingPtr ring_;
  Matrix pres_;
  std::optional<std::vector<int>> degrees_;
};

// A homomorphism given by its matrix on generators (target generators × source generators).
class ModuleHom {
 public:
  ModuleHom() = default;
  // Throws unless the matrix sends source relations into the target's relation span.
  ModuleHom(FPModule source, FPModule target, Matrix matrix);

  const FPModule& source() const { return src_; }
  const FPModule& target() const { return tgt_; }
  const Matrix& matrix() const { return mat_; }

  FPModule kernel() const;
  FPModule cokernel() const;
  FPModule image() const;
  // Generators of the kernel as vectors in the source's free module.
  Matrix kernel_generators() const;
  bool is_injective() const;
  bool is_surjective() const;
  bool is_zero() const;
  bool is_isomorphism() const { return is_injective() && is_surjective(); }
  ModuleHom compose(const ModuleHom& first) const;  // this ∘ first

 private:
  FPModule src_, tgt_;
  Matrix mat_;
};

bool is_well_defined(const FPModule& source, const FPModule& target, const Matrix& matrix);
// Exact at the middle: ker g = im f.
bool is_exact_at(const ModuleHom& f, const ModuleHom& g);

// (span of gens + span of rels) / span of rels, presented on the columns of gens.
FPModule subquotient(const QRingPtr& ring, const Matrix& gens, const Matrix& rels,
                     const std::optional<std::vector<int>>& row_degrees);

// Removes generators killed by unit entries and redundant relations.
struct Pruned {
  FPModule module;
  Matrix to_new;  // new generators × old generators: images of old generators
  Matrix to_old;  // old generators × new generators
};
Pruned prune(const FPModule& M);

// M = ideal of R generated by `generators`, presented by their syzygies.
struct IdealModule {
  FPModule module;
  std::vector<Polynomial> generators;
};
IdealModule ideal_module(const QRingPtr& ring, const std::vector<Polynomial>& generators);

// M* = Hom(M, R). Column j of `generators` lists the values of the j-th generator of M*
// on the generators of M.
struct DualModule {
  FPModule module;
  Matrix generators;
};
DualModule dual_module(const FPModule& M);
FPModule transpose(const FPModule& M);

// σ_M: M -> M**, with its kernel and cokernel.
struct EvaluationData {
  DualModule dual;
  DualModule double_dual;
  ModuleHom sigma;
  FPModule kernel;
  FPModule cokernel;
};
EvaluationData evaluation_map(const FPModule& M);

// F_len -> ... -> F_0 with F_0 -> M onto. maps[i]: F_{i+1} -> F_i.
struct Resolution {
  QRingPtr ring;
  std::vector<Matrix> maps;
  std::vector<std::vector<int>> degrees;  // graded case, degrees of F_0..F_len
  bool graded = false;
  std::size_t rank0 = 0;
  std::size_t rank(std::size_t i) const;
  std::vector<std::size_t> betti() const;
};
// With keep_generators the first map presents M on its given generators.
Resolution free_resolution(const FPModule& M, std::size_t length, bool keep_generators = false);
FPModule syzygy(const FPModule& M, std::size_t n);

// Substitutes along φ; the result lives over φ's target.
FPModule base_change(const FPModule& M, const RingMap& phi);
// Ring of the fibre over a rational point of the base and the specialization map.
struct Fibre {
  QRingPtr ring;
  RingMap specialize;
};
Fibre fibre_ring(const RingMap& h, const std::vector<Scalar>& point);
FPModule fibre(const FPModule& M, const RingMap& h, const std::vector<Scalar>& point);

HilbertSeries hilbert_series(const FPModule& M);
HilbertSeries hilbert_series(const QRingPtr& ring);
// Ideal of (n-i)-minors plus the defining ideal, as a basis in the ambient ring.
GroebnerBasis fitting_ideal(const FPModule& M, std::size_t i);
// Ideal I + (gens) of the ambient ring.
GroebnerBasis ideal_in(const QuotientRing& R, const std::vector<Polynomial>& gens);

std::optional<ModuleHom> hom_lift(const ModuleHom& phi, const ModuleHom& pi);
// psi: j.target -> iota.target with psi ∘ j = iota, or nullopt.
std::optional<ModuleHom> hom_extend(const ModuleHom& iota, const ModuleHom& j);
// The same map after base change of source and target.
ModuleHom base_change(const ModuleHom& f, const RingMap& phi);
GroebnerBasis pairing_image(const IdealModule& M);
// Minimal number of generators at the origin.
std::size_t minimal_generator_count(const FPModule& M);

// ker(beta) / im(alpha) for coker(rel_prev) -alpha-> coker(rel_mid) -beta-> coker(rel_next).
// alpha may have zero columns, beta zero rows.
FPModule homology_at(const QRingPtr& ring, const Matrix& alpha, const Matrix& beta,
                     const Matrix& rel_mid, const Matrix& rel_next,
                     const std::optional<std::vector<int>>& mid_degrees);
// Ext^i(M, N) from a resolution of M.
FPModule ext(const FPModule& M, const FPModule& N, std::size_t i);
// Ext^0 .. Ext^upto from one resolution.
std::vector<FPModule> ext_modules(const FPModule& M, const FPModule& N, std::size_t upto);

struct DepthReport {
  std::optional<int> depth;  // absent: depth > window
  int window = 0;
  std::string to_string() const;
};
DepthReport depth_at_irrelevant(const FPModule& M, int window);

}  // namespace rfx
