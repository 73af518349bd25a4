#include <string>

#include "rfx/error.hpp"
#include "rfx/module.hpp"

namespace rfx {

FPModule homology_at(const QRingPtr& ring, const Matrix& alpha, const Matrix& beta,
                     const Matrix& rel_mid, const Matrix& rel_next,
                     const std::optional<std::vector<int>>& mid_degrees) {
  const auto& R = *ring;
  std::size_t n = rel_mid.rows();
  Matrix K = Matrix::identity(R.ambient(), n);
  if (beta.rows() > 0 && n > 0)
    K = syzygies(R, hconcat(beta, rel_next)).row_range(0, n);
  return subquotient(ring, K, hconcat(alpha, rel_mid), mid_degrees);
}

namespace {

// Hom(F, N) for F free of the given rank: N^rank, with generator (k, l) at index k·b + l.
Matrix hom_relations(const FPModule& N, std::size_t rank) {
  return kronecker(Matrix::identity(N.presentation().ring(), rank), N.presentation());
}

}  // namespace

std::vector<FPModule> ext_modules(const FPModule& M, const FPModule& N, std::size_t upto) {
  if (!same_ring(M.ring(), N.ring())) throw Error("Ext of modules over different rings");
  const QRingPtr& ring = M.ring();
  const RingPtr& P = ring->ambient();
  Resolution res = free_resolution(M, upto + 1);
  std::size_t b = N.generators();
  Matrix Ib = Matrix::identity(P, b);
  std::vector<FPModule> out;
  for (std::size_t i = 0; i <= upto; ++i) {
    std::size_t fi = res.rank(i), fnext = res.rank(i + 1);
    Matrix beta = i < res.maps.size() ? kronecker(res.maps[i].transpose(), Ib) : Matrix(P, fnext * b, fi * b);
    Matrix alpha(P, fi * b, 0);
    if (i > 0) alpha = kronecker(res.maps[i - 1].transpose(), Ib);
    std::optional<std::vector<int>> deg;
    if (res.graded && N.is_graded()) {
      std::vector<int> d;
      for (std::size_t k = 0; k < fi; ++k)
        for (std::size_t l = 0; l < b; ++l) d.push_back(N.degrees()[l] - res.degrees[i][k]);
      deg = d;
    }
    out.push_back(homology_at(ring, alpha, beta, hom_relations(N, fi), hom_relations(N, fnext), deg));
  }
  return out;
}

FPModule ext(const FPModule& M, const FPModule& N, std::size_t i) {
  return ext_modules(M, N, i).back();
}

std::string DepthReport::to_string() const {
  if (depth) return std::to_string(*depth);
  return ">= " + std::to_string(window + 1);
}

DepthReport depth_at_irrelevant(const FPModule& M, int window) {
  if (!M.is_graded()) throw Error("depth needs a graded module");
  if (window < 1) throw Error("depth window must be at least 1");
  DepthReport rep;
  rep.window = window;
  if (M.is_zero()) return rep;
  FPModule k = FPModule::residue_field(M.ring());
  auto exts = ext_modules(k, M, static_cast<std::size_t>(window));
  for (int i = 0; i <= window; ++i)
    if (!exts[static_cast<std::size_t>(i)].is_zero()) {
      rep.depth = i;
      break;
    }
  return rep;
}

}  // namespace rfx
