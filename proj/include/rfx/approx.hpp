#pragma once

#include <optional>
#include <vector>

#include "rfx/reflexivity.hpp"

namespace rfx {

// 0 -> L -> M -> N -> 0 and 0 -> N -> L' -> M' -> 0, with L of projective dimension at most
// s-2, L' at most s-1, M r-stably reflexive and M' (r-1)-stably reflexive.
struct ApproximationResult {
  FPModule N;
  int n = 0, r = 0, s = 1;
  FPModule L, M;
  ModuleHom L_to_M, M_to_N;
  FPModule Lp, Mp;
  ModuleHom N_to_Lp, Lp_to_Mp;
  // Q^∨ for a resolution Q of the truncated dual of a resolution of N. L and L' are the
  // cokernels of d^{-2} and d^{-1}, M and M' the kernels of d^0 and d^1.
  std::optional<FreeComplex> resolving;
  // Mapping cone of Q -> P^∨.
  std::optional<FreeComplex> cone;
  Certificate hypothesis;
};

// Requires Ω^n N to be (r+n)-stably reflexive; throws otherwise. With `minimal`, trivial
// summands are split off Q^∨.
ApproximationResult approximate(const FPModule& N, int n, int r, bool minimal = true);

// Exactness, memberships and the cone pattern, recomputed.
Certificate verify(const ApproximationResult& a);
// The same after specializing everything to the fibre of h over a point.
Certificate verify(const ApproximationResult& a, const RingMap& h, const std::vector<Scalar>& point);

// Projective dimension at most k: Ω^k L prunes to a free module.
Witness projdim_at_most(const FPModule& L, int k);

// ψ: M1 -> M with (M -> N) ∘ ψ = φ. Throws unless s <= r and M1 is r-stably reflexive.
std::optional<ModuleHom> lift_through(const ModuleHom& phi, const ApproximationResult& a);
// ψ: L' -> L1 with ψ ∘ (N -> L') = ι. Throws unless s <= r-2 and pd L1 <= s-1.
std::optional<ModuleHom> coapprox_extend(const ModuleHom& iota, const ApproximationResult& a);

// For a section of R over S with kernel I:
//   0 -> R -> I*  -> S  -> 0
//   0 -> R -> F*  -> L' -> 0
// with columns I* -> F* -> (ΩI)* and S -> L' -> (ΩI)*, F the free module on the generators of I.
struct PointedApproximation {
  ApproximationResult result;  // N = S, L = R, M = I*, M' = (ΩI)*
  std::vector<Polynomial> ideal;  // generators of I
  FPModule Fstar;
  ModuleHom R_to_Fstar, Istar_to_Fstar, Fstar_to_Lp, Fstar_to_Mp;
  Certificate diagram;  // commutativity, exact rows and columns, cartesian square
  Certificate fibre;    // closed fibre of dimension 1 cut out by a complete intersection
};
// Closed fibre of h has Krull dimension 1 and is cut out by a complete intersection.
Certificate curve_fibre_certificate(const RingMap& h);
PointedApproximation pointed_approximation(const RingMap& h, const RingMap& section, int r = 2);

}  // namespace rfx
