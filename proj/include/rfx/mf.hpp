#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rfx/reflexivity.hpp"

namespace rfx {

// Φ Ψ = Ψ Φ = F·Id over T.
struct MatrixFactorization {
  QRingPtr ambient;
  Polynomial F;
  Matrix Phi, Psi;

  // T / (F)
  QRingPtr hypersurface() const;
};

// Throws with the first offending entry unless both products equal F·Id.
MatrixFactorization make_mf(const QRingPtr& T, const Matrix& Phi, const Matrix& Psi, const Polynomial& F);

// F in S[x1,x2] with a section x_i -> a_i(s): X_i = x_i - a_i, F = X1 G1 + X2 G2.
struct PlaneCurveData {
  QRingPtr P;        // S[x1,x2]
  QRingPtr R;        // P / (F)
  RingMap h;         // S -> P
  RingMap section;   // P -> S
  std::vector<std::string> fibre_variables;  // x1, x2
  Polynomial F, X1, X2, G1, G2;
};
struct PlaneCurveMF {
  PlaneCurveData data;
  MatrixFactorization mf;  // Φ = [X2 G1; -X1 G2], Ψ = [G2 -G1; X1 X2]
};
PlaneCurveMF plane_curve_mf(const Polynomial& F, const RingMap& h, const RingMap& section);
// Fibre of the data over a point of S, with the section specialized.
PlaneCurveData specialize(const PlaneCurveData& d, const std::vector<Scalar>& point);

struct PeriodicComplex {
  FreeComplex complex;  // over T/(F); d^i = Φ for odd i, Ψ for even i
  Certificate certificate;
};
// Acyclicity from the factorization identities and F being a nonzerodivisor on T, plus cohomology
// in the window; with h, F must also be regular on the fibres over the given points.
PeriodicComplex two_periodic(const MatrixFactorization& mf, int lo, int hi, const RingMap* h = nullptr,
                             const std::vector<std::vector<Scalar>>& points = {});

// coker Φ over T/(F) and the ideal (X1, X2) of R have the same relations.
Certificate cokernel_is_section_ideal(const PlaneCurveMF& p);

}  // namespace rfx
