#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rfx/mf.hpp"

namespace rfx {

// Closed fibre over a base point, translated so that the marked point is the origin.
// `maximal` holds the images of the generators of I, which are then the fibre variables.
struct MarkedFibre {
  QRingPtr ring;
  RingMap specialize;  // total ring -> fibre ring
  std::vector<Polynomial> generators;  // x - a(s) for the fibre variables x
  std::vector<Polynomial> maximal;
};
MarkedFibre marked_fibre(const RingMap& h, const RingMap& section, const std::vector<Scalar>& point);

// ε = f / x for a nonzerodivisor x of A and a socle generator f of A/(x). m is generated by
// the variables of A.
struct SocleEpsilon {
  Polynomial x, f;
  std::vector<Polynomial> socle;   // k-basis of the socle of A/(x), as normal forms
  std::vector<Polynomial> values;  // ε·v for every variable v
  IdealModule maximal;
  ModuleHom hom;                   // m -> A
  Certificate certificate;         // nonzerodivisor, A/(x) artinian, length 1, m_ε generates m*/A
};
// Throws when x is a zero divisor, A/(x) has positive dimension or the socle is not simple.
SocleEpsilon socle_epsilon(const QRingPtr& A, const Polynomial& x);

struct KnudsenReport {
  std::vector<Polynomial> ideal;  // generators of I = ker(R -> S)
  Certificate fibre;              // closed fibre of dimension 1, complete intersection
  Certificate reflexive;          // I stably reflexive relative to h at the sampled points

  FPModule dual;                  // I*
  Matrix dual_generators;         // values of the generators of I* on the generators of I
  FPModule quotient;              // I*/R as an S-module
  std::vector<GroebnerBasis> quotient_fitting;  // Fitt_0, Fitt_1 over S
  Certificate quotient_free;

  SocleEpsilon closed_epsilon;          // on the marked closed fibre
  std::vector<Polynomial> epsilon_values;  // ψ on the generators of I
  Polynomial x_lift, f_lift;            // ψ = multiplication by f_lift / x_lift
  Certificate epsilon;

  GroebnerBasis pairing;                // I·I*
  FPModule dual_on_section;             // I* ⊗_R S
  std::vector<GroebnerBasis> section_fitting;  // Fitt_0, Fitt_1, Fitt_2 over S

  GroebnerBasis closed_pairing;         // image of m ⊗ m* -> A
  std::size_t closed_dual_dimension = 0;  // dim_k m* ⊗ k
  bool closed_regular = false;
  Certificate dichotomy;

  Certificate certificate;  // all of the above
};
// The closed fibre must be a 1-dimensional complete intersection with the marked point at the
// origin. Points default to the origin of S.
KnudsenReport knudsen_invariants(const RingMap& h, const RingMap& section,
                                 std::vector<std::vector<Scalar>> points = {}, int window = 4);

// q(x) - q(s) with q = x1^2 + γ x1 x2 + δ x2^2 over S = k[s1,s2], section x -> s.
// Throws in characteristic 2 or when γ^2 - 4δ = 0.
PlaneCurveData knudsen_family(const Field& k, const Scalar& gamma, const Scalar& delta);

struct StabilizationReport {
  QRingPtr sym;                 // R[U,V]/(F, X2 U + G1 V, G2 V - X1 U)
  QRingPtr chart_U, chart_V;    // P[v]/(X2 + G1 v, X1 - G2 v), P[u]/(X2 u + G1, X1 u - G2)
  RingMap h_U, h_V;             // S -> charts
  QRingPtr closed_U, closed_V;  // fibres over the base point
  QRingPtr closed_U_eliminated, closed_V_eliminated;  // first fibre variable eliminated
  std::string v_name, u_name;
  std::vector<Polynomial> section_ideal;  // in the U-chart: (v)
  std::size_t exceptional_dimension = 0;  // dim_k m* ⊗ k at the marked point
  int exceptional_fibre_dim = 0;          // dimension of the U-chart over the marked point
  Certificate flatness, section, exceptional, gluing;
  Certificate certificate;
};
// Throws when a chart fails the fibre regularity test at the base point.
StabilizationReport stabilization(const PlaneCurveData& data, std::vector<Scalar> point = {});

// Kernel of R[U,V] -> R[t], U -> a t, V -> b t, as an ideal of the ambient ring of `sym`.
GroebnerBasis rees_ideal(const QRingPtr& R, const Polynomial& a, const Polynomial& b, const QRingPtr& sym);

// Basis of A^c / (im ∇f) for A = k[x]/(f): e_1..e_c followed by the g_j.
struct T1Basis {
  QRingPtr A;
  std::vector<Polynomial> f;
  Matrix jacobian;  // c × m
  GroebnerBasis module;
  std::vector<VecTerm> basis;
  std::vector<std::vector<Polynomial>> g;  // g[j][i] = g_j^{(i)}
  std::size_t N() const { return g.size(); }
};
// f a regular sequence in (x)^2 of a polynomial ring; throws unless the quotient is finite.
T1Basis versal_T1(const QRingPtr& P, const std::vector<Polynomial>& f);

struct PointedFamily {
  QRingPtr base, total;
  RingMap h, section;
  Certificate certificate;
};

struct VersalFamily {
  T1Basis t1;
  std::vector<Polynomial> F;  // F_i(x,t) in k[t,x]
  QRingPtr unpointed_base;    // k[t,z]
  QRingPtr unpointed_total;   // k[t,z,x]/(F + z)
  RingMap unpointed;
  PointedFamily pointed;      // k[s,t] -> k[s,t,x]/(F(x,t) - F(s,t)) -> k[s,t], x -> s
};
VersalFamily versal_family(const QRingPtr& P, const std::vector<Polynomial>& f);
PointedFamily pointed_versal(const QRingPtr& P, const std::vector<Polynomial>& f);

// R -> R ⊗_S R -> R for h: S -> R with S mapping onto variables. The second copy of each
// fibre variable x is named x_; the section is multiplication.
PointedFamily square_construction(const RingMap& h);

}  // namespace rfx
