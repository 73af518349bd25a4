#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rfx/complexes.hpp"

namespace rfx {

enum class Verdict { Holds, Fails, Inconclusive };
std::string to_string(Verdict v);

struct Witness {
  std::string check;    // e.g. "Ext^1(M,A) = 0"
  std::string subject;  // module or index description
  bool ok = false;
  std::string detail;   // Hilbert series or a short description of the nonzero module
};

struct Certificate {
  Verdict verdict = Verdict::Holds;
  int window = 0;
  std::vector<Witness> witnesses;
  std::vector<std::vector<Scalar>> sampled_points;

  bool holds() const { return verdict == Verdict::Holds; }
  // Appends a check; a failing check turns the verdict to Fails.
  void record(Witness w);
  void absorb(const Certificate& other, const std::string& prefix);
  std::string to_string() const;
};

// Zero test with a readable description for witnesses.
Witness vanishing(const std::string& check, const std::string& subject, const FPModule& M);

Certificate is_reflexive(const FPModule& M);
Certificate is_n_stably_reflexive(const FPModule& M, int n);
Certificate is_left_n_orthogonal(const FPModule& N, int n);

// How S-flatness of M is witnessed in a relative certificate.
struct FlatnessWitness {
  enum class Kind { Free, IdealQuotient, Asserted, None } kind = Kind::None;
  // IdealQuotient: M is the ideal generated by these elements and the generators lift to a
  // sequence regular on the fibres of the ambient polynomial ring containing the relations.
  std::vector<Polynomial> generators;
};
Certificate relative_certificate(const FPModule& M, const RingMap& h,
                                 const std::vector<std::vector<Scalar>>& points, int n,
                                 FlatnessWitness flatness = {});

struct HullResult {
  FreeComplex complex;
  Certificate certificate;
  // Largest n with H^i(E) = H^i(E^∨) = 0 for all non-edge i <= n.
  int certified_n = 0;
};
HullResult hull(const FPModule& M, int window);

struct GdimEstimate {
  std::optional<int> value;  // absent: inconclusive at the window
  Certificate certificate;
};
GdimEstimate gorenstein_dim_estimate(const FPModule& N, int window);

struct OrthogonalSyzygy {
  FPModule syzygy;
  Certificate hypothesis;  // left 2n-orthogonality of N
  Certificate conclusion;  // Ω^{n+1} N is n-stably reflexive
};
// Throws if N is not left 2n-orthogonal.
OrthogonalSyzygy orthogonal_to_syzygy(const FPModule& N, int n);

}  // namespace rfx
