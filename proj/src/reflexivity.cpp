#include "rfx/reflexivity.hpp"

#include <algorithm>

#include "rfx/error.hpp"

namespace rfx {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "";
}

void Certificate::record(Witness w) {
  if (!w.ok && verdict == Verdict::Holds) verdict = Verdict::Fails;
  witnesses.push_back(std::move(w));
}

void Certificate::absorb(const Certificate& other, const std::string& prefix) {
  for (auto w : other.witnesses) {
    w.subject = prefix + w.subject;
    witnesses.push_back(std::move(w));
  }
  if (other.verdict == Verdict::Fails) verdict = Verdict::Fails;
  else if (other.verdict == Verdict::Inconclusive && verdict == Verdict::Holds) verdict = Verdict::Inconclusive;
}

std::string Certificate::to_string() const {
  std::string s = rfx::to_string(verdict);
  if (!sampled_points.empty()) {
    s += " (sampled at {";
    for (std::size_t p = 0; p < sampled_points.size(); ++p) {
      s += p ? ", (" : "(";
      for (std::size_t i = 0; i < sampled_points[p].size(); ++i)
        s += (i ? "," : "") + sampled_points[p][i].get_str();
      s += ")";
    }
    s += "})";
  }
  if (window > 0) s += " window " + std::to_string(window);
  s += "\n";
  for (const auto& w : witnesses) {
    s += std::string("  [") + (w.ok ? "ok" : "FAIL") + "] " + w.check;
    if (!w.subject.empty()) s += " for " + w.subject;
    if (!w.detail.empty()) s += ": " + w.detail;
    s += "\n";
  }
  return s;
}

Witness vanishing(const std::string& check, const std::string& subject, const FPModule& M) {
  Witness w{check, subject, M.is_zero(), ""};
  if (w.ok) {
    w.detail = "0";
  } else if (M.is_graded()) {
    w.detail = "Hilbert series " + hilbert_series(M).reduced().to_string();
  } else {
    w.detail = "nonzero, " + std::to_string(minimal_generator_count(M)) + " generators at the origin";
  }
  return w;
}

namespace {

FPModule ring_module(const FPModule& M) { return FPModule::free(M.ring(), 1); }

std::string idx(int i) { return std::to_string(i); }

}  // namespace

Certificate is_reflexive(const FPModule& M) {
  Certificate c;
  c.window = 2;
  FPModule D = transpose(M);
  auto exts = ext_modules(D, ring_module(M), 2);
  c.record(vanishing("Ext^1(D(M),A) = 0", "M", exts[1]));
  c.record(vanishing("Ext^2(D(M),A) = 0", "M", exts[2]));
  EvaluationData ev = evaluation_map(M);
  Witness ker = vanishing("ker sigma_M = 0", "M", ev.kernel);
  Witness cok = vanishing("coker sigma_M = 0", "M", ev.cokernel);
  bool agree = ker.ok == exts[1].is_zero() && cok.ok == exts[2].is_zero();
  if (agree && ev.kernel.is_graded() && exts[1].is_graded() && ev.cokernel.is_graded() && exts[2].is_graded())
    agree = hilbert_series(ev.kernel) == hilbert_series(exts[1]) &&
            hilbert_series(ev.cokernel) == hilbert_series(exts[2]);
  c.witnesses.push_back(ker);
  c.witnesses.push_back(cok);
  c.witnesses.push_back({"ker/coker of sigma_M agree with Ext^1, Ext^2 of D(M)", "M", agree, ""});
  if (!agree) c.verdict = Verdict::Inconclusive;
  return c;
}

Certificate is_n_stably_reflexive(const FPModule& M, int n) {
  if (n < 1) throw Error("n-stable reflexivity needs n >= 1");
  Certificate c = is_reflexive(M);
  c.window = n;
  if (n > 1) {
    FPModule A = ring_module(M);
    auto em = ext_modules(M, A, static_cast<std::size_t>(n - 1));
    auto ed = ext_modules(dual_module(M).module, A, static_cast<std::size_t>(n - 1));
    for (int i = 1; i < n; ++i) {
      c.record(vanishing("Ext^" + idx(i) + "(M,A) = 0", "M", em[static_cast<std::size_t>(i)]));
      c.record(vanishing("Ext^" + idx(i) + "(M*,A) = 0", "M", ed[static_cast<std::size_t>(i)]));
    }
  }
  return c;
}

Certificate is_left_n_orthogonal(const FPModule& N, int n) {
  if (n < 1) throw Error("left n-orthogonality needs n >= 1");
  Certificate c;
  c.window = n;
  auto e = ext_modules(N, ring_module(N), static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) c.record(vanishing("Ext^" + idx(i) + "(N,A) = 0", "N", e[static_cast<std::size_t>(i)]));
  return c;
}

namespace {

std::string point_string(const std::vector<Scalar>& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + p[i].get_str();
  return s + ")";
}

}  // namespace

Certificate relative_certificate(const FPModule& M, const RingMap& h,
                                 const std::vector<std::vector<Scalar>>& points, int n,
                                 FlatnessWitness flatness) {
  if (!same_ring(h.target(), M.ring())) throw Error("relative certificate: module is not over the map's target");
  if (!h.source()->is_polynomial_ring()) throw Error("relative certificate needs a polynomial base ring");
  const QuotientRing& R = *M.ring();
  Certificate c;
  c.window = n;
  c.sampled_points = points;
  if (flatness.kind == FlatnessWitness::Kind::None && M.is_free_presentation())
    flatness.kind = FlatnessWitness::Kind::Free;
  QRingPtr P = make_quotient(R.ambient(), std::vector<Polynomial>{}, R.weights());
  RingMap hp(h.source(), P, h.images());
  for (const auto& pt : points) {
    std::string at = "at " + point_string(pt) + ": ";
    bool ring_flat = is_regular_sequence_on_fibre(R.relations(), hp, pt);
    c.record({"defining relations regular on the fibre (ring flat over the base)", at, ring_flat, ""});
    switch (flatness.kind) {
      case FlatnessWitness::Kind::Free:
        c.record({"module free (flat)", at, true, ""});
        break;
      case FlatnessWitness::Kind::Asserted:
        c.record({"module flatness asserted by the caller", at, true, ""});
        break;
      case FlatnessWitness::Kind::IdealQuotient: {
        std::vector<Polynomial> gens = flatness.generators;
        auto J = ideal_basis(R.ambient(), gens);
        bool contains = std::all_of(R.relations().begin(), R.relations().end(),
                                    [&](const Polynomial& g) { return J.contains(g); });
        bool regular = is_regular_sequence_on_fibre(gens, hp, pt);
        c.record({"ideal generators regular on the fibre and containing the relations (quotient flat)", at,
                  contains && regular, ""});
        break;
      }
      case FlatnessWitness::Kind::None:
        c.witnesses.push_back({"flatness witness unavailable", at, false, ""});
        if (c.verdict == Verdict::Holds) c.verdict = Verdict::Inconclusive;
        break;
    }
    FPModule f = fibre(M, h, pt);
    c.absorb(is_n_stably_reflexive(f, n), at);
  }
  return c;
}

HullResult hull(const FPModule& M, int window) {
  if (window < 1) throw Error("hull window must be at least 1");
  Splice s = splice(M, static_cast<std::size_t>(window), static_cast<std::size_t>(window));
  HullResult r{s.complex, {}, window};
  r.certificate.window = window;
  r.certificate.record({"sigma_M injective (M torsionless)", "M", s.torsionless, ""});
  FreeComplex D = dual_complex(s.complex);
  int first_bad = window + 1;
  for (int i = s.complex.lo() + 1; i < s.complex.hi(); ++i) {
    Witness w = vanishing("H^" + idx(i) + "(E) = 0", "hull", cohomology(s.complex, i));
    if (!w.ok) first_bad = std::min(first_bad, i);
    r.certificate.record(w);
  }
  for (int i = D.lo() + 1; i < D.hi(); ++i) {
    Witness w = vanishing("H^" + idx(i) + "(E^dual) = 0", "hull", cohomology(D, i));
    if (!w.ok) first_bad = std::min(first_bad, i);
    r.certificate.record(w);
  }
  r.certified_n = std::min(first_bad - 1, window - 1);
  return r;
}

GdimEstimate gorenstein_dim_estimate(const FPModule& N, int window) {
  if (window < 1) throw Error("window must be at least 1");
  GdimEstimate g;
  g.certificate.window = window;
  auto e = ext_modules(N, ring_module(N), static_cast<std::size_t>(window));
  int last = 0;
  for (int i = 1; i <= window; ++i) {
    Witness w = vanishing("Ext^" + idx(i) + "(N,A) = 0", "N", e[static_cast<std::size_t>(i)]);
    if (!w.ok) last = i;
    g.certificate.witnesses.push_back(w);
  }
  if (last == window) {
    g.certificate.verdict = Verdict::Inconclusive;
  } else {
    g.value = last;
  }
  return g;
}

OrthogonalSyzygy orthogonal_to_syzygy(const FPModule& N, int n) {
  if (n < 1) throw Error("n must be at least 1");
  OrthogonalSyzygy r;
  r.hypothesis = is_left_n_orthogonal(N, 2 * n);
  if (!r.hypothesis.holds())
    throw Error("hypothesis fails: N is not left " + idx(2 * n) + "-orthogonal\n" + r.hypothesis.to_string());
  r.syzygy = syzygy(N, static_cast<std::size_t>(n + 1));
  r.conclusion = is_n_stably_reflexive(r.syzygy, n);
  return r;
}

}  // namespace rfx
