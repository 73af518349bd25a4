#pragma once

#include <random>
#include <string>
#include <vector>

#include "rfx/matrix.hpp"

namespace rfx::testing {

inline Polynomial P(const RingPtr& r, const std::string& s) { return parse_polynomial(r, s); }

inline Matrix M(const RingPtr& r, const std::vector<std::vector<std::string>>& rows) {
  return Matrix::parse(r, rows);
}

// Random polynomial with at most `terms` terms of degree <= maxdeg, small coefficients.
inline Polynomial random_poly(const RingPtr& r, std::mt19937& rng, int terms, int maxdeg,
                              int coeff_range = 3) {
  std::uniform_int_distribution<int> cd(-coeff_range, coeff_range);
  std::uniform_int_distribution<int> dd(0, maxdeg);
  std::vector<Term> ts;
  for (int t = 0; t < terms; ++t) {
    int deg = dd(rng);
    Exponents e(r->nvars(), 0);
    for (int k = 0; k < deg; ++k) {
      std::uniform_int_distribution<std::size_t> vd(0, r->nvars() - 1);
      e[vd(rng)] += 1;
    }
    ts.push_back({e, Scalar(cd(rng))});
  }
  return Polynomial::from_terms(r, ts);
}

// Random homogeneous polynomial of the given standard degree.
inline Polynomial random_homogeneous(const RingPtr& r, std::mt19937& rng, int terms, int deg,
                                     int coeff_range = 3) {
  std::uniform_int_distribution<int> cd(-coeff_range, coeff_range);
  std::vector<Term> ts;
  for (int t = 0; t < terms; ++t) {
    Exponents e(r->nvars(), 0);
    for (int k = 0; k < deg; ++k) {
      std::uniform_int_distribution<std::size_t> vd(0, r->nvars() - 1);
      e[vd(rng)] += 1;
    }
    ts.push_back({e, Scalar(cd(rng))});
  }
  return Polynomial::from_terms(r, ts);
}

}  // namespace rfx::testing

#include <functional>
#include <map>

namespace rfx::testing {

// Rank of a list of coefficient rows (keyed by monomial) by Gaussian elimination over Q.
inline std::size_t rank_of(std::vector<std::map<Exponents, Scalar>> rows) {
  std::size_t rank = 0;
  std::vector<std::map<Exponents, Scalar>> basis;
  for (auto& row : rows) {
    for (const auto& b : basis) {
      auto pivot = b.begin()->first;
      auto it = row.find(pivot);
      if (it == row.end()) continue;
      Scalar f = it->second / b.begin()->second;
      for (const auto& [m, c] : b) {
        row[m] -= f * c;
        if (row[m] == 0) row.erase(m);
      }
    }
    if (!row.empty()) {
      basis.push_back(row);
      ++rank;
    }
  }
  return rank;
}

// Dimension over Q of the degree-d part of a homogeneous ideal, by brute-force linear algebra.
inline std::size_t ideal_degree_dimension(const RingPtr& r, const std::vector<Polynomial>& gens,
                                          int d) {
  std::vector<Exponents> monos;
  std::function<void(std::size_t, int, Exponents&)> rec = [&](std::size_t v, int left,
                                                              Exponents& e) {
    if (v + 1 == r->nvars()) {
      e[v] = left;
      monos.push_back(e);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[v] = k;
      rec(v + 1, left - k, e);
    }
  };
  std::vector<std::map<Exponents, Scalar>> rows;
  for (const auto& g : gens) {
    int gd = g.degree();
    if (gd > d || g.is_zero()) continue;
    monos.clear();
    Exponents e(r->nvars(), 0);
    rec(0, d - gd, e);
    for (const auto& m : monos) {
      std::map<Exponents, Scalar> row;
      Polynomial shifted = g.times_term(m, 1);
      for (const auto& t : shifted.terms()) row[t.exponents] = t.coeff;
      rows.push_back(row);
    }
  }
  return rank_of(rows);
}

}  // namespace rfx::testing

#include <ostream>

#include "rfx/hilbert.hpp"

namespace rfx {
inline void PrintTo(const Polynomial& p, std::ostream* os) { *os << p.to_string(); }
inline void PrintTo(const Matrix& m, std::ostream* os) { *os << m.to_string(); }
inline void PrintTo(const HilbertSeries& h, std::ostream* os) { *os << h.to_string(); }
}  // namespace rfx

#include "rfx/module.hpp"

namespace rfx::testing {

inline std::vector<Exponents> monomials_of_degree(std::size_t nvars, const std::vector<int>& w, int d) {
  std::vector<Exponents> out;
  if (d < 0) return out;
  Exponents e(nvars, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t v, int left) {
    if (v == nvars) {
      if (left == 0) out.push_back(e);
      return;
    }
    for (int k = 0; k * w[v] <= left; ++k) {
      e[v] = k;
      rec(v + 1, left - k * w[v]);
    }
    e[v] = 0;
  };
  rec(0, d);
  return out;
}

// dim_k M_d for a graded module, by linear algebra on all multiples of the relations and of
// the defining ideal in degree d.
inline std::size_t module_degree_dimension(const FPModule& M, int d) {
  const auto& R = *M.ring();
  const RingPtr& r = R.ambient();
  std::size_t n = M.generators();
  const auto& deg = M.degrees();
  std::size_t total = 0;
  for (std::size_t i = 0; i < n; ++i) total += monomials_of_degree(r->nvars(), R.weights(), d - deg[i]).size();
  auto key = [](std::size_t comp, const Exponents& e) {
    Exponents k = e;
    k.insert(k.begin(), static_cast<std::int32_t>(comp));
    return k;
  };
  std::vector<std::map<Exponents, Scalar>> rows;
  auto add_vector = [&](const std::vector<Polynomial>& col, int col_deg) {
    for (const auto& m : monomials_of_degree(r->nvars(), R.weights(), d - col_deg)) {
      std::map<Exponents, Scalar> row;
      for (std::size_t i = 0; i < col.size(); ++i) {
        Polynomial p = col[i].times_term(m, 1);
        for (const auto& t : p.terms()) row[key(i, t.exponents)] = t.coeff;
      }
      if (!row.empty()) rows.push_back(row);
    }
  };
  auto rd = M.relations() ? M.relation_degrees() : std::vector<int>{};
  for (std::size_t j = 0; j < M.relations(); ++j) {
    std::vector<Polynomial> col;
    for (std::size_t i = 0; i < n; ++i) col.push_back(M.presentation()(i, j));
    add_vector(col, rd[j]);
  }
  for (const auto& g : R.relations())
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Polynomial> col(n, Polynomial(r));
      col[i] = g;
      add_vector(col, *g.homogeneous_degree(R.weights()) + deg[i]);
    }
  return total - rank_of(rows);
}

}  // namespace rfx::testing
