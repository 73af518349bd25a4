#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace rfx {

using Scalar = mpq_class;

// Coefficient field: the rationals or a prime field GF(p).
// Elements of GF(p) are stored as least residues in [0, p).
class Field {
 public:
  static Field rationals() { return Field(0); }
  static Field prime(std::uint32_t p);

  bool is_rational() const { return p_ == 0; }
  std::uint32_t characteristic() const { return p_; }
  std::string name() const;

  // Canonical image of a rational number; throws if a denominator vanishes mod p.
  Scalar canonical(const Scalar& q) const;
  Scalar from_int(long v) const { return canonical(Scalar(v)); }

  Scalar add(const Scalar& a, const Scalar& b) const;
  Scalar sub(const Scalar& a, const Scalar& b) const;
  Scalar mul(const Scalar& a, const Scalar& b) const;
  Scalar neg(const Scalar& a) const;
  Scalar inv(const Scalar& a) const;
  Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

  std::string format(const Scalar& a) const;

  bool operator==(const Field&) const = default;

 private:
  explicit Field(std::uint32_t p) : p_(p) {}
  std::uint32_t p_;
};

}  // namespace rfx
