#include "rfx/field.hpp"

#include "rfx/error.hpp"

namespace rfx {

namespace {

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

Field Field::prime(std::uint32_t p) {
  if (p >= (1u << 31) || !is_prime(p))
    throw Error("GF(" + std::to_string(p) + "): characteristic must be a prime below 2^31");
  return Field(p);
}

std::string Field::name() const {
  return is_rational() ? "QQ" : "GF(" + std::to_string(p_) + ")";
}

Scalar Field::canonical(const Scalar& q) const {
  if (is_rational()) return q;
  mpz_class mod(p_);
  mpz_class num = q.get_num() % mod;
  mpz_class den = q.get_den() % mod;
  if (den == 0) throw Error("denominator divisible by the characteristic " + std::to_string(p_));
  mpz_class den_inv;
  mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
  mpz_class r = (num * den_inv) % mod;
  if (r < 0) r += mod;
  return Scalar(r);
}

Scalar Field::add(const Scalar& a, const Scalar& b) const {
  if (is_rational()) return a + b;
  mpz_class r = a.get_num() + b.get_num();
  if (r >= p_) r -= p_;
  return Scalar(r);
}

Scalar Field::sub(const Scalar& a, const Scalar& b) const {
  if (is_rational()) return a - b;
  mpz_class r = a.get_num() - b.get_num();
  if (r < 0) r += p_;
  return Scalar(r);
}

Scalar Field::mul(const Scalar& a, const Scalar& b) const {
  if (is_rational()) return a * b;
  mpz_class r = (a.get_num() * b.get_num()) % p_;
  return Scalar(r);
}

Scalar Field::neg(const Scalar& a) const {
  if (is_rational()) return -a;
  if (a == 0) return a;
  return Scalar(mpz_class(p_) - a.get_num());
}

Scalar Field::inv(const Scalar& a) const {
  if (a == 0) throw Error("division by zero");
  if (is_rational()) return 1 / a;
  mpz_class r;
  mpz_class mod(p_);
  mpz_invert(r.get_mpz_t(), a.get_num_mpz_t(), mod.get_mpz_t());
  return Scalar(r);
}

std::string Field::format(const Scalar& a) const { return a.get_str(); }

}  // namespace rfx
