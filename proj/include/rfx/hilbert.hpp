#pragma once

#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace rfx {

// N(t) / prod (1 - t^w), N a Laurent polynomial with integer coefficients.
class HilbertSeries {
 public:
  HilbertSeries() = default;
  HilbertSeries(std::map<int, mpz_class> numerator, std::vector<int> denominator);

  const std::map<int, mpz_class>& numerator() const { return num_; }
  const std::vector<int>& denominator() const { return den_; }
  bool is_zero() const { return num_.empty(); }
  // Cancels factors (1 - t^w) dividing the numerator.
  HilbertSeries reduced() const;
  // Dimension of the degree-d part (series coefficient).
  mpz_class coefficient(int d) const;
  // Lowest exponent and coefficients of the numerator, after reduction.
  int numerator_offset() const;
  std::vector<mpz_class> numerator_coefficients() const;

  std::string to_string() const;
  HilbertSeries operator+(const HilbertSeries& o) const;
  HilbertSeries shifted(int d) const;
  friend bool operator==(const HilbertSeries& a, const HilbertSeries& b);

 private:
  std::map<int, mpz_class> num_;
  std::vector<int> den_;
};

}  // namespace rfx
