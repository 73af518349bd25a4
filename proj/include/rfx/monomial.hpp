#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace rfx {

using Exponents = boost::container::small_vector<std::int32_t, 8>;

int total_degree(const Exponents& e);
bool divides(const Exponents& a, const Exponents& b);
Exponents mul(const Exponents& a, const Exponents& b);
// b / a, assuming divides(a, b)
Exponents quotient(const Exponents& b, const Exponents& a);
Exponents lcm(const Exponents& a, const Exponents& b);
bool coprime(const Exponents& a, const Exponents& b);

class MonomialOrder {
 public:
  enum class Kind { DegRevLex, Lex, Block };
  struct Block {
    Kind kind;  // DegRevLex or Lex
    std::size_t size;
  };

  MonomialOrder() = default;
  static MonomialOrder degrevlex() { return MonomialOrder(Kind::DegRevLex, {}); }
  static MonomialOrder lex() { return MonomialOrder(Kind::Lex, {}); }
  // Elimination order: compare the first block, ties broken by the next.
  static MonomialOrder block(std::vector<Block> blocks);

  Kind kind() const { return kind_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  std::size_t block_span() const;
  std::string name() const;

  std::strong_ordering compare(const Exponents& a,
                               const Exponents& b) const;

  bool operator==(const MonomialOrder& o) const;

 private:
  MonomialOrder(Kind k, std::vector<Block> b) : kind_(k), blocks_(std::move(b)) {}
  Kind kind_ = Kind::DegRevLex;
  std::vector<Block> blocks_;
};

// Throws rfx::Error on length mismatch.
std::strong_ordering compare_monomials(const Exponents& a,
                                       const Exponents& b,
                                       const MonomialOrder& order);

}  // namespace rfx
