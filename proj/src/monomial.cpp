#include "rfx/monomial.hpp"

#include <algorithm>

#include "rfx/error.hpp"

namespace rfx {

int total_degree(const Exponents& e) {
  int d = 0;
  for (auto v : e) d += v;
  return d;
}

bool divides(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Exponents mul(const Exponents& a, const Exponents& b) {
  Exponents r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Exponents quotient(const Exponents& b, const Exponents& a) {
  Exponents r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = b[i] - a[i];
  return r;
}

Exponents lcm(const Exponents& a, const Exponents& b) {
  Exponents r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

bool coprime(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > 0 && b[i] > 0) return false;
  return true;
}

namespace {

std::strong_ordering cmp_lex(const std::int32_t* a, const std::int32_t* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] != b[i]) return a[i] <=> b[i];
  return std::strong_ordering::equal;
}

std::strong_ordering cmp_drl(const std::int32_t* a, const std::int32_t* b, std::size_t n) {
  int da = 0, db = 0;
  for (std::size_t i = 0; i < n; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da <=> db;
  for (std::size_t i = n; i-- > 0;)
    if (a[i] != b[i]) return b[i] <=> a[i];
  return std::strong_ordering::equal;
}

}  // namespace

MonomialOrder MonomialOrder::block(std::vector<Block> blocks) {
  for (const auto& b : blocks)
    if (b.kind == Kind::Block) throw Error("nested block orders are not supported");
  return MonomialOrder(Kind::Block, std::move(blocks));
}

std::size_t MonomialOrder::block_span() const {
  std::size_t n = 0;
  for (const auto& b : blocks_) n += b.size;
  return n;
}

std::string MonomialOrder::name() const {
  switch (kind_) {
    case Kind::DegRevLex: return "degrevlex";
    case Kind::Lex: return "lex";
    case Kind::Block: break;
  }
  std::string s = "block(";
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (i) s += ",";
    s += (blocks_[i].kind == Kind::Lex ? "lex:" : "degrevlex:") + std::to_string(blocks_[i].size);
  }
  return s + ")";
}

std::strong_ordering MonomialOrder::compare(const Exponents& a,
                                            const Exponents& b) const {
  switch (kind_) {
    case Kind::DegRevLex: return cmp_drl(a.data(), b.data(), a.size());
    case Kind::Lex: return cmp_lex(a.data(), b.data(), a.size());
    case Kind::Block: break;
  }
  std::size_t at = 0;
  for (const auto& blk : blocks_) {
    const std::int32_t* sa = a.data() + at;
    const std::int32_t* sb = b.data() + at;
    auto c = blk.kind == Kind::Lex ? cmp_lex(sa, sb, blk.size) : cmp_drl(sa, sb, blk.size);
    if (c != 0) return c;
    at += blk.size;
  }
  return std::strong_ordering::equal;
}

bool MonomialOrder::operator==(const MonomialOrder& o) const {
  if (kind_ != o.kind_ || blocks_.size() != o.blocks_.size()) return false;
  for (std::size_t i = 0; i < blocks_.size(); ++i)
    if (blocks_[i].kind != o.blocks_[i].kind || blocks_[i].size != o.blocks_[i].size) return false;
  return true;
}

std::strong_ordering compare_monomials(const Exponents& a,
                                       const Exponents& b,
                                       const MonomialOrder& order) {
  if (a.size() != b.size()) throw Error("monomial length mismatch");
  if (order.kind() == MonomialOrder::Kind::Block && order.block_span() != a.size())
    throw Error("block order does not cover all variables");
  return order.compare(a, b);
}

}  // namespace rfx
