#include <cctype>

#include "rfx/error.hpp"
#include "rfx/polynomial.hpp"

namespace rfx {

namespace {

class Parser {
 public:
  Parser(const RingPtr& ring, std::string_view text, std::size_t pos)
      : ring_(ring), s_(text), i_(pos) {}

  Polynomial expression() {
    skip();
    Polynomial acc(ring_);
    bool negate = false;
    if (peek() == '+' || peek() == '-') {
      negate = get() == '-';
    }
    acc = product();
    if (negate) acc = -acc;
    for (;;) {
      skip();
      char c = peek();
      if (c != '+' && c != '-') break;
      ++i_;
      Polynomial t = product();
      if (c == '+') acc += t;
      else acc -= t;
    }
    return acc;
  }

  std::size_t position() const { return i_; }

 private:
  Polynomial product() {
    Polynomial acc = power();
    for (;;) {
      skip();
      char c = peek();
      if (c != '*' && c != '/') break;
      ++i_;
      std::size_t at = i_;
      Polynomial f = power();
      if (c == '*') {
        acc *= f;
      } else {
        if (!f.is_constant() || f.is_zero()) fail(at, "division only by a nonzero constant");
        acc = acc.scaled(ring_->field().inv(f.constant_coefficient()));
      }
    }
    return acc;
  }

  Polynomial power() {
    Polynomial b = atom();
    skip();
    if (peek() == '^') {
      ++i_;
      skip();
      std::size_t at = i_;
      if (!std::isdigit(static_cast<unsigned char>(peek()))) fail(at, "expected exponent");
      unsigned long e = 0;
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        e = e * 10 + static_cast<unsigned long>(get() - '0');
        if (e > 100000) fail(at, "exponent too large");
      }
      b = b.pow(static_cast<unsigned>(e));
    }
    return b;
  }

  Polynomial atom() {
    skip();
    char c = peek();
    if (c == '(') {
      ++i_;
      Polynomial p = expression();
      skip();
      if (peek() != ')') fail(i_, "expected ')'");
      ++i_;
      return p;
    }
    if (c == '-') {  // unary minus inside products, e.g. 2*-x
      ++i_;
      return -power();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = i_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++i_;
      mpz_class v(std::string(s_.substr(start, i_ - start)));
      return Polynomial::constant(ring_, Scalar(v));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = i_;
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') ++i_;
      std::string name(s_.substr(start, i_ - start));
      if (ring_->index_of(name) < 0) fail(start, "unknown variable '" + name + "'");
      return Polynomial::variable(ring_, name);
    }
    fail(i_, c ? std::string("unexpected '") + c + "'" : "unexpected end of input");
  }

  [[noreturn]] void fail(std::size_t at, const std::string& msg) const {
    throw Error("column " + std::to_string(at + 1) + ": " + msg);
  }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  char peek() const { return i_ < s_.size() ? s_[i_] : '\0'; }
  char get() { return s_[i_++]; }

  const RingPtr& ring_;
  std::string_view s_;
  std::size_t i_;
};

}  // namespace

Polynomial parse_polynomial_prefix(const RingPtr& ring, std::string_view text, std::size_t& pos) {
  Parser p(ring, text, pos);
  Polynomial f = p.expression();
  pos = p.position();
  return f;
}

Polynomial parse_polynomial(const RingPtr& ring, std::string_view text) {
  std::size_t pos = 0;
  Polynomial f = parse_polynomial_prefix(ring, text, pos);
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos != text.size())
    throw Error("column " + std::to_string(pos + 1) + ": unexpected '" + std::string(1, text[pos]) + "'");
  return f;
}

}  // namespace rfx
