#include "script.hpp"

#include <cctype>
#include <set>

namespace rfx::cli {

namespace {

class Cursor {
 public:
  explicit Cursor(const std::string& s) : s_(s) {}

  void skip() {
    while (i_ < s_.size()) {
      char c = s_[i_];
      if (c == '#' || (c == '/' && i_ + 1 < s_.size() && s_[i_ + 1] == '/')) {
        while (i_ < s_.size() && s_[i_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }
  bool at_end() {
    skip();
    return i_ >= s_.size();
  }
  Pos pos() {
    skip();
    return pos_;
  }
  std::size_t offset() const { return i_; }
  const std::string& source() const { return s_; }

  [[noreturn]] void fail(const std::string& expected) {
    skip();
    std::string found = i_ < s_.size() ? "'" + std::string(1, s_[i_]) + "'" : "end of input";
    throw ScriptError(pos_, "expected " + expected + ", found " + found);
  }

  bool accept(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      advance();
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail("'" + std::string(1, c) + "'");
  }
  bool accept(const std::string& tok) {
    skip();
    if (s_.compare(i_, tok.size(), tok) != 0) return false;
    for (std::size_t k = 0; k < tok.size(); ++k) advance();
    return true;
  }
  void expect(const std::string& tok) {
    if (!accept(tok)) fail("'" + tok + "'");
  }

  std::string peek_word() {
    skip();
    std::size_t j = i_;
    while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_' || s_[j] == '-')) ++j;
    return s_.substr(i_, j - i_);
  }
  bool accept_word(const std::string& w) {
    skip();
    std::size_t j = i_;
    while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_')) ++j;
    if (s_.substr(i_, j - i_) != w) return false;
    while (i_ < j) advance();
    return true;
  }
  void expect_word(const std::string& w) {
    if (!accept_word(w)) fail("'" + w + "'");
  }

  std::string ident(const std::string& what, bool dashes = false) {
    skip();
    if (i_ >= s_.size() || !(std::isalpha(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) fail(what);
    std::string out;
    while (i_ < s_.size()) {
      char c = s_[i_];
      bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
                (dashes && c == '-' && i_ + 1 < s_.size() && std::isalpha(static_cast<unsigned char>(s_[i_ + 1])));
      if (!ok) break;
      out += c;
      advance();
    }
    return out;
  }

  long integer() {
    skip();
    std::string t;
    if (i_ < s_.size() && s_[i_] == '-') {
      t += '-';
      advance();
    }
    if (i_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[i_]))) fail("an integer");
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      t += s_[i_];
      advance();
    }
    if (t.size() > 9) throw ScriptError(pos_, "integer out of range: " + t);
    return std::stol(t);
  }

  std::string rational() {
    skip();
    std::string t;
    if (i_ < s_.size() && s_[i_] == '-') {
      t += '-';
      advance();
    }
    auto digits = [&] {
      if (i_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[i_]))) fail("a rational number");
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
        t += s_[i_];
        advance();
      }
    };
    digits();
    if (accept('/')) {
      t += '/';
      digits();
    }
    return t;
  }

  // Text up to a top-level ',', ')', ']', '}' or ';'.
  Expr expr() {
    Pos p = pos();
    std::string t;
    int depth = 0;
    while (i_ < s_.size()) {
      char c = s_[i_];
      if (depth == 0 && (c == ',' || c == ')' || c == ']' || c == '}' || c == ';')) break;
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if (c == '\n' || c == '\t' || c == '\r') c = ' ';
      t += c;
      advance();
    }
    while (!t.empty() && t.back() == ' ') t.pop_back();
    if (t.empty()) throw ScriptError(p, "expected a polynomial expression");
    return {t, p};
  }

 private:
  void advance() {
    if (s_[i_] == '\n') {
      ++pos_.line;
      pos_.col = 1;
    } else {
      ++pos_.col;
    }
    ++i_;
  }
  const std::string& s_;
  std::size_t i_ = 0;
  Pos pos_;
};

std::vector<Expr> expr_list(Cursor& c) {
  std::vector<Expr> out;
  c.expect('(');
  if (c.accept(')')) return out;
  do out.push_back(c.expr());
  while (c.accept(','));
  c.expect(')');
  return out;
}

RawMatrix matrix(Cursor& c) {
  RawMatrix m;
  c.expect('[');
  if (c.accept(']')) return m;
  do {
    std::vector<Expr> row;
    c.expect('[');
    if (!c.accept(']')) {
      do row.push_back(c.expr());
      while (c.accept(','));
      c.expect(']');
    }
    m.push_back(std::move(row));
  } while (c.accept(','));
  c.expect(']');
  return m;
}

std::vector<int> int_list(Cursor& c) {
  std::vector<int> out;
  c.expect('(');
  if (c.accept(')')) return out;
  do out.push_back(static_cast<int>(c.integer()));
  while (c.accept(','));
  c.expect(')');
  return out;
}

Point point(Cursor& c) {
  Point p;
  c.expect('(');
  if (c.accept(')')) return p;
  do p.push_back(c.rational());
  while (c.accept(','));
  c.expect(')');
  return p;
}

std::vector<Point> points(Cursor& c) {
  std::vector<Point> out;
  if (!c.accept('[')) {
    out.push_back(point(c));
    return out;
  }
  do out.push_back(point(c));
  while (c.accept(','));
  c.expect(']');
  return out;
}

void ref(Cursor& c, Statement& st, const std::string& what) {
  st.ref_pos.push_back(c.pos());
  st.refs.push_back(c.ident(what));
}

// Trailing `key value` options; `at` takes points, `over` a name.
void options(Cursor& c, Statement& st, const std::set<std::string>& ints, bool at = false, bool over = false) {
  while (true) {
    std::string w = c.peek_word();
    if (ints.count(w)) {
      c.expect_word(w);
      if (st.options.count(w)) c.fail("each option once");
      st.options[w] = c.integer();
    } else if (at && w == "at") {
      c.expect_word(w);
      st.points = points(c);
    } else if (over && w == "over") {
      c.expect_word(w);
      st.options["over"] = static_cast<long>(st.refs.size());
      ref(c, st, "a map or ring name");
    } else {
      return;
    }
  }
}

FieldSpec field_spec(Cursor& c, const std::string& w) {
  if (w == "QQ" || w == "k") return {w, 0};
  // GF(p) or Fp:p
  long p;
  if (w == "GF") {
    c.expect('(');
    p = c.integer();
    c.expect(')');
  } else {
    c.expect(':');
    p = c.integer();
  }
  if (p < 2) c.fail("a prime");
  return {"Fp", static_cast<unsigned>(p)};
}

bool is_field_word(const std::string& w) { return w == "QQ" || w == "k" || w == "GF" || w == "Fp"; }

void parse_ring(Cursor& c, Statement& st) {
  st.name = c.ident("a ring name");
  if (is_field_word(st.name)) throw ScriptError(st.pos, "'" + st.name + "' is reserved for fields");
  c.expect('=');
  Pos p = c.pos();
  std::string w = c.ident("a field (QQ, k, GF(p), Fp:p) or a ring name");
  if (is_field_word(w)) {
    st.field = field_spec(c, w);
  } else {
    st.refs.push_back(w);
    st.ref_pos.push_back(p);
  }
  if (c.accept('[')) {
    st.form = "polynomial";
    if (!c.accept(']')) {
      do st.variables.push_back(c.ident("a variable name"));
      while (c.accept(','));
      c.expect(']');
    }
  } else if (st.field) {
    c.fail("'['");
  } else {
    st.form = "quotient";
  }
  if (c.accept('/')) st.exprs = expr_list(c);
  else if (st.form == "quotient") c.fail("'[' or '/'");
  while (true) {
    if (c.accept_word("weights")) st.weights = int_list(c);
    else if (c.accept_word("order")) {
      st.order = c.ident("degrevlex or lex");
      if (st.order != "degrevlex" && st.order != "lex") c.fail("degrevlex or lex");
    } else break;
  }
}

void parse_map(Cursor& c, Statement& st) {
  st.name = c.ident("a map name");
  c.expect(':');
  ref(c, st, "the source ring");
  c.expect("->");
  ref(c, st, "the target ring");
  c.expect('{');
  if (!c.accept('}')) {
    do {
      std::string v = c.ident("a source variable");
      c.expect("->");
      st.images.emplace_back(v, c.expr());
    } while (c.accept(','));
    c.expect('}');
  }
}

void parse_module(Cursor& c, Statement& st) {
  st.name = c.ident("a module name");
  c.expect('=');
  st.form = c.ident("coker, free, residue, ideal, quotient, dual, transpose, syzygy or fibre");
  if (st.form == "coker") {
    ref(c, st, "a ring name");
    st.matrices.push_back(matrix(c));
    if (c.accept_word("degrees")) st.ints = int_list(c);
  } else if (st.form == "free") {
    ref(c, st, "a ring name");
    st.options["rank"] = c.integer();
    if (c.accept_word("degrees")) st.ints = int_list(c);
  } else if (st.form == "residue" || st.form == "ideal" || st.form == "dual" || st.form == "transpose") {
    ref(c, st, "a name");
  } else if (st.form == "quotient") {
    ref(c, st, "a ring name");
    st.exprs = expr_list(c);
  } else if (st.form == "syzygy") {
    ref(c, st, "a module name");
    st.options["n"] = c.integer();
  } else if (st.form == "fibre") {
    ref(c, st, "a module name");
    c.expect_word("over");
    ref(c, st, "a map or ring name");
    c.expect_word("at");
    st.points.push_back(point(c));
  } else {
    throw ScriptError(st.pos, "unknown module constructor '" + st.form + "'");
  }
}

void parse_complex(Cursor& c, Statement& st) {
  st.name = c.ident("a complex name");
  c.expect('=');
  st.form = c.ident("resolution, periodic, koszul, dual, hull or explicit");
  if (st.form == "resolution") {
    ref(c, st, "a module name");
    options(c, st, {"length"});
  } else if (st.form == "periodic") {
    ref(c, st, "a matrix factorization name");
    options(c, st, {"from", "to"});
  } else if (st.form == "koszul") {
    ref(c, st, "a ring name");
    st.exprs = expr_list(c);
  } else if (st.form == "dual") {
    ref(c, st, "a complex name");
  } else if (st.form == "hull") {
    ref(c, st, "a module name");
    options(c, st, {"window"});
  } else if (st.form == "explicit") {
    ref(c, st, "a ring name");
    c.expect_word("from");
    st.options["from"] = c.integer();
    c.expect_word("ranks");
    st.ints = int_list(c);
    if (c.accept_word("d")) {
      c.expect('(');
      if (!c.accept(')')) {
        do st.matrices.push_back(matrix(c));
        while (c.accept(','));
        c.expect(')');
      }
    }
    if (c.accept_word("degrees")) {
      c.expect('(');
      if (!c.accept(')')) {
        do st.degrees.push_back(int_list(c));
        while (c.accept(','));
        c.expect(')');
      }
    }
  } else {
    throw ScriptError(st.pos, "unknown complex constructor '" + st.form + "'");
  }
}

void parse_mf(Cursor& c, Statement& st) {
  st.name = c.ident("a name");
  c.expect('=');
  st.form = c.ident("knudsen, plane or explicit");
  if (st.form == "knudsen") {
    c.expect('(');
    st.rationals.push_back(c.rational());
    c.expect(',');
    st.rationals.push_back(c.rational());
    c.expect(')');
  } else if (st.form == "plane") {
    c.expect('(');
    st.exprs.push_back(c.expr());
    c.expect(')');
    c.expect_word("over");
    ref(c, st, "a map or ring name");
    c.expect_word("section");
    ref(c, st, "a section name");
  } else if (st.form == "explicit") {
    ref(c, st, "a ring name");
    st.matrices.push_back(matrix(c));
    st.matrices.push_back(matrix(c));
    c.expect('(');
    st.exprs.push_back(c.expr());
    c.expect(')');
  } else {
    throw ScriptError(st.pos, "unknown factorization constructor '" + st.form + "'");
  }
}

void parse_check(Cursor& c, Statement& st) {
  st.form = c.ident("reflexive, nstab, orthogonal, knudsen or regular-seq", true);
  if (st.form == "reflexive") {
    ref(c, st, "a module name");
  } else if (st.form == "nstab") {
    ref(c, st, "a module name");
    options(c, st, {"n"}, true, true);
  } else if (st.form == "orthogonal") {
    ref(c, st, "a module name");
    options(c, st, {"n"});
  } else if (st.form == "knudsen") {
    ref(c, st, "a ring or map name");
    ref(c, st, "a section name");
    options(c, st, {"window"}, true);
  } else if (st.form == "regular-seq") {
    ref(c, st, "a ring name");
    st.exprs = expr_list(c);
  } else {
    throw ScriptError(st.pos, "unknown check '" + st.form + "'");
  }
}

void parse_compute(Cursor& c, Statement& st) {
  static const std::set<std::string> unary = {"gb", "syz", "dual", "transpose", "hilbert", "depth", "gdim"};
  st.form = c.ident("gb, nf, syz, resolve, ext, dual, transpose, hilbert, fitting, depth or gdim");
  if (unary.count(st.form)) {
    ref(c, st, "a name");
  } else if (st.form == "nf") {
    c.expect('(');
    st.exprs.push_back(c.expr());
    c.expect(')');
    c.expect_word("mod");
    ref(c, st, "an ideal or ring name");
  } else if (st.form == "resolve") {
    ref(c, st, "a module name");
    options(c, st, {"length"});
  } else if (st.form == "ext") {
    ref(c, st, "a module name");
    ref(c, st, "a module or ring name");
    options(c, st, {"upto"});
  } else if (st.form == "fitting") {
    ref(c, st, "a module name");
    options(c, st, {"index"});
  } else {
    throw ScriptError(st.pos, "unknown computation '" + st.form + "'");
  }
}

Statement statement(Cursor& c) {
  Statement st;
  st.pos = c.pos();
  std::size_t start = c.offset();
  st.keyword = c.ident("a statement keyword");
  const std::string& k = st.keyword;
  if (k == "ring") parse_ring(c, st);
  else if (k == "map" || k == "section") parse_map(c, st);
  else if (k == "ideal") {
    st.name = c.ident("an ideal name");
    c.expect('=');
    st.exprs = expr_list(c);
    c.expect_word("in");
    ref(c, st, "a ring name");
  } else if (k == "module") parse_module(c, st);
  else if (k == "complex") parse_complex(c, st);
  else if (k == "mf") parse_mf(c, st);
  else if (k == "check") parse_check(c, st);
  else if (k == "compute") parse_compute(c, st);
  else if (k == "approximate") {
    ref(c, st, "a module name");
    options(c, st, {"n", "r"}, true, true);
  } else if (k == "stabilize") {
    ref(c, st, "a matrix factorization name");
    options(c, st, {}, true);
  } else if (k == "versal") {
    st.exprs = expr_list(c);
    c.expect_word("in");
    ref(c, st, "a ring name");
  } else if (k == "square") {
    ref(c, st, "a map or ring name");
  } else if (k == "print") {
    ref(c, st, "a name");
  } else {
    throw ScriptError(st.pos, "unknown statement '" + k + "'; expected ring, map, section, ideal, module, complex, mf, "
                              "check, compute, approximate, stabilize, versal, square or print");
  }
  std::size_t end = c.offset();
  c.expect(';');
  std::string raw = c.source().substr(start, end - start);
  bool space = false;
  for (char ch : raw) {
    if (std::isspace(static_cast<unsigned char>(ch))) {
      space = true;
      continue;
    }
    if (space && !st.text.empty()) st.text += ' ';
    space = false;
    st.text += ch;
  }
  return st;
}

}  // namespace

std::vector<Statement> parse_script(const std::string& source) {
  Cursor c(source);
  std::vector<Statement> out;
  while (!c.at_end()) out.push_back(statement(c));
  return out;
}

}  // namespace rfx::cli
