#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rfx::cli {

struct Pos {
  int line = 1, col = 1;
};

// Syntax and semantic errors carry the position of the offending token.
class ScriptError : public std::runtime_error {
 public:
  ScriptError(Pos pos, const std::string& msg) : std::runtime_error(msg), pos_(pos) {}
  Pos pos() const { return pos_; }

 private:
  Pos pos_;
};

// Polynomial text, parsed later in the ring the statement resolves to.
struct Expr {
  std::string text;
  Pos pos;
};
using RawMatrix = std::vector<std::vector<Expr>>;
using Point = std::vector<std::string>;  // rationals as text

struct FieldSpec {
  std::string kind;  // "QQ", "k" or "Fp"
  unsigned p = 0;
};

struct Statement {
  Pos pos;
  std::string keyword;  // ring, map, section, ideal, module, complex, mf, check, compute, ...
  std::string form;     // subcommand or constructor: coker, knudsen, ext, ...
  std::string name;     // bound name for declarations
  std::vector<std::string> refs;  // referenced bindings, in order
  std::vector<Pos> ref_pos;

  // ring
  std::optional<FieldSpec> field;
  std::vector<std::string> variables;
  std::vector<int> weights;
  std::string order;

  std::vector<Expr> exprs;
  std::vector<RawMatrix> matrices;
  std::vector<std::pair<std::string, Expr>> images;  // map bodies
  std::map<std::string, long> options;                // n, r, length, window, upto, from, to
  std::vector<Point> points;
  std::vector<int> ints;                              // ranks
  std::vector<std::vector<int>> degrees;              // module / complex degrees
  std::vector<std::string> rationals;                 // knudsen parameters

  // Canonical text of the statement, used as the report's command.
  std::string text;
};

std::vector<Statement> parse_script(const std::string& source);

}  // namespace rfx::cli
