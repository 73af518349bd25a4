#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "rfx/stab.hpp"
#include "script.hpp"

namespace rfx::cli {

struct Options {
  int window = 6;
  std::string order = "degrevlex";
  Field field = Field::rationals();  // used for `k` and for knudsen families
  bool minimal = false;
};

struct Report {
  std::string command;
  nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
  std::string verdict;  // holds, fails, inconclusive, computed, error
  nlohmann::ordered_json witnesses = nlohmann::ordered_json::array();
  nlohmann::ordered_json result = nlohmann::ordered_json::object();
  double milliseconds = 0;
  std::vector<std::string> lines;  // human-readable body

  nlohmann::ordered_json to_json() const;
  std::string to_text() const;
};

struct RingBinding {
  QRingPtr ring;
  std::string base;                 // empty when declared over a field
  std::optional<RingMap> structure; // base -> ring
};
struct MapBinding {
  RingMap map;
  std::string source, target;
  bool section = false;
};
struct IdealBinding {
  std::string ring;
  std::vector<Polynomial> generators;
};
struct ModuleBinding {
  std::string ring;
  FPModule module;
  std::optional<std::vector<Polynomial>> ideal;  // set when the module is an ideal of the ring
};
struct ComplexBinding {
  std::string ring;
  FreeComplex complex;
};
struct MfBinding {
  MatrixFactorization mf;
  std::optional<PlaneCurveData> data;
  std::string origin;  // declaration text for knudsen families (their rings are unnamed)
};
using Binding = std::variant<RingBinding, MapBinding, IdealBinding, ModuleBinding, ComplexBinding, MfBinding>;

class Session {
 public:
  explicit Session(Options options = {}) : opt_(std::move(options)) {}

  // Declarations bind a name and return nothing; other statements return a report.
  // Semantic errors throw ScriptError.
  std::optional<Report> run(const Statement& st);

  // The binding as a declaration statement (without the trailing ';').
  std::string print(const std::string& name) const;
  bool equal(const std::string& a, const std::string& b) const;
  std::vector<std::string> names() const;
  const Binding& binding(const std::string& name) const;

 private:
  template <class T>
  const T& get(const Statement& st, std::size_t i, const std::string& what) const;
  const Binding& lookup(const Statement& st, std::size_t i) const;
  void bind(const Statement& st, Binding b);

  QRingPtr ring_of(const Statement& st, std::size_t i) const;
  RingMap map_of(const Statement& st, std::size_t i) const;  // map, or structure map of a ring
  FPModule module_of(const Statement& st, std::size_t i) const;  // module, or a ring as free module
  Polynomial poly(const RingPtr& r, const Expr& e) const;
  std::vector<Polynomial> polys(const RingPtr& r, const std::vector<Expr>& es) const;
  Matrix matrix(const RingPtr& r, const RawMatrix& m, const Pos& pos, std::optional<std::size_t> rows = {},
                std::optional<std::size_t> cols = {}) const;
  std::vector<Scalar> point(const Statement& st, const Point& p, std::size_t size) const;
  MonomialOrder order(const std::string& name) const;

  void declare_ring(const Statement& st);
  void declare_map(const Statement& st);
  void declare_ideal(const Statement& st);
  void declare_module(const Statement& st);
  void declare_complex(const Statement& st);
  void declare_mf(const Statement& st);

  Report check(const Statement& st);
  Report compute(const Statement& st);
  Report approximate(const Statement& st);
  Report stabilize(const Statement& st);
  Report versal(const Statement& st);
  Report square(const Statement& st);

  Options opt_;
  std::map<std::string, Binding> bindings_;
  std::vector<std::string> order_;
};

}  // namespace rfx::cli
