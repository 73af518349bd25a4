#include "session.hpp"

#include <algorithm>
#include <chrono>
#include <set>

#include "rfx/approx.hpp"
#include "rfx/error.hpp"

namespace rfx::cli {

using json = nlohmann::ordered_json;

namespace {

std::string join(const std::vector<std::string>& parts, const std::string& sep = ", ") {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
  return s;
}

std::vector<std::string> strings(const std::vector<Polynomial>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(p.to_string());
  return out;
}

std::string ideal_text(const std::vector<Polynomial>& ps) { return ps.empty() ? "(0)" : "(" + join(strings(ps)) + ")"; }
std::string ideal_text(const GroebnerBasis& gb) { return ideal_text(gb.polynomials()); }

json hilbert_json(const HilbertSeries& h) {
  HilbertSeries r = h.reduced();
  json num = json::array();
  for (const auto& c : r.numerator_coefficients()) num.push_back(c.get_si());
  return {{"offset", r.numerator_offset()}, {"numerator", num}, {"denominator", r.denominator()}};
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (const auto& row : m.to_strings()) rows.push_back(row);
  return rows;
}

std::string vecterm_text(const PolyRing& r, const VecTerm& t) {
  bool one = std::all_of(t.exponents.begin(), t.exponents.end(), [](int e) { return e == 0; });
  return (one ? "" : format_monomial(r, t.exponents) + "*") + "e" + std::to_string(t.comp + 1);
}

std::string field_text(const Field& f) { return f.name(); }

std::string point_text(const std::vector<Scalar>& p) {
  std::vector<std::string> s;
  for (const auto& c : p) s.push_back(c.get_str());
  return "(" + join(s, ",") + ")";
}

void add_certificate(Report& r, const Certificate& c, const std::string& prefix = "") {
  for (const auto& w : c.witnesses)
    r.witnesses.push_back({{"check", w.check}, {"subject", prefix + w.subject}, {"ok", w.ok}, {"detail", w.detail}});
}

// Worst of two verdicts: fails > inconclusive > holds.
std::string combine(const std::string& a, const std::string& b) {
  auto rank = [](const std::string& v) { return v == "fails" ? 2 : v == "inconclusive" ? 1 : 0; };
  return rank(a) >= rank(b) ? a : b;
}

std::string module_summary(const FPModule& M) {
  std::string s = std::to_string(M.generators()) + " generators, " + std::to_string(M.relations()) + " relations";
  if (M.is_graded()) s += ", Hilbert series " + hilbert_series(M).to_string();
  return s;
}

json module_json(const FPModule& M) {
  json j = {{"generators", M.generators()}, {"relations", M.relations()}, {"presentation", matrix_json(M.presentation())}};
  if (M.is_graded()) {
    j["degrees"] = M.degrees();
    j["hilbert"] = hilbert_json(hilbert_series(M));
  }
  return j;
}

}  // namespace

json Report::to_json() const {
  json j;
  j["command"] = command;
  j["inputs"] = inputs;
  j["verdict"] = verdict;
  j["witnesses"] = witnesses;
  j["result"] = result;
  j["timings"] = {{"milliseconds", milliseconds}};
  return j;
}

std::string Report::to_text() const {
  std::string s = command + ": " + verdict + "\n";
  for (const auto& w : witnesses) {
    s += std::string("  [") + (w["ok"].get<bool>() ? "ok" : "FAIL") + "] " + w["check"].get<std::string>();
    std::string subject = w["subject"], detail = w["detail"];
    while (!subject.empty() && (subject.back() == ' ' || subject.back() == ':')) subject.pop_back();
    if (!subject.empty()) s += " (" + subject + ")";
    while (!detail.empty() && detail.back() == '\n') detail.pop_back();
    for (std::size_t at = detail.find('\n'); at != std::string::npos; at = detail.find('\n', at + 1))
      detail.replace(at, 1, "\n      ");
    if (!detail.empty()) s += ": " + detail;
    s += "\n";
  }
  for (const auto& l : lines) s += "  " + l + "\n";
  return s;
}

// ---------------------------------------------------------------------------------------------
// lookups

const Binding& Session::lookup(const Statement& st, std::size_t i) const {
  auto it = bindings_.find(st.refs[i]);
  if (it == bindings_.end()) throw ScriptError(st.ref_pos[i], "unknown name '" + st.refs[i] + "'");
  return it->second;
}

const Binding& Session::binding(const std::string& name) const {
  auto it = bindings_.find(name);
  if (it == bindings_.end()) throw Error("unknown name '" + name + "'");
  return it->second;
}

template <class T>
const T& Session::get(const Statement& st, std::size_t i, const std::string& what) const {
  const Binding& b = lookup(st, i);
  if (!std::holds_alternative<T>(b)) throw ScriptError(st.ref_pos[i], "'" + st.refs[i] + "' is not " + what);
  return std::get<T>(b);
}

QRingPtr Session::ring_of(const Statement& st, std::size_t i) const { return get<RingBinding>(st, i, "a ring").ring; }

RingMap Session::map_of(const Statement& st, std::size_t i) const {
  const Binding& b = lookup(st, i);
  if (const auto* m = std::get_if<MapBinding>(&b)) return m->map;
  if (const auto* r = std::get_if<RingBinding>(&b)) {
    if (!r->structure) throw ScriptError(st.ref_pos[i], "ring '" + st.refs[i] + "' is not declared over a base ring");
    return *r->structure;
  }
  throw ScriptError(st.ref_pos[i], "'" + st.refs[i] + "' is not a map or a ring over a base");
}

FPModule Session::module_of(const Statement& st, std::size_t i) const {
  const Binding& b = lookup(st, i);
  if (const auto* m = std::get_if<ModuleBinding>(&b)) return m->module;
  if (const auto* r = std::get_if<RingBinding>(&b)) return FPModule::free(r->ring, 1);
  throw ScriptError(st.ref_pos[i], "'" + st.refs[i] + "' is not a module");
}

Polynomial Session::poly(const RingPtr& r, const Expr& e) const {
  try {
    return parse_polynomial(r, e.text);
  } catch (const Error& err) {
    throw ScriptError(e.pos, std::string("cannot read '") + e.text + "': " + err.what());
  }
}

std::vector<Polynomial> Session::polys(const RingPtr& r, const std::vector<Expr>& es) const {
  std::vector<Polynomial> out;
  for (const auto& e : es) out.push_back(poly(r, e));
  return out;
}

Matrix Session::matrix(const RingPtr& r, const RawMatrix& m, const Pos& pos, std::optional<std::size_t> rows,
                       std::optional<std::size_t> cols) const {
  std::size_t nr = m.size(), nc = m.empty() ? 0 : m[0].size();
  for (const auto& row : m)
    if (row.size() != nc) throw ScriptError(pos, "matrix rows have different lengths");
  if (rows && cols && (nr == 0 || nc == 0) && (*rows == 0 || *cols == 0)) return Matrix(r, *rows, *cols);
  if ((rows && nr != *rows) || (cols && nc != *cols))
    throw ScriptError(pos, "matrix is " + std::to_string(nr) + "x" + std::to_string(nc) + ", expected " +
                               std::to_string(rows.value_or(nr)) + "x" + std::to_string(cols.value_or(nc)));
  std::vector<std::vector<Polynomial>> entries;
  for (const auto& row : m) entries.push_back(polys(r, row));
  if (nr > 0 && nc == 0) return Matrix(r, nr, 0);
  return Matrix::from_rows(r, entries);
}

std::vector<Scalar> Session::point(const Statement& st, const Point& p, std::size_t size) const {
  if (p.size() != size)
    throw ScriptError(st.pos, "point has " + std::to_string(p.size()) + " coordinates, the base has " +
                                  std::to_string(size) + " variables");
  std::vector<Scalar> out;
  for (const auto& s : p) {
    Scalar q(s);
    q.canonicalize();
    out.push_back(q);
  }
  return out;
}

MonomialOrder Session::order(const std::string& name) const {
  std::string n = name.empty() ? opt_.order : name;
  return n == "lex" ? MonomialOrder::lex() : MonomialOrder::degrevlex();
}

void Session::bind(const Statement& st, Binding b) {
  if (bindings_.count(st.name)) throw ScriptError(st.pos, "name '" + st.name + "' is already bound");
  bindings_.emplace(st.name, std::move(b));
  order_.push_back(st.name);
}

std::vector<std::string> Session::names() const { return order_; }

// ---------------------------------------------------------------------------------------------
// declarations

void Session::declare_ring(const Statement& st) {
  RingBinding out;
  if (st.field) {
    Field f = st.field->kind == "QQ" ? Field::rationals() : st.field->kind == "k" ? opt_.field : Field::prime(st.field->p);
    std::set<std::string> seen(st.variables.begin(), st.variables.end());
    if (seen.size() != st.variables.size()) throw ScriptError(st.pos, "variable names must be distinct");
    RingPtr P = make_ring(f, st.variables, order(st.order));
    if (!st.weights.empty() && st.weights.size() != st.variables.size())
      throw ScriptError(st.pos, "weights must list one weight per variable");
    out.ring = make_quotient(P, polys(P, st.exprs), st.weights);
  } else {
    const RingBinding& base = get<RingBinding>(st, 0, "a ring");
    const QuotientRing& B = *base.ring;
    if (st.form == "polynomial") {
      std::vector<std::string> vars = B.ambient()->variables();
      for (const auto& v : st.variables) {
        if (std::find(vars.begin(), vars.end(), v) != vars.end())
          throw ScriptError(st.pos, "variable '" + v + "' is already a variable of " + st.refs[0]);
        vars.push_back(v);
      }
      std::set<std::string> seen(st.variables.begin(), st.variables.end());
      if (seen.size() != st.variables.size()) throw ScriptError(st.pos, "variable names must be distinct");
      std::vector<int> weights = st.weights;
      if (weights.empty()) {
        weights = B.weights();
        weights.resize(vars.size(), 1);
      } else if (weights.size() != vars.size()) {
        throw ScriptError(st.pos, "weights must list one weight per variable, base variables included");
      }
      RingPtr P = make_ring(B.field(), vars, order(st.order));
      std::vector<Polynomial> rel;
      for (const auto& g : B.relations()) rel.push_back(transfer(g, P));
      for (const auto& g : polys(P, st.exprs)) rel.push_back(g);
      out.ring = make_quotient(P, rel, weights);
      std::vector<Polynomial> images;
      for (const auto& v : B.ambient()->variables()) images.push_back(Polynomial::variable(P, v));
      out.base = st.refs[0];
      out.structure.emplace(base.ring, out.ring, images);
    } else {
      if (!st.order.empty()) throw ScriptError(st.pos, "a quotient keeps the order of its ring");
      const RingPtr& P = B.ambient();
      std::vector<Polynomial> rel = B.relations();
      for (const auto& g : polys(P, st.exprs)) rel.push_back(g);
      std::vector<int> weights = st.weights.empty() ? B.weights() : st.weights;
      if (weights.size() != B.nvars()) throw ScriptError(st.pos, "weights must list one weight per variable");
      out.ring = make_quotient(P, rel, weights);
      if (base.structure) {
        out.base = base.base;
        out.structure.emplace(base.structure->source(), out.ring, base.structure->images());
      }
    }
  }
  bind(st, out);
}

void Session::declare_map(const Statement& st) {
  QRingPtr src = ring_of(st, 0), tgt = ring_of(st, 1);
  const auto& names = src->ambient()->variables();
  std::vector<std::optional<Polynomial>> images(names.size());
  for (const auto& [v, e] : st.images) {
    auto it = std::find(names.begin(), names.end(), v);
    if (it == names.end()) throw ScriptError(e.pos, "'" + v + "' is not a variable of " + st.refs[0]);
    auto k = static_cast<std::size_t>(it - names.begin());
    if (images[k]) throw ScriptError(e.pos, "'" + v + "' has two images");
    images[k] = poly(tgt->ambient(), e);
  }
  std::vector<Polynomial> imgs;
  for (std::size_t k = 0; k < names.size(); ++k) {
    if (!images[k]) throw ScriptError(st.pos, "no image for '" + names[k] + "'");
    imgs.push_back(*images[k]);
  }
  MapBinding out{RingMap(src, tgt, imgs), st.refs[0], st.refs[1], st.keyword == "section"};
  if (out.section) {
    const RingBinding& s = get<RingBinding>(st, 0, "a ring");
    if (!s.structure || s.base != st.refs[1])
      throw ScriptError(st.pos, "a section " + st.refs[0] + " -> " + st.refs[1] + " needs " + st.refs[0] +
                                    " declared over " + st.refs[1]);
    if (!s.structure->then(out.map).is_identity())
      throw ScriptError(st.pos, "not a section: the composite " + st.refs[1] + " -> " + st.refs[0] + " -> " +
                                    st.refs[1] + " is not the identity");
  }
  bind(st, out);
}

void Session::declare_ideal(const Statement& st) {
  QRingPtr R = ring_of(st, 0);
  bind(st, IdealBinding{st.refs[0], polys(R->ambient(), st.exprs)});
}

void Session::declare_module(const Statement& st) {
  ModuleBinding out;
  const std::string& f = st.form;
  auto degrees = [&]() -> std::optional<std::vector<int>> {
    if (st.ints.empty()) return std::nullopt;
    return st.ints;
  };
  if (f == "coker" || f == "free" || f == "residue" || f == "quotient") {
    out.ring = st.refs[0];
    QRingPtr R = ring_of(st, 0);
    if (f == "coker") {
      Matrix m = matrix(R->ambient(), st.matrices[0], st.pos);
      out.module = FPModule(R, m, degrees());
    } else if (f == "free") {
      long n = st.options.at("rank");
      if (n < 0) throw ScriptError(st.pos, "rank must be nonnegative");
      out.module = FPModule::free(R, static_cast<std::size_t>(n), st.ints);
    } else if (f == "residue") {
      out.module = FPModule::residue_field(R);
    } else {
      out.module = FPModule::cyclic(R, polys(R->ambient(), st.exprs));
    }
  } else if (f == "ideal") {
    const IdealBinding& I = get<IdealBinding>(st, 0, "an ideal");
    out.ring = I.ring;
    QRingPtr R = std::get<RingBinding>(bindings_.at(I.ring)).ring;
    out.module = ideal_module(R, I.generators).module;
    out.ideal = I.generators;
  } else {
    const ModuleBinding& M = get<ModuleBinding>(st, 0, "a module");
    out.ring = M.ring;
    if (f == "dual") out.module = dual_module(M.module).module;
    else if (f == "transpose") out.module = transpose(M.module);
    else if (f == "syzygy") {
      long n = st.options.at("n");
      if (n < 0) throw ScriptError(st.pos, "syzygy index must be nonnegative");
      out.module = syzygy(M.module, static_cast<std::size_t>(n));
    } else {  // fibre
      RingMap h = map_of(st, 1);
      if (!same_ring(h.target(), M.module.ring())) throw ScriptError(st.pos, "the map does not end in the module's ring");
      out.module = fibre(M.module, h, point(st, st.points[0], h.source()->nvars()));
      out.ring.clear();
    }
  }
  bind(st, out);
}

void Session::declare_complex(const Statement& st) {
  ComplexBinding out;
  const std::string& f = st.form;
  int w = opt_.window;
  if (f == "resolution") {
    const ModuleBinding& M = get<ModuleBinding>(st, 0, "a module");
    long len = st.options.count("length") ? st.options.at("length") : w;
    if (len < 1) throw ScriptError(st.pos, "length must be positive");
    out.ring = M.ring;
    out.complex = resolution_complex(free_resolution(M.module, static_cast<std::size_t>(len)));
  } else if (f == "periodic") {
    const MfBinding& m = get<MfBinding>(st, 0, "a matrix factorization");
    long lo = st.options.count("from") ? st.options.at("from") : 0;
    long hi = st.options.count("to") ? st.options.at("to") : w;
    out.complex = two_periodic(m.mf, static_cast<int>(lo), static_cast<int>(hi)).complex;
  } else if (f == "koszul") {
    QRingPtr R = ring_of(st, 0);
    out.ring = st.refs[0];
    out.complex = koszul_complex(R, polys(R->ambient(), st.exprs));
  } else if (f == "dual") {
    const ComplexBinding& C = get<ComplexBinding>(st, 0, "a complex");
    out.ring = C.ring;
    out.complex = dual_complex(C.complex);
  } else if (f == "hull") {
    const ModuleBinding& M = get<ModuleBinding>(st, 0, "a module");
    long win = st.options.count("window") ? st.options.at("window") : w;
    out.ring = M.ring;
    out.complex = hull(M.module, static_cast<int>(win)).complex;
  } else {  // explicit
    QRingPtr R = ring_of(st, 0);
    out.ring = st.refs[0];
    std::vector<std::size_t> ranks;
    for (int r : st.ints) {
      if (r < 0) throw ScriptError(st.pos, "ranks must be nonnegative");
      ranks.push_back(static_cast<std::size_t>(r));
    }
    if (ranks.empty()) throw ScriptError(st.pos, "a complex needs at least one term");
    if (st.matrices.size() + 1 != ranks.size())
      throw ScriptError(st.pos, std::to_string(ranks.size()) + " terms need " + std::to_string(ranks.size() - 1) +
                                    " differentials, found " + std::to_string(st.matrices.size()));
    std::vector<Matrix> d;
    for (std::size_t k = 0; k < st.matrices.size(); ++k)
      d.push_back(matrix(R->ambient(), st.matrices[k], st.pos, ranks[k + 1], ranks[k]));
    std::optional<std::vector<std::vector<int>>> deg;
    if (!st.degrees.empty()) deg = st.degrees;
    out.complex = FreeComplex(R, static_cast<int>(st.options.at("from")), ranks, d, deg);
  }
  bind(st, out);
}

void Session::declare_mf(const Statement& st) {
  MfBinding out;
  const std::string& f = st.form;
  if (f == "knudsen") {
    Scalar g(st.rationals[0]), d(st.rationals[1]);
    g.canonicalize();
    d.canonicalize();
    PlaneCurveData data = knudsen_family(opt_.field, g, d);
    out.mf = plane_curve_mf(data.F, data.h, data.section).mf;
    out.data = data;
    out.origin = "knudsen(" + g.get_str() + "," + d.get_str() + ")";
  } else if (f == "plane") {
    RingMap h = map_of(st, 0);
    const MapBinding& p = get<MapBinding>(st, 1, "a section");
    Polynomial F = poly(h.target()->ambient(), st.exprs[0]);
    PlaneCurveMF pc = plane_curve_mf(F, h, p.map);
    out.mf = pc.mf;
    out.data = pc.data;
    out.origin = "plane (" + F.to_string() + ") over " + st.refs[0] + " section " + st.refs[1];
  } else {
    QRingPtr T = ring_of(st, 0);
    const RingPtr& P = T->ambient();
    Matrix Phi = matrix(P, st.matrices[0], st.pos), Psi = matrix(P, st.matrices[1], st.pos);
    Polynomial F = poly(P, st.exprs[0]);
    out.mf = make_mf(T, Phi, Psi, F);
    out.origin = "explicit " + st.refs[0] + " " + Phi.to_string() + " " + Psi.to_string() + " (" + F.to_string() + ")";
  }
  bind(st, out);
}

// ---------------------------------------------------------------------------------------------
// printing

std::string Session::print(const std::string& name) const {
  const Binding& b = binding(name);
  if (const auto* r = std::get_if<RingBinding>(&b)) {
    const QuotientRing& R = *r->ring;
    const auto& vars = R.ambient()->variables();
    std::string s = "ring " + name + " = ";
    std::size_t first = 0;
    if (r->base.empty()) {
      s += field_text(R.field());
    } else {
      s += r->base;
      first = std::get<RingBinding>(bindings_.at(r->base)).ring->nvars();
    }
    s += "[" + join(std::vector<std::string>(vars.begin() + static_cast<long>(first), vars.end())) + "]";
    if (!R.relations().empty()) s += "/" + ideal_text(R.relations());
    if (std::any_of(R.weights().begin(), R.weights().end(), [](int w) { return w != 1; })) {
      std::vector<std::string> ws;
      for (int w : R.weights()) ws.push_back(std::to_string(w));
      s += " weights (" + join(ws) + ")";
    }
    std::string ord = R.ambient()->order().kind() == MonomialOrder::Kind::Lex ? "lex" : "degrevlex";
    if (ord != opt_.order) s += " order " + ord;
    return s;
  }
  if (const auto* m = std::get_if<MapBinding>(&b)) {
    const auto& names = m->map.source()->ambient()->variables();
    std::vector<std::string> parts;
    for (std::size_t k = 0; k < names.size(); ++k) parts.push_back(names[k] + " -> " + m->map.images()[k].to_string());
    return std::string(m->section ? "section " : "map ") + name + ": " + m->source + " -> " + m->target + " { " +
           join(parts) + (parts.empty() ? "}" : " }");
  }
  if (const auto* i = std::get_if<IdealBinding>(&b)) {
    return "ideal " + name + " = (" + join(strings(i->generators)) + ") in " + i->ring;
  }
  if (const auto* mo = std::get_if<ModuleBinding>(&b)) {
    if (mo->ring.empty()) throw Error("module '" + name + "' lives over an unnamed fibre ring and cannot be printed");
    const FPModule& M = mo->module;
    std::string s = "module " + name + " = coker " + mo->ring + " ";
    const Matrix& p = M.presentation();
    if (p.rows() == 0) {
      s += "[]";
    } else {
      std::vector<std::string> rows;
      for (const auto& row : p.to_strings()) rows.push_back("[" + join(row) + "]");
      s += "[" + join(rows) + "]";
    }
    if (M.is_graded()) {
      std::vector<std::string> ds;
      for (int d : M.degrees()) ds.push_back(std::to_string(d));
      s += " degrees (" + join(ds) + ")";
    }
    return s;
  }
  if (const auto* c = std::get_if<ComplexBinding>(&b)) {
    if (c->ring.empty()) throw Error("complex '" + name + "' lives over an unnamed ring and cannot be printed");
    const FreeComplex& E = c->complex;
    std::vector<std::string> ranks, ds, degs;
    for (auto r : E.ranks()) ranks.push_back(std::to_string(r));
    for (int i = E.lo(); i < E.hi(); ++i) {
      Matrix d = E.differential(i);
      std::vector<std::string> rows;
      for (const auto& row : d.to_strings()) rows.push_back("[" + join(row) + "]");
      ds.push_back("[" + join(rows) + "]");
    }
    std::string s = "complex " + name + " = explicit " + c->ring + " from " + std::to_string(E.lo()) + " ranks (" +
                    join(ranks) + ")";
    if (!ds.empty()) s += " d (" + join(ds) + ")";
    if (E.is_graded()) {
      for (int i = E.lo(); i <= E.hi(); ++i) {
        std::vector<std::string> row;
        const auto deg = E.degrees(i);
        for (int d : *deg) row.push_back(std::to_string(d));
        degs.push_back("(" + join(row) + ")");
      }
      s += " degrees (" + join(degs) + ")";
    }
    return s;
  }
  const auto& m = std::get<MfBinding>(b);
  return "mf " + name + " = " + m.origin;
}

bool Session::equal(const std::string& a, const std::string& b) const {
  const Binding &x = binding(a), &y = binding(b);
  if (x.index() != y.index()) return false;
  if (const auto* r = std::get_if<RingBinding>(&x)) {
    const auto& s = std::get<RingBinding>(y);
    return *r->ring == *s.ring && r->base == s.base;
  }
  if (const auto* m = std::get_if<MapBinding>(&x)) {
    const auto& n = std::get<MapBinding>(y);
    return same_ring(m->map.source(), n.map.source()) && same_ring(m->map.target(), n.map.target()) &&
           m->map.images() == n.map.images() && m->section == n.section;
  }
  if (const auto* i = std::get_if<IdealBinding>(&x)) {
    const auto& j = std::get<IdealBinding>(y);
    return i->ring == j.ring && i->generators == j.generators;
  }
  if (const auto* mo = std::get_if<ModuleBinding>(&x)) return mo->module == std::get<ModuleBinding>(y).module;
  if (const auto* c = std::get_if<ComplexBinding>(&x)) return c->complex == std::get<ComplexBinding>(y).complex;
  const auto &m = std::get<MfBinding>(x), &n = std::get<MfBinding>(y);
  return same_ring(m.mf.ambient, n.mf.ambient) && m.mf.F == n.mf.F && m.mf.Phi == n.mf.Phi && m.mf.Psi == n.mf.Psi;
}

// ---------------------------------------------------------------------------------------------
// commands

Report Session::check(const Statement& st) {
  Report r;
  const std::string& f = st.form;
  int w = opt_.window;
  if (f == "reflexive") {
    Certificate c = is_reflexive(get<ModuleBinding>(st, 0, "a module").module);
    add_certificate(r, c);
    r.verdict = to_string(c.verdict);
  } else if (f == "nstab") {
    long n = st.options.count("n") ? st.options.at("n") : w;
    const Binding& b = lookup(st, 0);
    if (const auto* cb = std::get_if<ComplexBinding>(&b)) {
      // H^i(E) = H^i(E^∨) = 0 away from the edges, up to index n
      const FreeComplex& E = cb->complex;
      FreeComplex D = dual_complex(E);
      Certificate c;
      c.window = static_cast<int>(n);
      for (int i = E.lo() + 1; i < E.hi() && i <= n; ++i)
        c.record(vanishing("H^" + std::to_string(i) + "(E) = 0", "complex", cohomology(E, i)));
      for (int i = D.lo() + 1; i < D.hi() && i <= n; ++i)
        c.record(vanishing("H^" + std::to_string(i) + "(E^dual) = 0", "dual complex", cohomology(D, i)));
      add_certificate(r, c);
      r.verdict = to_string(c.verdict);
      r.lines.push_back("window: n <= " + std::to_string(n));
    } else {
      const ModuleBinding& M = get<ModuleBinding>(st, 0, "a module or complex");
      Certificate c;
      if (st.options.count("over")) {
        RingMap h = map_of(st, static_cast<std::size_t>(st.options.at("over")));
        std::vector<std::vector<Scalar>> pts;
        for (const auto& p : st.points) pts.push_back(point(st, p, h.source()->nvars()));
        if (pts.empty()) pts.push_back(std::vector<Scalar>(h.source()->nvars(), Scalar(0)));
        FlatnessWitness fw;
        if (M.module.is_free_presentation()) fw.kind = FlatnessWitness::Kind::Free;
        else if (M.ideal) fw = {FlatnessWitness::Kind::IdealQuotient, *M.ideal};
        c = relative_certificate(M.module, h, pts, static_cast<int>(n), fw);
        r.lines.push_back("sampled points: " + std::to_string(pts.size()));
      } else {
        c = is_n_stably_reflexive(M.module, static_cast<int>(n));
      }
      add_certificate(r, c);
      r.verdict = to_string(c.verdict);
      r.result["n"] = n;
    }
  } else if (f == "orthogonal") {
    long n = st.options.count("n") ? st.options.at("n") : w;
    Certificate c = is_left_n_orthogonal(get<ModuleBinding>(st, 0, "a module").module, static_cast<int>(n));
    add_certificate(r, c);
    r.verdict = to_string(c.verdict);
    r.result["n"] = n;
  } else if (f == "knudsen") {
    RingMap h = map_of(st, 0);
    const MapBinding& p = get<MapBinding>(st, 1, "a section");
    std::vector<std::vector<Scalar>> pts;
    for (const auto& q : st.points) pts.push_back(point(st, q, h.source()->nvars()));
    long win = st.options.count("window") ? st.options.at("window") : w;
    KnudsenReport k = knudsen_invariants(h, p.map, pts, static_cast<int>(win));
    add_certificate(r, k.certificate);
    r.verdict = to_string(k.certificate.verdict);
    std::vector<std::string> fitt, sfitt;
    for (const auto& g : k.quotient_fitting) fitt.push_back(ideal_text(g));
    for (const auto& g : k.section_fitting) sfitt.push_back(ideal_text(g));
    r.result = {{"ideal", strings(k.ideal)},
                {"quotient_fitting", fitt},
                {"epsilon", strings(k.epsilon_values)},
                {"x", k.x_lift.to_string()},
                {"f", k.f_lift.to_string()},
                {"pairing", strings(k.pairing.polynomials())},
                {"section_fitting", sfitt},
                {"closed_pairing", strings(k.closed_pairing.polynomials())},
                {"closed_dual_dimension", k.closed_dual_dimension},
                {"closed_regular", k.closed_regular}};
    r.lines.push_back("I = " + ideal_text(k.ideal));
    r.lines.push_back("I*/R over the base: Fitt_0 = " + fitt[0] + ", Fitt_1 = " + fitt[1]);
    r.lines.push_back("epsilon on the generators of I: (" + join(strings(k.epsilon_values)) + ") = f/x with x = " +
                      k.x_lift.to_string() + ", f = " + k.f_lift.to_string());
    r.lines.push_back("I*I^* = " + ideal_text(k.pairing));
    for (std::size_t i = 0; i < sfitt.size(); ++i)
      r.lines.push_back("Fitt_" + std::to_string(i) + "(I^* (x) S) = " + sfitt[i]);
    r.lines.push_back("closed fibre: pairing image " + ideal_text(k.closed_pairing) + ", dim m^*(x)k = " +
                      std::to_string(k.closed_dual_dimension) + (k.closed_regular ? ", regular" : ", singular"));
  } else {  // regular-seq
    QRingPtr R = ring_of(st, 0);
    auto seq = polys(R->ambient(), st.exprs);
    bool ok = is_regular_sequence(R, seq);
    Certificate c;
    c.record({"Koszul homology vanishes below the top and R/(f) != 0", "(" + join(strings(seq)) + ")", ok,
              ok ? "regular sequence" : "not a regular sequence"});
    add_certificate(r, c);
    r.verdict = to_string(c.verdict);
  }
  return r;
}

Report Session::compute(const Statement& st) {
  Report r;
  r.verdict = "computed";
  const std::string& f = st.form;
  int w = opt_.window;
  if (f == "gb") {
    const Binding& b = lookup(st, 0);
    if (const auto* i = std::get_if<IdealBinding>(&b)) {
      QRingPtr R = std::get<RingBinding>(bindings_.at(i->ring)).ring;
      auto gb = ideal_in(*R, i->generators);
      r.result["basis"] = strings(gb.polynomials());
      r.lines.push_back("GB = " + ideal_text(gb));
    } else if (const auto* rb = std::get_if<RingBinding>(&b)) {
      r.result["basis"] = strings(rb->ring->ideal().polynomials());
      r.lines.push_back("GB = " + ideal_text(rb->ring->ideal()));
    } else {
      FPModule M = module_of(st, 0);
      auto gb = span_basis(*M.ring(), M.presentation());
      r.result["basis"] = matrix_json(gb.matrix());
      r.lines.push_back("GB columns = " + gb.matrix().to_string());
    }
  } else if (f == "nf") {
    const Binding& b = lookup(st, 0);
    Polynomial out;
    if (const auto* i = std::get_if<IdealBinding>(&b)) {
      QRingPtr R = std::get<RingBinding>(bindings_.at(i->ring)).ring;
      out = ideal_in(*R, i->generators).reduce(poly(R->ambient(), st.exprs[0]));
    } else {
      QRingPtr R = ring_of(st, 0);
      out = R->reduce(poly(R->ambient(), st.exprs[0]));
    }
    r.result["normal_form"] = out.to_string();
    r.lines.push_back("NF = " + out.to_string());
  } else if (f == "syz") {
    const Binding& b = lookup(st, 0);
    Matrix s;
    if (const auto* i = std::get_if<IdealBinding>(&b)) {
      QRingPtr R = std::get<RingBinding>(bindings_.at(i->ring)).ring;
      s = syzygies(*R, Matrix::row_vector(R->ambient(), i->generators));
    } else {
      FPModule M = module_of(st, 0);
      s = syzygies(*M.ring(), M.presentation());
    }
    r.result["syzygies"] = matrix_json(s);
    r.lines.push_back("syzygies = " + s.to_string());
  } else if (f == "resolve") {
    FPModule M = module_of(st, 0);
    long len = st.options.count("length") ? st.options.at("length") : w;
    if (len < 1) throw ScriptError(st.pos, "length must be positive");
    Resolution res = free_resolution(M, static_cast<std::size_t>(len));
    json maps = json::array();
    for (const auto& m : res.maps) maps.push_back(matrix_json(m));
    r.result = {{"betti", res.betti()}, {"maps", maps}};
    if (res.graded) r.result["degrees"] = res.degrees;
    std::vector<std::string> b;
    for (auto x : res.betti()) b.push_back(std::to_string(x));
    r.lines.push_back("ranks: " + join(b, " <- "));
    if (res.graded) {
      for (std::size_t i = 0; i < res.degrees.size(); ++i) {
        std::vector<std::string> ds;
        for (int d : res.degrees[i]) ds.push_back(std::to_string(d));
        r.lines.push_back("F_" + std::to_string(i) + " degrees (" + join(ds) + ")");
      }
    }
  } else if (f == "ext") {
    FPModule M = module_of(st, 0), N = module_of(st, 1);
    long upto = st.options.count("upto") ? st.options.at("upto") : w;
    if (upto < 0) throw ScriptError(st.pos, "upto must be nonnegative");
    auto table = ext_modules(M, N, static_cast<std::size_t>(upto));
    json rows = json::array();
    for (std::size_t i = 0; i < table.size(); ++i) {
      const FPModule& E = table[i];
      json row = {{"i", i}, {"zero", E.is_zero()}};
      std::string line = "Ext^" + std::to_string(i) + " = ";
      if (E.is_zero()) {
        line += "0";
      } else if (E.is_graded()) {
        HilbertSeries h = hilbert_series(E);
        row["hilbert"] = hilbert_json(h);
        line += "Hilbert series " + h.to_string();
      } else {
        std::size_t g = minimal_generator_count(E);
        row["generators"] = g;
        line += "nonzero, " + std::to_string(g) + " generators";
      }
      rows.push_back(row);
      r.lines.push_back(line);
    }
    r.result["ext"] = rows;
  } else if (f == "dual") {
    DualModule D = dual_module(get<ModuleBinding>(st, 0, "a module").module);
    r.result = {{"module", module_json(D.module)}, {"generators", matrix_json(D.generators)}};
    r.lines.push_back("M^* = " + D.module.to_string());
    r.lines.push_back("generators of M^* on the generators of M: " + D.generators.to_string());
  } else if (f == "transpose") {
    FPModule T = transpose(get<ModuleBinding>(st, 0, "a module").module);
    r.result["module"] = module_json(T);
    r.lines.push_back("D(M) = " + T.to_string());
  } else if (f == "hilbert") {
    const Binding& b = lookup(st, 0);
    HilbertSeries h;
    if (const auto* rb = std::get_if<RingBinding>(&b)) h = hilbert_series(rb->ring);
    else h = hilbert_series(get<ModuleBinding>(st, 0, "a module or ring").module);
    r.result["hilbert"] = hilbert_json(h);
    r.lines.push_back("H(t) = " + h.to_string());
  } else if (f == "fitting") {
    FPModule M = get<ModuleBinding>(st, 0, "a module").module;
    std::vector<std::size_t> idx;
    if (st.options.count("index")) {
      if (st.options.at("index") < 0) throw ScriptError(st.pos, "index must be nonnegative");
      idx.push_back(static_cast<std::size_t>(st.options.at("index")));
    } else {
      for (std::size_t i = 0; i <= M.generators(); ++i) idx.push_back(i);
    }
    json rows = json::array();
    for (auto i : idx) {
      auto gb = fitting_ideal(M, i);
      rows.push_back({{"i", i}, {"ideal", strings(gb.polynomials())}});
      r.lines.push_back("Fitt_" + std::to_string(i) + " = " + ideal_text(gb));
    }
    r.result["fitting"] = rows;
  } else if (f == "depth") {
    DepthReport d = depth_at_irrelevant(get<ModuleBinding>(st, 0, "a module").module, w);
    r.result["depth"] = d.depth ? json(*d.depth) : json(nullptr);
    r.result["window"] = d.window;
    r.lines.push_back("depth: " + d.to_string());
    if (!d.depth) r.verdict = "inconclusive";
  } else {  // gdim
    GdimEstimate g = gorenstein_dim_estimate(get<ModuleBinding>(st, 0, "a module").module, w);
    add_certificate(r, g.certificate);
    r.result["gdim"] = g.value ? json(*g.value) : json(nullptr);
    r.lines.push_back(g.value ? "G-dimension " + std::to_string(*g.value)
                              : "G-dimension not determined within window " + std::to_string(w));
    if (!g.value) r.verdict = "inconclusive";
  }
  return r;
}

Report Session::approximate(const Statement& st) {
  Report r;
  const FPModule& N = get<ModuleBinding>(st, 0, "a module").module;
  long n = st.options.count("n") ? st.options.at("n") : 0;
  long rr = st.options.count("r") ? st.options.at("r") : 1;
  ApproximationResult a = rfx::approximate(N, static_cast<int>(n), static_cast<int>(rr), opt_.minimal);
  Certificate c = verify(a);
  add_certificate(r, a.hypothesis, "hypothesis: ");
  add_certificate(r, c);
  std::string verdict = combine(to_string(a.hypothesis.verdict), to_string(c.verdict));
  if (st.options.count("over")) {
    RingMap h = map_of(st, static_cast<std::size_t>(st.options.at("over")));
    if (st.points.empty()) throw ScriptError(st.pos, "'over' needs a point: at (..)");
    auto pt = point(st, st.points[0], h.source()->nvars());
    Certificate s = verify(a, h, pt);
    add_certificate(r, s, "at " + point_text(pt) + ": ");
    verdict = combine(verdict, to_string(s.verdict));
  }
  r.verdict = verdict;
  r.result = {{"n", n}, {"r", rr}, {"s", a.s}, {"L", module_json(a.L)}, {"M", module_json(a.M)},
              {"Lp", module_json(a.Lp)}, {"Mp", module_json(a.Mp)}};
  r.lines.push_back("0 -> L -> M -> N -> 0 with");
  r.lines.push_back("  L: " + module_summary(a.L));
  r.lines.push_back("  M: " + module_summary(a.M));
  r.lines.push_back("0 -> N -> L' -> M' -> 0 with");
  r.lines.push_back("  L': " + module_summary(a.Lp));
  r.lines.push_back("  M': " + module_summary(a.Mp));
  return r;
}

Report Session::stabilize(const Statement& st) {
  Report r;
  const MfBinding& m = get<MfBinding>(st, 0, "a matrix factorization");
  if (!m.data) throw ScriptError(st.ref_pos[0], "'" + st.refs[0] + "' carries no plane-curve data (use knudsen or plane)");
  std::vector<Scalar> pt;
  if (!st.points.empty()) pt = point(st, st.points[0], m.data->h.source()->nvars());
  StabilizationReport s = stabilization(*m.data, pt);
  add_certificate(r, s.certificate);
  r.verdict = to_string(s.certificate.verdict);
  r.result = {{"sym", strings(s.sym->relations())},
              {"chart_U", strings(s.chart_U->relations())},
              {"chart_V", strings(s.chart_V->relations())},
              {"closed_U", strings(s.closed_U_eliminated->relations())},
              {"closed_V", strings(s.closed_V_eliminated->relations())},
              {"section_ideal", strings(s.section_ideal)},
              {"exceptional_dimension", s.exceptional_dimension},
              {"exceptional_fibre_dim", s.exceptional_fibre_dim}};
  r.lines.push_back("Sym = " + s.sym->to_string());
  r.lines.push_back("U-chart: " + s.chart_U->to_string());
  r.lines.push_back("V-chart: " + s.chart_V->to_string());
  r.lines.push_back("closed U-chart: " + s.closed_U_eliminated->to_string());
  r.lines.push_back("closed V-chart: " + s.closed_V_eliminated->to_string());
  r.lines.push_back("section: " + ideal_text(s.section_ideal) + " in the U-chart");
  r.lines.push_back("exceptional fibre: dim m^*(x)k = " + std::to_string(s.exceptional_dimension) +
                    ", fibre dimension " + std::to_string(s.exceptional_fibre_dim));
  return r;
}

Report Session::versal(const Statement& st) {
  Report r;
  QRingPtr P = ring_of(st, 0);
  VersalFamily v = versal_family(P, polys(P->ambient(), st.exprs));
  add_certificate(r, v.pointed.certificate);
  r.verdict = to_string(v.pointed.certificate.verdict);
  std::vector<std::string> basis, g;
  for (const auto& t : v.t1.basis) basis.push_back(vecterm_text(*P->ambient(), t));
  for (const auto& gj : v.t1.g) g.push_back("(" + join(strings(gj)) + ")");
  r.result = {{"T1_basis", basis},
              {"N", v.t1.N()},
              {"g", g},
              {"F", strings(v.F)},
              {"unpointed", v.unpointed_total->to_string()},
              {"pointed", strings(v.pointed.total->relations())}};
  r.lines.push_back("T1 basis: " + join(basis) + " (N = " + std::to_string(v.t1.N()) + ")");
  r.lines.push_back("F = (" + join(strings(v.F)) + ")");
  r.lines.push_back("unpointed family: " + v.unpointed_base->to_string() + " -> " + v.unpointed_total->to_string());
  r.lines.push_back("pointed family: " + v.pointed.base->to_string() + " -> " + v.pointed.total->to_string());
  return r;
}

Report Session::square(const Statement& st) {
  Report r;
  PointedFamily p = square_construction(map_of(st, 0));
  add_certificate(r, p.certificate);
  r.verdict = to_string(p.certificate.verdict);
  r.result = {{"total", strings(p.total->relations())}, {"ring", p.total->to_string()}};
  r.lines.push_back("R (x)_S R = " + p.total->to_string());
  return r;
}

std::optional<Report> Session::run(const Statement& st) {
  const std::string& k = st.keyword;
  static const std::set<std::string> declarations = {"ring", "map", "section", "ideal", "module", "complex", "mf"};
  if (declarations.count(k)) {
    try {
      if (k == "ring") declare_ring(st);
      else if (k == "map" || k == "section") declare_map(st);
      else if (k == "ideal") declare_ideal(st);
      else if (k == "module") declare_module(st);
      else if (k == "complex") declare_complex(st);
      else declare_mf(st);
    } catch (const Error& e) {
      throw ScriptError(st.pos, e.what());
    }
    return std::nullopt;
  }
  for (std::size_t i = 0; i < st.refs.size(); ++i) lookup(st, i);
  auto start = std::chrono::steady_clock::now();
  Report r;
  try {
    if (k == "print") {
      r.verdict = "computed";
      std::string text = print(st.refs[0]);
      r.result["text"] = text;
      r.lines.push_back(text + ";");
    } else if (k == "check") r = check(st);
    else if (k == "compute") r = compute(st);
    else if (k == "approximate") r = approximate(st);
    else if (k == "stabilize") r = stabilize(st);
    else if (k == "versal") r = versal(st);
    else r = square(st);
  } catch (const Error& e) {
    r = Report{};
    r.verdict = "error";
    r.witnesses.push_back({{"check", "operation"}, {"subject", st.text}, {"ok", false}, {"detail", e.what()}});
  }
  r.command = st.text;
  for (const auto& name : st.refs) {
    try {
      r.inputs[name] = print(name);
    } catch (const Error&) {
      r.inputs[name] = nullptr;
    }
  }
  r.milliseconds = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace rfx::cli
