#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "substrukt/calculus.hpp"
#include "substrukt/sequents.hpp"
#include "substrukt/syntax.hpp"

namespace substrukt {

using Elem = std::uint8_t;

class AlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operation tables are indexed by the connective: binary tables row-major
// (x * n + y), unary tables by x. An empty table means the operation is absent.
// limp(x, y) stores y / x, matching the formula builder.
struct FiniteAlgebra {
  std::vector<std::string> names;
  Elem zero = 0, one = 0;
  std::array<std::vector<Elem>, 7> tables;

  std::size_t size() const { return names.size(); }
  bool has(Conn c) const {
    if (is_constant(c)) return true;
    return !tables[static_cast<std::size_t>(c)].empty();
  }
  std::vector<Elem>& table(Conn c) { return tables[static_cast<std::size_t>(c)]; }
  const std::vector<Elem>& table(Conn c) const { return tables[static_cast<std::size_t>(c)]; }

  Elem op(Conn c, Elem x, Elem y) const { return tables[static_cast<std::size_t>(c)][x * size() + y]; }
  Elem op(Conn c, Elem x) const { return tables[static_cast<std::size_t>(c)][x]; }
  Elem join(Elem x, Elem y) const { return op(Conn::Join, x, y); }
  Elem fus(Elem x, Elem y) const { return op(Conn::Fus, x, y); }
  bool leq(Elem x, Elem y) const { return join(x, y) == y; }

  std::optional<Elem> index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return static_cast<Elem>(i);
    return std::nullopt;
  }

  // Range checks and the semilattice laws for join.
  void validate() const {
    const std::size_t n = size();
    if (n == 0) throw AlgebraError("empty carrier");
    if (n > 64) throw AlgebraError("carrier too large");
    if (zero >= n || one >= n) throw AlgebraError("constant outside carrier");
    if (!has(Conn::Join) || !has(Conn::Fus)) throw AlgebraError("join and fus tables are required");
    for (std::size_t k = 0; k < 7; ++k) {
      const auto& t = tables[k];
      if (t.empty()) continue;
      std::size_t want = is_binary(static_cast<Conn>(k)) ? n * n : n;
      if (t.size() != want) throw AlgebraError("table " + std::string(kConnNames[k]) + " has wrong size");
      for (Elem v : t)
        if (v >= n) throw AlgebraError("table " + std::string(kConnNames[k]) + " leaves the carrier");
    }
    for (Elem x = 0; x < n; ++x) {
      if (join(x, x) != x) throw AlgebraError("join is not idempotent");
      for (Elem y = 0; y < n; ++y) {
        if (join(x, y) != join(y, x)) throw AlgebraError("join is not commutative");
        for (Elem z = 0; z < n; ++z)
          if (join(join(x, y), z) != join(x, join(y, z))) throw AlgebraError("join is not associative");
      }
    }
  }

  friend bool operator==(const FiniteAlgebra& a, const FiniteAlgebra& b) {
    return a.names == b.names && a.zero == b.zero && a.one == b.one && a.tables == b.tables;
  }
};

inline std::vector<std::string> default_names(std::size_t n) {
  static const char* letters[] = {"a", "b", "c", "d", "e", "f", "g", "h"};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(i < 8 ? letters[i] : "x" + std::to_string(i));
  return out;
}

// ---------------------------------------------------------------- evaluation

// A formula compiled to postfix code over a fixed variable order.
class CompiledTerm {
 public:
  CompiledTerm(const Formula& f, std::vector<std::string> vars) : vars_(std::move(vars)) { emit(f); }
  explicit CompiledTerm(const Formula& f) : CompiledTerm(f, [&] {
    auto s = variables(f);
    return std::vector<std::string>(s.begin(), s.end());
  }()) {}

  const std::vector<std::string>& vars() const { return vars_; }

  Elem eval(const FiniteAlgebra& a, const Elem* val) const {
    Elem stack[256];
    std::size_t sp = 0;
    for (const auto& [kind, arg] : code_) {
      switch (kind) {
        case 0: stack[sp++] = val[arg]; break;
        case 1: stack[sp++] = arg == 0 ? a.zero : a.one; break;
        case 2: stack[sp - 1] = a.op(static_cast<Conn>(arg), stack[sp - 1]); break;
        default:
          --sp;
          stack[sp - 1] = a.op(static_cast<Conn>(arg), stack[sp - 1], stack[sp]);
          break;
      }
    }
    return stack[0];
  }

  bool fits(const FiniteAlgebra& a) const {
    for (const auto& [kind, arg] : code_)
      if (kind >= 2 && !a.has(static_cast<Conn>(arg))) return false;
    return true;
  }

 private:
  void emit(const Formula& f) {
    if (f.depth() > 200) throw AlgebraError("term too deep");
    switch (f.kind()) {
      case Formula::Kind::Var: {
        auto it = std::find(vars_.begin(), vars_.end(), f.name());
        if (it == vars_.end()) throw AlgebraError("unassigned variable " + f.name());
        code_.emplace_back(0, static_cast<std::uint8_t>(it - vars_.begin()));
        return;
      }
      case Formula::Kind::Const: code_.emplace_back(1, f.conn() == Conn::Zero ? 0 : 1); return;
      case Formula::Kind::Unary:
        emit(f.lhs());
        code_.emplace_back(2, static_cast<std::uint8_t>(f.conn()));
        return;
      case Formula::Kind::Binary:
        emit(f.lhs());
        emit(f.rhs());
        code_.emplace_back(3, static_cast<std::uint8_t>(f.conn()));
        return;
    }
  }
  std::vector<std::string> vars_;
  std::vector<std::pair<std::uint8_t, std::uint8_t>> code_;
};

using Assignment = std::map<std::string, Elem>;

inline Elem eval_term(const FiniteAlgebra& a, const Formula& t, const Assignment& v) {
  CompiledTerm c(t);
  if (!c.fits(a)) throw AlgebraError("term uses an operation the algebra lacks");
  std::vector<Elem> val;
  for (const auto& x : c.vars()) {
    auto it = v.find(x);
    if (it == v.end()) throw AlgebraError("unassigned variable " + x);
    if (it->second >= a.size()) throw AlgebraError("assignment leaves the carrier");
    val.push_back(it->second);
  }
  return c.eval(a, val.data());
}

// Calls f(values) for every assignment of n variables; stops when f returns false.
template <class F>
bool for_each_assignment(std::size_t n_vars, std::size_t n_elems, F&& f) {
  std::vector<Elem> v(n_vars, 0);
  while (true) {
    if (!f(v)) return false;
    std::size_t i = 0;
    while (i < n_vars && ++v[i] == n_elems) v[i++] = 0;
    if (i == n_vars) return true;
  }
}

struct EquationFailure {
  Equation equation;
  Assignment witness;
  std::string label;
};

inline std::vector<std::string> equation_vars(const std::vector<Equation>& es) {
  std::set<std::string> s;
  for (const auto& e : es) {
    collect_variables(e.lhs, s);
    collect_variables(e.rhs, s);
  }
  return {s.begin(), s.end()};
}

inline std::optional<EquationFailure> first_failure(const FiniteAlgebra& a, const Equation& e) {
  auto vars = equation_vars({e});
  CompiledTerm l(e.lhs, vars), r(e.rhs, vars);
  if (!l.fits(a) || !r.fits(a)) throw AlgebraError("equation uses an operation the algebra lacks: " + to_string(e));
  std::optional<EquationFailure> out;
  for_each_assignment(vars.size(), a.size(), [&](const std::vector<Elem>& v) {
    if (l.eval(a, v.data()) == r.eval(a, v.data())) return true;
    Assignment w;
    for (std::size_t i = 0; i < vars.size(); ++i) w[vars[i]] = v[i];
    out = EquationFailure{e, w, {}};
    return false;
  });
  return out;
}

inline bool satisfies(const FiniteAlgebra& a, const Equation& e) { return !first_failure(a, e); }

// Quasi-equation: premises imply the conclusion under every assignment.
inline bool satisfies_quasi(const FiniteAlgebra& a, const std::vector<Equation>& premises, const Equation& conclusion) {
  std::vector<Equation> all = premises;
  all.push_back(conclusion);
  auto vars = equation_vars(all);
  std::vector<std::pair<CompiledTerm, CompiledTerm>> ps;
  for (const auto& p : premises) ps.emplace_back(CompiledTerm(p.lhs, vars), CompiledTerm(p.rhs, vars));
  CompiledTerm cl(conclusion.lhs, vars), cr(conclusion.rhs, vars);
  return for_each_assignment(vars.size(), a.size(), [&](const std::vector<Elem>& v) {
    for (const auto& [l, r] : ps)
      if (l.eval(a, v.data()) != r.eval(a, v.data())) return true;
    return cl.eval(a, v.data()) == cr.eval(a, v.data());
  });
}

// ---------------------------------------------------------------- varieties

enum class Family { Msl, Ml, PMsl, PMl, FL, RL };

inline std::string_view family_name(Family f) {
  switch (f) {
    case Family::Msl: return "Msl";
    case Family::Ml: return "Ml";
    case Family::PMsl: return "PMsl";
    case Family::PMl: return "PMl";
    case Family::FL: return "FL";
    case Family::RL: return "RL";
  }
  return "?";
}

inline Family parse_family(std::string_view s) {
  for (Family f : {Family::Msl, Family::Ml, Family::PMsl, Family::PMl, Family::FL, Family::RL})
    if (family_name(f) == s) return f;
  throw SyntaxError("unknown variety family '" + std::string(s) + "'");
}

// Operations (besides the constants) in the signature of a family.
inline std::vector<Conn> family_ops(Family f) {
  switch (f) {
    case Family::Msl: return {Conn::Join, Conn::Fus};
    case Family::Ml: return {Conn::Join, Conn::Meet, Conn::Fus};
    case Family::PMsl: return {Conn::Join, Conn::Fus, Conn::Rneg, Conn::Lneg};
    case Family::PMl: return {Conn::Join, Conn::Meet, Conn::Fus, Conn::Rneg, Conn::Lneg};
    case Family::FL: return {Conn::Join, Conn::Meet, Conn::Fus, Conn::Rimp, Conn::Limp, Conn::Rneg, Conn::Lneg};
    case Family::RL: return {Conn::Join, Conn::Meet, Conn::Fus, Conn::Rimp, Conn::Limp};
  }
  return {};
}

inline bool family_has_zero(Family f) { return f != Family::RL; }

// The family whose signature matches a formula language (RL has none).
inline Family family_for(const Language& lang) {
  if (lang.has_implications()) return Family::FL;
  bool m = lang.has(Conn::Meet), n = lang.has_negations();
  if (m && n) return Family::PMl;
  if (n) return Family::PMsl;
  if (m) return Family::Ml;
  return Family::Msl;
}

inline Language family_language(Family f) {
  switch (f) {
    case Family::Msl: return Language::core();
    case Family::Ml: return Language::core_meet();
    case Family::PMsl: return Language::core_neg();
    case Family::PMl: return Language::core_meet_neg();
    default: return Language::full();
  }
}

struct VarietyId {
  Family family = Family::Msl;
  Sigma sigma;
  std::string name() const {
    std::string s(family_name(family));
    if (sigma.bits()) s += "_{" + sigma.name() + "}";
    return s;
  }
};

namespace detail {
struct Basis {
  std::vector<std::pair<std::string, Equation>> eqs;
  void add(const std::string& label, const char* text) { eqs.emplace_back(label, parse_equation(text)); }
};

inline const Basis& basis_for(Family f) {
  static const std::map<Family, Basis> bases = [] {
    Basis sl, lat, mon, dist, res, neg, pm;
    sl.add("join-idem", "x \\/ x = x");
    sl.add("join-comm", "x \\/ y = y \\/ x");
    sl.add("join-assoc", "(x \\/ y) \\/ z = x \\/ (y \\/ z)");
    lat = sl;
    lat.add("meet-idem", "x /\\ x = x");
    lat.add("meet-comm", "x /\\ y = y /\\ x");
    lat.add("meet-assoc", "(x /\\ y) /\\ z = x /\\ (y /\\ z)");
    lat.add("absorb-join", "x \\/ (x /\\ y) = x");
    lat.add("absorb-meet", "x /\\ (x \\/ y) = x");
    mon.add("fus-assoc", "(x * y) * z = x * (y * z)");
    mon.add("unit-left", "1 * x = x");
    mon.add("unit-right", "x * 1 = x");
    dist.add("dist-right", "(x \\/ y) * z = (x * z) \\/ (y * z)");
    dist.add("dist-left", "x * (y \\/ z) = (x * y) \\/ (x * z)");
    res.add("res-3r", "x * ((x \\ z) /\\ y) <= z");
    res.add("res-3l", "((z / x) /\\ y) * x <= z");
    res.add("res-4r", "y <= x \\ ((x * y) \\/ z)");
    res.add("res-4l", "y <= ((y * x) \\/ z) / x");
    neg.add("neg-5r", "rn(x) = x \\ 0");
    neg.add("neg-5l", "ln(x) = 0 / x");
    pm.add("pm-r1", "rn(1) = 0");
    pm.add("pm-r2", "1 \\/ rn(0) = rn(0)");
    pm.add("pm-r3", "(x * rn(y * x)) \\/ rn(y) = rn(y)");
    pm.add("pm-l1", "ln(1) = 0");
    pm.add("pm-l2", "1 \\/ ln(0) = ln(0)");
    pm.add("pm-l3", "ln(x * y) * x <= ln(y)");
    pm.add("pm-ra", "rn(x \\/ y) \\/ rn(x) = rn(x)");
    pm.add("pm-la", "ln(x \\/ y) \\/ ln(x) = ln(x)");
    auto cat = [](std::initializer_list<const Basis*> parts) {
      Basis b;
      for (const auto* p : parts) b.eqs.insert(b.eqs.end(), p->eqs.begin(), p->eqs.end());
      return b;
    };
    std::map<Family, Basis> m;
    m[Family::Msl] = cat({&sl, &mon, &dist});
    m[Family::Ml] = cat({&lat, &mon, &dist});
    m[Family::PMsl] = cat({&sl, &mon, &dist, &pm});
    m[Family::PMl] = cat({&lat, &mon, &dist, &pm});
    m[Family::RL] = cat({&lat, &mon, &res});
    m[Family::FL] = cat({&lat, &mon, &res, &neg});
    return m;
  }();
  return bases.at(f);
}
}  // namespace detail

// Equations for the structural properties.
inline std::vector<std::pair<std::string, Equation>> sigma_equations(Sigma s) {
  std::vector<std::pair<std::string, Equation>> out;
  if (s.e()) out.emplace_back("e", parse_equation("x * y = y * x"));
  if (s.wl()) out.emplace_back("wl", parse_equation("x \\/ 1 = 1"));
  if (s.wr()) out.emplace_back("wr", parse_equation("0 \\/ x = x"));
  if (s.c()) out.emplace_back("c", parse_equation("x \\/ (x * x) = x * x"));
  return out;
}

inline std::vector<std::pair<std::string, Equation>> variety_basis(const VarietyId& v) {
  auto out = detail::basis_for(v.family).eqs;
  for (auto& e : sigma_equations(v.sigma)) out.push_back(std::move(e));
  return out;
}

struct VarietyReport {
  bool ok = true;
  std::vector<Conn> missing_ops;
  std::optional<EquationFailure> failure;
  std::vector<std::string> names;  // element names for describe()
  explicit operator bool() const { return ok; }
  std::string describe() const {
    if (ok) return "ok";
    if (!missing_ops.empty()) return "missing operation " + std::string(conn_name(missing_ops.front()));
    std::string s = failure->label + ": " + to_string(failure->equation) + " fails at";
    for (const auto& [k, x] : failure->witness) s += " " + k + "=" + (x < names.size() ? names[x] : std::to_string(x));
    return s;
  }
};

inline VarietyReport check_variety(const FiniteAlgebra& a, const VarietyId& v) {
  VarietyReport r;
  r.names = a.names;
  for (Conn c : family_ops(v.family))
    if (!a.has(c)) r.missing_ops.push_back(c);
  if (v.family == Family::RL && v.sigma.wr()) throw AlgebraError("wr needs the constant 0, absent from RL");
  if (!r.missing_ops.empty()) {
    r.ok = false;
    return r;
  }
  for (const auto& [label, e] : variety_basis(v)) {
    if (auto f = first_failure(a, e)) {
      f->label = label;
      r.ok = false;
      r.failure = std::move(f);
      return r;
    }
  }
  return r;
}

inline bool in_variety(const FiniteAlgebra& a, const VarietyId& v) { return check_variety(a, v).ok; }

// ---------------------------------------------------------------- derived operations

namespace detail {
// Greatest element of {z : pred(z)}, if the set has one.
template <class P>
std::optional<Elem> greatest(const FiniteAlgebra& a, P&& pred) {
  std::optional<Elem> acc;
  for (Elem z = 0; z < a.size(); ++z)
    if (pred(z)) acc = acc ? a.join(*acc, z) : z;
  if (acc && pred(*acc)) return acc;
  return std::nullopt;
}
}  // namespace detail

inline std::optional<Elem> residual_right(const FiniteAlgebra& a, Elem x, Elem y) {
  return detail::greatest(a, [&](Elem z) { return a.leq(a.fus(x, z), y); });
}
inline std::optional<Elem> residual_left(const FiniteAlgebra& a, Elem x, Elem y) {
  // y / x
  return detail::greatest(a, [&](Elem z) { return a.leq(a.fus(z, x), y); });
}
inline std::optional<Elem> meet_of(const FiniteAlgebra& a, Elem x, Elem y) {
  return detail::greatest(a, [&](Elem z) { return a.leq(z, x) && a.leq(z, y); });
}

// Adds the meet table; throws when some pair has no infimum.
inline FiniteAlgebra derive_meet(FiniteAlgebra a) {
  const std::size_t n = a.size();
  std::vector<Elem> t(n * n);
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) {
      auto m = meet_of(a, x, y);
      if (!m) throw AlgebraError("no meet of " + a.names[x] + " and " + a.names[y]);
      t[x * n + y] = *m;
    }
  a.table(Conn::Meet) = std::move(t);
  return a;
}

inline FiniteAlgebra derive_pseudocomplements(FiniteAlgebra a) {
  const std::size_t n = a.size();
  std::vector<Elem> r(n), l(n);
  for (Elem x = 0; x < n; ++x) {
    auto rx = residual_right(a, x, a.zero), lx = residual_left(a, x, a.zero);
    if (!rx || !lx) throw AlgebraError("no pseudocomplement of " + a.names[x]);
    r[x] = *rx;
    l[x] = *lx;
  }
  a.table(Conn::Rneg) = std::move(r);
  a.table(Conn::Lneg) = std::move(l);
  return a;
}

// Adds residuals, meet and the negations x\0, 0/x; throws when one is missing.
inline FiniteAlgebra derive_residuals(FiniteAlgebra a) {
  const std::size_t n = a.size();
  std::vector<Elem> ri(n * n), li(n * n);
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) {
      auto r = residual_right(a, x, y), l = residual_left(a, x, y);
      if (!r || !l) throw AlgebraError("no residual for " + a.names[x] + ", " + a.names[y]);
      ri[x * n + y] = *r;
      li[x * n + y] = *l;
    }
  a.table(Conn::Rimp) = std::move(ri);
  a.table(Conn::Limp) = std::move(li);
  a = derive_meet(std::move(a));
  return derive_pseudocomplements(std::move(a));
}

// Transposed fusion; residuals and negations swap sides.
inline FiniteAlgebra opposite(const FiniteAlgebra& a) {
  FiniteAlgebra b = a;
  const std::size_t n = a.size();
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) b.table(Conn::Fus)[x * n + y] = a.fus(y, x);
  std::swap(b.table(Conn::Rimp), b.table(Conn::Limp));
  std::swap(b.table(Conn::Rneg), b.table(Conn::Lneg));
  return b;
}

inline FiniteAlgebra reduct(const FiniteAlgebra& a, Family f) {
  FiniteAlgebra b = a;
  auto keep = family_ops(f);
  for (std::size_t k = 0; k < 7; ++k)
    if (std::find(keep.begin(), keep.end(), static_cast<Conn>(k)) == keep.end()) b.tables[k].clear();
  for (Conn c : keep)
    if (!b.has(c)) throw AlgebraError("algebra lacks " + std::string(conn_name(c)));
  return b;
}

// Completes a join/fusion algebra with every operation of the family, derived
// from the order. Throws when the family's operations do not exist.
inline FiniteAlgebra expand_to(FiniteAlgebra a, Family f) {
  switch (f) {
    case Family::Msl: return reduct(a, f);
    case Family::Ml: return reduct(derive_meet(std::move(a)), f);
    case Family::PMsl: return reduct(derive_pseudocomplements(std::move(a)), f);
    case Family::PMl: return reduct(derive_pseudocomplements(derive_meet(std::move(a))), f);
    case Family::FL:
    case Family::RL: return reduct(derive_residuals(std::move(a)), f);
  }
  return a;
}

// ---------------------------------------------------------------- properties

struct PropertyCheck {
  std::string name;
  bool quasi = false;
  bool equation = false;
};

// Each structural property as a quasi-inequation and as an equation.
inline std::vector<PropertyCheck> check_property_equivalences(const FiniteAlgebra& a) {
  auto q = [&](const char* prem, const char* conc) {
    return satisfies_quasi(a, {parse_equation(prem)}, parse_equation(conc));
  };
  auto eq = [&](const char* e) { return satisfies(a, parse_equation(e)); };
  return {
      {"e", q("x * y <= z", "y * x <= z"), eq("x * y = y * x")},
      {"w", q("x * y <= z", "x * t * y <= z"), eq("x \\/ 1 = 1")},
      {"wr", q("x <= 0", "x <= y"), eq("0 \\/ x = x")},
      {"c", q("x * x <= y", "x <= y"), eq("x \\/ (x * x) = x * x")},
  };
}

// ---------------------------------------------------------------- json

inline nlohmann::json to_json(const FiniteAlgebra& a) {
  nlohmann::json j;
  j["elements"] = a.names;
  j["consts"] = {{"zero", a.names[a.zero]}, {"one", a.names[a.one]}};
  nlohmann::json ops = nlohmann::json::object();
  const std::size_t n = a.size();
  for (std::size_t k = 0; k < 7; ++k) {
    const auto& t = a.tables[k];
    if (t.empty()) continue;
    Conn c = static_cast<Conn>(k);
    if (is_binary(c)) {
      nlohmann::json rows = nlohmann::json::array();
      for (std::size_t x = 0; x < n; ++x) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t y = 0; y < n; ++y) row.push_back(a.names[t[x * n + y]]);
        rows.push_back(row);
      }
      ops[std::string(kConnNames[k])] = rows;
    } else {
      nlohmann::json row = nlohmann::json::array();
      for (std::size_t x = 0; x < n; ++x) row.push_back(a.names[t[x]]);
      ops[std::string(kConnNames[k])] = row;
    }
  }
  j["ops"] = ops;
  return j;
}

inline FiniteAlgebra algebra_from_json(const nlohmann::json& j) {
  FiniteAlgebra a;
  try {
    a.names = j.at("elements").get<std::vector<std::string>>();
    const std::size_t n = a.names.size();
    std::set<std::string> uniq(a.names.begin(), a.names.end());
    if (uniq.size() != n) throw AlgebraError("duplicate element names");
    auto elem = [&](const nlohmann::json& v) -> Elem {
      if (v.is_number_unsigned()) {
        auto i = v.get<std::size_t>();
        if (i >= n) throw AlgebraError("element index out of range");
        return static_cast<Elem>(i);
      }
      auto i = a.index_of(v.get<std::string>());
      if (!i) throw AlgebraError("unknown element '" + v.get<std::string>() + "'");
      return *i;
    };
    a.zero = elem(j.at("consts").at("zero"));
    a.one = elem(j.at("consts").at("one"));
    for (const auto& [name, tab] : j.at("ops").items()) {
      auto c = conn_from_name(name);
      if (!c || is_constant(*c)) throw AlgebraError("unknown operation '" + name + "'");
      auto& t = a.table(*c);
      if (is_binary(*c)) {
        if (tab.size() != n) throw AlgebraError("table " + name + " has wrong size");
        for (const auto& row : tab) {
          if (row.size() != n) throw AlgebraError("table " + name + " has wrong size");
          for (const auto& v : row) t.push_back(elem(v));
        }
      } else {
        if (tab.size() != n) throw AlgebraError("table " + name + " has wrong size");
        for (const auto& v : tab) t.push_back(elem(v));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw AlgebraError(std::string("malformed algebra json: ") + e.what());
  }
  a.validate();
  return a;
}

inline nlohmann::json to_json(const Assignment& v, const FiniteAlgebra& a) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, x] : v) j[k] = a.names[x];
  return j;
}

// ---------------------------------------------------------------- builders

// From join and fusion tables given as rows of element indices.
inline FiniteAlgebra make_algebra(std::vector<std::string> names, const std::vector<std::vector<int>>& join_rows,
                                  const std::vector<std::vector<int>>& fus_rows, int zero, int one) {
  FiniteAlgebra a;
  a.names = std::move(names);
  for (const auto& r : join_rows)
    for (int v : r) a.table(Conn::Join).push_back(static_cast<Elem>(v));
  for (const auto& r : fus_rows)
    for (int v : r) a.table(Conn::Fus).push_back(static_cast<Elem>(v));
  a.zero = static_cast<Elem>(zero);
  a.one = static_cast<Elem>(one);
  a.validate();
  return a;
}

// Chain 0 < 1 < ... < n-1 with the given fusion.
inline FiniteAlgebra make_chain(std::vector<std::string> names, const std::vector<std::vector<int>>& fus_rows, int zero,
                                int one) {
  const int n = static_cast<int>(names.size());
  std::vector<std::vector<int>> j(n, std::vector<int>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) j[x][y] = std::max(x, y);
  return make_algebra(std::move(names), j, fus_rows, zero, one);
}

}  // namespace substrukt
