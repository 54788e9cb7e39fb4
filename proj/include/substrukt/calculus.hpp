#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "substrukt/sequents.hpp"

namespace substrukt {

// A subset of {e, wl, wr, c}.
class Sigma {
 public:
  enum Flag : unsigned { E = 1, WL = 2, WR = 4, C = 8 };

  constexpr Sigma() = default;
  constexpr explicit Sigma(unsigned bits) : bits_(bits & 15u) {}

  // "", "e", "e,wl", "w" (both weakenings), "ewc" style strings are accepted.
  static Sigma parse(std::string_view s) {
    unsigned b = 0;
    std::size_t i = 0;
    while (i < s.size()) {
      char ch = s[i];
      if (ch == ',' || ch == ' ' || ch == '{' || ch == '}') {
        ++i;
      } else if (s.substr(i, 2) == "wl") {
        b |= WL, i += 2;
      } else if (s.substr(i, 2) == "wr") {
        b |= WR, i += 2;
      } else if (ch == 'w') {
        b |= WL | WR, ++i;
      } else if (ch == 'e') {
        b |= E, ++i;
      } else if (ch == 'c') {
        b |= C, ++i;
      } else {
        throw SyntaxError("unknown structural flag '" + std::string(1, ch) + "'", i);
      }
    }
    return Sigma(b);
  }

  static std::vector<Sigma> all() {
    std::vector<Sigma> out;
    for (unsigned b = 0; b < 16; ++b) out.emplace_back(b);
    return out;
  }

  constexpr bool e() const { return bits_ & E; }
  constexpr bool wl() const { return bits_ & WL; }
  constexpr bool wr() const { return bits_ & WR; }
  constexpr bool c() const { return bits_ & C; }
  constexpr unsigned bits() const { return bits_; }
  constexpr bool contains(Sigma o) const { return (o.bits_ & ~bits_) == 0; }

  std::string name() const {
    std::string out;
    auto add = [&](const char* f) {
      if (!out.empty()) out += ",";
      out += f;
    };
    if (e()) add("e");
    if (wl()) add("wl");
    if (wr()) add("wr");
    if (c()) add("c");
    return out;
  }

  friend constexpr bool operator==(Sigma a, Sigma b) { return a.bits_ == b.bits_; }

 private:
  unsigned bits_ = 0;
};

struct Calculus {
  Sigma sigma;
  Language lang = Language::full();
};

enum class RuleId : std::uint8_t {
  Axiom, Cut, OrL, OrR1, OrR2, AndL1, AndL2, AndR, FusL, FusR, RimpL, RimpR, LimpL, LimpR,
  RnegL, RnegR, LnegL, LnegR, OneL, OneR, ZeroL, ZeroR, ExchL, WeakL, WeakR, ContrL, Hyp
};

inline constexpr std::size_t kRuleCount = 27;

inline constexpr std::array<std::string_view, kRuleCount> kRuleNames = {
    "axiom", "cut",    "or-l",   "or-r1",  "or-r2",  "and-l1", "and-l2", "and-r",  "fus-l",
    "fus-r", "rimp-l", "rimp-r", "limp-l", "limp-r", "rneg-l", "rneg-r", "lneg-l", "lneg-r",
    "one-l", "one-r",  "zero-l", "zero-r", "exch-l", "weak-l", "weak-r", "contr-l", "hyp"};

inline std::string_view rule_name(RuleId r) { return kRuleNames[static_cast<std::size_t>(r)]; }

inline std::optional<RuleId> rule_from_name(std::string_view s) {
  for (std::size_t i = 0; i < kRuleCount; ++i)
    if (kRuleNames[i] == s) return static_cast<RuleId>(i);
  return std::nullopt;
}

// Number of instance parameters a rule records (positions and split points).
inline int rule_params(RuleId r) {
  switch (r) {
    case RuleId::Cut:
    case RuleId::RimpL:
    case RuleId::LimpL: return 2;
    case RuleId::OrL:
    case RuleId::AndL1:
    case RuleId::AndL2:
    case RuleId::FusL:
    case RuleId::FusR:
    case RuleId::OneL:
    case RuleId::ExchL:
    case RuleId::WeakL:
    case RuleId::ContrL: return 1;
    default: return 0;
  }
}

inline int rule_arity(RuleId r) {
  switch (r) {
    case RuleId::Axiom:
    case RuleId::OneR:
    case RuleId::ZeroL:
    case RuleId::Hyp: return 0;
    case RuleId::Cut:
    case RuleId::OrL:
    case RuleId::AndR:
    case RuleId::FusR:
    case RuleId::RimpL:
    case RuleId::LimpL: return 2;
    default: return 1;
  }
}

// The connective a logical rule introduces, if any.
inline std::optional<Conn> rule_connective(RuleId r) {
  switch (r) {
    case RuleId::OrL:
    case RuleId::OrR1:
    case RuleId::OrR2: return Conn::Join;
    case RuleId::AndL1:
    case RuleId::AndL2:
    case RuleId::AndR: return Conn::Meet;
    case RuleId::FusL:
    case RuleId::FusR: return Conn::Fus;
    case RuleId::RimpL:
    case RuleId::RimpR: return Conn::Rimp;
    case RuleId::LimpL:
    case RuleId::LimpR: return Conn::Limp;
    case RuleId::RnegL:
    case RuleId::RnegR: return Conn::Rneg;
    case RuleId::LnegL:
    case RuleId::LnegR: return Conn::Lneg;
    case RuleId::OneL:
    case RuleId::OneR: return Conn::One;
    case RuleId::ZeroL:
    case RuleId::ZeroR: return Conn::Zero;
    default: return std::nullopt;
  }
}

inline bool rule_in_calculus(RuleId r, const Calculus& cal) {
  switch (r) {
    case RuleId::ExchL: return cal.sigma.e();
    case RuleId::WeakL: return cal.sigma.wl();
    case RuleId::WeakR: return cal.sigma.wr();
    case RuleId::ContrL: return cal.sigma.c();
    default: break;
  }
  if (auto c = rule_connective(r)) return cal.lang.has(*c);
  return true;
}

struct ProofTree;
using ProofPtr = std::shared_ptr<const ProofTree>;

// Parameters by rule, with n the length of the conclusion antecedent:
//   cut     a = |Sigma|, b = |Gamma|          (conclusion Sigma, Gamma, Pi)
//   rimp-l  a = |Sigma|, b = |Gamma|          (Sigma, Gamma, f\g, Pi)
//   limp-l  a = |Sigma|, b = |Gamma|          (Sigma, g/f, Gamma, Pi)
//   fus-r   a = |Gamma|                       (Gamma, Pi => f*g)
//   exch-l  a = index of the swapped pair
//   others  a = index of the principal formula
struct ProofTree {
  Sequent conclusion;
  RuleId rule = RuleId::Axiom;
  std::size_t a = 0, b = 0;
  std::vector<ProofPtr> premises;

  std::size_t size() const {
    std::size_t n = 1;
    for (const auto& p : premises) n += p->size();
    return n;
  }
  std::size_t height() const {
    std::size_t h = 0;
    for (const auto& p : premises) h = std::max(h, p->height());
    return h + 1;
  }
};

inline ProofPtr make_node(Sequent conclusion, RuleId rule, std::vector<ProofPtr> premises = {}, std::size_t a = 0,
                          std::size_t b = 0) {
  auto t = std::make_shared<ProofTree>();
  t->conclusion = std::move(conclusion);
  t->rule = rule;
  t->a = a;
  t->b = b;
  t->premises = std::move(premises);
  return t;
}

// ---------------------------------------------------------------- instances

namespace detail {
using Seq = std::vector<Formula>;

inline Seq slice(const Seq& v, std::size_t from, std::size_t to) { return Seq(v.begin() + from, v.begin() + to); }
inline Seq cat(std::initializer_list<Seq> parts) {
  Seq out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}
inline Seq replace_at(const Seq& v, std::size_t i, Seq with) {
  return cat({slice(v, 0, i), with, slice(v, i + 1, v.size())});
}
}  // namespace detail

// Premises of a rule instance determined by its conclusion and parameters.
// Cut needs the cut formula, taken from `cut`. Returns nullopt when the
// parameters do not describe an instance with this conclusion.
inline std::optional<std::vector<Sequent>> instance_premises(RuleId r, const Sequent& c, std::size_t a,
                                                             std::size_t b,
                                                             const std::optional<Formula>& cut = std::nullopt) {
  using namespace detail;
  const Seq& g = c.antecedent;
  const std::size_t n = g.size();
  const auto& d = c.succedent;
  auto principal = [&](Conn k) -> const Formula* {
    if (a >= n || !g[a].is(k)) return nullptr;
    return &g[a];
  };
  std::vector<Sequent> out;
  switch (r) {
    case RuleId::Axiom:
      if (n == 1 && d && *d == g[0]) return out;
      return std::nullopt;
    case RuleId::Hyp: return out;
    case RuleId::OneR:
      if (n == 0 && d && d->is(Conn::One)) return out;
      return std::nullopt;
    case RuleId::ZeroL:
      if (n == 1 && !d && g[0].is(Conn::Zero)) return out;
      return std::nullopt;
    case RuleId::Cut: {
      if (!cut || a + b > n) return std::nullopt;
      out.emplace_back(slice(g, a, a + b), *cut);
      out.emplace_back(cat({slice(g, 0, a), Seq{*cut}, slice(g, a + b, n)}), d);
      return out;
    }
    case RuleId::OrL:
    case RuleId::AndL1:
    case RuleId::AndL2: {
      const Formula* p = principal(r == RuleId::OrL ? Conn::Join : Conn::Meet);
      if (!p) return std::nullopt;
      if (r != RuleId::AndL2) out.emplace_back(replace_at(g, a, {p->lhs()}), d);
      if (r != RuleId::AndL1) out.emplace_back(replace_at(g, a, {p->rhs()}), d);
      return out;
    }
    case RuleId::OrR1:
    case RuleId::OrR2:
      if (!d || !d->is(Conn::Join)) return std::nullopt;
      out.emplace_back(g, r == RuleId::OrR1 ? d->lhs() : d->rhs());
      return out;
    case RuleId::AndR:
      if (!d || !d->is(Conn::Meet)) return std::nullopt;
      out.emplace_back(g, d->lhs());
      out.emplace_back(g, d->rhs());
      return out;
    case RuleId::FusL: {
      const Formula* p = principal(Conn::Fus);
      if (!p) return std::nullopt;
      out.emplace_back(replace_at(g, a, {p->lhs(), p->rhs()}), d);
      return out;
    }
    case RuleId::FusR:
      if (!d || !d->is(Conn::Fus) || a > n) return std::nullopt;
      out.emplace_back(slice(g, 0, a), d->lhs());
      out.emplace_back(slice(g, a, n), d->rhs());
      return out;
    case RuleId::RimpL: {
      std::size_t i = a + b;
      if (i >= n || !g[i].is(Conn::Rimp)) return std::nullopt;
      out.emplace_back(slice(g, a, i), g[i].lhs());
      out.emplace_back(cat({slice(g, 0, a), Seq{g[i].rhs()}, slice(g, i + 1, n)}), d);
      return out;
    }
    case RuleId::LimpL: {
      if (a + 1 + b > n || !g[a].is(Conn::Limp)) return std::nullopt;
      // g[a] = num / den, stored as limp(den, num).
      out.emplace_back(slice(g, a + 1, a + 1 + b), g[a].lhs());
      out.emplace_back(cat({slice(g, 0, a), Seq{g[a].rhs()}, slice(g, a + 1 + b, n)}), d);
      return out;
    }
    case RuleId::RimpR:
      if (!d || !d->is(Conn::Rimp)) return std::nullopt;
      out.emplace_back(cat({Seq{d->lhs()}, g}), d->rhs());
      return out;
    case RuleId::LimpR:
      if (!d || !d->is(Conn::Limp)) return std::nullopt;
      out.emplace_back(cat({g, Seq{d->lhs()}}), d->rhs());
      return out;
    case RuleId::RnegL:
      if (d || n == 0 || !g[n - 1].is(Conn::Rneg)) return std::nullopt;
      out.emplace_back(slice(g, 0, n - 1), g[n - 1].lhs());
      return out;
    case RuleId::RnegR:
      if (!d || !d->is(Conn::Rneg)) return std::nullopt;
      out.emplace_back(cat({Seq{d->lhs()}, g}), std::nullopt);
      return out;
    case RuleId::LnegL:
      if (d || n == 0 || !g[0].is(Conn::Lneg)) return std::nullopt;
      out.emplace_back(slice(g, 1, n), g[0].lhs());
      return out;
    case RuleId::LnegR:
      if (!d || !d->is(Conn::Lneg)) return std::nullopt;
      out.emplace_back(cat({g, Seq{d->lhs()}}), std::nullopt);
      return out;
    case RuleId::OneL:
      if (!principal(Conn::One)) return std::nullopt;
      out.emplace_back(replace_at(g, a, {}), d);
      return out;
    case RuleId::ZeroR:
      if (!d || !d->is(Conn::Zero)) return std::nullopt;
      out.emplace_back(g, std::nullopt);
      return out;
    case RuleId::ExchL: {
      if (a + 1 >= n) return std::nullopt;
      Seq p = g;
      std::swap(p[a], p[a + 1]);
      out.emplace_back(std::move(p), d);
      return out;
    }
    case RuleId::WeakL:
      if (a >= n) return std::nullopt;
      out.emplace_back(replace_at(g, a, {}), d);
      return out;
    case RuleId::WeakR:
      if (!d) return std::nullopt;
      out.emplace_back(g, std::nullopt);
      return out;
    case RuleId::ContrL:
      if (a >= n) return std::nullopt;
      out.emplace_back(replace_at(g, a, {g[a], g[a]}), d);
      return out;
  }
  return std::nullopt;
}

struct BackwardStep {
  RuleId rule;
  std::size_t a = 0, b = 0;
  std::vector<Sequent> premises;
};

// All cut-free rule instances of the calculus with the given conclusion.
// ExchL appears once per adjacent transposition when e is in sigma.
inline std::vector<BackwardStep> rule_instances_backward(const Sequent& goal, const Calculus& cal) {
  std::vector<BackwardStep> out;
  const std::size_t n = goal.antecedent.size();
  auto attempt = [&](RuleId r, std::size_t a, std::size_t b) {
    if (!rule_in_calculus(r, cal)) return;
    if (auto ps = instance_premises(r, goal, a, b)) out.push_back({r, a, b, std::move(*ps)});
  };
  attempt(RuleId::Axiom, 0, 0);
  attempt(RuleId::OneR, 0, 0);
  attempt(RuleId::ZeroL, 0, 0);
  for (RuleId r : {RuleId::OrR1, RuleId::OrR2, RuleId::AndR, RuleId::RimpR, RuleId::LimpR, RuleId::RnegR,
                   RuleId::LnegR, RuleId::ZeroR, RuleId::RnegL, RuleId::LnegL, RuleId::WeakR})
    attempt(r, 0, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (RuleId r : {RuleId::OrL, RuleId::AndL1, RuleId::AndL2, RuleId::FusL, RuleId::OneL, RuleId::WeakL,
                     RuleId::ContrL, RuleId::ExchL})
      attempt(r, i, 0);
  for (std::size_t k = 0; k <= n; ++k) attempt(RuleId::FusR, k, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; a + b < n; ++b) {
      attempt(RuleId::RimpL, a, b);
      attempt(RuleId::LimpL, a, b);
    }
  return out;
}

// ---------------------------------------------------------------- checking

enum class CheckError { None, RuleNotInCalculus, FormulaNotInLanguage, ArityMismatch, InstanceMismatch, UndeclaredHypothesis };

inline std::string_view check_error_name(CheckError e) {
  switch (e) {
    case CheckError::None: return "ok";
    case CheckError::RuleNotInCalculus: return "rule-not-in-calculus";
    case CheckError::FormulaNotInLanguage: return "formula-not-in-language";
    case CheckError::ArityMismatch: return "arity-mismatch";
    case CheckError::InstanceMismatch: return "instance-mismatch";
    case CheckError::UndeclaredHypothesis: return "undeclared-hypothesis";
  }
  return "?";
}

struct CheckResult {
  bool ok = true;
  CheckError error = CheckError::None;
  std::vector<std::size_t> path;  // premise indices from the root to the offending node
  std::string message;
  explicit operator bool() const { return ok; }
};

namespace detail {
inline bool check_node(const ProofTree& t, const Calculus& cal, const std::vector<Sequent>& hyps,
                       std::vector<std::size_t>& path, CheckResult& res) {
  auto fail = [&](CheckError e, std::string msg) {
    res.ok = false;
    res.error = e;
    res.path = path;
    res.message = std::string(rule_name(t.rule)) + " at '" + to_string(t.conclusion) + "': " + msg;
    return false;
  };
  if (!rule_in_calculus(t.rule, cal)) return fail(CheckError::RuleNotInCalculus, "rule not in calculus");
  if (!in_language(t.conclusion, cal.lang)) return fail(CheckError::FormulaNotInLanguage, "formula outside language");
  if (static_cast<int>(t.premises.size()) != rule_arity(t.rule))
    return fail(CheckError::ArityMismatch, "expected " + std::to_string(rule_arity(t.rule)) + " premises");
  if (t.rule == RuleId::Hyp) {
    if (std::find(hyps.begin(), hyps.end(), t.conclusion) == hyps.end())
      return fail(CheckError::UndeclaredHypothesis, "not among the hypotheses");
    return true;
  }
  std::optional<Formula> cut;
  if (t.rule == RuleId::Cut) {
    cut = t.premises[0]->conclusion.succedent;
    if (!cut) return fail(CheckError::InstanceMismatch, "left premise of cut has empty succedent");
    if (!in_language(*cut, cal.lang)) return fail(CheckError::FormulaNotInLanguage, "cut formula outside language");
  }
  auto expected = instance_premises(t.rule, t.conclusion, t.a, t.b, cut);
  if (!expected) return fail(CheckError::InstanceMismatch, "conclusion does not fit the rule");
  for (std::size_t i = 0; i < expected->size(); ++i)
    if ((*expected)[i] != t.premises[i]->conclusion)
      return fail(CheckError::InstanceMismatch, "premise " + std::to_string(i) + " should be '" +
                                                    to_string((*expected)[i]) + "'");
  for (std::size_t i = 0; i < t.premises.size(); ++i) {
    path.push_back(i);
    if (!check_node(*t.premises[i], cal, hyps, path, res)) return false;
    path.pop_back();
  }
  return true;
}
}  // namespace detail

inline CheckResult check_proof(const ProofTree& t, const Calculus& cal, const std::vector<Sequent>& hyps = {}) {
  CheckResult res;
  std::vector<std::size_t> path;
  detail::check_node(t, cal, hyps, path, res);
  return res;
}

// ---------------------------------------------------------------- mirror

// Node-by-node mirror of a proof; the result proves the mirrored conclusion
// in the same calculus.
inline ProofPtr mirror_proof(const ProofTree& t) {
  const std::size_t n = t.conclusion.antecedent.size();
  std::vector<ProofPtr> ps;
  for (const auto& p : t.premises) ps.push_back(mirror_proof(*p));
  RuleId r = t.rule;
  std::size_t a = 0, b = 0;
  switch (t.rule) {
    case RuleId::Cut: a = n - t.a - t.b, b = t.b; break;
    case RuleId::FusR:
      a = n - t.a;
      std::swap(ps[0], ps[1]);
      break;
    case RuleId::RimpL: r = RuleId::LimpL, a = n - t.a - t.b - 1, b = t.b; break;
    case RuleId::LimpL: r = RuleId::RimpL, a = n - t.a - t.b - 1, b = t.b; break;
    case RuleId::RimpR: r = RuleId::LimpR; break;
    case RuleId::LimpR: r = RuleId::RimpR; break;
    case RuleId::RnegL: r = RuleId::LnegL; break;
    case RuleId::LnegL: r = RuleId::RnegL; break;
    case RuleId::RnegR: r = RuleId::LnegR; break;
    case RuleId::LnegR: r = RuleId::RnegR; break;
    case RuleId::ExchL: a = n - 2 - t.a; break;
    default:
      if (rule_params(t.rule) == 1) a = n - 1 - t.a;
      break;
  }
  return make_node(mirror(t.conclusion), r, std::move(ps), a, b);
}

// ---------------------------------------------------------------- S-expressions

// (rule[:a[:b]] "conclusion" premise*)
inline std::string to_sexp(const ProofTree& t) {
  std::string out = "(";
  out += rule_name(t.rule);
  int k = rule_params(t.rule);
  if (k >= 1) out += ":" + std::to_string(t.a);
  if (k >= 2) out += ":" + std::to_string(t.b);
  out += " \"" + to_string(t.conclusion) + "\"";
  for (const auto& p : t.premises) out += " " + to_sexp(*p);
  out += ")";
  return out;
}

namespace detail {
class SexpReader {
 public:
  SexpReader(std::string_view s, const Language& lang) : s_(s), lang_(lang) {}
  ProofPtr read_all() {
    ProofPtr t = read();
    skip();
    if (p_ != s_.size()) throw SyntaxError("trailing input after proof", p_);
    return t;
  }

 private:
  void skip() {
    while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
  }
  ProofPtr read() {
    skip();
    if (p_ >= s_.size() || s_[p_] != '(') throw SyntaxError("expected '('", p_);
    ++p_;
    std::size_t start = p_;
    while (p_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[p_])) && s_[p_] != ')') ++p_;
    std::string head(s_.substr(start, p_ - start));
    std::vector<std::string> parts;
    std::size_t q = 0;
    while (true) {
      std::size_t c = head.find(':', q);
      parts.push_back(head.substr(q, c == std::string::npos ? std::string::npos : c - q));
      if (c == std::string::npos) break;
      q = c + 1;
    }
    auto rule = rule_from_name(parts[0]);
    if (!rule) throw SyntaxError("unknown rule '" + parts[0] + "'", start);
    std::size_t a = 0, b = 0;
    try {
      if (parts.size() > 1) a = std::stoul(parts[1]);
      if (parts.size() > 2) b = std::stoul(parts[2]);
    } catch (const std::exception&) {
      throw SyntaxError("bad rule parameter", start);
    }
    skip();
    if (p_ >= s_.size() || s_[p_] != '"') throw SyntaxError("expected quoted sequent", p_);
    std::size_t close = s_.find('"', p_ + 1);
    if (close == std::string_view::npos) throw SyntaxError("unterminated string", p_);
    Sequent c = parse_sequent(s_.substr(p_ + 1, close - p_ - 1), lang_);
    p_ = close + 1;
    std::vector<ProofPtr> ps;
    while (true) {
      skip();
      if (p_ < s_.size() && s_[p_] == ')') break;
      ps.push_back(read());
    }
    ++p_;
    return make_node(std::move(c), *rule, std::move(ps), a, b);
  }
  std::string_view s_;
  const Language& lang_;
  std::size_t p_ = 0;
};
}  // namespace detail

inline ProofPtr parse_sexp(std::string_view s, const Language& lang = Language::full()) {
  return detail::SexpReader(s, lang).read_all();
}

// Indented one-node-per-line rendering.
inline void render_text(const ProofTree& t, std::string& out, int indent = 0) {
  out += std::string(static_cast<std::size_t>(indent) * 2, ' ');
  out += to_string(t.conclusion) + "   [" + std::string(rule_name(t.rule)) + "]\n";
  for (const auto& p : t.premises) render_text(*p, out, indent + 1);
}

inline std::string to_text(const ProofTree& t) {
  std::string out;
  render_text(t, out);
  return out;
}

// ---------------------------------------------------------------- lemma proofs

enum class LemmaKind {
  JoinForward,        // from phi => psi derive phi \/ psi => psi
  JoinBackward,       // from phi \/ psi => psi derive phi => psi
  Product,            // Gamma => prod(Gamma)
  FuseForward,        // from Gamma => phi derive prod(Gamma) \/ phi => phi
  FuseBackward,       // from prod(Gamma) => phi derive Gamma => phi
  FuseEmptyForward,   // from Gamma => derive prod(Gamma) \/ 0 => 0
  FuseEmptyBackward,  // from prod(Gamma) => 0 derive Gamma =>
};

namespace detail {
inline void require_connectives(const Calculus& cal, std::initializer_list<Conn> cs) {
  for (Conn c : cs)
    if (!cal.lang.has(c)) throw std::invalid_argument("language lacks " + std::string(conn_name(c)));
}

}  // namespace detail

// Gamma => prod(Gamma).
inline ProofPtr product_proof(const std::vector<Formula>& g) {
  if (g.empty()) return make_node(Sequent({}, one()), RuleId::OneR);
  ProofPtr acc = make_node(Sequent({g[0]}, g[0]), RuleId::Axiom);
  Formula prod = g[0];
  for (std::size_t i = 1; i < g.size(); ++i) {
    Formula next = fus(prod, g[i]);
    std::vector<Formula> ante(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(i + 1));
    acc = make_node(Sequent(ante, next), RuleId::FusR, {acc, make_node(Sequent({g[i]}, g[i]), RuleId::Axiom)}, i);
    prod = next;
  }
  return acc;
}

// prod(Gamma) => d from Gamma => d, by FusL steps (or OneL for empty Gamma).
inline ProofPtr fuse_antecedent(const std::vector<Formula>& g, const std::optional<Formula>& d, ProofPtr from) {
  if (g.empty()) return make_node(Sequent({one()}, d), RuleId::OneL, {from}, 0);
  ProofPtr acc = from;
  std::vector<Formula> cur = g;
  while (cur.size() > 1) {
    std::vector<Formula> next;
    next.push_back(fus(cur[0], cur[1]));
    next.insert(next.end(), cur.begin() + 2, cur.end());
    acc = make_node(Sequent(next, d), RuleId::FusL, {acc}, 0);
    cur = std::move(next);
  }
  return acc;
}

// Proofs of the translation lemmas. Hypotheses appear as hyp leaves.
// Join kinds read phi, psi from s as s = (phi => psi).
inline ProofPtr build_lemma_proof(LemmaKind kind, const Sequent& s, const Calculus& cal = Calculus{}) {
  using detail::require_connectives;
  require_connectives(cal, {Conn::Join, Conn::Fus, Conn::One, Conn::Zero});
  auto ax = [](const Formula& f) { return make_node(Sequent({f}, f), RuleId::Axiom); };
  auto hyp = [](const Sequent& h) { return make_node(h, RuleId::Hyp); };
  const auto& g = s.antecedent;
  switch (kind) {
    case LemmaKind::JoinForward:
    case LemmaKind::JoinBackward: {
      if (g.size() != 1 || !s.succedent) throw std::invalid_argument("expected a sequent phi => psi");
      const Formula &phi = g[0], &psi = *s.succedent;
      Formula j = join(phi, psi);
      if (kind == LemmaKind::JoinForward)
        return make_node(Sequent({j}, psi), RuleId::OrL, {hyp(s), ax(psi)}, 0);
      ProofPtr up = make_node(Sequent({phi}, j), RuleId::OrR1, {ax(phi)});
      return make_node(s, RuleId::Cut, {up, hyp(Sequent({j}, psi))}, 0, 1);
    }
    case LemmaKind::Product: return product_proof(g);
    case LemmaKind::FuseForward: {
      if (!s.succedent) throw std::invalid_argument("expected a nonempty succedent");
      const Formula& phi = *s.succedent;
      Formula p = fuse(g);
      ProofPtr left = fuse_antecedent(g, phi, hyp(s));
      if (g.size() == 1) left = hyp(s);
      return make_node(Sequent({join(p, phi)}, phi), RuleId::OrL, {left, ax(phi)}, 0);
    }
    case LemmaKind::FuseBackward: {
      if (!s.succedent) throw std::invalid_argument("expected a nonempty succedent");
      Formula p = fuse(g);
      ProofPtr h = hyp(Sequent({p}, s.succedent));
      if (g.size() == 1) return h;
      return make_node(s, RuleId::Cut, {product_proof(g), h}, 0, g.size());
    }
    case LemmaKind::FuseEmptyForward: {
      if (s.succedent) throw std::invalid_argument("expected an empty succedent");
      Formula p = fuse(g);
      ProofPtr base = g.size() == 1 ? hyp(s) : fuse_antecedent(g, std::nullopt, hyp(s));
      ProofPtr toz = make_node(Sequent({p}, zero()), RuleId::ZeroR, {base});
      return make_node(Sequent({join(p, zero())}, zero()), RuleId::OrL, {toz, ax(zero())}, 0);
    }
    case LemmaKind::FuseEmptyBackward: {
      if (s.succedent) throw std::invalid_argument("expected an empty succedent");
      Formula p = fuse(g);
      ProofPtr h = hyp(Sequent({p}, zero()));
      ProofPtr gz = g.size() == 1 ? h : make_node(Sequent(g, zero()), RuleId::Cut, {product_proof(g), h}, 0, g.size());
      ProofPtr zl = make_node(Sequent({zero()}, std::nullopt), RuleId::ZeroL);
      return make_node(s, RuleId::Cut, {gz, zl}, 0, g.size());
    }
  }
  throw std::invalid_argument("unknown lemma kind");
}

// Derivations of each sequent of rho(tau(s)) from the hypothesis s.
inline std::vector<ProofPtr> rho_tau_forward(const Sequent& s, const Calculus& cal = Calculus{}) {
  std::vector<ProofPtr> out;
  Equation e = tau(s);
  for (const auto& target : rho(e)) {
    if (target.antecedent[0] == e.lhs) {
      out.push_back(build_lemma_proof(s.succedent ? LemmaKind::FuseForward : LemmaKind::FuseEmptyForward, s, cal));
    } else {
      // rhs => lhs is d => prod \/ d, true outright.
      const Formula& d = e.rhs;
      out.push_back(make_node(target, RuleId::OrR2, {make_node(Sequent({d}, d), RuleId::Axiom)}));
    }
  }
  return out;
}

// Derivation of s from the hypotheses rho(tau(s)).
inline ProofPtr rho_tau_backward(const Sequent& s, const Calculus& cal = Calculus{}) {
  Equation e = tau(s);
  Formula p = fuse(s.antecedent);
  const Formula& d = e.rhs;
  // prod => d from lhs => d (JoinBackward with phi = prod, psi = d).
  ProofPtr to_d = build_lemma_proof(LemmaKind::JoinBackward, Sequent({p}, d), cal);
  auto plug = [&](const ProofTree& t, const auto& self) -> ProofPtr {
    if (t.rule == RuleId::Hyp && t.conclusion == Sequent({p}, d)) return to_d;
    std::vector<ProofPtr> ps;
    for (const auto& q : t.premises) ps.push_back(self(*q, self));
    return make_node(t.conclusion, t.rule, std::move(ps), t.a, t.b);
  };
  ProofPtr shape = build_lemma_proof(s.succedent ? LemmaKind::FuseBackward : LemmaKind::FuseEmptyBackward, s, cal);
  return plug(*shape, plug);
}

}  // namespace substrukt
