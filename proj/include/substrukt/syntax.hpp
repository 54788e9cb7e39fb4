#pragma once

#include <array>
#include <bitset>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace substrukt {

enum class Conn : std::uint8_t { Join, Meet, Fus, Rimp, Limp, Rneg, Lneg, Zero, One };

inline constexpr std::size_t kConnCount = 9;

inline constexpr std::array<std::string_view, kConnCount> kConnNames = {
    "join", "meet", "fus", "rimp", "limp", "rneg", "lneg", "zero", "one"};

inline std::string_view conn_name(Conn c) { return kConnNames[static_cast<std::size_t>(c)]; }

inline std::optional<Conn> conn_from_name(std::string_view s) {
  for (std::size_t i = 0; i < kConnCount; ++i)
    if (kConnNames[i] == s) return static_cast<Conn>(i);
  return std::nullopt;
}

inline bool is_binary(Conn c) {
  return c == Conn::Join || c == Conn::Meet || c == Conn::Fus || c == Conn::Rimp || c == Conn::Limp;
}
inline bool is_unary(Conn c) { return c == Conn::Rneg || c == Conn::Lneg; }
inline bool is_constant(Conn c) { return c == Conn::Zero || c == Conn::One; }

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)), pos_(pos) {}
  explicit SyntaxError(const std::string& msg) : std::runtime_error(msg), pos_(std::string::npos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

// A set of connectives. Join, fusion and both constants are always present,
// and the two implications come together or not at all.
class Language {
 public:
  Language() : Language(core()) {}

  static Language from_connectives(std::initializer_list<Conn> cs) {
    std::bitset<kConnCount> b;
    for (Conn c : cs) b.set(static_cast<std::size_t>(c));
    return Language(b);
  }

  static Language core() {
    std::bitset<kConnCount> b;
    for (Conn c : {Conn::Join, Conn::Fus, Conn::Zero, Conn::One}) b.set(static_cast<std::size_t>(c));
    return Language(b, true);
  }
  static Language core_meet() { return core().with(Conn::Meet); }
  static Language core_neg() { return core().with(Conn::Rneg).with(Conn::Lneg); }
  static Language core_meet_neg() { return core_neg().with(Conn::Meet); }
  static Language full() { return Language(std::bitset<kConnCount>().set()); }

  // Preset name ("core", "core-meet", "core-neg", "core-meet-neg", "full") or
  // a comma separated connective list.
  static Language parse(std::string_view s) {
    if (s == "core") return core();
    if (s == "core-meet") return core_meet();
    if (s == "core-neg") return core_neg();
    if (s == "core-meet-neg") return core_meet_neg();
    if (s == "full") return full();
    std::bitset<kConnCount> b;
    std::size_t start = 0;
    while (start <= s.size()) {
      std::size_t end = s.find(',', start);
      if (end == std::string_view::npos) end = s.size();
      std::string_view tok = s.substr(start, end - start);
      while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
      while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
      auto c = conn_from_name(tok);
      if (!c) throw SyntaxError("unknown connective '" + std::string(tok) + "'");
      b.set(static_cast<std::size_t>(*c));
      start = end + 1;
    }
    return Language(b);
  }

  bool has(Conn c) const { return bits_.test(static_cast<std::size_t>(c)); }
  bool has_implications() const { return has(Conn::Rimp); }
  bool has_negations() const { return has(Conn::Rneg) || has(Conn::Lneg); }

  Language with(Conn c) const {
    auto b = bits_;
    b.set(static_cast<std::size_t>(c));
    return Language(b, true);
  }

  bool subset_of(const Language& o) const { return (bits_ & ~o.bits_).none(); }

  std::string name() const {
    if (*this == core()) return "core";
    if (*this == core_meet()) return "core-meet";
    if (*this == core_neg()) return "core-neg";
    if (*this == core_meet_neg()) return "core-meet-neg";
    if (*this == full()) return "full";
    std::string out;
    for (std::size_t i = 0; i < kConnCount; ++i) {
      if (!bits_.test(i)) continue;
      if (!out.empty()) out += ",";
      out += kConnNames[i];
    }
    return out;
  }

  unsigned long bits() const { return bits_.to_ulong(); }

  friend bool operator==(const Language& a, const Language& b) { return a.bits_ == b.bits_; }

 private:
  explicit Language(std::bitset<kConnCount> b, bool trusted = false) : bits_(b) {
    if (trusted) return;
    for (Conn c : {Conn::Join, Conn::Fus, Conn::Zero, Conn::One})
      if (!has(c)) throw SyntaxError("language must contain " + std::string(conn_name(c)));
    if (has(Conn::Rimp) != has(Conn::Limp))
      throw SyntaxError("language must contain both implications or neither");
  }
  std::bitset<kConnCount> bits_;
};

struct FormulaNode;

// Immutable formula handle with structural equality.
class Formula {
 public:
  enum class Kind : std::uint8_t { Var, Const, Unary, Binary };

  Formula() = default;

  static Formula var(std::string name);
  static Formula zero();
  static Formula one();
  static Formula unary(Conn c, Formula a);
  static Formula binary(Conn c, Formula a, Formula b);

  explicit operator bool() const { return static_cast<bool>(n_); }

  Kind kind() const;
  Conn conn() const;  // meaningless for variables
  const std::string& name() const;
  const Formula& lhs() const;
  const Formula& rhs() const;
  std::size_t hash() const;
  std::size_t size() const;
  std::size_t depth() const;
  bool is_var() const { return kind() == Kind::Var; }
  bool is(Conn c) const { return kind() != Kind::Var && conn() == c; }
  const void* id() const { return n_.get(); }

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }
  friend bool operator<(const Formula& a, const Formula& b) { return compare(a, b) < 0; }
  static int compare(const Formula& a, const Formula& b);

 private:
  explicit Formula(std::shared_ptr<const FormulaNode> n) : n_(std::move(n)) {}
  std::shared_ptr<const FormulaNode> n_;
};

struct FormulaNode {
  Formula::Kind kind;
  Conn conn;
  std::string name;
  Formula lhs, rhs;
  std::size_t hash;
  std::size_t size;
  std::size_t depth;
};

namespace detail {
inline std::size_t mix(std::size_t h, std::size_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}
inline std::size_t fnv(std::string_view s) {
  std::size_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}
}  // namespace detail

inline Formula Formula::var(std::string name) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = Kind::Var;
  n->conn = Conn::Zero;
  n->hash = detail::mix(detail::fnv(name), 17);
  n->name = std::move(name);
  n->size = 1;
  n->depth = 0;
  return Formula(std::move(n));
}

inline Formula Formula::zero() {
  static const Formula z = [] {
    auto n = std::make_shared<FormulaNode>();
    n->kind = Kind::Const;
    n->conn = Conn::Zero;
    n->hash = detail::mix(101, static_cast<std::size_t>(Conn::Zero));
    n->size = 1;
    n->depth = 0;
    return Formula(std::move(n));
  }();
  return z;
}

inline Formula Formula::one() {
  static const Formula o = [] {
    auto n = std::make_shared<FormulaNode>();
    n->kind = Kind::Const;
    n->conn = Conn::One;
    n->hash = detail::mix(101, static_cast<std::size_t>(Conn::One));
    n->size = 1;
    n->depth = 0;
    return Formula(std::move(n));
  }();
  return o;
}

inline Formula Formula::unary(Conn c, Formula a) {
  if (!is_unary(c)) throw std::invalid_argument("not a unary connective");
  auto n = std::make_shared<FormulaNode>();
  n->kind = Kind::Unary;
  n->conn = c;
  n->hash = detail::mix(detail::mix(202, static_cast<std::size_t>(c)), a.hash());
  n->size = a.size() + 1;
  n->depth = a.depth() + 1;
  n->lhs = std::move(a);
  return Formula(std::move(n));
}

inline Formula Formula::binary(Conn c, Formula a, Formula b) {
  if (!is_binary(c)) throw std::invalid_argument("not a binary connective");
  auto n = std::make_shared<FormulaNode>();
  n->kind = Kind::Binary;
  n->conn = c;
  n->hash = detail::mix(detail::mix(detail::mix(303, static_cast<std::size_t>(c)), a.hash()), b.hash());
  n->size = a.size() + b.size() + 1;
  n->depth = std::max(a.depth(), b.depth()) + 1;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return Formula(std::move(n));
}

inline Formula::Kind Formula::kind() const { return n_->kind; }
inline Conn Formula::conn() const { return n_->conn; }
inline const std::string& Formula::name() const { return n_->name; }
inline const Formula& Formula::lhs() const { return n_->lhs; }
inline const Formula& Formula::rhs() const { return n_->rhs; }
inline std::size_t Formula::hash() const { return n_->hash; }
inline std::size_t Formula::size() const { return n_->size; }
inline std::size_t Formula::depth() const { return n_->depth; }

inline bool operator==(const Formula& a, const Formula& b) {
  if (a.n_ == b.n_) return true;
  if (!a.n_ || !b.n_) return false;
  if (a.hash() != b.hash() || a.size() != b.size()) return false;
  return Formula::compare(a, b) == 0;
}

inline int Formula::compare(const Formula& a, const Formula& b) {
  if (a.n_ == b.n_) return 0;
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  switch (a.kind()) {
    case Kind::Var:
      return a.name().compare(b.name()) < 0 ? -1 : (a.name() == b.name() ? 0 : 1);
    case Kind::Const:
      return a.conn() == b.conn() ? 0 : (a.conn() < b.conn() ? -1 : 1);
    case Kind::Unary:
      if (a.conn() != b.conn()) return a.conn() < b.conn() ? -1 : 1;
      return compare(a.lhs(), b.lhs());
    case Kind::Binary: {
      if (a.conn() != b.conn()) return a.conn() < b.conn() ? -1 : 1;
      int c = compare(a.lhs(), b.lhs());
      return c != 0 ? c : compare(a.rhs(), b.rhs());
    }
  }
  return 0;
}

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

// Builders. limp(a, b) is the left residual b / a: the denominator comes first.
inline Formula var(std::string n) { return Formula::var(std::move(n)); }
inline Formula zero() { return Formula::zero(); }
inline Formula one() { return Formula::one(); }
inline Formula join(Formula a, Formula b) { return Formula::binary(Conn::Join, std::move(a), std::move(b)); }
inline Formula meet(Formula a, Formula b) { return Formula::binary(Conn::Meet, std::move(a), std::move(b)); }
inline Formula fus(Formula a, Formula b) { return Formula::binary(Conn::Fus, std::move(a), std::move(b)); }
inline Formula rimp(Formula a, Formula b) { return Formula::binary(Conn::Rimp, std::move(a), std::move(b)); }
inline Formula limp(Formula a, Formula b) { return Formula::binary(Conn::Limp, std::move(a), std::move(b)); }
inline Formula rneg(Formula a) { return Formula::unary(Conn::Rneg, std::move(a)); }
inline Formula lneg(Formula a) { return Formula::unary(Conn::Lneg, std::move(a)); }

// Connective check; returns the first connective of f not in lang.
inline std::optional<Conn> first_foreign_connective(const Formula& f, const Language& lang) {
  if (f.is_var()) return std::nullopt;
  if (!lang.has(f.conn())) return f.conn();
  if (f.kind() == Formula::Kind::Unary) return first_foreign_connective(f.lhs(), lang);
  if (f.kind() == Formula::Kind::Binary) {
    if (auto c = first_foreign_connective(f.lhs(), lang)) return c;
    return first_foreign_connective(f.rhs(), lang);
  }
  return std::nullopt;
}

inline bool in_language(const Formula& f, const Language& lang) { return !first_foreign_connective(f, lang); }

// ---------------------------------------------------------------- printing

namespace detail {
// Binding levels: 0 implication, 1 join, 2 meet, 3 fusion, 4 atoms.
inline int level(const Formula& f) {
  if (f.kind() != Formula::Kind::Binary) return 4;
  switch (f.conn()) {
    case Conn::Rimp:
    case Conn::Limp: return 0;
    case Conn::Join: return 1;
    case Conn::Meet: return 2;
    case Conn::Fus: return 3;
    default: return 4;
  }
}

inline void print(const Formula& f, std::string& out);

inline void print_at(const Formula& f, int min_level, std::string& out) {
  if (level(f) < min_level) {
    out += '(';
    print(f, out);
    out += ')';
  } else {
    print(f, out);
  }
}

inline void print(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Formula::Kind::Var: out += f.name(); return;
    case Formula::Kind::Const: out += f.conn() == Conn::Zero ? "0" : "1"; return;
    case Formula::Kind::Unary:
      out += f.conn() == Conn::Rneg ? "rn(" : "ln(";
      print(f.lhs(), out);
      out += ')';
      return;
    case Formula::Kind::Binary: break;
  }
  switch (f.conn()) {
    case Conn::Rimp:
      print_at(f.lhs(), 1, out);
      out += " \\ ";
      print_at(f.rhs(), 1, out);
      return;
    case Conn::Limp:
      print_at(f.rhs(), 1, out);
      out += " / ";
      print_at(f.lhs(), 1, out);
      return;
    default: {
      int lv = level(f);
      const char* op = f.conn() == Conn::Join ? " \\/ " : f.conn() == Conn::Meet ? " /\\ " : " * ";
      print_at(f.lhs(), lv, out);
      out += op;
      print_at(f.rhs(), lv + 1, out);
      return;
    }
  }
}
}  // namespace detail

inline std::string to_string(const Formula& f) {
  std::string out;
  detail::print(f, out);
  return out;
}

// ---------------------------------------------------------------- parsing

namespace detail {

class FormulaParser {
 public:
  FormulaParser(std::string_view src, const Language& lang) : s_(src), lang_(lang) {}

  Formula parse_all() {
    Formula f = formula();
    skip();
    if (p_ != s_.size()) throw SyntaxError("unexpected '" + std::string(1, s_[p_]) + "'", p_);
    return f;
  }

 private:
  void skip() {
    while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
  }
  bool peek(std::string_view t) {
    skip();
    return s_.substr(p_, t.size()) == t;
  }
  bool eat(std::string_view t) {
    if (!peek(t)) return false;
    p_ += t.size();
    return true;
  }
  void require(Conn c, std::size_t at) {
    if (!lang_.has(c)) throw SyntaxError(std::string(conn_name(c)) + " not in language", at);
  }

  // Implication level: a single \ or / between two sums.
  Formula formula() {
    Formula a = sum();
    skip();
    std::size_t at = p_;
    if (peek("\\/") || peek("/\\")) return a;
    if (eat("\\")) {
      require(Conn::Rimp, at);
      Formula b = sum();
      check_no_imp();
      return rimp(a, b);
    }
    if (eat("/")) {
      require(Conn::Limp, at);
      Formula b = sum();
      check_no_imp();
      return limp(b, a);
    }
    return a;
  }
  void check_no_imp() {
    skip();
    if (p_ < s_.size() && (s_[p_] == '\\' || s_[p_] == '/') && !peek("\\/") && !peek("/\\"))
      throw SyntaxError("implications do not associate; add parentheses", p_);
  }
  Formula sum() {
    Formula a = prod();
    while (true) {
      skip();
      std::size_t at = p_;
      if (!eat("\\/")) return a;
      require(Conn::Join, at);
      a = join(a, prod());
    }
  }
  Formula prod() {
    Formula a = factor();
    while (true) {
      skip();
      std::size_t at = p_;
      if (!eat("/\\")) return a;
      require(Conn::Meet, at);
      a = meet(a, factor());
    }
  }
  Formula factor() {
    Formula a = atom();
    while (true) {
      skip();
      std::size_t at = p_;
      if (!eat("*")) return a;
      require(Conn::Fus, at);
      a = fus(a, atom());
    }
  }
  Formula atom() {
    skip();
    if (p_ >= s_.size()) throw SyntaxError("unexpected end of input", p_);
    std::size_t at = p_;
    char c = s_[p_];
    if (c == '(') {
      ++p_;
      Formula f = formula();
      if (!eat(")")) throw SyntaxError("expected ')'", p_);
      return f;
    }
    if (c == '0' || c == '1') {
      ++p_;
      if (p_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[p_])))
        throw SyntaxError("malformed constant", at);
      return c == '0' ? zero() : one();
    }
    if (c >= 'a' && c <= 'z') {
      std::size_t q = p_ + 1;
      while (q < s_.size() && (std::islower(static_cast<unsigned char>(s_[q])) ||
                               std::isdigit(static_cast<unsigned char>(s_[q])) || s_[q] == '_'))
        ++q;
      std::string name(s_.substr(p_, q - p_));
      p_ = q;
      if (name == "rn" || name == "ln") {
        skip();
        if (p_ < s_.size() && s_[p_] == '(') {
          Conn k = name == "rn" ? Conn::Rneg : Conn::Lneg;
          require(k, at);
          ++p_;
          Formula f = formula();
          if (!eat(")")) throw SyntaxError("expected ')'", p_);
          return Formula::unary(k, f);
        }
        throw SyntaxError("'" + name + "' is reserved for negation", at);
      }
      return var(std::move(name));
    }
    throw SyntaxError("unexpected '" + std::string(1, c) + "'", at);
  }

  std::string_view s_;
  const Language& lang_;
  std::size_t p_ = 0;
};

}  // namespace detail

inline Formula parse_formula(std::string_view src, const Language& lang = Language::full()) {
  return detail::FormulaParser(src, lang).parse_all();
}

// ---------------------------------------------------------------- operations

// The mirror map: reverses fusion, swaps the two residuals and the two negations.
inline Formula mirror(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Var:
    case Formula::Kind::Const: return f;
    case Formula::Kind::Unary:
      return Formula::unary(f.conn() == Conn::Rneg ? Conn::Lneg : Conn::Rneg, mirror(f.lhs()));
    case Formula::Kind::Binary: break;
  }
  Formula a = mirror(f.lhs()), b = mirror(f.rhs());
  switch (f.conn()) {
    case Conn::Fus: return fus(b, a);
    case Conn::Rimp: return limp(a, b);
    case Conn::Limp: return rimp(a, b);
    default: return Formula::binary(f.conn(), a, b);
  }
}

using Substitution = std::map<std::string, Formula>;

// Simultaneous substitution; variables not in the map are kept.
inline Formula substitute(const Formula& f, const Substitution& s) {
  switch (f.kind()) {
    case Formula::Kind::Var: {
      auto it = s.find(f.name());
      return it == s.end() ? f : it->second;
    }
    case Formula::Kind::Const: return f;
    case Formula::Kind::Unary: return Formula::unary(f.conn(), substitute(f.lhs(), s));
    case Formula::Kind::Binary:
      return Formula::binary(f.conn(), substitute(f.lhs(), s), substitute(f.rhs(), s));
  }
  return f;
}

inline void collect_variables(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::Var: out.insert(f.name()); return;
    case Formula::Kind::Const: return;
    case Formula::Kind::Unary: collect_variables(f.lhs(), out); return;
    case Formula::Kind::Binary:
      collect_variables(f.lhs(), out);
      collect_variables(f.rhs(), out);
      return;
  }
}

inline std::set<std::string> variables(const Formula& f) {
  std::set<std::string> out;
  collect_variables(f, out);
  return out;
}

inline void collect_subformulas(const Formula& f, std::set<Formula>& out) {
  if (!out.insert(f).second) return;
  if (f.kind() == Formula::Kind::Unary) collect_subformulas(f.lhs(), out);
  if (f.kind() == Formula::Kind::Binary) {
    collect_subformulas(f.lhs(), out);
    collect_subformulas(f.rhs(), out);
  }
}

inline std::set<Formula> subformulas(const Formula& f) {
  std::set<Formula> out;
  collect_subformulas(f, out);
  return out;
}

// One-way matching of a schema against a formula. Every variable of the
// schema is a metavariable; bindings accumulate in s.
inline bool match(const Formula& schema, const Formula& f, Substitution& s) {
  if (schema.is_var()) {
    auto [it, fresh] = s.emplace(schema.name(), f);
    return fresh || it->second == f;
  }
  if (f.is_var() || schema.kind() != f.kind() || schema.conn() != f.conn()) return false;
  if (schema.kind() == Formula::Kind::Const) return true;
  if (!match(schema.lhs(), f.lhs(), s)) return false;
  return schema.kind() == Formula::Kind::Unary || match(schema.rhs(), f.rhs(), s);
}

}  // namespace substrukt
