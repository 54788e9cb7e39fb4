#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "substrukt/syntax.hpp"

namespace substrukt {

// Gamma => Delta with Delta holding at most one formula.
struct Sequent {
  std::vector<Formula> antecedent;
  std::optional<Formula> succedent;

  Sequent() = default;
  Sequent(std::vector<Formula> a, std::optional<Formula> s) : antecedent(std::move(a)), succedent(std::move(s)) {}

  friend bool operator==(const Sequent& a, const Sequent& b) {
    return a.antecedent == b.antecedent && a.succedent == b.succedent;
  }
  friend bool operator!=(const Sequent& a, const Sequent& b) { return !(a == b); }
  friend bool operator<(const Sequent& a, const Sequent& b) {
    if (a.antecedent.size() != b.antecedent.size()) return a.antecedent.size() < b.antecedent.size();
    for (std::size_t i = 0; i < a.antecedent.size(); ++i) {
      int c = Formula::compare(a.antecedent[i], b.antecedent[i]);
      if (c != 0) return c < 0;
    }
    if (a.succedent.has_value() != b.succedent.has_value()) return !a.succedent.has_value();
    return a.succedent && Formula::compare(*a.succedent, *b.succedent) < 0;
  }
};

struct SequentHash {
  std::size_t operator()(const Sequent& s) const {
    std::size_t h = s.antecedent.size();
    for (const auto& f : s.antecedent) h = detail::mix(h, f.hash());
    return detail::mix(h, s.succedent ? s.succedent->hash() : 7);
  }
};

inline bool in_language(const Sequent& s, const Language& lang) {
  for (const auto& f : s.antecedent)
    if (!in_language(f, lang)) return false;
  return !s.succedent || in_language(*s.succedent, lang);
}

inline std::string to_string(const Sequent& s) {
  std::string out;
  for (std::size_t i = 0; i < s.antecedent.size(); ++i) {
    if (i) out += ", ";
    out += to_string(s.antecedent[i]);
  }
  out += out.empty() ? "=>" : " =>";
  if (s.succedent) out += " " + to_string(*s.succedent);
  return out;
}

inline Sequent parse_sequent(std::string_view src, const Language& lang = Language::full()) {
  std::size_t arrow = src.find("=>");
  if (arrow == std::string_view::npos) throw SyntaxError("missing '=>'");
  if (src.find("=>", arrow + 2) != std::string_view::npos) throw SyntaxError("more than one '=>'", arrow);
  Sequent s;
  std::string_view left = src.substr(0, arrow), right = src.substr(arrow + 2);
  auto blank = [](std::string_view v) {
    return std::all_of(v.begin(), v.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
  };
  if (!blank(left)) {
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= left.size(); ++i) {
      if (i < left.size() && left[i] == '(') ++depth;
      if (i < left.size() && left[i] == ')') --depth;
      if (i == left.size() || (left[i] == ',' && depth == 0)) {
        try {
          s.antecedent.push_back(parse_formula(left.substr(start, i - start), lang));
        } catch (const SyntaxError& e) {
          if (e.position() == std::string::npos) throw;
          throw SyntaxError(std::string(e.what()).substr(0, std::string(e.what()).rfind(" at position")),
                            start + e.position());
        }
        start = i + 1;
      }
    }
  }
  if (!blank(right)) {
    try {
      s.succedent = parse_formula(right, lang);
    } catch (const SyntaxError& e) {
      if (e.position() == std::string::npos) throw;
      throw SyntaxError(std::string(e.what()).substr(0, std::string(e.what()).rfind(" at position")),
                        arrow + 2 + e.position());
    }
  }
  return s;
}

// lhs = rhs. An inequation a <= b is stored as a \/ b = b.
struct Equation {
  Formula lhs, rhs;
  friend bool operator==(const Equation& a, const Equation& b) { return a.lhs == b.lhs && a.rhs == b.rhs; }
  friend bool operator<(const Equation& a, const Equation& b) {
    int c = Formula::compare(a.lhs, b.lhs);
    return c != 0 ? c < 0 : Formula::compare(a.rhs, b.rhs) < 0;
  }
};

inline Equation leq(Formula a, Formula b) { return Equation{join(a, b), b}; }

inline std::string to_string(const Equation& e) { return to_string(e.lhs) + " = " + to_string(e.rhs); }

// Accepts "a = b" or "a <= b".
inline Equation parse_equation(std::string_view src, const Language& lang = Language::full()) {
  std::size_t p = src.find("<=");
  if (p != std::string_view::npos) return leq(parse_formula(src.substr(0, p), lang), parse_formula(src.substr(p + 2), lang));
  p = src.find('=');
  if (p == std::string_view::npos) throw SyntaxError("missing '=' in equation");
  return Equation{parse_formula(src.substr(0, p), lang), parse_formula(src.substr(p + 1), lang)};
}

// Left-nested fusion of a sequence; 1 for the empty sequence.
inline Formula fuse(const std::vector<Formula>& gamma) {
  if (gamma.empty()) return one();
  Formula acc = gamma.front();
  for (std::size_t i = 1; i < gamma.size(); ++i) acc = fus(acc, gamma[i]);
  return acc;
}

// Sequent to equation: prod(Gamma) \/ d = d, with d = 0 for an empty succedent.
inline Equation tau(const Sequent& s) {
  Formula d = s.succedent ? *s.succedent : zero();
  return Equation{join(fuse(s.antecedent), d), d};
}

// Equation to the pair of sequents in both directions, deduplicated.
inline std::vector<Sequent> rho(const Equation& e) {
  std::vector<Sequent> out{Sequent({e.lhs}, e.rhs)};
  if (e.lhs != e.rhs) out.push_back(Sequent({e.rhs}, e.lhs));
  return out;
}

inline std::vector<Sequent> rho_tau(const Sequent& s) { return rho(tau(s)); }

// Sequent to a single formula f_{m-1} \ (... \ (f_0 \ d)).
inline Formula tau_prime(const Sequent& s) {
  Formula d = s.succedent ? *s.succedent : zero();
  for (const auto& f : s.antecedent) d = rimp(f, d);
  return d;
}

inline Sequent rho_prime(const Formula& f) { return Sequent({}, f); }

inline Sequent mirror(const Sequent& s) {
  Sequent out;
  for (auto it = s.antecedent.rbegin(); it != s.antecedent.rend(); ++it) out.antecedent.push_back(mirror(*it));
  if (s.succedent) out.succedent = mirror(*s.succedent);
  return out;
}

inline Equation mirror(const Equation& e) { return Equation{mirror(e.lhs), mirror(e.rhs)}; }

inline void collect_subformulas(const Sequent& s, std::set<Formula>& out) {
  for (const auto& f : s.antecedent) collect_subformulas(f, out);
  if (s.succedent) collect_subformulas(*s.succedent, out);
}

inline std::set<std::string> variables(const Sequent& s) {
  std::set<std::string> out;
  for (const auto& f : s.antecedent) collect_variables(f, out);
  if (s.succedent) collect_variables(*s.succedent, out);
  return out;
}

}  // namespace substrukt
