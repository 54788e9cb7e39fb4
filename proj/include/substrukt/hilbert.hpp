#pragma once

#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "substrukt/search.hpp"

namespace substrukt {

// Schemata are formulas whose variables (phi, psi, gam, ...) are all metavariables.
struct HilbertAxiom {
  std::string name;
  Formula schema;
};

struct HilbertRule {
  std::string name;
  std::vector<Formula> premises;
  Formula conclusion;
};

struct HilbertSystem {
  std::string name;
  Calculus calculus;  // the sequent calculus it should agree with
  std::vector<HilbertAxiom> axioms;
  std::vector<HilbertRule> rules;

  const HilbertAxiom* axiom(std::string_view n) const {
    for (const auto& a : axioms)
      if (a.name == n) return &a;
    return nullptr;
  }
  const HilbertRule* rule(std::string_view n) const {
    for (const auto& r : rules)
      if (r.name == n) return &r;
    return nullptr;
  }
};

namespace detail {
inline void ax(HilbertSystem& s, const char* name, const char* text) {
  s.axioms.push_back({name, parse_formula(text)});
}
inline void rl(HilbertSystem& s, const char* name, std::initializer_list<const char*> prem, const char* concl) {
  HilbertRule r{name, {}, parse_formula(concl)};
  for (const char* p : prem) r.premises.push_back(parse_formula(p));
  s.rules.push_back(std::move(r));
}
}  // namespace detail

// Schemata for the structural flags, with \ read as the implication.
inline void add_sigma_schemata(HilbertSystem& s, Sigma sigma) {
  if (sigma.wl()) detail::ax(s, "wl", "phi \\ (psi \\ phi)");
  if (sigma.wr()) detail::ax(s, "wr", "0 \\ phi");
  if (sigma.c()) detail::ax(s, "c", "(phi \\ (phi \\ psi)) \\ (phi \\ psi)");
}

// Presets: "HFL" (both residuals), "HFLe" (one implication, with exchange)
// and "vAR" (the implicational basis with the rules dis and adj).
inline HilbertSystem hilbert_system(std::string_view preset, Sigma sigma = {}) {
  using detail::ax;
  using detail::rl;
  HilbertSystem s;
  s.name = std::string(preset);
  if (preset == "HFL") {
    s.calculus = Calculus{sigma, Language::full()};
    ax(s, "rimp-id", "phi \\ phi");
    ax(s, "rimp-pf", "(phi \\ psi) \\ ((gam \\ phi) \\ (gam \\ psi))");
    ax(s, "rimp-as", "phi \\ ((psi / phi) \\ psi)");
    ax(s, "assoc", "((psi \\ gam) / phi) \\ (psi \\ (gam / phi))");
    ax(s, "fus-limp", "((psi * (psi \\ phi)) / psi) \\ (phi / psi)");
    ax(s, "fus-meet", "((phi /\\ 1) * (psi /\\ 1)) \\ (phi /\\ psi)");
    ax(s, "meet1-rimp", "(phi /\\ psi) \\ phi");
    ax(s, "meet2-rimp", "(phi /\\ psi) \\ psi");
    ax(s, "meet", "((gam \\ phi) /\\ (gam \\ psi)) \\ (gam \\ (phi /\\ psi))");
    ax(s, "rimp-join1", "phi \\ (phi \\/ psi)");
    ax(s, "rimp-join2", "psi \\ (phi \\/ psi)");
    ax(s, "join-rimp", "((phi \\ gam) /\\ (psi \\ gam)) \\ ((phi \\/ psi) \\ gam)");
    ax(s, "rimp-fus", "psi \\ (phi \\ (phi * psi))");
    ax(s, "fus-rimp", "(psi \\ (phi \\ gam)) \\ ((phi * psi) \\ gam)");
    ax(s, "one", "1");
    ax(s, "one-rimp", "1 \\ (phi \\ phi)");
    ax(s, "rimp-one", "phi \\ (1 \\ phi)");
    ax(s, "rn-def1", "rn(phi) \\ (phi \\ 0)");
    ax(s, "rn-def2", "(phi \\ 0) \\ rn(phi)");
    ax(s, "ln-def1", "ln(phi) / (0 / phi)");
    ax(s, "ln-def2", "(0 / phi) / ln(phi)");
    rl(s, "mp", {"phi", "phi \\ psi"}, "psi");
    rl(s, "adj-u", {"phi"}, "phi /\\ 1");
    rl(s, "rimp-pn", {"phi"}, "psi \\ (phi * psi)");
    rl(s, "limp-pn", {"phi"}, "(psi * phi) / psi");
  } else if (preset == "HFLe") {
    s.calculus = Calculus{Sigma(sigma.bits() | Sigma::E), Language::full()};
    ax(s, "id", "phi \\ phi");
    ax(s, "pf", "(phi \\ psi) \\ ((gam \\ phi) \\ (gam \\ psi))");
    ax(s, "per", "(phi \\ (psi \\ gam)) \\ (psi \\ (phi \\ gam))");
    ax(s, "fus-meet", "((phi /\\ 1) * (psi /\\ 1)) \\ (phi /\\ psi)");
    ax(s, "meet1-imp", "(phi /\\ psi) \\ phi");
    ax(s, "meet2-imp", "(phi /\\ psi) \\ psi");
    ax(s, "imp-meet", "((gam \\ phi) /\\ (gam \\ psi)) \\ (gam \\ (phi /\\ psi))");
    ax(s, "imp-join1", "phi \\ (phi \\/ psi)");
    ax(s, "imp-join2", "psi \\ (phi \\/ psi)");
    ax(s, "join-imp", "((phi \\ gam) /\\ (psi \\ gam)) \\ ((phi \\/ psi) \\ gam)");
    ax(s, "imp-fus", "psi \\ (phi \\ (phi * psi))");
    ax(s, "fus-imp", "(psi \\ (phi \\ gam)) \\ ((phi * psi) \\ gam)");
    ax(s, "one", "1");
    ax(s, "one-imp", "1 \\ (phi \\ phi)");
    ax(s, "neg-def1", "rn(phi) \\ (phi \\ 0)");
    ax(s, "neg-def2", "(phi \\ 0) \\ rn(phi)");
    rl(s, "mp", {"phi", "phi \\ psi"}, "psi");
    rl(s, "adj-u", {"phi"}, "phi /\\ 1");
  } else if (preset == "vAR") {
    s.calculus = Calculus{Sigma(sigma.bits() | Sigma::E), Language::full()};
    ax(s, "id", "phi \\ phi");
    ax(s, "pf", "(phi \\ psi) \\ ((gam \\ phi) \\ (gam \\ psi))");
    ax(s, "per", "(phi \\ (psi \\ gam)) \\ (psi \\ (phi \\ gam))");
    ax(s, "imp-join1", "phi \\ (phi \\/ psi)");
    ax(s, "imp-join2", "psi \\ (phi \\/ psi)");
    ax(s, "meet1-imp", "(phi /\\ psi) \\ phi");
    ax(s, "meet2-imp", "(phi /\\ psi) \\ psi");
    ax(s, "imp-meet", "((gam \\ phi) /\\ (gam \\ psi)) \\ (gam \\ (phi /\\ psi))");
    ax(s, "fus-imp", "(psi \\ (phi \\ gam)) \\ ((phi * psi) \\ gam)");
    ax(s, "imp-fus", "psi \\ (phi \\ (phi * psi))");
    ax(s, "one", "1");
    ax(s, "one-imp", "1 \\ (phi \\ phi)");
    rl(s, "mp", {"phi", "phi \\ psi"}, "psi");
    rl(s, "dis", {"phi \\ gam", "psi \\ gam"}, "(phi \\/ psi) \\ gam");
    rl(s, "adj", {"phi", "psi"}, "phi /\\ psi");
  } else {
    throw SyntaxError("unknown Hilbert system '" + std::string(preset) + "'");
  }
  add_sigma_schemata(s, sigma);
  return s;
}

// ---------------------------------------------------------------- proofs

struct HilbertLine {
  enum class Kind { Axiom, Hyp, Rule };
  Formula formula;
  Kind kind = Kind::Hyp;
  std::string name;               // axiom or rule name
  std::vector<std::size_t> refs;  // 1-based earlier lines, for rules
};

struct HilbertProof {
  std::vector<HilbertLine> lines;
};

// Lines "n. <formula> [axiom <name> | hyp | <rule> m1 m2 ...]"; blank lines
// and lines starting with '#' are skipped.
inline HilbertProof parse_hilbert_proof(std::string_view text, const Language& lang = Language::full()) {
  HilbertProof p;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto first = raw.find_first_not_of(" \t\r");
    if (first == std::string::npos || raw[first] == '#') continue;
    auto err = [&](const std::string& m) { return SyntaxError("line " + std::to_string(lineno) + ": " + m); };
    auto dot = raw.find('.', first);
    if (dot == std::string::npos) throw err("missing line number");
    std::size_t num;
    try {
      num = std::stoul(raw.substr(first, dot - first));
    } catch (const std::exception&) {
      throw err("bad line number");
    }
    if (num != p.lines.size() + 1) throw err("lines must be numbered 1, 2, ...");
    auto open = raw.rfind('[');
    auto close = raw.rfind(']');
    if (open == std::string::npos || close == std::string::npos || close < open || open < dot)
      throw err("missing justification");
    HilbertLine l;
    l.formula = parse_formula(std::string_view(raw).substr(dot + 1, open - dot - 1), lang);
    std::istringstream just(raw.substr(open + 1, close - open - 1));
    std::string head;
    just >> head;
    if (head == "hyp") {
      l.kind = HilbertLine::Kind::Hyp;
    } else if (head == "axiom") {
      l.kind = HilbertLine::Kind::Axiom;
      if (!(just >> l.name)) throw err("axiom name missing");
    } else if (!head.empty()) {
      l.kind = HilbertLine::Kind::Rule;
      l.name = head;
      std::string r;
      while (just >> r) {
        try {
          l.refs.push_back(std::stoul(r));
        } catch (const std::exception&) {
          throw err("bad line reference '" + r + "'");
        }
      }
    } else {
      throw err("empty justification");
    }
    p.lines.push_back(std::move(l));
  }
  return p;
}

inline std::string to_text(const HilbertProof& p) {
  std::string out;
  for (std::size_t i = 0; i < p.lines.size(); ++i) {
    const auto& l = p.lines[i];
    out += std::to_string(i + 1) + ". " + to_string(l.formula) + " [";
    if (l.kind == HilbertLine::Kind::Hyp) out += "hyp";
    if (l.kind == HilbertLine::Kind::Axiom) out += "axiom " + l.name;
    if (l.kind == HilbertLine::Kind::Rule) {
      out += l.name;
      for (auto r : l.refs) out += " " + std::to_string(r);
    }
    out += "]\n";
  }
  return out;
}

struct HilbertCheck {
  bool ok = true;
  std::size_t line = 0;  // 1-based offending line
  std::string message;
  explicit operator bool() const { return ok; }
};

inline HilbertCheck check_hilbert_proof(const HilbertProof& p, const HilbertSystem& sys,
                                        const std::vector<Formula>& hyps = {}) {
  for (std::size_t i = 0; i < p.lines.size(); ++i) {
    const auto& l = p.lines[i];
    auto fail = [&](std::string m) { return HilbertCheck{false, i + 1, std::move(m)}; };
    switch (l.kind) {
      case HilbertLine::Kind::Hyp:
        if (std::find(hyps.begin(), hyps.end(), l.formula) == hyps.end()) return fail("not a declared hypothesis");
        break;
      case HilbertLine::Kind::Axiom: {
        const HilbertAxiom* a = sys.axiom(l.name);
        if (!a) return fail("unknown axiom '" + l.name + "'");
        Substitution s;
        if (!match(a->schema, l.formula, s)) return fail("not an instance of axiom " + l.name);
        break;
      }
      case HilbertLine::Kind::Rule: {
        const HilbertRule* r = sys.rule(l.name);
        if (!r) return fail("unknown rule '" + l.name + "'");
        if (l.refs.size() != r->premises.size()) return fail("rule " + l.name + " needs " + std::to_string(r->premises.size()) + " premises");
        Substitution s;
        for (std::size_t k = 0; k < l.refs.size(); ++k) {
          std::size_t ref = l.refs[k];
          if (ref == 0 || ref > i) return fail("reference " + std::to_string(ref) + " is not an earlier line");
          if (!match(r->premises[k], p.lines[ref - 1].formula, s)) return fail("premise " + std::to_string(k + 1) + " does not match");
        }
        if (!match(r->conclusion, l.formula, s)) return fail("conclusion does not match rule " + l.name);
        break;
      }
    }
  }
  return {};
}

// Instantiates metavariables with fresh object variables p, q, r, ...
inline Substitution default_instantiation(const std::set<std::string>& metas) {
  static const char* objs[] = {"p", "q", "r", "s", "t", "u"};
  Substitution s;
  std::size_t i = 0;
  for (const auto& m : metas) s[m] = var(i < 6 ? objs[i] : "v" + std::to_string(i)), ++i;
  return s;
}

// Each axiom instance as the sequent => A.
inline std::vector<std::pair<std::string, Sequent>> axioms_to_sequents(const HilbertSystem& sys) {
  std::vector<std::pair<std::string, Sequent>> out;
  for (const auto& a : sys.axioms)
    out.emplace_back(a.name, rho_prime(substitute(a.schema, default_instantiation(variables(a.schema)))));
  return out;
}

// A rule instance as hypotheses => A_i and goal => B.
inline std::pair<std::vector<Sequent>, Sequent> rule_to_sequents(const HilbertRule& r) {
  std::set<std::string> metas = variables(r.conclusion);
  for (const auto& p : r.premises) collect_variables(p, metas);
  Substitution s = default_instantiation(metas);
  std::vector<Sequent> hyps;
  for (const auto& p : r.premises) hyps.push_back(rho_prime(substitute(p, s)));
  return {hyps, rho_prime(substitute(r.conclusion, s))};
}

struct HilbertCrossCheck {
  std::string item;
  bool rule = false;
  Verdict verdict = Verdict::Unknown;
};

// Proves every axiom instance in the matching sequent calculus and derives
// every rule instance from its premises.
inline std::vector<HilbertCrossCheck> cross_check(const HilbertSystem& sys, const SearchOptions& opt = {}) {
  std::vector<HilbertCrossCheck> out;
  for (const auto& [name, seq] : axioms_to_sequents(sys)) out.push_back({name, false, prove(seq, sys.calculus, opt).verdict});
  for (const auto& r : sys.rules) {
    auto [hyps, goal] = rule_to_sequents(r);
    out.push_back({r.name, true, prove_with_hyps(goal, hyps, sys.calculus, opt).verdict});
  }
  return out;
}

}  // namespace substrukt
