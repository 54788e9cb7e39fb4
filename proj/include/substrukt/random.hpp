#pragma once

#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "substrukt/calculus.hpp"

namespace substrukt {

// Seed from SUBSTRUKT_SEED when set, otherwise the fallback.
inline std::uint64_t seed_from_env(std::uint64_t fallback = 20240601) {
  if (const char* s = std::getenv("SUBSTRUKT_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
    }
  }
  return fallback;
}

struct RandomFormulaOptions {
  int max_depth = 3;
  int vars = 3;
  double constant_prob = 0.15;  // at a leaf
};

namespace detail {
inline Formula random_leaf(std::mt19937_64& rng, const RandomFormulaOptions& o) {
  std::uniform_real_distribution<double> u(0, 1);
  if (u(rng) < o.constant_prob) return u(rng) < 0.5 ? zero() : one();
  static const char* names[] = {"p", "q", "r", "s", "t"};
  int k = std::uniform_int_distribution<int>(0, std::max(0, std::min(o.vars, 5) - 1))(rng);
  return var(names[k]);
}

inline std::vector<Conn> operations(const Language& lang) {
  std::vector<Conn> out;
  for (Conn c : {Conn::Join, Conn::Meet, Conn::Fus, Conn::Rimp, Conn::Limp, Conn::Rneg, Conn::Lneg})
    if (lang.has(c)) out.push_back(c);
  return out;
}
}  // namespace detail

inline Formula random_formula(std::mt19937_64& rng, const Language& lang, const RandomFormulaOptions& o = {}) {
  std::uniform_real_distribution<double> u(0, 1);
  if (o.max_depth <= 0 || u(rng) < 0.3) return detail::random_leaf(rng, o);
  auto ops = detail::operations(lang);
  Conn c = ops[std::uniform_int_distribution<std::size_t>(0, ops.size() - 1)(rng)];
  RandomFormulaOptions sub = o;
  --sub.max_depth;
  Formula l = random_formula(rng, lang, sub);
  if (is_unary(c)) return Formula::unary(c, l);
  return Formula::binary(c, l, random_formula(rng, lang, sub));
}

// Antecedent of 0..max_len formulas; the succedent is empty with probability 1/5.
inline Sequent random_sequent(std::mt19937_64& rng, const Language& lang, const RandomFormulaOptions& o = {},
                              int max_len = 3) {
  std::vector<Formula> g;
  int len = std::uniform_int_distribution<int>(0, max_len)(rng);
  for (int i = 0; i < len; ++i) g.push_back(random_formula(rng, lang, o));
  std::optional<Formula> d;
  if (std::uniform_int_distribution<int>(0, 4)(rng) != 0) d = random_formula(rng, lang, o);
  return Sequent(std::move(g), d);
}

namespace detail {

class ForwardDeriver {
 public:
  ForwardDeriver(std::mt19937_64& rng, const Calculus& cal) : rng_(rng), cal_(cal) {
    opts_.max_depth = 1;
    opts_.vars = 3;
  }

  ProofPtr derive(int depth) {
    if (depth <= 0 || coin(0.15)) return leaf();
    ProofPtr p = derive(depth - 1);
    for (int attempt = 0; attempt < 16; ++attempt) {
      RuleId r = static_cast<RuleId>(pick(static_cast<std::size_t>(RuleId::ContrL) + 1));
      if (r == RuleId::Axiom || r == RuleId::Cut || r == RuleId::OneR || r == RuleId::ZeroL) continue;
      if (!rule_in_calculus(r, cal_)) continue;
      if (auto c = step(r, p, depth)) return c;
    }
    return p;
  }

 private:
  bool coin(double p) { return std::uniform_real_distribution<double>(0, 1)(rng_) < p; }
  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  Formula small() { return random_formula(rng_, cal_.lang, opts_); }

  ProofPtr leaf() {
    std::size_t k = pick(6);
    if (k == 0) return make_node(Sequent({}, one()), RuleId::OneR);
    if (k == 1) return make_node(Sequent({zero()}, std::nullopt), RuleId::ZeroL);
    Formula f = k == 5 ? small() : random_leaf(rng_, opts_);
    return make_node(Sequent({f}, f), RuleId::Axiom);
  }

  // One forward application of r with p as the first premise, or null when
  // p does not fit the rule.
  ProofPtr step(RuleId r, const ProofPtr& p, int depth) {
    using Seq = std::vector<Formula>;
    const Sequent& s = p->conclusion;
    const Seq& g = s.antecedent;
    const std::size_t n = g.size();
    const auto& d = s.succedent;
    auto node = [&](Sequent c, std::vector<ProofPtr> ps, std::size_t a = 0, std::size_t b = 0) {
      return make_node(std::move(c), r, std::move(ps), a, b);
    };
    switch (r) {
      case RuleId::OrR1:
      case RuleId::OrR2:
        if (!d) return nullptr;
        return node(Sequent(g, r == RuleId::OrR1 ? join(*d, small()) : join(small(), *d)), {p});
      case RuleId::AndL1:
      case RuleId::AndL2: {
        if (n == 0) return nullptr;
        std::size_t i = pick(n);
        Formula f = r == RuleId::AndL1 ? meet(g[i], small()) : meet(small(), g[i]);
        return node(Sequent(replace_at(g, i, {f}), d), {p}, i);
      }
      case RuleId::OrL: {
        if (n == 0) return nullptr;
        std::size_t i = pick(n);
        return node(Sequent(replace_at(g, i, {join(g[i], g[i])}), d), {p, p}, i);
      }
      case RuleId::AndR:
        if (!d) return nullptr;
        return node(Sequent(g, meet(*d, *d)), {p, p});
      case RuleId::FusL: {
        if (n < 2) return nullptr;
        std::size_t i = pick(n - 1);
        return node(Sequent(cat({slice(g, 0, i), Seq{fus(g[i], g[i + 1])}, slice(g, i + 2, n)}), d), {p}, i);
      }
      case RuleId::FusR: {
        if (!d) return nullptr;
        ProofPtr q = derive(depth - 1);
        if (!q->conclusion.succedent) return nullptr;
        return node(Sequent(cat({g, q->conclusion.antecedent}), fus(*d, *q->conclusion.succedent)), {p, q}, n);
      }
      case RuleId::RimpR:
        if (n == 0 || !d) return nullptr;
        return node(Sequent(slice(g, 1, n), rimp(g[0], *d)), {p});
      case RuleId::LimpR:
        if (n == 0 || !d) return nullptr;
        return node(Sequent(slice(g, 0, n - 1), limp(g[n - 1], *d)), {p});
      case RuleId::RnegR:
        if (n == 0 || d) return nullptr;
        return node(Sequent(slice(g, 1, n), rneg(g[0])), {p});
      case RuleId::LnegR:
        if (n == 0 || d) return nullptr;
        return node(Sequent(slice(g, 0, n - 1), lneg(g[n - 1])), {p});
      case RuleId::RnegL:
        if (!d) return nullptr;
        return node(Sequent(cat({g, Seq{rneg(*d)}}), std::nullopt), {p});
      case RuleId::LnegL:
        if (!d) return nullptr;
        return node(Sequent(cat({Seq{lneg(*d)}, g}), std::nullopt), {p});
      case RuleId::RimpL:
      case RuleId::LimpL: {
        // p proves Gamma => A; q proves Sigma, B, Pi => D.
        if (!d) return nullptr;
        ProofPtr q = derive(depth - 1);
        const Seq& h = q->conclusion.antecedent;
        if (h.empty()) return nullptr;
        std::size_t i = pick(h.size());
        Seq sig = slice(h, 0, i), pi = slice(h, i + 1, h.size());
        if (r == RuleId::RimpL)
          return node(Sequent(cat({sig, g, Seq{rimp(*d, h[i])}, pi}), q->conclusion.succedent), {p, q}, i, n);
        return node(Sequent(cat({sig, Seq{limp(*d, h[i])}, g, pi}), q->conclusion.succedent), {p, q}, i, n);
      }
      case RuleId::OneL: {
        std::size_t i = pick(n + 1);
        return node(Sequent(cat({slice(g, 0, i), Seq{one()}, slice(g, i, n)}), d), {p}, i);
      }
      case RuleId::ZeroR:
        if (d) return nullptr;
        return node(Sequent(g, zero()), {p});
      case RuleId::ExchL: {
        if (n < 2) return nullptr;
        std::size_t i = pick(n - 1);
        Seq h = g;
        std::swap(h[i], h[i + 1]);
        return node(Sequent(h, d), {p}, i);
      }
      case RuleId::WeakL: {
        std::size_t i = pick(n + 1);
        return node(Sequent(cat({slice(g, 0, i), Seq{small()}, slice(g, i, n)}), d), {p}, i);
      }
      case RuleId::WeakR:
        if (d) return nullptr;
        return node(Sequent(g, small()), {p});
      case RuleId::ContrL: {
        for (std::size_t i = 0; i + 1 < n; ++i)
          if (g[i] == g[i + 1]) return node(Sequent(replace_at(g, i, {}), d), {p}, i);
        return nullptr;
      }
      default: return nullptr;
    }
  }

  std::mt19937_64& rng_;
  Calculus cal_;
  RandomFormulaOptions opts_;
};

}  // namespace detail

// A random cut-free derivation built forward from initial sequents; every
// rule application stays within `depth` levels.
inline ProofPtr random_derivation(std::mt19937_64& rng, const Calculus& cal, int depth = 5) {
  return detail::ForwardDeriver(rng, cal).derive(depth);
}

}  // namespace substrukt
