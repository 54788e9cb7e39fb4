#pragma once

#include <functional>
#include <optional>
#include <stop_token>
#include <string>
#include <vector>

#include "substrukt/algebra.hpp"
#include "substrukt/calculus.hpp"
#include "substrukt/enumerate.hpp"

namespace substrukt {

// A Gentzen filter on an algebra, kept as two slices: pairs (x, y) standing
// for the sequent x => y, and elements x standing for x => (empty).
// A general tuple (x1..xm, d) belongs to the filter iff (x1*...*xm, d) does.
struct FilterSlices {
  std::size_t n = 0;
  std::vector<char> s1;  // n*n
  std::vector<char> s0;  // n

  explicit FilterSlices(std::size_t n_ = 0) : n(n_), s1(n_ * n_, 0), s0(n_, 0) {}

  bool pair(Elem x, Elem y) const { return s1[x * n + y]; }
  bool empty_succ(Elem x) const { return s0[x]; }
  std::size_t bits() const { return n * n + n; }
  bool bit(std::size_t i) const { return i < n * n ? s1[i] : s0[i - n * n]; }
  void set_bit(std::size_t i) { (i < n * n ? s1[i] : s0[i - n * n]) = 1; }
  bool subset_of(const FilterSlices& o) const {
    for (std::size_t i = 0; i < bits(); ++i)
      if (bit(i) && !o.bit(i)) return false;
    return true;
  }
  friend bool operator==(const FilterSlices& a, const FilterSlices& b) { return a.s1 == b.s1 && a.s0 == b.s0; }
};

// The filter of sequents valid in the algebra: x <= y, and x <= 0.
inline FilterSlices canonical_filter(const FiniteAlgebra& a) {
  FilterSlices f(a.size());
  for (Elem x = 0; x < a.size(); ++x) {
    for (Elem y = 0; y < a.size(); ++y) f.s1[x * a.size() + y] = a.leq(x, y);
    f.s0[x] = a.leq(x, a.zero);
  }
  return f;
}

inline void require_ops_for(const FiniteAlgebra& a, const Calculus& cal) {
  for (std::size_t k = 0; k < 7; ++k) {
    Conn c = static_cast<Conn>(k);
    if (cal.lang.has(c) && !a.has(c))
      throw AlgebraError("algebra lacks " + std::string(conn_name(c)) + " required by the language");
  }
}

namespace detail {

constexpr int kNone = -1;  // empty succedent

struct TupleRel {
  const FiniteAlgebra& a;
  const FilterSlices& f;
  Elem prod(const std::vector<Elem>& t) const {
    if (t.empty()) return a.one;
    Elem acc = t[0];
    for (std::size_t i = 1; i < t.size(); ++i) acc = a.fus(acc, t[i]);
    return acc;
  }
  bool in(const std::vector<Elem>& t, int d) const {
    Elem p = prod(t);
    return d == kNone ? f.empty_succ(p) : f.pair(p, static_cast<Elem>(d));
  }
};

inline std::vector<Elem> cat(std::initializer_list<std::vector<Elem>> parts) {
  std::vector<Elem> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

// Calls fn for every list of k tuples over n elements with total length <= max_len.
inline void for_contexts(std::size_t k, std::size_t n, std::size_t max_len,
                         const std::function<void(const std::vector<std::vector<Elem>>&)>& fn) {
  std::vector<std::vector<Elem>> ctx(k);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t left) {
    if (i == k) {
      fn(ctx);
      return;
    }
    for (std::size_t len = 0; len <= left; ++len) {
      ctx[i].assign(len, 0);
      while (true) {
        rec(i + 1, left - len);
        std::size_t j = 0;
        while (j < len && ++ctx[i][j] == n) ctx[i][j++] = 0;
        if (j == len) break;
      }
    }
  };
  rec(0, max_len);
}

}  // namespace detail

struct ClosureViolation {
  RuleId rule;
  std::string instance;
};

// Checks that the tuple relation generated by the slices contains the axioms
// and is closed under every rule of the calculus, over all instances whose
// sequents have antecedents of length at most max_len.
inline std::optional<ClosureViolation> verify_slice_closure(const FiniteAlgebra& a, const FilterSlices& f,
                                                            const Calculus& cal, std::size_t max_len = 3) {
  using detail::cat;
  using detail::kNone;
  using Tup = std::vector<Elem>;
  require_ops_for(a, cal);
  detail::TupleRel R{a, f};
  const std::size_t n = a.size();
  std::optional<ClosureViolation> bad;
  auto show = [&](const Tup& t, int d) {
    std::string s;
    for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + a.names[t[i]];
    return s + " => " + (d == kNone ? std::string() : a.names[static_cast<Elem>(d)]);
  };
  // premises as (tuple, succedent) pairs
  auto check = [&](RuleId r, std::initializer_list<std::pair<Tup, int>> prem, const Tup& ct, int cd) {
    if (bad) return;
    for (const auto& [t, d] : prem)
      if (t.size() > max_len || !R.in(t, d)) return;
    if (ct.size() > max_len) return;
    if (!R.in(ct, cd)) bad = ClosureViolation{r, show(ct, cd)};
  };
  auto has = [&](RuleId r) { return rule_in_calculus(r, cal); };
  std::vector<int> succs;
  for (Elem d = 0; d < n; ++d) succs.push_back(d);
  succs.push_back(kNone);
  auto J = [&](Elem x, Elem y) { return a.join(x, y); };

  for (Elem x = 0; x < n; ++x) check(RuleId::Axiom, {}, {x}, x);
  check(RuleId::OneR, {}, {}, a.one);
  check(RuleId::ZeroL, {}, {a.zero}, kNone);

  detail::for_contexts(3, n, max_len, [&](const std::vector<Tup>& c) {
    const Tup &S = c[0], &G = c[1], &P = c[2];
    for (Elem x = 0; x < n; ++x)
      for (int d : succs) {
        if (has(RuleId::Cut)) check(RuleId::Cut, {{G, x}, {cat({S, {x}, P}), d}}, cat({S, G, P}), d);
        for (Elem y = 0; y < n; ++y) {
          if (has(RuleId::RimpL))
            check(RuleId::RimpL, {{G, x}, {cat({S, {y}, P}), d}}, cat({S, G, {a.op(Conn::Rimp, x, y)}, P}), d);
          if (has(RuleId::LimpL))
            check(RuleId::LimpL, {{G, x}, {cat({S, {y}, P}), d}}, cat({S, {a.op(Conn::Limp, x, y)}, G, P}), d);
        }
      }
  });
  detail::for_contexts(2, n, max_len, [&](const std::vector<Tup>& c) {
    const Tup &S = c[0], &G = c[1];
    for (int d : succs) {
      if (has(RuleId::OneL)) check(RuleId::OneL, {{cat({S, G}), d}}, cat({S, {a.one}, G}), d);
      for (Elem x = 0; x < n; ++x) {
        if (has(RuleId::WeakL)) check(RuleId::WeakL, {{cat({S, G}), d}}, cat({S, {x}, G}), d);
        if (has(RuleId::ContrL)) check(RuleId::ContrL, {{cat({S, {x, x}, G}), d}}, cat({S, {x}, G}), d);
        for (Elem y = 0; y < n; ++y) {
          if (has(RuleId::OrL))
            check(RuleId::OrL, {{cat({S, {x}, G}), d}, {cat({S, {y}, G}), d}}, cat({S, {J(x, y)}, G}), d);
          if (has(RuleId::AndL1))
            check(RuleId::AndL1, {{cat({S, {x}, G}), d}}, cat({S, {a.op(Conn::Meet, x, y)}, G}), d);
          if (has(RuleId::AndL2))
            check(RuleId::AndL2, {{cat({S, {y}, G}), d}}, cat({S, {a.op(Conn::Meet, x, y)}, G}), d);
          if (has(RuleId::FusL)) check(RuleId::FusL, {{cat({S, {x, y}, G}), d}}, cat({S, {a.fus(x, y)}, G}), d);
          if (has(RuleId::ExchL)) check(RuleId::ExchL, {{cat({S, {x, y}, G}), d}}, cat({S, {y, x}, G}), d);
        }
      }
    }
    // two-context right rules: FusR with Gamma = S, Pi = G
    if (has(RuleId::FusR))
      for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y) check(RuleId::FusR, {{S, x}, {G, y}}, cat({S, G}), a.fus(x, y));
  });
  detail::for_contexts(1, n, max_len, [&](const std::vector<Tup>& c) {
    const Tup& G = c[0];
    if (has(RuleId::ZeroR)) check(RuleId::ZeroR, {{G, kNone}}, G, a.zero);
    for (Elem x = 0; x < n; ++x) {
      if (has(RuleId::WeakR)) check(RuleId::WeakR, {{G, kNone}}, G, x);
      if (has(RuleId::RnegL)) check(RuleId::RnegL, {{G, x}}, cat({G, {a.op(Conn::Rneg, x)}}), kNone);
      if (has(RuleId::RnegR)) check(RuleId::RnegR, {{cat({{x}, G}), kNone}}, G, a.op(Conn::Rneg, x));
      if (has(RuleId::LnegL)) check(RuleId::LnegL, {{G, x}}, cat({{a.op(Conn::Lneg, x)}, G}), kNone);
      if (has(RuleId::LnegR)) check(RuleId::LnegR, {{cat({G, {x}}), kNone}}, G, a.op(Conn::Lneg, x));
      for (Elem y = 0; y < n; ++y) {
        if (has(RuleId::OrR1)) check(RuleId::OrR1, {{G, x}}, G, J(x, y));
        if (has(RuleId::OrR2)) check(RuleId::OrR2, {{G, y}}, G, J(x, y));
        if (has(RuleId::AndR)) check(RuleId::AndR, {{G, x}, {G, y}}, G, a.op(Conn::Meet, x, y));
        if (has(RuleId::RimpR)) check(RuleId::RimpR, {{cat({{x}, G}), y}}, G, a.op(Conn::Rimp, x, y));
        if (has(RuleId::LimpR)) check(RuleId::LimpR, {{cat({G, {x}}), y}}, G, a.op(Conn::Limp, x, y));
      }
    }
  });
  return bad;
}

// Least filter containing the given slices, computed with single-element
// contexts (a context stands for its product; the empty one for 1).
inline FilterSlices close_slices(const FiniteAlgebra& a, const Calculus& cal, FilterSlices f) {
  require_ops_for(a, cal);
  const std::size_t n = a.size();
  auto has = [&](RuleId r) { return rule_in_calculus(r, cal); };
  auto F = [&](Elem x, Elem y) { return a.fus(x, y); };
  auto M = [&](Elem x, int d) { return d < 0 ? f.empty_succ(x) : f.pair(x, static_cast<Elem>(d)); };
  bool changed = true;
  auto add = [&](Elem x, int d) {
    char& slot = d < 0 ? f.s0[x] : f.s1[x * n + static_cast<Elem>(d)];
    if (!slot) slot = 1, changed = true;
  };
  std::vector<int> succs;
  for (Elem d = 0; d < n; ++d) succs.push_back(d);
  succs.push_back(-1);
  for (Elem x = 0; x < n; ++x) add(x, x);
  add(a.one, a.one);
  add(a.zero, -1);
  while (changed) {
    changed = false;
    for (Elem u = 0; u < n; ++u)
      for (Elem v = 0; v < n; ++v)
        for (int d : succs) {
          if (has(RuleId::WeakL) && M(F(u, v), d))
            for (Elem x = 0; x < n; ++x) add(F(F(u, x), v), d);
          for (Elem x = 0; x < n; ++x) {
            if (has(RuleId::ContrL) && M(F(F(u, F(x, x)), v), d)) add(F(F(u, x), v), d);
            for (Elem y = 0; y < n; ++y) {
              Elem uxv = F(F(u, x), v), uyv = F(F(u, y), v);
              if (has(RuleId::OrL) && M(uxv, d) && M(uyv, d)) add(F(F(u, a.join(x, y)), v), d);
              if (has(RuleId::AndL1) && M(uxv, d)) add(F(F(u, a.op(Conn::Meet, x, y)), v), d);
              if (has(RuleId::AndL2) && M(uyv, d)) add(F(F(u, a.op(Conn::Meet, x, y)), v), d);
              if (has(RuleId::ExchL) && M(F(F(u, F(x, y)), v), d)) add(F(F(u, F(y, x)), v), d);
            }
            // x here plays the role of the cut formula or the antecedent product g
            for (Elem g = 0; g < n; ++g) {
              if (!f.pair(g, x)) continue;
              if (has(RuleId::Cut) && M(F(F(u, x), v), d)) add(F(F(u, g), v), d);
              for (Elem y = 0; y < n; ++y) {
                if (!M(F(F(u, y), v), d)) continue;
                if (has(RuleId::RimpL)) add(F(F(F(u, g), a.op(Conn::Rimp, x, y)), v), d);
                if (has(RuleId::LimpL)) add(F(F(F(u, a.op(Conn::Limp, x, y)), g), v), d);
              }
            }
          }
        }
    for (Elem g = 0; g < n; ++g) {
      if (has(RuleId::ZeroR) && f.empty_succ(g)) add(g, a.zero);
      for (Elem x = 0; x < n; ++x) {
        if (has(RuleId::WeakR) && f.empty_succ(g)) add(g, x);
        if (f.pair(g, x)) {
          if (has(RuleId::RnegL)) add(F(g, a.op(Conn::Rneg, x)), -1);
          if (has(RuleId::LnegL)) add(F(a.op(Conn::Lneg, x), g), -1);
        }
        if (has(RuleId::RnegR) && f.empty_succ(F(x, g))) add(g, a.op(Conn::Rneg, x));
        if (has(RuleId::LnegR) && f.empty_succ(F(g, x))) add(g, a.op(Conn::Lneg, x));
        for (Elem y = 0; y < n; ++y) {
          if (f.pair(g, x)) {
            if (has(RuleId::OrR1)) add(g, a.join(x, y));
            if (has(RuleId::OrR2)) add(g, a.join(y, x));
            if (has(RuleId::AndR) && f.pair(g, y)) add(g, a.op(Conn::Meet, x, y));
            if (has(RuleId::FusR))
              for (Elem h = 0; h < n; ++h)
                if (f.pair(h, y)) add(F(g, h), F(x, y));
          }
          if (has(RuleId::RimpR) && f.pair(F(x, g), y)) add(g, a.op(Conn::Rimp, x, y));
          if (has(RuleId::LimpR) && f.pair(F(g, x), y)) add(g, a.op(Conn::Limp, x, y));
        }
      }
    }
  }
  return f;
}

// All filters of the algebra for the calculus, in NextClosure order.
inline std::vector<FilterSlices> enumerate_filters(const FiniteAlgebra& a, const Calculus& cal) {
  const std::size_t n = a.size();
  const std::size_t m = n * n + n;
  if (m > 62) throw AlgebraError("carrier too large for filter enumeration");
  auto to_mask = [&](const FilterSlices& f) {
    std::uint64_t b = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (f.bit(i)) b |= std::uint64_t{1} << i;
    return b;
  };
  auto close = [&](std::uint64_t b) {
    FilterSlices f(n);
    for (std::size_t i = 0; i < m; ++i)
      if (b >> i & 1) f.set_bit(i);
    return close_slices(a, cal, f);
  };
  std::vector<FilterSlices> out;
  FilterSlices cur = close(0);
  std::uint64_t A = to_mask(cur);
  const std::uint64_t full = (m == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << m) - 1);
  out.push_back(cur);
  while (A != full) {
    bool advanced = false;
    for (std::size_t i = m; i-- > 0;) {
      std::uint64_t bit = std::uint64_t{1} << i;
      if (A & bit) continue;
      std::uint64_t low = bit - 1;
      FilterSlices f = close((A & low) | bit);
      std::uint64_t B = to_mask(f);
      if ((B & low) == (A & low)) {
        A = B;
        out.push_back(f);
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
  }
  return out;
}

// ---------------------------------------------------------------- congruences

// Block label per element, labels in first-occurrence order.
using Partition = std::vector<Elem>;

inline bool partition_leq(const Partition& p, const Partition& q) {
  for (std::size_t x = 0; x < p.size(); ++x)
    for (std::size_t y = 0; y < p.size(); ++y)
      if (p[x] == p[y] && q[x] != q[y]) return false;
  return true;
}

inline Partition normalize_partition(const std::vector<int>& labels) {
  std::map<int, Elem> ren;
  Partition out;
  for (int l : labels) out.push_back(ren.emplace(l, static_cast<Elem>(ren.size())).first->second);
  return out;
}

struct CompatibilityWitness {
  Conn op;
  Elem x1, y1, x2, y2;  // x1 ~ x2, y1 ~ y2 but op(x1,y1) !~ op(x2,y2)
};

inline std::optional<CompatibilityWitness> first_incompatibility(const FiniteAlgebra& a, const Partition& p,
                                                                 const std::vector<Conn>& ops) {
  const std::size_t n = a.size();
  for (Conn c : ops) {
    if (!a.has(c)) continue;
    for (Elem x1 = 0; x1 < n; ++x1)
      for (Elem x2 = 0; x2 < n; ++x2) {
        if (p[x1] != p[x2]) continue;
        if (is_unary(c)) {
          if (p[a.op(c, x1)] != p[a.op(c, x2)]) return CompatibilityWitness{c, x1, x1, x2, x2};
          continue;
        }
        for (Elem y1 = 0; y1 < n; ++y1)
          for (Elem y2 = 0; y2 < n; ++y2)
            if (p[y1] == p[y2] && p[a.op(c, x1, y1)] != p[a.op(c, x2, y2)]) return CompatibilityWitness{c, x1, y1, x2, y2};
      }
  }
  return std::nullopt;
}

inline FiniteAlgebra quotient(const FiniteAlgebra& a, const Partition& p) {
  std::size_t k = *std::max_element(p.begin(), p.end()) + 1u;
  std::vector<Elem> rep(k);
  for (std::size_t x = a.size(); x-- > 0;) rep[p[x]] = static_cast<Elem>(x);
  FiniteAlgebra q;
  for (std::size_t b = 0; b < k; ++b) {
    std::string nm = "[";
    for (std::size_t x = 0; x < a.size(); ++x)
      if (p[x] == b) nm += (nm.size() > 1 ? "," : "") + a.names[x];
    q.names.push_back(nm + "]");
  }
  q.zero = p[a.zero];
  q.one = p[a.one];
  for (std::size_t c = 0; c < 7; ++c) {
    if (a.tables[c].empty()) continue;
    Conn cc = static_cast<Conn>(c);
    auto& t = q.tables[c];
    if (is_binary(cc)) {
      for (std::size_t x = 0; x < k; ++x)
        for (std::size_t y = 0; y < k; ++y) t.push_back(p[a.op(cc, rep[x], rep[y])]);
    } else {
      for (std::size_t x = 0; x < k; ++x) t.push_back(p[a.op(cc, rep[x])]);
    }
  }
  return q;
}

// All congruences of the algebra (for the operations of the family) whose
// quotient lies in the variety.
inline std::vector<Partition> variety_congruences(const FiniteAlgebra& a, const VarietyId& v) {
  const std::size_t n = a.size();
  auto ops = family_ops(v.family);
  std::vector<Partition> out;
  std::vector<int> rgs(n, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int maxl) {
    if (i == n) {
      Partition p(rgs.begin(), rgs.end());
      if (!first_incompatibility(a, p, ops) && in_variety(quotient(a, p), v)) out.push_back(p);
      return;
    }
    for (int l = 0; l <= maxl + 1; ++l) {
      rgs[i] = l;
      rec(i + 1, std::max(maxl, l));
    }
  };
  if (n > 0) rec(1, 0);
  return out;
}

class NotACongruence : public std::runtime_error {
 public:
  NotACongruence(const std::string& m, CompatibilityWitness w) : std::runtime_error(m), witness(w) {}
  CompatibilityWitness witness;
};

// The relation x ~ y iff both x => y and y => x lie in the filter; throws
// NotACongruence when it is not compatible with the operations.
inline Partition leibniz_congruence(const FiniteAlgebra& a, const FilterSlices& f, const std::vector<Conn>& ops) {
  const std::size_t n = a.size();
  std::vector<int> lab(n, -1);
  int next = 0;
  for (Elem x = 0; x < n; ++x) {
    if (lab[x] >= 0) continue;
    lab[x] = next;
    for (Elem y = x + 1; y < n; ++y)
      if (f.pair(x, y) && f.pair(y, x)) lab[y] = next;
    ++next;
  }
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      if ((lab[x] == lab[y]) != (f.pair(x, y) && f.pair(y, x)))
        throw NotACongruence("mutual derivability is not transitive", CompatibilityWitness{Conn::Join, x, y, x, y});
  Partition p = normalize_partition(lab);
  if (auto w = first_incompatibility(a, p, ops))
    throw NotACongruence("not compatible with " + std::string(conn_name(w->op)), *w);
  return p;
}

struct CorrespondenceReport {
  std::size_t filters = 0;
  std::size_t congruences = 0;
  bool bijective = false;
  bool order_isomorphic = false;
  std::string problem;
  bool ok() const { return bijective && order_isomorphic && problem.empty(); }
};

// Filters of the calculus on a and congruences relative to the variety,
// matched through the Leibniz map.
inline CorrespondenceReport filter_congruence_correspondence(const FiniteAlgebra& a, const VarietyId& v) {
  Calculus cal{v.sigma, family_language(v.family)};
  CorrespondenceReport r;
  auto filters = enumerate_filters(a, cal);
  auto congs = variety_congruences(a, v);
  r.filters = filters.size();
  r.congruences = congs.size();
  std::vector<Partition> images;
  for (const auto& f : filters) {
    try {
      images.push_back(leibniz_congruence(a, f, family_ops(v.family)));
    } catch (const NotACongruence& e) {
      r.problem = e.what();
      return r;
    }
  }
  std::set<Partition> img(images.begin(), images.end()), all(congs.begin(), congs.end());
  r.bijective = img.size() == images.size() && img == all;
  r.order_isomorphic = true;
  for (std::size_t i = 0; i < filters.size(); ++i)
    for (std::size_t j = 0; j < filters.size(); ++j)
      if (filters[i].subset_of(filters[j]) != partition_leq(images[i], images[j])) r.order_isomorphic = false;
  return r;
}

// ---------------------------------------------------------------- countermodels

struct Countermodel {
  FiniteAlgebra algebra;
  Assignment assignment;
  Equation failed;
};

inline nlohmann::json to_json(const Countermodel& c) {
  return {{"algebra", to_json(c.algebra)},
          {"assignment", to_json(c.assignment, c.algebra)},
          {"failed", to_string(c.failed)}};
}

struct SemanticResult {
  std::optional<Countermodel> countermodel;
  std::size_t max_size = 0;
  bool finite_model_property = false;  // sizes searched suffice in principle
  bool cancelled = false;
};

// Searches algebras of the variety up to max_n elements for a model of every
// hypothesis translation in which the goal translation fails.
inline SemanticResult entails_semantically(const std::vector<Sequent>& hyps, const Sequent& goal, const VarietyId& v,
                                           std::size_t max_n = 3, std::stop_token stop = {}) {
  SemanticResult res;
  res.max_size = max_n;
  res.finite_model_property = v.sigma.wl();
  std::vector<Equation> prem;
  for (const auto& h : hyps) prem.push_back(tau(h));
  Equation concl = tau(goal);
  std::vector<Equation> all = prem;
  all.push_back(concl);
  auto vars = equation_vars(all);
  std::vector<std::pair<CompiledTerm, CompiledTerm>> ps;
  for (const auto& e : prem) ps.emplace_back(CompiledTerm(e.lhs, vars), CompiledTerm(e.rhs, vars));
  CompiledTerm cl(concl.lhs, vars), cr(concl.rhs, vars);
  for (std::size_t k = 1; k <= max_n; ++k) {
    for (const auto& a : enumerate_algebras(v, k)) {
      if (stop.stop_requested()) {
        res.cancelled = true;
        return res;
      }
      if (!cl.fits(a) || !cr.fits(a)) throw AlgebraError("sequent uses an operation outside the variety signature");
      for_each_assignment(vars.size(), a.size(), [&](const std::vector<Elem>& val) {
        for (const auto& [l, r] : ps)
          if (l.eval(a, val.data()) != r.eval(a, val.data())) return true;
        if (cl.eval(a, val.data()) == cr.eval(a, val.data())) return true;
        Assignment w;
        for (std::size_t i = 0; i < vars.size(); ++i) w[vars[i]] = val[i];
        res.countermodel = Countermodel{a, w, concl};
        return false;
      });
      if (res.countermodel) return res;
    }
  }
  return res;
}

inline std::optional<Countermodel> countermodel(const Sequent& s, const VarietyId& v, std::size_t max_n = 3,
                                                std::stop_token stop = {}) {
  return entails_semantically({}, s, v, max_n, stop).countermodel;
}

}  // namespace substrukt
