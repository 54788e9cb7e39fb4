#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "substrukt/algebra.hpp"

namespace substrukt {

// Subsets of a carrier of at most 64 elements.
using Subset = std::uint64_t;

inline bool contains(Subset s, Elem x) { return s >> x & 1; }
inline Subset singleton(Elem x) { return Subset{1} << x; }
inline bool subset_of(Subset a, Subset b) { return (a & ~b) == 0; }

struct Monoid {
  std::vector<std::string> names;
  std::vector<Elem> fus;  // row-major
  Elem one = 0;
  std::size_t size() const { return names.size(); }
  Elem mul(Elem x, Elem y) const { return fus[x * size() + y]; }
};

inline Monoid monoid_reduct(const FiniteAlgebra& a) { return Monoid{a.names, a.table(Conn::Fus), a.one}; }

inline Subset complex_product(const Monoid& m, Subset x, Subset y) {
  Subset out = 0;
  for (Elem a = 0; a < m.size(); ++a)
    if (contains(x, a))
      for (Elem b = 0; b < m.size(); ++b)
        if (contains(y, b)) out |= singleton(m.mul(a, b));
  return out;
}

class CompletionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A closure operator on the powerset of an n-element set, stored as a full
// table. Construction checks extensivity, monotonicity and idempotence.
class ClosureOperator {
 public:
  ClosureOperator(std::size_t n, std::vector<Subset> table) : n_(n), t_(std::move(table)) {
    if (n > 12) throw CompletionError("closure operators are tabulated for at most 12 points");
    if (t_.size() != (std::size_t{1} << n)) throw CompletionError("closure table has wrong size");
    for (Subset x = 0; x < t_.size(); ++x) {
      if (!subset_of(x, t_[x])) throw CompletionError("closure is not extensive at " + std::to_string(x));
      if (t_[t_[x]] != t_[x]) throw CompletionError("closure is not idempotent at " + std::to_string(x));
    }
    for (Subset x = 0; x < t_.size(); ++x)
      for (std::size_t i = 0; i < n; ++i) {
        Subset y = x | singleton(static_cast<Elem>(i));
        if (!subset_of(t_[x], t_[y])) throw CompletionError("closure is not monotone at " + std::to_string(x));
      }
  }

  template <class F>
  static ClosureOperator from_function(std::size_t n, F&& f) {
    std::vector<Subset> t(std::size_t{1} << n);
    for (Subset x = 0; x < t.size(); ++x) t[x] = f(x);
    return ClosureOperator(n, std::move(t));
  }

  std::size_t points() const { return n_; }
  Subset operator()(Subset x) const { return t_[x]; }
  bool closed(Subset x) const { return t_[x] == x; }

  std::vector<Subset> closed_sets() const {
    std::vector<Subset> out;
    for (Subset x = 0; x < t_.size(); ++x)
      if (closed(x)) out.push_back(x);
    std::sort(out.begin(), out.end(), [](Subset a, Subset b) {
      int pa = std::popcount(a), pb = std::popcount(b);
      return pa != pb ? pa < pb : a < b;
    });
    return out;
  }

 private:
  std::size_t n_;
  std::vector<Subset> t_;
};

// First pair (X, Y) with C(X) C(Y) not inside C(XY), if any.
inline std::optional<std::pair<Subset, Subset>> nucleus_violation(const Monoid& m, const ClosureOperator& c) {
  const Subset lim = Subset{1} << m.size();
  for (Subset x = 0; x < lim; ++x)
    for (Subset y = 0; y < lim; ++y)
      if (!subset_of(complex_product(m, c(x), c(y)), c(complex_product(m, x, y)))) return std::make_pair(x, y);
  return std::nullopt;
}

inline std::string subset_name(Subset s, const std::vector<std::string>& names) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < names.size(); ++i)
    if (contains(s, static_cast<Elem>(i))) {
      if (!first) out += ",";
      out += names[i];
      first = false;
    }
  return out + "}";
}

struct NucleusCompletion {
  FiniteAlgebra algebra;
  std::vector<Subset> carrier;  // closed sets, in the order of algebra.names
  std::size_t index_of(Subset s) const {
    auto it = std::find(carrier.begin(), carrier.end(), s);
    if (it == carrier.end()) throw CompletionError("set is not closed");
    return static_cast<std::size_t>(it - carrier.begin());
  }
};

// The algebra of C-closed subsets of a monoid with the given zero set D:
// join C(X u Y), meet X n Y, fusion C(XY), X\Y = {z : Xz in Y},
// Y/X = {z : zX in Y}, negations X\D and D/X, constants D and C({1}).
inline NucleusCompletion nucleus_completion(const Monoid& m, const ClosureOperator& c, Subset d) {
  const std::size_t n = m.size();
  if (n > 8) throw CompletionError("nucleus completion supports monoids of at most 8 elements");
  if (c.points() != n) throw CompletionError("closure operator and monoid differ in size");
  if (!c.closed(d)) throw CompletionError("zero set is not closed");
  if (auto w = nucleus_violation(m, c))
    throw CompletionError("nucleus law fails for X=" + subset_name(w->first, m.names) +
                          " Y=" + subset_name(w->second, m.names));
  NucleusCompletion out;
  out.carrier = c.closed_sets();
  const std::size_t k = out.carrier.size();
  if (k > 64) throw CompletionError("too many closed sets");
  FiniteAlgebra& a = out.algebra;
  for (Subset s : out.carrier) a.names.push_back(subset_name(s, m.names));
  auto idx = [&](Subset s) { return static_cast<Elem>(out.index_of(s)); };
  auto rdiv = [&](Subset x, Subset y) {
    Subset z = 0;
    for (Elem e = 0; e < n; ++e)
      if (subset_of(complex_product(m, x, singleton(e)), y)) z |= singleton(e);
    return z;
  };
  auto ldiv = [&](Subset x, Subset y) {
    Subset z = 0;
    for (Elem e = 0; e < n; ++e)
      if (subset_of(complex_product(m, singleton(e), x), y)) z |= singleton(e);
    return z;
  };
  for (Conn op : {Conn::Join, Conn::Meet, Conn::Fus, Conn::Rimp, Conn::Limp}) a.table(op).resize(k * k);
  for (Conn op : {Conn::Rneg, Conn::Lneg}) a.table(op).resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    Subset x = out.carrier[i];
    a.table(Conn::Rneg)[i] = idx(rdiv(x, d));
    a.table(Conn::Lneg)[i] = idx(ldiv(x, d));
    for (std::size_t j = 0; j < k; ++j) {
      Subset y = out.carrier[j];
      a.table(Conn::Join)[i * k + j] = idx(c(x | y));
      a.table(Conn::Meet)[i * k + j] = idx(x & y);
      a.table(Conn::Fus)[i * k + j] = idx(c(complex_product(m, x, y)));
      a.table(Conn::Rimp)[i * k + j] = idx(rdiv(x, y));
      a.table(Conn::Limp)[i * k + j] = idx(ldiv(x, y));  // y / x
    }
  }
  a.zero = idx(d);
  a.one = idx(c(singleton(m.one)));
  a.validate();
  return out;
}

// ---------------------------------------------------------------- ideals

inline std::optional<Elem> bottom_of(const FiniteAlgebra& a);

// (X] = {c : c <= x1 v ... v xk for some nonempty finite subset of X}. The
// empty set generates the ideal of the minimum.
inline Subset ideal_generated(const FiniteAlgebra& a, Subset x) {
  if (x == 0) {
    auto b = bottom_of(a);
    if (!b) throw CompletionError("the empty set generates no ideal without a minimum");
    return singleton(*b);
  }
  // joins of nonempty subsets of X: close X under binary joins
  Subset joins = x;
  bool grew = true;
  while (grew) {
    grew = false;
    for (Elem p = 0; p < a.size(); ++p)
      if (contains(joins, p))
        for (Elem q = 0; q < a.size(); ++q)
          if (contains(joins, q) && !contains(joins, a.join(p, q))) joins |= singleton(a.join(p, q)), grew = true;
  }
  Subset out = 0;
  for (Elem c = 0; c < a.size(); ++c)
    for (Elem j = 0; j < a.size(); ++j)
      if (contains(joins, j) && a.leq(c, j)) {
        out |= singleton(c);
        break;
      }
  return out;
}

inline Subset principal_ideal(const FiniteAlgebra& a, Elem x) {
  Subset out = 0;
  for (Elem c = 0; c < a.size(); ++c)
    if (a.leq(c, x)) out |= singleton(c);
  return out;
}

inline std::optional<Elem> bottom_of(const FiniteAlgebra& a) {
  for (Elem b = 0; b < a.size(); ++b) {
    bool ok = true;
    for (Elem x = 0; x < a.size() && ok; ++x) ok = a.leq(b, x);
    if (ok) return b;
  }
  return std::nullopt;
}

// The empty set is a closed element of the completion unless the algebra has
// a bottom that absorbs fusion on both sides; then the bottom's ideal takes
// its place.
inline bool absorbing_bottom(const FiniteAlgebra& a) {
  auto b = bottom_of(a);
  if (!b) return false;
  for (Elem x = 0; x < a.size(); ++x)
    if (a.fus(*b, x) != *b || a.fus(x, *b) != *b) return false;
  return true;
}

inline ClosureOperator ideal_closure(const FiniteAlgebra& a) {
  const bool absorb = absorbing_bottom(a);
  const Subset bot = absorb ? singleton(*bottom_of(a)) : 0;
  return ClosureOperator::from_function(a.size(), [&](Subset x) { return x == 0 ? bot : ideal_generated(a, x); });
}

// Ideals that are elements of the completion, sorted by size then mask.
inline std::vector<Subset> all_ideals(const FiniteAlgebra& a) { return ideal_closure(a).closed_sets(); }

struct IdealCompletion {
  NucleusCompletion completion;
  std::vector<Elem> embedding;  // element of a -> element of the completion
};

inline IdealCompletion ideal_completion(const FiniteAlgebra& a) {
  if (a.size() > 8) throw CompletionError("ideal completion supports carriers of at most 8 elements");
  IdealCompletion out;
  ClosureOperator c = ideal_closure(a);
  out.completion = nucleus_completion(monoid_reduct(a), c, principal_ideal(a, a.zero));
  for (Elem x = 0; x < a.size(); ++x)
    out.embedding.push_back(static_cast<Elem>(out.completion.index_of(principal_ideal(a, x))));
  return out;
}

inline nlohmann::json embedding_json(const FiniteAlgebra& a, const IdealCompletion& ic) {
  nlohmann::json emb = nlohmann::json::object();
  for (Elem x = 0; x < a.size(); ++x) {
    nlohmann::json members = nlohmann::json::array();
    Subset s = ic.completion.carrier[ic.embedding[x]];
    for (Elem y = 0; y < a.size(); ++y)
      if (contains(s, y)) members.push_back(a.names[y]);
    emb[a.names[x]] = members;
  }
  return {{"embedding", emb}};
}

struct EmbeddingReport {
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

// Checks that i is an injective homomorphism for join, fusion and the
// constants, and preserves every residual, pseudocomplement and meet
// (binary and arbitrary) that exists in a.
inline EmbeddingReport verify_embedding(const FiniteAlgebra& a, const FiniteAlgebra& b, const std::vector<Elem>& i) {
  EmbeddingReport r;
  const std::size_t n = a.size();
  auto fail = [&](std::string s) {
    if (r.failures.size() < 20) r.failures.push_back(std::move(s));
  };
  if (i.size() != n) {
    fail("embedding has wrong length");
    return r;
  }
  for (Elem x = 0; x < n; ++x)
    for (Elem y = x + 1; y < n; ++y)
      if (i[x] == i[y]) fail("not injective at " + a.names[x] + ", " + a.names[y]);
  if (i[a.zero] != b.zero) fail("zero not preserved");
  if (i[a.one] != b.one) fail("one not preserved");
  for (Elem x = 0; x < n; ++x) {
    const std::string xn = a.names[x];
    if (b.has(Conn::Rneg))
      if (auto v = residual_right(a, x, a.zero); v && i[*v] != b.op(Conn::Rneg, i[x])) fail("rneg at " + xn);
    if (b.has(Conn::Lneg))
      if (auto v = residual_left(a, x, a.zero); v && i[*v] != b.op(Conn::Lneg, i[x])) fail("lneg at " + xn);
    for (Elem y = 0; y < n; ++y) {
      const std::string at = " at " + xn + ", " + a.names[y];
      if (i[a.join(x, y)] != b.join(i[x], i[y])) fail("join" + at);
      if (i[a.fus(x, y)] != b.fus(i[x], i[y])) fail("fusion" + at);
      if (b.has(Conn::Rimp))
        if (auto v = residual_right(a, x, y); v && i[*v] != b.op(Conn::Rimp, i[x], i[y])) fail("right residual" + at);
      if (b.has(Conn::Limp))
        if (auto v = residual_left(a, x, y); v && i[*v] != b.op(Conn::Limp, i[x], i[y])) fail("left residual" + at);
      if (b.has(Conn::Meet))
        if (auto v = meet_of(a, x, y); v && i[*v] != b.op(Conn::Meet, i[x], i[y])) fail("meet" + at);
    }
  }
  if (b.has(Conn::Meet) && n <= 12) {
    for (Subset s = 1; s < (Subset{1} << n); ++s) {
      auto inf = detail::greatest(a, [&](Elem z) {
        for (Elem x = 0; x < n; ++x)
          if (contains(s, x) && !a.leq(z, x)) return false;
        return true;
      });
      if (!inf) continue;
      std::optional<Elem> acc;
      for (Elem x = 0; x < n; ++x)
        if (contains(s, x)) acc = acc ? b.op(Conn::Meet, *acc, i[x]) : i[x];
      if (i[*inf] != *acc) fail("infimum of " + subset_name(s, a.names));
    }
  }
  return r;
}

}  // namespace substrukt
