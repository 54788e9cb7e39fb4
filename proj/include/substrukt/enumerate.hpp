#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <tuple>
#include <vector>

#include "substrukt/algebra.hpp"

namespace substrukt {

namespace detail {

using Table = std::vector<Elem>;

// Join tables of all join-semilattices on n elements, one per isomorphism
// class, in canonical (lexicographically least) labelling.
inline const std::vector<Table>& semilattices(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, std::vector<Table>> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  std::vector<std::size_t> perm(n);
  std::set<Table> seen;
  // Every poset has a linear extension, so only relations with i < j between
  // distinct comparable elements need to be tried.
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
    std::vector<char> le(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) le[i * n + i] = 1;
    for (std::size_t k = 0; k < pairs.size(); ++k)
      if (mask >> k & 1) le[pairs[k].first * n + pairs[k].second] = 1;
    bool transitive = true;
    for (std::size_t i = 0; i < n && transitive; ++i)
      for (std::size_t j = 0; j < n && transitive; ++j)
        for (std::size_t k = 0; k < n && transitive; ++k)
          if (le[i * n + j] && le[j * n + k] && !le[i * n + k]) transitive = false;
    if (!transitive) continue;
    Table join(n * n);
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = 0; j < n && ok; ++j) {
        int best = -1;
        for (std::size_t k = 0; k < n; ++k) {
          if (!le[i * n + k] || !le[j * n + k]) continue;
          bool least = true;
          for (std::size_t m = 0; m < n; ++m)
            if (le[i * n + m] && le[j * n + m] && !le[k * n + m]) least = false;
          if (least) best = static_cast<int>(k);
        }
        if (best < 0) ok = false;
        else join[i * n + j] = static_cast<Elem>(best);
      }
    if (!ok) continue;
    std::iota(perm.begin(), perm.end(), 0);
    Table best;
    do {
      Table t(n * n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) t[perm[i] * n + perm[j]] = static_cast<Elem>(perm[join[i * n + j]]);
      if (best.empty() || t < best) best = t;
    } while (std::next_permutation(perm.begin(), perm.end()));
    seen.insert(best);
  }
  auto& out = cache[n];
  out.assign(seen.begin(), seen.end());
  return out;
}

inline std::vector<std::vector<Elem>> automorphisms(const Table& join, std::size_t n) {
  std::vector<std::vector<Elem>> out;
  std::vector<Elem> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = 0; j < n && ok; ++j)
        if (p[join[i * n + j]] != join[p[i] * n + p[j]]) ok = false;
    if (ok) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

struct MonoidSearch {
  std::size_t n;
  const Table& join;
  Elem unit;
  Sigma sigma;  // extra constraints: e, c; wl and wr are handled by the caller
  bool distributive = true;
  Table f;
  std::vector<char> set;
  std::vector<std::size_t> cells;

  MonoidSearch(std::size_t n_, const Table& j, Elem u, Sigma s, bool dist)
      : n(n_), join(j), unit(u), sigma(s), distributive(dist), f(n_ * n_, 0), set(n_ * n_, 0) {
    for (std::size_t x = 0; x < n; ++x) {
      f[unit * n + x] = f[x * n + unit] = static_cast<Elem>(x);
      set[unit * n + x] = set[x * n + unit] = 1;
    }
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (!set[x * n + y]) cells.push_back(x * n + y);
  }

  bool leq(Elem a, Elem b) const { return join[a * n + b] == b; }

  // Constraints touching cell (x, y), checked where every involved cell is set.
  bool consistent(std::size_t x, std::size_t y) const {
    auto F = [&](std::size_t a, std::size_t b) -> int { return set[a * n + b] ? f[a * n + b] : -1; };
    if (sigma.e()) {
      int u = F(y, x);
      if (u >= 0 && u != f[x * n + y]) return false;
    }
    if (sigma.c() && x == y && !leq(static_cast<Elem>(x), f[x * n + x])) return false;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        int ab = F(a, b);
        if (ab < 0) continue;
        for (std::size_t c = 0; c < n; ++c) {
          int bc = F(b, c), l = F(ab, c);
          if (bc >= 0 && l >= 0) {
            int r = F(a, bc);
            if (r >= 0 && r != l) return false;
          }
          if (distributive) {
            int ac = F(a, c);
            if (ac >= 0) {
              int j = F(a, join[b * n + c]);
              if (j >= 0 && j != join[ab * n + ac]) return false;
            }
            int ba = F(b, a), ca = F(c, a);
            if (ba >= 0 && ca >= 0) {
              int j = F(join[b * n + c], a);
              if (j >= 0 && j != join[ba * n + ca]) return false;
            }
          } else {
            // monotone: b <= c implies a*b <= a*c and b*a <= c*a
            if (leq(static_cast<Elem>(b), static_cast<Elem>(c))) {
              int ac = F(a, c);
              if (ac >= 0 && !leq(static_cast<Elem>(ab), static_cast<Elem>(ac))) return false;
              int ba = F(b, a), ca = F(c, a);
              if (ba >= 0 && ca >= 0 && !leq(static_cast<Elem>(ba), static_cast<Elem>(ca))) return false;
            }
          }
        }
      }
    return true;
  }

  // Visits every completion, trying values in ascending order or shuffled by rng.
  template <class Visit>
  bool run(std::size_t k, Visit& visit, std::mt19937_64* rng, std::size_t& budget) {
    if (budget == 0) return false;
    --budget;
    if (k == cells.size()) return visit(f);
    std::size_t cell = cells[k];
    std::vector<Elem> vals(n);
    std::iota(vals.begin(), vals.end(), 0);
    if (rng) std::shuffle(vals.begin(), vals.end(), *rng);
    for (Elem v : vals) {
      f[cell] = v;
      set[cell] = 1;
      if (consistent(cell / n, cell % n) && !run(k + 1, visit, rng, budget)) {
        set[cell] = 0;
        return false;
      }
      set[cell] = 0;
    }
    return true;
  }
};

inline bool is_bottom(const Table& join, std::size_t n, Elem b) {
  for (std::size_t x = 0; x < n; ++x)
    if (join[b * n + x] != x) return false;
  return true;
}
inline bool is_top(const Table& join, std::size_t n, Elem t) {
  for (std::size_t x = 0; x < n; ++x)
    if (join[t * n + x] != t) return false;
  return true;
}

// All join/fusion algebras (sl-monoids) of size n up to isomorphism; when
// with_zero is false the zero constant is ignored for isomorphism and set to one.
inline std::vector<FiniteAlgebra> sl_monoids(std::size_t n, bool with_zero, Sigma sigma) {
  std::vector<FiniteAlgebra> out;
  for (const Table& join : semilattices(n)) {
    auto auts = automorphisms(join, n);
    for (Elem u = 0; u < n; ++u) {
      if (sigma.wl() && !is_top(join, n, u)) continue;
      MonoidSearch ms(n, join, u, Sigma(sigma.bits() & (Sigma::E | Sigma::C)), true);
      std::vector<Table> fusions;
      auto visit = [&](const Table& f) {
        fusions.push_back(f);
        return true;
      };
      std::size_t budget = std::numeric_limits<std::size_t>::max();
      ms.run(0, visit, nullptr, budget);
      for (const Table& f : fusions) {
        for (Elem z = 0; z < n; ++z) {
          if (!with_zero && z != u) continue;
          if (sigma.wr() && !is_bottom(join, n, z)) continue;
          // keep only the least relabelling under automorphisms of the order
          bool canonical = true;
          for (const auto& p : auts) {
            auto key_self = std::make_tuple(u, with_zero ? z : Elem(0));
            auto key_img = std::make_tuple(p[u], with_zero ? p[z] : Elem(0));
            if (key_img > key_self) continue;
            Table g(n * n);
            for (std::size_t x = 0; x < n; ++x)
              for (std::size_t y = 0; y < n; ++y) g[p[x] * n + p[y]] = p[f[x * n + y]];
            if (key_img < key_self || g < f) {
              canonical = false;
              break;
            }
          }
          if (!canonical) continue;
          FiniteAlgebra a;
          a.names = default_names(n);
          a.table(Conn::Join) = join;
          a.table(Conn::Fus) = f;
          a.zero = z;
          a.one = u;
          out.push_back(std::move(a));
        }
      }
    }
  }
  return out;
}

}  // namespace detail

// All algebras of the variety on n elements, one per isomorphism class.
// Results are cached per (variety, n).
inline const std::vector<FiniteAlgebra>& enumerate_algebras(const VarietyId& v, std::size_t n) {
  if (n == 0 || n > 5) throw AlgebraError("enumeration supports sizes 1 to 5");
  static std::mutex mu;
  static std::map<std::tuple<int, unsigned, std::size_t>, std::vector<FiniteAlgebra>> cache;
  auto key = std::make_tuple(static_cast<int>(v.family), v.sigma.bits(), n);
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  std::vector<FiniteAlgebra> out;
  for (auto& base : detail::sl_monoids(n, family_has_zero(v.family), v.sigma)) {
    FiniteAlgebra a;
    try {
      a = expand_to(std::move(base), v.family);
    } catch (const AlgebraError&) {
      continue;
    }
    if (in_variety(a, v)) out.push_back(std::move(a));
  }
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, std::move(out)).first->second;
}

// A random join-semilattice on n elements as a join table.
inline std::vector<Elem> random_semilattice(std::size_t n, std::mt19937_64& rng, double density = 0.5) {
  std::bernoulli_distribution coin(density);
  while (true) {
    std::vector<char> le(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) le[i * n + i] = 1;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (coin(rng)) le[i * n + j] = 1;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (le[i * n + k] && le[k * n + j]) le[i * n + j] = 1;
    std::vector<Elem> join(n * n);
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = 0; j < n && ok; ++j) {
        int best = -1;
        for (std::size_t k = 0; k < n; ++k) {
          if (!le[i * n + k] || !le[j * n + k]) continue;
          bool least = true;
          for (std::size_t m = 0; m < n; ++m)
            if (le[i * n + m] && le[j * n + m] && !le[k * n + m]) least = false;
          if (least) best = static_cast<int>(k);
        }
        if (best < 0) ok = false;
        else join[i * n + j] = static_cast<Elem>(best);
      }
    if (!ok) continue;
    // random relabelling so that the natural order is not always the index order
    std::vector<Elem> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    std::vector<Elem> t(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) t[p[i] * n + p[j]] = p[join[i * n + j]];
    return t;
  }
}

struct RandomAlgebraOptions {
  Sigma sigma;
  bool distributive = true;  // false gives monotone (po-monoid) fusions
  std::size_t node_budget = 20000;
};

// A random join/fusion algebra with a random unit and zero, satisfying the
// equations of opt.sigma. Returns nullopt if the budget ran out repeatedly.
inline std::optional<FiniteAlgebra> random_sl_monoid(std::size_t n, std::mt19937_64& rng,
                                                     const RandomAlgebraOptions& opt = {}) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    auto join = random_semilattice(n, rng, std::uniform_real_distribution<double>(0.2, 0.8)(rng));
    std::vector<Elem> tops, bottoms;
    for (Elem x = 0; x < n; ++x) {
      if (detail::is_top(join, n, x)) tops.push_back(x);
      if (detail::is_bottom(join, n, x)) bottoms.push_back(x);
    }
    Elem u = opt.sigma.wl() ? tops.at(0) : static_cast<Elem>(rng() % n);
    if (opt.sigma.wr() && bottoms.empty()) continue;
    Elem z = opt.sigma.wr() ? bottoms[0] : static_cast<Elem>(rng() % n);
    detail::MonoidSearch ms(n, join, u, Sigma(opt.sigma.bits() & (Sigma::E | Sigma::C)), opt.distributive);
    std::optional<std::vector<Elem>> found;
    auto visit = [&](const std::vector<Elem>& f) {
      found = f;
      return false;
    };
    std::size_t budget = opt.node_budget;
    ms.run(0, visit, &rng, budget);
    if (!found) continue;
    FiniteAlgebra a;
    a.names = default_names(n);
    a.table(Conn::Join) = join;
    a.table(Conn::Fus) = *found;
    a.zero = z;
    a.one = u;
    return a;
  }
  return std::nullopt;
}

}  // namespace substrukt
