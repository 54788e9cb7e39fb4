#pragma once

#include "substrukt/algebra.hpp"

namespace substrukt::fixtures {

// Two-element Boolean monoid: * = meet, 0 the bottom.
inline FiniteAlgebra two_chain() {
  return make_chain({"0", "1"}, {{0, 0}, {0, 1}}, 0, 1);
}

// 0 < a < 1 with a*a = 0.
inline FiniteAlgebra three_chain_nilpotent() {
  return make_chain({"0", "a", "1"}, {{0, 0, 0}, {0, 0, 1}, {0, 1, 2}}, 0, 2);
}

// The lattice 0 < a, b < 1 (a, b incomparable) with a monotone but
// non-distributive commutative fusion.
inline FiniteAlgebra diamond() {
  return make_algebra({"0", "a", "b", "1"},
                      {{0, 1, 2, 3}, {1, 1, 3, 3}, {2, 3, 2, 3}, {3, 3, 3, 3}},
                      {{0, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 0, 2}, {0, 1, 2, 3}}, 0, 3);
}

// Chain with * = meet and 0 the bottom, as a pointed lattice-ordered monoid.
inline FiniteAlgebra meet_chain(std::vector<std::string> names) {
  const int n = static_cast<int>(names.size());
  std::vector<std::vector<int>> f(n, std::vector<int>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) f[x][y] = std::min(x, y);
  return derive_meet(make_chain(std::move(names), f, 0, n - 1));
}

// 0 < a < b < 1, * = meet.
inline FiniteAlgebra four_chain() { return meet_chain({"0", "a", "b", "1"}); }

// 0 < a < b < c < 1, * = meet, -0 = 1 and -x = 0 otherwise (both negations).
inline FiniteAlgebra five_chain_pm() {
  FiniteAlgebra a = meet_chain({"0", "a", "b", "c", "1"});
  a.table(Conn::Rneg) = {4, 0, 0, 0, 0};
  a.table(Conn::Lneg) = {4, 0, 0, 0, 0};
  a.validate();
  return a;
}

}  // namespace substrukt::fixtures
