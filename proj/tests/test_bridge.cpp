#include <gtest/gtest.h>

#include <functional>

#include "substrukt.hpp"

using namespace substrukt;

namespace {

std::vector<std::vector<int>> all_partitions(std::size_t n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(n, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int top) {
    if (i == n) return out.push_back(cur);
    for (int l = 0; l <= top + 1; ++l) {
      cur[i] = l;
      rec(i + 1, std::max(top, l));
    }
  };
  rec(1, 0);
  return out;
}

bool compatible(const FiniteAlgebra& a, const std::vector<int>& p, const std::vector<Conn>& ops) {
  const std::size_t n = a.size();
  for (Conn c : ops)
    for (Elem x = 0; x < n; ++x)
      for (Elem x2 = 0; x2 < n; ++x2) {
        if (p[x] != p[x2]) continue;
        if (is_unary(c)) {
          if (p[a.op(c, x)] != p[a.op(c, x2)]) return false;
          continue;
        }
        for (Elem y = 0; y < n; ++y)
          for (Elem y2 = 0; y2 < n; ++y2)
            if (p[y] == p[y2] && p[a.op(c, x, y)] != p[a.op(c, x2, y2)]) return false;
      }
  return true;
}

bool refines(const std::vector<int>& p, const std::vector<int>& q) {
  for (std::size_t x = 0; x < p.size(); ++x)
    for (std::size_t y = 0; y < p.size(); ++y)
      if (p[x] == p[y] && q[x] != q[y]) return false;
  return true;
}

// Oracle: the largest congruence that does not split the filter, i.e. related
// elements occur in exactly the same filter pairs.
std::vector<int> largest_compatible(const FiniteAlgebra& a, const FilterSlices& f, const std::vector<Conn>& ops) {
  const std::size_t n = a.size();
  std::vector<std::vector<int>> good;
  for (const auto& p : all_partitions(n)) {
    if (!compatible(a, p, ops)) continue;
    bool ok = true;
    for (Elem x = 0; x < n && ok; ++x)
      for (Elem x2 = 0; x2 < n && ok; ++x2) {
        if (p[x] != p[x2]) continue;
        ok = f.empty_succ(x) == f.empty_succ(x2);
        for (Elem y = 0; y < n && ok; ++y)
          for (Elem y2 = 0; y2 < n && ok; ++y2)
            if (p[y] == p[y2]) ok = f.pair(x, y) == f.pair(x2, y2);
      }
    if (ok) good.push_back(p);
  }
  std::vector<int> best = good.front();
  for (const auto& p : good)
    if (refines(best, p)) best = p;
  for (const auto& p : good) EXPECT_TRUE(refines(p, best)) << "no largest compatible congruence";
  return best;
}

FiniteAlgebra fl(FiniteAlgebra a) { return expand_to(std::move(a), Family::FL); }

}  // namespace

TEST(Filters, CanonicalOfTwoChain) {
  FilterSlices f = canonical_filter(fixtures::two_chain());
  EXPECT_TRUE(f.pair(0, 0));
  EXPECT_TRUE(f.pair(0, 1));
  EXPECT_FALSE(f.pair(1, 0));
  EXPECT_TRUE(f.pair(1, 1));
  EXPECT_TRUE(f.empty_succ(0));
  EXPECT_FALSE(f.empty_succ(1));
}

TEST(Filters, EnumeratedAreClosed) {
  for (const char* s : {"", "e", "e,wl,wr,c"}) {
    Calculus cal{Sigma::parse(s)};
    for (std::size_t n = 1; n <= 3; ++n)
      for (const auto& a : enumerate_algebras(VarietyId{Family::FL, cal.sigma}, n)) {
        auto fs = enumerate_filters(a, cal);
        ASSERT_FALSE(fs.empty());
        EXPECT_TRUE(std::any_of(fs.begin(), fs.end(), [&](const FilterSlices& f) { return f == canonical_filter(a); }));
        for (const auto& f : fs) {
          auto v = verify_slice_closure(a, f, cal, 2);
          ASSERT_FALSE(v) << rule_name(v->rule) << " " << v->instance;
        }
      }
  }
}

TEST(Leibniz, MatchesLargestCompatibleCongruence) {
  for (const char* s : {"", "e", "e,wl", "e,wl,wr,c"}) {
    VarietyId v{Family::FL, Sigma::parse(s)};
    Calculus cal{v.sigma};
    for (std::size_t n = 1; n <= 3; ++n)
      for (const auto& a : enumerate_algebras(v, n))
        for (const auto& f : enumerate_filters(a, cal)) {
          Partition got = leibniz_congruence(a, f, family_ops(Family::FL));
          auto want = largest_compatible(a, f, family_ops(Family::FL));
          ASSERT_EQ(std::vector<int>(got.begin(), got.end()), want);
        }
  }
}

TEST(Leibniz, CanonicalFilterGivesIdentity) {
  FiniteAlgebra a = fl(fixtures::three_chain_nilpotent());
  EXPECT_EQ(leibniz_congruence(a, canonical_filter(a), family_ops(Family::FL)), (Partition{0, 1, 2}));
}

TEST(Correspondence, SmallCounts) {
  auto two = filter_congruence_correspondence(fl(fixtures::two_chain()), VarietyId{Family::FL, Sigma::parse("e,wl,wr,c")});
  EXPECT_EQ(two.filters, 2u);
  EXPECT_EQ(two.congruences, 2u);
  EXPECT_TRUE(two.ok()) << two.problem;
  auto one = filter_congruence_correspondence(fl(make_chain({"0"}, {{0}}, 0, 0)), VarietyId{Family::FL, {}});
  EXPECT_EQ(one.filters, 1u);
  EXPECT_EQ(one.congruences, 1u);
  EXPECT_TRUE(one.ok());
}

TEST(Correspondence, HoldsOnSmallAlgebras) {
  for (const char* s : {"", "e", "e,wl,c"}) {
    VarietyId v{Family::FL, Sigma::parse(s)};
    for (std::size_t n = 1; n <= 3; ++n)
      for (const auto& a : enumerate_algebras(v, n)) {
        auto r = filter_congruence_correspondence(a, v);
        ASSERT_TRUE(r.ok()) << s << " " << r.problem;
      }
  }
}

TEST(Countermodels, Examples) {
  VarietyId fl0{Family::FL, {}};
  auto cm = countermodel(parse_sequent("p => p * p"), fl0, 3);
  ASSERT_TRUE(cm);
  EXPECT_FALSE(satisfies(cm->algebra, cm->failed));
  EXPECT_NE(eval_term(cm->algebra, cm->failed.lhs, cm->assignment), eval_term(cm->algebra, cm->failed.rhs, cm->assignment));
  EXPECT_FALSE(countermodel(parse_sequent("p * q => q * p"), VarietyId{Family::FL, Sigma::parse("e")}, 3));
  EXPECT_FALSE(countermodel(parse_sequent("p => p * p"), VarietyId{Family::FL, Sigma::parse("c")}, 3));
  // every FL algebra with at most three elements is commutative
  EXPECT_FALSE(countermodel(parse_sequent("p * q => q * p"), fl0, 3));
  EXPECT_EQ(enumerate_algebras(fl0, 3).size(), enumerate_algebras(VarietyId{Family::FL, Sigma::parse("e")}, 3).size());
}

TEST(Countermodels, SemanticEntailment) {
  VarietyId v{Family::FL, {}};
  auto ok = entails_semantically({parse_sequent("p => q"), parse_sequent("q => r")}, parse_sequent("p => r"), v, 3);
  EXPECT_FALSE(ok.countermodel);
  auto no = entails_semantically({parse_sequent("=> p")}, parse_sequent("=> q"), v, 2);
  EXPECT_TRUE(no.countermodel);
}
