#include <gtest/gtest.h>

#include <set>

#include "substrukt.hpp"

using namespace substrukt;

namespace {

// Oracle: nonempty down-sets closed under binary joins, plus the empty set
// when the bottom does not absorb fusion.
std::set<Subset> oracle_ideals(const FiniteAlgebra& a) {
  const std::size_t n = a.size();
  std::set<Subset> out;
  for (Subset s = 1; s < (Subset{1} << n); ++s) {
    bool ok = true;
    for (Elem x = 0; x < n && ok; ++x) {
      if (!contains(s, x)) continue;
      for (Elem y = 0; y < n && ok; ++y) {
        if (a.leq(y, x)) ok = contains(s, y);
        if (ok && contains(s, y)) ok = contains(s, a.join(x, y));
      }
    }
    if (ok) out.insert(s);
  }
  bool absorbing = false;
  for (Elem b = 0; b < n; ++b) {
    bool bottom = true, absorbs = true;
    for (Elem x = 0; x < n; ++x) {
      bottom = bottom && a.leq(b, x);
      absorbs = absorbs && a.fus(b, x) == b && a.fus(x, b) == b;
    }
    if (bottom) absorbing = absorbs;
  }
  if (!absorbing) out.insert(0);
  return out;
}

Subset set_of(const FiniteAlgebra& a, std::initializer_list<const char*> names) {
  Subset s = 0;
  for (const char* x : names) s |= singleton(*a.index_of(x));
  return s;
}

}  // namespace

TEST(Ideals, Fixtures) {
  EXPECT_EQ(all_ideals(fixtures::four_chain()).size(), 4u);
  EXPECT_EQ(all_ideals(fixtures::diamond()).size(), 4u);
  for (const auto& a : {fixtures::two_chain(), fixtures::three_chain_nilpotent(), fixtures::diamond(), fixtures::four_chain()}) {
    auto got = all_ideals(a);
    EXPECT_EQ(std::set<Subset>(got.begin(), got.end()), oracle_ideals(a));
  }
}

TEST(Ideals, MatchOracleOnSmallAlgebras) {
  for (std::size_t n = 1; n <= 3; ++n)
    for (const auto& a : enumerate_algebras(VarietyId{Family::Msl, {}}, n)) {
      auto got = all_ideals(a);
      ASSERT_EQ(std::set<Subset>(got.begin(), got.end()), oracle_ideals(a));
    }
}

TEST(Ideals, Generated) {
  FiniteAlgebra d = fixtures::diamond();
  EXPECT_EQ(ideal_generated(d, set_of(d, {"a", "b"})), set_of(d, {"0", "a", "b", "1"}));
  EXPECT_EQ(ideal_generated(d, set_of(d, {"a"})), set_of(d, {"0", "a"}));
  EXPECT_EQ(ideal_generated(d, 0), set_of(d, {"0"}));
  // a, b below 1 with no bottom
  FiniteAlgebra v = make_algebra({"a", "b", "1"}, {{0, 2, 2}, {2, 1, 2}, {2, 2, 2}}, {{0, 2, 0}, {2, 1, 1}, {0, 1, 2}}, 2, 2);
  EXPECT_THROW(ideal_generated(v, 0), CompletionError);
  EXPECT_EQ(ideal_generated(v, set_of(v, {"b"})), set_of(v, {"b"}));
}

TEST(Closure, RejectsNonClosures) {
  EXPECT_THROW(ClosureOperator(1, {0, 0}), CompletionError);        // not extensive
  EXPECT_THROW(ClosureOperator(2, {0, 1, 2, 3, 0}), CompletionError);  // wrong size
  EXPECT_THROW(ClosureOperator(2, {1, 3, 2, 3}), CompletionError);  // not idempotent
}

TEST(Closure, RejectsNonNucleus) {
  Monoid m = monoid_reduct(fixtures::two_chain());
  // add the unit to every set; C(empty) C({0}) = {0,1} is not inside C(empty)
  auto c = ClosureOperator::from_function(2, [](Subset x) { return x | singleton(1); });
  ASSERT_TRUE(nucleus_violation(m, c));
  EXPECT_THROW(nucleus_completion(m, c, c(0)), CompletionError);
  auto id = ClosureOperator::from_function(2, [](Subset x) { return x; });
  EXPECT_FALSE(nucleus_violation(m, id));
}

TEST(Completion, EmbedsAndKeepsStructure) {
  for (const char* s : {"", "e", "e,wl", "e,wl,c", "e,wl,wr"}) {
    Sigma sg = Sigma::parse(s);
    for (std::size_t n = 1; n <= 3; ++n)
      for (const auto& a : enumerate_algebras(VarietyId{Family::Msl, sg}, n)) {
        auto ic = ideal_completion(a);
        const FiniteAlgebra& b = ic.completion.algebra;
        auto rep = verify_embedding(a, b, ic.embedding);
        ASSERT_TRUE(rep.ok()) << rep.failures.front();
        Sigma keep(sg.bits() & ~Sigma::WR);
        ASSERT_TRUE(check_variety(b, VarietyId{Family::FL, keep})) << check_variety(b, VarietyId{Family::FL, keep}).describe();
        if (sg.wr()) EXPECT_EQ(in_variety(b, VarietyId{Family::FL, sg}), absorbing_bottom(a)) << s;
      }
  }
}

TEST(Completion, NonAbsorbingBottomBreaksWr) {
  // 0 < 1 < t with unit 1 and t*t = t: 0 is the bottom but 0*t = t
  FiniteAlgebra a = make_chain({"0", "1", "t"}, {{0, 0, 2}, {0, 1, 2}, {2, 2, 2}}, 0, 1);
  ASSERT_TRUE(in_variety(a, VarietyId{Family::Msl, Sigma::parse("e,wr")}));
  ASSERT_FALSE(absorbing_bottom(a));
  auto ic = ideal_completion(a);
  EXPECT_TRUE(verify_embedding(a, ic.completion.algebra, ic.embedding).ok());
  auto r = check_variety(ic.completion.algebra, VarietyId{Family::FL, Sigma::parse("e,wr")});
  ASSERT_FALSE(r);
  EXPECT_EQ(r.failure->label, "wr");
  EXPECT_EQ(ic.completion.carrier.front(), Subset{0});
}

TEST(Completion, BadEmbeddingReported) {
  FiniteAlgebra a = fixtures::two_chain();
  auto ic = ideal_completion(a);
  std::vector<Elem> swapped{ic.embedding[1], ic.embedding[0]};
  EXPECT_FALSE(verify_embedding(a, ic.completion.algebra, swapped).ok());
  EXPECT_FALSE(verify_embedding(a, ic.completion.algebra, {ic.embedding[0]}).ok());
}
