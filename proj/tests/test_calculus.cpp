#include <gtest/gtest.h>

#include <random>

#include "substrukt.hpp"

using namespace substrukt;

namespace {

Sequent S(const char* s) { return parse_sequent(s); }
Formula F(const char* s) { return parse_formula(s); }
ProofPtr ax(const Formula& f) { return make_node(Sequent({f}, f), RuleId::Axiom); }

const std::vector<const char*> kSigmas{"", "e", "wl", "wr", "c", "e,wl", "wl,wr", "e,wl,wr,c", "wl,c", "e,c"};

void collect_nodes(const ProofPtr& t, std::vector<ProofPtr>& out) {
  out.push_back(t);
  for (const auto& p : t->premises) collect_nodes(p, out);
}

}  // namespace

TEST(Check, Examples) {
  Calculus fl;
  EXPECT_TRUE(check_proof(*ax(var("p")), fl));
  ProofPtr or1 = make_node(S("=> 1 \\/ p"), RuleId::OrR1, {make_node(S("=> 1"), RuleId::OneR)});
  EXPECT_TRUE(check_proof(*or1, fl));

  ProofPtr fr = make_node(S("p, p => p * p"), RuleId::FusR, {ax(var("p")), ax(var("p"))}, 1);
  ProofPtr contr = make_node(S("p => p * p"), RuleId::ContrL, {fr}, 0);
  auto r = check_proof(*contr, fl);
  EXPECT_FALSE(r);
  EXPECT_EQ(r.error, CheckError::RuleNotInCalculus);
  EXPECT_TRUE(check_proof(*contr, Calculus{Sigma::parse("c")}));
}

TEST(Check, Errors) {
  Calculus fl;
  ProofPtr arity = make_node(S("p => p \\/ q"), RuleId::OrR1, {});
  EXPECT_EQ(check_proof(*arity, fl).error, CheckError::ArityMismatch);

  ProofPtr wrong = make_node(S("p => q \\/ p"), RuleId::OrR1, {ax(var("p"))});
  EXPECT_EQ(check_proof(*wrong, fl).error, CheckError::InstanceMismatch);

  ProofPtr hyp = make_node(S("p => q"), RuleId::Hyp);
  EXPECT_EQ(check_proof(*hyp, fl).error, CheckError::UndeclaredHypothesis);
  EXPECT_TRUE(check_proof(*hyp, fl, {S("p => q")}));

  ProofPtr foreign = ax(F("p /\\ q"));
  EXPECT_EQ(check_proof(*foreign, Calculus{Sigma{}, Language::core()}).error, CheckError::FormulaNotInLanguage);

  // the offending node is reported by its path from the root
  ProofPtr deep = make_node(S("p => (q \\/ p) \\/ r"), RuleId::OrR1, {wrong});
  auto res = check_proof(*deep, fl);
  EXPECT_FALSE(res);
  EXPECT_EQ(res.path, std::vector<std::size_t>{0});
}

TEST(Check, CutNeedsMatchingFormula) {
  Calculus fl;
  ProofPtr left = make_node(S("p => p \\/ q"), RuleId::OrR1, {ax(var("p"))});
  ProofPtr right = make_node(S("p \\/ q => q \\/ p"), RuleId::OrL,
                             {make_node(S("p => q \\/ p"), RuleId::OrR2, {ax(var("p"))}),
                              make_node(S("q => q \\/ p"), RuleId::OrR1, {ax(var("q"))})},
                             0);
  ProofPtr cut = make_node(S("p => q \\/ p"), RuleId::Cut, {left, right}, 0, 1);
  EXPECT_TRUE(check_proof(*cut, fl));
  ProofPtr bad = make_node(S("p, p => q \\/ p"), RuleId::Cut, {left, right}, 0, 1);
  EXPECT_FALSE(check_proof(*bad, fl));
}

TEST(Backward, Examples) {
  Calculus fl;
  auto has = [](const std::vector<BackwardStep>& v, RuleId r, const std::vector<Sequent>& ps) {
    return std::any_of(v.begin(), v.end(), [&](const BackwardStep& b) { return b.rule == r && b.premises == ps; });
  };
  EXPECT_TRUE(has(rule_instances_backward(S("p, q => p * q"), fl), RuleId::FusR, {S("p => p"), S("q => q")}));
  EXPECT_TRUE(has(rule_instances_backward(S("=> 1"), fl), RuleId::OneR, {}));
  EXPECT_TRUE(has(rule_instances_backward(S("0 =>"), fl), RuleId::ZeroL, {}));
  for (const auto& b : rule_instances_backward(S("p, q => p * q"), fl)) EXPECT_NE(b.rule, RuleId::Cut);
}

// Every node of a random derivation is found again by backward enumeration,
// and every backward step checks once its premises are taken as hypotheses.
TEST(Backward, SoundAndComplete) {
  std::mt19937_64 rng(seed_from_env() + 10);
  for (const char* sg : kSigmas) {
    Calculus cal{Sigma::parse(sg)};
    for (int i = 0; i < 40; ++i) {
      std::vector<ProofPtr> nodes;
      collect_nodes(random_derivation(rng, cal, 4), nodes);
      for (const auto& t : nodes) {
        auto steps = rule_instances_backward(t->conclusion, cal);
        std::vector<Sequent> prem;
        for (const auto& p : t->premises) prem.push_back(p->conclusion);
        bool found = std::any_of(steps.begin(), steps.end(), [&](const BackwardStep& b) {
          return b.rule == t->rule && b.a == t->a && b.b == t->b && b.premises == prem;
        });
        ASSERT_TRUE(found) << rule_name(t->rule) << " " << to_string(t->conclusion) << " sigma=" << sg;
        for (const auto& b : steps) {
          std::vector<ProofPtr> leaves;
          for (const auto& p : b.premises) leaves.push_back(make_node(p, RuleId::Hyp));
          ProofPtr node = make_node(t->conclusion, b.rule, leaves, b.a, b.b);
          ASSERT_TRUE(check_proof(*node, cal, b.premises)) << rule_name(b.rule) << " " << to_string(t->conclusion);
        }
      }
    }
  }
}

TEST(Mirror, ProofsMirrorNodeByNode) {
  std::mt19937_64 rng(seed_from_env() + 11);
  for (const char* sg : kSigmas) {
    Calculus cal{Sigma::parse(sg)};
    for (int i = 0; i < 50; ++i) {
      ProofPtr t = random_derivation(rng, cal, 5);
      ASSERT_TRUE(check_proof(*t, cal));
      ProofPtr m = mirror_proof(*t);
      ASSERT_EQ(m->conclusion, mirror(t->conclusion));
      auto r = check_proof(*m, cal);
      ASSERT_TRUE(r) << r.message << " sigma=" << sg << "\n" << to_text(*t);
      ASSERT_EQ(to_sexp(*mirror_proof(*m)), to_sexp(*t));
    }
  }
}

TEST(Sexp, RoundTrip) {
  std::mt19937_64 rng(seed_from_env() + 12);
  Calculus cal{Sigma::parse("e,wl,wr,c")};
  for (int i = 0; i < 100; ++i) {
    ProofPtr t = random_derivation(rng, cal, 5);
    std::string s = to_sexp(*t);
    ASSERT_EQ(to_sexp(*parse_sexp(s)), s);
  }
  EXPECT_EQ(to_sexp(*ax(var("p"))), "(axiom \"p => p\")");
  EXPECT_THROW(parse_sexp("(axiom \"p => p\""), SyntaxError);
  EXPECT_THROW(parse_sexp("(frobnicate \"p => p\")"), SyntaxError);
}

TEST(Lemmas, Examples) {
  Calculus fl;
  ProofPtr prod = build_lemma_proof(LemmaKind::Product, S("p, q => p * q"));
  EXPECT_EQ(prod->conclusion, S("p, q => p * q"));
  EXPECT_EQ(prod->rule, RuleId::FusR);
  EXPECT_TRUE(check_proof(*prod, fl));

  ProofPtr join = build_lemma_proof(LemmaKind::JoinForward, S("p => q"));
  EXPECT_EQ(join->conclusion, S("p \\/ q => q"));
  EXPECT_TRUE(check_proof(*join, fl, {S("p => q")}));

  ProofPtr empty = build_lemma_proof(LemmaKind::FuseEmptyBackward, S("p =>"));
  EXPECT_EQ(empty->conclusion, S("p =>"));
  EXPECT_TRUE(check_proof(*empty, fl, {S("p => 0")}));
  EXPECT_THROW(build_lemma_proof(LemmaKind::JoinForward, S("p, q => r")), std::invalid_argument);
}

TEST(Lemmas, RhoTauBothWays) {
  std::mt19937_64 rng(seed_from_env() + 13);
  for (const char* lang : {"core", "core-meet", "core-neg", "core-meet-neg", "full"}) {
    Calculus cal{Sigma{}, Language::parse(lang)};
    for (int i = 0; i < 60; ++i) {
      Sequent s = random_sequent(rng, cal.lang, {2, 3, 0.15}, 3);
      auto targets = rho_tau(s);
      auto fwd = rho_tau_forward(s, cal);
      ASSERT_EQ(fwd.size(), targets.size());
      for (std::size_t k = 0; k < fwd.size(); ++k) {
        ASSERT_EQ(fwd[k]->conclusion, targets[k]);
        ASSERT_TRUE(check_proof(*fwd[k], cal, {s})) << to_string(s);
      }
      ProofPtr back = rho_tau_backward(s, cal);
      ASSERT_EQ(back->conclusion, s);
      ASSERT_TRUE(check_proof(*back, cal, targets)) << to_string(s);
    }
  }
}
