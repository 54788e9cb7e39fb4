// Acceptance suite: one PASS/FAIL line per criterion. Exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "substrukt.hpp"

using namespace substrukt;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::mt19937_64 make_rng(std::uint64_t salt) { return std::mt19937_64(seed_from_env() ^ (salt * 0x9E3779B97F4A7C15ull)); }

const std::vector<Family> kImplFree = {Family::Msl, Family::Ml, Family::PMsl, Family::PMl};
const std::vector<Family> kPointed = {Family::Msl, Family::Ml, Family::PMsl, Family::PMl, Family::FL};

// 1. Mirror images of derivable sequents are derivable.
Outcome mirror_suite() {
  auto rng = make_rng(1);
  std::size_t bad = 0, total = 0;
  std::string first;
  for (const char* s : {"", "e", "wl", "wl,wr", "e,wl,wr,c"}) {
    Calculus cal{Sigma::parse(s)};
    for (int i = 0; i < 200; ++i, ++total) {
      auto d = random_derivation(rng, cal, 5);
      std::string why;
      if (!check_proof(*d, cal).ok) why = "generated derivation does not check";
      auto m = mirror(d->conclusion);
      if (why.empty() && prove(m, cal).verdict != Verdict::Proved) why = "mirror not proved";
      auto mp = mirror_proof(*d);
      if (why.empty() && (mp->conclusion != m || !check_proof(*mp, cal).ok)) why = "mirrored tree does not check";
      if (!why.empty() && bad++ == 0) first = "{" + std::string(s) + "} " + to_string(d->conclusion) + ": " + why;
    }
  }
  return {bad == 0, std::to_string(total - bad) + "/" + std::to_string(total) + " ok" + (first.empty() ? "" : "; first: " + first)};
}

// 2. s and rho(tau(s)) are interderivable by the constructed proofs.
Outcome algebraization_round_trip() {
  auto rng = make_rng(2);
  std::size_t bad = 0, total = 0;
  std::string first;
  for (const char* preset : {"core", "core-meet", "core-neg", "core-meet-neg", "full"}) {
    Calculus cal{Sigma{}, Language::parse(preset)};
    for (int i = 0; i < 100; ++i, ++total) {
      Sequent s = random_sequent(rng, cal.lang, {2, 3, 0.15}, 3);
      std::string why;
      try {
        auto rt = rho_tau(s);
        auto fwd = rho_tau_forward(s, cal);
        if (fwd.size() != rt.size()) why = "forward proof count";
        for (std::size_t k = 0; why.empty() && k < fwd.size(); ++k)
          if (fwd[k]->conclusion != rt[k] || !check_proof(*fwd[k], cal, {s}).ok) why = "forward proof fails";
        auto back = rho_tau_backward(s, cal);
        if (why.empty() && (back->conclusion != s || !check_proof(*back, cal, rt).ok)) why = "backward proof fails";
      } catch (const std::exception& e) {
        why = e.what();
      }
      if (!why.empty() && bad++ == 0) first = std::string(preset) + " " + to_string(s) + ": " + why;
    }
  }
  return {bad == 0, std::to_string(total - bad) + "/" + std::to_string(total) + " ok" + (first.empty() ? "" : "; first: " + first)};
}

// 3. The canonical filter is closed under every rule.
Outcome canonical_filter_closure() {
  std::size_t checked = 0, bad = 0;
  std::string first;
  for (Family f : kPointed)
    for (Sigma s : Sigma::all()) {
      VarietyId v{f, s};
      Calculus cal{s, family_language(f)};
      for (std::size_t n = 1; n <= 3; ++n)
        for (const auto& a : enumerate_algebras(v, n)) {
          ++checked;
          if (auto w = verify_slice_closure(a, canonical_filter(a), cal, 3); w && bad++ == 0)
            first = v.name() + ": " + std::string(rule_name(w->rule)) + " " + w->instance;
        }
    }
  return {bad == 0, std::to_string(checked) + " algebras, " + std::to_string(bad) + " violations" + (first.empty() ? "" : "; first: " + first)};
}

// 4. Ideal completions inherit the structural properties; the embedding is one.
Outcome completion_suite() {
  std::size_t inputs = 0, bad = 0;
  std::string first;
  auto record = [&](const std::string& m) {
    if (bad++ == 0) first = m;
  };
  auto check_one = [&](const FiniteAlgebra& a) {
    ++inputs;
    IdealCompletion ic;
    try {
      ic = ideal_completion(a);
    } catch (const std::exception& e) {
      record(to_json(a).dump() + ": " + e.what());
      return;
    }
    const FiniteAlgebra& b = ic.completion.algebra;
    for (unsigned flag : {Sigma::E, Sigma::WL, Sigma::WR, Sigma::C}) {
      Sigma s(flag);
      if (!in_variety(a, {Family::Msl, s})) continue;
      auto rep = check_variety(b, {Family::FL, s});
      if (!rep.ok) {
        record("completion of " + to_json(a).dump() + " not in FL_{" + s.name() + "}: " + rep.describe());
        return;
      }
    }
    auto er = verify_embedding(a, b, ic.embedding);
    if (!er.ok()) {
      record("embedding of " + to_json(a).dump() + ": " + er.failures.front());
      return;
    }
    // C(X) C(Y) inside C(XY) for all X, Y with at most 3 elements.
    auto c = ideal_closure(a);
    auto m = monoid_reduct(a);
    const Subset lim = Subset{1} << a.size();
    for (Subset x = 0; x < lim; ++x) {
      if (std::popcount(x) > 3) continue;
      for (Subset y = 0; y < lim; ++y) {
        if (std::popcount(y) > 3) continue;
        if (!subset_of(complex_product(m, c(x), c(y)), c(complex_product(m, x, y)))) {
          record("closure product law fails on " + to_json(a).dump());
          return;
        }
      }
    }
  };
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& a : enumerate_algebras({Family::Msl, Sigma{}}, n)) check_one(a);
  auto rng = make_rng(4);
  int made = 0;
  while (made < 50) {
    RandomAlgebraOptions opt;
    opt.sigma = Sigma(static_cast<unsigned>(rng() % 16));
    auto a = random_sl_monoid(5 + made % 2, rng, opt);
    if (!a) continue;
    ++made;
    check_one(*a);
  }
  return {bad == 0, std::to_string(inputs) + " inputs, " + std::to_string(bad) + " failures" + (first.empty() ? "" : "; first: " + first)};
}

// 5. Implication-free reducts of FL_sigma-algebras stay in the matching variety.
Outcome subreduct_closure() {
  std::size_t checked = 0, bad = 0;
  std::string first;
  for (Sigma s : Sigma::all())
    for (std::size_t n = 1; n <= 3; ++n)
      for (const auto& a : enumerate_algebras({Family::FL, s}, n))
        for (Family f : kImplFree) {
          ++checked;
          auto rep = check_variety(reduct(a, f), {f, s});
          if (!rep.ok && bad++ == 0) first = VarietyId{f, s}.name() + ": " + rep.describe();
        }
  return {bad == 0, std::to_string(checked) + " reducts, " + std::to_string(bad) + " failures" + (first.empty() ? "" : "; first: " + first)};
}

// 6. Filters and relative congruences correspond through the Leibniz map.
Outcome filter_congruence_iso() {
  std::size_t checked = 0, bad = 0;
  std::string first;
  for (Family f : kPointed)
    for (Sigma s : Sigma::all()) {
      VarietyId v{f, s};
      for (std::size_t n = 1; n <= 3; ++n)
        for (const auto& a : enumerate_algebras(v, n)) {
          ++checked;
          auto r = filter_congruence_correspondence(a, v);
          if (!r.ok() && bad++ == 0)
            first = v.name() + " " + to_json(a).dump() + ": filters=" + std::to_string(r.filters) +
                    " congruences=" + std::to_string(r.congruences) + " " + r.problem;
        }
    }
  return {bad == 0, std::to_string(checked) + " algebras, " + std::to_string(bad) + " failures" + (first.empty() ? "" : "; first: " + first)};
}

// 7. Quasi-inequational and equational forms of e, w, wr, c agree.
Outcome property_equivalences() {
  auto rng = make_rng(7);
  std::size_t made = 0, bad = 0;
  std::string first;
  while (made < 500) {
    RandomAlgebraOptions opt;
    opt.distributive = rng() % 2 == 0;
    auto a = random_sl_monoid(1 + rng() % 4, rng, opt);
    if (!a) continue;
    ++made;
    for (const auto& p : check_property_equivalences(*a))
      if (p.quasi != p.equation && bad++ == 0) first = p.name + " on " + to_json(*a).dump();
  }
  return {bad == 0, std::to_string(made) + " po-monoids, " + std::to_string(bad) + " divergences" + (first.empty() ? "" : "; first: " + first)};
}

// 8. Prover and countermodel search never contradict each other when wl holds.
Outcome decision_agreement() {
  auto rng = make_rng(8);
  std::vector<Sequent> corpus;
  for (int i = 0; i < 100; ++i) corpus.push_back(random_sequent(rng, Language::full(), {3, 3, 0.15}, 3));
  std::size_t contradictions = 0, worst_matched = corpus.size();
  std::string first, per;
  for (unsigned bits = 0; bits < 16; ++bits) {
    Sigma s(bits);
    if (!s.wl()) continue;
    Calculus cal{s};
    std::size_t matched = 0;
    for (const auto& q : corpus) {
      auto pr = prove(q, cal);
      auto cm = countermodel(q, {Family::FL, s}, 4);
      if (pr.verdict == Verdict::Proved && cm && contradictions++ == 0)
        first = "{" + s.name() + "} " + to_string(q);
      if ((pr.verdict == Verdict::Proved && !cm) || (pr.verdict == Verdict::Refuted && cm)) ++matched;
    }
    worst_matched = std::min(worst_matched, matched);
    per += " {" + s.name() + "}:" + std::to_string(matched);
  }
  bool pass = contradictions == 0 && worst_matched * 100 >= 80 * corpus.size();
  return {pass, "matched per sigma" + per + "; contradictions " + std::to_string(contradictions) +
                    (first.empty() ? "" : "; first: " + first)};
}

// 9. Fixture refutations and fixture algebras.
Outcome fixtures_suite() {
  std::vector<std::string> fails;
  Calculus fl{Sigma{}};
  auto pp = parse_sequent("p => p * p");
  if (prove(pp, fl).verdict != Verdict::Refuted) fails.push_back("p => p*p not refuted in FL");
  if (!countermodel(pp, {Family::FL, Sigma{}}, 3)) fails.push_back("no countermodel of size <= 3 for p => p*p");
  auto comm = parse_sequent("p * q => q * p");
  if (prove(comm, fl).verdict != Verdict::Refuted) fails.push_back("p*q => q*p not refuted in FL");
  if (prove(comm, Calculus{Sigma(Sigma::E)}).verdict != Verdict::Proved) fails.push_back("p*q => q*p not proved in FL_e");
  auto d = fixtures::diamond();
  auto rep = check_variety(d, {Family::Msl, Sigma{}});
  if (rep.ok || rep.failure->label.rfind("dist", 0) != 0) {
    fails.push_back("diamond not rejected by a distributivity law (" + rep.describe() + ")");
  } else {
    Assignment w{{"x", 1}, {"y", 2}, {"z", 2}};
    const Equation& e = rep.failure->equation;
    if (eval_term(d, e.lhs, w) == eval_term(d, e.rhs, w)) fails.push_back("x=a, y=b, z=b is not a witness");
  }
  for (Sigma s : Sigma::all()) {
    if (!in_variety(fixtures::four_chain(), {Family::Ml, s})) fails.push_back("4-chain not in Ml_{" + s.name() + "}");
    if (!in_variety(fixtures::five_chain_pm(), {Family::PMl, s})) fails.push_back("5-chain not in PMl_{" + s.name() + "}");
  }
  std::string detail = fails.empty() ? "all fixtures behave" : fails.front();
  return {fails.empty(), detail};
}

// 10. Hilbert axioms are theorems and Hilbert rules are derivable.
Outcome hilbert_cross_check() {
  std::size_t items = 0, bad = 0;
  std::string first;
  auto run = [&](const HilbertSystem& sys, Sigma s) {
    for (const auto& c : cross_check(sys)) {
      ++items;
      if (c.verdict != Verdict::Proved && bad++ == 0)
        first = sys.name + "{" + s.name() + "} " + c.item + ": " + std::string(verdict_name(c.verdict));
    }
  };
  for (const char* pre : {"HFL", "HFLe", "vAR"}) {
    run(hilbert_system(pre), Sigma{});
    for (unsigned flag : {Sigma::WL, Sigma::WR, Sigma::C}) run(hilbert_system(pre, Sigma(flag)), Sigma(flag));
  }
  return {bad == 0, std::to_string(items) + " axioms and rules, " + std::to_string(bad) + " not proved" + (first.empty() ? "" : "; first: " + first)};
}

// 11. eval(opposite(A), mirror(t), v) = eval(A, t, v).
Outcome opposite_mirror() {
  auto rng = make_rng(11);
  std::vector<FiniteAlgebra> pool;
  for (Family f : {Family::Msl, Family::Ml, Family::PMsl, Family::PMl, Family::FL})
    for (std::size_t n = 2; n <= 3; ++n)
      for (const auto& a : enumerate_algebras({f, Sigma{}}, n)) pool.push_back(a);
  std::size_t bad = 0;
  std::string first;
  for (int i = 0; i < 1000; ++i) {
    const auto& a = pool[rng() % pool.size()];
    Language lang = Language::core();
    if (a.has(Conn::Meet)) lang = lang.with(Conn::Meet);
    if (a.has(Conn::Rneg)) lang = lang.with(Conn::Rneg).with(Conn::Lneg);
    if (a.has(Conn::Rimp)) lang = lang.with(Conn::Rimp).with(Conn::Limp);
    Formula t = random_formula(rng, lang, {4, 3, 0.15});
    Assignment v;
    for (const auto& x : variables(t)) v[x] = static_cast<Elem>(rng() % a.size());
    if (eval_term(opposite(a), mirror(t), v) != eval_term(a, t, v) && bad++ == 0)
      first = to_string(t) + " on " + to_json(a).dump();
  }
  return {bad == 0, "1000 triples, " + std::to_string(bad) + " mismatches" + (first.empty() ? "" : "; first: " + first)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"C1 mirror law", mirror_suite},
      {"C2 algebraization round trip", algebraization_round_trip},
      {"C3 canonical filter closure", canonical_filter_closure},
      {"C4 ideal completion", completion_suite},
      {"C5 subreduct closure", subreduct_closure},
      {"C6 filter-congruence isomorphism", filter_congruence_iso},
      {"C7 property equivalences", property_equivalences},
      {"C8 decision agreement", decision_agreement},
      {"C9 fixtures", fixtures_suite},
      {"C10 Hilbert cross-check", hilbert_cross_check},
      {"C11 opposite and mirror", opposite_mirror},
  };
  std::cout << "seed " << seed_from_env() << "\n";
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1fs", secs);
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << " (" << buf << "): " << o.detail << std::endl;
    failed += !o.pass;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed") << "\n";
  return failed ? 1 : 0;
}
