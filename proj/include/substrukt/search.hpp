#pragma once

#include <algorithm>
#include <iterator>
#include <limits>
#include <stop_token>
#include <string>
#include <unordered_map>
#include <vector>

#include "substrukt/bridge.hpp"
#include "substrukt/calculus.hpp"

namespace substrukt {

enum class Verdict { Proved, Refuted, Unknown };

inline std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Proved: return "proved";
    case Verdict::Refuted: return "refuted";
    case Verdict::Unknown: return "unknown";
  }
  return "?";
}

struct SearchOptions {
  std::size_t depth_bound = 12;          // used with contraction and with hypotheses
  std::size_t node_budget = 4'000'000;   // expansions before giving up
  std::size_t split_cap = 10;            // longest antecedent split as a multiset
  std::stop_token stop;
};

struct ProofResult {
  Verdict verdict = Verdict::Unknown;
  ProofPtr proof;
  // Refuted, but the calculus is not known to admit cut elimination or the
  // refutation rests on the loop check.
  bool caveat = false;
  std::string note;
  std::size_t nodes = 0;
};

namespace detail {

class Prover {
 public:
  Prover(const Calculus& cal, const SearchOptions& opt, std::vector<Sequent> hyps, bool allow_cut)
      : cal_(cal), opt_(opt), hyps_(std::move(hyps)), allow_cut_(allow_cut) {
    multiset_ = cal.sigma.e();
    subsume_ = cal.sigma.c() && cal.sigma.wl();
    bounded_ = cal.sigma.c() || allow_cut_ || !hyps_.empty();
    commit_ = hyps_.empty() && !allow_cut_ && cal.sigma.bits() != Sigma::C;
    for (auto& h : hyps_) hyp_keys_.push_back(normal(h));
  }

  void set_cut_formulas(std::vector<Formula> fs) { cut_formulas_ = std::move(fs); }

  ProofResult run(const Sequent& goal) {
    ProofResult res;
    Sequent g = normal(goal);
    ProofPtr p;
    if (!bounded_) {
      p = solve(g, std::numeric_limits<std::size_t>::max());
    } else {
      for (std::size_t d = 1; d <= opt_.depth_bound && !p && !aborted_; ++d) {
        bound_hit_ = false;
        path_.clear();
        ancestors_.clear();
        logical_ = 0;
        p = solve(g, d);
        if (!p && !bound_hit_) break;
      }
    }
    res.nodes = nodes_;
    if (p) {
      res.verdict = Verdict::Proved;
      res.proof = arrange(p, goal.antecedent);
      return res;
    }
    if (aborted_) {
      res.note = opt_.stop.stop_requested() ? "cancelled" : "node budget exhausted";
      return res;
    }
    if (bound_hit_ || split_capped_) {
      res.note = split_capped_ ? "antecedent too long for multiset splitting" : "depth bound reached";
      return res;
    }
    if (!hyps_.empty() || allow_cut_) {
      res.note = "search with hypotheses is a semidecision";
      return res;
    }
    const Sigma s = cal_.sigma;
    if (s.bits() == Sigma::C) {
      res.note = "contraction without other structural rules: cut-free search is incomplete";
      return res;
    }
    if (loop_pruned_ && !s.wl()) {
      res.note = "exhausted under the loop check; contraction without left weakening";
      return res;
    }
    res.verdict = Verdict::Refuted;
    if (loop_pruned_) {
      res.caveat = true;
      res.note = "exhausted under the loop check";
    }
    if (s.wr() && !s.wl() && (cal_.lang.has_implications() || cal_.lang.has_negations())) {
      res.caveat = true;
      res.note = "cut-free search may be incomplete with right weakening alone";
    }
    return res;
  }

 private:
  struct Step {
    RuleId rule;
    std::size_t a = 0, b = 0;
    std::vector<Formula> conclusion;  // arrangement of the goal antecedent
    std::vector<Sequent> premises;
  };
  struct Memo {
    ProofPtr proof;
    std::size_t failed_at = 0;  // failure established with this much depth left
    bool failed = false;
  };

  Sequent normal(const Sequent& s) const {
    if (!multiset_) return s;
    Sequent t = s;
    std::sort(t.antecedent.begin(), t.antecedent.end());
    return t;
  }

  // Collapses runs of more than two equal adjacent formulas, for the loop check.
  static Sequent loop_key(const Sequent& s) {
    Sequent t;
    t.succedent = s.succedent;
    for (std::size_t i = 0; i < s.antecedent.size(); ++i) {
      std::size_t k = t.antecedent.size();
      if (k >= 2 && t.antecedent[k - 1] == s.antecedent[i] && t.antecedent[k - 2] == s.antecedent[i]) continue;
      t.antecedent.push_back(s.antecedent[i]);
    }
    return t;
  }

  // True when `anc` follows from `g` by contraction and weakening (and
  // exchange in multiset mode), so a minimal proof of `anc` never needs `g`.
  bool harder(const Sequent& g, const Sequent& anc) const {
    if (g.succedent != anc.succedent && !(cal_.sigma.wr() && !g.succedent)) return false;
    const auto& d = g.antecedent;
    const auto& a = anc.antecedent;
    if (multiset_) {
      for (const auto& f : d)
        if (!std::binary_search(a.begin(), a.end(), f)) return false;
      return true;
    }
    // runs of d collapsed to single formulas must form a subsequence of a
    std::size_t j = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (i > 0 && d[i] == d[i - 1]) continue;
      while (j < a.size() && a[j] != d[i]) ++j;
      if (j == a.size()) return false;
      ++j;
    }
    return true;
  }

  // Turns a proof of some permutation of `target` into a proof of `target`
  // by exchange steps.
  static ProofPtr arrange(ProofPtr p, const std::vector<Formula>& target) {
    std::vector<Formula> cur = p->conclusion.antecedent;
    if (cur == target) return p;
    for (std::size_t j = 0; j < target.size(); ++j) {
      std::size_t k = j;
      while (k < cur.size() && cur[k] != target[j]) ++k;
      while (k > j) {
        std::swap(cur[k - 1], cur[k]);
        p = make_node(Sequent(cur, p->conclusion.succedent), RuleId::ExchL, {p}, k - 1);
        --k;
      }
    }
    return p;
  }

  ProofPtr finish(const Step& st, const std::vector<ProofPtr>& ps, const Sequent& goal) {
    std::vector<ProofPtr> arranged;
    for (std::size_t i = 0; i < ps.size(); ++i) arranged.push_back(arrange(ps[i], st.premises[i].antecedent));
    ProofPtr node = make_node(Sequent(st.conclusion, goal.succedent), st.rule, std::move(arranged), st.a, st.b);
    return arrange(node, goal.antecedent);
  }

  ProofPtr solve(const Sequent& goal, std::size_t depth) {
    if (aborted_) return nullptr;
    if (++nodes_ > opt_.node_budget || ((nodes_ & 1023) == 0 && opt_.stop.stop_requested())) {
      aborted_ = true;
      return nullptr;
    }
    auto it = memo_.find(goal);
    if (it != memo_.end()) {
      if (it->second.proof) return it->second.proof;
      if (it->second.failed && it->second.failed_at >= depth) {
        if (it->second.failed_at != kClean) note_bound();
        return nullptr;
      }
    }
    if (depth == 0) {
      note_bound();
      return nullptr;
    }
    // A goal harder than an ancestor with a logical rule in between cannot
    // occur in a proof of the ancestor with fewest logical rules.
    if (subsume_) {
      for (const auto& [anc, at] : ancestors_)
        if (at < logical_ && harder(goal, anc)) {
          loop_pruned_ = true;
          ++prune_counter_;
          return nullptr;
        }
      ancestors_.emplace_back(goal, logical_);
    }
    Sequent key;
    if (cal_.sigma.c()) {
      key = loop_key(goal);
      if (std::find(path_.begin(), path_.end(), key) != path_.end()) {
        loop_pruned_ = true;
        ++prune_counter_;
        return nullptr;
      }
      path_.push_back(key);
    }
    std::size_t prunes_before = prune_counter_, bounds_before = bound_counter_;
    ProofPtr p = expand(goal, depth);
    if (cal_.sigma.c()) path_.pop_back();
    if (subsume_) ancestors_.pop_back();
    Memo& m = memo_[goal];
    if (p) {
      m.proof = p;
    } else if (!aborted_ && prune_counter_ == prunes_before) {
      m.failed = true;
      m.failed_at = bound_counter_ == bounds_before ? kClean : std::max(m.failed_at, depth);
    }
    return p;
  }

  void note_bound() {
    bound_hit_ = true;
    ++bound_counter_;
  }

  ProofPtr attempt(const Step& st, const Sequent& goal, std::size_t depth) {
    const bool logical = !is_structural(st.rule);
    logical_ += logical;
    std::vector<ProofPtr> ps;
    for (const auto& prem : st.premises) {
      ProofPtr q = solve(normal(prem), depth - 1);
      if (!q) break;
      ps.push_back(q);
    }
    logical_ -= logical;
    if (ps.size() != st.premises.size()) return nullptr;
    return finish(st, ps, goal);
  }

  ProofPtr expand(const Sequent& goal, std::size_t depth) {
    // closing steps
    for (RuleId r : {RuleId::Axiom, RuleId::OneR, RuleId::ZeroL})
      if (rule_in_calculus(r, cal_) && instance_premises(r, goal, 0, 0))
        return make_node(goal, r);
    for (std::size_t i = 0; i < hyps_.size(); ++i)
      if (hyp_keys_[i] == goal) return arrange(make_node(hyps_[i], RuleId::Hyp), goal.antecedent);

    std::vector<Step> invertible, branching, structural;
    generate(goal, invertible, branching, structural);
    if (commit_ && !invertible.empty()) return attempt(invertible.front(), goal, depth);
    for (auto* group : {&invertible, &branching, &structural})
      for (const auto& st : *group)
        if (ProofPtr p = attempt(st, goal, depth)) return p;
    if (aborted_) return nullptr;
    if (allow_cut_) {
      std::vector<Step> cuts;
      generate_cuts(goal, cuts);
      for (const auto& st : cuts)
        if (ProofPtr p = attempt(st, goal, depth)) return p;
    }
    return nullptr;
  }

  bool is_invertible(RuleId r) const {
    switch (r) {
      case RuleId::FusL:
      case RuleId::OrL:
      case RuleId::AndR:
      case RuleId::RimpR:
      case RuleId::LimpR:
      case RuleId::RnegR:
      case RuleId::LnegR:
      case RuleId::OneL:
      case RuleId::ZeroR: return true;
      default: return false;
    }
  }
  bool is_structural(RuleId r) const {
    return r == RuleId::WeakL || r == RuleId::WeakR || r == RuleId::ContrL || r == RuleId::ExchL;
  }

  void place(Step st, std::vector<Step>& inv, std::vector<Step>& br, std::vector<Step>& str) const {
    if (is_invertible(st.rule)) inv.push_back(std::move(st));
    else if (is_structural(st.rule)) str.push_back(std::move(st));
    else br.push_back(std::move(st));
  }

  // Sub-multisets of a sorted sequence as (chosen, rest) pairs.
  std::vector<std::pair<std::vector<Formula>, std::vector<Formula>>> splits(const std::vector<Formula>& v) {
    std::vector<std::pair<std::vector<Formula>, std::vector<Formula>>> out;
    if (v.size() > opt_.split_cap) {
      split_capped_ = true;
      return out;
    }
    std::vector<std::pair<Formula, std::size_t>> groups;
    for (const auto& f : v) {
      if (!groups.empty() && groups.back().first == f) ++groups.back().second;
      else groups.emplace_back(f, 1);
    }
    std::vector<std::size_t> take(groups.size(), 0);
    while (true) {
      std::vector<Formula> in, out_rest;
      for (std::size_t g = 0; g < groups.size(); ++g) {
        for (std::size_t k = 0; k < take[g]; ++k) in.push_back(groups[g].first);
        for (std::size_t k = take[g]; k < groups[g].second; ++k) out_rest.push_back(groups[g].first);
      }
      out.emplace_back(std::move(in), std::move(out_rest));
      std::size_t g = 0;
      while (g < groups.size() && ++take[g] > groups[g].second) take[g++] = 0;
      if (g == groups.size()) break;
    }
    return out;
  }

  void generate(const Sequent& goal, std::vector<Step>& inv, std::vector<Step>& br, std::vector<Step>& str) {
    if (!multiset_) {
      for (auto& bs : rule_instances_backward(goal, cal_)) {
        if (bs.rule == RuleId::Axiom || bs.rule == RuleId::OneR || bs.rule == RuleId::ZeroL) continue;
        place(Step{bs.rule, bs.a, bs.b, goal.antecedent, std::move(bs.premises)}, inv, br, str);
      }
      return;
    }
    const auto& g = goal.antecedent;
    const std::size_t n = g.size();
    auto add = [&](RuleId r, std::size_t a, std::size_t b, std::vector<Formula> concl) {
      if (!rule_in_calculus(r, cal_)) return;
      Sequent c(concl, goal.succedent);
      if (auto ps = instance_premises(r, c, a, b)) place(Step{r, a, b, std::move(concl), std::move(*ps)}, inv, br, str);
    };
    for (RuleId r : {RuleId::OrR1, RuleId::OrR2, RuleId::AndR, RuleId::RimpR, RuleId::LimpR, RuleId::RnegR,
                     RuleId::LnegR, RuleId::ZeroR, RuleId::WeakR})
      add(r, 0, 0, g);
    for (std::size_t i = 0; i < n; ++i) {
      if (i > 0 && g[i] == g[i - 1]) continue;
      for (RuleId r : {RuleId::OrL, RuleId::AndL1, RuleId::AndL2, RuleId::FusL, RuleId::OneL, RuleId::WeakL,
                       RuleId::ContrL})
        add(r, i, 0, g);
    }
    if (goal.succedent && goal.succedent->is(Conn::Fus) && cal_.lang.has(Conn::Fus))
      for (auto& [left, right] : splits(g)) {
        std::vector<Formula> c = left;
        c.insert(c.end(), right.begin(), right.end());
        add(RuleId::FusR, left.size(), 0, std::move(c));
      }
    for (std::size_t i = 0; i < n; ++i) {
      if (i > 0 && g[i] == g[i - 1]) continue;
      const Formula& pr = g[i];
      std::vector<Formula> rest(g.begin(), g.end());
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
      if (pr.is(Conn::Rimp) || pr.is(Conn::Limp)) {
        for (auto& [gam, sig] : splits(rest)) {
          std::vector<Formula> c = sig;
          if (pr.is(Conn::Rimp)) {
            c.insert(c.end(), gam.begin(), gam.end());
            c.push_back(pr);
            add(RuleId::RimpL, sig.size(), gam.size(), std::move(c));
          } else {
            c.push_back(pr);
            c.insert(c.end(), gam.begin(), gam.end());
            add(RuleId::LimpL, sig.size(), gam.size(), std::move(c));
          }
        }
      } else if (pr.is(Conn::Rneg) && !goal.succedent) {
        std::vector<Formula> c = rest;
        c.push_back(pr);
        add(RuleId::RnegL, 0, 0, std::move(c));
      } else if (pr.is(Conn::Lneg) && !goal.succedent) {
        std::vector<Formula> c{pr};
        c.insert(c.end(), rest.begin(), rest.end());
        add(RuleId::LnegL, 0, 0, std::move(c));
      }
    }
  }

  void generate_cuts(const Sequent& goal, std::vector<Step>& out) {
    const auto& g = goal.antecedent;
    auto add = [&](std::size_t a, std::size_t b, std::vector<Formula> concl, const Formula& f) {
      Sequent c(concl, goal.succedent);
      if (auto ps = instance_premises(RuleId::Cut, c, a, b, f)) out.push_back(Step{RuleId::Cut, a, b, std::move(concl), std::move(*ps)});
    };
    for (const auto& f : cut_formulas_) {
      if (!multiset_) {
        for (std::size_t a = 0; a <= g.size(); ++a)
          for (std::size_t b = 0; a + b <= g.size(); ++b) add(a, b, g, f);
      } else {
        for (auto& [gam, rest] : splits(g)) {
          std::vector<Formula> c = rest;
          c.insert(c.end(), gam.begin(), gam.end());
          add(rest.size(), gam.size(), std::move(c), f);
        }
      }
    }
  }

  Calculus cal_;
  SearchOptions opt_;
  std::vector<Sequent> hyps_;
  std::vector<Sequent> hyp_keys_;
  bool allow_cut_;
  bool multiset_ = false, bounded_ = false, commit_ = false, subsume_ = false;
  std::vector<Formula> cut_formulas_;
  std::unordered_map<Sequent, Memo, SequentHash> memo_;
  std::vector<Sequent> path_;
  std::vector<std::pair<Sequent, std::size_t>> ancestors_;  // goal, logical steps above it
  std::size_t logical_ = 0;
  std::size_t nodes_ = 0;
  std::size_t prune_counter_ = 0, bound_counter_ = 0;
  static constexpr std::size_t kClean = std::numeric_limits<std::size_t>::max();
  bool aborted_ = false, bound_hit_ = false, loop_pruned_ = false, split_capped_ = false;

};

// Search for sigma containing e, wl and c over antecedents taken as sets.
// Closing steps absorb weakening; the implication and negation left rules
// keep their principal formula in the premise that can use it again, and
// FusR hands the whole context to both sides. Proofs are expanded back into
// the explicit calculus with exchange, contraction and weakening steps.
class SetProver {
 public:
  SetProver(const Calculus& cal, const SearchOptions& opt) : cal_(cal), opt_(opt) {}

  ProofResult run(const Sequent& goal) {
    ProofResult res;
    ProofPtr p = solve(Sequent(as_set(goal.antecedent), goal.succedent));
    res.nodes = nodes_;
    if (p) {
      res.verdict = Verdict::Proved;
      res.proof = adjust(p, goal.antecedent);
      return res;
    }
    if (aborted_) {
      res.note = opt_.stop.stop_requested() ? "cancelled" : "node budget exhausted";
      return res;
    }
    res.verdict = Verdict::Refuted;
    if (pruned_) {
      res.caveat = true;
      res.note = "exhausted under the loop check";
    }
    return res;
  }

  // Turns a proof of Delta => D into one of target => D, where every formula
  // of Delta occurs in target.
  static ProofPtr adjust(ProofPtr p, const std::vector<Formula>& target) {
    const auto& d = p->conclusion.succedent;
    std::vector<Formula> cur = p->conclusion.antecedent;
    std::sort(cur.begin(), cur.end());
    p = exchange_to(p, cur);
    for (std::size_t i = 0; i + 1 < cur.size();) {
      if (cur[i] != cur[i + 1]) {
        ++i;
        continue;
      }
      cur.erase(cur.begin() + static_cast<std::ptrdiff_t>(i));
      p = make_node(Sequent(cur, d), RuleId::ContrL, {p}, i);
    }
    std::vector<Formula> need = target;
    std::sort(need.begin(), need.end());
    std::vector<Formula> extra;
    std::set_difference(need.begin(), need.end(), cur.begin(), cur.end(), std::back_inserter(extra));
    for (const auto& f : extra) {
      cur.push_back(f);
      p = make_node(Sequent(cur, d), RuleId::WeakL, {p}, cur.size() - 1);
    }
    return exchange_to(p, target);
  }

 private:
  using Seq = std::vector<Formula>;

  static ProofPtr exchange_to(ProofPtr p, const Seq& target) {
    Seq cur = p->conclusion.antecedent;
    for (std::size_t j = 0; j < target.size(); ++j) {
      std::size_t k = j;
      while (k < cur.size() && cur[k] != target[j]) ++k;
      while (k > j) {
        std::swap(cur[k - 1], cur[k]);
        p = make_node(Sequent(cur, p->conclusion.succedent), RuleId::ExchL, {p}, k - 1);
        --k;
      }
    }
    return p;
  }

  static Seq as_set(Seq v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  }
  static Seq with(const Seq& s, std::initializer_list<Formula> fs) {
    Seq v = s;
    v.insert(v.end(), fs.begin(), fs.end());
    return as_set(std::move(v));
  }
  static Seq without(const Seq& s, const Formula& f) {
    Seq v = s;
    v.erase(std::lower_bound(v.begin(), v.end(), f));
    return v;
  }
  static bool contains(const Seq& s, const Formula& f) { return std::binary_search(s.begin(), s.end(), f); }

  ProofPtr solve(const Sequent& goal) {
    if (aborted_) return nullptr;
    if (++nodes_ > opt_.node_budget || ((nodes_ & 1023) == 0 && opt_.stop.stop_requested())) {
      aborted_ = true;
      return nullptr;
    }
    if (auto it = memo_.find(goal); it != memo_.end()) return it->second;
    // Weakening and the invertible steps preserve least proof height, and a
    // well-chosen choice step lowers it. So a goal whose antecedent lies inside
    // an ancestor's, with the same succedent and a choice step in between, is
    // never needed by a proof of that ancestor of least height.
    for (const auto& [anc, at] : path_)
      if (at < choices_ && anc.succedent == goal.succedent &&
          std::includes(anc.antecedent.begin(), anc.antecedent.end(), goal.antecedent.begin(),
                        goal.antecedent.end())) {
        pruned_ = true;
        ++prunes_;
        return nullptr;
      }
    path_.emplace_back(goal, choices_);
    std::size_t before = prunes_;
    ProofPtr p = expand(goal);
    path_.pop_back();
    if (p || (!aborted_ && prunes_ == before)) memo_[goal] = p;
    return p;
  }

  bool has(RuleId r) const { return rule_in_calculus(r, cal_); }

  // Solves each premise goal and, on success, hands the proofs to build.
  template <class Build>
  ProofPtr attempt(std::vector<Sequent> goals, Build build, bool choice = false) {
    choices_ += choice;
    std::vector<ProofPtr> ps;
    for (const auto& g : goals) {
      ProofPtr q = solve(g);
      if (!q) break;
      ps.push_back(std::move(q));
    }
    choices_ -= choice;
    if (ps.size() != goals.size()) return nullptr;
    return build(ps);
  }

  ProofPtr expand(const Sequent& goal) {
    const Seq& s = goal.antecedent;
    const auto& d = goal.succedent;
    // closing steps
    if (d && contains(s, *d)) return adjust(make_node(Sequent({*d}, *d), RuleId::Axiom), s);
    if (d && d->is(Conn::One) && has(RuleId::OneR)) return adjust(make_node(Sequent({}, *d), RuleId::OneR), s);
    if (has(RuleId::ZeroL) && contains(s, zero()) && (!d || cal_.sigma.wr())) {
      ProofPtr z = make_node(Sequent({zero()}, std::nullopt), RuleId::ZeroL);
      if (d) z = make_node(Sequent({zero()}, *d), RuleId::WeakR, {z});
      return adjust(z, s);
    }

    // invertible left steps, principal formula dropped
    for (const auto& f : s) {
      Seq r = without(s, f);
      auto at_end = [&](const Formula& x) { return cat({r, Seq{x}}); };
      if (f.is(Conn::Join) && has(RuleId::OrL))
        return attempt({Sequent(with(r, {f.lhs()}), d), Sequent(with(r, {f.rhs()}), d)}, [&](auto& ps) {
          return adjust(make_node(Sequent(at_end(f), d), RuleId::OrL,
                                  {adjust(ps[0], at_end(f.lhs())), adjust(ps[1], at_end(f.rhs()))}, r.size()),
                        s);
        });
      if ((f.is(Conn::Meet) && has(RuleId::AndL1)) || (f.is(Conn::Fus) && has(RuleId::FusL)))
        return attempt({Sequent(with(r, {f.lhs(), f.rhs()}), d)}, [&](auto& ps) {
          const std::size_t k = r.size();
          ProofPtr q = adjust(ps[0], cat({r, Seq{f.lhs(), f.rhs()}}));
          if (f.is(Conn::Fus)) {
            q = make_node(Sequent(at_end(f), d), RuleId::FusL, {q}, k);
          } else {
            q = make_node(Sequent(cat({r, Seq{f.lhs(), f}}), d), RuleId::AndL2, {q}, k + 1);
            q = make_node(Sequent(cat({r, Seq{f, f}}), d), RuleId::AndL1, {q}, k);
            q = make_node(Sequent(at_end(f), d), RuleId::ContrL, {q}, k);
          }
          return adjust(q, s);
        });
      if (f.is(Conn::One) && has(RuleId::OneL))
        return attempt({Sequent(r, d)}, [&](auto& ps) {
          return adjust(make_node(Sequent(at_end(f), d), RuleId::OneL, {ps[0]}, r.size()), s);
        });
    }

    // invertible right steps
    if (d) {
      const Formula& f = *d;
      if (f.is(Conn::Meet) && has(RuleId::AndR))
        return attempt({Sequent(s, f.lhs()), Sequent(s, f.rhs())},
                       [&](auto& ps) { return make_node(goal, RuleId::AndR, {ps[0], ps[1]}); });
      if (f.is(Conn::Fus) && has(RuleId::FusR))
        return attempt({Sequent(s, f.lhs()), Sequent(s, f.rhs())}, [&](auto& ps) {
          return adjust(make_node(Sequent(cat({s, s}), f), RuleId::FusR, {ps[0], ps[1]}, s.size()), s);
        });
      if ((f.is(Conn::Rimp) && has(RuleId::RimpR)) || (f.is(Conn::Limp) && has(RuleId::LimpR))) {
        const bool right = f.is(Conn::Rimp);
        return attempt({Sequent(with(s, {f.lhs()}), f.rhs())}, [&](auto& ps) {
          Seq prem = right ? cat({Seq{f.lhs()}, s}) : cat({s, Seq{f.lhs()}});
          return make_node(goal, right ? RuleId::RimpR : RuleId::LimpR, {adjust(ps[0], prem)});
        });
      }
      if ((f.is(Conn::Rneg) && has(RuleId::RnegR)) || (f.is(Conn::Lneg) && has(RuleId::LnegR))) {
        const bool right = f.is(Conn::Rneg);
        return attempt({Sequent(with(s, {f.lhs()}), std::nullopt)}, [&](auto& ps) {
          Seq prem = right ? cat({Seq{f.lhs()}, s}) : cat({s, Seq{f.lhs()}});
          return make_node(goal, right ? RuleId::RnegR : RuleId::LnegR, {adjust(ps[0], prem)});
        });
      }
      if (f.is(Conn::Zero) && has(RuleId::ZeroR))
        return attempt({Sequent(s, std::nullopt)}, [&](auto& ps) { return make_node(goal, RuleId::ZeroR, {ps[0]}); });
    }

    // choices
    if (d && d->is(Conn::Join))
      for (RuleId r : {RuleId::OrR1, RuleId::OrR2})
        if (has(r))
          if (ProofPtr p = attempt({Sequent(s, r == RuleId::OrR1 ? d->lhs() : d->rhs())},
                                   [&](auto& ps) { return make_node(goal, r, {ps[0]}); }, true))
            return p;
    for (const auto& f : s) {
      if (aborted_) return nullptr;
      Seq r = without(s, f);
      if ((f.is(Conn::Rimp) && has(RuleId::RimpL)) || (f.is(Conn::Limp) && has(RuleId::LimpL))) {
        const bool right = f.is(Conn::Rimp);
        ProofPtr p = attempt({Sequent(s, f.lhs()), Sequent(with(r, {f.rhs()}), d)}, [&](auto& ps) {
          ProofPtr side = adjust(ps[1], cat({r, Seq{f.rhs()}}));
          ProofPtr node = right ? make_node(Sequent(cat({r, s, Seq{f}}), d), RuleId::RimpL, {ps[0], side}, r.size(),
                                            s.size())
                                : make_node(Sequent(cat({r, Seq{f}, s}), d), RuleId::LimpL, {ps[0], side}, r.size(),
                                            s.size());
          return adjust(node, s);
        }, true);
        if (p) return p;
      }
      if (!d && ((f.is(Conn::Rneg) && has(RuleId::RnegL)) || (f.is(Conn::Lneg) && has(RuleId::LnegL)))) {
        const bool right = f.is(Conn::Rneg);
        ProofPtr p = attempt({Sequent(s, f.lhs())}, [&](auto& ps) {
          ProofPtr node = right ? make_node(Sequent(cat({s, Seq{f}}), d), RuleId::RnegL, {ps[0]})
                                : make_node(Sequent(cat({Seq{f}, s}), d), RuleId::LnegL, {ps[0]});
          return adjust(node, s);
        }, true);
        if (p) return p;
      }
    }
    if (d && has(RuleId::WeakR))
      return attempt({Sequent(s, std::nullopt)}, [&](auto& ps) { return make_node(goal, RuleId::WeakR, {ps[0]}); },
                     true);
    return nullptr;
  }

  Calculus cal_;
  SearchOptions opt_;
  std::unordered_map<Sequent, ProofPtr, SequentHash> memo_;
  std::vector<std::pair<Sequent, std::size_t>> path_;  // goal, choice steps above it
  std::size_t choices_ = 0;
  std::size_t nodes_ = 0, prunes_ = 0;
  bool aborted_ = false, pruned_ = false;
};

inline void check_goal(const Sequent& goal, const Calculus& cal) {
  for (const auto& f : goal.antecedent)
    if (auto c = first_foreign_connective(f, cal.lang))
      throw SyntaxError(std::string(conn_name(*c)) + " not in language");
  if (goal.succedent)
    if (auto c = first_foreign_connective(*goal.succedent, cal.lang))
      throw SyntaxError(std::string(conn_name(*c)) + " not in language");
}

// With wl and c, fusion is meet in every algebra, so exchange is derivable
// with cut: from Gamma, B, A, Delta => D get Gamma, B*A, Delta => D and cut it
// against A, B => B*A, itself a cut of A, B => A*B with A*B => B*A.
inline ProofPtr exchange_by_cut(const Formula& a, const Formula& b, std::size_t at, ProofPtr premise,
                                const Sequent& concl) {
  using V = std::vector<Formula>;
  auto ax = [](const Formula& f) { return make_node(Sequent({f}, f), RuleId::Axiom); };
  Formula ab = fus(a, b), ba = fus(b, a);
  ProofPtr ab_r = make_node(Sequent({a, b}, ab), RuleId::FusR, {ax(a), ax(b)}, 1);
  ProofPtr bb = make_node(Sequent({a, b}, b), RuleId::WeakL, {ax(b)}, 0);
  ProofPtr aa = make_node(Sequent({a, b}, a), RuleId::WeakL, {ax(a)}, 1);
  ProofPtr split = make_node(Sequent({a, b, a, b}, ba), RuleId::FusR, {bb, aa}, 2);
  ProofPtr f2 = make_node(Sequent({a, b, ab}, ba), RuleId::FusL, {split}, 2);
  ProofPtr f1 = make_node(Sequent({ab, ab}, ba), RuleId::FusL, {f2}, 0);
  ProofPtr swap = make_node(Sequent({ab}, ba), RuleId::ContrL, {f1}, 0);
  ProofPtr comm = make_node(Sequent({a, b}, ba), RuleId::Cut, {ab_r, swap}, 0, 2);
  const V& g = concl.antecedent;
  V fused(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(at));
  fused.push_back(ba);
  fused.insert(fused.end(), g.begin() + static_cast<std::ptrdiff_t>(at) + 2, g.end());
  ProofPtr left = make_node(Sequent(fused, concl.succedent), RuleId::FusL, {std::move(premise)}, at);
  return make_node(concl, RuleId::Cut, {comm, left}, at, 2);
}

// Replaces every exchange step of a proof by exchange_by_cut.
inline ProofPtr eliminate_exchange(const ProofPtr& t) {
  std::vector<ProofPtr> ps;
  for (const auto& p : t->premises) ps.push_back(eliminate_exchange(p));
  if (t->rule == RuleId::ExchL) {
    const auto& g = t->conclusion.antecedent;
    return exchange_by_cut(g[t->a], g[t->a + 1], t->a, ps.front(), t->conclusion);
  }
  return make_node(t->conclusion, t->rule, std::move(ps), t->a, t->b);
}

// Without exchange, wl and c still prove exactly what e, wl, c proves, but
// not cut-free; the search runs with e and translates the proof back.
inline bool search_with_exchange(const Calculus& cal) { return cal.sigma.wl() && cal.sigma.c() && !cal.sigma.e(); }

inline ProofResult back_without_exchange(ProofResult r) {
  if (r.proof) r.proof = eliminate_exchange(r.proof);
  return r;
}

}  // namespace detail

// Cut-free backward proof search. Without contraction this decides
// derivability (modulo the caveats in ProofResult); with contraction the
// search is bounded by opt.depth_bound. With wl and c but no e the search
// runs in the exchange calculus and exchange steps come back as cuts.
inline ProofResult prove(const Sequent& goal, const Calculus& cal, const SearchOptions& opt = {}) {
  detail::check_goal(goal, cal);
  if (detail::search_with_exchange(cal))
    return detail::back_without_exchange(prove(goal, Calculus{Sigma(cal.sigma.bits() | Sigma::E), cal.lang}, opt));
  if (cal.sigma.e() && cal.sigma.wl() && cal.sigma.c()) return detail::SetProver(cal, opt).run(goal);
  detail::Prover p(cal, opt, {}, false);
  return p.run(goal);
}

// Search with hypotheses as extra leaves, allowing cuts on subformulas of the
// goal and hypotheses. Returns Proved or Unknown.
inline ProofResult prove_with_hyps(const Sequent& goal, const std::vector<Sequent>& hyps, const Calculus& cal,
                                   const SearchOptions& opt = {}) {
  detail::check_goal(goal, cal);
  for (const auto& h : hyps) detail::check_goal(h, cal);
  if (detail::search_with_exchange(cal))
    return detail::back_without_exchange(
        prove_with_hyps(goal, hyps, Calculus{Sigma(cal.sigma.bits() | Sigma::E), cal.lang}, opt));
  std::set<Formula> subs;
  collect_subformulas(goal, subs);
  for (const auto& h : hyps) collect_subformulas(h, subs);
  std::vector<Formula> cuts;
  for (const auto& f : subs)
    if (in_language(f, cal.lang)) cuts.push_back(f);
  std::stable_sort(cuts.begin(), cuts.end(), [](const Formula& a, const Formula& b) { return a.size() < b.size(); });
  detail::Prover p(cal, opt, hyps, true);
  p.set_cut_formulas(std::move(cuts));
  return p.run(goal);
}

struct Entailment {
  Verdict verdict = Verdict::Unknown;
  ProofPtr proof;
  std::optional<Countermodel> countermodel;
  std::string note;
};

// Proved from a derivation with hypotheses, Refuted only from a finite
// countermodel to the translated quasi-equation.
inline Entailment external_entails(const std::vector<Sequent>& hyps, const Sequent& goal, const Calculus& cal,
                                   std::size_t max_model = 3, const SearchOptions& opt = {}) {
  Entailment out;
  auto pr = prove_with_hyps(goal, hyps, cal, opt);
  if (pr.verdict == Verdict::Proved) {
    out.verdict = Verdict::Proved;
    out.proof = pr.proof;
    return out;
  }
  auto sem = entails_semantically(hyps, goal, VarietyId{family_for(cal.lang), cal.sigma}, max_model, opt.stop);
  if (sem.countermodel) {
    out.verdict = Verdict::Refuted;
    out.countermodel = sem.countermodel;
    return out;
  }
  out.note = pr.note.empty() ? "no derivation and no countermodel within bounds" : pr.note;
  return out;
}

}  // namespace substrukt
