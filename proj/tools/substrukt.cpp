// Command-line front end: prove, decide, translate, mirror, algebra,
// complete, filters, enumerate, hilbert and corpus.
//
// Exit status: 0 proved/valid, 1 refuted/invalid, 2 unknown, 64 usage,
// 65 malformed input, 66 unreadable file, 70 internal error.

#include <condition_variable>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "substrukt.hpp"

namespace {

using namespace substrukt;
using nlohmann::json;

enum Exit : int { kOk = 0, kNo = 1, kUnknown = 2, kUsage = 64, kData = 65, kNoInput = 66, kSoftware = 70 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string sigma;
  std::string lang = "full";
  std::size_t depth = 12;
  std::size_t max_size = 3;
  std::size_t budget = 4'000'000;
  std::string format = "text";

  Calculus calculus() const { return Calculus{Sigma::parse(sigma), Language::parse(lang)}; }
  SearchOptions search(std::stop_token stop = {}) const {
    SearchOptions o;
    o.depth_bound = depth;
    o.node_budget = budget;
    o.stop = std::move(stop);
    return o;
  }
  bool json_out() const { return format == "json"; }
  bool sexp_out() const { return format == "sexp"; }
};

void add_common(CLI::App* sub, Config& cfg, bool search) {
  sub->add_option("--sigma", cfg.sigma, "structural rules, e.g. e,wl,wr,c (w = wl,wr)");
  sub->add_option("--lang", cfg.lang, "core|core-meet|core-neg|core-meet-neg|full or a connective list");
  sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"text", "json", "sexp"}));
  if (search) {
    sub->add_option("--depth", cfg.depth, "depth bound for contraction and hypotheses");
    sub->add_option("--budget", cfg.budget, "node budget of the prover");
  }
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void no_sexp(const Config& cfg, const char* cmd) {
  if (cfg.sexp_out()) throw UsageError(std::string("--format sexp is not available for ") + cmd);
}

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::Proved: return kOk;
    case Verdict::Refuted: return kNo;
    case Verdict::Unknown: return kUnknown;
  }
  return kUnknown;
}

void print_json(const json& j) { std::cout << j.dump(2) << "\n"; }

// ---------------------------------------------------------------- prove

int cmd_prove(const Config& cfg, const std::string& text) {
  Calculus cal = cfg.calculus();
  Sequent s = parse_sequent(text, cal.lang);
  ProofResult r = prove(s, cal, cfg.search());
  if (r.proof && !check_proof(*r.proof, cal)) throw std::logic_error("prover returned an invalid proof");
  if (cfg.json_out()) {
    print_json({{"command", "prove"},
                {"sequent", to_string(s)},
                {"sigma", cal.sigma.name()},
                {"lang", cal.lang.name()},
                {"verdict", verdict_name(r.verdict)},
                {"caveat", r.caveat},
                {"note", r.note},
                {"proof", r.proof ? json(to_sexp(*r.proof)) : json(nullptr)}});
  } else if (cfg.sexp_out()) {
    std::cout << (r.proof ? to_sexp(*r.proof) : std::string(verdict_name(r.verdict))) << "\n";
  } else {
    std::cout << verdict_name(r.verdict) << (r.caveat ? " (with caveat)" : "");
    if (!r.note.empty()) std::cout << ": " << r.note;
    std::cout << "\n";
    if (r.proof) std::cout << to_text(*r.proof);
  }
  return verdict_exit(r.verdict);
}

// ---------------------------------------------------------------- decide

// Runs the prover and the countermodel search side by side. A proof or a
// countermodel settles the question and cancels the other search.
int cmd_decide(const Config& cfg, const std::string& text) {
  Calculus cal = cfg.calculus();
  Sequent s = parse_sequent(text, cal.lang);
  VarietyId v{family_for(cal.lang), cal.sigma};

  std::mutex mu;
  std::condition_variable cv;
  std::optional<ProofResult> proved;
  std::optional<SemanticResult> semantic;
  std::exception_ptr failure;
  std::stop_source stop_prover, stop_model;

  std::jthread prover([&] {
    ProofResult r;
    try {
      r = prove(s, cal, cfg.search(stop_prover.get_token()));
    } catch (...) {
      std::lock_guard lock(mu);
      failure = std::current_exception();
    }
    std::lock_guard lock(mu);
    proved = std::move(r);
    if (proved->verdict == Verdict::Proved) stop_model.request_stop();
    cv.notify_all();
  });
  std::jthread model([&] {
    SemanticResult r;
    try {
      r = entails_semantically({}, s, v, cfg.max_size, stop_model.get_token());
    } catch (...) {
      std::lock_guard lock(mu);
      failure = std::current_exception();
    }
    std::lock_guard lock(mu);
    semantic = std::move(r);
    if (semantic->countermodel) stop_prover.request_stop();
    cv.notify_all();
  });
  {
    std::unique_lock lock(mu);
    cv.wait(lock, [&] {
      return failure || (proved && proved->verdict == Verdict::Proved) || (semantic && semantic->countermodel) ||
             (proved && semantic);
    });
    stop_prover.request_stop();
    stop_model.request_stop();
  }
  prover.join();
  model.join();
  if (failure) std::rethrow_exception(failure);

  Verdict verdict = Verdict::Unknown;
  if (proved->verdict == Verdict::Proved) verdict = Verdict::Proved;
  else if (semantic->countermodel) verdict = Verdict::Refuted;
  std::string note;
  if (verdict == Verdict::Unknown) {
    note = "no proof (" + (proved->note.empty() ? std::string(verdict_name(proved->verdict)) : proved->note) +
           ") and no countermodel up to size " + std::to_string(cfg.max_size);
  }

  if (cfg.json_out()) {
    json j{{"command", "decide"},
           {"sequent", to_string(s)},
           {"sigma", cal.sigma.name()},
           {"lang", cal.lang.name()},
           {"variety", v.name()},
           {"verdict", verdict_name(verdict)},
           {"note", note},
           {"proof", verdict == Verdict::Proved ? json(to_sexp(*proved->proof)) : json(nullptr)},
           {"countermodel", verdict == Verdict::Refuted ? to_json(*semantic->countermodel) : json(nullptr)}};
    if (verdict == Verdict::Unknown)
      j["bounds"] = {{"depth", cfg.depth}, {"budget", cfg.budget}, {"max_size", cfg.max_size}};
    print_json(j);
  } else if (cfg.sexp_out()) {
    std::cout << (verdict == Verdict::Proved ? to_sexp(*proved->proof) : std::string(verdict_name(verdict))) << "\n";
  } else {
    std::cout << verdict_name(verdict);
    if (!note.empty()) std::cout << ": " << note;
    std::cout << "\n";
    if (verdict == Verdict::Proved) std::cout << to_text(*proved->proof);
    if (verdict == Verdict::Refuted) std::cout << to_json(*semantic->countermodel).dump(2) << "\n";
  }
  return verdict_exit(verdict);
}

// ---------------------------------------------------------------- translate

int cmd_translate(const Config& cfg, const std::string& text, bool check) {
  no_sexp(cfg, "translate");
  Calculus cal = cfg.calculus();
  if (text.find("=>") == std::string::npos) {
    if (check) throw UsageError("--check needs a sequent");
    Equation e = parse_equation(text, cal.lang);
    std::vector<std::string> out;
    for (const auto& s : rho(e)) out.push_back(to_string(s));
    if (cfg.json_out()) {
      print_json({{"command", "translate"}, {"equation", to_string(e)}, {"rho", out}});
    } else {
      for (const auto& s : out) std::cout << s << "\n";
    }
    return kOk;
  }
  Sequent s = parse_sequent(text, cal.lang);
  Equation t = tau(s);
  std::vector<std::string> rt;
  for (const auto& x : rho_tau(s)) rt.push_back(to_string(x));
  bool ok = true;
  std::string problem;
  if (check) {
    auto verify = [&](const ProofPtr& p, const std::vector<Sequent>& hyps) {
      if (auto c = check_proof(*p, cal, hyps); !c) {
        ok = false;
        if (problem.empty()) problem = c.message;
      }
    };
    for (const auto& p : rho_tau_forward(s, cal)) verify(p, {s});
    verify(rho_tau_backward(s, cal), rho_tau(s));
  }
  if (cfg.json_out()) {
    json j{{"command", "translate"}, {"sequent", to_string(s)}, {"tau", to_string(t)}, {"rho_tau", rt}};
    if (check) j["check"] = {{"ok", ok}, {"problem", problem}};
    print_json(j);
  } else {
    std::cout << "tau: " << to_string(t) << "\n";
    for (const auto& x : rt) std::cout << "rho: " << x << "\n";
    if (check) std::cout << (ok ? "interderivable: ok" : "interderivable: FAILED " + problem) << "\n";
  }
  return ok ? kOk : kNo;
}

// ---------------------------------------------------------------- mirror

int cmd_mirror(const Config& cfg, const std::string& text, const std::string& proof_file) {
  Calculus cal = cfg.calculus();
  if (!proof_file.empty()) {
    ProofPtr p = parse_sexp(read_input(proof_file), cal.lang);
    if (auto c = check_proof(*p, cal); !c) throw SyntaxError("input proof does not check: " + c.message);
    ProofPtr m = mirror_proof(*p);
    bool ok = static_cast<bool>(check_proof(*m, cal));
    if (cfg.json_out()) {
      print_json({{"command", "mirror"},
                  {"conclusion", to_string(m->conclusion)},
                  {"proof", to_sexp(*m)},
                  {"checks", ok}});
    } else if (cfg.sexp_out()) {
      std::cout << to_sexp(*m) << "\n";
    } else {
      std::cout << to_text(*m);
    }
    return ok ? kOk : kNo;
  }
  if (text.empty()) throw UsageError("mirror needs a sequent, a formula or --proof");
  std::string out = text.find("=>") != std::string::npos ? to_string(mirror(parse_sequent(text, cal.lang)))
                                                           : to_string(mirror(parse_formula(text, cal.lang)));
  if (cfg.json_out()) print_json({{"command", "mirror"}, {"input", text}, {"mirror", out}});
  else std::cout << out << "\n";
  return kOk;
}

// ---------------------------------------------------------------- algebras

FiniteAlgebra load_fixture(const std::string& name) {
  if (name == "two-chain") return fixtures::two_chain();
  if (name == "three-chain-nilpotent") return fixtures::three_chain_nilpotent();
  if (name == "diamond") return fixtures::diamond();
  if (name == "four-chain") return fixtures::four_chain();
  if (name == "five-chain-pm") return fixtures::five_chain_pm();
  throw UsageError("unknown fixture '" + name + "'");
}

const std::vector<std::string> kFixtures{"two-chain", "three-chain-nilpotent", "diamond", "four-chain",
                                         "five-chain-pm"};

struct AlgebraSource {
  std::string file;
  std::string fixture;
  void add(CLI::App* sub) {
    sub->add_option("file", file, "algebra as json ('-' for stdin)");
    sub->add_option("--fixture", fixture, "built-in algebra")->check(CLI::IsMember(kFixtures));
  }
  FiniteAlgebra load() const {
    if (file.empty() == fixture.empty()) throw UsageError("give exactly one of an algebra file and --fixture");
    if (!fixture.empty()) return load_fixture(fixture);
    json j;
    try {
      j = json::parse(read_input(file));
    } catch (const json::parse_error& e) {
      throw AlgebraError(std::string("malformed json: ") + e.what());
    }
    return algebra_from_json(j);
  }
};

// The smallest family whose operations the algebra carries.
Family family_of(const FiniteAlgebra& a) {
  if (a.has(Conn::Rimp) && a.has(Conn::Limp) && a.has(Conn::Meet) && a.has(Conn::Rneg) && a.has(Conn::Lneg))
    return Family::FL;
  bool m = a.has(Conn::Meet), n = a.has(Conn::Rneg) && a.has(Conn::Lneg);
  if (m && n) return Family::PMl;
  if (n) return Family::PMsl;
  if (m) return Family::Ml;
  return Family::Msl;
}

VarietyId variety(const FiniteAlgebra& a, const std::string& family, const Config& cfg) {
  return VarietyId{family.empty() ? family_of(a) : parse_family(family), Sigma::parse(cfg.sigma)};
}

std::vector<std::string> flags_held(const FiniteAlgebra& a, Family f) {
  std::vector<std::string> out;
  for (Sigma s : {Sigma(Sigma::E), Sigma(Sigma::WL), Sigma(Sigma::WR), Sigma(Sigma::C)})
    if (in_variety(a, VarietyId{f, s})) out.push_back(s.name());
  return out;
}

int cmd_algebra(const Config& cfg, const AlgebraSource& src, const std::string& family, const std::string& term,
                const std::vector<std::string>& assign) {
  no_sexp(cfg, "algebra");
  FiniteAlgebra a = src.load();
  VarietyId v = variety(a, family, cfg);
  if (!term.empty()) {
    Assignment val;
    for (const auto& kv : assign) {
      auto eq = kv.find('=');
      if (eq == std::string::npos) throw UsageError("--assign expects var=element");
      auto x = a.index_of(kv.substr(eq + 1));
      if (!x) throw AlgebraError("unknown element '" + kv.substr(eq + 1) + "'");
      val[kv.substr(0, eq)] = *x;
    }
    Formula t = parse_formula(term);
    for (const auto& x : variables(t))
      if (!val.count(x)) throw UsageError("no value for variable " + x);
    std::string value = a.names[eval_term(a, t, val)];
    if (cfg.json_out()) print_json({{"command", "algebra"}, {"term", to_string(t)}, {"value", value}});
    else std::cout << value << "\n";
    return kOk;
  }
  VarietyReport r = check_variety(a, v);
  if (cfg.json_out()) {
    print_json({{"command", "algebra"},
                {"variety", v.name()},
                {"size", a.size()},
                {"member", r.ok},
                {"detail", r.describe()},
                {"flags", flags_held(a, v.family)}});
  } else {
    std::cout << v.name() << ": " << (r.ok ? "member" : "not a member") << (r.ok ? "" : " (" + r.describe() + ")")
              << "\n";
    std::cout << "flags:";
    for (const auto& f : flags_held(a, v.family)) std::cout << " " << f;
    std::cout << "\n";
  }
  return r.ok ? kOk : kNo;
}

int cmd_complete(const Config& cfg, const AlgebraSource& src) {
  no_sexp(cfg, "complete");
  FiniteAlgebra a = src.load();
  if (!in_variety(a, VarietyId{Family::Msl, Sigma{}}))
    throw AlgebraError("completion needs a pointed sl-monoid: " + check_variety(a, VarietyId{Family::Msl, {}}).describe());
  IdealCompletion ic = ideal_completion(a);
  const FiniteAlgebra& b = ic.completion.algebra;
  EmbeddingReport emb = verify_embedding(a, b, ic.embedding);
  json flags = json::object();
  bool ok = emb.ok();
  for (const auto& f : flags_held(a, Family::Msl)) {
    VarietyReport r = check_variety(b, VarietyId{Family::FL, Sigma::parse(f)});
    flags[f] = r.ok ? "kept" : r.describe();
    ok = ok && r.ok;
  }
  VarietyReport fl = check_variety(b, VarietyId{Family::FL, {}});
  ok = ok && fl.ok;
  if (cfg.json_out()) {
    json j = embedding_json(a, ic);
    j["command"] = "complete";
    j["completion"] = to_json(b);
    j["fl_algebra"] = fl.ok;
    j["embedding_ok"] = emb.ok();
    j["embedding_failures"] = emb.failures;
    j["flags"] = flags;
    print_json(j);
  } else {
    std::cout << "completion: " << b.size() << " elements, " << (fl.ok ? "an FL-algebra" : fl.describe()) << "\n";
    for (Elem x = 0; x < a.size(); ++x)
      std::cout << "  " << a.names[x] << " -> " << b.names[ic.embedding[x]] << "\n";
    std::cout << "embedding: " << (emb.ok() ? "ok" : emb.failures.front()) << "\n";
    for (const auto& [f, r] : flags.items()) std::cout << "flag " << f << ": " << r.get<std::string>() << "\n";
  }
  return ok ? kOk : kNo;
}

int cmd_filters(const Config& cfg, const AlgebraSource& src, const std::string& family) {
  no_sexp(cfg, "filters");
  FiniteAlgebra a = src.load();
  VarietyId v = variety(a, family, cfg);
  if (!in_variety(a, v)) throw AlgebraError("algebra is not in " + v.name() + ": " + check_variety(a, v).describe());
  Calculus cal{v.sigma, family_language(v.family)};
  auto violation = verify_slice_closure(a, canonical_filter(a), cal, 3);
  CorrespondenceReport r = filter_congruence_correspondence(a, v);
  bool ok = r.ok() && !violation;
  if (cfg.json_out()) {
    print_json({{"command", "filters"},
                {"variety", v.name()},
                {"filters", r.filters},
                {"congruences", r.congruences},
                {"bijective", r.bijective},
                {"order_isomorphic", r.order_isomorphic},
                {"problem", r.problem},
                {"canonical_filter_closed", !violation}});
  } else {
    std::cout << v.name() << ": " << r.filters << " filters, " << r.congruences << " congruences, "
              << (r.ok() ? "order-isomorphic" : "mismatch " + r.problem) << "\n";
    std::cout << "canonical filter: "
              << (violation ? "not closed under " + std::string(rule_name(violation->rule)) + " at " + violation->instance
                            : std::string("closed"))
              << "\n";
  }
  return ok ? kOk : kNo;
}

int cmd_enumerate(const Config& cfg, const std::string& family, std::size_t size, bool count_only) {
  no_sexp(cfg, "enumerate");
  VarietyId v{parse_family(family), Sigma::parse(cfg.sigma)};
  if (v.family == Family::RL) throw UsageError("enumeration covers the pointed families only");
  const auto& algs = enumerate_algebras(v, size);
  if (cfg.json_out()) {
    json j{{"command", "enumerate"}, {"variety", v.name()}, {"size", size}, {"count", algs.size()}};
    if (!count_only) {
      j["algebras"] = json::array();
      for (const auto& a : algs) j["algebras"].push_back(to_json(a));
    }
    print_json(j);
  } else {
    std::cout << v.name() << " size " << size << ": " << algs.size() << "\n";
    if (!count_only)
      for (const auto& a : algs) std::cout << to_json(a).dump() << "\n";
  }
  return kOk;
}

// ---------------------------------------------------------------- hilbert

int cmd_hilbert(const Config& cfg, const std::string& preset, const std::string& proof_file,
                const std::vector<std::string>& hyps) {
  no_sexp(cfg, "hilbert");
  HilbertSystem sys = hilbert_system(preset, Sigma::parse(cfg.sigma));
  if (!proof_file.empty()) {
    HilbertProof p = parse_hilbert_proof(read_input(proof_file));
    std::vector<Formula> hs;
    for (const auto& h : hyps) hs.push_back(parse_formula(h));
    HilbertCheck c = check_hilbert_proof(p, sys, hs);
    if (cfg.json_out()) {
      print_json({{"command", "hilbert"},
                  {"system", sys.name},
                  {"ok", c.ok},
                  {"line", c.line},
                  {"message", c.message},
                  {"conclusion", p.lines.empty() ? json(nullptr) : json(to_string(p.lines.back().formula))}});
    } else {
      std::cout << (c.ok ? "ok" : "line " + std::to_string(c.line) + ": " + c.message) << "\n";
    }
    return c.ok ? kOk : kNo;
  }
  auto report = cross_check(sys, cfg.search());
  bool all = true;
  json items = json::array();
  for (const auto& r : report) {
    all = all && r.verdict == Verdict::Proved;
    items.push_back({{"item", r.item}, {"rule", r.rule}, {"verdict", verdict_name(r.verdict)}});
  }
  if (cfg.json_out()) {
    print_json({{"command", "hilbert"}, {"system", sys.name}, {"calculus", sys.calculus.sigma.name()}, {"items", items}});
  } else {
    for (const auto& r : report)
      std::cout << (r.rule ? "rule  " : "axiom ") << r.item << ": " << verdict_name(r.verdict) << "\n";
  }
  return all ? kOk : kUnknown;
}

// ---------------------------------------------------------------- corpus

int cmd_corpus(const Config& cfg, std::size_t count, int depth, int vars) {
  no_sexp(cfg, "corpus");
  std::mt19937_64 rng(seed_from_env());
  Language lang = Language::parse(cfg.lang);
  RandomFormulaOptions o;
  o.max_depth = depth;
  o.vars = vars;
  json out = json::array();
  for (std::size_t i = 0; i < count; ++i) {
    std::string s = to_string(random_sequent(rng, lang, o));
    if (cfg.json_out()) out.push_back(s);
    else std::cout << s << "\n";
  }
  if (cfg.json_out()) print_json(out);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Substructural sequent calculi, their algebras and Hilbert systems"};
  app.require_subcommand(1);
  Config cfg;
  std::string input, proof_file, family, term, preset = "HFL";
  std::vector<std::string> assign, hyps;
  bool check = false, count_only = false;
  std::size_t size = 2, count = 20;
  int depth = 3, vars = 3;
  AlgebraSource src;

  auto* prove_cmd = app.add_subcommand("prove", "cut-free proof search");
  add_common(prove_cmd, cfg, true);
  prove_cmd->add_option("sequent", input, "e.g. \"p, q => p * q\"")->required();

  auto* decide_cmd = app.add_subcommand("decide", "proof search and countermodel search side by side");
  add_common(decide_cmd, cfg, true);
  decide_cmd->add_option("--max-size", cfg.max_size, "largest countermodel tried")->check(CLI::Range(1, 5));
  decide_cmd->add_option("sequent", input)->required();

  auto* translate_cmd = app.add_subcommand("translate", "sequent to equation and back");
  add_common(translate_cmd, cfg, false);
  translate_cmd->add_option("input", input, "a sequent or an equation")->required();
  translate_cmd->add_flag("--check", check, "build and check the interderivability proofs");

  auto* mirror_cmd = app.add_subcommand("mirror", "mirror image of a sequent, formula or proof");
  add_common(mirror_cmd, cfg, false);
  mirror_cmd->add_option("input", input);
  mirror_cmd->add_option("--proof", proof_file, "proof as an s-expression file");

  auto* algebra_cmd = app.add_subcommand("algebra", "variety membership and term evaluation");
  add_common(algebra_cmd, cfg, false);
  src.add(algebra_cmd);
  algebra_cmd->add_option("--family", family, "Msl|Ml|PMsl|PMl|FL|RL (default: from the tables)");
  algebra_cmd->add_option("--eval", term, "term to evaluate");
  algebra_cmd->add_option("--assign", assign, "var=element")->delimiter(',');

  auto* complete_cmd = app.add_subcommand("complete", "ideal completion of a pointed sl-monoid");
  add_common(complete_cmd, cfg, false);
  src.add(complete_cmd);

  auto* filters_cmd = app.add_subcommand("filters", "filters against congruences");
  add_common(filters_cmd, cfg, false);
  src.add(filters_cmd);
  filters_cmd->add_option("--family", family);

  auto* enumerate_cmd = app.add_subcommand("enumerate", "algebras of a variety up to isomorphism");
  add_common(enumerate_cmd, cfg, false);
  enumerate_cmd->add_option("--family", family, "Msl|Ml|PMsl|PMl|FL")->required();
  enumerate_cmd->add_option("--size", size, "carrier size")->check(CLI::Range(1, 5));
  enumerate_cmd->add_flag("--count", count_only, "print only the number of algebras");

  auto* hilbert_cmd = app.add_subcommand("hilbert", "check a Hilbert proof or cross-check a preset");
  add_common(hilbert_cmd, cfg, true);
  hilbert_cmd->add_option("--preset", preset, "HFL|HFLe|vAR")->check(CLI::IsMember({"HFL", "HFLe", "vAR"}));
  hilbert_cmd->add_option("proof", proof_file, "proof text ('-' for stdin)");
  hilbert_cmd->add_option("--hyp", hyps, "hypothesis formula");

  auto* corpus_cmd = app.add_subcommand("corpus", "random sequents (seed from SUBSTRUKT_SEED)");
  add_common(corpus_cmd, cfg, false);
  corpus_cmd->add_option("--count", count);
  corpus_cmd->add_option("--depth", depth)->check(CLI::Range(0, 8));
  corpus_cmd->add_option("--vars", vars)->check(CLI::Range(1, 5));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*prove_cmd) return cmd_prove(cfg, input);
    if (*decide_cmd) return cmd_decide(cfg, input);
    if (*translate_cmd) return cmd_translate(cfg, input, check);
    if (*mirror_cmd) return cmd_mirror(cfg, input, proof_file);
    if (*algebra_cmd) return cmd_algebra(cfg, src, family, term, assign);
    if (*complete_cmd) return cmd_complete(cfg, src);
    if (*filters_cmd) return cmd_filters(cfg, src, family);
    if (*enumerate_cmd) return cmd_enumerate(cfg, family, size, count_only);
    if (*hilbert_cmd) return cmd_hilbert(cfg, preset, proof_file, hyps);
    if (*corpus_cmd) return cmd_corpus(cfg, count, depth, vars);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNoInput;
  } catch (const SyntaxError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kData;
  } catch (const AlgebraError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kData;
  } catch (const CompletionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kSoftware;
  }
  return kUsage;
}
