#include <filesystem>
#include <random>

#include "doctest.h"

#include "bawb/sequent.hpp"
#include "golden.hpp"

using namespace bawb;

namespace {

Proof load(const std::string& name) { return parse_proof(golden::read_file(golden::dir() + "/proofs/" + name + ".jsonl")); }

std::string stem(const std::string& path) { return std::filesystem::path(path).stem().string(); }

ProofStep step(Rule r, std::vector<int> prem, std::vector<std::string> ante, std::vector<std::string> succ) {
  ProofStep s;
  s.rule = r;
  s.premises = std::move(prem);
  for (const auto& a : ante) s.conclusion.ante.push_back(qparse(a));
  for (const auto& a : succ) s.conclusion.succ.push_back(qparse(a));
  return s;
}

std::vector<ProofStep> excluded_middle() {
  return {step(Rule::Axiom, {}, {"p"}, {"p"}), step(Rule::NotR, {0}, {}, {"p", "~p"}),
          step(Rule::OrR, {1}, {}, {"p | ~p"})};
}

}  // namespace

TEST_CASE("system names") {
  CHECK(parse_system("G0").extended_frege());
  CHECK(parse_system("G*2").tree_like);
  CHECK(parse_system("G2+xi").level == 2);
  CHECK(parse_system("G*1").name() == "G*1");
  CHECK_THROWS(parse_system("G*0"));
  CHECK_THROWS(parse_system("H1"));
  CHECK_THROWS(parse_system("G"));
}

TEST_CASE("golden proofs are accepted and round-trip") {
  auto files = golden::proof_files();
  REQUIRE(files.size() == 10);
  std::set<std::string> systems;
  for (const auto& f : files) {
    std::string text = golden::read_file(f);
    Proof p = parse_proof(text);
    INFO(stem(f));
    ProofVerdict v = check_proof(p);
    CHECK_MESSAGE(v.accepted, v.reason, " at ", v.step, ": ", v.message);
    CHECK(write_proof(p) == text);
    systems.insert(p.system.name());
  }
  CHECK(systems == std::set<std::string>{"G0", "G1", "G*1", "G1+xi", "G2"});
}

TEST_CASE("excluded middle and an injected cut") {
  SystemSpec g1 = parse_system("G1");
  CHECK(check_proof(excluded_middle(), g1).accepted);
  CHECK(reflection_test(excluded_middle(), g1, {{"p", false}}));

  Proof p{g1, excluded_middle()};
  bool found = false;
  for (const auto& m : proof_mutants(p)) {
    if (m.cls != "cut-class") continue;
    ProofStep last = m.proof.steps.back();
    if (qclassify(last.cut) != QClass{QClassKind::PiQ, 2}) continue;
    found = true;
    ProofVerdict v = check_proof(m.proof);
    CHECK_FALSE(v.accepted);
    CHECK(v.reason == "cut-class");
    CHECK(v.step == static_cast<int>(m.proof.steps.size()) - 1);
    // the same steps are fine once the level admits the cut
    SystemSpec g3 = parse_system("G3");
    CHECK(check_proof(m.proof.steps, g3).accepted);
  }
  CHECK(found);
}

TEST_CASE("extension variable in its own definition") {
  Proof p = load("g0-extension-cut");
  REQUIRE(p.steps[0].rule == Rule::Extension);
  p.steps[0].ext_def = qand(p.steps[0].ext_def, qvar(p.steps[0].ext_var));
  ProofVerdict v = check_proof(p);
  CHECK_FALSE(v.accepted);
  CHECK(v.reason == "extension-cycle");
  CHECK(v.step == 0);
}

TEST_CASE("reason codes for individual faults") {
  SystemSpec g1 = parse_system("G1");
  auto em = excluded_middle();

  auto bad_index = em;
  bad_index[1].premises = {1};
  CHECK(check_proof(bad_index, g1).reason == "bad-premise");

  auto dag = em;
  dag.push_back(step(Rule::WeakenL, {2}, {"q"}, {"p | ~p"}));
  dag.push_back(step(Rule::WeakenL, {2}, {"r"}, {"p | ~p"}));
  dag.push_back(step(Rule::Exchange, {3}, {"q"}, {"p | ~p"}));
  CHECK(check_proof(dag, g1).accepted);
  SystemSpec tree = parse_system("G*1");
  CHECK(check_proof(dag, tree).reason == "not-tree-like");

  auto ex = em;
  ex.push_back(step(Rule::ExistsR, {2}, {}, {"EX s: s | ~p"}));
  ex.back().witness = qparse("EX t: t");
  CHECK(check_proof(ex, g1).reason == "witness");
  ex.back().witness = qparse("p");
  CHECK(check_proof(ex, g1).accepted);
  SystemSpec g0 = parse_system("G0");
  CHECK(check_proof(ex, g0).reason == "quantifier-rule");

  std::vector<ProofStep> ext = {step(Rule::Extension, {}, {}, {"(~e | p) & (e | ~p)"}),
                                step(Rule::Axiom, {}, {"p"}, {"p"})};
  ext[0].ext_var = "e";
  ext[0].ext_def = qparse("p");
  CHECK(check_proof(ext, g0).accepted);
  CHECK(check_proof(ext, g1).reason == "extension-not-allowed");
  ext[0].ext_def = qparse("EX s: s");
  CHECK(check_proof(ext, g0).reason == "extension-def");
  ext.pop_back();
  ext[0].ext_def = qparse("p");
  CHECK(check_proof(ext, g0).reason == "extension-fresh");

  std::vector<ProofStep> xi = {step(Rule::AxiomXi, {}, {}, {"1"})};
  xi[0].n = 1;
  CHECK(check_proof(xi, g1).reason == "xi-not-allowed");
  SystemSpec high = g1;
  high.xi = parse_formula("EX y <= x. ALL z <= y. z <= x");
  CHECK(check_proof(xi, high).reason == "system");

  auto cut0 = em;
  cut0.push_back(step(Rule::WeakenR, {2}, {}, {"p | ~p", "EX s: s"}));
  cut0.push_back(step(Rule::WeakenL, {2}, {"EX s: s"}, {"p | ~p"}));
  cut0.push_back(step(Rule::Cut, {3, 4}, {}, {"p | ~p"}));
  cut0.back().cut = qparse("EX s: s");
  CHECK(check_proof(cut0, g1).accepted);
  CHECK(check_proof(cut0, g0).reason == "cut-class");
}

TEST_CASE("translation instances are matched exactly") {
  Proof p = load("g1xi-successor");
  REQUIRE(p.steps[0].rule == Rule::AxiomXi);
  CHECK(check_proof(p).accepted);
  Proof renamed = p;
  renamed.steps[0].args.erase("v.x.1");
  renamed.steps[0].args["v.y.1"] = qparse("q");
  CHECK(check_proof(renamed).reason == "xi-instance");
  Proof other = p;
  other.system.xi = parse_formula("x <= x + x + 1");
  CHECK(check_proof(other).reason == "xi-instance");
}

TEST_CASE("malformed proof files") {
  CHECK_THROWS_AS(parse_proof(""), ProofFormatError);
  CHECK_THROWS_AS(parse_proof("{\"rule\":\"axiom\"}\n"), ProofFormatError);
  try {
    parse_proof("{\"system\":\"G1\"}\n{\"rule\":\"axiom\",\"ante\":[\"p\"],\"succ\":[\"p\"]}\n{\"rule\":\"jump\"}\n");
    FAIL("expected a format error");
  } catch (const ProofFormatError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse_proof("{\"system\":\"G1\"}\n{\"rule\":\"axiom\",\"ante\":[\"p &\"]}\n"), ProofFormatError);
  CHECK_THROWS_AS(parse_proof("{\"system\":\"G1\"}\nnot json\n"), ProofFormatError);
  CHECK_THROWS_AS(parse_proof("{\"system\":\"G1\",\"xi\":\"x <=\"}\n"), ProofFormatError);
}

TEST_CASE("every mutant of every golden proof is rejected") {
  std::map<std::string, int> per_class;
  std::size_t total = 0;
  for (const auto& f : golden::proof_files()) {
    Proof p = parse_proof(golden::read_file(f));
    std::set<std::string> classes;
    for (const auto& m : proof_mutants(p)) {
      ++total;
      ++per_class[m.cls];
      classes.insert(m.cls);
      ProofVerdict v = check_proof(m.proof);
      INFO(stem(f), ": ", m.cls, " / ", m.what, " -> ", v.reason, " ", v.message);
      CHECK_FALSE(v.accepted);
      auto ok = expected_reasons(m.cls);
      CHECK(std::find(ok.begin(), ok.end(), v.reason) != ok.end());
    }
    CHECK(classes.size() == mutation_classes().size());
  }
  CHECK(total >= 50);
  for (const auto& c : mutation_classes()) CHECK(per_class[c] >= 10);
}

TEST_CASE("reflection holds on every golden proof") {
  for (const auto& f : golden::proof_files()) {
    Proof p = parse_proof(golden::read_file(f));
    REQUIRE(check_proof(p).accepted);
    Sequent end = end_sequent(p.steps);
    std::set<std::string> vars;
    for (const auto* side : {&end.ante, &end.succ})
      for (QProp q : *side)
        for (const auto& v : qfree_vars(q)) vars.insert(v);
    REQUIRE(vars.size() <= 10);
    std::vector<std::string> vs(vars.begin(), vars.end());
    for (std::uint32_t m = 0; m < (1u << vs.size()); ++m) {
      QAssignment a;
      for (std::size_t k = 0; k < vs.size(); ++k) a[vs[k]] = (m >> k) & 1u;
      INFO(stem(f), " assignment ", m);
      CHECK(reflection_test(p.steps, p.system, a));
    }
  }
}

TEST_CASE("successor axiom instances hold under random assignments") {
  Proof p = load("g1xi-successor");
  REQUIRE(check_proof(p).accepted);
  std::mt19937_64 rng(42);
  for (int i = 0; i < 20; ++i) {
    QAssignment a{{"p", rng() % 2 == 1}, {"q", rng() % 2 == 1}, {"r", rng() % 2 == 1}, {"s", rng() % 2 == 1}};
    CHECK(reflection_test(p.steps, p.system, a));
  }
}

TEST_CASE("tree-like acceptance carries over to the dag system") {
  for (const auto& f : golden::proof_files()) {
    Proof p = parse_proof(golden::read_file(f));
    if (!p.system.tree_like) continue;
    SystemSpec dag = p.system;
    dag.tree_like = false;
    CHECK(check_proof(p.steps, dag).accepted);
  }
}

TEST_CASE("extension variables are filled in before evaluation") {
  Proof p = load("g0-modus-ponens");
  CHECK(reflection_test(p.steps, p.system, {{"p", true}, {"q", true}}));
  CHECK(reflection_test(p.steps, p.system, {{"p", true}, {"q", false}}));
  Sequent bogus = end_sequent(p.steps);
  bogus.ante.clear();
  CHECK_FALSE(eval_sequent(bogus, {{"p", false}, {"q", false}}));
  CHECK(render(end_sequent(p.steps)) == "p, ~p | q => q");
}
