#include <cmath>

#include "doctest.h"

#include "bawb/eval.hpp"
#include "bawb/qprop.hpp"
#include "golden.hpp"
#include "oracles.hpp"

using namespace bawb;

namespace {

QAssignment bits_for(const Formula& f, const std::vector<std::uint64_t>& values, int n, Env& env) {
  QAssignment a;
  std::size_t i = 0;
  for (const auto& v : free_vars(f)) {
    env[v] = values[i];
    assign_bits(a, v, values[i], n);
    ++i;
  }
  return a;
}

}  // namespace

TEST_CASE("constructors share nodes") {
  QProp p = qvar("p");
  CHECK(qand(p, qnot(p)) == qand(qvar("p"), qnot(qvar("p"))));
  CHECK(qand(p, qtrue()) != p);
  CHECK(qsize(qand(qnot(p), qnot(p))) == 3);
  CHECK_THROWS_AS(qvar(""), QError);
}

TEST_CASE("qprop text round trip") {
  QProp q = qparse("EX p: ALL q: p & q | ~r");
  CHECK(q == qexists("p", qforall("q", qor(qand(qvar("p"), qvar("q")), qnot(qvar("r"))))));
  CHECK(qparse("a & b & c") == qand(qand(qvar("a"), qvar("b")), qvar("c")));
  CHECK(qparse("v.x.0 | v.y'.1") == qor(qvar("v.x.0"), qvar("v.y'.1")));
  CHECK_THROWS_AS(qparse("p &"), QError);
  CHECK_THROWS_AS(qparse("EX : p"), QError);
  oracle::RandomQ gen(3);
  for (int i = 0; i < 500; ++i) {
    QProp r = gen.formula(5);
    CHECK(qparse(qrender(r)) == r);
  }
}

TEST_CASE("free variables and substitution") {
  QProp q = qparse("EX p: p & q");
  CHECK(qfree_vars(q) == std::set<std::string>{"q"});
  CHECK(qsubstitute(q, {{"q", qtrue()}}) == qparse("EX p: p & 1"));
  CHECK(qsubstitute(q, {{"p", qfalse()}}) == q);
  CHECK_THROWS_AS(qsubstitute(q, {{"q", qvar("p")}}), QError);
}

TEST_CASE("qclassify examples") {
  CHECK(qclassify(qparse("p & ~q")) == QClass{QClassKind::QuantifierFree, 0});
  CHECK(qclassify(qparse("EX p: ALL q: p & q")) == QClass{QClassKind::SigmaQ, 2});
  CHECK(qclassify(qparse("~(EX p: p)")) == QClass{QClassKind::PiQ, 1});
  CHECK(qclassify(qparse("(EX p: p) & (ALL q: q)")) == QClass{QClassKind::SigmaQ, 2});
  CHECK(qin_class(qparse("EX p: p"), {QClassKind::PiQ, 2}));
  CHECK_FALSE(qin_class(qparse("EX p: p"), {QClassKind::PiQ, 1}));
  CHECK(qclass_within({QClassKind::QuantifierFree, 0}, {QClassKind::PiQ, 1}));
  CHECK(qclass_within({QClassKind::SigmaQ, 1}, {QClassKind::SigmaQ, 3}));
  CHECK_FALSE(qclass_within({QClassKind::SigmaQ, 2}, {QClassKind::PiQ, 2}));
}

TEST_CASE("qclassify agrees with the recursive definition and is self-dual") {
  oracle::RandomQ gen(5);
  for (int i = 0; i < 3000; ++i) {
    QProp q = gen.formula(6);
    QClass c = qclassify(q);
    CHECK(c == oracle::qleast_class(q));
    QClass d = qclassify(qnot(q));
    CHECK(d.level == c.level);
    if (c.kind == QClassKind::QuantifierFree) CHECK(d.kind == c.kind);
    for (int lvl = 0; lvl <= 4; ++lvl) {
      CHECK(qin_class(q, {QClassKind::SigmaQ, lvl}) == oracle::qmember(q, oracle::Side::Sigma, lvl));
      CHECK(qin_class(q, {QClassKind::PiQ, lvl}) == oracle::qmember(q, oracle::Side::Pi, lvl));
    }
  }
}

TEST_CASE("qeval") {
  CHECK(qeval(qparse("EX p: p"), {}));
  CHECK(qeval(qparse("ALL p: p | ~p"), {}));
  CHECK_FALSE(qeval(qparse("ALL p: p"), {}));
  CHECK(qeval(qparse("p & ~q"), {{"p", true}, {"q", false}}));
  CHECK(qeval(qparse("EX p: p & q"), {{"q", true}}));
  CHECK_THROWS_AS(qeval(qparse("p & q"), {{"p", true}}), QError);
  QEvalOptions shallow;
  shallow.max_quantifier_depth = 1;
  CHECK_THROWS_AS(qeval(qparse("EX p: ALL q: p | q"), {}, shallow), QError);
}

TEST_CASE("translation of x = 0 at n = 2") {
  Translation t = translate(parse_formula("x = 0"), 2);
  CHECK(qclassify(t.root).kind == QClassKind::QuantifierFree);
  REQUIRE(t.free_bits.at("x") == std::vector<std::string>{"v.x.0", "v.x.1"});
  CHECK(t.provenance.at("v.x.1").source == "x");
  CHECK(t.provenance.at("v.x.1").bit == 1);
  for (bool b0 : {false, true})
    for (bool b1 : {false, true}) CHECK(qeval(t.root, {{"v.x.0", b0}, {"v.x.1", b1}}) == (!b0 && !b1));
}

TEST_CASE("translation of a halving witness at n = 3") {
  Formula f = parse_formula("EX y <= x. y + y = x");
  Translation t = translate(f, 3);
  CHECK(qclassify(t.root) == QClass{QClassKind::SigmaQ, 1});
  for (std::uint64_t x = 0; x < 8; ++x) {
    QAssignment a;
    assign_bits(a, "x", x, 3);
    CHECK(qeval(t.root, a) == (x % 2 == 0));
    CHECK(qeval(t.root, a) == eval(f, {{"x", x}}));
  }
}

TEST_CASE("translation errors") {
  CHECK_THROWS_AS(translate(parse_formula("x = 0 | EX y <= x. y = x"), 2), QError);
  CHECK_THROWS_AS(translate(parse_formula("x = 0"), 0), QError);
  CHECK_THROWS_AS(translate(parse_formula("x = 0"), 9), QError);
}

TEST_CASE("bound variables that clash get primed names") {
  Formula f = parse_formula("EX y <= x. EX y <= x + 1. y = x");
  Translation t = translate(f, 2);
  REQUIRE(t.provenance.count("v.y'.0"));
  CHECK(t.provenance.at("v.y'.0").source == "y");
  CHECK(t.provenance.count("v.y.0"));
  for (std::uint64_t x = 0; x < 4; ++x) {
    QAssignment a;
    assign_bits(a, "x", x, 2);
    CHECK(qeval(t.root, a) == eval(f, {{"x", x}}));
  }
}

TEST_CASE("truth correspondence on the corpus for n up to 3") {
  for (const auto& e : golden::formula_corpus()) {
    Formula f = parse_formula(e.text);
    std::size_t k = free_vars(f).size();
    REQUIRE(k <= 2);
    for (int n = 1; n <= 3; ++n) {
      Translation t = translate(f, n);
      std::uint64_t N = std::uint64_t{1} << n;
      std::uint64_t total = k == 0 ? 1 : (k == 1 ? N : N * N);
      for (std::uint64_t m = 0; m < total; ++m) {
        Env env;
        QAssignment a = bits_for(f, {m % N, m / N}, n, env);
        INFO(e.text, " n=", n, " m=", m);
        CHECK(qeval(t.root, a) == eval(f, env));
      }
    }
  }
}

TEST_CASE("class correspondence on the corpus for n up to 8") {
  for (const auto& e : golden::formula_corpus()) {
    Formula f = parse_formula(e.text);
    QuantClass c = classify(f);
    for (int n = 1; n <= 8; ++n) {
      QClass q = qclassify(translate(f, n).root);
      INFO(e.text, " n=", n);
      switch (c.kind) {
        case QKind::SigmaHatB0: CHECK(q.kind == QClassKind::QuantifierFree); break;
        case QKind::SigmaHat: CHECK(qin_class(translate(f, n).root, {QClassKind::SigmaQ, c.level})); break;
        case QKind::PiHat: CHECK(qin_class(translate(f, n).root, {QClassKind::PiQ, c.level})); break;
        case QKind::NonStrict: FAIL("corpus formula outside the strict classes"); break;
      }
    }
  }
}

TEST_CASE("atom translations grow polynomially") {
  // degree per atom kind, checked as log2(size(8) / size(4)) <= d + 0.6
  const std::vector<std::pair<std::string, int>> atoms = {
      {"x + y = z", 1},         {"x <= y", 1},          {"x monus y = z", 1},   {"x * y = z", 2},
      {"x # y = z", 2},         {"len(x) = y", 1},      {"div2(x, y) = z", 2},  {"mod2(x, y) = z", 2},
      {"pair(x, y) = z", 2},    {"left(x) = y", 2},     {"slice(x, y, z) = x", 2}, {"seq(x, y) = z", 2},
      {"cond(x, y, z) = x", 1}, {"half(x) = y", 1},
  };
  for (const auto& [text, d] : atoms) {
    Formula f = parse_formula(text);
    double s4 = static_cast<double>(qsize(translate(f, 4).root));
    double s8 = static_cast<double>(qsize(translate(f, 8).root));
    INFO(text, " sizes ", s4, " ", s8);
    CHECK(std::log2(s8 / s4) <= d + 0.6);
  }
}

TEST_CASE("qcir export") {
  std::string doc = export_qcir(qparse("EX p: p"));
  CHECK(doc.rfind("#QCIR-G14\n", 0) == 0);
  CHECK(doc.find("exists(p)") != std::string::npos);
  CHECK(doc.find("output(p)") != std::string::npos);

  std::string open = export_qcir(qparse("q & (EX p: p | q)"));
  CHECK(open.find("free(q)") != std::string::npos);
  CHECK(open.find("= exists(p; ") != std::string::npos);

  std::string odd = export_qcir(qparse("EX v.x.0: v.x.0 & 1"));
  CHECK(odd.find("exists(v_x_0)") != std::string::npos);
  CHECK(odd.find("and()") != std::string::npos);
}

TEST_CASE("qcir round trip on random closed formulas") {
  oracle::RandomQ gen(17, {"p", "q", "r", "s"});
  for (int i = 0; i < 50; ++i) {
    QProp q = gen.closed(6);
    QProp back = import_qcir(export_qcir(q));
    INFO(qrender(q));
    CHECK(qfree_vars(back).empty());
    CHECK(qeval(back, {}) == qeval(q, {}));
  }
  QProp named = qparse("ALL v.x.0: EX v.x'.0: v.x.0 | ~v.x'.0");
  CHECK(qeval(import_qcir(export_qcir(named)), {}) == qeval(named, {}));
}

TEST_CASE("qcir import") {
  QProp q = import_qcir("#QCIR-G14\nforall(a)\nexists(b)\noutput(g2)\ng1 = xor(a, b)\ng2 = ite(g1, a, a)\n");
  CHECK_FALSE(qeval(q, {}));
  CHECK(qeval(import_qcir("#QCIR-G14\nforall(a)\nexists(b)\noutput(g1)\ng1 = xor(a, b)\n"), {}));
  CHECK_THROWS_AS(import_qcir("output(a)\n"), QError);
  CHECK_THROWS_AS(import_qcir("#QCIR-G14\nexists(a)\n"), QError);
  CHECK_THROWS_AS(import_qcir("#QCIR-G14\noutput(g)\ng = nand(a)\n"), QError);
}

TEST_CASE("qdimacs export is equisatisfiable") {
  std::string doc = export_qdimacs(qparse("EX p: p"));
  CHECK(doc.find("c ") == 0);
  CHECK(doc.find("equisatisfiable") != std::string::npos);
  CHECK(oracle::solve_qdimacs(oracle::read_qdimacs(doc)));
  CHECK_FALSE(oracle::solve_qdimacs(oracle::read_qdimacs(export_qdimacs(qparse("ALL p: p & ~(EX q: q & ~q)")))));

  oracle::RandomQ gen(23, {"p", "q", "r"});
  for (int i = 0; i < 60; ++i) {
    QProp q = gen.closed(5);
    oracle::Qdimacs d = oracle::read_qdimacs(export_qdimacs(q));
    INFO(qrender(q));
    CHECK(oracle::solve_qdimacs(d) == qeval(q, {}));
  }
  // free variables read existentially
  QProp open = qparse("ALL p: p | q");
  CHECK(oracle::solve_qdimacs(oracle::read_qdimacs(export_qdimacs(open))));
}

TEST_CASE("qdimacs export of a translated formula") {
  Formula f = parse_formula("EX y <= x. y + y = x & 1 <= x");
  Translation t = translate(f, 3);
  QProp closed = t.root;
  for (const auto& b : t.free_bits.at("x")) closed = qforall(b, closed);
  CHECK_FALSE(oracle::solve_qdimacs(oracle::read_qdimacs(export_qdimacs(closed))));
  QProp some = t.root;
  for (const auto& b : t.free_bits.at("x")) some = qexists(b, some);
  CHECK(oracle::solve_qdimacs(oracle::read_qdimacs(export_qdimacs(some))));
}
