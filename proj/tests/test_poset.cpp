#include <set>

#include "doctest.h"

#include "bawb/poset.hpp"
#include "golden.hpp"
#include "json.hpp"

using namespace bawb;

namespace {

std::string id(const FragmentPoset& p, int i) { return p.nodes[static_cast<std::size_t>(i)].id(); }

std::map<std::pair<std::string, std::string>, const CriticalPair*> by_name(const FragmentPoset& p,
                                                                            const std::vector<CriticalPair>& cps) {
  std::map<std::pair<std::string, std::string>, const CriticalPair*> out;
  for (const auto& c : cps) out[{p.nodes[static_cast<std::size_t>(c.a)].id(), p.nodes[static_cast<std::size_t>(c.b)].id()}] = &c;
  return out;
}

}  // namespace

TEST_CASE("poset sizes and arguments") {
  for (int l = 2; l <= 6; ++l) {
    auto r = build_poset(PosetKind::R, l);
    auto t = build_poset(PosetKind::T, l);
    CHECK(r.elements().size() == static_cast<std::size_t>(4 + 10 * l));
    CHECK(t.elements().size() == static_cast<std::size_t>(4 + 8 * l));
  }
  CHECK_THROWS_AS(build_poset(PosetKind::R, 1), PosetError);
  auto p = build_poset(PosetKind::R, 3);
  CHECK(p.find("sigma2-PIND") >= 0);
  CHECK(p.find("pi0-IND-") < 0);
  CHECK(p.find("sigma0-PIND") < 0);
  CHECK(p.nodes[static_cast<std::size_t>(p.find("sigma2-PIND"))].label() == "S^2_2");
}

TEST_CASE("generator edges, antisymmetry and the quotient map") {
  const std::set<std::string> tags = {"param-free-rule", "param-free", "pi-to-sigma", "pind-to-ind",
                                      "ind-to-pind-rule", "additive", "base", "rule-collapse"};
  auto r = build_poset(PosetKind::R, 5);
  auto t = build_poset(PosetKind::T, 5);
  for (const auto* p : {&r, &t}) {
    for (const auto& e : p->edges) {
      CHECK(tags.count(e.tag) == 1);
      CHECK(p->leq(e.lo, e.hi));
    }
    auto el = p->elements();
    for (int a : el) {
      CHECK(p->leq(0, a));
      for (int b : el)
        if (a != b) CHECK_FALSE((p->leq(a, b) && p->leq(b, a)));
    }
  }
  for (const auto& e : r.edges) CHECK(e.tag != "rule-collapse");
  // the quotient map is monotone
  for (std::size_t a = 0; a < r.nodes.size(); ++a)
    for (std::size_t b = 0; b < r.nodes.size(); ++b)
      if (r.leq(static_cast<int>(a), static_cast<int>(b))) CHECK(t.leq(t.canon[a], t.canon[b]));
  CHECK(t.canon[static_cast<std::size_t>(t.find("sigma3-PINDR"))] == t.find("sigma2-IND"));
  CHECK(t.canon[static_cast<std::size_t>(t.find("pi3-PINDR"))] == t.find("sigma2-INDR"));
  // no relation beyond the generators: the full schemes stay strict
  CHECK_FALSE(r.leq(r.find("sigma2-IND"), r.find("sigma2-PIND")));
  CHECK_FALSE(r.leq(r.find("sigma1-PIND"), r.find("pi2-IND-")));
}

TEST_CASE("interior critical pairs are exactly the expected families") {
  for (int l = 2; l <= 6; ++l)
    for (bool rules : {true, false}) {
      CAPTURE(l);
      CAPTURE(rules);
      auto p = build_poset(rules ? PosetKind::R : PosetKind::T, l);
      auto cps = critical_pairs(p, true);
      auto expected = golden::expected_critical_pairs(rules, l);
      auto got = by_name(p, cps);
      std::set<std::pair<std::string, std::string>> g, e;
      for (const auto& [k, _] : got) g.insert(k);
      for (const auto& [k, _] : expected) e.insert(k);
      CHECK(g == e);
      for (const auto& [k, fam] : expected) {
        if (!got.count(k)) continue;
        const CriticalPair& c = *got[k];
        CHECK_FALSE(c.boundary);
        CHECK(c.subsumed == (fam == "rules-subsumed"));
        if (c.subsumed) {
          REQUIRE(c.witness);
          auto all = critical_pairs(p, false);
          bool present = std::any_of(all.begin(), all.end(), [&](const CriticalPair& x) {
            return x.a == c.witness->first && x.b == c.witness->second;
          });
          CHECK(present);
          CHECK(p.leq(c.b, c.witness->second));
        }
      }
    }
}

TEST_CASE("critical pairs satisfy the definition via covers") {
  for (bool rules : {true, false}) {
    auto p = build_poset(rules ? PosetKind::R : PosetKind::T, 4);
    auto hasse = hasse_edges(p);
    auto all = critical_pairs(p, false);
    std::set<std::pair<int, int>> listed;
    for (const auto& c : all) listed.insert({c.a, c.b});
    auto el = p.elements();
    std::size_t count = 0;
    for (int a : el)
      for (int b : el) {
        if (p.leq(a, b)) continue;
        bool crit = true;
        for (auto [lo, hi] : hasse) {
          if (hi == a && !p.leq(lo, b)) crit = false;
          if (lo == b && !p.leq(a, hi)) crit = false;
        }
        CHECK(crit == (listed.count({a, b}) == 1));
        count += crit;
      }
    CHECK(count == all.size());
    for (const auto& c : all)
      CHECK(c.boundary == (p.nodes[static_cast<std::size_t>(c.a)].level >= 4 || p.nodes[static_cast<std::size_t>(c.b)].level >= 4));
  }
}

TEST_CASE("critical pairs form a basis of non-inequalities") {
  for (int l = 2; l <= 6; ++l)
    for (auto k : {PosetKind::R, PosetKind::T}) {
      auto p = build_poset(k, l);
      auto full = check_basis(p, critical_pairs(p, false), l);
      CHECK(full.ok);
      auto inner = check_basis(p, critical_pairs(p, true), l - 2);
      CHECK(inner.ok);
      CHECK(inner.checked > 0);
      // dropping any pair breaks the basis
      auto cps = critical_pairs(p, false);
      std::vector<CriticalPair> fewer(cps.begin() + 1, cps.end());
      CHECK_FALSE(check_basis(p, fewer, l).ok);
    }
}

TEST_CASE("Hasse diagram per level matches the figures") {
  for (bool rules : {true, false}) {
    auto p = build_poset(rules ? PosetKind::R : PosetKind::T, 5);
    auto hasse = hasse_edges(p);
    for (int i = 1; i <= 5; ++i) {
      CAPTURE(i);
      std::set<std::pair<std::string, std::string>> got;
      for (auto [lo, hi] : hasse)
        if (!p.nodes[static_cast<std::size_t>(hi)].base && p.nodes[static_cast<std::size_t>(hi)].level == i)
          got.insert({id(p, hi), id(p, lo)});
      CHECK(got == golden::figure_edges(rules, i));
    }
    std::set<std::pair<std::string, std::string>> bottom;
    for (auto [lo, hi] : hasse)
      if (p.nodes[static_cast<std::size_t>(hi)].level == 0) bottom.insert({id(p, hi), id(p, lo)});
    CHECK(bottom == std::set<std::pair<std::string, std::string>>{
                        {"sigma0-IND", "sigma0-IND-"}, {"sigma0-IND-", "sigma0-INDR"}, {"sigma0-INDR", "BTC"}});
  }
}

TEST_CASE("DOT output is stable") {
  for (auto [k, file] : {std::pair{PosetKind::R, "/poset/PR-4.dot"}, std::pair{PosetKind::T, "/poset/PT-4.dot"}}) {
    auto p = build_poset(k, 4);
    CHECK(to_dot(p, true) == golden::read_file(golden::dir() + file));
    std::string flat = to_dot(p, false);
    CHECK(flat.find("cluster") == std::string::npos);
    CHECK(flat.find("\"sigma2-IND\" -> \"sigma2-PIND\";") != std::string::npos);
  }
}

TEST_CASE("JSON listing") {
  auto p = build_poset(PosetKind::R, 3);
  auto cps = critical_pairs(p, false);
  auto j = nlohmann::json::parse(to_json(p, cps));
  CHECK(j["kind"] == "R");
  CHECK(j["nodes"].size() == p.nodes.size());
  CHECK(j["generator_edges"].size() == p.edges.size());
  CHECK(j["critical_pairs"].size() == cps.size());
  int subsumed = 0;
  for (const auto& c : j["critical_pairs"])
    if (c["subsumed"].get<bool>()) {
      ++subsumed;
      CHECK(c["witness"].size() == 2);
    }
  CHECK(subsumed == 3);
}

TEST_CASE("neither poset is a lattice") {
  for (auto k : {PosetKind::R, PosetKind::T}) {
    auto p = build_poset(k, 4);
    auto w = find_non_lattice_witness(p);
    REQUIRE(w);
    REQUIRE(w->minimal_upper_bounds.size() >= 2);
    const auto& ub = w->minimal_upper_bounds;
    for (int c : ub) {
      CHECK(p.leq(w->a, c));
      CHECK(p.leq(w->b, c));
    }
    for (int c : ub)
      for (int d : ub)
        if (c != d) CHECK_FALSE(p.leq(c, d));
    for (int c : p.elements())
      if (p.leq(w->a, c) && p.leq(w->b, c)) {
        int below = 0;
        for (int d : ub) below += p.leq(d, c);
        CHECK(below >= 1);
      }
  }
}
