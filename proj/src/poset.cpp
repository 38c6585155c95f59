#include "bawb/poset.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <tuple>

#include "json.hpp"

namespace bawb {

std::string FragmentNode::id() const {
  if (base) return "BTC";
  std::string s = side == SchemeSide::Sigma ? "sigma" : "pi";
  s += std::to_string(level);
  s += family == SchemeFamily::IND ? "-IND" : "-PIND";
  if (form == SchemeForm::ParamFree) s += "-";
  if (form == SchemeForm::Rule) s += "R";
  return s;
}

std::string FragmentNode::label() const {
  if (!base && form == SchemeForm::Axiom)
    return std::string(family == SchemeFamily::IND ? "T^" : "S^") + std::to_string(level) + "_2";
  return id();
}

int FragmentPoset::find(const std::string& id) const {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].id() == id) return static_cast<int>(i);
  return -1;
}

std::vector<int> FragmentPoset::elements() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (canon[i] == static_cast<int>(i)) out.push_back(static_cast<int>(i));
  return out;
}

namespace {

using Key = std::tuple<int, SchemeSide, SchemeFamily, SchemeForm>;

}  // namespace

FragmentPoset build_poset(PosetKind kind, int max_level) {
  if (max_level < 2) throw PosetError("max level must be at least 2");
  FragmentPoset p;
  p.kind = kind;
  p.max_level = max_level;
  std::map<Key, int> index;
  FragmentNode base;
  base.base = true;
  p.nodes.push_back(base);
  auto add = [&](int lvl, SchemeSide s, SchemeFamily f, SchemeForm m) {
    FragmentNode n;
    n.level = lvl;
    n.side = s;
    n.family = f;
    n.form = m;
    index[{lvl, s, f, m}] = static_cast<int>(p.nodes.size());
    p.nodes.push_back(n);
  };
  using S = SchemeSide;
  using F = SchemeFamily;
  using M = SchemeForm;
  for (int l = 0; l <= max_level; ++l) {
    for (F f : {F::IND, F::PIND}) {
      // the sharply bounded level has only the IND schemes, and there Pi is Sigma
      if (l == 0 && f == F::PIND) continue;
      add(l, S::Sigma, f, M::Axiom);
      add(l, S::Sigma, f, M::ParamFree);
      add(l, S::Sigma, f, M::Rule);
      if (l > 0) {
        add(l, S::Pi, f, M::ParamFree);
        add(l, S::Pi, f, M::Rule);
      }
    }
  }
  auto node = [&](int l, S s, F f, M m) -> int {
    if (l < 0 || l > max_level) return -1;
    if (m == M::Axiom) s = S::Sigma;  // the two full schemes coincide
    if (l == 0) s = S::Sigma;
    auto it = index.find({l, s, f, m});
    return it == index.end() ? -1 : it->second;
  };
  auto edge = [&](int lo, int hi, const char* tag) {
    if (lo >= 0 && hi >= 0 && lo != hi) p.edges.push_back({lo, hi, tag});
  };
  for (int l = 0; l <= max_level; ++l) {
    for (F f : {F::IND, F::PIND}) {
      for (S s : {S::Sigma, S::Pi}) {
        edge(node(l, s, f, M::Rule), node(l, s, f, M::ParamFree), "param-free-rule");
        edge(node(l, s, f, M::ParamFree), node(l, s, f, M::Axiom), "param-free");
      }
      edge(node(l, S::Pi, f, M::ParamFree), node(l, S::Sigma, f, M::ParamFree), "pi-to-sigma");
      edge(node(l, S::Pi, f, M::Rule), node(l, S::Sigma, f, M::Rule), "pi-to-sigma");
    }
    for (S s : {S::Sigma, S::Pi})
      for (M m : {M::Axiom, M::ParamFree, M::Rule}) edge(node(l, s, F::PIND, m), node(l, s, F::IND, m), "pind-to-ind");
    edge(node(l, S::Sigma, F::IND, M::Axiom), node(l + 1, S::Sigma, F::PIND, M::Rule), "ind-to-pind-rule");
    edge(node(l, S::Sigma, F::IND, M::ParamFree), node(l + 1, S::Pi, F::PIND, M::ParamFree), "additive");
    edge(node(l, S::Sigma, F::IND, M::Rule), node(l + 1, S::Pi, F::PIND, M::Rule), "additive");
  }
  for (std::size_t i = 1; i < p.nodes.size(); ++i) edge(0, static_cast<int>(i), "base");

  p.canon.resize(p.nodes.size());
  for (std::size_t i = 0; i < p.nodes.size(); ++i) p.canon[i] = static_cast<int>(i);
  if (kind == PosetKind::T) {
    for (int l = 0; l < max_level; ++l) {
      std::pair<int, int> ids[] = {
          {node(l + 1, S::Sigma, F::PIND, M::Rule), node(l, S::Sigma, F::IND, M::Axiom)},
          {node(l + 1, S::Pi, F::PIND, M::Rule), node(l, S::Sigma, F::IND, M::Rule)},
      };
      for (auto [from, to] : ids) {
        p.canon[static_cast<std::size_t>(from)] = to;
        edge(from, to, "rule-collapse");
        edge(to, from, "rule-collapse");
      }
    }
  }

  std::size_t n = p.nodes.size();
  p.order.assign(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) p.order[i][i] = 1;
  for (const auto& e : p.edges) p.order[static_cast<std::size_t>(e.lo)][static_cast<std::size_t>(e.hi)] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (p.order[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (p.order[k][j]) p.order[i][j] = 1;

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && p.order[i][j] && p.order[j][i] && p.canon[i] != p.canon[j])
        throw PosetError("order is not antisymmetric: " + p.nodes[i].id() + " and " + p.nodes[j].id());
  return p;
}

bool interior(const FragmentPoset& p, int a, int b) {
  return p.nodes[static_cast<std::size_t>(a)].level < p.max_level &&
         p.nodes[static_cast<std::size_t>(b)].level < p.max_level;
}

std::vector<CriticalPair> critical_pairs(const FragmentPoset& p, bool interior_only) {
  std::vector<int> el = p.elements();
  std::vector<CriticalPair> out;
  for (int a : el)
    for (int b : el) {
      if (p.leq(a, b)) continue;
      bool crit = true;
      for (int c : el) {
        if ((p.less(c, a) && !p.leq(c, b)) || (p.less(b, c) && !p.leq(a, c))) {
          crit = false;
          break;
        }
      }
      if (!crit) continue;
      CriticalPair cp{a, b, !interior(p, a, b), false, std::nullopt};
      out.push_back(cp);
    }
  // A rule below T^i_2 puts the parameter-free scheme below T^i_2 by the
  // deduction theorem, so such a pair is redundant when the matching
  // parameter-free pair reaches at least as high.
  for (auto& cp : out) {
    const FragmentNode& a = p.nodes[static_cast<std::size_t>(cp.a)];
    const FragmentNode& b = p.nodes[static_cast<std::size_t>(cp.b)];
    if (a.base || a.form != SchemeForm::Rule || b.base || b.form != SchemeForm::Axiom) continue;
    FragmentNode pf = a;
    pf.form = SchemeForm::ParamFree;
    int af = p.find(pf.id());
    if (af < 0 || p.canon[static_cast<std::size_t>(af)] != af) continue;
    for (const auto& other : out) {
      if (other.a == af && p.leq(cp.b, other.b)) {
        cp.subsumed = true;
        cp.witness = std::make_pair(other.a, other.b);
        break;
      }
    }
  }
  if (interior_only) std::erase_if(out, [](const CriticalPair& c) { return c.boundary; });
  return out;
}

BasisReport check_basis(const FragmentPoset& p, const std::vector<CriticalPair>& pairs, int top) {
  BasisReport r;
  std::vector<int> el = p.elements();
  for (int a : el)
    for (int b : el) {
      if (p.leq(a, b) || p.nodes[static_cast<std::size_t>(a)].level > top ||
          p.nodes[static_cast<std::size_t>(b)].level > top)
        continue;
      ++r.checked;
      bool covered = std::any_of(pairs.begin(), pairs.end(),
                                 [&](const CriticalPair& c) { return p.leq(c.a, a) && p.leq(b, c.b); });
      if (!covered) {
        r.ok = false;
        r.a = a;
        r.b = b;
        return r;
      }
    }
  for (const auto& c : pairs)
    if (p.leq(c.a, c.b)) {
      r.ok = false;
      r.a = c.a;
      r.b = c.b;
      return r;
    }
  return r;
}

std::vector<std::pair<int, int>> hasse_edges(const FragmentPoset& p) {
  std::vector<int> el = p.elements();
  std::vector<std::pair<int, int>> out;
  for (int a : el)
    for (int b : el) {
      if (!p.less(a, b)) continue;
      bool cover = std::none_of(el.begin(), el.end(), [&](int c) { return p.less(a, c) && p.less(c, b); });
      if (cover) out.emplace_back(a, b);
    }
  return out;
}

std::optional<NonLatticeWitness> find_non_lattice_witness(const FragmentPoset& p) {
  std::vector<int> el = p.elements();
  for (std::size_t i = 0; i < el.size(); ++i)
    for (std::size_t j = i + 1; j < el.size(); ++j) {
      int a = el[i], b = el[j];
      if (p.leq(a, b) || p.leq(b, a)) continue;
      std::vector<int> ub;
      for (int c : el)
        if (p.leq(a, c) && p.leq(b, c)) ub.push_back(c);
      std::vector<int> minimal;
      for (int c : ub)
        if (std::none_of(ub.begin(), ub.end(), [&](int d) { return p.less(d, c); })) minimal.push_back(c);
      bool low = std::all_of(minimal.begin(), minimal.end(),
                             [&](int c) { return p.nodes[static_cast<std::size_t>(c)].level < p.max_level; });
      if (minimal.size() >= 2 && low) return NonLatticeWitness{a, b, minimal};
    }
  return std::nullopt;
}

std::string to_dot(const FragmentPoset& p, bool per_level) {
  std::ostringstream out;
  out << "digraph " << (p.kind == PosetKind::R ? "P_R" : "P_T") << " {\n";
  out << "  rankdir=BT;\n  node [shape=plaintext];\n";
  std::vector<int> el = p.elements();
  auto decl = [&](int i, const char* indent) {
    const FragmentNode& n = p.nodes[static_cast<std::size_t>(i)];
    out << indent << '"' << n.id() << "\" [label=\"" << n.label();
    if (p.kind == PosetKind::T) {
      for (std::size_t k = 0; k < p.nodes.size(); ++k)
        if (p.canon[k] == i && static_cast<int>(k) != i) out << " = " << p.nodes[k].label();
    }
    out << "\"];\n";
  };
  if (per_level) {
    for (int i : el)
      if (p.nodes[static_cast<std::size_t>(i)].base) decl(i, "  ");
    for (int l = 0; l <= p.max_level; ++l) {
      out << "  subgraph cluster_level" << l << " {\n    label=\"level " << l << "\";\n";
      for (int i : el)
        if (!p.nodes[static_cast<std::size_t>(i)].base && p.nodes[static_cast<std::size_t>(i)].level == l)
          decl(i, "    ");
      out << "  }\n";
    }
  } else {
    for (int i : el) decl(i, "  ");
  }
  for (auto [lo, hi] : hasse_edges(p))
    out << "  \"" << p.nodes[static_cast<std::size_t>(hi)].id() << "\" -> \"" << p.nodes[static_cast<std::size_t>(lo)].id()
        << "\";\n";
  out << "}\n";
  return out.str();
}

std::string to_json(const FragmentPoset& p, const std::vector<CriticalPair>& pairs) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["kind"] = p.kind == PosetKind::R ? "R" : "T";
  j["max_level"] = p.max_level;
  ordered_json nodes = ordered_json::array();
  for (std::size_t i = 0; i < p.nodes.size(); ++i) {
    ordered_json n;
    n["id"] = p.nodes[i].id();
    n["label"] = p.nodes[i].label();
    n["level"] = p.nodes[i].level;
    n["canonical"] = p.nodes[static_cast<std::size_t>(p.canon[i])].id();
    nodes.push_back(n);
  }
  j["nodes"] = nodes;
  ordered_json edges = ordered_json::array();
  for (const auto& e : p.edges)
    edges.push_back({{"lo", p.nodes[static_cast<std::size_t>(e.lo)].id()},
                     {"hi", p.nodes[static_cast<std::size_t>(e.hi)].id()},
                     {"tag", e.tag}});
  j["generator_edges"] = edges;
  ordered_json cps = ordered_json::array();
  for (const auto& c : pairs) {
    ordered_json o;
    o["a"] = p.nodes[static_cast<std::size_t>(c.a)].id();
    o["b"] = p.nodes[static_cast<std::size_t>(c.b)].id();
    o["boundary"] = c.boundary;
    o["subsumed"] = c.subsumed;
    if (c.witness)
      o["witness"] = {p.nodes[static_cast<std::size_t>(c.witness->first)].id(),
                      p.nodes[static_cast<std::size_t>(c.witness->second)].id()};
    cps.push_back(o);
  }
  j["critical_pairs"] = cps;
  return j.dump(2) + "\n";
}

}  // namespace bawb
