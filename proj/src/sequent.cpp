#include "bawb/sequent.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "json.hpp"

namespace bawb {

namespace {

const std::vector<std::pair<Rule, const char*>>& rule_names() {
  static const std::vector<std::pair<Rule, const char*>> names = {
      {Rule::Axiom, "axiom"},         {Rule::AxiomXi, "axiom-xi"},    {Rule::WeakenL, "weaken-l"},
      {Rule::WeakenR, "weaken-r"},    {Rule::Exchange, "exchange"},   {Rule::ContractL, "contract-l"},
      {Rule::ContractR, "contract-r"}, {Rule::NotL, "not-l"},         {Rule::NotR, "not-r"},
      {Rule::AndL, "and-l"},          {Rule::AndR, "and-r"},          {Rule::OrL, "or-l"},
      {Rule::OrR, "or-r"},            {Rule::ExistsL, "exists-l"},    {Rule::ExistsR, "exists-r"},
      {Rule::ForallL, "forall-l"},    {Rule::ForallR, "forall-r"},    {Rule::Cut, "cut"},
      {Rule::Extension, "extension"},
  };
  return names;
}

int premise_count(Rule r) {
  switch (r) {
    case Rule::Axiom:
    case Rule::AxiomXi:
    case Rule::Extension: return 0;
    case Rule::AndR:
    case Rule::OrL:
    case Rule::Cut: return 2;
    default: return 1;
  }
}

using Cedent = std::vector<QProp>;

Cedent sorted(Cedent v) {
  std::sort(v.begin(), v.end(), [](QProp a, QProp b) { return a->id < b->id; });
  return v;
}

bool same(const Cedent& a, const Cedent& b) { return a.size() == b.size() && sorted(a) == sorted(b); }

Cedent with(Cedent v, QProp x) {
  v.push_back(x);
  return v;
}

std::optional<Cedent> without(Cedent v, QProp x) {
  auto it = std::find(v.begin(), v.end(), x);
  if (it == v.end()) return std::nullopt;
  v.erase(it);
  return v;
}

Cedent distinct(Cedent v) {
  v = sorted(std::move(v));
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

QProp instantiate(QProp q, QProp by) {
  try {
    return qsubstitute(q->a, {{*q->name, by}});
  } catch (const QError&) {
    return nullptr;
  }
}

std::set<std::string> free_in(const Sequent& s) {
  std::set<std::string> out;
  for (const auto* side : {&s.ante, &s.succ})
    for (QProp q : *side)
      for (const auto& v : qfree_vars(q)) out.insert(v);
  return out;
}

bool mentions(const Sequent& s, const std::string& v) { return free_in(s).count(v) > 0; }

QProp extension_formula(const std::string& q, QProp def) {
  QProp v = qvar(q);
  return qand(qor(qnot(v), def), qor(v, qnot(def)));
}

struct Failure {
  std::string reason, message;
};

class Checker {
 public:
  Checker(const std::vector<ProofStep>& steps, const SystemSpec& sys) : steps_(steps), sys_(sys) {}

  ProofVerdict run() {
    if (auto f = check_system()) return {false, -1, f->reason, f->message};
    if (steps_.empty()) return {false, -1, "malformed", "empty proof"};
    std::vector<int> uses(steps_.size(), 0);
    for (std::size_t i = 0; i < steps_.size(); ++i) {
      const ProofStep& s = steps_[i];
      auto fail = [&](const std::string& reason, const std::string& msg) {
        return ProofVerdict{false, static_cast<int>(i), reason, msg};
      };
      if (static_cast<int>(s.premises.size()) != premise_count(s.rule))
        return fail("bad-premise", std::string(rule_name(s.rule)) + " takes " +
                                       std::to_string(premise_count(s.rule)) + " premises");
      for (int p : s.premises) {
        if (p < 0 || p >= static_cast<int>(i)) return fail("bad-premise", "premise " + std::to_string(p) + " is not an earlier step");
        if (sys_.tree_like && uses[static_cast<std::size_t>(p)]++ > 0)
          return fail("not-tree-like", "step " + std::to_string(p) + " is used twice");
      }
      if (sys_.extended_frege() && is_quantifier_rule(s.rule))
        return fail("quantifier-rule", std::string(rule_name(s.rule)) + " is not available in G0");
      if (auto f = step(i)) return fail(f->reason, f->message);
    }
    return {};
  }

 private:
  std::optional<Failure> check_system() const {
    if (sys_.level < 0) return Failure{"system", "negative level"};
    if (sys_.xi) {
      QuantClass c = sys_.level == 0 ? QuantClass{QKind::SigmaHatB0, 0} : QuantClass{QKind::SigmaHat, sys_.level};
      if (!in_class(sys_.xi, c)) return Failure{"system", "axiom schema is not in " + to_string(c)};
    }
    return std::nullopt;
  }

  const Sequent& prem(std::size_t i, int k) const {
    return steps_[static_cast<std::size_t>(steps_[i].premises[static_cast<std::size_t>(k)])].conclusion;
  }

  static std::optional<Failure> bad(const std::string& m) { return Failure{"bad-inference", m}; }

  std::optional<Failure> step(std::size_t i) {
    const ProofStep& s = steps_[i];
    const Sequent& c = s.conclusion;
    switch (s.rule) {
      case Rule::Axiom: {
        bool ok = (c.ante.size() == 1 && c.succ.size() == 1 && c.ante[0] == c.succ[0]) ||
                  (c.ante.empty() && c.succ.size() == 1 && c.succ[0] == qtrue()) ||
                  (c.ante.size() == 1 && c.succ.empty() && c.ante[0] == qfalse());
        return ok ? std::nullopt : bad("not an initial sequent");
      }
      case Rule::AxiomXi: return xi_step(s);
      case Rule::Extension: return extension_step(i);
      case Rule::WeakenL:
      case Rule::WeakenR: {
        const Sequent& p = prem(i, 0);
        bool left = s.rule == Rule::WeakenL;
        const Cedent& grown = left ? c.ante : c.succ;
        const Cedent& base = left ? p.ante : p.succ;
        if (!same(left ? c.succ : c.ante, left ? p.succ : p.ante)) return bad("weakening changed the other side");
        for (QProp x : distinct(grown))
          if (auto rest = without(grown, x); rest && same(*rest, base)) return std::nullopt;
        return bad("conclusion is not the premise plus one formula");
      }
      case Rule::Exchange: {
        const Sequent& p = prem(i, 0);
        return same(c.ante, p.ante) && same(c.succ, p.succ) ? std::nullopt : bad("not a permutation of the premise");
      }
      case Rule::ContractL:
      case Rule::ContractR: {
        const Sequent& p = prem(i, 0);
        bool left = s.rule == Rule::ContractL;
        const Cedent& small = left ? c.ante : c.succ;
        const Cedent& big = left ? p.ante : p.succ;
        if (!same(left ? c.succ : c.ante, left ? p.succ : p.ante)) return bad("contraction changed the other side");
        for (QProp x : distinct(small))
          if (same(with(small, x), big)) return std::nullopt;
        return bad("premise is not the conclusion with one formula doubled");
      }
      case Rule::NotL:
      case Rule::NotR: {
        const Sequent& p = prem(i, 0);
        bool left = s.rule == Rule::NotL;
        const Cedent& home = left ? c.ante : c.succ;
        for (QProp x : distinct(home)) {
          if (x->op != QOp::Not) continue;
          Cedent rest = *without(home, x);
          if (left && same(p.ante, rest) && same(p.succ, with(c.succ, x->a))) return std::nullopt;
          if (!left && same(p.succ, rest) && same(p.ante, with(c.ante, x->a))) return std::nullopt;
        }
        return bad("no negation matches the premise");
      }
      case Rule::AndL:
      case Rule::OrR: {
        const Sequent& p = prem(i, 0);
        bool left = s.rule == Rule::AndL;
        QOp op = left ? QOp::And : QOp::Or;
        const Cedent& home = left ? c.ante : c.succ;
        if (!same(left ? c.succ : c.ante, left ? p.succ : p.ante)) return bad("other side changed");
        for (QProp x : distinct(home)) {
          if (x->op != op) continue;
          Cedent expect = with(with(*without(home, x), x->a), x->b);
          if (same(left ? p.ante : p.succ, expect)) return std::nullopt;
        }
        return bad("no principal formula matches the premise");
      }
      case Rule::AndR:
      case Rule::OrL: {
        const Sequent& p0 = prem(i, 0);
        const Sequent& p1 = prem(i, 1);
        bool left = s.rule == Rule::OrL;
        QOp op = left ? QOp::Or : QOp::And;
        const Cedent& home = left ? c.ante : c.succ;
        const Cedent& other = left ? c.succ : c.ante;
        for (QProp x : distinct(home)) {
          if (x->op != op) continue;
          Cedent rest = *without(home, x);
          auto fits = [&](const Sequent& p, QProp part) {
            return same(left ? p.succ : p.ante, other) && same(left ? p.ante : p.succ, with(rest, part));
          };
          if (fits(p0, x->a) && fits(p1, x->b)) return std::nullopt;
        }
        return bad("no principal formula matches the premises");
      }
      case Rule::ExistsR:
      case Rule::ForallL: {
        if (!s.witness) return bad("missing witness");
        if (s.witness->quantified) return Failure{"witness", "witness formula must be quantifier-free"};
        const Sequent& p = prem(i, 0);
        bool left = s.rule == Rule::ForallL;
        QOp op = left ? QOp::Forall : QOp::Exists;
        const Cedent& home = left ? c.ante : c.succ;
        if (!same(left ? c.succ : c.ante, left ? p.succ : p.ante)) return bad("other side changed");
        for (QProp x : distinct(home)) {
          if (x->op != op) continue;
          QProp inst = instantiate(x, s.witness);
          if (inst && same(left ? p.ante : p.succ, with(*without(home, x), inst))) return std::nullopt;
        }
        return bad("no quantified formula matches the premise under the witness");
      }
      case Rule::ExistsL:
      case Rule::ForallR: {
        if (s.eigen.empty()) return bad("missing eigenvariable");
        if (mentions(c, s.eigen)) return Failure{"eigenvariable", "eigenvariable " + s.eigen + " is free in the conclusion"};
        const Sequent& p = prem(i, 0);
        bool left = s.rule == Rule::ExistsL;
        QOp op = left ? QOp::Exists : QOp::Forall;
        const Cedent& home = left ? c.ante : c.succ;
        if (!same(left ? c.succ : c.ante, left ? p.succ : p.ante)) return bad("other side changed");
        for (QProp x : distinct(home)) {
          if (x->op != op) continue;
          QProp inst = instantiate(x, qvar(s.eigen));
          if (inst && same(left ? p.ante : p.succ, with(*without(home, x), inst))) return std::nullopt;
        }
        return bad("no quantified formula matches the premise under the eigenvariable");
      }
      case Rule::Cut: {
        if (!s.cut) return bad("missing cut formula");
        if (!qin_class(s.cut, {sys_.level == 0 ? QClassKind::QuantifierFree : QClassKind::SigmaQ, sys_.level}))
          return Failure{"cut-class", "cut formula " + qrender(s.cut) + " is " + to_string(qclassify(s.cut))};
        const Sequent& p0 = prem(i, 0);
        const Sequent& p1 = prem(i, 1);
        bool ok = same(p0.ante, c.ante) && same(p0.succ, with(c.succ, s.cut)) && same(p1.ante, with(c.ante, s.cut)) &&
                  same(p1.succ, c.succ);
        return ok ? std::nullopt : bad("premises do not match the cut");
      }
    }
    return bad("unknown rule");
  }

  std::optional<Failure> xi_step(const ProofStep& s) {
    if (!sys_.xi) return Failure{"xi-not-allowed", "system has no axiom schema"};
    auto it = xi_.find(s.n);
    if (it == xi_.end()) {
      try {
        it = xi_.emplace(s.n, translate(sys_.xi, s.n)).first;
      } catch (const QError& e) {
        return Failure{"xi-instance", e.what()};
      }
    }
    const Translation& t = it->second;
    std::set<std::string> bits;
    for (const auto& [v, bs] : t.free_bits) bits.insert(bs.begin(), bs.end());
    for (const auto& [v, a] : s.args) {
      if (!bits.count(v)) return Failure{"xi-instance", v + " is not a bit variable of the translation"};
      if (!a || a->quantified) return Failure{"xi-instance", "argument for " + v + " is not quantifier-free"};
    }
    QProp expect;
    try {
      expect = qsubstitute(t.root, s.args);
    } catch (const QError& e) {
      return Failure{"xi-instance", e.what()};
    }
    if (!s.conclusion.ante.empty() || s.conclusion.succ.size() != 1 || s.conclusion.succ[0] != expect)
      return Failure{"xi-instance", "sequent is not the translation instance"};
    return std::nullopt;
  }

  std::optional<Failure> extension_step(std::size_t i) {
    const ProofStep& s = steps_[i];
    if (!sys_.extended_frege()) return Failure{"extension-not-allowed", "extension axioms belong to G0"};
    if (s.ext_var.empty() || !s.ext_def) return bad("missing extension variable or definition");
    if (s.ext_def->quantified) return Failure{"extension-def", "definition must be quantifier-free"};
    if (qfree_vars(s.ext_def).count(s.ext_var))
      return Failure{"extension-cycle", s.ext_var + " occurs in its own definition"};
    for (std::size_t j = 0; j < i; ++j)
      if (mentions(steps_[j].conclusion, s.ext_var) ||
          (steps_[j].rule == Rule::Extension && steps_[j].ext_var == s.ext_var))
        return Failure{"extension-fresh", s.ext_var + " already occurs in step " + std::to_string(j)};
    if (mentions(steps_.back().conclusion, s.ext_var))
      return Failure{"extension-fresh", s.ext_var + " occurs in the end-sequent"};
    const Sequent& c = s.conclusion;
    if (!c.ante.empty() || c.succ.size() != 1 || c.succ[0] != extension_formula(s.ext_var, s.ext_def))
      return bad("sequent is not the extension axiom");
    return std::nullopt;
  }

  const std::vector<ProofStep>& steps_;
  const SystemSpec& sys_;
  std::map<int, Translation> xi_;
};

}  // namespace

const char* rule_name(Rule r) {
  for (const auto& [k, n] : rule_names())
    if (k == r) return n;
  return "?";
}

std::optional<Rule> rule_from_name(const std::string& s) {
  for (const auto& [k, n] : rule_names())
    if (s == n) return k;
  return std::nullopt;
}

bool is_quantifier_rule(Rule r) {
  return r == Rule::ExistsL || r == Rule::ExistsR || r == Rule::ForallL || r == Rule::ForallR;
}

std::string SystemSpec::name() const {
  std::string out = tree_like ? "G*" : "G";
  out += std::to_string(level);
  if (xi) out += "+xi";
  return out;
}

SystemSpec parse_system(const std::string& text) {
  std::string t = text;
  if (t.size() > 3 && t.compare(t.size() - 3, 3, "+xi") == 0) t.resize(t.size() - 3);
  SystemSpec s;
  std::size_t pos = 0;
  if (t.empty() || t[0] != 'G') throw std::invalid_argument("system must look like G0, G1 or G*1: " + text);
  pos = 1;
  if (pos < t.size() && t[pos] == '*') {
    s.tree_like = true;
    ++pos;
  }
  if (pos >= t.size() || !std::all_of(t.begin() + static_cast<std::ptrdiff_t>(pos), t.end(), ::isdigit))
    throw std::invalid_argument("system must look like G0, G1 or G*1: " + text);
  s.level = std::stoi(t.substr(pos));
  if (s.level == 0 && s.tree_like) throw std::invalid_argument("G*0 is not a system here");
  return s;
}

const std::vector<std::string>& proof_reason_codes() {
  static const std::vector<std::string> codes = {
      "malformed",       "system",          "bad-premise",     "not-tree-like",         "quantifier-rule",
      "bad-inference",   "witness",         "eigenvariable",   "cut-class",             "extension-not-allowed",
      "extension-def",   "extension-cycle", "extension-fresh", "xi-not-allowed",        "xi-instance",
  };
  return codes;
}

ProofVerdict check_proof(const std::vector<ProofStep>& steps, const SystemSpec& sys) { return Checker(steps, sys).run(); }

Sequent end_sequent(const std::vector<ProofStep>& steps) {
  if (steps.empty()) throw std::invalid_argument("empty proof");
  return steps.back().conclusion;
}

bool eval_sequent(const Sequent& s, const QAssignment& a) {
  for (QProp q : s.ante)
    if (!qeval(q, a)) return true;
  for (QProp q : s.succ)
    if (qeval(q, a)) return true;
  return false;
}

bool reflection_test(const std::vector<ProofStep>& steps, const SystemSpec& sys, const QAssignment& a) {
  QAssignment full = a;
  if (sys.extended_frege()) {
    for (const auto& s : steps) {
      if (s.rule != Rule::Extension || full.count(s.ext_var)) continue;
      for (const auto& v : qfree_vars(s.ext_def)) full.emplace(v, false);
      full[s.ext_var] = qeval(s.ext_def, full);
    }
  }
  return eval_sequent(end_sequent(steps), full);
}

std::string render(const Sequent& s) {
  auto side = [](const Cedent& c) {
    std::string out;
    for (std::size_t i = 0; i < c.size(); ++i) out += (i ? ", " : "") + qrender(c[i]);
    return out;
  };
  std::string l = side(s.ante), r = side(s.succ);
  return (l.empty() ? "" : l + " ") + "=>" + (r.empty() ? "" : " " + r);
}

// ---- JSON lines

namespace {

using nlohmann::json;

QProp formula_field(const json& j, const char* key, int line) {
  if (!j.contains(key)) return nullptr;
  if (!j[key].is_string()) throw ProofFormatError(std::string(key) + " must be a string", line);
  try {
    return qparse(j[key].get<std::string>());
  } catch (const QError& e) {
    throw ProofFormatError(e.what(), line);
  }
}

Cedent cedent_field(const json& j, const char* key, int line) {
  Cedent out;
  if (!j.contains(key)) return out;
  if (!j[key].is_array()) throw ProofFormatError(std::string(key) + " must be an array", line);
  for (const auto& f : j[key]) {
    if (!f.is_string()) throw ProofFormatError(std::string(key) + " entries must be strings", line);
    try {
      out.push_back(qparse(f.get<std::string>()));
    } catch (const QError& e) {
      throw ProofFormatError(e.what(), line);
    }
  }
  return out;
}

}  // namespace

Proof parse_proof(const std::string& text) {
  Proof p;
  std::istringstream in(text);
  std::string line;
  int ln = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++ln;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ProofFormatError(std::string("bad JSON: ") + e.what(), ln);
    }
    if (!j.is_object()) throw ProofFormatError("each line must be a JSON object", ln);
    try {
      if (!header) {
        if (!j.contains("system")) throw ProofFormatError("first line must carry the system", ln);
        p.system = parse_system(j.at("system").get<std::string>());
        if (j.contains("xi")) {
          p.system.xi_text = j.at("xi").get<std::string>();
          try {
            p.system.xi = parse_formula(p.system.xi_text);
          } catch (const ParseError& e) {
            throw ProofFormatError(std::string("xi: ") + e.what(), ln);
          }
        }
        header = true;
        continue;
      }
      ProofStep s;
      auto rule = rule_from_name(j.at("rule").get<std::string>());
      if (!rule) throw ProofFormatError("unknown rule " + j.at("rule").get<std::string>(), ln);
      s.rule = *rule;
      if (j.contains("premises")) s.premises = j.at("premises").get<std::vector<int>>();
      s.conclusion.ante = cedent_field(j, "ante", ln);
      s.conclusion.succ = cedent_field(j, "succ", ln);
      s.cut = formula_field(j, "cut", ln);
      s.witness = formula_field(j, "witness", ln);
      s.ext_def = formula_field(j, "def", ln);
      if (j.contains("eigen")) s.eigen = j.at("eigen").get<std::string>();
      if (j.contains("var")) s.ext_var = j.at("var").get<std::string>();
      if (j.contains("n")) s.n = j.at("n").get<int>();
      if (j.contains("args")) {
        for (const auto& [k, v] : j.at("args").items()) {
          try {
            s.args[k] = qparse(v.get<std::string>());
          } catch (const QError& e) {
            throw ProofFormatError(e.what(), ln);
          }
        }
      }
      p.steps.push_back(std::move(s));
    } catch (const json::exception& e) {
      throw ProofFormatError(std::string("bad field: ") + e.what(), ln);
    } catch (const std::invalid_argument& e) {
      throw ProofFormatError(e.what(), ln);
    }
  }
  if (!header) throw ProofFormatError("missing header line", ln);
  return p;
}

std::string write_proof(const Proof& p) {
  std::ostringstream out;
  nlohmann::ordered_json h;
  std::string sys = p.system.tree_like ? "G*" : "G";
  h["system"] = sys + std::to_string(p.system.level);
  if (p.system.xi) h["xi"] = p.system.xi_text.empty() ? render(p.system.xi) : p.system.xi_text;
  out << h.dump() << "\n";
  for (const auto& s : p.steps) {
    nlohmann::ordered_json j;
    j["rule"] = rule_name(s.rule);
    if (!s.premises.empty()) j["premises"] = s.premises;
    nlohmann::ordered_json ante = nlohmann::ordered_json::array(), succ = nlohmann::ordered_json::array();
    for (QProp q : s.conclusion.ante) ante.push_back(qrender(q));
    for (QProp q : s.conclusion.succ) succ.push_back(qrender(q));
    j["ante"] = ante;
    j["succ"] = succ;
    if (s.cut) j["cut"] = qrender(s.cut);
    if (s.witness) j["witness"] = qrender(s.witness);
    if (!s.eigen.empty()) j["eigen"] = s.eigen;
    if (s.rule == Rule::AxiomXi) j["n"] = s.n;
    if (!s.args.empty()) {
      nlohmann::ordered_json a = nlohmann::ordered_json::object();
      for (const auto& [k, v] : s.args) a[k] = qrender(v);
      j["args"] = a;
    }
    if (!s.ext_var.empty()) j["var"] = s.ext_var;
    if (s.ext_def) j["def"] = qrender(s.ext_def);
    out << j.dump() << "\n";
  }
  return out.str();
}

// ---- mutants

namespace {

ProofStep make(Rule r, std::vector<int> prem, Cedent ante, Cedent succ) {
  ProofStep s;
  s.rule = r;
  s.premises = std::move(prem);
  s.conclusion = {std::move(ante), std::move(succ)};
  return s;
}

int push(std::vector<ProofStep>& steps, ProofStep s) {
  steps.push_back(std::move(s));
  return static_cast<int>(steps.size() - 1);
}

// Inserts s at position pos, renumbering later premises.
std::vector<ProofStep> insert_at(const std::vector<ProofStep>& steps, std::size_t pos, const ProofStep& s) {
  std::vector<ProofStep> out;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (i == pos) out.push_back(s);
    ProofStep t = steps[i];
    for (int& p : t.premises)
      if (p >= static_cast<int>(pos)) ++p;
    out.push_back(std::move(t));
  }
  if (pos >= steps.size()) out.push_back(s);
  return out;
}

// Quantifier prefix of the given kinds over a refutable matrix.
QProp refutable(const std::vector<bool>& exists) {
  QProp body = qand(qvar("m.a"), qnot(qvar("m.a")));
  for (std::size_t k = exists.size(); k-- > 0;) {
    std::string v = k == 0 ? "m.a" : "m.b" + std::to_string(k);
    body = exists[k] ? qexists(v, body) : qforall(v, body);
  }
  return body;
}

// Steps deriving "h =>" for a refutable prefix formula; returns the last index.
int refute(std::vector<ProofStep>& steps, QProp h) {
  std::vector<QProp> chain{h};
  std::vector<std::string> eigen;
  while (chain.back()->op == QOp::Exists || chain.back()->op == QOp::Forall) {
    QProp q = chain.back();
    if (q->op == QOp::Forall) {
      chain.push_back(qsubstitute(q->a, {{*q->name, qfalse()}}));
      eigen.emplace_back();
    } else {
      std::string e = "m.e" + std::to_string(chain.size());
      chain.push_back(qsubstitute(q->a, {{*q->name, qvar(e)}}));
      eigen.push_back(e);
    }
  }
  QProp core = chain.back();  // X & ~X
  QProp x = core->a;
  int i = push(steps, make(Rule::Axiom, {}, {x}, {x}));
  i = push(steps, make(Rule::NotL, {i}, {x, qnot(x)}, {}));
  i = push(steps, make(Rule::AndL, {i}, {core}, {}));
  for (std::size_t k = chain.size() - 1; k-- > 0;) {
    QProp q = chain[k];
    ProofStep s = make(q->op == QOp::Forall ? Rule::ForallL : Rule::ExistsL, {i}, {q}, {});
    if (q->op == QOp::Forall)
      s.witness = qfalse();
    else
      s.eigen = eigen[k];
    i = push(steps, std::move(s));
  }
  return i;
}

// Appends a cut on h to the end of the proof, keeping the end-sequent.
std::vector<ProofStep> inject_cut(const std::vector<ProofStep>& steps, QProp h, bool derive) {
  std::vector<ProofStep> out = steps;
  int end = static_cast<int>(out.size() - 1);
  Sequent e = out.back().conclusion;
  int left;
  if (derive) {
    left = refute(out, h);
    Cedent ante{h}, succ;
    for (QProp g : e.ante) {
      ante.push_back(g);
      left = push(out, make(Rule::WeakenL, {left}, ante, succ));
    }
    for (QProp d : e.succ) {
      succ.push_back(d);
      left = push(out, make(Rule::WeakenR, {left}, ante, succ));
    }
  } else {
    left = push(out, make(Rule::WeakenL, {end}, with(e.ante, h), e.succ));
  }
  int right = push(out, make(Rule::WeakenR, {end}, e.ante, with(e.succ, h)));
  ProofStep cut = make(Rule::Cut, {right, left}, e.ante, e.succ);
  cut.cut = h;
  out.push_back(std::move(cut));
  return out;
}

std::string any_free(const Sequent& s) {
  auto fv = free_in(s);
  return fv.empty() ? std::string() : *fv.begin();
}

}  // namespace

const std::vector<std::string>& mutation_classes() {
  static const std::vector<std::string> c = {"cut-class", "broken-inference", "eigenvariable", "extension",
                                             "xi-instance"};
  return c;
}

std::vector<std::string> expected_reasons(const std::string& cls) {
  if (cls == "cut-class") return {"cut-class"};
  if (cls == "broken-inference") return {"bad-inference", "bad-premise"};
  if (cls == "eigenvariable") return {"eigenvariable", "quantifier-rule"};
  if (cls == "extension") return {"extension-cycle", "extension-fresh", "extension-not-allowed"};
  if (cls == "xi-instance") return {"xi-instance", "xi-not-allowed"};
  return {};
}

std::vector<ProofMutant> proof_mutants(const Proof& p) {
  std::vector<ProofMutant> out;
  const auto& steps = p.steps;
  auto add = [&](const std::string& cls, const std::string& what, std::vector<ProofStep> s) {
    out.push_back({cls, what, Proof{p.system, std::move(s)}});
  };

  // cut formulas just outside the permitted class
  {
    int i = p.system.level;
    std::vector<std::vector<bool>> shapes;
    if (i == 0) {
      shapes = {{false}, {true}};
    } else {
      std::vector<bool> pi_i, sigma_up, pi_up;
      for (int k = 0; k < i; ++k) pi_i.push_back(k % 2 == 1);
      for (int k = 0; k <= i; ++k) {
        sigma_up.push_back(k % 2 == 0);
        pi_up.push_back(k % 2 == 1);
      }
      shapes = {pi_i, sigma_up, pi_up};
    }
    for (const auto& sh : shapes) {
      QProp h = refutable(sh);
      add("cut-class", "cut on " + qrender(h), inject_cut(steps, h, i > 0));
    }
  }

  // broken inferences
  for (std::size_t k = 0; k < steps.size(); ++k) {
    if (steps[k].rule == Rule::AxiomXi) continue;  // covered by the xi-instance class
    auto s = steps;
    s[k].conclusion.ante.push_back(qvar("m.junk"));
    add("broken-inference", "extra formula in step " + std::to_string(k), std::move(s));
    if (steps[k].premises.size() == 2) {
      const auto& a = steps[static_cast<std::size_t>(steps[k].premises[0])].conclusion;
      const auto& b = steps[static_cast<std::size_t>(steps[k].premises[1])].conclusion;
      if (same(a.ante, b.ante) && same(a.succ, b.succ)) continue;
      auto t = steps;
      std::swap(t[k].premises[0], t[k].premises[1]);
      add("broken-inference", "premises swapped in step " + std::to_string(k), std::move(t));
    }
  }

  // eigenvariables that are not fresh
  for (std::size_t k = 0; k < steps.size(); ++k) {
    if (steps[k].rule != Rule::ExistsL && steps[k].rule != Rule::ForallR) continue;
    std::string v = any_free(steps[k].conclusion);
    if (v.empty()) continue;
    auto s = steps;
    s[k].eigen = v;
    add("eigenvariable", "eigenvariable " + v + " in step " + std::to_string(k), std::move(s));
  }
  {
    auto s = steps;
    QProp v = qvar("m.v");
    int ax = push(s, make(Rule::Axiom, {}, {v}, {v}));
    ProofStep r = make(Rule::ForallR, {ax}, {v}, {qforall("m.x", qvar("m.x"))});
    r.eigen = "m.v";
    s.push_back(std::move(r));
    add("eigenvariable", "appended generalization over a free variable", std::move(s));
  }

  // extension variables
  const Sequent end = steps.back().conclusion;
  for (std::size_t k = 0; k < steps.size(); ++k) {
    const ProofStep& st = steps[k];
    if (st.rule != Rule::Extension) continue;
    {
      auto s = steps;
      s[k].ext_def = qand(st.ext_def, qvar(st.ext_var));
      s[k].conclusion = {{}, {extension_formula(st.ext_var, s[k].ext_def)}};
      add("extension", "self-reference in step " + std::to_string(k), std::move(s));
    }
    add("extension", "step " + std::to_string(k) + " repeated", insert_at(steps, k + 1, st));
    if (std::string v = any_free(end); !v.empty()) {
      auto s = steps;
      s[k].ext_var = v;
      s[k].conclusion = {{}, {extension_formula(v, st.ext_def)}};
      add("extension", "end-sequent variable " + v + " defined in step " + std::to_string(k), std::move(s));
    }
  }
  {
    std::string v = any_free(end);
    ProofStep e;
    e.rule = Rule::Extension;
    e.ext_var = v.empty() ? "m.q" : v;
    e.ext_def = v.empty() ? qvar("m.q") : qnot(qvar(v + ".m"));
    e.conclusion = {{}, {extension_formula(e.ext_var, e.ext_def)}};
    add("extension", "extension of " + e.ext_var + " prepended", insert_at(steps, 0, e));
  }

  // translation instances
  for (std::size_t k = 0; k < steps.size(); ++k) {
    const ProofStep& st = steps[k];
    if (st.rule != Rule::AxiomXi) continue;
    {
      auto s = steps;
      s[k].n = st.n + 1;
      add("xi-instance", "n changed in step " + std::to_string(k), std::move(s));
    }
    {
      auto s = steps;
      s[k].conclusion.ante.push_back(qtrue());
      add("xi-instance", "antecedent added in step " + std::to_string(k), std::move(s));
    }
    if (!st.args.empty()) {
      auto s = steps;
      s[k].args.begin()->second = qexists("m.z", qvar("m.z"));
      add("xi-instance", "quantified argument in step " + std::to_string(k), std::move(s));
    }
    if (p.system.xi) {
      Translation t = translate(p.system.xi, st.n);
      std::set<std::string> live = qfree_vars(t.root);
      for (const auto& [v, a] : st.args) {
        if (!live.count(v)) continue;
        auto s = steps;
        s[k].args[v] = qnot(a);
        add("xi-instance", "argument for " + v + " negated in step " + std::to_string(k), std::move(s));
        break;
      }
    }
  }
  {
    auto s = steps;
    ProofStep x = make(Rule::AxiomXi, {}, {}, {qfalse()});
    x.n = 1;
    s.push_back(std::move(x));
    add("xi-instance", "appended instance with a wrong sequent", std::move(s));
  }
  return out;
}

}  // namespace bawb
