#include <functional>
#include <sstream>

#include "json.hpp"
#include "reduce_util.hpp"

namespace bawb {

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::IND: return "IND";
    case Scheme::PIND: return "PIND";
    case Scheme::LIND: return "LIND";
    case Scheme::IND_lt: return "IND<";
    case Scheme::LIND_lt: return "LIND<";
    case Scheme::PIND_lt: return "PIND<";
    case Scheme::PIND_res: return "PINDres";
    case Scheme::MIN: return "MIN";
    case Scheme::LMIN: return "LMIN";
  }
  return "?";
}

bool Report::obligations_valid() const {
  for (const auto& o : obligations)
    if (!o.valid) return false;
  return true;
}

bool Report::claims_ok() const {
  for (const auto& c : claims)
    if (!c.ok) return false;
  return true;
}

bool Report::ok() const {
  for (const auto& s : syntactic)
    if (!s.ok) return false;
  return obligations_valid() && claims_ok();
}

namespace {

std::vector<int> widths_for(const FreeFormula& f, int width) {
  std::vector<int> out;
  for (const auto& v : f.vars) {
    auto it = f.widths.find(v);
    out.push_back(it == f.widths.end() ? width : it->second);
  }
  return out;
}

std::string key_of(const FreeFormula& f, int width) {
  std::string k = render(f.formula) + "|";
  for (std::size_t i = 0; i < f.vars.size(); ++i) k += f.vars[i] + ":" + std::to_string(widths_for(f, width)[i]) + ",";
  return k;
}

std::string describe_levels(const Formula& f) {
  QuantClass c = classify(f);
  if (c.kind != QKind::NonStrict) return to_string(c);
  Levels l = block_levels(f);
  return "nonstrict (sigma" + std::to_string(l.sigma) + "/pi" + std::to_string(l.pi) + " after block extraction)";
}

}  // namespace

Report check_certificate(const ReductionCertificate& cert, int width, const EvalOptions& opts) {
  Report r;
  r.name = cert.name;
  r.width = width;
  std::map<std::string, bool> premise_cache;
  for (const auto& o : cert.obligations) {
    ObligationResult res;
    res.label = o.label;
    for (const auto& p : o.premises) {
      std::string k = key_of(p, width);
      auto it = premise_cache.find(k);
      if (it == premise_cache.end())
        it = premise_cache.emplace(k, check_valid(p.formula, p.vars, widths_for(p, width), opts).valid).first;
      if (!it->second) {
        res.vacuous = true;
        res.failed_premise = render(p.formula);
        break;
      }
    }
    if (!res.vacuous) {
      Verdict v = check_valid(o.conclusion.formula, o.conclusion.vars, widths_for(o.conclusion, width), opts);
      res.valid = v.valid;
      res.counterexample = v.counterexample;
      res.assignments = v.assignments;
    }
    r.obligations.push_back(std::move(res));
  }
  for (const auto& c : cert.class_claims)
    r.claims.push_back({c.subject, c.cls, describe_levels(c.formula), in_class(c.formula, c.cls)});
  r.syntactic = cert.syntactic;
  return r;
}

Report check_certificate(const ReductionCertificate& cert, const EvalOptions& opts) {
  return check_certificate(cert, cert.width, opts);
}

// ---- mutations

namespace {

using Rewrite = std::function<Formula(const Formula&)>;

// Rewrites the first node in pre-order for which `rw` returns non-null.
Formula rewrite_first(const Formula& f, const Rewrite& rw, bool& done) {
  if (done) return f;
  if (Formula g = rw(f)) {
    done = true;
    return g;
  }
  switch (f->kind) {
    case FKind::Eq:
    case FKind::Le: return f;
    case FKind::Not: {
      Formula a = rewrite_first(f->a, rw, done);
      return done ? neg(a) : f;
    }
    case FKind::And:
    case FKind::Or:
    case FKind::Implies: {
      Formula a = rewrite_first(f->a, rw, done);
      Formula b = done ? f->b : rewrite_first(f->b, rw, done);
      if (!done) return f;
      if (f->kind == FKind::And) return conj(a, b);
      if (f->kind == FKind::Or) return disj(a, b);
      return imp(a, b);
    }
    case FKind::Exists:
    case FKind::Forall: {
      Formula a = rewrite_first(f->a, rw, done);
      if (!done) return f;
      return f->kind == FKind::Exists ? exists(f->var, f->bound, a) : forall(f->var, f->bound, a);
    }
  }
  return f;
}

Formula apply_first(const Formula& f, const Rewrite& rw) {
  bool done = false;
  Formula g = rewrite_first(f, rw, done);
  return done ? g : nullptr;
}

}  // namespace

std::vector<std::string> mutation_operators() {
  return {"negate",      "flip-connective", "swap-quantifier", "shrink-bound",
          "negate-atom", "drop-antecedent", "bump-atom",       "swap-atom",
          "zero-var",    "succ-var",        "swap-vars"};
}

Formula mutate_formula(const Formula& f, const std::string& op) {
  if (op == "negate") return neg(f);
  if (op == "flip-connective")
    return apply_first(f, [](const Formula& g) -> Formula {
      if (g->kind == FKind::And) return disj(g->a, g->b);
      if (g->kind == FKind::Or) return conj(g->a, g->b);
      if (g->kind == FKind::Implies) return conj(g->a, g->b);
      return nullptr;
    });
  if (op == "swap-quantifier")
    return apply_first(f, [](const Formula& g) -> Formula {
      if (g->kind == FKind::Exists) return forall(g->var, g->bound, g->a);
      if (g->kind == FKind::Forall) return exists(g->var, g->bound, g->a);
      return nullptr;
    });
  if (op == "shrink-bound")
    return apply_first(f, [](const Formula& g) -> Formula {
      if (!g->is_quant()) return nullptr;
      return g->kind == FKind::Exists ? exists(g->var, zero(), g->a) : forall(g->var, zero(), g->a);
    });
  if (op == "negate-atom")
    return apply_first(f, [](const Formula& g) -> Formula { return g->is_atom() ? neg(g) : nullptr; });
  if (op == "drop-antecedent")
    return apply_first(f, [](const Formula& g) -> Formula { return g->kind == FKind::Implies ? g->b : nullptr; });
  if (op == "bump-atom")
    return apply_first(f, [](const Formula& g) -> Formula {
      if (!g->is_atom()) return nullptr;
      return g->kind == FKind::Eq ? eq(add(g->lhs, one()), g->rhs) : le(add(g->lhs, one()), g->rhs);
    });
  if (op == "swap-atom")
    return apply_first(f, [](const Formula& g) -> Formula {
      if (g->kind != FKind::Le) return nullptr;
      return le(g->rhs, g->lhs);
    });
  // variable operators act on the alphabetically first free variables
  std::set<std::string> fv = free_vars(f);
  std::vector<std::string> names(fv.begin(), fv.end());
  if (op == "zero-var") return names.empty() ? nullptr : substitute(f, names[0], zero());
  if (op == "succ-var") return names.empty() ? nullptr : substitute(f, names[0], add(var(names[0]), one()));
  if (op == "swap-vars")
    return names.size() < 2 ? nullptr
                            : substitute(f, Subst{{names[0], var(names[1])}, {names[1], var(names[0])}});
  throw std::invalid_argument("unknown mutation " + op);
}

ReductionCertificate mutate(const ReductionCertificate& cert, const std::string& op) {
  if (cert.outputs.empty() || !cert.rebuild) throw std::invalid_argument(cert.name + " cannot be mutated");
  Formula m = mutate_formula(cert.outputs[0], op);
  if (!m) throw std::invalid_argument("mutation " + op + " does not apply to " + cert.name);
  ReductionCertificate out = cert;
  out.name = cert.name + "/" + op;
  out.outputs[0] = m;
  out.rebuild(out);
  return out;
}

bool monotone_shape(const Formula& f, const std::vector<Formula>& atoms) {
  for (const auto& a : atoms)
    if (equal(f, a)) return true;
  if (equal(f, top()) || equal(f, bottom())) return true;
  if (f->kind == FKind::And || f->kind == FKind::Or) return monotone_shape(f->a, atoms) && monotone_shape(f->b, atoms);
  return false;
}

// ---- output

namespace {

nlohmann::json free_json(const FreeFormula& f) {
  nlohmann::json j{{"formula", render(f.formula)}, {"freeVars", f.vars}};
  if (!f.widths.empty()) j["widths"] = f.widths;
  return j;
}

std::string env_text(const Env& e) {
  std::string s;
  for (const auto& [k, v] : e) s += (s.empty() ? "" : ", ") + k + "=" + v.to_string();
  return "{" + s + "}";
}

}  // namespace

std::string certificate_json(const ReductionCertificate& cert) {
  nlohmann::json j;
  j["name"] = cert.name;
  j["width"] = cert.width;
  j["inputs"] = nlohmann::json::array();
  for (const auto& f : cert.inputs) j["inputs"].push_back(render(f));
  j["outputs"] = nlohmann::json::array();
  for (std::size_t i = 0; i < cert.outputs.size(); ++i) {
    std::string n = i < cert.output_names.size() ? cert.output_names[i] : "out" + std::to_string(i);
    j["outputs"].push_back({{"name", n}, {"formula", render(cert.outputs[i])}});
  }
  j["obligations"] = nlohmann::json::array();
  for (const auto& o : cert.obligations) {
    nlohmann::json oj{{"label", o.label}, {"conclusion", render(o.conclusion.formula)}, {"freeVars", o.conclusion.vars}};
    if (!o.conclusion.widths.empty()) oj["widths"] = o.conclusion.widths;
    oj["premises"] = nlohmann::json::array();
    for (const auto& p : o.premises) oj["premises"].push_back(free_json(p));
    j["obligations"].push_back(oj);
  }
  j["classClaims"] = nlohmann::json::array();
  for (const auto& c : cert.class_claims)
    j["classClaims"].push_back({{"subject", c.subject}, {"formula", render(c.formula)}, {"class", to_string(c.cls)}});
  j["syntactic"] = nlohmann::json::array();
  for (const auto& s : cert.syntactic) j["syntactic"].push_back({{"label", s.label}, {"ok", s.ok}});
  j["mutations"] = cert.mutations;
  return j.dump(2);
}

std::string report_json(const Report& r) {
  nlohmann::json j{{"name", r.name}, {"width", r.width}, {"ok", r.ok()}};
  j["obligations"] = nlohmann::json::array();
  for (const auto& o : r.obligations) {
    nlohmann::json oj{{"label", o.label}, {"verdict", o.valid ? "Valid" : "Counterexample"}, {"vacuous", o.vacuous}};
    if (o.vacuous) oj["failedPremise"] = o.failed_premise;
    if (!o.valid) {
      nlohmann::json ce = nlohmann::json::object();
      for (const auto& [k, v] : o.counterexample) ce[k] = v.to_string();
      oj["counterexample"] = ce;
    }
    j["obligations"].push_back(oj);
  }
  j["classClaims"] = nlohmann::json::array();
  for (const auto& c : r.claims)
    j["classClaims"].push_back({{"subject", c.subject}, {"claimed", to_string(c.claimed)}, {"actual", c.actual}, {"ok", c.ok}});
  j["syntactic"] = nlohmann::json::array();
  for (const auto& s : r.syntactic) j["syntactic"].push_back({{"label", s.label}, {"ok", s.ok}});
  return j.dump(2);
}

std::string report_text(const Report& r) {
  std::ostringstream os;
  os << r.name << " at width " << r.width << "\n";
  for (const auto& o : r.obligations) {
    os << "  " << o.label << ": ";
    if (o.vacuous)
      os << "Valid (vacuous: premise fails: " << o.failed_premise << ")";
    else if (o.valid)
      os << "Valid";
    else
      os << "Counterexample " << env_text(o.counterexample);
    os << "\n";
  }
  for (const auto& c : r.claims)
    os << "  class " << c.subject << " in " << to_string(c.claimed) << ": " << (c.ok ? "ok" : "MISMATCH") << " ("
       << c.actual << ")\n";
  for (const auto& s : r.syntactic) os << "  " << s.label << ": " << (s.ok ? "ok" : "FAILED") << "\n";
  return os.str();
}

}  // namespace bawb
