#include <functional>
#include <sstream>

#include "reduce_util.hpp"

namespace bawb {

namespace {

using Params = std::map<std::string, std::string>;

const std::string& need(const Params& p, const std::string& key) {
  auto it = p.find(key);
  if (it == p.end()) throw ReductionError("missing parameter '" + key + "'");
  return it->second;
}

std::string get(const Params& p, const std::string& key, const std::string& dflt) {
  auto it = p.find(key);
  return it == p.end() ? dflt : it->second;
}

Formula formula(const Params& p, const std::string& key) { return parse_formula(need(p, key)); }

int integer(const Params& p, const std::string& key, int dflt) {
  auto it = p.find(key);
  if (it == p.end()) return dflt;
  try {
    std::size_t used = 0;
    int v = std::stoi(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ReductionError("parameter '" + key + "' must be an integer");
  }
}

Scheme scheme(const Params& p, Scheme dflt) {
  std::string s = get(p, "scheme", "");
  if (s.empty()) return dflt;
  if (s == "IND") return Scheme::IND;
  if (s == "PIND") return Scheme::PIND;
  throw ReductionError("scheme must be IND or PIND");
}

QuantClass cls_or(const Params& p, const Formula& phi, QKind side) {
  std::string s = get(p, "class", "");
  if (!s.empty()) {
    try {
      return parse_class(s);
    } catch (const std::exception&) {
      throw ReductionError("bad class '" + s + "'");
    }
  }
  Levels l = block_levels(phi);
  return {side, side == QKind::SigmaHat ? l.sigma : l.pi};
}

std::vector<Formula> indexed(const Params& p, const std::string& prefix) {
  std::vector<Formula> out;
  for (int i = 1;; ++i) {
    auto it = p.find(prefix + std::to_string(i));
    if (it == p.end()) break;
    out.push_back(parse_formula(it->second));
  }
  return out;
}

ReductionCertificate param_free(const Params& p, Scheme s, QKind side) {
  Formula phi = formula(p, "phi");
  return eliminate_parameters(phi, {s, RuleForm::Rule, cls_or(p, phi, side)});
}

ReductionCertificate basic(const Params& p, int item, Scheme s) {
  BasicOptions o;
  o.scheme = s;
  o.level = integer(p, "level", -1);
  std::string side = get(p, "side", "");
  if (side == "sigma") o.side = QKind::SigmaHat;
  if (side == "pi") o.side = QKind::PiHat;
  return basic_reduce(item, formula(p, "phi"), o);
}

ReductionCertificate variant(const Params& p, Variant v, Scheme dflt) {
  VariantOptions o;
  o.scheme = scheme(p, dflt);
  o.c = integer(p, "c", 1);
  return variant_reduce(v, formula(p, "phi"), o);
}

using Builder = std::function<ReductionCertificate(const Params&)>;

const std::vector<std::pair<std::string, Builder>>& registry() {
  static const std::vector<std::pair<std::string, Builder>> r = {
      {"param-free-sigma-ind", [](const Params& p) { return param_free(p, Scheme::IND, QKind::SigmaHat); }},
      {"param-free-pi-ind", [](const Params& p) { return param_free(p, Scheme::IND, QKind::PiHat); }},
      {"param-free-pi-pind", [](const Params& p) { return param_free(p, Scheme::PIND, QKind::PiHat); }},
      {"param-free-sigma-pind", [](const Params& p) { return param_free(p, Scheme::PIND, QKind::SigmaHat); }},
      {"dual-ind", [](const Params& p) { return basic(p, 2, Scheme::IND); }},
      {"dual-pind", [](const Params& p) { return basic(p, 2, Scheme::PIND); }},
      {"pi-to-sigma-ind", [](const Params& p) { return basic(p, 4, Scheme::IND); }},
      {"pi-to-sigma-pind", [](const Params& p) { return basic(p, 4, Scheme::PIND); }},
      {"pind-to-ind", [](const Params& p) { return basic(p, 5, Scheme::IND); }},
      {"ind-to-pind-rule", [](const Params& p) { return basic(p, 6, Scheme::IND); }},
      {"additive", [](const Params& p) { return basic(p, 7, Scheme::IND); }},
      {"merge-nested-pi",
       [](const Params& p) { return merge_nested_pi(formula(p, "phi"), formula(p, "psi"), integer(p, "c", 1)); }},
      {"base-position", [](const Params& p) { return variant(p, Variant::BasePosition, Scheme::IND); }},
      {"pind-lind", [](const Params& p) { return variant(p, Variant::PindToLind, Scheme::PIND); }},
      {"lind-pind", [](const Params& p) { return variant(p, Variant::LindToPind, Scheme::PIND); }},
      {"ind-lt", [](const Params& p) { return variant(p, Variant::IndLt, Scheme::IND); }},
      {"pind-lt", [](const Params& p) { return variant(p, Variant::IndLt, Scheme::PIND); }},
      {"ind-lt-converse", [](const Params& p) { return variant(p, Variant::IndLtConverse, Scheme::IND); }},
      {"pind-lt-converse", [](const Params& p) { return variant(p, Variant::IndLtConverse, Scheme::PIND); }},
      {"pind-res", [](const Params& p) { return variant(p, Variant::PindRes, Scheme::PIND); }},
      {"base-in-conclusion", [](const Params& p) { return variant(p, Variant::BaseInConclusion, Scheme::IND); }},
      {"base-in-conclusion-pind",
       [](const Params& p) { return variant(p, Variant::BaseInConclusion, Scheme::PIND); }},
      {"min-as-ind-lt", [](const Params& p) { return variant(p, Variant::MinAsIndLt, Scheme::IND); }},
      {"min-rule", [](const Params& p) { return variant(p, Variant::MinRule, Scheme::IND); }},
      {"collapse-chain",
       [](const Params& p) {
         std::vector<Formula> th = indexed(p, "theta");
         std::string m = get(p, "mode", "IND");
         if (m != "IND" && m != "PIND") throw ReductionError("mode must be IND or PIND");
         return collapse_chain(th, formula(p, "phi"), integer(p, "c", 1),
                               m == "IND" ? CollapseMode::IND : CollapseMode::PIND, integer(p, "width", 4));
       }},
      {"kaye-expand",
       [](const Params& p) {
         std::vector<Formula> a = indexed(p, "alpha"), b = indexed(p, "beta");
         if (a.size() != b.size()) throw ReductionError("alpha and beta lists differ in length");
         std::vector<KayeInstance> inst;
         for (std::size_t i = 0; i < a.size(); ++i) inst.push_back({a[i], b[i]});
         std::vector<FreeFormula> theory;
         for (const auto& t : indexed(p, "theory")) {
           std::set<std::string> fv = free_vars(t);
           theory.push_back({t, {fv.begin(), fv.end()}, {}});
         }
         return kaye_expand(inst, formula(p, "phi"), theory);
       }},
      {"pairing-side-conditions", [](const Params&) { return pairing_side_conditions(); }},
  };
  return r;
}

}  // namespace

std::vector<std::string> case_names() {
  std::vector<std::string> out;
  for (const auto& [n, b] : registry()) out.push_back(n);
  return out;
}

ReductionCertificate build_case(const std::string& name, const std::map<std::string, std::string>& params) {
  for (const auto& [n, b] : registry())
    if (n == name) {
      ReductionCertificate c = b(params);
      if (params.count("width") && name != "collapse-chain") c.width = integer(params, "width", c.width);
      return c;
    }
  throw ReductionError("unknown case '" + name + "'");
}

std::map<std::string, std::string> parse_case_params(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  int n = 0;
  auto trim = [](std::string s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++n;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto colon = t.find(':');
    if (colon == std::string::npos) throw ReductionError("line " + std::to_string(n) + ": expected 'key: value'");
    std::string key = trim(t.substr(0, colon));
    if (key.empty()) throw ReductionError("line " + std::to_string(n) + ": empty key");
    if (out.count(key)) throw ReductionError("line " + std::to_string(n) + ": duplicate key '" + key + "'");
    out[key] = trim(t.substr(colon + 1));
  }
  return out;
}

}  // namespace bawb
