// Command line front end.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "acceptance.hpp"
#include "bawb/eval.hpp"
#include "bawb/formula.hpp"
#include "bawb/poset.hpp"
#include "bawb/qprop.hpp"
#include "bawb/reductions.hpp"
#include "bawb/sequent.hpp"
#include "json.hpp"

using namespace bawb;
using nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kReject = 1;
constexpr int kUsage = 2;

// Raised for bad input; main prints the message and exits with kUsage.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int env_cap(const char* name, int fallback) {
  if (const char* s = std::getenv(name)) {
    try {
      return std::stoi(s);
    } catch (const std::exception&) {
      throw UsageError(std::string(name) + " is not a number: " + s);
    }
  }
  return fallback;
}

void in_range(const std::string& what, int v, int lo, int hi, const char* env) {
  if (v < lo || v > hi)
    throw UsageError(what + " " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) +
                     "]; raise the cap with " + env);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  auto e = s.find_last_not_of(" \t\r\n");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

struct Line {
  int number;
  std::string text;
};

std::vector<Line> formula_lines(const std::string& path) {
  std::vector<Line> out;
  std::istringstream in(slurp(path));
  std::string line;
  for (int n = 1; std::getline(in, line); ++n) {
    std::string t = trim(line);
    if (!t.empty() && t[0] != '#') out.push_back({n, t});
  }
  if (out.empty()) throw UsageError(path + ": no formula");
  return out;
}

Formula parse_at(const std::string& path, const Line& l) {
  try {
    return parse_formula(l.text);
  } catch (const ParseError& e) {
    throw UsageError(path + ":" + std::to_string(l.number) + ": " + e.what());
  }
}

// classify ----------------------------------------------------------------

int cmd_classify(const std::string& path, const std::string& format) {
  ordered_json arr = ordered_json::array();
  for (const auto& l : formula_lines(path)) {
    Formula f = parse_at(path, l);
    QuantClass c = classify(f);
    if (format == "json")
      arr.push_back({{"line", l.number}, {"formula", render(f)}, {"class", to_string(c)}});
    else
      std::cout << to_string(c) << '\t' << render(f) << '\n';
  }
  if (format == "json") std::cout << arr.dump(2) << '\n';
  return kOk;
}

// reduce ------------------------------------------------------------------

int cmd_reduce(const std::string& name, const std::string& path, int width, const std::string& format) {
  std::string text = slurp(path);
  std::map<std::string, std::string> params;
  try {
    params = parse_case_params(text);
  } catch (const ReductionError&) {
    // a bare formula stands for phi
    std::vector<Line> ls = formula_lines(path);
    if (ls.size() != 1) throw UsageError(path + ": expected 'key: value' lines or a single formula");
    params["phi"] = ls[0].text;
  }
  ReductionCertificate cert;
  try {
    cert = build_case(name, params);
  } catch (const ReductionError& e) {
    throw UsageError(std::string(e.what()) + "; see 'bawb cases'");
  } catch (const ParseError& e) {
    throw UsageError(path + ": " + e.what());
  }
  if (width >= 0) in_range("width", width, 0, max_width(), "BAWB_MAX_WIDTH");
  Report r = width >= 0 ? check_certificate(cert, width) : check_certificate(cert);
  std::cout << (format == "json" ? report_json(r) : report_text(r));
  return r.ok() ? kOk : kReject;
}

int cmd_cases() {
  for (const auto& n : case_names()) std::cout << n << '\n';
  return kOk;
}

// translate ---------------------------------------------------------------

int cmd_translate(const std::string& path, int n, const std::string& format) {
  in_range("n", n, 1, env_cap("BAWB_MAX_N", 8), "BAWB_MAX_N");
  auto ls = formula_lines(path);
  if (ls.size() != 1) throw UsageError(path + ": expected exactly one formula");
  Formula f = parse_at(path, ls[0]);
  TranslateOptions opts;
  opts.max_n = env_cap("BAWB_MAX_N", 8);
  Translation t = translate(f, n, opts);
  if (format == "qcir") {
    std::cout << export_qcir(t.root);
  } else if (format == "qdimacs") {
    std::cout << export_qdimacs(t.root);
  } else {
    ordered_json j;
    j["formula"] = render(f);
    j["class"] = to_string(classify(f));
    j["n"] = n;
    j["qclass"] = to_string(qclassify(t.root));
    j["size"] = qsize(t.root);
    ordered_json fb = ordered_json::object();
    for (const auto& [v, bits] : t.free_bits) fb[v] = bits;
    j["free_bits"] = fb;
    if (format == "json") {
      std::cout << j.dump(2) << '\n';
    } else {
      std::cout << "formula: " << render(f) << "\nclass: " << j["class"].get<std::string>() << "\nn: " << n
                << "\nqclass: " << j["qclass"].get<std::string>() << "\nsize: " << qsize(t.root) << '\n';
      for (const auto& [v, bits] : t.free_bits) {
        std::cout << "bits " << v << ':';
        for (const auto& b : bits) std::cout << ' ' << b;
        std::cout << '\n';
      }
    }
  }
  return kOk;
}

// qeval -------------------------------------------------------------------

QProp read_qprop(const std::string& path) {
  std::string text = slurp(path);
  try {
    if (text.find("#QCIR") != std::string::npos) return import_qcir(text);
    std::string body;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);)
      if (trim(line).empty() || trim(line)[0] != '#') body += line + ' ';
    return qparse(body);
  } catch (const QError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

// "p=1,q=0" for propositional variables, "x=5" for the bits v.x.0, v.x.1, ...
QAssignment parse_assign(const std::string& spec, QProp q) {
  std::set<std::string> free = qfree_vars(q);
  QAssignment a;
  std::stringstream ss(spec);
  for (std::string item; std::getline(ss, item, ',');) {
    item = trim(item);
    if (item.empty()) continue;
    auto eqpos = item.find('=');
    if (eqpos == std::string::npos) throw UsageError("assignment '" + item + "' lacks '='");
    std::string name = trim(item.substr(0, eqpos)), val = trim(item.substr(eqpos + 1));
    std::uint64_t v = 0;
    try {
      std::size_t used = 0;
      v = val == "true" ? 1 : val == "false" ? 0 : std::stoull(val, &used);
      if (val != "true" && val != "false" && used != val.size()) throw std::invalid_argument(val);
    } catch (const std::exception&) {
      throw UsageError("assignment '" + item + "' has a non-numeric value");
    }
    if (free.count(name)) {
      if (v > 1) throw UsageError("propositional variable " + name + " takes 0 or 1");
      a[name] = v == 1;
      continue;
    }
    // bit names as translated, or as sanitized by the QCIR export
    auto bit = [&](int k) {
      std::string b = bit_name(name, k);
      if (free.count(b)) return b;
      for (char& c : b) c = c == '.' ? '_' : c == '\'' ? 'p' : c;
      return free.count(b) ? b : std::string();
    };
    // simplification may drop bits, so set whichever survive
    bool any = false;
    for (int k = 0; k < 64; ++k) {
      std::string b = bit(k);
      if (b.empty()) continue;
      a[b] = ((v >> k) & 1u) != 0;
      any = true;
    }
    if (!any) throw UsageError("'" + name + "' is neither a free variable nor a translated first-order variable");
  }
  std::vector<std::string> missing;
  for (const auto& v : free)
    if (!a.count(v)) missing.push_back(v);
  if (!missing.empty()) {
    std::string m = "unassigned free variables:";
    for (const auto& v : missing) m += " " + v;
    throw UsageError(m);
  }
  return a;
}

int cmd_qeval(const std::string& path, const std::string& assign) {
  QProp q = read_qprop(path);
  QAssignment a = parse_assign(assign, q);
  std::cout << (qeval(q, a) ? "true" : "false") << '\n';
  return kOk;
}

// proof-check -------------------------------------------------------------

int cmd_proof_check(const std::string& path, const std::string& system, bool reflect, const std::string& format) {
  Proof p;
  std::string text = slurp(path);
  ordered_json j;
  j["file"] = path;
  try {
    p = parse_proof(text);
  } catch (const ProofFormatError& e) {
    if (format == "json") {
      j["accepted"] = false;
      j["reason"] = "malformed";
      j["message"] = e.what();
      std::cout << j.dump(2) << '\n';
    } else {
      std::cout << "rejected: malformed: " << path << ": " << e.what() << '\n';
    }
    return kReject;
  }
  if (!system.empty()) {
    SystemSpec s;
    try {
      s = parse_system(system);
    } catch (const std::exception& e) {
      throw UsageError(std::string("--system: ") + e.what());
    }
    if (system.find("+xi") != std::string::npos) {
      if (!p.system.xi) throw UsageError("--system " + system + " needs an \"xi\" entry in the proof header");
      s.xi = p.system.xi;
      s.xi_text = p.system.xi_text;
    }
    p.system = s;
  }
  ProofVerdict v = check_proof(p);
  j["system"] = p.system.name();
  j["steps"] = p.steps.size();
  j["accepted"] = v.accepted;
  if (!v.accepted) {
    j["step"] = v.step;
    j["reason"] = v.reason;
    j["message"] = v.message;
  }
  bool reflect_ok = true;
  if (v.accepted) j["end_sequent"] = render(end_sequent(p.steps));
  if (v.accepted && reflect) {
    Sequent end = end_sequent(p.steps);
    std::set<std::string> vs;
    for (const auto* side : {&end.ante, &end.succ})
      for (QProp q : *side)
        for (const auto& x : qfree_vars(q)) vs.insert(x);
    std::vector<std::string> vars(vs.begin(), vs.end());
    if (vars.size() > 20) throw UsageError("--reflect enumerates at most 20 free variables");
    std::uint64_t total = std::uint64_t{1} << vars.size();
    for (std::uint64_t m = 0; m < total && reflect_ok; ++m) {
      QAssignment a;
      for (std::size_t k = 0; k < vars.size(); ++k) a[vars[k]] = ((m >> k) & 1u) != 0;
      reflect_ok = reflection_test(p.steps, p.system, a);
    }
    j["reflection_assignments"] = total;
    j["reflection"] = reflect_ok;
  }
  if (format == "json") {
    std::cout << j.dump(2) << '\n';
  } else if (v.accepted) {
    std::cout << "accepted in " << p.system.name() << " (" << p.steps.size() << " steps): " << render(end_sequent(p.steps))
              << '\n';
    if (reflect) std::cout << "reflection: " << (reflect_ok ? "holds" : "FAILS") << " on " << j["reflection_assignments"] << " assignments\n";
  } else {
    std::cout << "rejected in " << p.system.name() << " at step " << v.step << ": " << v.reason << ": " << v.message << '\n';
  }
  return v.accepted && reflect_ok ? kOk : kReject;
}

// poset -------------------------------------------------------------------

int cmd_poset(const std::string& kind, int max_level, bool pairs, bool all_pairs, bool dot, bool flat,
              const std::string& format) {
  in_range("max level", max_level, 2, env_cap("BAWB_MAX_LEVEL", 8), "BAWB_MAX_LEVEL");
  FragmentPoset p = build_poset(kind == "R" ? PosetKind::R : PosetKind::T, max_level);
  auto id = [&](int i) { return p.nodes[static_cast<std::size_t>(i)].id(); };
  std::vector<CriticalPair> cps;
  if (pairs || all_pairs || format == "json") cps = critical_pairs(p, !all_pairs);
  if (dot) {
    std::cout << to_dot(p, !flat);
    return kOk;
  }
  if (format == "json") {
    std::cout << to_json(p, cps);
    return kOk;
  }
  if (pairs || all_pairs) {
    for (const auto& c : cps) {
      std::cout << '<' << id(c.a) << ", " << id(c.b) << '>';
      if (c.boundary) std::cout << " boundary";
      if (c.subsumed) std::cout << " subsumed by <" << id(c.witness->first) << ", " << id(c.witness->second) << '>';
      std::cout << '\n';
    }
    return kOk;
  }
  std::cout << "P_" << kind << " up to level " << max_level << ": " << p.elements().size() << " elements\n";
  for (auto [lo, hi] : hasse_edges(p)) std::cout << id(hi) << " > " << id(lo) << '\n';
  return kOk;
}

// corpus-verify -----------------------------------------------------------

int cmd_corpus_verify(std::uint64_t seed, const std::vector<int>& only, const std::string& format) {
  std::vector<acceptance::Result> rs;
  bool text = format != "json";
  if (only.empty()) {
    rs = acceptance::run_all(seed, text ? &std::cout : nullptr);
  } else {
    for (int i : only) {
      in_range("criterion", i, 1, 10, "the criterion list");
      rs.push_back(acceptance::run(i, seed));
      if (text) std::cout << acceptance::format_line(rs.back()) << std::flush;
    }
  }
  if (!text) std::cout << acceptance::report_json(rs, seed);
  bool ok = std::all_of(rs.begin(), rs.end(), [](const acceptance::Result& r) { return r.pass(); });
  return ok ? kOk : kReject;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Strict bounded arithmetic workbench"};
  app.require_subcommand(1);
  std::string file, format = "text", name, assign, system, kind = "R";
  int width = -1, n = 0, max_level = 4;
  bool pairs = false, all_pairs = false, dot = false, flat = false, reflect = false;
  std::uint64_t seed = acceptance::kDefaultSeed;
  std::vector<int> only;
  const std::vector<std::string> text_json = {"text", "json"};

  auto* classify_cmd = app.add_subcommand("classify", "Least strict class of every formula in FILE (one per line)");
  classify_cmd->add_option("FILE", file)->required();
  classify_cmd->add_option("--format", format)->check(CLI::IsMember(text_json));

  auto* reduce_cmd = app.add_subcommand("reduce", "Build a reduction certificate and check its obligations");
  reduce_cmd->add_option("CASE", name, "construction name, see 'cases'")->required();
  reduce_cmd->add_option("FILE", file, "'key: value' parameters, or a single formula used as phi")->required();
  reduce_cmd->add_option("--width", width, "check width (default: the construction's own)");
  reduce_cmd->add_option("--format", format)->check(CLI::IsMember(text_json));

  app.add_subcommand("cases", "List the reduction constructions");

  auto* translate_cmd = app.add_subcommand("translate", "Propositional translation with n bits per variable");
  translate_cmd->add_option("FILE", file)->required();
  translate_cmd->add_option("-n", n, "bits per variable")->required();
  translate_cmd->add_option("--export,--format", format)->check(CLI::IsMember({"text", "json", "qcir", "qdimacs"}));

  auto* qeval_cmd = app.add_subcommand("qeval", "Evaluate a quantified propositional formula (text or QCIR)");
  qeval_cmd->add_option("FILE", file)->required();
  qeval_cmd->add_option("--assign", assign, "p=1,q=0 or x=5 for the bits of x");

  auto* proof_cmd = app.add_subcommand("proof-check", "Check a JSON-lines proof");
  proof_cmd->add_option("FILE", file)->required();
  proof_cmd->add_option("--system", system, "G0, Gi or G*i, with +xi to use the header's axiom");
  proof_cmd->add_flag("--reflect", reflect, "evaluate the end-sequent under every assignment");
  proof_cmd->add_option("--format", format)->check(CLI::IsMember(text_json));

  auto* poset_cmd = app.add_subcommand("poset", "Fragment poset, its Hasse diagram and critical pairs");
  poset_cmd->add_option("--kind", kind)->check(CLI::IsMember({"R", "T"}));
  poset_cmd->add_option("--max-level", max_level);
  poset_cmd->add_flag("--critical-pairs", pairs, "interior critical pairs");
  poset_cmd->add_flag("--all-pairs", all_pairs, "critical pairs including the truncation boundary");
  poset_cmd->add_flag("--dot", dot, "Graphviz output");
  poset_cmd->add_flag("--flat", flat, "DOT without per-level clusters");
  poset_cmd->add_option("--format", format)->check(CLI::IsMember(text_json));

  auto* verify_cmd = app.add_subcommand("corpus-verify", "Run the acceptance suite on the golden corpus");
  verify_cmd->add_option("--seed", seed);
  verify_cmd->add_option("--only", only, "criterion numbers");
  verify_cmd->add_option("--format", format)->check(CLI::IsMember(text_json));

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*classify_cmd) return cmd_classify(file, format);
    if (*reduce_cmd) return cmd_reduce(name, file, width, format);
    if (app.got_subcommand("cases")) return cmd_cases();
    if (*translate_cmd) return cmd_translate(file, n, format);
    if (*qeval_cmd) return cmd_qeval(file, assign);
    if (*proof_cmd) return cmd_proof_check(file, system, reflect, format);
    if (*poset_cmd) return cmd_poset(kind, max_level, pairs, all_pairs, dot, flat, format);
    if (*verify_cmd) return cmd_corpus_verify(seed, only, format);
  } catch (const UsageError& e) {
    std::cerr << "bawb: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "bawb: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
