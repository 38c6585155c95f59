#include "acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "bawb/eval.hpp"
#include "bawb/poset.hpp"
#include "bawb/qprop.hpp"
#include "bawb/reductions.hpp"
#include "bawb/sequent.hpp"
#include "golden.hpp"
#include "json.hpp"
#include "oracles.hpp"

using namespace bawb;

namespace acceptance {

namespace {

class Checks {
 public:
  void expect(bool ok, const std::function<std::string()>& what) {
    ++count_;
    if (ok) return;
    ++failed_;
    if (messages_.size() < 20) messages_.push_back(what());
  }
  void fail(const std::string& what) {
    expect(false, [&] { return what; });
  }
  std::size_t count() const { return count_; }
  std::size_t failed() const { return failed_; }
  std::vector<std::string> messages() const {
    auto m = messages_;
    if (failed_ > messages_.size()) m.push_back("... " + std::to_string(failed_ - messages_.size()) + " more");
    return m;
  }

 private:
  std::size_t count_ = 0, failed_ = 0;
  std::vector<std::string> messages_;
};

std::string stem(const std::string& path) { return std::filesystem::path(path).stem().string(); }

std::vector<golden::Sample> samples_for(int criterion) {
  std::vector<golden::Sample> out;
  for (const auto& s : golden::reduction_samples())
    if (s.criterion == criterion) out.push_back(s);
  return out;
}

std::string c1_classifier(Checks& ck, std::uint64_t) {
  std::set<std::string> levels;
  for (const auto& e : golden::formula_corpus()) {
    Formula f = parse_formula(e.text);
    QuantClass got = classify(f);
    QuantClass ref = oracle::least_class(f);
    ck.expect(to_string(got) == e.expected, [&] { return e.text + ": classified " + to_string(got) + ", listed " + e.expected; });
    ck.expect(to_string(got) == to_string(ref), [&] { return e.text + ": classified " + to_string(got) + ", oracle " + to_string(ref); });
    levels.insert(std::to_string(got.level));
  }
  std::size_t n = golden::formula_corpus().size();
  ck.expect(n >= 25, [&] { return "corpus has only " + std::to_string(n) + " formulas"; });
  for (const char* l : {"0", "1", "2", "3"})
    ck.expect(levels.count(l) == 1, [&] { return std::string("no corpus formula at level ") + l; });
  return std::to_string(n) + " formulas, levels 0-3, oracle agreement";
}

std::string c2_parser(Checks& ck, std::uint64_t seed) {
  auto round = [&](const Formula& f) {
    std::string text = render(f);
    Formula back = parse_formula(text);
    ck.expect(equal(back, f) && render(back) == text, [&] { return "round trip changed " + text; });
  };
  for (const auto& e : golden::formula_corpus()) round(parse_formula(e.text));
  oracle::RandomAst gen(seed);
  for (int i = 0; i < 1000; ++i) round(gen.formula(4));
  return std::to_string(golden::formula_corpus().size()) + " corpus + 1000 random ASTs (seed " + std::to_string(seed) + ")";
}

std::string c3_param_free(Checks& ck, std::uint64_t) {
  std::map<std::string, int> per_case;
  for (const auto& s : samples_for(3)) {
    ReductionCertificate c = build_case(s.case_name, s.params);
    Report r = check_certificate(c);
    int want = s.case_name == "param-free-sigma-pind" ? 4 : 5;
    ck.expect(r.width == want, [&] { return s.file + ": checked at width " + std::to_string(r.width); });
    ck.expect(r.obligations_valid(), [&] { return s.file + ": obligation not valid"; });
    ck.expect(r.claims_ok(), [&] { return s.file + ": class claim failed"; });
    ck.expect(r.ok(), [&] { return s.file + ": report not ok"; });
    ++per_case[s.case_name];
  }
  for (const char* name : {"param-free-pi-ind", "param-free-sigma-ind", "param-free-pi-pind", "param-free-sigma-pind"})
    ck.expect(per_case[name] >= 3, [&] { return std::string(name) + ": fewer than 3 samples"; });
  return std::to_string(samples_for(3).size()) + " certificates over 4 cases";
}

std::string c4_basic(Checks& ck, std::uint64_t) {
  std::size_t mutants = 0;
  for (const auto& s : samples_for(4)) {
    ReductionCertificate c = build_case(s.case_name, s.params);
    Report r = check_certificate(c);
    ck.expect(r.width >= 4 && r.width <= 5, [&] { return s.file + ": checked at width " + std::to_string(r.width); });
    ck.expect(r.ok(), [&] { return s.file + ": report not ok"; });
    ck.expect(c.mutations.size() >= 3, [&] { return s.file + ": fewer than 3 mutations"; });
    for (const auto& op : c.mutations) {
      ++mutants;
      Report m = check_certificate(mutate(c, op));
      ck.expect(!m.obligations_valid(), [&] { return s.file + ": mutation " + op + " survived"; });
    }
  }
  std::set<std::string> names;
  for (const auto& s : samples_for(4)) names.insert(s.case_name);
  for (const char* n : {"dual-ind", "dual-pind", "pi-to-sigma-ind", "pind-to-ind", "ind-to-pind-rule", "additive",
                        "merge-nested-pi"})
    ck.expect(names.count(n) == 1, [&] { return std::string("no sample for ") + n; });
  return std::to_string(samples_for(4).size()) + " certificates, " + std::to_string(mutants) + " mutants caught";
}

std::string c5_variants(Checks& ck, std::uint64_t) {
  for (const auto& s : samples_for(5)) {
    ReductionCertificate c = build_case(s.case_name, s.params);
    Report r = check_certificate(c);
    int want = s.case_name == "pairing-side-conditions" ? 4 : 5;  // operands below 16
    ck.expect(r.width == want, [&] { return s.file + ": checked at width " + std::to_string(r.width); });
    ck.expect(r.ok(), [&] { return s.file + ": report not ok"; });
  }
  return std::to_string(samples_for(5).size()) + " variant certificates";
}

std::string c6_collapse(Checks& ck, std::uint64_t) {
  std::size_t codes = 0;
  for (auto mode : {CollapseMode::IND, CollapseMode::PIND}) {
    const bool pind = mode == CollapseMode::PIND;
    for (int k = 1; k <= 3; ++k)
      for (std::uint64_t L = 1; L <= 3; ++L) {
        CollapseCodec codec{k, L, mode};
        std::uint64_t tuples = std::uint64_t{1} << (L * static_cast<std::uint64_t>(k));
        for (std::uint64_t t = 0; t < tuples; ++t) {
          std::vector<Natural> d;
          std::vector<std::uint64_t> raw;
          for (int l = 0; l < k; ++l) {
            std::uint64_t v = (t >> (L * static_cast<std::uint64_t>(k - 1 - l))) & ((std::uint64_t{1} << L) - 1);
            d.push_back(Natural(v));
            raw.push_back(v);
          }
          Natural y = codec.encode(d);
          std::string bin;
          for (std::uint64_t i = y.bit_length(); i-- > 0;) bin += y.shr(i).low_bits(1).is_zero() ? '0' : '1';
          bool ok = false;
          auto back = codec.decode(y, &ok);
          ++codes;
          ck.expect(bin == oracle::collapse_code(raw, L, pind) && ok && back == d, [&] {
            return std::string(pind ? "PIND" : "IND") + " code k=" + std::to_string(k) + " L=" + std::to_string(L) +
                   " tuple " + std::to_string(t);
          });
        }
      }
  }
  for (const auto& s : samples_for(6)) {
    Report r = check_certificate(build_case(s.case_name, s.params));
    ck.expect(r.width == 4, [&] { return s.file + ": checked at width " + std::to_string(r.width); });
    std::map<std::string, const ObligationResult*> by;
    for (const auto& o : r.obligations) by[o.label] = &o;
    for (const char* label : {"large", "descent"}) {
      auto it = by.find(label);
      ck.expect(it != by.end() && it->second->valid && !it->second->vacuous,
                [&] { return s.file + ": conclusion " + label + " not established"; });
    }
    ck.expect(r.ok(), [&] { return s.file + ": report not ok"; });
  }
  return std::to_string(codes) + " codes round-tripped, " + std::to_string(samples_for(6).size()) + " k=2 instances";
}

std::string c7_kaye(Checks& ck, std::uint64_t) {
  std::set<int> ks;
  for (const auto& s : samples_for(7)) {
    ReductionCertificate c = build_case(s.case_name, s.params);
    int k = static_cast<int>(c.outputs.size() / 2) - 1;
    ks.insert(k);
    Report r = check_certificate(c);
    ck.expect(r.width == 4, [&] { return s.file + ": checked at width " + std::to_string(r.width); });
    for (const auto& o : r.obligations)
      ck.expect(o.valid && !o.vacuous, [&] { return s.file + ": " + o.label + (o.valid ? " vacuous" : " not valid"); });
    ck.expect(!r.syntactic.empty(), [&] { return s.file + ": no syntactic checks"; });
    for (const auto& sc : r.syntactic) ck.expect(sc.ok, [&] { return s.file + ": " + sc.label; });
    ck.expect(r.ok(), [&] { return s.file + ": report not ok"; });
  }
  ck.expect(ks == std::set<int>{1, 2, 3}, [] { return "instances do not cover k = 1, 2, 3"; });
  return "k = 1, 2, 3 instances";
}

std::string c8_translation(Checks& ck, std::uint64_t) {
  std::size_t evals = 0;
  for (const auto& e : golden::formula_corpus()) {
    Formula f = parse_formula(e.text);
    auto fv = free_vars(f);
    std::vector<std::string> vars(fv.begin(), fv.end());
    ck.expect(vars.size() <= 2, [&] { return e.text + ": more than 2 free variables"; });
    if (vars.size() > 2) continue;
    QuantClass c = classify(f);
    for (int n = 1; n <= 8; ++n) {
      Translation t = translate(f, n);
      QClass want = c.kind == QKind::SigmaHat ? QClass{QClassKind::SigmaQ, c.level}
                    : c.kind == QKind::PiHat  ? QClass{QClassKind::PiQ, c.level}
                                              : QClass{QClassKind::QuantifierFree, 0};
      ck.expect(c.kind != QKind::NonStrict && qin_class(t.root, want),
                [&] { return e.text + ": n=" + std::to_string(n) + " translation is " + to_string(qclassify(t.root)); });
      if (n > 3) continue;
      std::uint64_t N = std::uint64_t{1} << n;
      std::uint64_t total = 1;
      for (std::size_t i = 0; i < vars.size(); ++i) total *= N;
      for (std::uint64_t m = 0; m < total; ++m) {
        Env env;
        QAssignment a;
        std::uint64_t rest = m;
        for (const auto& v : vars) {
          env[v] = rest % N;
          assign_bits(a, v, rest % N, n);
          rest /= N;
        }
        ++evals;
        ck.expect(qeval(t.root, a) == eval(f, env), [&] { return e.text + ": n=" + std::to_string(n) + " input " + std::to_string(m); });
      }
    }
  }
  return std::to_string(evals) + " truth checks, classes for n <= 8";
}

std::string c9_proofs(Checks& ck, std::uint64_t seed) {
  std::set<std::string> systems;
  std::size_t files = 0, mutants = 0, reflections = 0;
  std::map<std::string, int> per_class;
  std::mt19937_64 rng(seed);
  for (const auto& file : golden::proof_files()) {
    ++files;
    Proof p = parse_proof(golden::read_file(file));
    systems.insert(p.system.name());
    ProofVerdict v = check_proof(p);
    ck.expect(v.accepted, [&] { return stem(file) + ": rejected at step " + std::to_string(v.step) + " (" + v.reason + ")"; });
    if (!v.accepted) continue;
    for (const auto& m : proof_mutants(p)) {
      ++mutants;
      ++per_class[m.cls];
      ProofVerdict mv = check_proof(m.proof);
      auto ok = expected_reasons(m.cls);
      ck.expect(!mv.accepted && std::find(ok.begin(), ok.end(), mv.reason) != ok.end(), [&] {
        return stem(file) + ": mutant " + m.cls + "/" + m.what + (mv.accepted ? " accepted" : " rejected as " + mv.reason);
      });
    }
    Sequent end = end_sequent(p.steps);
    std::set<std::string> vs;
    for (const auto* side : {&end.ante, &end.succ})
      for (QProp q : *side)
        for (const auto& x : qfree_vars(q)) vs.insert(x);
    std::vector<std::string> vars(vs.begin(), vs.end());
    bool exhaustive = vars.size() <= 10;
    std::uint64_t count = exhaustive ? (std::uint64_t{1} << vars.size()) : 100;
    for (std::uint64_t m = 0; m < count; ++m) {
      std::uint64_t bits = exhaustive ? m : rng();
      QAssignment a;
      for (std::size_t k = 0; k < vars.size(); ++k) a[vars[k]] = ((bits >> (k % 64)) & 1u) != 0;
      ++reflections;
      ck.expect(reflection_test(p.steps, p.system, a), [&] { return stem(file) + ": reflection fails at " + std::to_string(bits); });
    }
  }
  ck.expect(files == 10, [&] { return std::to_string(files) + " golden proofs"; });
  for (const char* s : {"G0", "G1", "G*1", "G1+xi", "G2"})
    ck.expect(systems.count(s) == 1, [&] { return std::string("no golden proof in ") + s; });
  ck.expect(mutants >= 50, [&] { return std::to_string(mutants) + " mutants"; });
  for (const auto& c : mutation_classes())
    ck.expect(per_class[c] > 0, [&] { return "no mutant of class " + c; });
  return std::to_string(files) + " proofs accepted, " + std::to_string(mutants) + " mutants rejected, " +
         std::to_string(reflections) + " reflection checks";
}

std::string c10_poset(Checks& ck, std::uint64_t) {
  const int L = 5;
  std::size_t pairs = 0;
  for (bool rules : {true, false}) {
    const std::string tag = rules ? "P_R" : "P_T";
    FragmentPoset p = build_poset(rules ? PosetKind::R : PosetKind::T, L);
    auto id = [&](int i) { return p.nodes[static_cast<std::size_t>(i)].id(); };
    auto cps = critical_pairs(p, true);
    auto expected = golden::expected_critical_pairs(rules, L);
    std::set<std::pair<std::string, std::string>> got;
    for (const auto& c : cps) {
      got.insert({id(c.a), id(c.b)});
      auto it = expected.find({id(c.a), id(c.b)});
      ck.expect(it != expected.end(), [&] { return tag + ": unexpected critical pair <" + id(c.a) + ", " + id(c.b) + ">"; });
      if (it == expected.end()) continue;
      bool sub = it->second == "rules-subsumed";
      ck.expect(c.subsumed == sub && (!sub || c.witness.has_value()),
                [&] { return tag + ": subsumption tag wrong on <" + id(c.a) + ", " + id(c.b) + ">"; });
    }
    for (const auto& [k, fam] : expected)
      ck.expect(got.count(k) == 1, [&, k = k] { return tag + ": missing critical pair <" + k.first + ", " + k.second + ">"; });
    pairs += cps.size();

    BasisReport interior_basis = check_basis(p, critical_pairs(p, false), L - 1);
    ck.expect(interior_basis.ok, [&] { return tag + ": basis fails at " + id(interior_basis.a) + " !<= " + id(interior_basis.b); });
    BasisReport inner = check_basis(p, cps, L - 2);
    ck.expect(inner.ok, [&] { return tag + ": interior pairs miss " + id(inner.a) + " !<= " + id(inner.b); });

    auto hasse = hasse_edges(p);
    for (int i = 1; i <= L; ++i) {
      std::set<std::pair<std::string, std::string>> level;
      for (auto [lo, hi] : hasse)
        if (!p.nodes[static_cast<std::size_t>(hi)].base && p.nodes[static_cast<std::size_t>(hi)].level == i)
          level.insert({id(hi), id(lo)});
      ck.expect(level == golden::figure_edges(rules, i), [&] { return tag + ": Hasse cluster differs from the figure at level " + std::to_string(i); });
    }
    auto w = find_non_lattice_witness(p);
    ck.expect(w.has_value() && w->minimal_upper_bounds.size() >= 2, [&] { return tag + ": no non-lattice witness"; });
  }
  for (auto [k, file] : {std::pair{PosetKind::R, "/poset/PR-4.dot"}, std::pair{PosetKind::T, "/poset/PT-4.dot"}})
    ck.expect(to_dot(build_poset(k, 4), true) == golden::read_file(golden::dir() + file),
              [&, file = file] { return std::string("DOT differs from ") + file; });
  return std::to_string(pairs) + " interior critical pairs at max level 5";
}

struct Criterion {
  const char* name;
  double limit;
  std::string (*fn)(Checks&, std::uint64_t);
};

const Criterion kCriteria[] = {
    {"classifier", 1, c1_classifier},        {"parser-round-trip", 5, c2_parser},
    {"param-free-certificates", 60, c3_param_free}, {"core-reductions", 120, c4_basic},
    {"variant-schemes", 60, c5_variants},    {"collapse", 60, c6_collapse},
    {"kaye-expansion", 30, c7_kaye},         {"translation", 120, c8_translation},
    {"proof-checker", 60, c9_proofs},        {"poset", 30, c10_poset},
};

}  // namespace

Result run(int id, std::uint64_t seed) {
  if (id < 1 || id > 10) throw std::out_of_range("no criterion " + std::to_string(id));
  const Criterion& c = kCriteria[id - 1];
  Result r;
  r.id = id;
  r.name = c.name;
  r.limit = c.limit;
  Checks ck;
  auto t0 = std::chrono::steady_clock::now();
  try {
    r.summary = c.fn(ck, seed);
  } catch (const std::exception& e) {
    ck.fail(std::string("exception: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.checks_ok = ck.failed() == 0;
  r.failures = ck.messages();
  if (r.summary.empty()) r.summary = "aborted";
  r.summary += " (" + std::to_string(ck.count()) + " checks)";
  return r;
}

std::vector<Result> run_all(std::uint64_t seed, std::ostream* progress) {
  std::vector<Result> out;
  for (int i = 1; i <= 10; ++i) {
    out.push_back(run(i, seed));
    if (progress) *progress << format_line(out.back()) << std::flush;
  }
  return out;
}

std::string format_line(const Result& r) {
  std::ostringstream s;
  s << (r.pass() ? "PASS" : "FAIL") << ' ' << r.id << ' ' << r.name << ' ' << std::fixed << std::setprecision(2)
    << r.seconds << "s/" << std::setprecision(0) << r.limit << "s: " << r.summary << '\n';
  if (r.checks_ok && !r.pass()) s << "    over the time limit\n";
  for (const auto& f : r.failures) s << "    " << f << '\n';
  return s.str();
}

std::string report_json(const std::vector<Result>& rs, std::uint64_t seed) {
  nlohmann::ordered_json j;
  j["seed"] = seed;
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  bool all = true;
  for (const auto& r : rs) {
    all = all && r.pass();
    arr.push_back({{"id", r.id},
                   {"name", r.name},
                   {"pass", r.pass()},
                   {"seconds", r.seconds},
                   {"limit", r.limit},
                   {"summary", r.summary},
                   {"failures", r.failures}});
  }
  j["criteria"] = arr;
  j["pass"] = all;
  return j.dump(2) + "\n";
}

}  // namespace acceptance
