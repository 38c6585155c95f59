#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bawb/formula.hpp"
#include "bawb/qprop.hpp"

namespace bawb {

struct Sequent {
  std::vector<QProp> ante;
  std::vector<QProp> succ;
};

enum class Rule : std::uint8_t {
  Axiom,      // A => A, => 1, 0 =>
  AxiomXi,    // => xi_n(A...)
  WeakenL,
  WeakenR,
  Exchange,
  ContractL,
  ContractR,
  NotL,
  NotR,
  AndL,
  AndR,
  OrL,
  OrR,
  ExistsL,
  ExistsR,
  ForallL,
  ForallR,
  Cut,
  Extension,  // => (~q | A) & (q | ~A)
};

const char* rule_name(Rule r);
std::optional<Rule> rule_from_name(const std::string& s);
bool is_quantifier_rule(Rule r);

struct ProofStep {
  Rule rule = Rule::Axiom;
  std::vector<int> premises;
  Sequent conclusion;
  QProp cut = nullptr;      // Cut
  QProp witness = nullptr;  // ExistsR, ForallL
  std::string eigen;        // ExistsL, ForallR
  int n = 0;                // AxiomXi
  std::map<std::string, QProp> args;  // AxiomXi: bit variable -> quantifier-free formula
  std::string ext_var;      // Extension
  QProp ext_def = nullptr;  // Extension
};

struct SystemSpec {
  int level = 1;           // cut formulas must lie in SigmaQ_level (quantifier-free for 0)
  bool tree_like = false;  // G*_i
  Formula xi;              // optional axiom schema
  std::string xi_text;

  bool extended_frege() const { return level == 0; }
  /// "G0", "G1", "G*2", with "+xi" when an axiom schema is present.
  std::string name() const;
};

/// Parses "G0", "Gi" or "G*i" (i >= 1); a trailing "+xi" is accepted and ignored.
SystemSpec parse_system(const std::string& text);

struct Proof {
  SystemSpec system;
  std::vector<ProofStep> steps;
};

class ProofFormatError : public std::runtime_error {
 public:
  ProofFormatError(const std::string& msg, int line)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// JSON lines: a header {"system": ..., "xi": ...} followed by one step per line.
Proof parse_proof(const std::string& text);
std::string write_proof(const Proof& p);

struct ProofVerdict {
  bool accepted = true;
  int step = -1;       // first failing step, -1 for system-level problems
  std::string reason;  // one of proof_reason_codes()
  std::string message;
};

const std::vector<std::string>& proof_reason_codes();

ProofVerdict check_proof(const std::vector<ProofStep>& steps, const SystemSpec& sys);
inline ProofVerdict check_proof(const Proof& p) { return check_proof(p.steps, p.system); }

Sequent end_sequent(const std::vector<ProofStep>& steps);
/// Conjunction of the antecedent implies the disjunction of the succedent.
bool eval_sequent(const Sequent& s, const QAssignment& a);
/// Truth of the end-sequent under a. For extended Frege the assignment is first
/// extended to the extension variables in order of introduction.
bool reflection_test(const std::vector<ProofStep>& steps, const SystemSpec& sys, const QAssignment& a);
std::string render(const Sequent& s);

struct ProofMutant {
  std::string cls;  // cut-class, broken-inference, eigenvariable, extension, xi-instance
  std::string what;
  Proof proof;
};

const std::vector<std::string>& mutation_classes();
/// Reason codes that count as catching a mutant of the given class.
std::vector<std::string> expected_reasons(const std::string& cls);
/// Mutants of every class for p; constructs missing from p are injected.
std::vector<ProofMutant> proof_mutants(const Proof& p);

}  // namespace bawb
