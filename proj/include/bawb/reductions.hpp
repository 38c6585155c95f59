#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "bawb/eval.hpp"
#include "bawb/formula.hpp"

namespace bawb {

class ReductionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Scheme { IND, PIND, LIND, IND_lt, LIND_lt, PIND_lt, PIND_res, MIN, LMIN };
enum class RuleForm { Axiom, AxiomParamFree, Rule, RuleParamFree, RuleBaseInConclusion };

struct RuleKind {
  Scheme scheme = Scheme::IND;
  RuleForm form = RuleForm::Rule;
  QuantClass cls;
};

std::string to_string(Scheme s);

/// A formula read under the universal closure of `vars`. Variables missing
/// from `widths` range over the width the obligation is checked at.
struct FreeFormula {
  Formula formula;
  std::vector<std::string> vars;
  std::map<std::string, int> widths;
};

struct Obligation {
  std::string label;
  std::vector<FreeFormula> premises;
  FreeFormula conclusion;
};

struct ClassClaim {
  std::string subject;
  Formula formula;
  QuantClass cls;
};

/// A purely syntactic condition decided when the certificate is built.
struct SyntacticCheck {
  std::string label;
  bool ok = true;
};

struct ReductionCertificate {
  std::string name;
  std::vector<Formula> inputs;
  std::vector<std::string> output_names;
  std::vector<Formula> outputs;
  std::vector<Obligation> obligations;
  std::vector<ClassClaim> class_claims;
  std::vector<SyntacticCheck> syntactic;
  /// Width the construction is meant to be checked at.
  int width = 5;
  /// Mutations of outputs[0] that the obligations are expected to catch.
  std::vector<std::string> mutations;
  /// Recomputes obligations and claims from the current outputs.
  std::function<void(ReductionCertificate&)> rebuild;
};

struct ObligationResult {
  std::string label;
  bool valid = true;
  bool vacuous = false;
  std::string failed_premise;  // set when vacuous
  Env counterexample;
  std::uint64_t assignments = 0;
};

struct ClaimResult {
  std::string subject;
  QuantClass claimed;
  std::string actual;
  bool ok = true;
};

struct Report {
  std::string name;
  int width = 0;
  std::vector<ObligationResult> obligations;
  std::vector<ClaimResult> claims;
  std::vector<SyntacticCheck> syntactic;
  bool obligations_valid() const;
  bool claims_ok() const;
  bool ok() const;
};

Report check_certificate(const ReductionCertificate& cert, int width, const EvalOptions& opts = {});
/// Checks at cert.width.
Report check_certificate(const ReductionCertificate& cert, const EvalOptions& opts = {});

// mutation operators on formulas; return null when the operator does not apply
Formula mutate_formula(const Formula& f, const std::string& op);
std::vector<std::string> mutation_operators();
ReductionCertificate mutate(const ReductionCertificate& cert, const std::string& op);

// Natural parameters of the constructions. Inputs use x for the induction
// variable and y for the parameter unless stated otherwise.

/// 2^(|x|^c) as a term, c >= 1.
Term pow2_len_pow(const Term& x, int c);

/// Parameter elimination for induction rules; kind.scheme is IND or PIND and
/// kind.cls is sigma_i or pi_i.
ReductionCertificate eliminate_parameters(const Formula& phi, const RuleKind& kind);

struct BasicOptions {
  Scheme scheme = Scheme::IND;  // IND or PIND where the item has both
  int level = -1;               // class level of phi; inferred when negative
  QKind side = QKind::NonStrict;  // SigmaHat or PiHat; inferred when NonStrict
};

/// Reductions between the core rules. item in {2, 4, 5, 6, 7} following the
/// numbering used throughout the documentation.
ReductionCertificate basic_reduce(int item, const Formula& phi, const BasicOptions& opts = {});

/// Collapses two nested Pi rule applications into one (chi construction).
ReductionCertificate merge_nested_pi(const Formula& phi, const Formula& psi, int c);

enum class Variant {
  BasePosition,       // base case moved between premise and conclusion
  PindToLind,
  LindToPind,
  IndLt,              // IND_< from IND (mode picks PIND_< from PIND)
  IndLtConverse,      // IND for forall z < 2^|x| theta from IND_< (c = 1)
  PindRes,
  BaseInConclusion,
  MinAsIndLt,
  MinRule
};

struct VariantOptions {
  Scheme scheme = Scheme::IND;  // IND or PIND where the variant has both
  int c = 1;
};

ReductionCertificate variant_reduce(Variant v, const Formula& phi, const VariantOptions& opts = {});

/// Side conditions of the pairing u * 2^|u| + v used by IndLtConverse.
ReductionCertificate pairing_side_conditions();

enum class CollapseMode { IND, PIND };

/// Digit codec behind collapse_chain.
struct CollapseCodec {
  int k = 1;
  std::uint64_t L = 1;  // digit width |x|^c
  CollapseMode mode = CollapseMode::IND;
  /// Base used for the length header; L + 1 keeps the length order sound.
  std::uint64_t base() const { return L + 1; }

  Natural encode(const std::vector<Natural>& digits) const;
  /// Empty when y is not a valid encoding.
  std::vector<Natural> decode(const Natural& y, bool* valid) const;
  /// Header exponent for the given digits.
  std::uint64_t header(const std::vector<Natural>& digits, std::uint64_t base) const;
  /// 2^threshold_bits is the least y accepted unconditionally (PIND mode).
  std::uint64_t threshold_bits() const;
};

/// thetas[j-1] has free variables among x0..x_{j-1} and y (y in the last
/// slot); phi has free variable x. t(x) = 2^(|x|^c) - 1.
ReductionCertificate collapse_chain(const std::vector<Formula>& thetas, const Formula& phi, int c, CollapseMode mode,
                                    int width = 4);

struct KayeInstance {
  Formula alpha;
  Formula beta;
};

ReductionCertificate kaye_expand(const std::vector<KayeInstance>& instances, const Formula& phi,
                                 const std::vector<FreeFormula>& theory = {});

/// True if f is built from the given formulas with & and | and the constants.
bool monotone_shape(const Formula& f, const std::vector<Formula>& atoms);

/// Named constructions taking "key: value" parameters (phi, psi, theta1, ...).
std::vector<std::string> case_names();
ReductionCertificate build_case(const std::string& name, const std::map<std::string, std::string>& params);
/// Reads "key: value" lines; blank lines and lines starting with # are skipped.
std::map<std::string, std::string> parse_case_params(const std::string& text);

std::string certificate_json(const ReductionCertificate& cert);
std::string report_json(const Report& r);
std::string report_text(const Report& r);

}  // namespace bawb
