#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "bawb/formula.hpp"

namespace bawb {

enum class QOp : std::uint8_t { Var, False, True, Not, And, Or, Exists, Forall };

/// Interned node; structurally equal formulas share one node, so pointer
/// equality is syntactic equality.
struct QNode {
  QOp op;
  std::uint32_t id;
  const std::string* name;  // Var and quantifiers
  const QNode* a;
  const QNode* b;
  bool quantified;  // a quantifier occurs in this subformula
};
using QProp = const QNode*;

class QError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// exact constructors; nothing is simplified
QProp qvar(const std::string& name);
QProp qfalse();
QProp qtrue();
QProp qnot(QProp a);
QProp qand(QProp a, QProp b);
QProp qor(QProp a, QProp b);
QProp qexists(const std::string& v, QProp body);
QProp qforall(const std::string& v, QProp body);

/// Number of distinct nodes reachable from q.
std::size_t qsize(QProp q);
std::set<std::string> qfree_vars(QProp q);
/// Replaces free variables; throws QError when a replacement would be captured.
QProp qsubstitute(QProp q, const std::map<std::string, QProp>& s);

// text form: 0 1 ~ & | and "EX p: body", "ALL p: body"; & and | associate left
QProp qparse(const std::string& text);
/// Tree rendering; exponential for heavily shared DAGs.
std::string qrender(QProp q);

enum class QClassKind : std::uint8_t { QuantifierFree, SigmaQ, PiQ };

struct QClass {
  QClassKind kind = QClassKind::QuantifierFree;
  int level = 0;
  friend bool operator==(const QClass&, const QClass&) = default;
};

std::string to_string(const QClass& c);
/// Least class under the recursive definition. When a formula sits in both
/// SigmaQ_i and PiQ_i but in neither at level i-1, SigmaQ_i is reported.
QClass qclassify(QProp q);
/// Membership of q in the class c.
bool qin_class(QProp q, const QClass& c);
/// Class inclusion a within b.
bool qclass_within(const QClass& a, const QClass& b);

using QAssignment = std::map<std::string, bool>;

struct QEvalOptions {
  /// Largest number of nested quantifiers that will be enumerated.
  int max_quantifier_depth = 40;
};

bool qeval(QProp q, const QAssignment& a, const QEvalOptions& opts = {});

// translation of bounded formulas
struct BitOrigin {
  std::string source;  // first-order variable
  int bit = 0;         // 0 is least significant
};

struct Translation {
  QProp root = nullptr;
  /// Origin of every propositional variable the translation introduced.
  std::map<std::string, BitOrigin> provenance;
  /// Free first-order variables with their bit variables, least significant first.
  std::map<std::string, std::vector<std::string>> free_bits;
};

struct TranslateOptions {
  int max_n = 8;  // BAWB_MAX_N overrides
  std::size_t max_nodes = 4'000'000;
};

/// "v.x.k" for bit k of x.
std::string bit_name(const std::string& var, int k);
Translation translate(const Formula& f, int n, const TranslateOptions& opts = {});
/// Bits of value for variable var, least significant first.
void assign_bits(QAssignment& a, const std::string& var, std::uint64_t value, int n);

// exports
std::string export_qcir(QProp q);
QProp import_qcir(const std::string& text);
/// Prenex CNF; equisatisfiable, with the Tseitin variables innermost.
std::string export_qdimacs(QProp q);

}  // namespace bawb
