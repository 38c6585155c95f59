#pragma once

#include <map>
#include <string>
#include <vector>

#include "bawb/formula.hpp"

namespace bawb {

using Env = std::map<std::string, Natural>;

struct EvalOptions {
  /// Largest quantifier bound value that will be enumerated.
  std::uint64_t bound_cap = std::uint64_t{1} << 22;
  /// Stop scanning a quantifier once a monotone guard has failed.
  bool prune = true;
};

// primitive semantics shared by the evaluator and the circuit tests
Natural smash_value(const Natural& x, const Natural& y);
Natural div2_value(const Natural& x, const Natural& u);
Natural mod2_value(const Natural& x, const Natural& u);
Natural pair_value(const Natural& x, const Natural& y);
Natural left_value(const Natural& p);
Natural right_value(const Natural& p);
/// Digits i..j-1 of x counted from the most significant one; 0 when out of range.
Natural slice_value(const Natural& x, const Natural& i, const Natural& j);
/// Entry k of w = pair(e, data): floor(data / 2^(k e)) mod 2^e.
Natural seq_value(const Natural& w, const Natural& k);
Natural apply_op(Op op, const std::vector<Natural>& args);

Natural eval_term(const Term& t, const Env& env);
bool eval(const Formula& f, const Env& env, const EvalOptions& opts = {});

/// Formula compiled against a fixed list of free variables.
class CompiledFormula {
 public:
  CompiledFormula(const Formula& f, const std::vector<std::string>& vars, EvalOptions opts = {});
  /// Not reentrant: uses internal slot storage.
  bool operator()(const std::vector<Natural>& values);

  struct CTerm {
    Op op;
    int slot = -1;
    int a = -1, b = -1, c = -1;
  };
  struct CForm {
    FKind kind;
    int lhs = -1, rhs = -1;
    int a = -1, b = -1;
    int slot = -1;
    int bound = -1;
    int guard = -1;  // index of a monotone guard atom, or -1
  };

 private:
  int compile_term(const Term& t, std::map<std::string, std::vector<int>>& scope);
  int compile_formula(const Formula& f, std::map<std::string, std::vector<int>>& scope);
  Natural term(int i);
  bool form(int i);

  std::vector<CTerm> terms_;
  std::vector<CForm> forms_;
  std::vector<Natural> slots_;
  std::size_t nvars_;
  int root_ = -1;
  EvalOptions opts_;
};

struct Verdict {
  bool valid = true;
  Env counterexample;
  std::uint64_t assignments = 0;
};

/// Enumerates every assignment of vars over [0, 2^width).
Verdict check_valid(const Formula& f, const std::vector<std::string>& vars, int width, const EvalOptions& opts = {});
/// Same with a width per variable (each capped at max_width() + 16).
Verdict check_valid(const Formula& f, const std::vector<std::string>& vars, const std::vector<int>& widths,
                    const EvalOptions& opts = {});

/// Width cap for check_valid; default 8, override with BAWB_MAX_WIDTH.
int max_width();

}  // namespace bawb
