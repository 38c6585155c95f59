#pragma once

// Shared helpers for the reduction constructions.

#include <set>
#include <string>
#include <vector>

#include "bawb/reductions.hpp"

namespace bawb::detail {

inline Term X() { return var("x"); }
inline Term Y() { return var("y"); }
inline Term V(const std::string& n) { return var(n); }

inline Formula at(const Formula& f, const Subst& s) { return substitute(f, s); }

inline Term at_term(const Term& t, Term a, Term b) { return substitute(t, Subst{{"x", std::move(a)}, {"y", std::move(b)}}); }

inline Formula ge(Term a, Term b) { return le(std::move(b), std::move(a)); }

inline FreeFormula ff(Formula f, std::vector<std::string> vars, std::map<std::string, int> widths = {}) {
  return FreeFormula{std::move(f), std::move(vars), std::move(widths)};
}

inline Obligation ob(std::string label, FreeFormula conclusion, std::vector<FreeFormula> premises = {}) {
  return Obligation{std::move(label), std::move(premises), std::move(conclusion)};
}

inline void require_free_within(const Formula& f, const std::set<std::string>& allowed, const std::string& what) {
  for (const auto& v : free_vars(f))
    if (!allowed.count(v)) {
      std::string list;
      for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
      throw ReductionError(what + " has free variable " + v + "; allowed: {" + list + "}");
    }
}

/// Level of f in the given side, checked against `level` when that is >= 0.
inline int require_side(const Formula& f, QKind side, int level, const std::string& what) {
  const char* name = side == QKind::SigmaHat ? "sigma" : "pi";
  if (level >= 0) {
    if (!in_class(f, {side, level}))
      throw ReductionError("class mismatch: " + what + " is not in " + name + std::to_string(level));
    return level;
  }
  Levels l = block_levels(f);
  return side == QKind::SigmaHat ? l.sigma : l.pi;
}

/// Splits f = Q u <= t. body; a formula without that leading quantifier is
/// read as its own body with a dummy bound 0.
struct Split {
  std::string var;
  Term bound;
  Formula body;
};

inline Split split_leading(const Formula& f, FKind kind, const std::set<std::string>& avoid) {
  if (f->kind == kind) return {f->var, f->bound, f->a};
  std::set<std::string> used = all_vars(f);
  used.insert(avoid.begin(), avoid.end());
  return {fresh_name("u", used), zero(), f};
}

inline QuantClass sigma(int i) { return {QKind::SigmaHat, i}; }
inline QuantClass pi(int i) { return {QKind::PiHat, i}; }

/// x + 1 <= y written with the guard first so the evaluator can prune.
inline Formula below(Term a, Term b) { return lt(std::move(a), std::move(b)); }

}  // namespace bawb::detail
