#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "bawb/natural.hpp"

namespace bawb {

enum class Op : std::uint8_t {
  Zero,
  One,
  Var,
  Add,
  Mul,
  Smash,
  Half,
  Len,
  Monus,
  Div2,
  Mod2,
  Pair,
  Left,
  Right,
  Slice,
  Seq,
  Cond
};

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

struct TermNode {
  Op op;
  std::string name;  // Var only
  std::vector<Term> args;
};

int arity(Op op);
const char* op_name(Op op);

enum class FKind : std::uint8_t { Eq, Le, Not, And, Or, Implies, Exists, Forall };

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
  FKind kind;
  Term lhs, rhs;       // atoms
  Formula a, b;        // Not: a; binary: a, b; quantifier body: a
  std::string var;     // quantifiers
  Term bound;          // quantifiers

  bool is_atom() const { return kind == FKind::Eq || kind == FKind::Le; }
  bool is_quant() const { return kind == FKind::Exists || kind == FKind::Forall; }
  bool is_binary() const { return kind == FKind::And || kind == FKind::Or || kind == FKind::Implies; }
};

// term builders
Term zero();
Term one();
Term var(const std::string& name);
Term num(std::uint64_t n);  // built from 0, 1, + and *
Term make_term(Op op, std::vector<Term> args);
Term add(Term a, Term b);
Term mul(Term a, Term b);
Term smash(Term a, Term b);
Term half(Term a);
Term len(Term a);
Term monus(Term a, Term b);
Term div2(Term x, Term u);
Term mod2(Term x, Term u);
Term pair(Term a, Term b);
Term left(Term a);
Term right(Term a);
Term slice(Term x, Term i, Term j);
Term seq(Term w, Term i);
Term cond(Term a, Term b, Term c);

// formula builders
Formula eq(Term a, Term b);
Formula le(Term a, Term b);
Formula lt(Term a, Term b);  // a + 1 <= b
Formula neg(Formula a);
Formula conj(Formula a, Formula b);
Formula disj(Formula a, Formula b);
Formula imp(Formula a, Formula b);
Formula iff(Formula a, Formula b);  // (a -> b) & (b -> a)
Formula exists(const std::string& v, Term bound, Formula body);
Formula forall(const std::string& v, Term bound, Formula body);
Formula top();     // 0 = 0
Formula bottom();  // 1 = 0
Formula conj_all(const std::vector<Formula>& fs);  // empty -> top
Formula disj_all(const std::vector<Formula>& fs);  // empty -> bottom

bool equal(const Term& a, const Term& b);
bool equal(const Formula& a, const Formula& b);

std::set<std::string> free_vars(const Term& t);
std::set<std::string> free_vars(const Formula& f);
/// Every variable name occurring anywhere, bound or free.
std::set<std::string> all_vars(const Formula& f);
bool term_has_var(const Term& t, const std::string& v);

using Subst = std::map<std::string, Term>;

Term substitute(const Term& t, const Subst& s);
/// Simultaneous capture-avoiding substitution.
Formula substitute(const Formula& f, const Subst& s);
Formula substitute(const Formula& f, const std::string& v, const Term& t);

/// A name based on `base` not in `avoid`.
std::string fresh_name(const std::string& base, const std::set<std::string>& avoid);

// text form
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line, int col);
  int line() const noexcept { return line_; }
  int column() const noexcept { return col_; }

 private:
  int line_, col_;
};

Formula parse_formula(const std::string& text);
Term parse_term(const std::string& text);
std::string render(const Term& t);
std::string render(const Formula& f);

// classification
enum class QKind : std::uint8_t { SigmaHat, PiHat, SigmaHatB0, NonStrict };

struct QuantClass {
  QKind kind = QKind::SigmaHatB0;
  int level = 0;
  friend bool operator==(const QuantClass&, const QuantClass&) = default;
};

std::string to_string(const QuantClass& c);
QuantClass parse_class(const std::string& s);  // "sigma1", "pi2", "b0"

bool is_sharp_bound(const Term& bound);
/// Only sharply bounded quantifiers.
bool is_sharply_bounded(const Formula& f);
QuantClass classify(const Formula& f);

/// Least levels (s, p) such that the formula lies in Sigma-hat_s and Pi-hat_p
/// after pulling quantifier blocks through connectives.
struct Levels {
  int sigma = 0;
  int pi = 0;
};
Levels block_levels(const Formula& f);
/// Membership of f in the class c up to block extraction.
bool in_class(const Formula& f, const QuantClass& c);
/// Prenex form obtained by pulling quantifiers out of connectives.
Formula extract_blocks(const Formula& f);
/// Negation normal form; implications are expanded.
Formula nnf(const Formula& f);

/// True if t is syntactically nondecreasing in v.
bool monotone_in(const Term& t, const std::string& v);

}  // namespace bawb
