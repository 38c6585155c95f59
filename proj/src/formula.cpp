#include "bawb/formula.hpp"

#include <algorithm>

namespace bawb {

int arity(Op op) {
  switch (op) {
    case Op::Zero:
    case Op::One:
    case Op::Var:
      return 0;
    case Op::Half:
    case Op::Len:
    case Op::Left:
    case Op::Right:
      return 1;
    case Op::Slice:
    case Op::Cond:
      return 3;
    default:
      return 2;
  }
}

const char* op_name(Op op) {
  switch (op) {
    case Op::Zero: return "0";
    case Op::One: return "1";
    case Op::Var: return "var";
    case Op::Add: return "+";
    case Op::Mul: return "*";
    case Op::Smash: return "#";
    case Op::Half: return "half";
    case Op::Len: return "len";
    case Op::Monus: return "monus";
    case Op::Div2: return "div2";
    case Op::Mod2: return "mod2";
    case Op::Pair: return "pair";
    case Op::Left: return "left";
    case Op::Right: return "right";
    case Op::Slice: return "slice";
    case Op::Seq: return "seq";
    case Op::Cond: return "cond";
  }
  return "?";
}

namespace {

Term leaf(Op op) {
  static const Term z = std::make_shared<const TermNode>(TermNode{Op::Zero, {}, {}});
  static const Term o = std::make_shared<const TermNode>(TermNode{Op::One, {}, {}});
  return op == Op::Zero ? z : o;
}

Formula make_formula(FormulaNode n) { return std::make_shared<const FormulaNode>(std::move(n)); }

}  // namespace

Term zero() { return leaf(Op::Zero); }
Term one() { return leaf(Op::One); }

Term var(const std::string& name) {
  if (name.empty()) throw std::invalid_argument("empty variable name");
  return std::make_shared<const TermNode>(TermNode{Op::Var, name, {}});
}

Term num(std::uint64_t n) {
  if (n == 0) return zero();
  if (n == 1) return one();
  if (n == 2) return add(one(), one());
  if (n % 2 == 0) return mul(num(2), num(n / 2));
  return add(num(n - 1), one());
}

Term make_term(Op op, std::vector<Term> args) {
  if (op == Op::Zero || op == Op::One) {
    if (!args.empty()) throw std::invalid_argument("constant takes no arguments");
    return leaf(op);
  }
  if (op == Op::Var) throw std::invalid_argument("use var() for variables");
  if (static_cast<int>(args.size()) != arity(op))
    throw std::invalid_argument(std::string("arity mismatch for ") + op_name(op));
  for (const auto& a : args)
    if (!a) throw std::invalid_argument("null term argument");
  return std::make_shared<const TermNode>(TermNode{op, {}, std::move(args)});
}

Term add(Term a, Term b) { return make_term(Op::Add, {std::move(a), std::move(b)}); }
Term mul(Term a, Term b) { return make_term(Op::Mul, {std::move(a), std::move(b)}); }
Term smash(Term a, Term b) { return make_term(Op::Smash, {std::move(a), std::move(b)}); }
Term half(Term a) { return make_term(Op::Half, {std::move(a)}); }
Term len(Term a) { return make_term(Op::Len, {std::move(a)}); }
Term monus(Term a, Term b) { return make_term(Op::Monus, {std::move(a), std::move(b)}); }
Term div2(Term x, Term u) { return make_term(Op::Div2, {std::move(x), std::move(u)}); }
Term mod2(Term x, Term u) { return make_term(Op::Mod2, {std::move(x), std::move(u)}); }
Term pair(Term a, Term b) { return make_term(Op::Pair, {std::move(a), std::move(b)}); }
Term left(Term a) { return make_term(Op::Left, {std::move(a)}); }
Term right(Term a) { return make_term(Op::Right, {std::move(a)}); }
Term slice(Term x, Term i, Term j) { return make_term(Op::Slice, {std::move(x), std::move(i), std::move(j)}); }
Term seq(Term w, Term i) { return make_term(Op::Seq, {std::move(w), std::move(i)}); }
Term cond(Term a, Term b, Term c) { return make_term(Op::Cond, {std::move(a), std::move(b), std::move(c)}); }

Formula eq(Term a, Term b) { return make_formula({FKind::Eq, std::move(a), std::move(b), {}, {}, {}, {}}); }
Formula le(Term a, Term b) { return make_formula({FKind::Le, std::move(a), std::move(b), {}, {}, {}, {}}); }
Formula lt(Term a, Term b) { return le(add(std::move(a), one()), std::move(b)); }
Formula neg(Formula a) { return make_formula({FKind::Not, {}, {}, std::move(a), {}, {}, {}}); }
Formula conj(Formula a, Formula b) { return make_formula({FKind::And, {}, {}, std::move(a), std::move(b), {}, {}}); }
Formula disj(Formula a, Formula b) { return make_formula({FKind::Or, {}, {}, std::move(a), std::move(b), {}, {}}); }
Formula imp(Formula a, Formula b) {
  return make_formula({FKind::Implies, {}, {}, std::move(a), std::move(b), {}, {}});
}
Formula iff(Formula a, Formula b) { return conj(imp(a, b), imp(b, a)); }

Formula exists(const std::string& v, Term bound, Formula body) {
  if (v.empty()) throw std::invalid_argument("empty bound variable");
  return make_formula({FKind::Exists, {}, {}, std::move(body), {}, v, std::move(bound)});
}
Formula forall(const std::string& v, Term bound, Formula body) {
  if (v.empty()) throw std::invalid_argument("empty bound variable");
  return make_formula({FKind::Forall, {}, {}, std::move(body), {}, v, std::move(bound)});
}

Formula top() { return eq(zero(), zero()); }
Formula bottom() { return eq(one(), zero()); }

Formula conj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return top();
  Formula r = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) r = conj(r, fs[i]);
  return r;
}

Formula disj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return bottom();
  Formula r = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) r = disj(r, fs[i]);
  return r;
}

bool equal(const Term& a, const Term& b) {
  if (a == b) return true;
  if (!a || !b || a->op != b->op || a->name != b->name || a->args.size() != b->args.size()) return false;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!equal(a->args[i], b->args[i])) return false;
  return true;
}

bool equal(const Formula& a, const Formula& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case FKind::Eq:
    case FKind::Le:
      return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
    case FKind::Not:
      return equal(a->a, b->a);
    case FKind::And:
    case FKind::Or:
    case FKind::Implies:
      return equal(a->a, b->a) && equal(a->b, b->b);
    case FKind::Exists:
    case FKind::Forall:
      return a->var == b->var && equal(a->bound, b->bound) && equal(a->a, b->a);
  }
  return false;
}

namespace {

void collect(const Term& t, std::set<std::string>& out) {
  if (t->op == Op::Var) {
    out.insert(t->name);
    return;
  }
  for (const auto& a : t->args) collect(a, out);
}

void collect_free(const Formula& f, std::set<std::string>& out) {
  switch (f->kind) {
    case FKind::Eq:
    case FKind::Le:
      collect(f->lhs, out);
      collect(f->rhs, out);
      return;
    case FKind::Not:
      collect_free(f->a, out);
      return;
    case FKind::And:
    case FKind::Or:
    case FKind::Implies:
      collect_free(f->a, out);
      collect_free(f->b, out);
      return;
    case FKind::Exists:
    case FKind::Forall: {
      collect(f->bound, out);
      std::set<std::string> inner;
      collect_free(f->a, inner);
      inner.erase(f->var);
      out.insert(inner.begin(), inner.end());
      return;
    }
  }
}

void collect_all(const Formula& f, std::set<std::string>& out) {
  if (f->is_atom()) {
    collect(f->lhs, out);
    collect(f->rhs, out);
    return;
  }
  if (f->is_quant()) {
    out.insert(f->var);
    collect(f->bound, out);
  }
  if (f->a) collect_all(f->a, out);
  if (f->b) collect_all(f->b, out);
}

}  // namespace

std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> out;
  collect(t, out);
  return out;
}

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> out;
  collect_free(f, out);
  return out;
}

std::set<std::string> all_vars(const Formula& f) {
  std::set<std::string> out;
  collect_all(f, out);
  return out;
}

bool term_has_var(const Term& t, const std::string& v) {
  if (t->op == Op::Var) return t->name == v;
  return std::any_of(t->args.begin(), t->args.end(), [&](const Term& a) { return term_has_var(a, v); });
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  if (!avoid.count(base)) return base;
  std::string stem = base;
  auto us = stem.rfind('_');
  if (us != std::string::npos && us + 1 < stem.size() &&
      std::all_of(stem.begin() + static_cast<long>(us) + 1, stem.end(), [](char c) { return c >= '0' && c <= '9'; }))
    stem.erase(us);
  for (int k = 1;; ++k) {
    std::string cand = stem + "_" + std::to_string(k);
    if (!avoid.count(cand)) return cand;
  }
}

Term substitute(const Term& t, const Subst& s) {
  if (s.empty()) return t;
  if (t->op == Op::Var) {
    auto it = s.find(t->name);
    return it == s.end() ? t : it->second;
  }
  if (t->args.empty()) return t;
  std::vector<Term> args;
  args.reserve(t->args.size());
  bool changed = false;
  for (const auto& a : t->args) {
    args.push_back(substitute(a, s));
    changed = changed || args.back() != a;
  }
  return changed ? make_term(t->op, std::move(args)) : t;
}

Formula substitute(const Formula& f, const Subst& s) {
  if (s.empty()) return f;
  switch (f->kind) {
    case FKind::Eq:
    case FKind::Le: {
      Term l = substitute(f->lhs, s), r = substitute(f->rhs, s);
      if (l == f->lhs && r == f->rhs) return f;
      return f->kind == FKind::Eq ? eq(l, r) : le(l, r);
    }
    case FKind::Not: {
      Formula a = substitute(f->a, s);
      return a == f->a ? f : neg(a);
    }
    case FKind::And:
    case FKind::Or:
    case FKind::Implies: {
      Formula a = substitute(f->a, s), b = substitute(f->b, s);
      if (a == f->a && b == f->b) return f;
      return make_formula({f->kind, {}, {}, a, b, {}, {}});
    }
    case FKind::Exists:
    case FKind::Forall: {
      Term bound = substitute(f->bound, s);
      std::set<std::string> body_free = free_vars(f->a);
      Subst inner;
      std::set<std::string> incoming;
      for (const auto& [k, t] : s) {
        if (k == f->var || !body_free.count(k)) continue;
        inner.emplace(k, t);
        collect(t, incoming);
      }
      std::string v = f->var;
      if (incoming.count(v)) {
        std::set<std::string> avoid = body_free;
        avoid.insert(incoming.begin(), incoming.end());
        for (const auto& kv : inner) avoid.insert(kv.first);
        std::string w = fresh_name(v, avoid);
        inner[v] = var(w);
        v = w;
      }
      Formula body = substitute(f->a, inner);
      if (v == f->var && body == f->a && bound == f->bound) return f;
      return make_formula({f->kind, {}, {}, body, {}, v, bound});
    }
  }
  return f;
}

Formula substitute(const Formula& f, const std::string& v, const Term& t) { return substitute(f, Subst{{v, t}}); }

bool monotone_in(const Term& t, const std::string& v) {
  if (!term_has_var(t, v)) return true;
  switch (t->op) {
    case Op::Var:
      return true;
    case Op::Add:
    case Op::Mul:
    case Op::Smash:
    case Op::Pair:
      return monotone_in(t->args[0], v) && monotone_in(t->args[1], v);
    case Op::Half:
    case Op::Len:
      return monotone_in(t->args[0], v);
    case Op::Monus:
    case Op::Div2:
      return monotone_in(t->args[0], v) && !term_has_var(t->args[1], v);
    default:
      return false;
  }
}

}  // namespace bawb
