#include "bawb/eval.hpp"

#include <algorithm>
#include <cstdlib>

namespace bawb {

Natural smash_value(const Natural& x, const Natural& y) {
  std::uint64_t lx = x.bit_length(), ly = y.bit_length(), e;
  if (__builtin_mul_overflow(lx, ly, &e) || e > Natural::kMaxBits)
    throw DomainCapExceeded("smash exponent too large", std::to_string(lx) + "*" + std::to_string(ly));
  return Natural::pow2(e);
}

Natural div2_value(const Natural& x, const Natural& u) {
  if (!u.is_small()) return Natural();
  return x.shr(u.small());
}

Natural mod2_value(const Natural& x, const Natural& u) {
  if (!u.is_small()) return x;
  return x.low_bits(u.small());
}

Natural pair_value(const Natural& x, const Natural& y) {
  Natural s = x + y;
  return (s * (s + 1)).half() + x;
}

namespace {

Natural diagonal(const Natural& p) {
  Natural r = (p * 8 + 1).isqrt();
  return monus(r, 1).half();
}

}  // namespace

Natural left_value(const Natural& p) {
  Natural w = diagonal(p);
  return monus(p, (w * (w + 1)).half());
}

Natural right_value(const Natural& p) {
  Natural w = diagonal(p);
  return monus(w, monus(p, (w * (w + 1)).half()));
}

Natural slice_value(const Natural& x, const Natural& i, const Natural& j) {
  std::uint64_t n = x.bit_length();
  if (!j.is_small() || !i.is_small() || i.small() > j.small() || j.small() > n) return Natural();
  return x.shr(n - j.small()).low_bits(j.small() - i.small());
}

Natural seq_value(const Natural& w, const Natural& k) {
  Natural e = left_value(w), data = right_value(w);
  if (e.is_zero()) return Natural();
  std::uint64_t n = data.bit_length(), shift;
  if (!e.is_small() || !k.is_small() || __builtin_mul_overflow(k.small(), e.small(), &shift) || shift >= n)
    return Natural();
  return data.shr(shift).low_bits(e.small());
}

Natural apply_op(Op op, const std::vector<Natural>& a) {
  switch (op) {
    case Op::Zero: return Natural(0);
    case Op::One: return Natural(1);
    case Op::Add: return a[0] + a[1];
    case Op::Mul: return a[0] * a[1];
    case Op::Smash: return smash_value(a[0], a[1]);
    case Op::Half: return a[0].half();
    case Op::Len: return Natural(a[0].bit_length());
    case Op::Monus: return monus(a[0], a[1]);
    case Op::Div2: return div2_value(a[0], a[1]);
    case Op::Mod2: return mod2_value(a[0], a[1]);
    case Op::Pair: return pair_value(a[0], a[1]);
    case Op::Left: return left_value(a[0]);
    case Op::Right: return right_value(a[0]);
    case Op::Slice: return slice_value(a[0], a[1], a[2]);
    case Op::Seq: return seq_value(a[0], a[1]);
    case Op::Cond: return a[0].is_zero() ? a[2] : a[1];
    case Op::Var: break;
  }
  throw std::logic_error("apply_op: variable has no direct semantics");
}

Natural eval_term(const Term& t, const Env& env) {
  if (t->op == Op::Var) {
    auto it = env.find(t->name);
    if (it == env.end()) throw std::invalid_argument("missing variable " + t->name);
    return it->second;
  }
  if (t->op == Op::Cond) {
    Natural c = eval_term(t->args[0], env);
    return eval_term(t->args[c.is_zero() ? 2 : 1], env);
  }
  std::vector<Natural> args;
  args.reserve(t->args.size());
  for (const auto& a : t->args) args.push_back(eval_term(a, env));
  return apply_op(t->op, args);
}

bool eval(const Formula& f, const Env& env, const EvalOptions& opts) {
  std::vector<std::string> vars;
  std::vector<Natural> values;
  for (const auto& v : free_vars(f)) {
    auto it = env.find(v);
    if (it == env.end()) throw std::invalid_argument("missing variable " + v);
    vars.push_back(v);
    values.push_back(it->second);
  }
  CompiledFormula c(f, vars, opts);
  return c(values);
}

CompiledFormula::CompiledFormula(const Formula& f, const std::vector<std::string>& vars, EvalOptions opts)
    : nvars_(vars.size()), opts_(opts) {
  std::map<std::string, std::vector<int>> scope;
  for (std::size_t i = 0; i < vars.size(); ++i) scope[vars[i]].push_back(static_cast<int>(i));
  slots_.resize(vars.size());
  root_ = compile_formula(f, scope);
}

int CompiledFormula::compile_term(const Term& t, std::map<std::string, std::vector<int>>& scope) {
  CTerm c{t->op};
  if (t->op == Op::Var) {
    auto it = scope.find(t->name);
    if (it == scope.end() || it->second.empty()) throw std::invalid_argument("missing variable " + t->name);
    c.slot = it->second.back();
  } else {
    int* dst[3] = {&c.a, &c.b, &c.c};
    for (std::size_t i = 0; i < t->args.size(); ++i) *dst[i] = compile_term(t->args[i], scope);
  }
  terms_.push_back(c);
  return static_cast<int>(terms_.size()) - 1;
}

namespace {

const FormulaNode* leading_conjunct(const Formula& f) {
  const FormulaNode* g = f.get();
  while (g->kind == FKind::And) g = g->a.get();
  return g;
}

}  // namespace

int CompiledFormula::compile_formula(const Formula& f, std::map<std::string, std::vector<int>>& scope) {
  CForm c{f->kind};
  switch (f->kind) {
    case FKind::Eq:
    case FKind::Le:
      c.lhs = compile_term(f->lhs, scope);
      c.rhs = compile_term(f->rhs, scope);
      break;
    case FKind::Not:
      c.a = compile_formula(f->a, scope);
      break;
    case FKind::And:
    case FKind::Or:
    case FKind::Implies:
      c.a = compile_formula(f->a, scope);
      c.b = compile_formula(f->b, scope);
      break;
    case FKind::Exists:
    case FKind::Forall: {
      c.bound = compile_term(f->bound, scope);
      c.slot = static_cast<int>(slots_.size());
      slots_.emplace_back();
      scope[f->var].push_back(c.slot);
      const FormulaNode* g = nullptr;
      if (f->kind == FKind::Forall && f->a->kind == FKind::Implies) g = leading_conjunct(f->a->a);
      if (f->kind == FKind::Exists && f->a->kind == FKind::And) g = leading_conjunct(f->a);
      if (g && g->kind == FKind::Le && monotone_in(g->lhs, f->var) && !term_has_var(g->rhs, f->var)) {
        CForm atom{FKind::Le};
        atom.lhs = compile_term(g->lhs, scope);
        atom.rhs = compile_term(g->rhs, scope);
        forms_.push_back(atom);
        c.guard = static_cast<int>(forms_.size()) - 1;
      }
      c.a = compile_formula(f->a, scope);
      scope[f->var].pop_back();
      break;
    }
  }
  forms_.push_back(c);
  return static_cast<int>(forms_.size()) - 1;
}

Natural CompiledFormula::term(int i) {
  const CTerm& t = terms_[static_cast<std::size_t>(i)];
  switch (t.op) {
    case Op::Zero: return Natural(0);
    case Op::One: return Natural(1);
    case Op::Var: return slots_[static_cast<std::size_t>(t.slot)];
    case Op::Add: return term(t.a) + term(t.b);
    case Op::Mul: return term(t.a) * term(t.b);
    case Op::Smash: return smash_value(term(t.a), term(t.b));
    case Op::Half: return term(t.a).half();
    case Op::Len: return Natural(term(t.a).bit_length());
    case Op::Monus: return monus(term(t.a), term(t.b));
    case Op::Div2: return div2_value(term(t.a), term(t.b));
    case Op::Mod2: return mod2_value(term(t.a), term(t.b));
    case Op::Pair: return pair_value(term(t.a), term(t.b));
    case Op::Left: return left_value(term(t.a));
    case Op::Right: return right_value(term(t.a));
    case Op::Slice: return slice_value(term(t.a), term(t.b), term(t.c));
    case Op::Seq: return seq_value(term(t.a), term(t.b));
    case Op::Cond: return term(t.a).is_zero() ? term(t.c) : term(t.b);
  }
  return Natural();
}

bool CompiledFormula::form(int i) {
  const CForm& f = forms_[static_cast<std::size_t>(i)];
  switch (f.kind) {
    case FKind::Eq: return term(f.lhs) == term(f.rhs);
    case FKind::Le: return term(f.lhs) <= term(f.rhs);
    case FKind::Not: return !form(f.a);
    case FKind::And: return form(f.a) && form(f.b);
    case FKind::Or: return form(f.a) || form(f.b);
    case FKind::Implies: return !form(f.a) || form(f.b);
    case FKind::Exists:
    case FKind::Forall: {
      Natural b = term(f.bound);
      if (!b.is_small() || b.small() > opts_.bound_cap)
        throw DomainCapExceeded("quantifier bound exceeds domain cap", b.to_string());
      bool ex = f.kind == FKind::Exists;
      Natural& slot = slots_[static_cast<std::size_t>(f.slot)];
      for (std::uint64_t v = 0; v <= b.small(); ++v) {
        slot = Natural(v);
        if (opts_.prune && f.guard >= 0 && !form(f.guard)) return !ex;
        if (form(f.a) == ex) return ex;
      }
      return !ex;
    }
  }
  return false;
}

bool CompiledFormula::operator()(const std::vector<Natural>& values) {
  if (values.size() != nvars_) throw std::invalid_argument("CompiledFormula: wrong number of values");
  for (std::size_t i = 0; i < nvars_; ++i) slots_[i] = values[i];
  return form(root_);
}

int max_width() {
  if (const char* s = std::getenv("BAWB_MAX_WIDTH")) {
    int v = std::atoi(s);
    if (v > 0) return v;
  }
  return 8;
}

Verdict check_valid(const Formula& f, const std::vector<std::string>& vars, int width, const EvalOptions& opts) {
  if (width < 0 || width > max_width())
    throw std::invalid_argument("width " + std::to_string(width) + " outside [0, " + std::to_string(max_width()) + "]");
  return check_valid(f, vars, std::vector<int>(vars.size(), width), opts);
}

Verdict check_valid(const Formula& f, const std::vector<std::string>& vars, const std::vector<int>& widths,
                    const EvalOptions& opts) {
  if (widths.size() != vars.size()) throw std::invalid_argument("one width per variable expected");
  for (int w : widths)
    if (w < 0 || w > max_width() + 16)
      throw std::invalid_argument("variable width " + std::to_string(w) + " out of range");
  for (const auto& v : free_vars(f))
    if (std::find(vars.begin(), vars.end(), v) == vars.end())
      throw std::invalid_argument("free variable " + v + " not listed");
  CompiledFormula c(f, vars, opts);
  std::vector<Natural> values(vars.size(), Natural(0));
  std::vector<std::uint64_t> digits(vars.size(), 0);
  Verdict out;
  for (;;) {
    ++out.assignments;
    if (!c(values)) {
      out.valid = false;
      for (std::size_t i = 0; i < vars.size(); ++i) out.counterexample[vars[i]] = values[i];
      return out;
    }
    std::size_t k = 0;
    while (k < digits.size() && ++digits[k] == (std::uint64_t{1} << widths[k])) {
      digits[k] = 0;
      values[k] = Natural(0);
      ++k;
    }
    if (k == digits.size()) return out;
    values[k] = Natural(digits[k]);
  }
}

}  // namespace bawb
