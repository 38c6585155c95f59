#include <algorithm>

#include "bawb/formula.hpp"

namespace bawb {

std::string to_string(const QuantClass& c) {
  switch (c.kind) {
    case QKind::SigmaHatB0: return "b0";
    case QKind::SigmaHat: return "sigma" + std::to_string(c.level);
    case QKind::PiHat: return "pi" + std::to_string(c.level);
    case QKind::NonStrict: return "nonstrict";
  }
  return "?";
}

QuantClass parse_class(const std::string& s) {
  if (s == "b0" || s == "sigma0" || s == "pi0") return {QKind::SigmaHatB0, 0};
  if (s == "nonstrict") return {QKind::NonStrict, 0};
  auto level_of = [&](std::size_t prefix) {
    std::string rest = s.substr(prefix);
    if (rest.empty() || !std::all_of(rest.begin(), rest.end(), [](char c) { return c >= '0' && c <= '9'; }))
      throw std::invalid_argument("bad class name: " + s);
    return std::stoi(rest);
  };
  if (s.rfind("sigma", 0) == 0) return {QKind::SigmaHat, level_of(5)};
  if (s.rfind("pi", 0) == 0) return {QKind::PiHat, level_of(2)};
  throw std::invalid_argument("bad class name: " + s);
}

bool is_sharp_bound(const Term& bound) { return bound->op == Op::Len; }

bool is_sharply_bounded(const Formula& f) {
  switch (f->kind) {
    case FKind::Eq:
    case FKind::Le:
      return true;
    case FKind::Not:
      return is_sharply_bounded(f->a);
    case FKind::And:
    case FKind::Or:
    case FKind::Implies:
      return is_sharply_bounded(f->a) && is_sharply_bounded(f->b);
    case FKind::Exists:
    case FKind::Forall:
      return is_sharp_bound(f->bound) && is_sharply_bounded(f->a);
  }
  return false;
}

QuantClass classify(const Formula& f) {
  std::vector<const FormulaNode*> prefix;
  Formula g = f;
  while (g->is_quant()) {
    prefix.push_back(g.get());
    g = g->a;
  }
  if (!is_sharply_bounded(g)) return {QKind::NonStrict, 0};
  while (!prefix.empty() && is_sharp_bound(prefix.back()->bound)) prefix.pop_back();
  if (prefix.empty()) return {QKind::SigmaHatB0, 0};
  int blocks = 1;
  for (std::size_t i = 1; i < prefix.size(); ++i)
    if (prefix[i]->kind != prefix[i - 1]->kind) ++blocks;
  return {prefix.front()->kind == FKind::Exists ? QKind::SigmaHat : QKind::PiHat, blocks};
}

Levels block_levels(const Formula& f) {
  switch (f->kind) {
    case FKind::Eq:
    case FKind::Le:
      return {0, 0};
    case FKind::Not: {
      Levels l = block_levels(f->a);
      return {l.pi, l.sigma};
    }
    case FKind::And:
    case FKind::Or: {
      Levels a = block_levels(f->a), b = block_levels(f->b);
      return {std::max(a.sigma, b.sigma), std::max(a.pi, b.pi)};
    }
    case FKind::Implies: {
      Levels a = block_levels(f->a), b = block_levels(f->b);
      return {std::max(a.pi, b.sigma), std::max(a.sigma, b.pi)};
    }
    case FKind::Exists:
    case FKind::Forall: {
      Levels body = block_levels(f->a);
      bool flat = body.sigma == 0 && body.pi == 0;
      if (flat && is_sharp_bound(f->bound)) return {0, 0};
      if (f->kind == FKind::Exists) {
        int s = std::max(1, std::min(body.sigma, body.pi + 1));
        return {s, s + 1};
      }
      int p = std::max(1, std::min(body.pi, body.sigma + 1));
      return {p + 1, p};
    }
  }
  return {0, 0};
}

bool in_class(const Formula& f, const QuantClass& c) {
  Levels l = block_levels(f);
  switch (c.kind) {
    case QKind::SigmaHatB0: return l.sigma == 0;
    case QKind::SigmaHat: return l.sigma <= c.level;
    case QKind::PiHat: return l.pi <= c.level;
    case QKind::NonStrict: return true;
  }
  return false;
}

Formula nnf(const Formula& f) {
  switch (f->kind) {
    case FKind::Eq:
    case FKind::Le:
      return f;
    case FKind::And: return conj(nnf(f->a), nnf(f->b));
    case FKind::Or: return disj(nnf(f->a), nnf(f->b));
    case FKind::Implies: return disj(nnf(neg(f->a)), nnf(f->b));
    case FKind::Exists: return exists(f->var, f->bound, nnf(f->a));
    case FKind::Forall: return forall(f->var, f->bound, nnf(f->a));
    case FKind::Not: break;
  }
  const Formula& g = f->a;
  switch (g->kind) {
    case FKind::Eq:
    case FKind::Le:
      return f;
    case FKind::Not: return nnf(g->a);
    case FKind::And: return disj(nnf(neg(g->a)), nnf(neg(g->b)));
    case FKind::Or: return conj(nnf(neg(g->a)), nnf(neg(g->b)));
    case FKind::Implies: return conj(nnf(g->a), nnf(neg(g->b)));
    case FKind::Exists: return forall(g->var, g->bound, nnf(neg(g->a)));
    case FKind::Forall: return exists(g->var, g->bound, nnf(neg(g->a)));
  }
  return f;
}

namespace {

struct Quant {
  FKind kind;
  std::string var;
  Term bound;
};

struct Prenex {
  std::vector<Quant> prefix;
  Formula matrix;
};

FKind dual(FKind k) { return k == FKind::Exists ? FKind::Forall : FKind::Exists; }

std::size_t count_blocks(const std::vector<Quant>& p, std::size_t from) {
  std::size_t n = 0;
  for (std::size_t i = from; i < p.size(); ++i)
    if (i == from || p[i].kind != p[i - 1].kind) ++n;
  return n;
}

Prenex pull(const Formula& f, std::set<std::string>& used) {
  if (is_sharply_bounded(f)) return {{}, f};
  switch (f->kind) {
    case FKind::Not: {
      Prenex p = pull(f->a, used);
      for (auto& q : p.prefix) q.kind = dual(q.kind);
      p.matrix = neg(p.matrix);
      return p;
    }
    case FKind::And:
    case FKind::Or:
    case FKind::Implies: {
      Prenex a = pull(f->kind == FKind::Implies ? neg(f->a) : f->a, used);
      Prenex b = pull(f->b, used);
      Prenex out;
      std::size_t i = 0, j = 0;
      while (i < a.prefix.size() || j < b.prefix.size()) {
        FKind k;
        if (i == a.prefix.size()) {
          k = b.prefix[j].kind;
        } else if (j == b.prefix.size()) {
          k = a.prefix[i].kind;
        } else if (a.prefix[i].kind == b.prefix[j].kind) {
          k = a.prefix[i].kind;
        } else {
          k = count_blocks(a.prefix, i) >= count_blocks(b.prefix, j) ? a.prefix[i].kind : b.prefix[j].kind;
        }
        while (i < a.prefix.size() && a.prefix[i].kind == k) out.prefix.push_back(a.prefix[i++]);
        while (j < b.prefix.size() && b.prefix[j].kind == k) out.prefix.push_back(b.prefix[j++]);
      }
      FKind c = f->kind == FKind::And ? FKind::And : FKind::Or;
      out.matrix = c == FKind::And ? conj(a.matrix, b.matrix) : disj(a.matrix, b.matrix);
      return out;
    }
    case FKind::Exists:
    case FKind::Forall: {
      std::string v = fresh_name(f->var, used);
      used.insert(v);
      Formula body = v == f->var ? f->a : substitute(f->a, f->var, var(v));
      Prenex inner = pull(body, used);
      inner.prefix.insert(inner.prefix.begin(), Quant{f->kind, v, f->bound});
      return inner;
    }
    default:
      return {{}, f};
  }
}

}  // namespace

Formula extract_blocks(const Formula& f) {
  std::set<std::string> used = free_vars(f);
  Prenex p = pull(f, used);
  Formula out = p.matrix;
  for (auto it = p.prefix.rbegin(); it != p.prefix.rend(); ++it)
    out = it->kind == FKind::Exists ? exists(it->var, it->bound, out) : forall(it->var, it->bound, out);
  return out;
}

}  // namespace bawb
