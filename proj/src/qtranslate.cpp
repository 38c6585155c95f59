#include <cstdlib>

#include "bawb/qprop.hpp"

namespace bawb {

namespace {

using Bits = std::vector<QProp>;

constexpr std::size_t kMaxBits = 1 << 14;

// Gate layer: folds constants and trivial cases so circuits stay small.
class Circuit {
 public:
  explicit Circuit(std::size_t budget) : budget_(budget) {}

  QProp T = qtrue(), F = qfalse();

  QProp n(QProp a) {
    if (a == T) return F;
    if (a == F) return T;
    if (a->op == QOp::Not) return a->a;
    return count(qnot(a));
  }
  QProp a(QProp x, QProp y) {
    if (x == F || y == F) return F;
    if (x == T) return y;
    if (y == T) return x;
    if (x == y) return x;
    if (complementary(x, y)) return F;
    return count(qand(x, y));
  }
  QProp o(QProp x, QProp y) {
    if (x == T || y == T) return T;
    if (x == F) return y;
    if (y == F) return x;
    if (x == y) return x;
    if (complementary(x, y)) return T;
    return count(qor(x, y));
  }
  QProp xr(QProp x, QProp y) {
    if (x == F) return y;
    if (y == F) return x;
    if (x == T) return n(y);
    if (y == T) return n(x);
    if (x == y) return F;
    return o(a(x, n(y)), a(n(x), y));
  }
  QProp mux(QProp c, QProp x, QProp y) {
    if (c == T || x == y) return x;
    if (c == F) return y;
    return o(a(c, x), a(n(c), y));
  }

  // ---- bit vectors, least significant bit first

  static QProp bit(const Bits& x, std::size_t i) { return i < x.size() ? x[i] : qfalse(); }

  Bits trim(Bits x) {
    while (!x.empty() && x.back() == F) x.pop_back();
    if (x.size() > kMaxBits) throw QError("translation needs more than " + std::to_string(kMaxBits) + " bits");
    return x;
  }

  Bits konst(std::uint64_t v) {
    Bits b;
    for (; v; v >>= 1) b.push_back(v & 1 ? T : F);
    return b;
  }

  Bits add(const Bits& x, const Bits& y) {
    std::size_t w = std::max(x.size(), y.size());
    Bits out;
    QProp c = F;
    for (std::size_t i = 0; i < w; ++i) {
      QProp p = xr(bit(x, i), bit(y, i));
      out.push_back(xr(p, c));
      c = o(a(bit(x, i), bit(y, i)), a(c, p));
    }
    out.push_back(c);
    return trim(out);
  }

  // x - y modulo 2^w together with the final borrow (set iff x < y)
  std::pair<Bits, QProp> sub(const Bits& x, const Bits& y) {
    std::size_t w = std::max(x.size(), y.size());
    Bits out;
    QProp br = F;
    for (std::size_t i = 0; i < w; ++i) {
      QProp p = xr(bit(x, i), bit(y, i));
      out.push_back(xr(p, br));
      br = o(a(n(bit(x, i)), bit(y, i)), a(n(p), br));
    }
    return {out, br};
  }

  Bits monus(const Bits& x, const Bits& y) {
    auto [d, br] = sub(x, y);
    for (auto& b : d) b = a(b, n(br));
    return trim(d);
  }

  QProp lt(const Bits& x, const Bits& y) { return sub(x, y).second; }
  QProp le(const Bits& x, const Bits& y) { return n(lt(y, x)); }
  QProp eq(const Bits& x, const Bits& y) {
    QProp r = T;
    for (std::size_t i = 0, w = std::max(x.size(), y.size()); i < w; ++i) r = a(r, n(xr(bit(x, i), bit(y, i))));
    return r;
  }
  QProp nonzero(const Bits& x) {
    QProp r = F;
    for (QProp b : x) r = o(r, b);
    return r;
  }

  Bits mul(const Bits& x, const Bits& y) {
    Bits acc;
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (y[i] == F) continue;
      Bits part(i, F);
      for (QProp b : x) part.push_back(a(b, y[i]));
      acc = add(acc, trim(part));
    }
    return trim(acc);
  }

  Bits shr_const(const Bits& x, std::size_t s) {
    if (s >= x.size()) return {};
    return Bits(x.begin() + static_cast<std::ptrdiff_t>(s), x.end());
  }
  Bits shl_const(const Bits& x, std::size_t s) {
    Bits out(s, F);
    out.insert(out.end(), x.begin(), x.end());
    return trim(out);
  }

  // floor(x / 2^u)
  Bits shr(const Bits& x, const Bits& u) {
    Bits r = x;
    QProp zero = F;
    for (std::size_t j = 0; j < u.size(); ++j) {
      if (j >= 62 || (std::size_t{1} << j) >= x.size()) {
        zero = o(zero, u[j]);
        continue;
      }
      Bits s = shr_const(r, std::size_t{1} << j);
      for (std::size_t i = 0; i < r.size(); ++i) r[i] = mux(u[j], bit(s, i), r[i]);
    }
    for (auto& b : r) b = a(b, n(zero));
    return trim(r);
  }

  // x mod 2^u
  Bits mask(const Bits& x, const Bits& u) {
    Bits r;
    for (std::size_t k = 0; k < x.size(); ++k) r.push_back(a(x[k], lt(konst(k), u)));
    return trim(r);
  }

  Bits len(const Bits& x) {
    std::vector<QProp> top(x.size());
    QProp higher = F;
    for (std::size_t k = x.size(); k-- > 0;) {
      top[k] = a(x[k], n(higher));
      higher = o(higher, x[k]);
    }
    Bits out;
    for (std::size_t b = 0; (std::size_t{1} << b) <= x.size(); ++b) {
      QProp r = F;
      for (std::size_t k = 0; k < x.size(); ++k)
        if (((k + 1) >> b) & 1) r = o(r, top[k]);
      out.push_back(r);
    }
    return trim(out);
  }

  Bits smash(const Bits& x, const Bits& y) {
    std::size_t max_e = x.size() * y.size();
    if (max_e >= kMaxBits) throw QError("smash result wider than " + std::to_string(kMaxBits) + " bits");
    Bits e = mul(len(x), len(y));
    Bits out;
    for (std::size_t k = 0; k <= max_e; ++k) out.push_back(eq(e, konst(k)));
    return trim(out);
  }

  Bits cond(const Bits& c, const Bits& x, const Bits& y) {
    QProp z = nonzero(c);
    Bits out;
    for (std::size_t i = 0, w = std::max(x.size(), y.size()); i < w; ++i) out.push_back(mux(z, bit(x, i), bit(y, i)));
    return trim(out);
  }

  Bits select(QProp c, const Bits& x, const Bits& y) {
    Bits out;
    for (std::size_t i = 0, w = std::max(x.size(), y.size()); i < w; ++i) out.push_back(mux(c, bit(x, i), bit(y, i)));
    return trim(out);
  }

  // digit-by-digit square root
  Bits isqrt(const Bits& v) {
    Bits rem, root;
    for (std::size_t i = (v.size() + 1) / 2; i-- > 0;) {
      Bits r2{bit(v, 2 * i), bit(v, 2 * i + 1)};
      r2.insert(r2.end(), rem.begin(), rem.end());
      Bits trial{T, F};
      trial.insert(trial.end(), root.begin(), root.end());
      auto [d, br] = sub(r2, trial);
      QProp ge = n(br);
      rem = select(ge, d, r2);
      if (rem.size() > root.size() + 2) rem.resize(root.size() + 2);
      root.insert(root.begin(), ge);
    }
    return trim(root);
  }

  Bits pair(const Bits& x, const Bits& y) {
    Bits s = add(x, y);
    return add(shr_const(mul(s, add(s, konst(1))), 1), x);
  }

  Bits diagonal(const Bits& p) {
    Bits r = isqrt(add(shl_const(p, 3), konst(1)));
    return shr_const(monus(r, konst(1)), 1);
  }
  Bits left(const Bits& p) {
    Bits w = diagonal(p);
    return monus(p, shr_const(mul(w, add(w, konst(1))), 1));
  }
  Bits right(const Bits& p) {
    Bits w = diagonal(p);
    return monus(w, monus(p, shr_const(mul(w, add(w, konst(1))), 1)));
  }

  Bits slice(const Bits& x, const Bits& i, const Bits& j) {
    Bits n_ = len(x);
    QProp ok = a(le(i, j), le(j, n_));
    Bits r = mask(shr(x, monus(n_, j)), monus(j, i));
    for (auto& b : r) b = a(b, ok);
    return trim(r);
  }

  Bits seq(const Bits& w, const Bits& k) {
    Bits e = left(w), data = right(w);
    Bits shift = mul(k, e);
    QProp ok = a(nonzero(e), lt(shift, len(data)));
    Bits r = mask(shr(data, shift), e);
    for (auto& b : r) b = a(b, ok);
    return trim(r);
  }

 private:
  static bool complementary(QProp x, QProp y) {
    return (x->op == QOp::Not && x->a == y) || (y->op == QOp::Not && y->a == x);
  }
  QProp count(QProp q) {
    if (++made_ > budget_) throw QError("translation exceeds " + std::to_string(budget_) + " gates");
    return q;
  }

  std::size_t budget_;
  std::size_t made_ = 0;
};

class Translator {
 public:
  Translator(int n, const TranslateOptions& o, Translation& out) : n_(n), c_(o.max_nodes), out_(out) {}

  void bind_free(const std::string& v) {
    Bits b;
    for (int k = 0; k < n_; ++k) {
      std::string name = bit_name(v, k);
      out_.provenance[name] = {v, k};
      out_.free_bits[v].push_back(name);
      b.push_back(qvar(name));
    }
    env_[v].push_back(b);
    used_.insert(v);
  }

  QProp formula(const Formula& f) {
    switch (f->kind) {
      case FKind::Eq: return c_.eq(term(f->lhs), term(f->rhs));
      case FKind::Le: return c_.le(term(f->lhs), term(f->rhs));
      case FKind::Not: return c_.n(formula(f->a));
      case FKind::And: return c_.a(formula(f->a), formula(f->b));
      case FKind::Or: return c_.o(formula(f->a), formula(f->b));
      case FKind::Implies: return c_.o(c_.n(formula(f->a)), formula(f->b));
      case FKind::Exists:
      case FKind::Forall: return is_sharply_bounded(f) ? expand(f) : block(f);
    }
    return c_.F;
  }

 private:
  Bits term(const Term& t) {
    auto arg = [&](int i) { return term(t->args[static_cast<std::size_t>(i)]); };
    switch (t->op) {
      case Op::Zero: return {};
      case Op::One: return {c_.T};
      case Op::Var: {
        auto it = env_.find(t->name);
        if (it == env_.end() || it->second.empty()) throw QError("unbound variable " + t->name);
        return it->second.back();
      }
      case Op::Add: return c_.add(arg(0), arg(1));
      case Op::Mul: return c_.mul(arg(0), arg(1));
      case Op::Smash: return c_.smash(arg(0), arg(1));
      case Op::Half: return c_.shr_const(arg(0), 1);
      case Op::Len: return c_.len(arg(0));
      case Op::Monus: return c_.monus(arg(0), arg(1));
      case Op::Div2: return c_.shr(arg(0), arg(1));
      case Op::Mod2: return c_.mask(arg(0), arg(1));
      case Op::Pair: return c_.pair(arg(0), arg(1));
      case Op::Left: return c_.left(arg(0));
      case Op::Right: return c_.right(arg(0));
      case Op::Slice: return c_.slice(arg(0), arg(1), arg(2));
      case Op::Seq: return c_.seq(arg(0), arg(1));
      case Op::Cond: return c_.cond(arg(0), arg(1), arg(2));
    }
    return {};
  }

  // sharply bounded: one disjunct or conjunct per value of the bound
  QProp expand(const Formula& f) {
    Bits bound = term(f->bound);
    if (bound.size() >= 20) throw QError("sharply bounded range too large");
    std::uint64_t top = (std::uint64_t{1} << bound.size()) - 1;
    bool ex = f->kind == FKind::Exists;
    QProp acc = ex ? c_.F : c_.T;
    for (std::uint64_t k = 0; k <= top; ++k) {
      Bits kb = c_.konst(k);
      QProp in = c_.le(kb, bound);
      if (in == c_.F) continue;
      env_[f->var].push_back(kb);
      QProp body = formula(f->a);
      env_[f->var].pop_back();
      acc = ex ? c_.o(acc, c_.a(in, body)) : c_.a(acc, c_.o(c_.n(in), body));
    }
    return acc;
  }

  // a block of propositional quantifiers as wide as the bound
  QProp block(const Formula& f) {
    Bits bound = term(f->bound);
    std::string src = f->var;
    while (used_.count(src)) src += '\'';
    used_.insert(src);
    Bits y;
    std::vector<std::string> names;
    for (std::size_t k = 0; k < bound.size(); ++k) {
      std::string name = bit_name(src, static_cast<int>(k));
      out_.provenance[name] = {f->var, static_cast<int>(k)};
      names.push_back(name);
      y.push_back(qvar(name));
    }
    env_[f->var].push_back(y);
    QProp body = formula(f->a);
    env_[f->var].pop_back();
    used_.erase(src);
    bool ex = f->kind == FKind::Exists;
    QProp guard = c_.le(y, bound);
    QProp q = ex ? c_.a(guard, body) : c_.o(c_.n(guard), body);
    for (std::size_t k = names.size(); k-- > 0;) q = ex ? qexists(names[k], q) : qforall(names[k], q);
    return q;
  }

  int n_;
  Circuit c_;
  Translation& out_;
  std::map<std::string, std::vector<Bits>> env_;
  std::set<std::string> used_;
};

}  // namespace

std::string bit_name(const std::string& var, int k) { return "v." + var + "." + std::to_string(k); }

Translation translate(const Formula& f, int n, const TranslateOptions& opts) {
  int cap = opts.max_n;
  if (const char* e = std::getenv("BAWB_MAX_N")) cap = std::atoi(e);
  if (n < 1) throw QError("n must be at least 1");
  if (n > cap) throw QError("n = " + std::to_string(n) + " exceeds the cap " + std::to_string(cap));
  if (classify(f).kind == QKind::NonStrict)
    throw QError("formula is not in a strict class: " + render(f));
  Translation out;
  Translator t(n, opts, out);
  for (const auto& v : free_vars(f)) t.bind_free(v);
  out.root = t.formula(f);
  return out;
}

void assign_bits(QAssignment& a, const std::string& var, std::uint64_t value, int n) {
  for (int k = 0; k < n; ++k) a[bit_name(var, k)] = (value >> k) & 1;
}

}  // namespace bawb
