#include "bawb/qprop.hpp"

#include <cctype>
#include <deque>
#include <functional>
#include <mutex>
#include <unordered_map>
#include <unordered_set>

namespace bawb {

namespace {

struct Key {
  QOp op;
  const std::string* name;
  std::uint32_t a, b;
  bool operator==(const Key&) const = default;
};

struct KeyHash {
  std::size_t operator()(const Key& k) const {
    std::size_t h = std::hash<const void*>()(k.name);
    h = h * 1000003u ^ static_cast<std::size_t>(k.op);
    h = h * 1000003u ^ k.a;
    h = h * 1000003u ^ k.b;
    return h;
  }
};

class Pool {
 public:
  static Pool& get() {
    static Pool p;
    return p;
  }

  const std::string* intern(const std::string& s) {
    std::lock_guard<std::mutex> g(mu_);
    return &*names_.insert(s).first;
  }

  QProp make(QOp op, const std::string* name, QProp a, QProp b) {
    std::lock_guard<std::mutex> g(mu_);
    Key k{op, name, a ? a->id : 0u, b ? b->id : 0u};
    auto it = table_.find(k);
    if (it != table_.end()) return it->second;
    bool q = op == QOp::Exists || op == QOp::Forall || (a && a->quantified) || (b && b->quantified);
    nodes_.push_back(QNode{op, static_cast<std::uint32_t>(nodes_.size() + 1), name, a, b, q});
    QProp n = &nodes_.back();
    table_.emplace(k, n);
    return n;
  }

 private:
  std::mutex mu_;
  std::unordered_set<std::string> names_;
  std::deque<QNode> nodes_;
  std::unordered_map<Key, QProp, KeyHash> table_;
};

}  // namespace

QProp qvar(const std::string& name) {
  if (name.empty()) throw QError("empty variable name");
  return Pool::get().make(QOp::Var, Pool::get().intern(name), nullptr, nullptr);
}
QProp qfalse() { return Pool::get().make(QOp::False, nullptr, nullptr, nullptr); }
QProp qtrue() { return Pool::get().make(QOp::True, nullptr, nullptr, nullptr); }
QProp qnot(QProp a) { return Pool::get().make(QOp::Not, nullptr, a, nullptr); }
QProp qand(QProp a, QProp b) { return Pool::get().make(QOp::And, nullptr, a, b); }
QProp qor(QProp a, QProp b) { return Pool::get().make(QOp::Or, nullptr, a, b); }
QProp qexists(const std::string& v, QProp body) {
  return Pool::get().make(QOp::Exists, Pool::get().intern(v), body, nullptr);
}
QProp qforall(const std::string& v, QProp body) {
  return Pool::get().make(QOp::Forall, Pool::get().intern(v), body, nullptr);
}

std::size_t qsize(QProp q) {
  std::unordered_set<QProp> seen;
  std::vector<QProp> stack{q};
  while (!stack.empty()) {
    QProp n = stack.back();
    stack.pop_back();
    if (!n || !seen.insert(n).second) continue;
    stack.push_back(n->a);
    stack.push_back(n->b);
  }
  return seen.size();
}

std::set<std::string> qfree_vars(QProp q) {
  std::unordered_map<QProp, std::set<std::string>> memo;
  std::function<const std::set<std::string>&(QProp)> go = [&](QProp n) -> const std::set<std::string>& {
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    std::set<std::string> out;
    switch (n->op) {
      case QOp::Var: out.insert(*n->name); break;
      case QOp::False:
      case QOp::True: break;
      case QOp::Not: out = go(n->a); break;
      case QOp::And:
      case QOp::Or: {
        out = go(n->a);
        const auto& r = go(n->b);
        out.insert(r.begin(), r.end());
        break;
      }
      case QOp::Exists:
      case QOp::Forall:
        out = go(n->a);
        out.erase(*n->name);
        break;
    }
    return memo.emplace(n, std::move(out)).first->second;
  };
  return go(q);
}

QProp qsubstitute(QProp q, const std::map<std::string, QProp>& s) {
  if (s.empty()) return q;
  std::map<std::string, std::set<std::string>> fv;
  for (const auto& [k, v] : s) fv[k] = qfree_vars(v);
  std::unordered_map<QProp, QProp> memo;
  std::function<QProp(QProp)> go = [&](QProp n) -> QProp {
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    QProp r = n;
    switch (n->op) {
      case QOp::Var: {
        auto f = s.find(*n->name);
        if (f != s.end()) r = f->second;
        break;
      }
      case QOp::False:
      case QOp::True: break;
      case QOp::Not: r = qnot(go(n->a)); break;
      case QOp::And: r = qand(go(n->a), go(n->b)); break;
      case QOp::Or: r = qor(go(n->a), go(n->b)); break;
      case QOp::Exists:
      case QOp::Forall: {
        std::map<std::string, QProp> inner = s;
        inner.erase(*n->name);
        for (const auto& [k, v] : inner)
          if (fv[k].count(*n->name) && qfree_vars(n->a).count(k))
            throw QError("substituting for " + k + " would capture " + *n->name);
        QProp body = qsubstitute(n->a, inner);
        r = n->op == QOp::Exists ? qexists(*n->name, body) : qforall(*n->name, body);
        break;
      }
    }
    memo.emplace(n, r);
    return r;
  };
  return go(q);
}

// ---- text

namespace {

class QParser {
 public:
  explicit QParser(const std::string& s) : s_(s) {}

  QProp parse() {
    QProp q = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return q;
  }

 private:
  [[noreturn]] void fail(const std::string& m) { throw QError("qprop parse error at " + std::to_string(i_ + 1) + ": " + m); }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '\'';
  }
  std::string ident() {
    skip();
    if (i_ >= s_.size() || !ident_start(s_[i_])) fail("expected a variable");
    std::size_t b = i_;
    while (i_ < s_.size() && ident_char(s_[i_])) ++i_;
    return s_.substr(b, i_ - b);
  }
  bool keyword(const char* kw) {
    skip();
    std::size_t n = std::char_traits<char>::length(kw);
    if (s_.compare(i_, n, kw) != 0) return false;
    if (i_ + n < s_.size() && ident_char(s_[i_ + n])) return false;
    i_ += n;
    return true;
  }

  QProp expr() {
    QProp q = conj();
    while (eat('|')) q = qor(q, conj());
    return q;
  }
  QProp conj() {
    QProp q = unary();
    while (eat('&')) q = qand(q, unary());
    return q;
  }
  QProp unary() {
    skip();
    if (eat('~')) return qnot(unary());
    if (eat('(')) {
      QProp q = expr();
      if (!eat(')')) fail("expected ')'");
      return q;
    }
    bool ex = keyword("EX");
    if (ex || keyword("ALL")) {
      std::string v = ident();
      if (!eat(':')) fail("expected ':' after the quantified variable");
      QProp body = expr();
      return ex ? qexists(v, body) : qforall(v, body);
    }
    if (i_ < s_.size() && (s_[i_] == '0' || s_[i_] == '1') &&
        !(i_ + 1 < s_.size() && ident_char(s_[i_ + 1]))) {
      return s_[i_++] == '0' ? qfalse() : qtrue();
    }
    return qvar(ident());
  }

  const std::string& s_;
  std::size_t i_ = 0;
};

int prec(QProp q) {
  switch (q->op) {
    case QOp::Or: return 1;
    case QOp::And: return 2;
    case QOp::Not: return 3;
    case QOp::Exists:
    case QOp::Forall: return 0;
    default: return 4;
  }
}

void render_to(QProp q, std::string& out) {
  auto operand = [&](QProp c, int min) {
    bool paren = prec(c) < min || prec(c) == 0;
    if (paren) out += '(';
    render_to(c, out);
    if (paren) out += ')';
  };
  switch (q->op) {
    case QOp::Var: out += *q->name; break;
    case QOp::False: out += '0'; break;
    case QOp::True: out += '1'; break;
    case QOp::Not:
      out += '~';
      operand(q->a, 3);
      break;
    case QOp::And:
    case QOp::Or: {
      int p = prec(q);
      operand(q->a, p);
      out += q->op == QOp::And ? " & " : " | ";
      operand(q->b, p + 1);
      break;
    }
    case QOp::Exists:
    case QOp::Forall:
      out += q->op == QOp::Exists ? "EX " : "ALL ";
      out += *q->name;
      out += ": ";
      render_to(q->a, out);
      break;
  }
}

}  // namespace

QProp qparse(const std::string& text) { return QParser(text).parse(); }

std::string qrender(QProp q) {
  std::string out;
  render_to(q, out);
  return out;
}

// ---- classes

std::string to_string(const QClass& c) {
  switch (c.kind) {
    case QClassKind::QuantifierFree: return "qf";
    case QClassKind::SigmaQ: return "sigmaq" + std::to_string(c.level);
    case QClassKind::PiQ: return "piq" + std::to_string(c.level);
  }
  return "?";
}

namespace {

struct QLevels {
  int s = 0, p = 0;
};

QLevels levels(QProp q, std::unordered_map<QProp, QLevels>& memo) {
  auto it = memo.find(q);
  if (it != memo.end()) return it->second;
  QLevels r;
  switch (q->op) {
    case QOp::Var:
    case QOp::False:
    case QOp::True: break;
    case QOp::Not: {
      QLevels a = levels(q->a, memo);
      r = {a.p, a.s};
      break;
    }
    case QOp::And:
    case QOp::Or: {
      QLevels a = levels(q->a, memo), b = levels(q->b, memo);
      r = {std::max(a.s, b.s), std::max(a.p, b.p)};
      break;
    }
    case QOp::Exists: {
      QLevels a = levels(q->a, memo);
      r.s = std::max(1, a.s);
      r.p = r.s + 1;
      break;
    }
    case QOp::Forall: {
      QLevels a = levels(q->a, memo);
      r.p = std::max(1, a.p);
      r.s = r.p + 1;
      break;
    }
  }
  memo.emplace(q, r);
  return r;
}

}  // namespace

QClass qclassify(QProp q) {
  std::unordered_map<QProp, QLevels> memo;
  QLevels l = levels(q, memo);
  if (l.s == 0 && l.p == 0) return {QClassKind::QuantifierFree, 0};
  if (l.p < l.s) return {QClassKind::PiQ, l.p};
  return {QClassKind::SigmaQ, l.s};
}

bool qin_class(QProp q, const QClass& c) {
  std::unordered_map<QProp, QLevels> memo;
  QLevels l = levels(q, memo);
  switch (c.kind) {
    case QClassKind::QuantifierFree: return l.s == 0;
    case QClassKind::SigmaQ: return l.s <= c.level;
    case QClassKind::PiQ: return l.p <= c.level;
  }
  return false;
}

bool qclass_within(const QClass& a, const QClass& b) {
  if (a.kind == QClassKind::QuantifierFree) return true;
  if (b.kind == QClassKind::QuantifierFree) return false;
  if (a.kind == b.kind) return a.level <= b.level;
  return a.level < b.level;
}

// ---- evaluation

namespace {

class QEvaluator {
 public:
  QEvaluator(QProp root, const QAssignment& a, const QEvalOptions& o) : opts_(o) {
    std::vector<QProp> stack{root};
    while (!stack.empty()) {
      QProp n = stack.back();
      stack.pop_back();
      if (!n || index_.count(n)) continue;
      index_.emplace(n, static_cast<std::uint32_t>(index_.size()));
      if (n->name && !slot_.count(n->name)) {
        slot_.emplace(n->name, static_cast<std::uint32_t>(values_.size()));
        values_.push_back(-1);
      }
      stack.push_back(n->a);
      stack.push_back(n->b);
    }
    for (const auto& v : qfree_vars(root)) {
      auto it = a.find(v);
      if (it == a.end()) throw QError("missing variable " + v);
      values_[slot_.at(qvar(v)->name)] = it->second ? 1 : 0;
    }
    stamp_.assign(index_.size(), 0);
    cache_.assign(index_.size(), 0);
  }

  bool run(QProp root) { return eval(root, 0); }

 private:
  bool eval(QProp n, int depth) {
    std::uint32_t i = index_.at(n);
    if (stamp_[i] == epoch_) return cache_[i];
    bool r = false;
    switch (n->op) {
      case QOp::Var: {
        signed char v = values_[slot_.at(n->name)];
        if (v < 0) throw QError("missing variable " + *n->name);
        r = v;
        break;
      }
      case QOp::False: r = false; break;
      case QOp::True: r = true; break;
      case QOp::Not: r = !eval(n->a, depth); break;
      case QOp::And: r = eval(n->a, depth) && eval(n->b, depth); break;
      case QOp::Or: r = eval(n->a, depth) || eval(n->b, depth); break;
      case QOp::Exists:
      case QOp::Forall: {
        if (depth + 1 > opts_.max_quantifier_depth)
          throw QError("quantifier depth exceeds " + std::to_string(opts_.max_quantifier_depth));
        std::uint32_t s = slot_.at(n->name);
        signed char saved = values_[s];
        bool want = n->op == QOp::Exists;
        r = !want;
        for (signed char b = 0; b <= 1; ++b) {
          values_[s] = b;
          ++epoch_;
          if (eval(n->a, depth + 1) == want) {
            r = want;
            break;
          }
        }
        values_[s] = saved;
        ++epoch_;
        return r;  // not cached: the epoch moved
      }
    }
    stamp_[i] = epoch_;
    cache_[i] = r;
    return r;
  }

  QEvalOptions opts_;
  std::unordered_map<QProp, std::uint32_t> index_;
  std::unordered_map<const std::string*, std::uint32_t> slot_;
  std::vector<signed char> values_;
  std::vector<std::uint64_t> stamp_;
  std::vector<char> cache_;
  std::uint64_t epoch_ = 1;
};

}  // namespace

bool qeval(QProp q, const QAssignment& a, const QEvalOptions& opts) {
  QEvaluator e(q, a, opts);
  return e.run(q);
}

}  // namespace bawb
