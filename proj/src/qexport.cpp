#include <cctype>
#include <functional>
#include <sstream>
#include <unordered_map>

#include "bawb/qprop.hpp"

namespace bawb {

namespace {

// Bound variables renamed so that no name is bound twice or both bound and
// free; shared quantified nodes in the same scope stay shared.
class Uniquifier {
 public:
  explicit Uniquifier(QProp q) {
    for (const auto& v : qfree_vars(q)) taken_.insert(v);
  }

  QProp run(QProp q) { return go(q, 0); }

 private:
  struct Scope {
    int parent;
    std::string from, to;
  };

  std::string lookup(const std::string& v, int scope) const {
    for (int s = scope; s > 0; s = scopes_[static_cast<std::size_t>(s)].parent)
      if (scopes_[static_cast<std::size_t>(s)].from == v) return scopes_[static_cast<std::size_t>(s)].to;
    return v;
  }

  QProp go(QProp n, int scope) {
    if (!n->quantified && scope == 0) return n;
    auto key = std::make_pair(n, scope);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    QProp r = n;
    switch (n->op) {
      case QOp::Var: r = qvar(lookup(*n->name, scope)); break;
      case QOp::False:
      case QOp::True: break;
      case QOp::Not: r = qnot(go(n->a, scope)); break;
      case QOp::And: r = qand(go(n->a, scope), go(n->b, scope)); break;
      case QOp::Or: r = qor(go(n->a, scope), go(n->b, scope)); break;
      case QOp::Exists:
      case QOp::Forall: {
        std::string to = *n->name;
        for (int k = 1; taken_.count(to); ++k) to = *n->name + "_" + std::to_string(k);
        taken_.insert(to);
        if (scopes_.empty()) scopes_.push_back({0, "", ""});
        scopes_.push_back({scope, *n->name, to});
        int inner = static_cast<int>(scopes_.size() - 1);
        QProp body = go(n->a, inner);
        r = n->op == QOp::Exists ? qexists(to, body) : qforall(to, body);
        break;
      }
    }
    memo_.emplace(key, r);
    return r;
  }

  struct PairHash {
    std::size_t operator()(const std::pair<QProp, int>& p) const {
      return std::hash<const void*>()(p.first) * 31u + static_cast<std::size_t>(p.second);
    }
  };

  std::set<std::string> taken_;
  std::vector<Scope> scopes_;
  std::unordered_map<std::pair<QProp, int>, QProp, PairHash> memo_;
};

std::string sanitize(const std::string& name, std::set<std::string>& used) {
  std::string s;
  for (char c : name) s += std::isalnum(static_cast<unsigned char>(c)) || c == '_' ? c : (c == '\'' ? 'p' : '_');
  std::string out = s;
  for (int k = 1; used.count(out); ++k) out = s + "_" + std::to_string(k);
  used.insert(out);
  return out;
}

std::string join(const std::vector<std::string>& xs, const char* sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

}  // namespace

std::string export_qcir(QProp q) {
  q = Uniquifier(q).run(q);
  std::set<std::string> used;
  std::map<std::string, std::string> id;
  auto ident = [&](const std::string& v) -> const std::string& {
    auto it = id.find(v);
    if (it == id.end()) it = id.emplace(v, sanitize(v, used)).first;
    return it->second;
  };
  std::ostringstream out;
  out << "#QCIR-G14\n";
  std::set<std::string> fv = qfree_vars(q);
  if (!fv.empty()) {
    std::vector<std::string> names;
    for (const auto& v : fv) names.push_back(ident(v));
    out << "free(" << join(names) << ")\n";
  }
  while (q->op == QOp::Exists || q->op == QOp::Forall) {
    QOp k = q->op;
    std::vector<std::string> names;
    while (q->op == k) {
      names.push_back(ident(*q->name));
      q = q->a;
    }
    out << (k == QOp::Exists ? "exists(" : "forall(") << join(names) << ")\n";
  }

  std::vector<std::string> gates;
  std::unordered_map<QProp, std::string> lit;
  int next = 0;
  std::function<std::string(QProp)> go = [&](QProp n) -> std::string {
    auto it = lit.find(n);
    if (it != lit.end()) return it->second;
    std::string r;
    auto gate = [&](const std::string& body) {
      std::string g;
      do g = "g" + std::to_string(++next);
      while (used.count(g));
      used.insert(g);
      gates.push_back(g + " = " + body);
      return g;
    };
    switch (n->op) {
      case QOp::Var: r = ident(*n->name); break;
      case QOp::True: r = gate("and()"); break;
      case QOp::False: r = gate("or()"); break;
      case QOp::Not: {
        std::string a = go(n->a);
        r = a[0] == '-' ? a.substr(1) : "-" + a;
        break;
      }
      case QOp::And: r = gate("and(" + go(n->a) + ", " + go(n->b) + ")"); break;
      case QOp::Or: r = gate("or(" + go(n->a) + ", " + go(n->b) + ")"); break;
      case QOp::Exists:
      case QOp::Forall: {
        QOp k = n->op;
        std::vector<std::string> names;
        QProp b = n;
        while (b->op == k) {
          names.push_back(ident(*b->name));
          b = b->a;
        }
        std::string body = go(b);
        r = gate(std::string(k == QOp::Exists ? "exists(" : "forall(") + join(names) + "; " + body + ")");
        break;
      }
    }
    lit.emplace(n, r);
    return r;
  };
  std::string root = go(q);
  out << "output(" << root << ")\n";
  for (const auto& g : gates) out << g << "\n";
  return out.str();
}

QProp import_qcir(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int ln = 0;
  auto fail = [&](const std::string& m) -> QError { return QError("qcir line " + std::to_string(ln) + ": " + m); };
  auto strip = [](std::string s) {
    std::string o;
    for (char c : s)
      if (!std::isspace(static_cast<unsigned char>(c))) o += c;
    return o;
  };
  auto split = [](const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
      if (c == sep) {
        out.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    if (!cur.empty() || !out.empty()) out.push_back(cur);
    return out;
  };
  std::vector<std::pair<bool, std::vector<std::string>>> prefix;
  std::string output;
  std::map<std::string, QProp> gates;
  bool header = false;
  while (std::getline(in, line)) {
    ++ln;
    std::string s = strip(line);
    if (s.empty()) continue;
    if (!header) {
      if (s.rfind("#QCIR-G14", 0) != 0) throw fail("missing #QCIR-G14 header");
      header = true;
      continue;
    }
    if (s[0] == '#') continue;
    auto open = s.find('('), close = s.rfind(')');
    if (open == std::string::npos || close != s.size() - 1) throw fail("malformed statement");
    std::string head = s.substr(0, open), args = s.substr(open + 1, close - open - 1);
    auto eqpos = head.find('=');
    if (eqpos == std::string::npos) {
      if (head == "free") continue;
      if (head == "exists" || head == "forall") {
        prefix.push_back({head == "exists", split(args, ',')});
        continue;
      }
      if (head == "output") {
        output = args;
        continue;
      }
      throw fail("unknown statement " + head);
    }
    std::string g = head.substr(0, eqpos), type = head.substr(eqpos + 1);
    auto literal = [&](const std::string& l) -> QProp {
      bool neg = !l.empty() && l[0] == '-';
      std::string v = neg ? l.substr(1) : l;
      if (v.empty()) throw fail("empty literal");
      auto it = gates.find(v);
      QProp q = it != gates.end() ? it->second : qvar(v);
      return neg ? qnot(q) : q;
    };
    QProp r;
    if (type == "and" || type == "or") {
      std::vector<std::string> ls = split(args, ',');
      bool conj = type == "and";
      if (ls.empty()) {
        r = conj ? qtrue() : qfalse();
      } else {
        r = literal(ls[0]);
        for (std::size_t i = 1; i < ls.size(); ++i) r = conj ? qand(r, literal(ls[i])) : qor(r, literal(ls[i]));
      }
    } else if (type == "xor") {
      auto ls = split(args, ',');
      if (ls.size() != 2) throw fail("xor takes two literals");
      QProp a = literal(ls[0]), b = literal(ls[1]);
      r = qor(qand(a, qnot(b)), qand(qnot(a), b));
    } else if (type == "ite") {
      auto ls = split(args, ',');
      if (ls.size() != 3) throw fail("ite takes three literals");
      QProp c = literal(ls[0]);
      r = qor(qand(c, literal(ls[1])), qand(qnot(c), literal(ls[2])));
    } else if (type == "exists" || type == "forall") {
      auto semi = args.find(';');
      if (semi == std::string::npos) throw fail("quantifier gate needs ';'");
      auto vars = split(args.substr(0, semi), ',');
      r = literal(args.substr(semi + 1));
      for (std::size_t i = vars.size(); i-- > 0;) r = type == "exists" ? qexists(vars[i], r) : qforall(vars[i], r);
    } else {
      throw fail("unknown gate type " + type);
    }
    if (gates.count(g)) throw fail("gate " + g + " defined twice");
    gates[g] = r;
  }
  if (!header) throw QError("qcir: empty input");
  if (output.empty()) throw QError("qcir: no output statement");
  bool neg = output[0] == '-';
  std::string o = neg ? output.substr(1) : output;
  auto it = gates.find(o);
  QProp q = it != gates.end() ? it->second : qvar(o);
  if (neg) q = qnot(q);
  for (std::size_t b = prefix.size(); b-- > 0;)
    for (std::size_t i = prefix[b].second.size(); i-- > 0;)
      q = prefix[b].first ? qexists(prefix[b].second[i], q) : qforall(prefix[b].second[i], q);
  return q;
}

// ---- QDIMACS

namespace {

class Prenexer {
 public:
  struct Quant {
    bool exists;
    std::string name;
  };

  std::vector<Quant> prefix;

  // negation normal form with quantifiers pulled to the front
  QProp run(QProp q) { return go(q, true, 0); }

 private:
  struct Scope {
    int parent;
    std::string from, to;
  };

  std::string lookup(const std::string& v, int scope) const {
    for (int s = scope; s > 0; s = scopes_[static_cast<std::size_t>(s)].parent)
      if (scopes_[static_cast<std::size_t>(s)].from == v) return scopes_[static_cast<std::size_t>(s)].to;
    return v;
  }

  QProp go(QProp n, bool pos, int scope) {
    auto key = std::make_tuple(n, pos, scope);
    if (!n->quantified) {
      auto it = memo_.find(key);
      if (it != memo_.end()) return it->second;
    }
    QProp r = nullptr;
    switch (n->op) {
      case QOp::Var: {
        QProp v = qvar(lookup(*n->name, scope));
        r = pos ? v : qnot(v);
        break;
      }
      case QOp::False: r = pos ? qfalse() : qtrue(); break;
      case QOp::True: r = pos ? qtrue() : qfalse(); break;
      case QOp::Not: r = go(n->a, !pos, scope); break;
      case QOp::And:
      case QOp::Or: {
        QProp a = go(n->a, pos, scope), b = go(n->b, pos, scope);
        bool conj = (n->op == QOp::And) == pos;
        r = conj ? qand(a, b) : qor(a, b);
        break;
      }
      case QOp::Exists:
      case QOp::Forall: {
        std::string to = "q" + std::to_string(++fresh_) + "_" + *n->name;
        if (scopes_.empty()) scopes_.push_back({0, "", ""});
        scopes_.push_back({scope, *n->name, to});
        prefix.push_back({(n->op == QOp::Exists) == pos, to});
        r = go(n->a, pos, static_cast<int>(scopes_.size() - 1));
        break;
      }
    }
    if (!n->quantified) memo_.emplace(key, r);
    return r;
  }

  struct KeyHash {
    std::size_t operator()(const std::tuple<QProp, bool, int>& k) const {
      return std::hash<const void*>()(std::get<0>(k)) * 31u + static_cast<std::size_t>(std::get<1>(k)) * 7u +
             static_cast<std::size_t>(std::get<2>(k));
    }
  };

  int fresh_ = 0;
  std::vector<Scope> scopes_;
  std::map<std::tuple<QProp, bool, int>, QProp> memo_;
};

}  // namespace

std::string export_qdimacs(QProp q) {
  Prenexer p;
  std::set<std::string> free = qfree_vars(q);
  QProp m = p.run(q);

  std::map<std::string, int> num;
  std::vector<std::string> names;
  auto number = [&](const std::string& v) {
    auto it = num.find(v);
    if (it != num.end()) return it->second;
    names.push_back(v);
    return num[v] = static_cast<int>(names.size());
  };
  std::vector<std::pair<bool, std::vector<int>>> blocks;
  auto add_block = [&](bool ex, int v) {
    if (blocks.empty() || blocks.back().first != ex) blocks.push_back({ex, {}});
    blocks.back().second.push_back(v);
  };
  for (const auto& v : free) add_block(true, number(v));
  for (const auto& qu : p.prefix) add_block(qu.exists, number(qu.name));

  std::vector<std::vector<int>> clauses;
  std::vector<int> aux;
  std::unordered_map<QProp, int> lit;
  int next = static_cast<int>(names.size());
  std::function<int(QProp)> go = [&](QProp n) -> int {
    auto it = lit.find(n);
    if (it != lit.end()) return it->second;
    int r = 0;
    switch (n->op) {
      case QOp::Var: r = num.count(*n->name) ? num[*n->name] : number(*n->name); break;
      case QOp::Not: r = -go(n->a); break;
      case QOp::True:
      case QOp::False:
        r = ++next;
        aux.push_back(r);
        clauses.push_back({n->op == QOp::True ? r : -r});
        break;
      case QOp::And:
      case QOp::Or: {
        int a = go(n->a), b = go(n->b);
        r = ++next;
        aux.push_back(r);
        if (n->op == QOp::And) {
          clauses.push_back({-r, a});
          clauses.push_back({-r, b});
          clauses.push_back({r, -a, -b});
        } else {
          clauses.push_back({r, -a});
          clauses.push_back({r, -b});
          clauses.push_back({-r, a, b});
        }
        break;
      }
      default: throw QError("qdimacs: quantifier left in the matrix");
    }
    lit.emplace(n, r);
    return r;
  };
  // variables created while clausifying come after the named ones
  next = static_cast<int>(names.size()) + 1'000'000;
  int root = go(m);
  // renumber auxiliary variables densely
  std::map<int, int> remap;
  int base = static_cast<int>(names.size());
  for (int v : aux) remap[v] = ++base;
  auto fix = [&](int l) {
    int v = std::abs(l);
    auto it = remap.find(v);
    int nv = it == remap.end() ? v : it->second;
    return l < 0 ? -nv : nv;
  };
  for (auto& c : clauses)
    for (auto& l : c) l = fix(l);
  clauses.push_back({fix(root)});
  std::vector<int> inner;
  for (int v : aux) inner.push_back(remap[v]);
  for (int v : inner) add_block(true, v);

  std::ostringstream out;
  out << "c prenexed and Tseitin-clausified: equisatisfiable with the source formula\n";
  out << "c free variables are existential in the outermost block\n";
  for (std::size_t i = 0; i < names.size(); ++i) out << "c var " << i + 1 << " " << names[i] << "\n";
  out << "p cnf " << base << " " << clauses.size() << "\n";
  for (const auto& [ex, vs] : blocks) {
    out << (ex ? "e" : "a");
    for (int v : vs) out << " " << v;
    out << " 0\n";
  }
  for (const auto& c : clauses) {
    for (int l : c) out << l << " ";
    out << "0\n";
  }
  return out.str();
}

}  // namespace bawb
