#include <cctype>
#include <utility>

#include "bawb/formula.hpp"

namespace bawb {

ParseError::ParseError(const std::string& msg, int line, int col)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg),
      line_(line),
      col_(col) {}

namespace {

enum class Tok { End, Ident, Num, Sym };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1, col = 1;
  std::size_t offset = 0;
};

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c)) {
      advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    t.offset = i;
    if (std::isalpha(c) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '\''))
        ++j;
      t.kind = Tok::Ident;
      t.text = s.substr(i, j - i);
    } else if (std::isdigit(c)) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      t.kind = Tok::Num;
      t.text = s.substr(i, j - i);
    } else if (s.compare(i, 2, "<=") == 0 || s.compare(i, 2, "->") == 0) {
      t.kind = Tok::Sym;
      t.text = s.substr(i, 2);
    } else if (std::string("+*#()=~&|.,").find(static_cast<char>(c)) != std::string::npos) {
      t.kind = Tok::Sym;
      t.text = std::string(1, static_cast<char>(c));
    } else {
      throw ParseError(std::string("unknown symbol '") + static_cast<char>(c) + "'", line, col);
    }
    advance(t.text.size());
    out.push_back(std::move(t));
  }
  Token end;
  end.line = line;
  end.col = col;
  end.offset = s.size();
  out.push_back(end);
  return out;
}

const std::map<std::string, Op>& functions() {
  static const std::map<std::string, Op> m = {
      {"half", Op::Half}, {"len", Op::Len},   {"div2", Op::Div2},   {"mod2", Op::Mod2},
      {"pair", Op::Pair}, {"left", Op::Left}, {"right", Op::Right}, {"slice", Op::Slice},
      {"seq", Op::Seq},   {"cond", Op::Cond}};
  return m;
}

bool reserved(const std::string& w) { return w == "EX" || w == "ALL" || w == "monus" || functions().count(w); }

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(lex(text)) {}

  Formula formula_eof() {
    Formula f = implication();
    expect_end();
    return f;
  }

  Term term_eof() {
    Term t = term();
    expect_end();
    return t;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  bool at(const char* sym) const { return peek().kind == Tok::Sym && peek().text == sym; }
  bool at_word(const char* w) const { return peek().kind == Tok::Ident && peek().text == w; }

  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(msg + ", found " + found, t.line, t.col);
  }

  void expect(const char* sym) {
    if (!at(sym)) fail(std::string("expected '") + sym + "'");
    ++pos_;
  }

  void expect_end() {
    if (peek().kind != Tok::End) fail("unexpected trailing input");
  }

  Formula implication() {
    Formula l = disjunction();
    if (at("->")) {
      ++pos_;
      return imp(l, implication());
    }
    return l;
  }

  Formula disjunction() {
    Formula l = conjunction();
    while (at("|")) {
      ++pos_;
      l = disj(l, conjunction());
    }
    return l;
  }

  Formula conjunction() {
    Formula l = unary();
    while (at("&")) {
      ++pos_;
      l = conj(l, unary());
    }
    return l;
  }

  Formula unary() {
    if (at("~")) {
      ++pos_;
      return neg(unary());
    }
    if (at_word("EX") || at_word("ALL")) {
      bool ex = peek().text == "EX";
      ++pos_;
      if (peek().kind != Tok::Ident || reserved(peek().text)) fail("expected bound variable");
      std::string v = peek().text;
      ++pos_;
      expect("<=");
      if (at(".")) fail("expected bound term");
      Term bound = term();
      expect(".");
      Formula body = implication();
      return ex ? exists(v, bound, body) : forall(v, bound, body);
    }
    if (at("(")) {
      std::size_t save = pos_;
      try {
        return comparison();
      } catch (const ParseError& e1) {
        pos_ = save + 1;
        try {
          Formula f = implication();
          expect(")");
          return f;
        } catch (const ParseError& e2) {
          if (std::pair(e1.line(), e1.column()) > std::pair(e2.line(), e2.column())) throw e1;
          throw;
        }
      }
    }
    return comparison();
  }

  Formula comparison() {
    Term l = term();
    if (at("=")) {
      ++pos_;
      return eq(l, term());
    }
    if (at("<=")) {
      ++pos_;
      return le(l, term());
    }
    fail("expected '=' or '<='");
  }

  Term term() {
    Term l = product();
    for (;;) {
      if (at("+")) {
        ++pos_;
        l = add(l, product());
      } else if (at_word("monus")) {
        ++pos_;
        l = monus(l, product());
      } else {
        return l;
      }
    }
  }

  Term product() {
    Term l = smash_level();
    while (at("*")) {
      ++pos_;
      l = mul(l, smash_level());
    }
    return l;
  }

  Term smash_level() {
    Term l = primary();
    while (at("#")) {
      ++pos_;
      l = smash(l, primary());
    }
    return l;
  }

  Term primary() {
    const Token& t = peek();
    if (t.kind == Tok::Num) {
      if (t.text == "0") {
        ++pos_;
        return zero();
      }
      if (t.text == "1") {
        ++pos_;
        return one();
      }
      throw ParseError("unknown symbol '" + t.text + "' (only the constants 0 and 1 exist)", t.line, t.col);
    }
    if (at("(")) {
      ++pos_;
      Term inner = term();
      expect(")");
      return inner;
    }
    if (t.kind == Tok::Ident) {
      auto it = functions().find(t.text);
      if (it != functions().end()) {
        Op op = it->second;
        std::string name = t.text;
        int line = t.line, col = t.col;
        ++pos_;
        expect("(");
        std::vector<Term> args;
        args.push_back(term());
        while (at(",")) {
          ++pos_;
          args.push_back(term());
        }
        expect(")");
        if (static_cast<int>(args.size()) != arity(op))
          throw ParseError("arity mismatch: " + name + " takes " + std::to_string(arity(op)) + " argument(s), got " +
                               std::to_string(args.size()),
                           line, col);
        return make_term(op, std::move(args));
      }
      if (reserved(t.text)) fail("expected term");
      ++pos_;
      return var(t.text);
    }
    fail("expected term");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

int term_prec(Op op) {
  switch (op) {
    case Op::Add:
    case Op::Monus:
      return 1;
    case Op::Mul:
      return 2;
    case Op::Smash:
      return 3;
    default:
      return 4;
  }
}

void render_term(const Term& t, std::string& out) {
  switch (t->op) {
    case Op::Zero:
      out += '0';
      return;
    case Op::One:
      out += '1';
      return;
    case Op::Var:
      out += t->name;
      return;
    case Op::Add:
    case Op::Mul:
    case Op::Smash:
    case Op::Monus: {
      int p = term_prec(t->op);
      bool pl = term_prec(t->args[0]->op) < p;
      bool pr = term_prec(t->args[1]->op) <= p;
      if (pl) out += '(';
      render_term(t->args[0], out);
      if (pl) out += ')';
      out += ' ';
      out += op_name(t->op);
      out += ' ';
      if (pr) out += '(';
      render_term(t->args[1], out);
      if (pr) out += ')';
      return;
    }
    default: {
      out += op_name(t->op);
      out += '(';
      for (std::size_t i = 0; i < t->args.size(); ++i) {
        if (i) out += ", ";
        render_term(t->args[i], out);
      }
      out += ')';
      return;
    }
  }
}

int formula_prec(FKind k) {
  switch (k) {
    case FKind::Exists:
    case FKind::Forall:
      return 0;
    case FKind::Implies:
      return 1;
    case FKind::Or:
      return 2;
    case FKind::And:
      return 3;
    case FKind::Not:
      return 4;
    default:
      return 5;
  }
}

void render_formula(const Formula& f, std::string& out);

void render_child(const Formula& f, bool parens, std::string& out) {
  if (parens) out += '(';
  render_formula(f, out);
  if (parens) out += ')';
}

void render_formula(const Formula& f, std::string& out) {
  switch (f->kind) {
    case FKind::Eq:
    case FKind::Le:
      render_term(f->lhs, out);
      out += f->kind == FKind::Eq ? " = " : " <= ";
      render_term(f->rhs, out);
      return;
    case FKind::Not:
      out += '~';
      render_child(f->a, formula_prec(f->a->kind) < 4, out);
      return;
    case FKind::And:
    case FKind::Or: {
      int p = formula_prec(f->kind);
      render_child(f->a, formula_prec(f->a->kind) < p, out);
      out += f->kind == FKind::And ? " & " : " | ";
      render_child(f->b, formula_prec(f->b->kind) <= p, out);
      return;
    }
    case FKind::Implies:
      render_child(f->a, formula_prec(f->a->kind) <= 1, out);
      out += " -> ";
      render_child(f->b, formula_prec(f->b->kind) < 1, out);
      return;
    case FKind::Exists:
    case FKind::Forall:
      out += f->kind == FKind::Exists ? "EX " : "ALL ";
      out += f->var;
      out += " <= ";
      render_term(f->bound, out);
      out += ". ";
      render_formula(f->a, out);
      return;
  }
}

}  // namespace

Formula parse_formula(const std::string& text) { return Parser(text).formula_eof(); }
Term parse_term(const std::string& text) { return Parser(text).term_eof(); }

std::string render(const Term& t) {
  std::string out;
  render_term(t, out);
  return out;
}

std::string render(const Formula& f) {
  std::string out;
  render_formula(f, out);
  return out;
}

}  // namespace bawb
