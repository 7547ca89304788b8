#include "food/parser.hpp"

#include <cctype>
#include <charconv>
#include <set>
#include <type_traits>

namespace food {

namespace {

enum class Tok {
  Ident,
  Int,
  LParen,
  RParen,
  LBrace,
  RBrace,
  Comma,
  Colon,
  Semi,
  Dot,
  Assign,
  Arrow,  // =>
  Plus,
  Minus,
  Star,
  AndAnd,
  OrOr,
  EqEq,
  Le,
  Lt,
  Underscore,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
  bool newlineBefore;
};

struct ParseError {
  Diagnostic diagnostic;
};

const std::set<std::string, std::less<>> kKeywords = {
    "data", "interface", "def",   "case",  "extends", "class", "implements",
    "new",  "match",     "if",    "else",  "true",    "false",
};

bool isReserved(std::string_view name) { return name == "self" || name == "this"; }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    bool newline = true;
    while (true) {
      newline = skipTrivia() || newline;
      int line = line_, col = col_;
      if (pos_ >= src_.size()) {
        out.push_back(Token{Tok::End, "", line, col, true});
        return out;
      }
      char c = src_[pos_];
      Token t{Tok::End, "", line, col, newline};
      newline = false;
      if (std::isalpha(static_cast<unsigned char>(c)) ||
          (c == '_' && pos_ + 1 < src_.size() && isIdentChar(src_[pos_ + 1]))) {
        std::size_t start = pos_;
        while (pos_ < src_.size() && isIdentChar(src_[pos_])) advance();
        t.kind = Tok::Ident;
        t.text = std::string(src_.substr(start, pos_ - start));
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
        t.kind = Tok::Int;
        t.text = std::string(src_.substr(start, pos_ - start));
      } else {
        auto two = src_.substr(pos_, 2);
        if (two == "=>") t.kind = Tok::Arrow;
        else if (two == "&&") t.kind = Tok::AndAnd;
        else if (two == "||") t.kind = Tok::OrOr;
        else if (two == "==") t.kind = Tok::EqEq;
        else if (two == "<=") t.kind = Tok::Le;
        if (t.kind != Tok::End) {
          t.text = std::string(two);
          advance();
          advance();
        } else {
          switch (c) {
            case '(': t.kind = Tok::LParen; break;
            case ')': t.kind = Tok::RParen; break;
            case '{': t.kind = Tok::LBrace; break;
            case '}': t.kind = Tok::RBrace; break;
            case ',': t.kind = Tok::Comma; break;
            case ':': t.kind = Tok::Colon; break;
            case ';': t.kind = Tok::Semi; break;
            case '.': t.kind = Tok::Dot; break;
            case '=': t.kind = Tok::Assign; break;
            case '+': t.kind = Tok::Plus; break;
            case '-': t.kind = Tok::Minus; break;
            case '*': t.kind = Tok::Star; break;
            case '<': t.kind = Tok::Lt; break;
            case '_': t.kind = Tok::Underscore; break;
            default:
              throw ParseError{Diagnostic{std::string("unexpected character '") + c + "'", line, col}};
          }
          t.text = std::string(1, c);
          advance();
        }
      }
      out.push_back(std::move(t));
    }
  }

 private:
  static bool isIdentChar(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  // Returns whether a newline was skipped.
  bool skipTrivia() {
    bool newline = false;
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '\n') {
        newline = true;
        advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (src_.substr(pos_, 2) == "//") {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
    return newline;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Program program() {
    Program p;
    skipSemis();
    while (isDefStart()) {
      p.defs.push_back(definition());
      if (!peek().newlineBefore && peek().kind != Tok::Semi && peek().kind != Tok::End) {
        fail(peek(), "expected a newline or ';' after definition");
      }
      skipSemis();
    }
    if (peek().kind == Tok::End) fail(peek(), "expected the program's main expression");
    p.main = expression();
    skipSemis();
    if (peek().kind != Tok::End) fail(peek(), "expected the end of input after the main expression");
    return p;
  }

 private:
  // ---- token helpers

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool isKeyword(const Token& t, std::string_view kw) const { return t.kind == Tok::Ident && t.text == kw; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    next();
    return true;
  }
  const Token& expect(Tok k, std::string_view what) {
    if (peek().kind != k) fail(peek(), "expected " + std::string(what));
    return next();
  }
  void expectKeyword(std::string_view kw) {
    if (!isKeyword(peek(), kw)) fail(peek(), "expected '" + std::string(kw) + "'");
    next();
  }
  [[noreturn]] void fail(const Token& t, std::string message) {
    if (t.kind == Tok::End) message += " at end of input";
    else message += ", found '" + t.text + "'";
    throw ParseError{Diagnostic{std::move(message), t.line, t.column}};
  }
  void skipSemis() {
    while (accept(Tok::Semi)) {
    }
  }
  bool isDefStart() const {
    const Token& t = peek();
    return isKeyword(t, "data") || isKeyword(t, "interface") || isKeyword(t, "case") ||
           isKeyword(t, "class") || isKeyword(t, "def");
  }

  std::string identifier(std::string_view what) {
    const Token& t = peek();
    if (t.kind != Tok::Ident || kKeywords.count(t.text)) fail(t, "expected " + std::string(what));
    return next().text;
  }

  std::string binder(std::string_view what) {
    const Token& t = peek();
    std::string name = identifier(what);
    if (isReserved(name)) {
      throw ParseError{Diagnostic{"'" + name + "' is reserved and cannot be declared", t.line, t.column}};
    }
    return name;
  }

  // ---- definitions

  Def definition() {
    const Token& start = peek();
    SourcePos pos{start.line, start.column};
    std::string kw = next().text;
    if (kw == "data") return Def{ast::Datatype{binder("a datatype name")}, pos};
    if (kw == "interface") {
      ast::Interface it;
      it.name = binder("an interface name");
      it.methods = methodBlock(false);
      return Def{std::move(it), pos};
    }
    if (kw == "case") {
      ast::Constructor c;
      c.name = binder("a constructor name");
      c.fields = paramList();
      expectKeyword("extends");
      c.parent = identifier("a datatype name");
      return Def{std::move(c), pos};
    }
    if (kw == "class") {
      ast::Generator g;
      g.name = binder("a class name");
      g.fields = paramList();
      expectKeyword("implements");
      g.parent = identifier("an interface name");
      g.methods = methodBlock(true);
      return Def{std::move(g), pos};
    }
    return Def{consumer(), pos};
  }

  std::vector<Method> methodBlock(bool bodiesRequired) {
    expect(Tok::LBrace, "'{'");
    std::vector<Method> out;
    while (true) {
      skipSemis();
      if (accept(Tok::RBrace)) return out;
      expectKeyword("def");
      Method m;
      m.name = binder("a method name");
      m.params = paramList();
      expect(Tok::Colon, "':'");
      m.ret = type();
      if (accept(Tok::Assign)) {
        m.body = nested([&] { return expression(); });
      } else if (bodiesRequired) {
        fail(peek(), "expected '=' and a method body");
      }
      out.push_back(std::move(m));
    }
  }

  ast::Consumer consumer() {
    ast::Consumer c;
    c.name = binder("a consumer name");
    expect(Tok::LParen, "'('");
    const Token& selfTok = peek();
    if (selfTok.kind != Tok::Ident || selfTok.text != "self") {
      fail(selfTok, "expected 'self' as the consumer's first parameter");
    }
    next();
    expect(Tok::Colon, "':'");
    c.selfType = identifier("a datatype name");
    expect(Tok::RParen, "')'");
    c.params = paramList();
    expect(Tok::Colon, "':'");
    c.ret = type();
    expect(Tok::Assign, "'='");
    if (isKeyword(peek(), "match")) {
      next();
      expect(Tok::LBrace, "'{'");
      bool sawWildcard = false;
      while (true) {
        skipSemis();
        if (accept(Tok::RBrace)) break;
        const Token& caseTok = peek();
        expectKeyword("case");
        if (sawWildcard) {
          throw ParseError{Diagnostic{"wildcard must be last", caseTok.line, caseTok.column}};
        }
        Clause cl;
        if (accept(Tok::Underscore)) {
          cl.pattern = Pattern::any();
          sawWildcard = true;
        } else {
          std::string ctor = identifier("a constructor pattern");
          expect(Tok::LParen, "'('");
          std::vector<std::string> vars;
          if (!accept(Tok::RParen)) {
            do {
              vars.push_back(binder("a pattern variable"));
            } while (accept(Tok::Comma));
            expect(Tok::RParen, "')'");
          }
          cl.pattern = Pattern::of(std::move(ctor), std::move(vars));
        }
        expect(Tok::Arrow, "'=>'");
        cl.body = nested([&] { return expression(); });
        c.clauses.push_back(std::move(cl));
      }
    } else {
      c.clauses.push_back(Clause{Pattern::any(), expression()});
      c.bare = true;
    }
    return c;
  }

  std::vector<Param> paramList() {
    expect(Tok::LParen, "'('");
    std::vector<Param> out;
    if (accept(Tok::RParen)) return out;
    do {
      Param p;
      p.name = binder("a parameter name");
      expect(Tok::Colon, "':'");
      p.type = type();
      out.push_back(std::move(p));
    } while (accept(Tok::Comma));
    expect(Tok::RParen, "')'");
    return out;
  }

  Type type() {
    std::string name = identifier("a type");
    if (name == "Int") return Type::integer();
    if (name == "Bool") return Type::boolean();
    return Type::named(std::move(name));
  }

  // ---- expressions

  template <class F>
  std::invoke_result_t<F> nested(F f) {
    ++depth_;
    auto r = f();
    --depth_;
    return r;
  }

  // A token on a new line ends the expression unless we are inside parens or
  // a braced body.
  bool continues() const { return depth_ > 0 || !peek().newlineBefore; }

  static int precedence(Tok k) {
    switch (k) {
      case Tok::OrOr: return 1;
      case Tok::AndAnd: return 2;
      case Tok::EqEq:
      case Tok::Le:
      case Tok::Lt: return 3;
      case Tok::Plus:
      case Tok::Minus: return 4;
      case Tok::Star: return 5;
      default: return 0;
    }
  }

  static BinOp binop(Tok k) {
    switch (k) {
      case Tok::OrOr: return BinOp::Or;
      case Tok::AndAnd: return BinOp::And;
      case Tok::EqEq: return BinOp::Eq;
      case Tok::Le: return BinOp::Le;
      case Tok::Lt: return BinOp::Lt;
      case Tok::Plus: return BinOp::Add;
      case Tok::Minus: return BinOp::Sub;
      default: return BinOp::Mul;
    }
  }

  Expr expression(int minPrec = 1) {
    Expr lhs = postfix();
    while (continues()) {
      int prec = precedence(peek().kind);
      if (prec == 0 || prec < minPrec) break;
      BinOp op = binop(next().kind);
      Expr rhs = expression(prec + 1);
      lhs = prim(op, lhs, rhs);
    }
    return lhs;
  }

  Expr postfix() {
    Expr e = primary();
    while (continues() && peek().kind == Tok::Dot) {
      next();
      std::string m = identifier("a method name");
      e = sel(e, std::move(m), argList());
    }
    return e;
  }

  std::vector<Expr> argList() {
    expect(Tok::LParen, "'('");
    return nested([&] {
      std::vector<Expr> out;
      if (accept(Tok::RParen)) return out;
      do {
        out.push_back(expression());
      } while (accept(Tok::Comma));
      expect(Tok::RParen, "')'");
      return out;
    });
  }

  std::int64_t integer(const Token& t, bool negative) {
    std::uint64_t magnitude = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), magnitude);
    constexpr std::uint64_t limit = static_cast<std::uint64_t>(INT64_MAX);
    if (ec != std::errc() || magnitude > limit + (negative ? 1 : 0)) {
      throw ParseError{Diagnostic{"integer literal out of range", t.line, t.column}};
    }
    if (negative) return static_cast<std::int64_t>(0 - magnitude);
    return static_cast<std::int64_t>(magnitude);
  }

  Expr primary() {
    const Token& t = peek();
    if (t.kind == Tok::Int) {
      next();
      return intLit(integer(t, false));
    }
    if (t.kind == Tok::Minus && peek(1).kind == Tok::Int) {
      next();
      const Token& digits = next();
      return intLit(integer(digits, true));
    }
    if (t.kind == Tok::LParen) {
      next();
      Expr e = nested([&] { return expression(); });
      expect(Tok::RParen, "')'");
      return e;
    }
    if (isKeyword(t, "true") || isKeyword(t, "false")) {
      next();
      return boolLit(t.text == "true");
    }
    if (isKeyword(t, "if")) {
      next();
      expect(Tok::LParen, "'('");
      Expr cond = nested([&] { return expression(); });
      expect(Tok::RParen, "')'");
      Expr then = expression();
      expectKeyword("else");
      Expr otherwise = expression();
      return ifExpr(cond, then, otherwise);
    }
    if (isKeyword(t, "new")) {
      next();
      std::string c = identifier("a class name");
      return newObj(std::move(c), argList());
    }
    if (t.kind == Tok::Ident && !kKeywords.count(t.text)) {
      std::string name = next().text;
      if (peek().kind != Tok::LParen || !continues()) return var(std::move(name));
      const Token& open = peek();
      std::vector<Expr> first = argList();
      if (peek().kind == Tok::LParen && !peek().newlineBefore) {
        if (first.size() != 1) {
          throw ParseError{Diagnostic{"consumer application '" + name +
                                          "' takes exactly one argument in its first list",
                                      open.line, open.column}};
        }
        return app(std::move(name), first[0], argList());
      }
      return ctrCall(std::move(name), std::move(first));
    }
    fail(t, "expected an expression");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int depth_ = 0;
};

}  // namespace

ParseResult parse(std::string_view source) {
  ParseResult r;
  try {
    Parser p(Lexer(source).run());
    r.program = p.program();
  } catch (const ParseError& e) {
    r.diagnostics.push_back(e.diagnostic);
  }
  return r;
}

Program parseOrThrow(std::string_view source) {
  auto r = parse(source);
  if (!r.ok()) throw Error(r.diagnostics);
  return *std::move(r.program);
}

}  // namespace food
