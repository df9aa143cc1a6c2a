#include "ljmse/parser.hpp"

#include <cctype>

namespace ljmse {

using namespace ast;

namespace {

enum class Tok {
  Ident, Lambda, TyLambda, Dot, LBrace, RBrace, LParen, RParen,
  NilTok, ColCol, Lt, Gt, Arrow, Colon, Forall, Bot, Comma, End
};

struct Lexer {
  const std::string& src;
  std::size_t pos = 0;
  Tok tok = Tok::End;
  std::string text;
  std::size_t tok_pos = 0;

  explicit Lexer(const std::string& s) : src(s) { advance(); }

  [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
    throw ParseError(msg + " at offset " + std::to_string(at), at);
  }

  void advance() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    tok_pos = pos;
    if (pos >= src.size()) {
      tok = Tok::End;
      return;
    }
    char c = src[pos];
    auto two = [&](char a, char b) {
      return c == a && pos + 1 < src.size() && src[pos + 1] == b;
    };
    if (two('/', '\\')) { tok = Tok::TyLambda; pos += 2; return; }
    if (two(':', ':')) { tok = Tok::ColCol; pos += 2; return; }
    if (two('-', '>')) { tok = Tok::Arrow; pos += 2; return; }
    if (two('[', ']')) { tok = Tok::NilTok; pos += 2; return; }
    switch (c) {
      case '\\': tok = Tok::Lambda; ++pos; return;
      case '.': tok = Tok::Dot; ++pos; return;
      case '{': tok = Tok::LBrace; ++pos; return;
      case '}': tok = Tok::RBrace; ++pos; return;
      case '(': tok = Tok::LParen; ++pos; return;
      case ')': tok = Tok::RParen; ++pos; return;
      case '<': tok = Tok::Lt; ++pos; return;
      case '>': tok = Tok::Gt; ++pos; return;
      case ':': tok = Tok::Colon; ++pos; return;
      case ',': tok = Tok::Comma; ++pos; return;
      default: break;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos;
      while (pos < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_' ||
              src[pos] == '\'')) {
        ++pos;
      }
      text = src.substr(start, pos - start);
      if (text == "forall") tok = Tok::Forall;
      else if (text == "Bot") tok = Tok::Bot;
      else tok = Tok::Ident;
      return;
    }
    fail(std::string("unexpected character '") + c + "'", pos);
  }

  void expect(Tok t, const char* what) {
    if (tok != t) fail(std::string("expected ") + what, tok_pos);
    advance();
  }
};

struct Parser {
  Lexer lx;
  Level level;

  Parser(const std::string& src, Level lvl) : lx(src), level(lvl) {}

  [[noreturn]] void fail(const std::string& msg) { lx.fail(msg, lx.tok_pos); }

  void require_level2(const char* what) {
    if (level != Level::Second)
      fail(std::string(what) + " is only available at the second-order level");
  }

  TypePtr type() {
    if (lx.tok == Tok::Forall) {
      require_level2("forall");
      lx.advance();
      if (lx.tok != Tok::Ident) fail("expected type variable after forall");
      Name x = lx.text;
      lx.advance();
      lx.expect(Tok::Dot, "'.'");
      return ty_forall(x, type());
    }
    TypePtr left = type_atom();
    if (lx.tok == Tok::Arrow) {
      lx.advance();
      return ty_arrow(left, type());
    }
    return left;
  }

  TypePtr type_atom() {
    if (lx.tok == Tok::Bot) {
      lx.advance();
      return ty_bottom();
    }
    if (lx.tok == Tok::Ident) {
      Name x = lx.text;
      lx.advance();
      return ty_var(x);
    }
    if (lx.tok == Tok::LParen) {
      lx.advance();
      TypePtr t = type();
      lx.expect(Tok::RParen, "')'");
      return t;
    }
    fail("expected a type");
  }

  TermPtr term() {
    switch (lx.tok) {
      case Tok::Lambda: {
        lx.advance();
        if (lx.tok != Tok::Ident) fail("expected variable after '\\'");
        Name x = lx.text;
        lx.advance();
        lx.expect(Tok::Dot, "'.'");
        return mk_lam(x, term());
      }
      case Tok::TyLambda: {
        require_level2("'/\\'");
        lx.advance();
        if (lx.tok != Tok::Ident) fail("expected type variable after '/\\'");
        Name x = lx.text;
        lx.advance();
        lx.expect(Tok::Dot, "'.'");
        return mk_tylam(x, term());
      }
      case Tok::LBrace: {
        lx.advance();
        CommandPtr c = command();
        lx.expect(Tok::RBrace, "'}'");
        return mk_coerce(c);
      }
      case Tok::Ident: {
        Name x = lx.text;
        lx.advance();
        return mk_var(x);
      }
      case Tok::LParen: {
        lx.advance();
        TermPtr t = term();
        if (lx.tok == Tok::Colon) {
          require_level2("annotation '(t : A)'");
          lx.advance();
          TypePtr a = type();
          lx.expect(Tok::RParen, "')'");
          return mk_ann(t, a);
        }
        lx.expect(Tok::RParen, "')'");
        return t;
      }
      default:
        fail("expected a term");
    }
  }

  // Head := Ident | "{" Command "}" | "(" Term ")"
  TermPtr head() {
    if (lx.tok == Tok::Ident || lx.tok == Tok::LBrace || lx.tok == Tok::LParen) {
      // "(" Ident ")" not followed by "::" would be a selection, but heads
      // are always followed by a co-term, never "::", so plain term() works.
      return term();
    }
    fail("expected a command head (identifier, braces or parenthesized term)");
  }

  CoTermPtr coterm() {
    switch (lx.tok) {
      case Tok::NilTok:
        lx.advance();
        return mk_nil();
      case Tok::Lt: {
        require_level2("'<B>::'");
        lx.advance();
        TypePtr a = type();
        lx.expect(Tok::Gt, "'>'");
        lx.expect(Tok::ColCol, "'::'");
        return mk_tycons(a, coterm());
      }
      case Tok::LParen: {
        // selection "(x)c" vs parenthesized argument "(t)::l": one-token
        // lookahead after a lone identifier decides
        std::size_t save_pos = lx.pos, save_tok_pos = lx.tok_pos;
        Tok save_tok = lx.tok;
        std::string save_text = lx.text;
        lx.advance();
        if (lx.tok == Tok::Ident) {
          Name x = lx.text;
          lx.advance();
          if (lx.tok == Tok::RParen) {
            lx.advance();
            if (lx.tok != Tok::ColCol) {
              // selection
              return mk_sel(x, command());
            }
            lx.advance();
            return mk_cons(mk_var(x), coterm());
          }
        }
        // not "(x)" — rewind and parse as a term argument
        lx.pos = save_pos;
        lx.tok_pos = save_tok_pos;
        lx.tok = save_tok;
        lx.text = save_text;
        break;
      }
      default:
        break;
    }
    TermPtr u = term();
    lx.expect(Tok::ColCol, "'::'");
    return mk_cons(u, coterm());
  }

  CommandPtr command() {
    TermPtr t = head();
    CoTermPtr l = coterm();
    return mk_cut(t, l);
  }

  void done() {
    if (lx.tok != Tok::End) fail("trailing input");
  }
};

}  // namespace

Expr parse(const std::string& src, ExprClass cls, Level level) {
  Parser p(src, level);
  switch (cls) {
    case ExprClass::Term: {
      TermPtr t = p.term();
      p.done();
      return t;
    }
    case ExprClass::CoTerm: {
      CoTermPtr l = p.coterm();
      p.done();
      return l;
    }
    default: {
      CommandPtr c = p.command();
      p.done();
      return c;
    }
  }
}

TermPtr parse_term(const std::string& src, Level level) {
  return std::get<TermPtr>(parse(src, ExprClass::Term, level));
}
CoTermPtr parse_coterm(const std::string& src, Level level) {
  return std::get<CoTermPtr>(parse(src, ExprClass::CoTerm, level));
}
CommandPtr parse_command(const std::string& src, Level level) {
  return std::get<CommandPtr>(parse(src, ExprClass::Command, level));
}

TypePtr parse_type(const std::string& src, Level level) {
  Parser p(src, level);
  TypePtr t = p.type();
  p.done();
  return t;
}

Ctx parse_ctx(const std::string& src, Level level) {
  Ctx ctx;
  Parser p(src, level);
  if (p.lx.tok == Tok::End) return ctx;
  for (;;) {
    if (p.lx.tok != Tok::Ident) p.fail("expected variable name in context");
    Name x = p.lx.text;
    p.lx.advance();
    p.lx.expect(Tok::Colon, "':'");
    TypePtr a = p.type();
    if (!ctx.declare(x, a)) p.fail("variable '" + x + "' declared twice");
    if (p.lx.tok == Tok::End) break;
    p.lx.expect(Tok::Comma, "','");
  }
  return ctx;
}

}  // namespace ljmse
