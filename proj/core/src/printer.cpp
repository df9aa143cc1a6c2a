#include "ljmse/printer.hpp"

namespace ljmse {

using namespace ast;

namespace {

void pr_term(const TermPtr& t, std::string& out, bool head_pos);
void pr_coterm(const CoTermPtr& l, std::string& out);
void pr_command(const CommandPtr& c, std::string& out);

// head_pos: the term sits where the grammar wants Ident | {c} | (t) —
// command heads and :: arguments. Binders and annotations get parens there.
void pr_term(const TermPtr& t, std::string& out, bool head_pos) {
  if (auto* v = std::get_if<Var>(t.get())) {
    out += v->name;
    return;
  }
  if (auto* co = std::get_if<Coerce>(t.get())) {
    out += '{';
    pr_command(co->cmd, out);
    out += '}';
    return;
  }
  if (head_pos && !std::holds_alternative<Ann>(*t)) {
    out += '(';
    pr_term(t, out, false);
    out += ')';
    return;
  }
  if (auto* lam = std::get_if<Lam>(t.get())) {
    out += '\\';
    out += lam->binder;
    out += '.';
    pr_term(lam->body, out, false);
  } else if (auto* tl = std::get_if<TyLam>(t.get())) {
    out += "/\\";
    out += tl->binder;
    out += '.';
    pr_term(tl->body, out, false);
  } else {
    const auto& an = std::get<Ann>(*t);
    out += '(';
    pr_term(an.term, out, false);
    out += " : ";
    out += print_type(an.type);
    out += ')';
  }
}

void pr_coterm(const CoTermPtr& l, std::string& out) {
  if (std::holds_alternative<Nil>(*l)) {
    out += "[]";
    return;
  }
  if (auto* c = std::get_if<Cons>(l.get())) {
    pr_term(c->head, out, true);
    out += "::";
    pr_coterm(c->tail, out);
    return;
  }
  if (auto* tc = std::get_if<TyCons>(l.get())) {
    out += '<';
    out += print_type(tc->ty);
    out += ">::";
    pr_coterm(tc->tail, out);
    return;
  }
  const auto& s = std::get<Sel>(*l);
  out += '(';
  out += s.binder;
  out += ')';
  pr_command(s.cmd, out);
}

void pr_command(const CommandPtr& c, std::string& out) {
  pr_term(c->t, out, true);
  out += ' ';
  pr_coterm(c->l, out);
}

}  // namespace

std::string print_term(const TermPtr& t) {
  std::string out;
  pr_term(t, out, false);
  return out;
}
std::string print_coterm(const CoTermPtr& l) {
  std::string out;
  pr_coterm(l, out);
  return out;
}
std::string print_command(const CommandPtr& c) {
  std::string out;
  pr_command(c, out);
  return out;
}

std::string print_expr(const Expr& e) {
  return std::visit([](const auto& p) {
    using P = std::decay_t<decltype(p)>;
    if constexpr (std::is_same_v<P, TermPtr>) return print_term(p);
    else if constexpr (std::is_same_v<P, CoTermPtr>) return print_coterm(p);
    else return print_command(p);
  }, e);
}

}  // namespace ljmse
