#include <stdexcept>

#include "ljmse/spectrum.hpp"

namespace ljmse {

using ast::CommandPtr;
using ast::CoTermPtr;
using ast::Expr;
using ast::TermPtr;

// ---------------------------------------------------------------------------
// embeddings along the spectrum
// ---------------------------------------------------------------------------

lj::TermPtr embed_J(const lam::TermPtr& t) {
  if (auto* v = std::get_if<lam::Var>(t.get())) return lj::var(v->name);
  if (auto* a = std::get_if<lam::Abs>(t.get())) return lj::abs(a->binder, embed_J(a->body));
  const auto& ap = std::get<lam::App>(*t);
  // J(tu) = J(t)(J(u), x.x)
  return lj::gapp(embed_J(ap.fn), embed_J(ap.arg), "x", lj::var("x"));
}

ljm::TermPtr embed_m(const lj::TermPtr& t) {
  if (auto* v = std::get_if<lj::Var>(t.get())) return ljm::var(v->name);
  if (auto* a = std::get_if<lj::Abs>(t.get())) return ljm::abs(a->binder, embed_m(a->body));
  const auto& g = std::get<lj::GApp>(*t);
  // m(t(u,x.v)) = m(t)(m(u),(x)m(v))
  return ljm::gmapp(embed_m(g.fn), embed_m(g.arg), ljm::sel(g.binder, embed_m(g.body)));
}

ljms::TermPtr embed_s(const ljm::TermPtr& t) {
  if (auto* v = std::get_if<ljm::Var>(t.get())) return ljms::var(v->name);
  if (auto* a = std::get_if<ljm::Abs>(t.get())) return ljms::abs(a->binder, embed_s(a->body));
  const auto& g = std::get<ljm::GMApp>(*t);
  // s(t(u,l)) = s(t)(s(u)::s(l))
  return ljms::cut(embed_s(g.fn), ljms::cons(embed_s(g.arg), embed_s(g.rest)));
}

ljms::CoTermPtr embed_s(const ljm::CoTermPtr& l) {
  if (auto* c = std::get_if<ljm::ConsM>(l.get()))
    return ljms::cons(embed_s(c->head), embed_s(c->tail));
  const auto& s = std::get<ljm::SelM>(*l);
  return ljms::sel(s.binder, embed_s(s.body));
}

TermPtr embed_e(const ljms::TermPtr& t) {
  if (auto* v = std::get_if<ljms::Var>(t.get())) return ast::mk_var(v->name);
  if (auto* a = std::get_if<ljms::Abs>(t.get())) return ast::mk_lam(a->binder, embed_e(a->body));
  const auto& c = std::get<ljms::CutS>(*t);
  // e(tl) = {e(t) e(l)}
  return ast::mk_coerce(ast::mk_cut(embed_e(c.head), embed_e(c.rest)));
}

CoTermPtr embed_e(const ljms::CoTermPtr& l) {
  if (auto* c = std::get_if<ljms::ConsS>(l.get()))
    return ast::mk_cons(embed_e(c->head), embed_e(c->tail));
  const auto& s = std::get<ljms::SelS>(*l);
  if (auto* bc = std::get_if<ljms::CutS>(s.body.get())) {
    // e((x)tl) = (x) e(t) e(l)
    return ast::mk_sel(s.binder, ast::mk_cut(embed_e(bc->head), embed_e(bc->rest)));
  }
  // e((x)V) = (x) e(V) []
  return ast::mk_sel(s.binder, ast::mk_cut(embed_e(s.body), ast::mk_nil()));
}

TermPtr embed_full(const SpecTerm& t) {
  switch (calc_of(t)) {
    case Calc::Lam:
      return embed_e(embed_s(embed_m(embed_J(std::get<lam::TermPtr>(t)))));
    case Calc::LJ:
      return embed_e(embed_s(embed_m(std::get<lj::TermPtr>(t))));
    case Calc::LJm:
      return embed_e(embed_s(std::get<ljm::TermPtr>(t)));
    default:
      return embed_e(std::get<ljms::TermPtr>(t));
  }
}

// ---------------------------------------------------------------------------
// sharp: execute the explicit substitutions of the ms-calculus
// ---------------------------------------------------------------------------

ljm::TermPtr map_sharp(const ljms::TermPtr& t) {
  if (auto* v = std::get_if<ljms::Var>(t.get())) return ljm::var(v->name);
  if (auto* a = std::get_if<ljms::Abs>(t.get())) return ljm::abs(a->binder, map_sharp(a->body));
  const auto& c = std::get<ljms::CutS>(*t);
  if (auto* se = std::get_if<ljms::SelS>(c.rest.get())) {
    // (t(x)v)# = [t#/x]v#
    return subst(map_sharp(c.head), se->binder, map_sharp(se->body));
  }
  const auto& cons = std::get<ljms::ConsS>(*c.rest);
  // (t(u::l))# = t#(u#, l#)
  return ljm::gmapp(map_sharp(c.head), map_sharp(cons.head), map_sharp(cons.tail));
}

ljm::CoTermPtr map_sharp(const ljms::CoTermPtr& l) {
  if (auto* c = std::get_if<ljms::ConsS>(l.get()))
    return ljm::cons(map_sharp(c->head), map_sharp(c->tail));
  const auto& s = std::get<ljms::SelS>(*l);
  return ljm::sel(s.binder, map_sharp(s.body));
}

// ---------------------------------------------------------------------------
// circ: the full calculus embedded into ljms
// ---------------------------------------------------------------------------

namespace {

[[noreturn]] void circ_level_error() {
  throw std::invalid_argument("the ljms interpretation is defined for propositional terms only");
}

}  // namespace

ljms::TermPtr map_circ(const ast::TermPtr& t) {
  if (auto* v = std::get_if<ast::Var>(t.get())) return ljms::var(v->name);
  if (auto* lam = std::get_if<ast::Lam>(t.get()))
    return ljms::abs(lam->binder, map_circ(lam->body));
  if (auto* co = std::get_if<ast::Coerce>(t.get())) return map_circ(co->cmd);
  circ_level_error();
}

ljms::TermPtr map_circ(const CommandPtr& c) {
  // ({tl})° = t° l°
  return ljms::cut(map_circ(c->t), map_circ(c->l));
}

ljms::CoTermPtr map_circ(const CoTermPtr& l) {
  if (std::holds_alternative<ast::Nil>(*l)) {
    // []° = (x)x
    return ljms::sel("x", ljms::var("x"));
  }
  if (auto* c = std::get_if<ast::Cons>(l.get()))
    return ljms::cons(map_circ(c->head), map_circ(c->tail));
  if (auto* s = std::get_if<ast::Sel>(l.get())) {
    // ((x)tl)° = (x) t° l°
    return ljms::sel(s->binder, map_circ(s->cmd));
  }
  circ_level_error();
}

// ---------------------------------------------------------------------------
// mu-normalisation of the full calculus
// ---------------------------------------------------------------------------

namespace {

TermPtr mu_t(const TermPtr& t);
CoTermPtr mu_l(const CoTermPtr& l);
CommandPtr mu_c(const CommandPtr& c) { return ast::mk_cut(mu_t(c->t), mu_l(c->l)); }

TermPtr mu_t(const TermPtr& t) {
  if (std::holds_alternative<ast::Var>(*t)) return t;
  if (auto* lam = std::get_if<ast::Lam>(t.get())) return ast::mk_lam(lam->binder, mu_t(lam->body));
  if (auto* co = std::get_if<ast::Coerce>(t.get())) return ast::mk_coerce(mu_c(co->cmd));
  if (auto* tl = std::get_if<ast::TyLam>(t.get())) return ast::mk_tylam(tl->binder, mu_t(tl->body));
  const auto& an = std::get<ast::Ann>(*t);
  return ast::mk_ann(mu_t(an.term), an.type);
}

CoTermPtr mu_l(const CoTermPtr& l) {
  if (std::holds_alternative<ast::Nil>(*l)) return l;
  if (auto* c = std::get_if<ast::Cons>(l.get())) return ast::mk_cons(mu_t(c->head), mu_l(c->tail));
  if (auto* tc = std::get_if<ast::TyCons>(l.get())) return ast::mk_tycons(tc->ty, mu_l(tc->tail));
  const auto& s = std::get<ast::Sel>(*l);
  if (auto* v = std::get_if<ast::Var>(s.cmd->t.get())) {
    if (v->name == s.binder && ast::not_in(s.binder, Expr{s.cmd->l})) {
      // ((x)tl) with t = x and x not in l: drop the selection
      return mu_l(s.cmd->l);
    }
  }
  return ast::mk_sel(s.binder, mu_c(s.cmd));
}

}  // namespace

Expr mu_nf(const Expr& e) {
  return std::visit([](const auto& p) -> Expr {
    using P = std::decay_t<decltype(p)>;
    if constexpr (std::is_same_v<P, TermPtr>) return mu_t(p);
    else if constexpr (std::is_same_v<P, CoTermPtr>) return mu_l(p);
    else return mu_c(p);
  }, e);
}

}  // namespace ljmse
