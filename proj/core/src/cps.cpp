#include "ljmse/cps.hpp"

#include <stdexcept>

namespace ljmse {

using namespace ast;

const char* trans_kind_name(TransKind k) {
  switch (k) {
    case TransKind::CPS: return "cps";
    case TransKind::CGPS: return "cgps";
    case TransKind::CGPS_ljms: return "cgps-ljms";
    case TransKind::CGPS_ljm: return "cgps-ljm";
    case TransKind::CGPS_lj: return "cgps-lj";
    case TransKind::CGPS_lj_opt: return "cgps-lj-opt";
    case TransKind::CPS_simple: return "cps-simple";
    case TransKind::CGPS_lj_simple: return "cgps-lj-simple";
  }
  return "?";
}

std::optional<TransKind> trans_kind_from_name(const std::string& s) {
  for (TransKind k : {TransKind::CPS, TransKind::CGPS, TransKind::CGPS_ljms,
                      TransKind::CGPS_ljm, TransKind::CGPS_lj, TransKind::CGPS_lj_opt,
                      TransKind::CPS_simple, TransKind::CGPS_lj_simple}) {
    if (s == trans_kind_name(k)) return k;
  }
  return std::nullopt;
}

bool is_garbage_kind(TransKind k) {
  return k != TransKind::CPS && k != TransKind::CPS_simple;
}

namespace {

bool is_simple_kind(TransKind k) {
  return k == TransKind::CPS_simple || k == TransKind::CGPS_lj_simple;
}

}  // namespace

TypePtr star_type(const TypePtr& a, TransKind kind) {
  if (std::holds_alternative<ty::Var>(*a) || std::holds_alternative<ty::Bottom>(*a)) return a;
  if (auto* ar = std::get_if<ty::Arrow>(a.get())) {
    TypePtr bd = bar_type(ar->dom, kind);
    TypePtr bc = bar_type(ar->cod, kind);
    if (is_simple_kind(kind)) return ty_arrow(bd, bc);
    return ty_arrow(ty_neg(bc), ty_neg(bd));
  }
  const auto& fa = std::get<ty::Forall>(*a);
  return ty_forall(fa.binder, bar_type(fa.body, kind));
}

TypePtr bar_type(const TypePtr& a, TransKind kind) {
  TypePtr core = ty_neg(ty_neg(star_type(a, kind)));
  if (is_garbage_kind(kind)) return ty_arrow(ty_top(), core);
  return core;
}

Ctx bar_ctx(const Ctx& ctx, TransKind kind) {
  Ctx out;
  for (const auto& [x, a] : ctx.bindings) out.declare(x, bar_type(a, kind));
  return out;
}

// ---------------------------------------------------------------------------
// the colon translations
// ---------------------------------------------------------------------------

namespace {

struct Translator {
  NameSupply supply;
  TransKind kind;

  explicit Translator(TransKind k) : kind(k) {}

  LamTermPtr suc(const LamTermPtr& g) { return GarbageKit::suc(g); }
  LamTermPtr pair(const LamTermPtr& t, const LamTermPtr& u) {
    Name n = supply.fresh("n");
    return lam_app(lam_abs(n, t), u);
  }

  // ----- full calculus, CGPS ------------------------------------------------

  LamTermPtr bar_cgps(const TermPtr& t) {
    Name g = supply.fresh("g");
    Name k = supply.fresh("k");
    return lam_abs(g, lam_abs(k, cgps_term(t, lam_var(g), lam_var(k))));
  }

  LamTermPtr cgps_term(const TermPtr& t, const LamTermPtr& G, const LamTermPtr& K) {
    if (auto* v = std::get_if<Var>(t.get())) {
      return lam_apps(lam_var(v->name), {suc(G), K});
    }
    if (auto* lam = std::get_if<Lam>(t.get())) {
      Name w = supply.fresh("w");
      LamTermPtr inner = lam_abs(w, lam_abs(lam->binder, lam_app(lam_var(w), bar_cgps(lam->body))));
      return pair(lam_app(K, inner), G);
    }
    if (auto* co = std::get_if<Coerce>(t.get())) {
      return cgps_command(co->cmd, suc(G), K);
    }
    if (auto* tl = std::get_if<TyLam>(t.get())) {
      return pair(lam_app(K, lam_tyabs(tl->binder, bar_cgps(tl->body))), G);
    }
    throw std::invalid_argument("annotated term in translation input");
  }

  LamTermPtr cgps_coterm(const CoTermPtr& l, const LamTermPtr& G, const LamTermPtr& K) {
    if (std::holds_alternative<Nil>(*l)) {
      Name w = supply.fresh("w");
      return lam_abs(w, lam_apps(lam_var(w), {G, K}));
    }
    if (auto* c = std::get_if<Cons>(l.get())) {
      Name w = supply.fresh("w");
      Name m = supply.fresh("m");
      LamTermPtr karg =
          lam_abs(m, lam_apps(lam_var(m), {cgps_coterm(c->tail, G, K), bar_cgps(c->head)}));
      return lam_abs(w, lam_apps(lam_var(w), {G, karg}));
    }
    if (auto* tc = std::get_if<TyCons>(l.get())) {
      Name w = supply.fresh("w");
      Name m = supply.fresh("m");
      LamTermPtr karg = lam_abs(
          m, lam_app(cgps_coterm(tc->tail, G, K), lam_tyapp(lam_var(m), star_type(tc->ty, kind))));
      return lam_abs(w, lam_apps(lam_var(w), {G, karg}));
    }
    const auto& s = std::get<Sel>(*l);
    auto [binder, cmd] = freshen_sel(s, G, K);
    return lam_abs(binder, cgps_command(cmd, G, K));
  }

  LamTermPtr cgps_command(const CommandPtr& c, const LamTermPtr& G, const LamTermPtr& K) {
    if (std::holds_alternative<Nil>(*c->l)) return cgps_term(c->t, G, K);
    if (auto* cons = std::get_if<Cons>(c->l.get())) {
      Name m = supply.fresh("m");
      LamTermPtr karg = lam_abs(
          m, lam_apps(lam_var(m), {cgps_coterm(cons->tail, G, K), bar_cgps(cons->head)}));
      return cgps_term(c->t, G, karg);
    }
    if (auto* tc = std::get_if<TyCons>(c->l.get())) {
      Name m = supply.fresh("m");
      LamTermPtr karg = lam_abs(
          m, lam_app(cgps_coterm(tc->tail, G, K), lam_tyapp(lam_var(m), star_type(tc->ty, kind))));
      return cgps_term(c->t, G, karg);
    }
    // t(x)c = ((x)c : G,K) tbar
    return lam_app(cgps_coterm(c->l, G, K), bar_cgps(c->t));
  }

  // ----- full calculus, CPS (plain and simple) -------------------------------

  LamTermPtr bar_cps(const TermPtr& t) {
    Name k = supply.fresh("k");
    return lam_abs(k, cps_term(t, lam_var(k)));
  }

  LamTermPtr cps_term(const TermPtr& t, const LamTermPtr& K) {
    if (auto* v = std::get_if<Var>(t.get())) return lam_app(lam_var(v->name), K);
    if (auto* lam = std::get_if<Lam>(t.get())) {
      if (kind == TransKind::CPS_simple) {
        // (\x.t : K) = K(\x.tbar)
        return lam_app(K, lam_abs(lam->binder, bar_cps(lam->body)));
      }
      Name w = supply.fresh("w");
      return lam_app(K, lam_abs(w, lam_abs(lam->binder, lam_app(lam_var(w), bar_cps(lam->body)))));
    }
    if (auto* co = std::get_if<Coerce>(t.get())) return cps_command(co->cmd, K);
    if (auto* tl = std::get_if<TyLam>(t.get())) {
      if (kind == TransKind::CPS_simple)
        throw std::invalid_argument("the simplified CPS is propositional only");
      return lam_app(K, lam_tyabs(tl->binder, bar_cps(tl->body)));
    }
    throw std::invalid_argument("annotated term in translation input");
  }

  LamTermPtr cps_coterm(const CoTermPtr& l, const LamTermPtr& K) {
    if (std::holds_alternative<Nil>(*l)) {
      Name w = supply.fresh("w");
      return lam_abs(w, lam_app(lam_var(w), K));
    }
    if (auto* c = std::get_if<Cons>(l.get())) {
      Name w = supply.fresh("w");
      Name m = supply.fresh("m");
      LamTermPtr karg =
          kind == TransKind::CPS_simple
              ? lam_abs(m, lam_app(cps_coterm(c->tail, K), lam_app(lam_var(m), bar_cps(c->head))))
              : lam_abs(m, lam_apps(lam_var(m), {cps_coterm(c->tail, K), bar_cps(c->head)}));
      return lam_abs(w, lam_app(lam_var(w), karg));
    }
    if (auto* tc = std::get_if<TyCons>(l.get())) {
      if (kind == TransKind::CPS_simple)
        throw std::invalid_argument("the simplified CPS is propositional only");
      Name w = supply.fresh("w");
      Name m = supply.fresh("m");
      LamTermPtr karg = lam_abs(
          m, lam_app(cps_coterm(tc->tail, K), lam_tyapp(lam_var(m), star_type(tc->ty, kind))));
      return lam_abs(w, lam_app(lam_var(w), karg));
    }
    const auto& s = std::get<Sel>(*l);
    auto [binder, cmd] = freshen_sel(s, K, K);
    return lam_abs(binder, cps_command(cmd, K));
  }

  LamTermPtr cps_command(const CommandPtr& c, const LamTermPtr& K) {
    if (std::holds_alternative<Nil>(*c->l)) return cps_term(c->t, K);
    if (auto* cons = std::get_if<Cons>(c->l.get())) {
      Name m = supply.fresh("m");
      LamTermPtr karg =
          kind == TransKind::CPS_simple
              ? lam_abs(m, lam_app(cps_coterm(cons->tail, K),
                                   lam_app(lam_var(m), bar_cps(cons->head))))
              : lam_abs(m, lam_apps(lam_var(m), {cps_coterm(cons->tail, K), bar_cps(cons->head)}));
      return cps_term(c->t, karg);
    }
    if (auto* tc = std::get_if<TyCons>(c->l.get())) {
      if (kind == TransKind::CPS_simple)
        throw std::invalid_argument("the simplified CPS is propositional only");
      Name m = supply.fresh("m");
      LamTermPtr karg = lam_abs(
          m, lam_app(cps_coterm(tc->tail, K), lam_tyapp(lam_var(m), star_type(tc->ty, kind))));
      return cps_term(c->t, karg);
    }
    return lam_app(cps_coterm(c->l, K), bar_cps(c->t));
  }

  // rename a selection binder away from the free variables of the
  // continuation/garbage arguments (the clause puts them under the binder)
  std::pair<Name, CommandPtr> freshen_sel(const Sel& s, const LamTermPtr& a,
                                          const LamTermPtr& b) {
    std::set<Name> clash = lam_free_vars(a);
    auto fb = lam_free_vars(b);
    clash.insert(fb.begin(), fb.end());
    if (!clash.count(s.binder)) return {s.binder, s.cmd};
    Name nb = supply.fresh(s.binder);
    return {nb, subst_command(mk_var(nb), s.binder, s.cmd)};
  }
};

std::set<Name> seed_names(const Expr& e) { return all_vars(e); }

}  // namespace

LamTermPtr cps(const TermPtr& t) {
  TermPtr st = strip_ann(t);
  Translator tr(TransKind::CPS);
  tr.supply = NameSupply(seed_names(Expr{st}));
  return tr.bar_cps(st);
}

LamTermPtr colon_cps(const Expr& T, const LamTermPtr& K) {
  Expr st = strip_ann(T);
  Translator tr(TransKind::CPS);
  auto used = seed_names(st);
  auto kv = lam_all_vars(K);
  used.insert(kv.begin(), kv.end());
  tr.supply = NameSupply(std::move(used));
  return std::visit([&](const auto& p) -> LamTermPtr {
    using P = std::decay_t<decltype(p)>;
    if constexpr (std::is_same_v<P, TermPtr>) return tr.cps_term(p, K);
    else if constexpr (std::is_same_v<P, CoTermPtr>) return tr.cps_coterm(p, K);
    else return tr.cps_command(p, K);
  }, st);
}

LamTermPtr cgps(const TermPtr& t) {
  TermPtr st = strip_ann(t);
  Translator tr(TransKind::CGPS);
  tr.supply = NameSupply(seed_names(Expr{st}));
  return tr.bar_cgps(st);
}

LamTermPtr colon_cgps(const Expr& T, const LamTermPtr& G, const LamTermPtr& K) {
  Expr st = strip_ann(T);
  Translator tr(TransKind::CGPS);
  auto used = seed_names(st);
  auto kv = lam_all_vars(K);
  used.insert(kv.begin(), kv.end());
  auto gv = lam_all_vars(G);
  used.insert(gv.begin(), gv.end());
  tr.supply = NameSupply(std::move(used));
  return std::visit([&](const auto& p) -> LamTermPtr {
    using P = std::decay_t<decltype(p)>;
    if constexpr (std::is_same_v<P, TermPtr>) return tr.cgps_term(p, G, K);
    else if constexpr (std::is_same_v<P, CoTermPtr>) return tr.cgps_coterm(p, G, K);
    else return tr.cgps_command(p, G, K);
  }, st);
}

LamTermPtr cps_simple(const TermPtr& t) {
  TermPtr st = strip_ann(t);
  Translator tr(TransKind::CPS_simple);
  tr.supply = NameSupply(seed_names(Expr{st}));
  return tr.bar_cps(st);
}

LamTermPtr colon_cps_simple(const Expr& T, const LamTermPtr& K) {
  Expr st = strip_ann(T);
  Translator tr(TransKind::CPS_simple);
  auto used = seed_names(st);
  auto kv = lam_all_vars(K);
  used.insert(kv.begin(), kv.end());
  tr.supply = NameSupply(std::move(used));
  return std::visit([&](const auto& p) -> LamTermPtr {
    using P = std::decay_t<decltype(p)>;
    if constexpr (std::is_same_v<P, TermPtr>) return tr.cps_term(p, K);
    else if constexpr (std::is_same_v<P, CoTermPtr>) return tr.cps_coterm(p, K);
    else return tr.cps_command(p, K);
  }, st);
}

// ---------------------------------------------------------------------------
// subsystem CGPS translations
// ---------------------------------------------------------------------------

namespace {

struct SpecTranslator {
  NameSupply supply;
  TransKind kind;

  explicit SpecTranslator(TransKind k) : kind(k) {}

  LamTermPtr suc(const LamTermPtr& g) { return GarbageKit::suc(g); }
  LamTermPtr pair(const LamTermPtr& t, const LamTermPtr& u) {
    Name n = supply.fresh("n");
    return lam_app(lam_abs(n, t), u);
  }

  // ----- ljms ---------------------------------------------------------------

  LamTermPtr bar(const ljms::TermPtr& t) {
    Name g = supply.fresh("g");
    Name k = supply.fresh("k");
    return lam_abs(g, lam_abs(k, term(t, lam_var(g), lam_var(k))));
  }

  LamTermPtr term(const ljms::TermPtr& t, const LamTermPtr& G, const LamTermPtr& K) {
    if (auto* v = std::get_if<ljms::Var>(t.get()))
      return lam_apps(lam_var(v->name), {suc(G), K});
    if (auto* a = std::get_if<ljms::Abs>(t.get())) {
      Name w = supply.fresh("w");
      LamTermPtr inner = lam_abs(w, lam_abs(a->binder, lam_app(lam_var(w), bar(a->body))));
      return pair(lam_app(K, inner), G);
    }
    // (tl : G,K) = (tl ; suc G, K)
    return semi(std::get<ljms::CutS>(*t), suc(G), K);
  }

  LamTermPtr semi(const ljms::CutS& c, const LamTermPtr& G, const LamTermPtr& K) {
    if (std::holds_alternative<ljms::SelS>(*c.rest)) {
      // (t(x)v ; G,K) = ((x)v : G,K) tbar
      return lam_app(coterm(c.rest, G, K), bar(c.head));
    }
    const auto& cons = std::get<ljms::ConsS>(*c.rest);
    // (t(u::l) ; G,K) = (t : G, \m.m (l:G,K) ubar)
    Name m = supply.fresh("m");
    LamTermPtr karg =
        lam_abs(m, lam_apps(lam_var(m), {coterm(cons.tail, G, K), bar(cons.head)}));
    return term(c.head, G, karg);
  }

  LamTermPtr coterm(const ljms::CoTermPtr& l, const LamTermPtr& G, const LamTermPtr& K) {
    if (auto* c = std::get_if<ljms::ConsS>(l.get())) {
      Name w = supply.fresh("w");
      Name m = supply.fresh("m");
      LamTermPtr karg = lam_abs(m, lam_apps(lam_var(m), {coterm(c->tail, G, K), bar(c->head)}));
      return lam_abs(w, lam_apps(lam_var(w), {G, karg}));
    }
    const auto& s = std::get<ljms::SelS>(*l);
    Name binder = s.binder;
    ljms::TermPtr body = s.body;
    std::set<Name> clash = lam_free_vars(G);
    auto kf = lam_free_vars(K);
    clash.insert(kf.begin(), kf.end());
    if (clash.count(binder)) {
      Name nb = supply.fresh(binder);
      body = subst(ljms::var(nb), binder, body);
      binder = nb;
    }
    if (auto* bc = std::get_if<ljms::CutS>(body.get())) {
      // ((x)tl : G,K) = \x.(tl ; G,K)
      return lam_abs(binder, semi(*bc, G, K));
    }
    // ((x)V : G,K) = \x.(V : G,K)
    return lam_abs(binder, term(body, G, K));
  }

  // ----- ljm ------------------------------------------------------------------

  LamTermPtr bar(const ljm::TermPtr& t) {
    Name g = supply.fresh("g");
    Name k = supply.fresh("k");
    return lam_abs(g, lam_abs(k, term(t, lam_var(g), lam_var(k))));
  }

  LamTermPtr term(const ljm::TermPtr& t, const LamTermPtr& G, const LamTermPtr& K) {
    if (auto* v = std::get_if<ljm::Var>(t.get()))
      return lam_apps(lam_var(v->name), {suc(G), K});
    if (auto* a = std::get_if<ljm::Abs>(t.get())) {
      Name w = supply.fresh("w");
      LamTermPtr inner = lam_abs(w, lam_abs(a->binder, lam_app(lam_var(w), bar(a->body))));
      return pair(lam_app(K, inner), G);
    }
    const auto& g = std::get<ljm::GMApp>(*t);
    // (t(u,l) : G,K) = (t : suc G, \m.m (l : suc G, K) ubar)
    Name m = supply.fresh("m");
    LamTermPtr karg =
        lam_abs(m, lam_apps(lam_var(m), {coterm(g.rest, suc(G), K), bar(g.arg)}));
    return term(g.fn, suc(G), karg);
  }

  LamTermPtr coterm(const ljm::CoTermPtr& l, const LamTermPtr& G, const LamTermPtr& K) {
    if (auto* c = std::get_if<ljm::ConsM>(l.get())) {
      Name w = supply.fresh("w");
      Name m = supply.fresh("m");
      LamTermPtr karg = lam_abs(m, lam_apps(lam_var(m), {coterm(c->tail, G, K), bar(c->head)}));
      return lam_abs(w, lam_apps(lam_var(w), {G, karg}));
    }
    const auto& s = std::get<ljm::SelM>(*l);
    Name binder = s.binder;
    ljm::TermPtr body = s.body;
    std::set<Name> clash = lam_free_vars(G);
    auto kf = lam_free_vars(K);
    clash.insert(kf.begin(), kf.end());
    if (clash.count(binder)) {
      Name nb = supply.fresh(binder);
      body = subst(ljm::var(nb), binder, body);
      binder = nb;
    }
    if (auto* g = std::get_if<ljm::GMApp>(body.get())) {
      // ((x)t(u,l) : G,K) = \x.(t : G, \m.m (l:G,K) ubar)
      Name m = supply.fresh("m");
      LamTermPtr karg =
          lam_abs(m, lam_apps(lam_var(m), {coterm(g->rest, G, K), bar(g->arg)}));
      return lam_abs(binder, term(g->fn, G, karg));
    }
    // ((x)V : G,K) = \x.(V : G,K)
    return lam_abs(binder, term(body, G, K));
  }

  // ----- lj (inherited, optimized and simple variants) -----------------------

  LamTermPtr bar(const lj::TermPtr& t) {
    Name g = supply.fresh("g");
    Name k = supply.fresh("k");
    return lam_abs(g, lam_abs(k, term(t, lam_var(g), lam_var(k))));
  }

  LamTermPtr term(const lj::TermPtr& t, const LamTermPtr& G, const LamTermPtr& K) {
    if (auto* v = std::get_if<lj::Var>(t.get())) {
      if (kind == TransKind::CGPS_lj) return lam_apps(lam_var(v->name), {suc(G), K});
      // optimized / simple: x G K
      return lam_apps(lam_var(v->name), {G, K});
    }
    if (auto* a = std::get_if<lj::Abs>(t.get())) {
      if (kind == TransKind::CGPS_lj_simple) {
        // [K(\x.tbar); G]
        return pair(lam_app(K, lam_abs(a->binder, bar(a->body))), G);
      }
      Name w = supply.fresh("w");
      LamTermPtr inner = lam_abs(w, lam_abs(a->binder, lam_app(lam_var(w), bar(a->body))));
      return pair(lam_app(K, inner), G);
    }
    const auto& g = std::get<lj::GApp>(*t);
    Name binder = g.binder;
    lj::TermPtr body = g.body;
    std::set<Name> clash = lam_free_vars(G);
    auto kf = lam_free_vars(K);
    clash.insert(kf.begin(), kf.end());
    if (clash.count(binder)) {
      Name nb = supply.fresh(binder);
      body = subst(lj::var(nb), binder, body);
      binder = nb;
    }
    Name m = supply.fresh("m");
    if (kind == TransKind::CGPS_lj_simple) {
      // (t(u,x.v):G,K) = (t: suc G, \m.(\x.(v:G,K))(m ubar))
      LamTermPtr karg = lam_abs(
          m, lam_app(lam_abs(binder, term(body, G, K)), lam_app(lam_var(m), bar(g.arg))));
      return term(g.fn, suc(G), karg);
    }
    if (kind == TransKind::CGPS_lj_opt) {
      // (t(u,x.v):G,K) = (t: suc G, \m.m (\x.(v:G,K)) ubar)
      LamTermPtr karg =
          lam_abs(m, lam_apps(lam_var(m), {lam_abs(binder, term(body, G, K)), bar(g.arg)}));
      return term(g.fn, suc(G), karg);
    }
    // inherited: value/application case split on v
    bool body_is_value = !std::holds_alternative<lj::GApp>(*body);
    LamTermPtr vimage = body_is_value ? term(body, suc(G), K) : term(body, G, K);
    LamTermPtr karg = lam_abs(m, lam_apps(lam_var(m), {lam_abs(binder, vimage), bar(g.arg)}));
    return term(g.fn, suc(G), karg);
  }
};

}  // namespace

LamTermPtr cgps_spec(const SpecTerm& t, TransKind kind) {
  SpecTranslator tr(kind);
  tr.supply = NameSupply(spec_all_names(t));
  switch (calc_of(t)) {
    case Calc::LJms:
      if (kind != TransKind::CGPS_ljms)
        throw std::invalid_argument("kind/calculus mismatch in cgps_spec");
      return tr.bar(std::get<ljms::TermPtr>(t));
    case Calc::LJm:
      if (kind != TransKind::CGPS_ljm)
        throw std::invalid_argument("kind/calculus mismatch in cgps_spec");
      return tr.bar(std::get<ljm::TermPtr>(t));
    case Calc::LJ:
      if (kind != TransKind::CGPS_lj && kind != TransKind::CGPS_lj_opt &&
          kind != TransKind::CGPS_lj_simple)
        throw std::invalid_argument("kind/calculus mismatch in cgps_spec");
      return tr.bar(std::get<lj::TermPtr>(t));
    default:
      throw std::invalid_argument("cgps_spec: no subsystem translation for this calculus");
  }
}

LamTermPtr colon_cgps_spec(const SpecTerm& t, const LamTermPtr& G, const LamTermPtr& K,
                           TransKind kind) {
  SpecTranslator tr(kind);
  auto used = spec_all_names(t);
  auto gv = lam_all_vars(G);
  used.insert(gv.begin(), gv.end());
  auto kv = lam_all_vars(K);
  used.insert(kv.begin(), kv.end());
  tr.supply = NameSupply(std::move(used));
  switch (calc_of(t)) {
    case Calc::LJms:
      return tr.term(std::get<ljms::TermPtr>(t), G, K);
    case Calc::LJm:
      return tr.term(std::get<ljm::TermPtr>(t), G, K);
    case Calc::LJ:
      return tr.term(std::get<lj::TermPtr>(t), G, K);
    default:
      throw std::invalid_argument("colon_cgps_spec: unsupported calculus");
  }
}

LamTermPtr semi_cgps_ljms(const ljms::TermPtr& cut_term, const LamTermPtr& G,
                          const LamTermPtr& K) {
  auto* c = std::get_if<ljms::CutS>(cut_term.get());
  if (!c) throw std::invalid_argument("semi form is defined on cuts only");
  SpecTranslator tr(TransKind::CGPS_ljms);
  auto used = spec_all_names(SpecTerm{cut_term});
  auto gv = lam_all_vars(G);
  used.insert(gv.begin(), gv.end());
  auto kv = lam_all_vars(K);
  used.insert(kv.begin(), kv.end());
  tr.supply = NameSupply(std::move(used));
  return tr.semi(*c, G, K);
}

LamTermPtr translate_term(const TermPtr& t, TransKind kind) {
  switch (kind) {
    case TransKind::CPS: return cps(t);
    case TransKind::CGPS: return cgps(t);
    case TransKind::CPS_simple: return cps_simple(t);
    default:
      throw std::invalid_argument("translate_term: subsystem kinds need cgps_spec");
  }
}

}  // namespace ljmse
