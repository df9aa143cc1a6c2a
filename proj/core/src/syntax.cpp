#include "ljmse/syntax.hpp"

#include <functional>

namespace ljmse::ast {

TermPtr mk_var(Name name) { return std::make_shared<Term>(Var{std::move(name)}); }
TermPtr mk_lam(Name binder, TermPtr body) {
  return std::make_shared<Term>(Lam{std::move(binder), std::move(body)});
}
TermPtr mk_coerce(CommandPtr cmd) { return std::make_shared<Term>(Coerce{std::move(cmd)}); }
TermPtr mk_tylam(Name binder, TermPtr body) {
  return std::make_shared<Term>(TyLam{std::move(binder), std::move(body)});
}
TermPtr mk_ann(TermPtr term, TypePtr type) {
  return std::make_shared<Term>(Ann{std::move(term), std::move(type)});
}
CoTermPtr mk_nil() {
  static const CoTermPtr nil = std::make_shared<CoTerm>(Nil{});
  return nil;
}
CoTermPtr mk_cons(TermPtr head, CoTermPtr tail) {
  return std::make_shared<CoTerm>(Cons{std::move(head), std::move(tail)});
}
CoTermPtr mk_tycons(TypePtr ty, CoTermPtr tail) {
  return std::make_shared<CoTerm>(TyCons{std::move(ty), std::move(tail)});
}
CoTermPtr mk_sel(Name binder, CommandPtr cmd) {
  return std::make_shared<CoTerm>(Sel{std::move(binder), std::move(cmd)});
}
CommandPtr mk_cut(TermPtr t, CoTermPtr l) {
  return std::make_shared<Command>(Command{std::move(t), std::move(l)});
}

ExprClass class_of(const Expr& e) {
  if (std::holds_alternative<TermPtr>(e)) return ExprClass::Term;
  if (std::holds_alternative<CoTermPtr>(e)) return ExprClass::CoTerm;
  return ExprClass::Command;
}

bool is_value(const TermPtr& t) {
  return std::holds_alternative<Var>(*t) || std::holds_alternative<Lam>(*t) ||
         std::holds_alternative<TyLam>(*t);
}

bool is_eval_ctx(const CoTermPtr& l) {
  return std::holds_alternative<Nil>(*l) || std::holds_alternative<Cons>(*l) ||
         std::holds_alternative<TyCons>(*l);
}

namespace {

void fv_term(const TermPtr& t, std::set<Name>& bound, std::set<Name>& out);
void fv_coterm(const CoTermPtr& l, std::set<Name>& bound, std::set<Name>& out);
void fv_command(const CommandPtr& c, std::set<Name>& bound, std::set<Name>& out);

void fv_term(const TermPtr& t, std::set<Name>& bound, std::set<Name>& out) {
  if (auto* v = std::get_if<Var>(t.get())) {
    if (!bound.count(v->name)) out.insert(v->name);
  } else if (auto* lam = std::get_if<Lam>(t.get())) {
    bool fresh = bound.insert(lam->binder).second;
    fv_term(lam->body, bound, out);
    if (fresh) bound.erase(lam->binder);
  } else if (auto* co = std::get_if<Coerce>(t.get())) {
    fv_command(co->cmd, bound, out);
  } else if (auto* tl = std::get_if<TyLam>(t.get())) {
    fv_term(tl->body, bound, out);
  } else if (auto* an = std::get_if<Ann>(t.get())) {
    fv_term(an->term, bound, out);
  }
}

void fv_coterm(const CoTermPtr& l, std::set<Name>& bound, std::set<Name>& out) {
  if (std::holds_alternative<Nil>(*l)) return;
  if (auto* c = std::get_if<Cons>(l.get())) {
    fv_term(c->head, bound, out);
    fv_coterm(c->tail, bound, out);
  } else if (auto* tc = std::get_if<TyCons>(l.get())) {
    fv_coterm(tc->tail, bound, out);
  } else {
    const auto& s = std::get<Sel>(*l);
    bool fresh = bound.insert(s.binder).second;
    fv_command(s.cmd, bound, out);
    if (fresh) bound.erase(s.binder);
  }
}

void fv_command(const CommandPtr& c, std::set<Name>& bound, std::set<Name>& out) {
  fv_term(c->t, bound, out);
  fv_coterm(c->l, bound, out);
}

}  // namespace

std::set<Name> free_vars(const Expr& e) {
  std::set<Name> bound, out;
  std::visit([&](const auto& p) {
    using P = std::decay_t<decltype(p)>;
    if constexpr (std::is_same_v<P, TermPtr>) fv_term(p, bound, out);
    else if constexpr (std::is_same_v<P, CoTermPtr>) fv_coterm(p, bound, out);
    else fv_command(p, bound, out);
  }, e);
  return out;
}
std::set<Name> free_vars(const TermPtr& t) { return free_vars(Expr{t}); }
std::set<Name> free_vars(const CoTermPtr& l) { return free_vars(Expr{l}); }
std::set<Name> free_vars(const CommandPtr& c) { return free_vars(Expr{c}); }

bool not_in(const Name& x, const Expr& e) { return free_vars(e).count(x) == 0; }

namespace {

void names_term(const TermPtr& t, std::set<Name>& vs, std::set<Name>* tys);
void names_coterm(const CoTermPtr& l, std::set<Name>& vs, std::set<Name>* tys);

void collect_ty(const TypePtr& a, std::set<Name>& tys) {
  if (auto* v = std::get_if<ty::Var>(a.get())) {
    tys.insert(v->name);
  } else if (auto* ar = std::get_if<ty::Arrow>(a.get())) {
    collect_ty(ar->dom, tys);
    collect_ty(ar->cod, tys);
  } else if (auto* fa = std::get_if<ty::Forall>(a.get())) {
    tys.insert(fa->binder);
    collect_ty(fa->body, tys);
  }
}

void names_command(const CommandPtr& c, std::set<Name>& vs, std::set<Name>* tys) {
  names_term(c->t, vs, tys);
  names_coterm(c->l, vs, tys);
}

void names_term(const TermPtr& t, std::set<Name>& vs, std::set<Name>* tys) {
  if (auto* v = std::get_if<Var>(t.get())) {
    vs.insert(v->name);
  } else if (auto* lam = std::get_if<Lam>(t.get())) {
    vs.insert(lam->binder);
    names_term(lam->body, vs, tys);
  } else if (auto* co = std::get_if<Coerce>(t.get())) {
    names_command(co->cmd, vs, tys);
  } else if (auto* tl = std::get_if<TyLam>(t.get())) {
    if (tys) tys->insert(tl->binder);
    names_term(tl->body, vs, tys);
  } else if (auto* an = std::get_if<Ann>(t.get())) {
    if (tys) collect_ty(an->type, *tys);
    names_term(an->term, vs, tys);
  }
}

void names_coterm(const CoTermPtr& l, std::set<Name>& vs, std::set<Name>* tys) {
  if (std::holds_alternative<Nil>(*l)) return;
  if (auto* c = std::get_if<Cons>(l.get())) {
    names_term(c->head, vs, tys);
    names_coterm(c->tail, vs, tys);
  } else if (auto* tc = std::get_if<TyCons>(l.get())) {
    if (tys) collect_ty(tc->ty, *tys);
    names_coterm(tc->tail, vs, tys);
  } else {
    const auto& s = std::get<Sel>(*l);
    vs.insert(s.binder);
    names_command(s.cmd, vs, tys);
  }
}

}  // namespace

std::set<Name> all_vars(const Expr& e) {
  std::set<Name> vs;
  std::visit([&](const auto& p) {
    using P = std::decay_t<decltype(p)>;
    if constexpr (std::is_same_v<P, TermPtr>) names_term(p, vs, nullptr);
    else if constexpr (std::is_same_v<P, CoTermPtr>) names_coterm(p, vs, nullptr);
    else names_command(p, vs, nullptr);
  }, e);
  return vs;
}

std::set<Name> all_ty_vars(const Expr& e) {
  std::set<Name> vs, tys;
  std::visit([&](const auto& p) {
    using P = std::decay_t<decltype(p)>;
    if constexpr (std::is_same_v<P, TermPtr>) names_term(p, vs, &tys);
    else if constexpr (std::is_same_v<P, CoTermPtr>) names_coterm(p, vs, &tys);
    else names_command(p, vs, &tys);
  }, e);
  return tys;
}

namespace {

// One substitution pass shares a supply so renames are deterministic for the
// whole top-level call.
struct Subst {
  const TermPtr& t;
  const Name& x;
  std::set<Name> fv_t;
  NameSupply supply;

  Subst(const TermPtr& t_, const Name& x_, const Expr& body) : t(t_), x(x_) {
    fv_t = free_vars(t_);
    std::set<Name> used = all_vars(Expr{t_});
    auto bn = all_vars(body);
    used.insert(bn.begin(), bn.end());
    used.insert(x_);
    supply = NameSupply(std::move(used));
  }

  TermPtr term(const TermPtr& u) {
    if (auto* v = std::get_if<Var>(u.get())) {
      return v->name == x ? t : u;
    }
    if (auto* lam = std::get_if<Lam>(u.get())) {
      if (lam->binder == x) return u;
      if (fv_t.count(lam->binder)) {
        Name nb = supply.fresh(lam->binder);
        TermPtr renamed = rename_term(lam->body, lam->binder, nb);
        return mk_lam(nb, term(renamed));
      }
      return mk_lam(lam->binder, term(lam->body));
    }
    if (auto* co = std::get_if<Coerce>(u.get())) return mk_coerce(command(co->cmd));
    if (auto* tl = std::get_if<TyLam>(u.get())) return mk_tylam(tl->binder, term(tl->body));
    const auto& an = std::get<Ann>(*u);
    return mk_ann(term(an.term), an.type);
  }

  CoTermPtr coterm(const CoTermPtr& l) {
    if (std::holds_alternative<Nil>(*l)) return l;
    if (auto* c = std::get_if<Cons>(l.get())) return mk_cons(term(c->head), coterm(c->tail));
    if (auto* tc = std::get_if<TyCons>(l.get())) return mk_tycons(tc->ty, coterm(tc->tail));
    const auto& s = std::get<Sel>(*l);
    if (s.binder == x) return l;
    if (fv_t.count(s.binder)) {
      Name nb = supply.fresh(s.binder);
      CommandPtr renamed = rename_command(s.cmd, s.binder, nb);
      return mk_sel(nb, command(renamed));
    }
    return mk_sel(s.binder, command(s.cmd));
  }

  CommandPtr command(const CommandPtr& c) { return mk_cut(term(c->t), coterm(c->l)); }

  // plain renaming old -> nw (nw fresh, so capture is impossible)
  TermPtr rename_term(const TermPtr& u, const Name& old, const Name& nw) {
    return subst_term(mk_var(nw), old, u);
  }
  CommandPtr rename_command(const CommandPtr& c, const Name& old, const Name& nw) {
    return subst_command(mk_var(nw), old, c);
  }
};

}  // namespace

TermPtr subst_term(const TermPtr& t, const Name& x, const TermPtr& body) {
  Subst s(t, x, Expr{body});
  return s.term(body);
}
CoTermPtr subst_coterm(const TermPtr& t, const Name& x, const CoTermPtr& body) {
  Subst s(t, x, Expr{body});
  return s.coterm(body);
}
CommandPtr subst_command(const TermPtr& t, const Name& x, const CommandPtr& body) {
  Subst s(t, x, Expr{body});
  return s.command(body);
}

Expr subst(const TermPtr& t, const Name& x, const Expr& body) {
  return std::visit([&](const auto& p) -> Expr {
    using P = std::decay_t<decltype(p)>;
    if constexpr (std::is_same_v<P, TermPtr>) return subst_term(t, x, p);
    else if constexpr (std::is_same_v<P, CoTermPtr>) return subst_coterm(t, x, p);
    else return subst_command(t, x, p);
  }, body);
}

CoTermPtr append(const CoTermPtr& l, const CoTermPtr& l2) {
  if (std::holds_alternative<Nil>(*l)) return l2;
  if (auto* c = std::get_if<Cons>(l.get())) return mk_cons(c->head, append(c->tail, l2));
  if (auto* tc = std::get_if<TyCons>(l.get())) return mk_tycons(tc->ty, append(tc->tail, l2));
  // ((x)tl)@l' = (x) t (l@l'); rename x away from l2's free variables first
  const auto& s = std::get<Sel>(*l);
  Name binder = s.binder;
  CommandPtr cmd = s.cmd;
  if (free_vars(l2).count(binder)) {
    NameSupply supply(all_vars(Expr{l}));
    supply.reserve(free_vars(l2));
    binder = supply.fresh(s.binder);
    cmd = subst_command(mk_var(binder), s.binder, cmd);
  }
  return mk_sel(binder, mk_cut(cmd->t, append(cmd->l, l2)));
}

namespace {

// canonical nameless print; binders become "." plus de Bruijn references
struct Canon {
  std::string out;
  std::vector<Name> env;       // term binders, innermost last
  std::vector<Name> tyenv;     // type binders

  void var(const Name& n) {
    for (std::size_t i = env.size(); i-- > 0;) {
      if (env[i] == n) {
        out += '#';
        out += std::to_string(env.size() - 1 - i);
        return;
      }
    }
    out += '!';
    out += n;
  }

  void type(const TypePtr& a) {
    if (auto* v = std::get_if<ty::Var>(a.get())) {
      for (std::size_t i = tyenv.size(); i-- > 0;) {
        if (tyenv[i] == v->name) {
          out += '#';
          out += std::to_string(tyenv.size() - 1 - i);
          return;
        }
      }
      out += '!';
      out += v->name;
    } else if (std::holds_alternative<ty::Bottom>(*a)) {
      out += 'B';
    } else if (auto* ar = std::get_if<ty::Arrow>(a.get())) {
      out += '(';
      type(ar->dom);
      out += '>';
      type(ar->cod);
      out += ')';
    } else {
      const auto& fa = std::get<ty::Forall>(*a);
      out += 'Q';
      tyenv.push_back(fa.binder);
      type(fa.body);
      tyenv.pop_back();
    }
  }

  void term(const TermPtr& t) {
    if (auto* v = std::get_if<Var>(t.get())) {
      var(v->name);
    } else if (auto* lam = std::get_if<Lam>(t.get())) {
      out += 'L';
      env.push_back(lam->binder);
      term(lam->body);
      env.pop_back();
    } else if (auto* co = std::get_if<Coerce>(t.get())) {
      out += '{';
      command(co->cmd);
      out += '}';
    } else if (auto* tl = std::get_if<TyLam>(t.get())) {
      out += 'T';
      tyenv.push_back(tl->binder);
      term(tl->body);
      tyenv.pop_back();
    } else {
      const auto& an = std::get<Ann>(*t);
      out += 'A';
      term(an.term);
      out += ':';
      type(an.type);
    }
  }

  void coterm(const CoTermPtr& l) {
    if (std::holds_alternative<Nil>(*l)) {
      out += 'N';
    } else if (auto* c = std::get_if<Cons>(l.get())) {
      out += 'C';
      term(c->head);
      coterm(c->tail);
    } else if (auto* tc = std::get_if<TyCons>(l.get())) {
      out += 'Y';
      type(tc->ty);
      coterm(tc->tail);
    } else {
      const auto& s = std::get<Sel>(*l);
      out += 'S';
      env.push_back(s.binder);
      command(s.cmd);
      env.pop_back();
    }
  }

  void command(const CommandPtr& c) {
    out += '<';
    term(c->t);
    coterm(c->l);
    out += '>';
  }
};

}  // namespace

std::string canonical_key(const Expr& e) {
  Canon c;
  std::visit([&](const auto& p) {
    using P = std::decay_t<decltype(p)>;
    if constexpr (std::is_same_v<P, TermPtr>) c.term(p);
    else if constexpr (std::is_same_v<P, CoTermPtr>) c.coterm(p);
    else c.command(p);
  }, e);
  return std::move(c.out);
}

bool alpha_eq(const Expr& a, const Expr& b) {
  if (class_of(a) != class_of(b)) return false;
  return canonical_key(a) == canonical_key(b);
}
bool alpha_eq(const TermPtr& a, const TermPtr& b) { return alpha_eq(Expr{a}, Expr{b}); }
bool alpha_eq(const CoTermPtr& a, const CoTermPtr& b) { return alpha_eq(Expr{a}, Expr{b}); }
bool alpha_eq(const CommandPtr& a, const CommandPtr& b) { return alpha_eq(Expr{a}, Expr{b}); }

namespace {

struct TySubst {
  const TypePtr& b;
  const Name& x;
  std::set<Name> fv_b;
  NameSupply supply;

  TySubst(const TypePtr& b_, const Name& x_, const Expr& e) : b(b_), x(x_) {
    fv_b = free_ty_vars(b_);
    std::set<Name> used = all_ty_vars(e);
    used.insert(fv_b.begin(), fv_b.end());
    used.insert(x_);
    supply = NameSupply(std::move(used));
  }

  TermPtr term(const TermPtr& t) {
    if (std::holds_alternative<Var>(*t)) return t;
    if (auto* lam = std::get_if<Lam>(t.get())) return mk_lam(lam->binder, term(lam->body));
    if (auto* co = std::get_if<Coerce>(t.get())) return mk_coerce(command(co->cmd));
    if (auto* tl = std::get_if<TyLam>(t.get())) {
      if (tl->binder == x) return t;
      if (fv_b.count(tl->binder)) {
        Name nb = supply.fresh(tl->binder);
        TermPtr renamed = ty_subst_term(ty_var(nb), tl->binder, tl->body);
        return mk_tylam(nb, term(renamed));
      }
      return mk_tylam(tl->binder, term(tl->body));
    }
    const auto& an = std::get<Ann>(*t);
    return mk_ann(term(an.term), ty_subst_type(b, x, an.type));
  }

  CoTermPtr coterm(const CoTermPtr& l) {
    if (std::holds_alternative<Nil>(*l)) return l;
    if (auto* c = std::get_if<Cons>(l.get())) return mk_cons(term(c->head), coterm(c->tail));
    if (auto* tc = std::get_if<TyCons>(l.get()))
      return mk_tycons(ty_subst_type(b, x, tc->ty), coterm(tc->tail));
    const auto& s = std::get<Sel>(*l);
    return mk_sel(s.binder, command(s.cmd));
  }

  CommandPtr command(const CommandPtr& c) { return mk_cut(term(c->t), coterm(c->l)); }
};

}  // namespace

Expr ty_subst_expr(const TypePtr& b, const Name& x, const Expr& e) {
  TySubst s(b, x, e);
  return std::visit([&](const auto& p) -> Expr {
    using P = std::decay_t<decltype(p)>;
    if constexpr (std::is_same_v<P, TermPtr>) return s.term(p);
    else if constexpr (std::is_same_v<P, CoTermPtr>) return s.coterm(p);
    else return s.command(p);
  }, e);
}

TermPtr ty_subst_term(const TypePtr& b, const Name& x, const TermPtr& t) {
  return std::get<TermPtr>(ty_subst_expr(b, x, Expr{t}));
}

namespace {

bool lvl2_term(const TermPtr& t);
bool lvl2_coterm(const CoTermPtr& l);
bool lvl2_command(const CommandPtr& c) { return lvl2_term(c->t) || lvl2_coterm(c->l); }

bool lvl2_term(const TermPtr& t) {
  if (std::holds_alternative<TyLam>(*t) || std::holds_alternative<Ann>(*t)) return true;
  if (auto* lam = std::get_if<Lam>(t.get())) return lvl2_term(lam->body);
  if (auto* co = std::get_if<Coerce>(t.get())) return lvl2_command(co->cmd);
  return false;
}

bool lvl2_coterm(const CoTermPtr& l) {
  if (std::holds_alternative<TyCons>(*l)) return true;
  if (auto* c = std::get_if<Cons>(l.get())) return lvl2_term(c->head) || lvl2_coterm(c->tail);
  if (auto* s = std::get_if<Sel>(l.get())) return lvl2_command(s->cmd);
  return false;
}

}  // namespace

bool uses_level2(const Expr& e) {
  return std::visit([](const auto& p) {
    using P = std::decay_t<decltype(p)>;
    if constexpr (std::is_same_v<P, TermPtr>) return lvl2_term(p);
    else if constexpr (std::is_same_v<P, CoTermPtr>) return lvl2_coterm(p);
    else return lvl2_command(p);
  }, e);
}

namespace {

TermPtr strip_term(const TermPtr& t);
CoTermPtr strip_coterm(const CoTermPtr& l);
CommandPtr strip_command(const CommandPtr& c) {
  return mk_cut(strip_term(c->t), strip_coterm(c->l));
}

TermPtr strip_term(const TermPtr& t) {
  if (std::holds_alternative<Var>(*t)) return t;
  if (auto* lam = std::get_if<Lam>(t.get())) return mk_lam(lam->binder, strip_term(lam->body));
  if (auto* co = std::get_if<Coerce>(t.get())) return mk_coerce(strip_command(co->cmd));
  if (auto* tl = std::get_if<TyLam>(t.get())) return mk_tylam(tl->binder, strip_term(tl->body));
  return strip_term(std::get<Ann>(*t).term);
}

CoTermPtr strip_coterm(const CoTermPtr& l) {
  if (std::holds_alternative<Nil>(*l)) return l;
  if (auto* c = std::get_if<Cons>(l.get())) return mk_cons(strip_term(c->head), strip_coterm(c->tail));
  if (auto* tc = std::get_if<TyCons>(l.get())) return mk_tycons(tc->ty, strip_coterm(tc->tail));
  const auto& s = std::get<Sel>(*l);
  return mk_sel(s.binder, strip_command(s.cmd));
}

bool any_ann_coterm(const CoTermPtr& l);

bool any_ann_term(const TermPtr& t) {
  if (std::holds_alternative<Ann>(*t)) return true;
  if (auto* lam = std::get_if<Lam>(t.get())) return any_ann_term(lam->body);
  if (auto* co = std::get_if<Coerce>(t.get()))
    return any_ann_term(co->cmd->t) || any_ann_coterm(co->cmd->l);
  if (auto* tl = std::get_if<TyLam>(t.get())) return any_ann_term(tl->body);
  return false;
}
bool any_ann_coterm(const CoTermPtr& l) {
  if (auto* c = std::get_if<Cons>(l.get())) return any_ann_term(c->head) || any_ann_coterm(c->tail);
  if (auto* tc = std::get_if<TyCons>(l.get())) return any_ann_coterm(tc->tail);
  if (auto* s = std::get_if<Sel>(l.get())) return any_ann_term(s->cmd->t) || any_ann_coterm(s->cmd->l);
  return false;
}

}  // namespace

Expr strip_ann(const Expr& e) {
  return std::visit([](const auto& p) -> Expr {
    using P = std::decay_t<decltype(p)>;
    if constexpr (std::is_same_v<P, TermPtr>) return strip_term(p);
    else if constexpr (std::is_same_v<P, CoTermPtr>) return strip_coterm(p);
    else return strip_command(p);
  }, e);
}
TermPtr strip_ann(const TermPtr& t) { return strip_term(t); }

bool has_ann(const Expr& e) {
  return std::visit([](const auto& p) {
    using P = std::decay_t<decltype(p)>;
    if constexpr (std::is_same_v<P, TermPtr>) return any_ann_term(p);
    else if constexpr (std::is_same_v<P, CoTermPtr>) return any_ann_coterm(p);
    else return any_ann_term(p->t) || any_ann_coterm(p->l);
  }, e);
}

namespace {

std::size_t size_term(const TermPtr& t);
std::size_t size_coterm(const CoTermPtr& l);
std::size_t size_command(const CommandPtr& c) { return size_term(c->t) + size_coterm(c->l); }

std::size_t size_term(const TermPtr& t) {
  if (std::holds_alternative<Var>(*t)) return 1;
  if (auto* lam = std::get_if<Lam>(t.get())) return 1 + size_term(lam->body);
  if (auto* co = std::get_if<Coerce>(t.get())) return 1 + size_command(co->cmd);
  if (auto* tl = std::get_if<TyLam>(t.get())) return 1 + size_term(tl->body);
  return 1 + size_term(std::get<Ann>(*t).term);
}
std::size_t size_coterm(const CoTermPtr& l) {
  if (std::holds_alternative<Nil>(*l)) return 1;
  if (auto* c = std::get_if<Cons>(l.get())) return 1 + size_term(c->head) + size_coterm(c->tail);
  if (auto* tc = std::get_if<TyCons>(l.get())) return 1 + size_coterm(tc->tail);
  const auto& s = std::get<Sel>(*l);
  return 1 + size_command(s.cmd);
}

}  // namespace

std::size_t expr_size(const Expr& e) {
  return std::visit([](const auto& p) {
    using P = std::decay_t<decltype(p)>;
    if constexpr (std::is_same_v<P, TermPtr>) return size_term(p);
    else if constexpr (std::is_same_v<P, CoTermPtr>) return size_coterm(p);
    else return size_command(p);
  }, e);
}

}  // namespace ljmse::ast
