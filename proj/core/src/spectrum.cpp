#include "ljmse/spectrum.hpp"

#include <deque>
#include <functional>
#include <unordered_map>

namespace ljmse {

const char* calc_name(Calc c) {
  switch (c) {
    case Calc::Lam: return "lambda";
    case Calc::LJ: return "lj";
    case Calc::LJm: return "ljm";
    case Calc::LJms: return "ljms";
    case Calc::LJmse: return "ljmse";
  }
  return "?";
}

std::optional<Calc> calc_from_name(const std::string& s) {
  if (s == "lambda" || s == "lam") return Calc::Lam;
  if (s == "lj") return Calc::LJ;
  if (s == "ljm") return Calc::LJm;
  if (s == "ljms") return Calc::LJms;
  if (s == "ljmse") return Calc::LJmse;
  return std::nullopt;
}

Calc calc_of(const SpecTerm& t) {
  if (std::holds_alternative<lam::TermPtr>(t)) return Calc::Lam;
  if (std::holds_alternative<lj::TermPtr>(t)) return Calc::LJ;
  if (std::holds_alternative<ljm::TermPtr>(t)) return Calc::LJm;
  return Calc::LJms;
}

namespace lam {
TermPtr var(Name n) { return std::make_shared<Term>(Var{std::move(n)}); }
TermPtr abs(Name x, TermPtr b) { return std::make_shared<Term>(Abs{std::move(x), std::move(b)}); }
TermPtr app(TermPtr f, TermPtr a) {
  return std::make_shared<Term>(App{std::move(f), std::move(a)});
}
}  // namespace lam

namespace lj {
TermPtr var(Name n) { return std::make_shared<Term>(Var{std::move(n)}); }
TermPtr abs(Name x, TermPtr b) { return std::make_shared<Term>(Abs{std::move(x), std::move(b)}); }
TermPtr gapp(TermPtr f, TermPtr u, Name x, TermPtr v) {
  return std::make_shared<Term>(GApp{std::move(f), std::move(u), std::move(x), std::move(v)});
}
}  // namespace lj

namespace ljm {
TermPtr var(Name n) { return std::make_shared<Term>(Var{std::move(n)}); }
TermPtr abs(Name x, TermPtr b) { return std::make_shared<Term>(Abs{std::move(x), std::move(b)}); }
TermPtr gmapp(TermPtr f, TermPtr u, CoTermPtr l) {
  return std::make_shared<Term>(GMApp{std::move(f), std::move(u), std::move(l)});
}
CoTermPtr cons(TermPtr u, CoTermPtr l) {
  return std::make_shared<CoTerm>(ConsM{std::move(u), std::move(l)});
}
CoTermPtr sel(Name x, TermPtr v) {
  return std::make_shared<CoTerm>(SelM{std::move(x), std::move(v)});
}
}  // namespace ljm

namespace ljms {
TermPtr var(Name n) { return std::make_shared<Term>(Var{std::move(n)}); }
TermPtr abs(Name x, TermPtr b) { return std::make_shared<Term>(Abs{std::move(x), std::move(b)}); }
TermPtr cut(TermPtr t, CoTermPtr l) {
  return std::make_shared<Term>(CutS{std::move(t), std::move(l)});
}
CoTermPtr cons(TermPtr u, CoTermPtr l) {
  return std::make_shared<CoTerm>(ConsS{std::move(u), std::move(l)});
}
CoTermPtr sel(Name x, TermPtr v) {
  return std::make_shared<CoTerm>(SelS{std::move(x), std::move(v)});
}
}  // namespace ljms

// ---------------------------------------------------------------------------
// free variables
// ---------------------------------------------------------------------------

namespace {

void fv_lam(const lam::TermPtr& t, std::set<Name>& bound, std::set<Name>& out) {
  if (auto* v = std::get_if<lam::Var>(t.get())) {
    if (!bound.count(v->name)) out.insert(v->name);
  } else if (auto* a = std::get_if<lam::Abs>(t.get())) {
    bool fresh = bound.insert(a->binder).second;
    fv_lam(a->body, bound, out);
    if (fresh) bound.erase(a->binder);
  } else {
    const auto& ap = std::get<lam::App>(*t);
    fv_lam(ap.fn, bound, out);
    fv_lam(ap.arg, bound, out);
  }
}

void fv_lj(const lj::TermPtr& t, std::set<Name>& bound, std::set<Name>& out) {
  if (auto* v = std::get_if<lj::Var>(t.get())) {
    if (!bound.count(v->name)) out.insert(v->name);
  } else if (auto* a = std::get_if<lj::Abs>(t.get())) {
    bool fresh = bound.insert(a->binder).second;
    fv_lj(a->body, bound, out);
    if (fresh) bound.erase(a->binder);
  } else {
    const auto& g = std::get<lj::GApp>(*t);
    fv_lj(g.fn, bound, out);
    fv_lj(g.arg, bound, out);
    bool fresh = bound.insert(g.binder).second;
    fv_lj(g.body, bound, out);
    if (fresh) bound.erase(g.binder);
  }
}

void fv_ljm_t(const ljm::TermPtr& t, std::set<Name>& bound, std::set<Name>& out);
void fv_ljm_l(const ljm::CoTermPtr& l, std::set<Name>& bound, std::set<Name>& out);

void fv_ljm_t(const ljm::TermPtr& t, std::set<Name>& bound, std::set<Name>& out) {
  if (auto* v = std::get_if<ljm::Var>(t.get())) {
    if (!bound.count(v->name)) out.insert(v->name);
  } else if (auto* a = std::get_if<ljm::Abs>(t.get())) {
    bool fresh = bound.insert(a->binder).second;
    fv_ljm_t(a->body, bound, out);
    if (fresh) bound.erase(a->binder);
  } else {
    const auto& g = std::get<ljm::GMApp>(*t);
    fv_ljm_t(g.fn, bound, out);
    fv_ljm_t(g.arg, bound, out);
    fv_ljm_l(g.rest, bound, out);
  }
}

void fv_ljm_l(const ljm::CoTermPtr& l, std::set<Name>& bound, std::set<Name>& out) {
  if (auto* c = std::get_if<ljm::ConsM>(l.get())) {
    fv_ljm_t(c->head, bound, out);
    fv_ljm_l(c->tail, bound, out);
  } else {
    const auto& s = std::get<ljm::SelM>(*l);
    bool fresh = bound.insert(s.binder).second;
    fv_ljm_t(s.body, bound, out);
    if (fresh) bound.erase(s.binder);
  }
}

void fv_ljms_t(const ljms::TermPtr& t, std::set<Name>& bound, std::set<Name>& out);
void fv_ljms_l(const ljms::CoTermPtr& l, std::set<Name>& bound, std::set<Name>& out);

void fv_ljms_t(const ljms::TermPtr& t, std::set<Name>& bound, std::set<Name>& out) {
  if (auto* v = std::get_if<ljms::Var>(t.get())) {
    if (!bound.count(v->name)) out.insert(v->name);
  } else if (auto* a = std::get_if<ljms::Abs>(t.get())) {
    bool fresh = bound.insert(a->binder).second;
    fv_ljms_t(a->body, bound, out);
    if (fresh) bound.erase(a->binder);
  } else {
    const auto& c = std::get<ljms::CutS>(*t);
    fv_ljms_t(c.head, bound, out);
    fv_ljms_l(c.rest, bound, out);
  }
}

void fv_ljms_l(const ljms::CoTermPtr& l, std::set<Name>& bound, std::set<Name>& out) {
  if (auto* c = std::get_if<ljms::ConsS>(l.get())) {
    fv_ljms_t(c->head, bound, out);
    fv_ljms_l(c->tail, bound, out);
  } else {
    const auto& s = std::get<ljms::SelS>(*l);
    bool fresh = bound.insert(s.binder).second;
    fv_ljms_t(s.body, bound, out);
    if (fresh) bound.erase(s.binder);
  }
}

}  // namespace

std::set<Name> free_vars(const lam::TermPtr& t) {
  std::set<Name> bound, out;
  fv_lam(t, bound, out);
  return out;
}
std::set<Name> free_vars(const lj::TermPtr& t) {
  std::set<Name> bound, out;
  fv_lj(t, bound, out);
  return out;
}
std::set<Name> free_vars(const ljm::TermPtr& t) {
  std::set<Name> bound, out;
  fv_ljm_t(t, bound, out);
  return out;
}
std::set<Name> free_vars(const ljm::CoTermPtr& l) {
  std::set<Name> bound, out;
  fv_ljm_l(l, bound, out);
  return out;
}
std::set<Name> free_vars(const ljms::TermPtr& t) {
  std::set<Name> bound, out;
  fv_ljms_t(t, bound, out);
  return out;
}
std::set<Name> free_vars(const ljms::CoTermPtr& l) {
  std::set<Name> bound, out;
  fv_ljms_l(l, bound, out);
  return out;
}

// ---------------------------------------------------------------------------
// substitution (capture avoiding, deterministic renames)
// ---------------------------------------------------------------------------

namespace {

template <class TermP>
struct SubstBase {
  const TermP& t;
  const Name& x;
  std::set<Name> fv_t;
  NameSupply supply;

  SubstBase(const TermP& t_, const Name& x_, std::set<Name> used) : t(t_), x(x_) {
    fv_t = free_vars(t_);
    used.insert(fv_t.begin(), fv_t.end());
    used.insert(x_);
    supply = NameSupply(std::move(used));
  }
};

std::set<Name> names_union(std::set<Name> a, const std::set<Name>& b) {
  a.insert(b.begin(), b.end());
  return a;
}

struct LamSub : SubstBase<lam::TermPtr> {
  using SubstBase::SubstBase;
  lam::TermPtr term(const lam::TermPtr& u) {
    if (auto* v = std::get_if<lam::Var>(u.get())) return v->name == x ? t : u;
    if (auto* a = std::get_if<lam::Abs>(u.get())) {
      if (a->binder == x) return u;
      if (fv_t.count(a->binder)) {
        Name nb = supply.fresh(a->binder);
        return lam::abs(nb, term(subst(lam::var(nb), a->binder, a->body)));
      }
      return lam::abs(a->binder, term(a->body));
    }
    const auto& ap = std::get<lam::App>(*u);
    return lam::app(term(ap.fn), term(ap.arg));
  }
};

struct LjSub : SubstBase<lj::TermPtr> {
  using SubstBase::SubstBase;
  lj::TermPtr term(const lj::TermPtr& u) {
    if (auto* v = std::get_if<lj::Var>(u.get())) return v->name == x ? t : u;
    if (auto* a = std::get_if<lj::Abs>(u.get())) {
      if (a->binder == x) return u;
      if (fv_t.count(a->binder)) {
        Name nb = supply.fresh(a->binder);
        return lj::abs(nb, term(subst(lj::var(nb), a->binder, a->body)));
      }
      return lj::abs(a->binder, term(a->body));
    }
    const auto& g = std::get<lj::GApp>(*u);
    lj::TermPtr fn = term(g.fn);
    lj::TermPtr arg = term(g.arg);
    if (g.binder == x) return lj::gapp(fn, arg, g.binder, g.body);
    if (fv_t.count(g.binder)) {
      Name nb = supply.fresh(g.binder);
      return lj::gapp(fn, arg, nb, term(subst(lj::var(nb), g.binder, g.body)));
    }
    return lj::gapp(fn, arg, g.binder, term(g.body));
  }
};

struct LjmSub : SubstBase<ljm::TermPtr> {
  using SubstBase::SubstBase;
  ljm::TermPtr term(const ljm::TermPtr& u) {
    if (auto* v = std::get_if<ljm::Var>(u.get())) return v->name == x ? t : u;
    if (auto* a = std::get_if<ljm::Abs>(u.get())) {
      if (a->binder == x) return u;
      if (fv_t.count(a->binder)) {
        Name nb = supply.fresh(a->binder);
        return ljm::abs(nb, term(subst(ljm::var(nb), a->binder, a->body)));
      }
      return ljm::abs(a->binder, term(a->body));
    }
    const auto& g = std::get<ljm::GMApp>(*u);
    return ljm::gmapp(term(g.fn), term(g.arg), coterm(g.rest));
  }
  ljm::CoTermPtr coterm(const ljm::CoTermPtr& l) {
    if (auto* c = std::get_if<ljm::ConsM>(l.get()))
      return ljm::cons(term(c->head), coterm(c->tail));
    const auto& s = std::get<ljm::SelM>(*l);
    if (s.binder == x) return l;
    if (fv_t.count(s.binder)) {
      Name nb = supply.fresh(s.binder);
      return ljm::sel(nb, term(subst(ljm::var(nb), s.binder, s.body)));
    }
    return ljm::sel(s.binder, term(s.body));
  }
};

struct LjmsSub : SubstBase<ljms::TermPtr> {
  using SubstBase::SubstBase;
  ljms::TermPtr term(const ljms::TermPtr& u) {
    if (auto* v = std::get_if<ljms::Var>(u.get())) return v->name == x ? t : u;
    if (auto* a = std::get_if<ljms::Abs>(u.get())) {
      if (a->binder == x) return u;
      if (fv_t.count(a->binder)) {
        Name nb = supply.fresh(a->binder);
        return ljms::abs(nb, term(subst(ljms::var(nb), a->binder, a->body)));
      }
      return ljms::abs(a->binder, term(a->body));
    }
    const auto& c = std::get<ljms::CutS>(*u);
    return ljms::cut(term(c.head), coterm(c.rest));
  }
  ljms::CoTermPtr coterm(const ljms::CoTermPtr& l) {
    if (auto* c = std::get_if<ljms::ConsS>(l.get()))
      return ljms::cons(term(c->head), coterm(c->tail));
    const auto& s = std::get<ljms::SelS>(*l);
    if (s.binder == x) return l;
    if (fv_t.count(s.binder)) {
      Name nb = supply.fresh(s.binder);
      return ljms::sel(nb, term(subst(ljms::var(nb), s.binder, s.body)));
    }
    return ljms::sel(s.binder, term(s.body));
  }
};

std::set<Name> all_names_lam(const lam::TermPtr& t) {
  std::set<Name> out;
  std::function<void(const lam::TermPtr&)> go = [&](const lam::TermPtr& u) {
    if (auto* v = std::get_if<lam::Var>(u.get())) out.insert(v->name);
    else if (auto* a = std::get_if<lam::Abs>(u.get())) { out.insert(a->binder); go(a->body); }
    else { const auto& ap = std::get<lam::App>(*u); go(ap.fn); go(ap.arg); }
  };
  go(t);
  return out;
}

std::set<Name> all_names_lj(const lj::TermPtr& t) {
  std::set<Name> out;
  std::function<void(const lj::TermPtr&)> go = [&](const lj::TermPtr& u) {
    if (auto* v = std::get_if<lj::Var>(u.get())) out.insert(v->name);
    else if (auto* a = std::get_if<lj::Abs>(u.get())) { out.insert(a->binder); go(a->body); }
    else {
      const auto& g = std::get<lj::GApp>(*u);
      go(g.fn); go(g.arg); out.insert(g.binder); go(g.body);
    }
  };
  go(t);
  return out;
}

void all_names_ljm_t(const ljm::TermPtr& t, std::set<Name>& out);
void all_names_ljm_l(const ljm::CoTermPtr& l, std::set<Name>& out);
void all_names_ljm_t(const ljm::TermPtr& t, std::set<Name>& out) {
  if (auto* v = std::get_if<ljm::Var>(t.get())) out.insert(v->name);
  else if (auto* a = std::get_if<ljm::Abs>(t.get())) { out.insert(a->binder); all_names_ljm_t(a->body, out); }
  else {
    const auto& g = std::get<ljm::GMApp>(*t);
    all_names_ljm_t(g.fn, out);
    all_names_ljm_t(g.arg, out);
    all_names_ljm_l(g.rest, out);
  }
}
void all_names_ljm_l(const ljm::CoTermPtr& l, std::set<Name>& out) {
  if (auto* c = std::get_if<ljm::ConsM>(l.get())) {
    all_names_ljm_t(c->head, out);
    all_names_ljm_l(c->tail, out);
  } else {
    const auto& s = std::get<ljm::SelM>(*l);
    out.insert(s.binder);
    all_names_ljm_t(s.body, out);
  }
}

void all_names_ljms_t(const ljms::TermPtr& t, std::set<Name>& out);
void all_names_ljms_l(const ljms::CoTermPtr& l, std::set<Name>& out);
void all_names_ljms_t(const ljms::TermPtr& t, std::set<Name>& out) {
  if (auto* v = std::get_if<ljms::Var>(t.get())) out.insert(v->name);
  else if (auto* a = std::get_if<ljms::Abs>(t.get())) { out.insert(a->binder); all_names_ljms_t(a->body, out); }
  else {
    const auto& c = std::get<ljms::CutS>(*t);
    all_names_ljms_t(c.head, out);
    all_names_ljms_l(c.rest, out);
  }
}
void all_names_ljms_l(const ljms::CoTermPtr& l, std::set<Name>& out) {
  if (auto* c = std::get_if<ljms::ConsS>(l.get())) {
    all_names_ljms_t(c->head, out);
    all_names_ljms_l(c->tail, out);
  } else {
    const auto& s = std::get<ljms::SelS>(*l);
    out.insert(s.binder);
    all_names_ljms_t(s.body, out);
  }
}

}  // namespace

lam::TermPtr subst(const lam::TermPtr& t, const Name& x, const lam::TermPtr& body) {
  LamSub s(t, x, names_union(all_names_lam(t), all_names_lam(body)));
  return s.term(body);
}
lj::TermPtr subst(const lj::TermPtr& t, const Name& x, const lj::TermPtr& body) {
  LjSub s(t, x, names_union(all_names_lj(t), all_names_lj(body)));
  return s.term(body);
}
ljm::TermPtr subst(const ljm::TermPtr& t, const Name& x, const ljm::TermPtr& body) {
  std::set<Name> used;
  all_names_ljm_t(t, used);
  all_names_ljm_t(body, used);
  LjmSub s(t, x, std::move(used));
  return s.term(body);
}
ljm::CoTermPtr subst(const ljm::TermPtr& t, const Name& x, const ljm::CoTermPtr& body) {
  std::set<Name> used;
  all_names_ljm_t(t, used);
  all_names_ljm_l(body, used);
  LjmSub s(t, x, std::move(used));
  return s.coterm(body);
}
ljms::TermPtr subst(const ljms::TermPtr& t, const Name& x, const ljms::TermPtr& body) {
  std::set<Name> used;
  all_names_ljms_t(t, used);
  all_names_ljms_t(body, used);
  LjmsSub s(t, x, std::move(used));
  return s.term(body);
}
ljms::CoTermPtr subst(const ljms::TermPtr& t, const Name& x, const ljms::CoTermPtr& body) {
  std::set<Name> used;
  all_names_ljms_t(t, used);
  all_names_ljms_l(body, used);
  LjmsSub s(t, x, std::move(used));
  return s.coterm(body);
}

// ---------------------------------------------------------------------------
// canonical keys
// ---------------------------------------------------------------------------

namespace {

struct SpecCanon {
  std::string out;
  std::vector<Name> env;

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
    out += ';';
  }

  void go(const lam::TermPtr& t) {
    if (auto* v = std::get_if<lam::Var>(t.get())) var(v->name);
    else if (auto* a = std::get_if<lam::Abs>(t.get())) {
      out += 'L';
      env.push_back(a->binder);
      go(a->body);
      env.pop_back();
    } else {
      const auto& ap = std::get<lam::App>(*t);
      out += '(';
      go(ap.fn);
      go(ap.arg);
      out += ')';
    }
  }

  void go(const lj::TermPtr& t) {
    if (auto* v = std::get_if<lj::Var>(t.get())) var(v->name);
    else if (auto* a = std::get_if<lj::Abs>(t.get())) {
      out += 'L';
      env.push_back(a->binder);
      go(a->body);
      env.pop_back();
    } else {
      const auto& g = std::get<lj::GApp>(*t);
      out += 'G';
      go(g.fn);
      go(g.arg);
      env.push_back(g.binder);
      go(g.body);
      env.pop_back();
      out += ';';
    }
  }

  void go(const ljm::TermPtr& t) {
    if (auto* v = std::get_if<ljm::Var>(t.get())) var(v->name);
    else if (auto* a = std::get_if<ljm::Abs>(t.get())) {
      out += 'L';
      env.push_back(a->binder);
      go(a->body);
      env.pop_back();
    } else {
      const auto& g = std::get<ljm::GMApp>(*t);
      out += 'G';
      go(g.fn);
      go(g.arg);
      go(g.rest);
    }
  }
  void go(const ljm::CoTermPtr& l) {
    if (auto* c = std::get_if<ljm::ConsM>(l.get())) {
      out += 'C';
      go(c->head);
      go(c->tail);
    } else {
      const auto& s = std::get<ljm::SelM>(*l);
      out += 'S';
      env.push_back(s.binder);
      go(s.body);
      env.pop_back();
    }
  }

  void go(const ljms::TermPtr& t) {
    if (auto* v = std::get_if<ljms::Var>(t.get())) var(v->name);
    else if (auto* a = std::get_if<ljms::Abs>(t.get())) {
      out += 'L';
      env.push_back(a->binder);
      go(a->body);
      env.pop_back();
    } else {
      const auto& c = std::get<ljms::CutS>(*t);
      out += 'K';
      go(c.head);
      go(c.rest);
    }
  }
  void go(const ljms::CoTermPtr& l) {
    if (auto* c = std::get_if<ljms::ConsS>(l.get())) {
      out += 'C';
      go(c->head);
      go(c->tail);
    } else {
      const auto& s = std::get<ljms::SelS>(*l);
      out += 'S';
      env.push_back(s.binder);
      go(s.body);
      env.pop_back();
    }
  }
};

}  // namespace

std::string canonical_key(const SpecTerm& t) {
  SpecCanon c;
  c.out += calc_name(calc_of(t));
  c.out += '|';
  std::visit([&](const auto& p) { c.go(p); }, t);
  return std::move(c.out);
}

bool alpha_eq_spec(const SpecTerm& a, const SpecTerm& b) {
  return canonical_key(a) == canonical_key(b);
}

std::set<Name> spec_all_names(const SpecTerm& t) {
  std::set<Name> out;
  if (auto* p = std::get_if<lam::TermPtr>(&t)) return all_names_lam(*p);
  if (auto* p2 = std::get_if<lj::TermPtr>(&t)) return all_names_lj(*p2);
  if (auto* p3 = std::get_if<ljm::TermPtr>(&t)) {
    all_names_ljm_t(*p3, out);
    return out;
  }
  all_names_ljms_t(std::get<ljms::TermPtr>(t), out);
  return out;
}

// ---------------------------------------------------------------------------
// append
// ---------------------------------------------------------------------------

namespace {

// free variables of a generalised argument (u, x.v): FV(u) + (FV(v) - x)
std::set<Name> genarg_free_vars(const lj::GenArg& s) {
  std::set<Name> fv = free_vars(s.arg);
  std::set<Name> fb = free_vars(s.body);
  fb.erase(s.binder);
  fv.insert(fb.begin(), fb.end());
  return fv;
}

}  // namespace

lj::GenArg append_spec(const lj::GenArg& r, const lj::GenArg& s) {
  // (u,x.V)@S = (u,x.VS);  (u,x.tR')@S = (u,x.t(R'@S))
  std::set<Name> fv_s = genarg_free_vars(s);
  Name x = r.binder;
  lj::TermPtr v = r.body;
  if (fv_s.count(x)) {
    std::set<Name> used = all_names_lj(v);
    used.insert(fv_s.begin(), fv_s.end());
    NameSupply supply(std::move(used));
    Name nb = supply.fresh(x);
    v = subst(lj::var(nb), x, v);
    x = nb;
  }
  if (auto* g = std::get_if<lj::GApp>(v.get())) {
    lj::GenArg inner{g->arg, g->binder, g->body};
    lj::GenArg app = append_spec(inner, s);
    return lj::GenArg{r.arg, x, lj::gapp(g->fn, app.arg, app.binder, app.body)};
  }
  // value: VS
  return lj::GenArg{r.arg, x, lj::gapp(v, s.arg, s.binder, s.body)};
}

ljm::CoTermPtr append_spec(const ljm::CoTermPtr& l, const ljm::GenArg& s) {
  if (auto* c = std::get_if<ljm::ConsM>(l.get()))
    return ljm::cons(c->head, append_spec(c->tail, s));
  const auto& se = std::get<ljm::SelM>(*l);
  std::set<Name> fv_s = free_vars(s.arg);
  {
    auto f2 = free_vars(s.rest);
    fv_s.insert(f2.begin(), f2.end());
  }
  Name x = se.binder;
  ljm::TermPtr v = se.body;
  if (fv_s.count(x)) {
    std::set<Name> used;
    all_names_ljm_t(v, used);
    used.insert(fv_s.begin(), fv_s.end());
    NameSupply supply(std::move(used));
    Name nb = supply.fresh(x);
    v = subst(ljm::var(nb), x, v);
    x = nb;
  }
  if (auto* g = std::get_if<ljm::GMApp>(v.get())) {
    // ((x)t(u,l))@S = (x) t(u, l@S)
    return ljm::sel(x, ljm::gmapp(g->fn, g->arg, append_spec(g->rest, s)));
  }
  // ((x)V)@S = (x)VS
  return ljm::sel(x, ljm::gmapp(v, s.arg, s.rest));
}

ljm::GenArg append_spec(const ljm::GenArg& r, const ljm::GenArg& s) {
  return ljm::GenArg{r.arg, append_spec(r.rest, s)};
}

ljms::CoTermPtr append_spec(const ljms::CoTermPtr& l, const ljms::CoTermPtr& l2) {
  if (auto* c = std::get_if<ljms::ConsS>(l.get()))
    return ljms::cons(c->head, append_spec(c->tail, l2));
  const auto& se = std::get<ljms::SelS>(*l);
  std::set<Name> fv_s = free_vars(l2);
  Name x = se.binder;
  ljms::TermPtr v = se.body;
  if (fv_s.count(x)) {
    std::set<Name> used;
    all_names_ljms_t(v, used);
    used.insert(fv_s.begin(), fv_s.end());
    NameSupply supply(std::move(used));
    Name nb = supply.fresh(x);
    v = subst(ljms::var(nb), x, v);
    x = nb;
  }
  if (auto* c = std::get_if<ljms::CutS>(v.get())) {
    // ((x)tl)@l' = (x) t (l@l')
    return ljms::sel(x, ljms::cut(c->head, append_spec(c->rest, l2)));
  }
  // ((x)V)@l' = (x)Vl'
  return ljms::sel(x, ljms::cut(v, l2));
}

// ---------------------------------------------------------------------------
// one-step enumeration
// ---------------------------------------------------------------------------

namespace {

struct StepAcc {
  std::vector<SpecStep> out;
  Pos pos;

  void add(RuleName rule, SpecTerm to) { out.push_back({rule, pos, std::move(to)}); }

  template <class F>
  void child(int idx, const F& f) {
    pos.push_back(idx);
    f();
    pos.pop_back();
  }
};

// --- lambda ---
void steps_lam(const lam::TermPtr& t, StepAcc& acc,
               const std::function<lam::TermPtr(lam::TermPtr)>& wrap) {
  if (auto* ap = std::get_if<lam::App>(t.get())) {
    if (auto* ab = std::get_if<lam::Abs>(ap->fn.get())) {
      acc.add(RuleName::Beta, SpecTerm{wrap(subst(ap->arg, ab->binder, ab->body))});
    }
    acc.child(0, [&] {
      steps_lam(ap->fn, acc, [&](lam::TermPtr r) { return wrap(lam::app(std::move(r), ap->arg)); });
    });
    acc.child(1, [&] {
      steps_lam(ap->arg, acc, [&](lam::TermPtr r) { return wrap(lam::app(ap->fn, std::move(r))); });
    });
  } else if (auto* ab = std::get_if<lam::Abs>(t.get())) {
    acc.child(0, [&] {
      steps_lam(ab->body, acc,
                [&](lam::TermPtr r) { return wrap(lam::abs(ab->binder, std::move(r))); });
    });
  }
}

// --- lj ---
void steps_lj(const lj::TermPtr& t, StepAcc& acc, bool lazy_pi, bool only_pi,
              const std::function<lj::TermPtr(lj::TermPtr)>& wrap) {
  if (auto* g = std::get_if<lj::GApp>(t.get())) {
    if (!only_pi) {
      if (auto* ab = std::get_if<lj::Abs>(g->fn.get())) {
        // beta: (\x.t)(u,y.v) -> [[u/x]t/y]v
        lj::TermPtr inner = subst(g->arg, ab->binder, ab->body);
        acc.add(RuleName::Beta, SpecTerm{wrap(subst(inner, g->binder, g->body))});
      }
    }
    if (auto* gf = std::get_if<lj::GApp>(g->fn.get())) {
      // pi: tRS -> t(R@S)
      lj::GenArg r{gf->arg, gf->binder, gf->body};
      lj::GenArg s{g->arg, g->binder, g->body};
      if (lazy_pi) {
        // t(u,x.v)S -> t(u,x.vS), binder renamed away from S if needed
        Name x = gf->binder;
        lj::TermPtr v = gf->body;
        std::set<Name> fv_s = genarg_free_vars(s);
        if (fv_s.count(x)) {
          std::set<Name> used = all_names_lj(v);
          used.insert(fv_s.begin(), fv_s.end());
          NameSupply supply(std::move(used));
          Name nb = supply.fresh(x);
          v = subst(lj::var(nb), x, v);
          x = nb;
        }
        acc.add(RuleName::PiHat,
                SpecTerm{wrap(lj::gapp(gf->fn, gf->arg, x,
                                       lj::gapp(v, s.arg, s.binder, s.body)))});
      } else {
        lj::GenArg rs = append_spec(r, s);
        acc.add(RuleName::Pi, SpecTerm{wrap(lj::gapp(gf->fn, rs.arg, rs.binder, rs.body))});
      }
    }
    acc.child(0, [&] {
      steps_lj(g->fn, acc, lazy_pi, only_pi,
               [&](lj::TermPtr r) { return wrap(lj::gapp(std::move(r), g->arg, g->binder, g->body)); });
    });
    acc.child(1, [&] {
      steps_lj(g->arg, acc, lazy_pi, only_pi,
               [&](lj::TermPtr r) { return wrap(lj::gapp(g->fn, std::move(r), g->binder, g->body)); });
    });
    acc.child(2, [&] {
      steps_lj(g->body, acc, lazy_pi, only_pi,
               [&](lj::TermPtr r) { return wrap(lj::gapp(g->fn, g->arg, g->binder, std::move(r))); });
    });
  } else if (auto* ab = std::get_if<lj::Abs>(t.get())) {
    acc.child(0, [&] {
      steps_lj(ab->body, acc, lazy_pi, only_pi,
               [&](lj::TermPtr r) { return wrap(lj::abs(ab->binder, std::move(r))); });
    });
  }
}

// --- ljm ---
void steps_ljm_t(const ljm::TermPtr& t, StepAcc& acc, bool lazy_pi,
                 const std::function<ljm::TermPtr(ljm::TermPtr)>& wrap);
void steps_ljm_l(const ljm::CoTermPtr& l, StepAcc& acc, bool lazy_pi,
                 const std::function<ljm::TermPtr(ljm::CoTermPtr)>& wrap);

ljm::CoTermPtr append_lazy_ljm(const ljm::CoTermPtr& l, const ljm::GenArg& s) {
  // (u::l)@^S = u::(l@^S);  ((x)t)@^S = (x)tS
  if (auto* c = std::get_if<ljm::ConsM>(l.get()))
    return ljm::cons(c->head, append_lazy_ljm(c->tail, s));
  const auto& se = std::get<ljm::SelM>(*l);
  std::set<Name> fv_s = free_vars(s.arg);
  {
    auto f2 = free_vars(s.rest);
    fv_s.insert(f2.begin(), f2.end());
  }
  Name x = se.binder;
  ljm::TermPtr v = se.body;
  if (fv_s.count(x)) {
    std::set<Name> used;
    all_names_ljm_t(v, used);
    used.insert(fv_s.begin(), fv_s.end());
    NameSupply supply(std::move(used));
    Name nb = supply.fresh(x);
    v = subst(ljm::var(nb), x, v);
    x = nb;
  }
  return ljm::sel(x, ljm::gmapp(v, s.arg, s.rest));
}

void steps_ljm_t(const ljm::TermPtr& t, StepAcc& acc, bool lazy_pi,
                 const std::function<ljm::TermPtr(ljm::TermPtr)>& wrap) {
  if (auto* g = std::get_if<ljm::GMApp>(t.get())) {
    if (auto* ab = std::get_if<ljm::Abs>(g->fn.get())) {
      ljm::TermPtr substituted = subst(g->arg, ab->binder, ab->body);
      if (auto* se = std::get_if<ljm::SelM>(g->rest.get())) {
        // beta1: (\x.t)(u,(y)v) -> [[u/x]t/y]v
        acc.add(RuleName::Beta1, SpecTerm{wrap(subst(substituted, se->binder, se->body))});
      } else {
        // beta2: (\x.t)(u,v::l) -> ([u/x]t)(v,l)
        const auto& c = std::get<ljm::ConsM>(*g->rest);
        acc.add(RuleName::Beta2, SpecTerm{wrap(ljm::gmapp(substituted, c.head, c.tail))});
      }
    }
    if (auto* gf = std::get_if<ljm::GMApp>(g->fn.get())) {
      // pi: tRS -> t(R@S)
      ljm::GenArg s{g->arg, g->rest};
      if (lazy_pi) {
        acc.add(RuleName::PiHat,
                SpecTerm{wrap(ljm::gmapp(gf->fn, gf->arg, append_lazy_ljm(gf->rest, s)))});
      } else {
        acc.add(RuleName::Pi,
                SpecTerm{wrap(ljm::gmapp(gf->fn, gf->arg, append_spec(gf->rest, s)))});
      }
    }
    acc.child(0, [&] {
      steps_ljm_t(g->fn, acc, lazy_pi,
                  [&](ljm::TermPtr r) { return wrap(ljm::gmapp(std::move(r), g->arg, g->rest)); });
    });
    acc.child(1, [&] {
      steps_ljm_t(g->arg, acc, lazy_pi,
                  [&](ljm::TermPtr r) { return wrap(ljm::gmapp(g->fn, std::move(r), g->rest)); });
    });
    acc.child(2, [&] {
      steps_ljm_l(g->rest, acc, lazy_pi,
                  [&](ljm::CoTermPtr r) { return wrap(ljm::gmapp(g->fn, g->arg, std::move(r))); });
    });
  } else if (auto* ab = std::get_if<ljm::Abs>(t.get())) {
    acc.child(0, [&] {
      steps_ljm_t(ab->body, acc, lazy_pi,
                  [&](ljm::TermPtr r) { return wrap(ljm::abs(ab->binder, std::move(r))); });
    });
  }
}

void steps_ljm_l(const ljm::CoTermPtr& l, StepAcc& acc, bool lazy_pi,
                 const std::function<ljm::TermPtr(ljm::CoTermPtr)>& wrap) {
  // mu: (x)x(u,l) -> u::l, if x not in u,l
  if (auto* se = std::get_if<ljm::SelM>(l.get())) {
    if (auto* g = std::get_if<ljm::GMApp>(se->body.get())) {
      if (auto* v = std::get_if<ljm::Var>(g->fn.get())) {
        if (v->name == se->binder && !free_vars(g->arg).count(se->binder) &&
            !free_vars(g->rest).count(se->binder)) {
          acc.add(RuleName::Mu, SpecTerm{wrap(ljm::cons(g->arg, g->rest))});
        }
      }
    }
    acc.child(0, [&] {
      steps_ljm_t(se->body, acc, lazy_pi,
                  [&](ljm::TermPtr r) { return wrap(ljm::sel(se->binder, std::move(r))); });
    });
  } else {
    const auto& c = std::get<ljm::ConsM>(*l);
    acc.child(0, [&] {
      steps_ljm_t(c.head, acc, lazy_pi,
                  [&](ljm::TermPtr r) { return wrap(ljm::cons(std::move(r), c.tail)); });
    });
    acc.child(1, [&] {
      steps_ljm_l(c.tail, acc, lazy_pi,
                  [&](ljm::CoTermPtr r) { return wrap(ljm::cons(c.head, std::move(r))); });
    });
  }
}

// --- ljms ---
void steps_ljms_t(const ljms::TermPtr& t, StepAcc& acc,
                  const std::function<ljms::TermPtr(ljms::TermPtr)>& wrap);
void steps_ljms_l(const ljms::CoTermPtr& l, StepAcc& acc,
                  const std::function<ljms::TermPtr(ljms::CoTermPtr)>& wrap);

void steps_ljms_t(const ljms::TermPtr& t, StepAcc& acc,
                  const std::function<ljms::TermPtr(ljms::TermPtr)>& wrap) {
  if (auto* c = std::get_if<ljms::CutS>(t.get())) {
    if (auto* se = std::get_if<ljms::SelS>(c->rest.get())) {
      // sigma: t(x)v -> [t/x]v
      acc.add(RuleName::Sigma, SpecTerm{wrap(subst(c->head, se->binder, se->body))});
    } else {
      const auto& cons = std::get<ljms::ConsS>(*c->rest);
      if (auto* ab = std::get_if<ljms::Abs>(c->head.get())) {
        // beta: (\x.t)(u::l) -> u((x)tl)
        acc.add(RuleName::Beta,
                SpecTerm{wrap(ljms::cut(
                    cons.head, ljms::sel(ab->binder, ljms::cut(ab->body, cons.tail))))});
      }
      if (auto* hc = std::get_if<ljms::CutS>(c->head.get())) {
        // pi: (tl)(u::l') -> t(l@(u::l'))
        acc.add(RuleName::Pi,
                SpecTerm{wrap(ljms::cut(hc->head, append_spec(hc->rest, c->rest)))});
      }
    }
    acc.child(0, [&] {
      steps_ljms_t(c->head, acc,
                   [&](ljms::TermPtr r) { return wrap(ljms::cut(std::move(r), c->rest)); });
    });
    acc.child(1, [&] {
      steps_ljms_l(c->rest, acc,
                   [&](ljms::CoTermPtr r) { return wrap(ljms::cut(c->head, std::move(r))); });
    });
  } else if (auto* ab = std::get_if<ljms::Abs>(t.get())) {
    acc.child(0, [&] {
      steps_ljms_t(ab->body, acc,
                   [&](ljms::TermPtr r) { return wrap(ljms::abs(ab->binder, std::move(r))); });
    });
  }
}

void steps_ljms_l(const ljms::CoTermPtr& l, StepAcc& acc,
                  const std::function<ljms::TermPtr(ljms::CoTermPtr)>& wrap) {
  if (auto* se = std::get_if<ljms::SelS>(l.get())) {
    // mu: (x)xl -> l, if x not in l
    if (auto* bc = std::get_if<ljms::CutS>(se->body.get())) {
      if (auto* v = std::get_if<ljms::Var>(bc->head.get())) {
        if (v->name == se->binder && !free_vars(bc->rest).count(se->binder)) {
          acc.add(RuleName::Mu, SpecTerm{wrap(bc->rest)});
        }
      }
    }
    acc.child(0, [&] {
      steps_ljms_t(se->body, acc,
                   [&](ljms::TermPtr r) { return wrap(ljms::sel(se->binder, std::move(r))); });
    });
  } else {
    const auto& c = std::get<ljms::ConsS>(*l);
    acc.child(0, [&] {
      steps_ljms_t(c.head, acc,
                   [&](ljms::TermPtr r) { return wrap(ljms::cons(std::move(r), c.tail)); });
    });
    acc.child(1, [&] {
      steps_ljms_l(c.tail, acc,
                   [&](ljms::CoTermPtr r) { return wrap(ljms::cons(c.head, std::move(r))); });
    });
  }
}

std::vector<SpecStep> enumerate(const SpecTerm& t, bool lazy_pi, bool only_pi) {
  StepAcc acc;
  if (auto* p = std::get_if<lam::TermPtr>(&t)) {
    if (!only_pi) steps_lam(*p, acc, [](lam::TermPtr r) { return r; });
  } else if (auto* p2 = std::get_if<lj::TermPtr>(&t)) {
    steps_lj(*p2, acc, lazy_pi, only_pi, [](lj::TermPtr r) { return r; });
  } else if (auto* p3 = std::get_if<ljm::TermPtr>(&t)) {
    steps_ljm_t(*p3, acc, lazy_pi, [](ljm::TermPtr r) { return r; });
    if (only_pi) {
      std::vector<SpecStep> pis;
      for (auto& s : acc.out)
        if (s.rule == RuleName::Pi || s.rule == RuleName::PiHat) pis.push_back(std::move(s));
      return pis;
    }
  } else {
    const auto& p4 = std::get<ljms::TermPtr>(t);
    steps_ljms_t(p4, acc, [](ljms::TermPtr r) { return r; });
  }
  if (only_pi) {
    std::vector<SpecStep> pis;
    for (auto& s : acc.out)
      if (s.rule == RuleName::Pi || s.rule == RuleName::PiHat) pis.push_back(std::move(s));
    return pis;
  }
  return std::move(acc.out);
}

}  // namespace

std::vector<SpecStep> step_spec(const SpecTerm& t) { return enumerate(t, false, false); }
std::vector<SpecStep> step_spec_lazy(const SpecTerm& t) { return enumerate(t, true, false); }
std::vector<SpecStep> step_lazy_pi(const SpecTerm& t) { return enumerate(t, true, true); }

// ---------------------------------------------------------------------------
// pi normal form
// ---------------------------------------------------------------------------

lj::TermPtr pi_nf(const lj::TermPtr& t) {
  if (std::holds_alternative<lj::Var>(*t)) return t;
  if (auto* a = std::get_if<lj::Abs>(t.get())) return lj::abs(a->binder, pi_nf(a->body));
  const auto& g = std::get<lj::GApp>(*t);
  lj::TermPtr fn = pi_nf(g.fn);
  lj::GenArg s{pi_nf(g.arg), g.binder, pi_nf(g.body)};
  if (auto* gf = std::get_if<lj::GApp>(fn.get())) {
    lj::GenArg r{gf->arg, gf->binder, gf->body};
    lj::GenArg rs = append_spec(r, s);
    return lj::gapp(gf->fn, rs.arg, rs.binder, rs.body);
  }
  return lj::gapp(fn, s.arg, s.binder, s.body);
}

namespace {

ljm::CoTermPtr pi_nf_l(const ljm::CoTermPtr& l);

}  // namespace

ljm::TermPtr pi_nf(const ljm::TermPtr& t) {
  if (std::holds_alternative<ljm::Var>(*t)) return t;
  if (auto* a = std::get_if<ljm::Abs>(t.get())) return ljm::abs(a->binder, pi_nf(a->body));
  const auto& g = std::get<ljm::GMApp>(*t);
  ljm::TermPtr fn = pi_nf(g.fn);
  ljm::GenArg s{pi_nf(g.arg), pi_nf_l(g.rest)};
  if (auto* gf = std::get_if<ljm::GMApp>(fn.get())) {
    return ljm::gmapp(gf->fn, gf->arg, append_spec(gf->rest, s));
  }
  return ljm::gmapp(fn, s.arg, s.rest);
}

namespace {

ljm::CoTermPtr pi_nf_l(const ljm::CoTermPtr& l) {
  if (auto* c = std::get_if<ljm::ConsM>(l.get()))
    return ljm::cons(pi_nf(c->head), pi_nf_l(c->tail));
  const auto& s = std::get<ljm::SelM>(*l);
  return ljm::sel(s.binder, pi_nf(s.body));
}

}  // namespace

// ---------------------------------------------------------------------------
// reachability
// ---------------------------------------------------------------------------

SpecReach reach_spec(const SpecTerm& from, const SpecTerm& to, ReachMode mode,
                     std::size_t node_cap, std::size_t depth_cap, StepKind kind,
                     const std::set<RuleName>* rules) {
  SpecReach res;
  std::string target = canonical_key(to);
  std::string start = canonical_key(from);
  if (mode == ReachMode::Star && start == target) {
    res.found = true;
    res.exhausted = true;
    res.nodes_explored = 1;
    return res;
  }
  std::unordered_map<std::string, std::size_t> seen;  // key -> depth
  std::deque<std::pair<SpecTerm, std::size_t>> queue;
  seen.emplace(start, 0);
  queue.emplace_back(from, 0);
  bool capped = false;
  while (!queue.empty()) {
    auto [cur, depth] = queue.front();
    queue.pop_front();
    if (depth >= depth_cap) {
      capped = true;
      continue;
    }
    auto steps = kind == StepKind::Eager ? step_spec(cur) : step_spec_lazy(cur);
    for (auto& s : steps) {
      if (rules && !rules->count(s.rule)) continue;
      std::string key = canonical_key(s.to);
      if (seen.count(key)) continue;
      if (key == target) {
        res.found = true;
        res.path_len = depth + 1;
        res.nodes_explored = seen.size() + 1;
        return res;
      }
      seen.emplace(std::move(key), depth + 1);
      if (seen.size() >= node_cap) {
        res.nodes_explored = seen.size();
        return res;  // exhausted stays false: inconclusive
      }
      queue.emplace_back(std::move(s.to), depth + 1);
    }
  }
  res.nodes_explored = seen.size();
  res.exhausted = !capped;
  return res;
}

std::size_t spec_size(const SpecTerm& t) {
  std::size_t n = 0;
  std::function<void(const SpecTerm&)> go = [&](const SpecTerm& st) {
    if (auto* p = std::get_if<lam::TermPtr>(&st)) {
      std::function<void(const lam::TermPtr&)> g = [&](const lam::TermPtr& u) {
        ++n;
        if (auto* a = std::get_if<lam::Abs>(u.get())) g(a->body);
        else if (auto* ap = std::get_if<lam::App>(u.get())) { g(ap->fn); g(ap->arg); }
      };
      g(*p);
    } else if (auto* p2 = std::get_if<lj::TermPtr>(&st)) {
      std::function<void(const lj::TermPtr&)> g = [&](const lj::TermPtr& u) {
        ++n;
        if (auto* a = std::get_if<lj::Abs>(u.get())) g(a->body);
        else if (auto* ga = std::get_if<lj::GApp>(u.get())) { g(ga->fn); g(ga->arg); g(ga->body); }
      };
      g(*p2);
    } else if (auto* p3 = std::get_if<ljm::TermPtr>(&st)) {
      std::function<void(const ljm::TermPtr&)> gt;
      std::function<void(const ljm::CoTermPtr&)> gl;
      gt = [&](const ljm::TermPtr& u) {
        ++n;
        if (auto* a = std::get_if<ljm::Abs>(u.get())) gt(a->body);
        else if (auto* ga = std::get_if<ljm::GMApp>(u.get())) { gt(ga->fn); gt(ga->arg); gl(ga->rest); }
      };
      gl = [&](const ljm::CoTermPtr& u) {
        ++n;
        if (auto* c = std::get_if<ljm::ConsM>(u.get())) { gt(c->head); gl(c->tail); }
        else gt(std::get<ljm::SelM>(*u).body);
      };
      gt(*p3);
    } else {
      const auto& p4 = std::get<ljms::TermPtr>(st);
      std::function<void(const ljms::TermPtr&)> gt;
      std::function<void(const ljms::CoTermPtr&)> gl;
      gt = [&](const ljms::TermPtr& u) {
        ++n;
        if (auto* a = std::get_if<ljms::Abs>(u.get())) gt(a->body);
        else if (auto* c = std::get_if<ljms::CutS>(u.get())) { gt(c->head); gl(c->rest); }
      };
      gl = [&](const ljms::CoTermPtr& u) {
        ++n;
        if (auto* c = std::get_if<ljms::ConsS>(u.get())) { gt(c->head); gl(c->tail); }
        else gt(std::get<ljms::SelS>(*u).body);
      };
      gt(p4);
    }
  };
  go(t);
  return n;
}

}  // namespace ljmse
