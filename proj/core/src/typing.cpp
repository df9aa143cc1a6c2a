#include "ljmse/typing.hpp"

#include <functional>

#include "infer_engine.hpp"
#include "ljmse/printer.hpp"
#include "ljmse/reduction.hpp"

namespace ljmse {

using namespace ast;
using infer::Engine;

const char* TypeError::reason_name(Reason r) {
  switch (r) {
    case Reason::UnboundVar: return "unbound-var";
    case Reason::Clash: return "clash";
    case Reason::Occurs: return "occurs";
    case Reason::Level: return "level";
    case Reason::NotSynthesizable: return "not-synthesizable";
  }
  return "?";
}

std::string TypeError::describe() const {
  std::string out = reason_name(reason);
  if (!detail.empty()) {
    out += ": ";
    out += detail;
  }
  return out;
}

namespace {

// Bidirectional checker over the unification engine. Synthesis falls back to
// metavariables for unannotated binders, which gives principal types at the
// propositional level; <B>:: and t<A> demand a resolved forall and report
// not-synthesizable otherwise.
struct Checker {
  Engine eng;
  Level level;
  std::map<Name, Engine::Ref> env;    // term variables
  std::map<Name, Engine::Ref> tyenv;  // type variables bound by /\ in scope
  std::optional<TypeError> err;
  std::vector<int> path;

  explicit Checker(Level lvl) : level(lvl) {}

  bool load_ctx(const Ctx& ctx) {
    for (const auto& [x, a] : ctx.bindings) {
      if (level == Level::Prop && type_uses_forall(a)) {
        fail(TypeError::Reason::Level, "context type of " + x + " uses forall at propositional level");
        return false;
      }
      env.emplace(x, eng.of_type(a));
    }
    return true;
  }

  void fail(TypeError::Reason r, std::string detail) {
    if (!err) err = TypeError{r, path, std::move(detail)};
  }
  void pull_engine_error() {
    if (auto e = eng.take_error()) {
      if (!err) {
        err = *e;
        err->location = path;
      }
    } else {
      fail(TypeError::Reason::Clash, "type mismatch");
    }
  }
  bool failed() const { return err.has_value(); }

  struct PathGuard {
    Checker& c;
    explicit PathGuard(Checker& c_, int i) : c(c_) { c.path.push_back(i); }
    ~PathGuard() { c.path.pop_back(); }
  };

  // --- terms ---------------------------------------------------------------

  Engine::Ref synth_term(const TermPtr& t) {
    if (failed()) return eng.bottom();
    if (auto* v = std::get_if<Var>(t.get())) {
      auto it = env.find(v->name);
      if (it == env.end()) {
        fail(TypeError::Reason::UnboundVar, "unbound variable " + v->name);
        return eng.bottom();
      }
      return it->second;
    }
    if (auto* lam = std::get_if<Lam>(t.get())) {
      Engine::Ref dom = eng.meta();
      auto saved = save_env(lam->binder, dom);
      PathGuard g(*this, 0);
      Engine::Ref cod = synth_term(lam->body);
      restore_env(lam->binder, saved);
      return eng.arrow(dom, cod);
    }
    if (auto* co = std::get_if<Coerce>(t.get())) {
      PathGuard g(*this, 0);
      return synth_command(co->cmd);
    }
    if (auto* tl = std::get_if<TyLam>(t.get())) {
      if (level != Level::Second) {
        fail(TypeError::Reason::Level, "type abstraction at propositional level");
        return eng.bottom();
      }
      eng.push_rank();
      Engine::Ref r = eng.rigid(tl->binder);
      auto saved = save_tyenv(tl->binder, r);
      Engine::Ref body;
      {
        PathGuard g(*this, 0);
        body = synth_term(tl->body);
      }
      restore_tyenv(tl->binder, saved);
      eng.pop_rank();
      return eng.close_forall(tl->binder, r, body);
    }
    const auto& an = std::get<Ann>(*t);
    if (level != Level::Second) {
      fail(TypeError::Reason::Level, "annotation at propositional level");
      return eng.bottom();
    }
    Engine::Ref want = eng.of_type(an.type, tyenv);
    {
      PathGuard g(*this, 0);
      check_term_ref(an.term, want);
    }
    return want;
  }

  void check_term_ref(const TermPtr& t, Engine::Ref want) {
    if (failed()) return;
    if (auto* lam = std::get_if<Lam>(t.get())) {
      if (eng.is_meta(want)) eng.force_arrow(want);
      if (eng.is_arrow(want)) {
        auto saved = save_env(lam->binder, eng.arrow_dom(want));
        PathGuard g(*this, 0);
        check_term_ref(lam->body, eng.arrow_cod(want));
        restore_env(lam->binder, saved);
        return;
      }
      fail(TypeError::Reason::Clash,
           "lambda checked against non-function type " + eng.show(want));
      return;
    }
    if (auto* tl = std::get_if<TyLam>(t.get())) {
      if (level != Level::Second) {
        fail(TypeError::Reason::Level, "type abstraction at propositional level");
        return;
      }
      if (eng.is_forall(want)) {
        eng.push_rank();
        Engine::Ref r = eng.rigid(tl->binder);
        Engine::Ref opened = eng.open_forall(want, r);
        auto saved = save_tyenv(tl->binder, r);
        {
          PathGuard g(*this, 0);
          check_term_ref(tl->body, opened);
        }
        restore_tyenv(tl->binder, saved);
        eng.pop_rank();
        return;
      }
      // fall through to synthesis for meta/clash handling
    }
    Engine::Ref got = synth_term(t);
    if (failed()) return;
    if (!eng.unify(got, want)) pull_engine_error();
  }

  // --- co-terms and commands ----------------------------------------------

  Engine::Ref check_coterm_ref(const CoTermPtr& l, Engine::Ref in) {
    if (failed()) return eng.bottom();
    if (std::holds_alternative<Nil>(*l)) return in;
    if (auto* c = std::get_if<Cons>(l.get())) {
      if (eng.is_meta(in)) eng.force_arrow(in);
      if (!eng.is_arrow(in)) {
        fail(TypeError::Reason::Clash,
             "argument passed against non-function type " + eng.show(in));
        return eng.bottom();
      }
      Engine::Ref dom = eng.arrow_dom(in), cod = eng.arrow_cod(in);
      {
        PathGuard g(*this, 0);
        check_term_ref(c->head, dom);
      }
      PathGuard g(*this, 1);
      return check_coterm_ref(c->tail, cod);
    }
    if (auto* tc = std::get_if<TyCons>(l.get())) {
      if (level != Level::Second) {
        fail(TypeError::Reason::Level, "type argument at propositional level");
        return eng.bottom();
      }
      if (eng.is_meta(in)) {
        fail(TypeError::Reason::NotSynthesizable,
             "type argument against unresolved head type (annotate the cut head)");
        return eng.bottom();
      }
      if (!eng.is_forall(in)) {
        fail(TypeError::Reason::Clash,
             "type argument against non-forall type " + eng.show(in));
        return eng.bottom();
      }
      Engine::Ref inst = eng.open_forall(in, eng.of_type(tc->ty, tyenv));
      PathGuard g(*this, 1);
      return check_coterm_ref(tc->tail, inst);
    }
    const auto& s = std::get<Sel>(*l);
    auto saved = save_env(s.binder, in);
    PathGuard g(*this, 0);
    Engine::Ref out = synth_command(s.cmd);
    restore_env(s.binder, saved);
    return out;
  }

  Engine::Ref synth_command(const CommandPtr& c) {
    if (failed()) return eng.bottom();
    Engine::Ref head;
    {
      PathGuard g(*this, 0);
      head = synth_term(c->t);
    }
    PathGuard g(*this, 1);
    return check_coterm_ref(c->l, head);
  }

  // --- env save/restore ----------------------------------------------------

  std::optional<Engine::Ref> save_env(const Name& x, Engine::Ref r) {
    std::optional<Engine::Ref> old;
    auto it = env.find(x);
    if (it != env.end()) old = it->second;
    env[x] = r;
    return old;
  }
  void restore_env(const Name& x, const std::optional<Engine::Ref>& old) {
    if (old) env[x] = *old;
    else env.erase(x);
  }
  std::optional<Engine::Ref> save_tyenv(const Name& x, Engine::Ref r) {
    std::optional<Engine::Ref> old;
    auto it = tyenv.find(x);
    if (it != tyenv.end()) old = it->second;
    tyenv[x] = r;
    return old;
  }
  void restore_tyenv(const Name& x, const std::optional<Engine::Ref>& old) {
    if (old) tyenv[x] = *old;
    else tyenv.erase(x);
  }

  // --- target terms ---------------------------------------------------------

  Engine::Ref synth_lam(const LamTermPtr& t) {
    if (failed()) return eng.bottom();
    if (auto* v = std::get_if<lt::Var>(t.get())) {
      auto it = env.find(v->name);
      if (it == env.end()) {
        fail(TypeError::Reason::UnboundVar, "unbound variable " + v->name);
        return eng.bottom();
      }
      return it->second;
    }
    if (auto* l = std::get_if<lt::Lam>(t.get())) {
      Engine::Ref dom = eng.meta();
      auto saved = save_env(l->binder, dom);
      PathGuard g(*this, 0);
      Engine::Ref cod = synth_lam(l->body);
      restore_env(l->binder, saved);
      return eng.arrow(dom, cod);
    }
    if (auto* a = std::get_if<lt::App>(t.get())) {
      Engine::Ref fn;
      {
        PathGuard g(*this, 0);
        fn = synth_lam(a->fn);
      }
      if (failed()) return eng.bottom();
      if (eng.is_meta(fn)) eng.force_arrow(fn);
      if (eng.is_arrow(fn)) {
        PathGuard g(*this, 1);
        check_lam_ref(a->arg, eng.arrow_dom(fn));
        return eng.arrow_cod(fn);
      }
      fail(TypeError::Reason::Clash, "application of non-function type " + eng.show(fn));
      return eng.bottom();
    }
    if (auto* tl = std::get_if<lt::TyLam>(t.get())) {
      if (level != Level::Second) {
        fail(TypeError::Reason::Level, "type abstraction at propositional level");
        return eng.bottom();
      }
      eng.push_rank();
      Engine::Ref r = eng.rigid(tl->binder);
      auto saved = save_tyenv(tl->binder, r);
      Engine::Ref body;
      {
        PathGuard g(*this, 0);
        body = synth_lam(tl->body);
      }
      restore_tyenv(tl->binder, saved);
      eng.pop_rank();
      return eng.close_forall(tl->binder, r, body);
    }
    const auto& ta = std::get<lt::TyApp>(*t);
    if (level != Level::Second) {
      fail(TypeError::Reason::Level, "type application at propositional level");
      return eng.bottom();
    }
    Engine::Ref fn;
    {
      PathGuard g(*this, 0);
      fn = synth_lam(ta.fn);
    }
    if (failed()) return eng.bottom();
    if (eng.is_meta(fn)) {
      fail(TypeError::Reason::NotSynthesizable, "type application against unresolved type");
      return eng.bottom();
    }
    if (!eng.is_forall(fn)) {
      fail(TypeError::Reason::Clash, "type application of non-forall type " + eng.show(fn));
      return eng.bottom();
    }
    return eng.open_forall(fn, eng.of_type(ta.arg, tyenv));
  }

  void check_lam_ref(const LamTermPtr& t, Engine::Ref want) {
    if (failed()) return;
    if (auto* l = std::get_if<lt::Lam>(t.get())) {
      if (eng.is_meta(want)) eng.force_arrow(want);
      if (eng.is_arrow(want)) {
        auto saved = save_env(l->binder, eng.arrow_dom(want));
        PathGuard g(*this, 0);
        check_lam_ref(l->body, eng.arrow_cod(want));
        restore_env(l->binder, saved);
        return;
      }
      fail(TypeError::Reason::Clash,
           "lambda checked against non-function type " + eng.show(want));
      return;
    }
    if (auto* tl = std::get_if<lt::TyLam>(t.get())) {
      if (level == Level::Second && eng.is_forall(want)) {
        eng.push_rank();
        Engine::Ref r = eng.rigid(tl->binder);
        Engine::Ref opened = eng.open_forall(want, r);
        auto saved = save_tyenv(tl->binder, r);
        {
          PathGuard g(*this, 0);
          check_lam_ref(tl->body, opened);
        }
        restore_tyenv(tl->binder, saved);
        eng.pop_rank();
        return;
      }
    }
    if (auto* a = std::get_if<lt::App>(t.get())) {
      // applications propagate the expected type into the result position
      Engine::Ref fn;
      {
        PathGuard g(*this, 0);
        fn = synth_lam(a->fn);
      }
      if (failed()) return;
      if (eng.is_meta(fn)) eng.force_arrow(fn);
      if (eng.is_arrow(fn)) {
        Engine::Ref dom = eng.arrow_dom(fn), cod = eng.arrow_cod(fn);
        if (!eng.unify(cod, want)) {
          pull_engine_error();
          return;
        }
        PathGuard g(*this, 1);
        check_lam_ref(a->arg, dom);
        return;
      }
      fail(TypeError::Reason::Clash, "application of non-function type " + eng.show(fn));
      return;
    }
    Engine::Ref got = synth_lam(t);
    if (failed()) return;
    if (!eng.unify(got, want)) pull_engine_error();
  }
};

}  // namespace

TypeResult infer_term(const Ctx& ctx, const TermPtr& t) {
  if (uses_level2(Expr{t}))
    return TypeError{TypeError::Reason::Level, {},
                     "inference is propositional; use check_level2 for second-order terms"};
  Checker ck(Level::Prop);
  if (!ck.load_ctx(ctx)) return *ck.err;
  Engine::Ref r = ck.synth_term(t);
  if (ck.err) return *ck.err;
  NameSupply supply(ctx.free_ty());
  return ck.eng.to_type(r, supply);
}

TypeResult check_coterm(const Ctx& ctx, const CoTermPtr& l, const TypePtr& in_type, Level level) {
  Checker ck(level);
  if (!ck.load_ctx(ctx)) return *ck.err;
  if (level == Level::Prop && uses_level2(Expr{l}))
    return TypeError{TypeError::Reason::Level, {}, "second-order co-term at propositional level"};
  Engine::Ref in = ck.eng.of_type(in_type);
  Engine::Ref out = ck.check_coterm_ref(l, in);
  if (ck.err) return *ck.err;
  NameSupply supply(ctx.free_ty());
  return ck.eng.to_type(out, supply);
}

CheckResult check_command(const Ctx& ctx, const CommandPtr& c, const TypePtr& out_type,
                          Level level) {
  Checker ck(level);
  if (!ck.load_ctx(ctx)) return ck.err;
  if (level == Level::Prop && uses_level2(Expr{c}))
    return TypeError{TypeError::Reason::Level, {}, "second-order command at propositional level"};
  Engine::Ref out = ck.synth_command(c);
  if (ck.err) return ck.err;
  Engine::Ref want = ck.eng.of_type(out_type);
  if (!ck.eng.unify(out, want)) ck.pull_engine_error();
  return ck.err;
}

CheckResult check_term(const Ctx& ctx, const TermPtr& t, const TypePtr& type, Level level) {
  Checker ck(level);
  if (!ck.load_ctx(ctx)) return ck.err;
  if (level == Level::Prop && uses_level2(Expr{t}))
    return TypeError{TypeError::Reason::Level, {}, "second-order term at propositional level"};
  Engine::Ref want = ck.eng.of_type(type);
  ck.check_term_ref(t, want);
  return ck.err;
}

CheckResult check_level2(const Ctx& ctx, const TermPtr& t, const TypePtr& type) {
  return check_term(ctx, t, type, Level::Second);
}

std::variant<Judgement, TypeError> principal_judgement(const Ctx& ctx, const Expr& e,
                                                       Level level) {
  Checker ck(level);
  if (!ck.load_ctx(ctx)) return *ck.err;
  Judgement j;
  j.kind = class_of(e);
  j.ctx = ctx;
  j.subject = e;
  NameSupply supply(ctx.free_ty());
  if (auto* t = std::get_if<TermPtr>(&e)) {
    Engine::Ref r = ck.synth_term(*t);
    if (ck.err) return *ck.err;
    j.outType = ck.eng.to_type(r, supply);
    return j;
  }
  if (auto* l = std::get_if<CoTermPtr>(&e)) {
    Engine::Ref in = ck.eng.meta();
    Engine::Ref out = ck.check_coterm_ref(*l, in);
    if (ck.err) return *ck.err;
    j.inType = ck.eng.to_type(in, supply);
    j.outType = ck.eng.to_type(out, supply);
    return j;
  }
  Engine::Ref out = ck.synth_command(std::get<CommandPtr>(e));
  if (ck.err) return *ck.err;
  j.outType = ck.eng.to_type(out, supply);
  return j;
}

bool type_instance_of(const TypePtr& general, const TypePtr& instance) {
  // match general against instance, binding general's free variables
  std::map<Name, TypePtr> binding;
  std::function<bool(const TypePtr&, const TypePtr&)> go = [&](const TypePtr& g,
                                                               const TypePtr& i) -> bool {
    if (auto* v = std::get_if<ty::Var>(g.get())) {
      auto it = binding.find(v->name);
      if (it == binding.end()) {
        binding.emplace(v->name, i);
        return true;
      }
      return type_alpha_eq(it->second, i);
    }
    if (std::holds_alternative<ty::Bottom>(*g)) return std::holds_alternative<ty::Bottom>(*i);
    if (auto* ga = std::get_if<ty::Arrow>(g.get())) {
      auto* ia = std::get_if<ty::Arrow>(i.get());
      return ia && go(ga->dom, ia->dom) && go(ga->cod, ia->cod);
    }
    auto* gf = std::get_if<ty::Forall>(g.get());
    auto* iff = std::get_if<ty::Forall>(i.get());
    if (!gf || !iff) return false;
    return type_alpha_eq(g, i);  // no matching under binders
  };
  return go(general, instance);
}

namespace {

// equality of principal types modulo renaming of inference-fresh variables;
// fixed names (context type variables) must map to themselves
bool match_fresh(const TypePtr& a, const TypePtr& b, const std::set<Name>& fixed,
                 std::map<Name, Name>& fwd, std::map<Name, Name>& bwd) {
  if (auto* va = std::get_if<ty::Var>(a.get())) {
    auto* vb = std::get_if<ty::Var>(b.get());
    if (!vb) return false;
    bool fa = fixed.count(va->name), fb = fixed.count(vb->name);
    if (fa || fb) return va->name == vb->name;
    auto itf = fwd.find(va->name);
    auto itb = bwd.find(vb->name);
    if (itf == fwd.end() && itb == bwd.end()) {
      fwd[va->name] = vb->name;
      bwd[vb->name] = va->name;
      return true;
    }
    return itf != fwd.end() && itb != bwd.end() && itf->second == vb->name &&
           itb->second == va->name;
  }
  if (std::holds_alternative<ty::Bottom>(*a)) return std::holds_alternative<ty::Bottom>(*b);
  if (auto* aa = std::get_if<ty::Arrow>(a.get())) {
    auto* ab = std::get_if<ty::Arrow>(b.get());
    return ab && match_fresh(aa->dom, ab->dom, fixed, fwd, bwd) &&
           match_fresh(aa->cod, ab->cod, fixed, fwd, bwd);
  }
  // foralls: compare alpha-exactly (no flexible matching under binders)
  return type_alpha_eq(a, b);
}

bool judgement_types_equal(const Judgement& a, const Judgement& b, const std::set<Name>& fixed) {
  TypePtr ta = a.inType ? ty_arrow(a.inType, a.outType) : a.outType;
  TypePtr tb = b.inType ? ty_arrow(b.inType, b.outType) : b.outType;
  if (static_cast<bool>(a.inType) != static_cast<bool>(b.inType)) return false;
  std::map<Name, Name> fwd, bwd;
  return match_fresh(ta, tb, fixed, fwd, bwd);
}

}  // namespace

bool subject_reduction_check(const Ctx& ctx, const Expr& e, const Step& s, Level level) {
  auto before = principal_judgement(ctx, e, level);
  if (std::holds_alternative<TypeError>(before)) return false;
  auto after = principal_judgement(ctx, s.to, level);
  if (std::holds_alternative<TypeError>(after)) return false;
  const auto& ja = std::get<Judgement>(before);
  const auto& jb = std::get<Judgement>(after);
  if (ja.kind != jb.kind) return false;
  return judgement_types_equal(ja, jb, ctx.free_ty());
}

TypeResult infer_lam(const Ctx& ctx, const LamTermPtr& t) {
  Level lvl = lam_uses_level2(t) ? Level::Second : Level::Prop;
  Checker ck(lvl);
  if (!ck.load_ctx(ctx)) return *ck.err;
  Engine::Ref r = ck.synth_lam(t);
  if (ck.err) return *ck.err;
  NameSupply supply(ctx.free_ty());
  return ck.eng.to_type(r, supply);
}

CheckResult typecheck_lam(const Ctx& ctx, const LamTermPtr& t, const TypePtr& type) {
  Level lvl = (lam_uses_level2(t) || type_uses_forall(type)) ? Level::Second : Level::Prop;
  for (const auto& [_, a] : ctx.bindings) {
    if (type_uses_forall(a)) {
      lvl = Level::Second;
      break;
    }
  }
  Checker ck(lvl);
  if (!ck.load_ctx(ctx)) return ck.err;
  Engine::Ref want = ck.eng.of_type(type);
  ck.check_lam_ref(t, want);
  return ck.err;
}

}  // namespace ljmse
