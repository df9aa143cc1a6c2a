#include <cctype>

#include "infer_engine.hpp"
#include "ljmse/parser.hpp"
#include "ljmse/spectrum.hpp"

namespace ljmse {

// ---------------------------------------------------------------------------
// printing
// ---------------------------------------------------------------------------

namespace {

void pr_lam(const lam::TermPtr& t, std::string& out, int prec) {
  if (auto* v = std::get_if<lam::Var>(t.get())) {
    out += v->name;
    return;
  }
  if (auto* a = std::get_if<lam::Abs>(t.get())) {
    if (prec > 0) out += '(';
    out += '\\';
    out += a->binder;
    out += '.';
    pr_lam(a->body, out, 0);
    if (prec > 0) out += ')';
    return;
  }
  const auto& ap = std::get<lam::App>(*t);
  if (prec > 1) out += '(';
  pr_lam(ap.fn, out, 1);
  out += ' ';
  pr_lam(ap.arg, out, 2);
  if (prec > 1) out += ')';
}

// lj/ljm/ljms: 0 = top, 1 = head of a postfix chain / cons argument
void pr_lj(const lj::TermPtr& t, std::string& out, int prec) {
  if (auto* v = std::get_if<lj::Var>(t.get())) {
    out += v->name;
    return;
  }
  if (auto* a = std::get_if<lj::Abs>(t.get())) {
    if (prec > 0) out += '(';
    out += '\\';
    out += a->binder;
    out += '.';
    pr_lj(a->body, out, 0);
    if (prec > 0) out += ')';
    return;
  }
  const auto& g = std::get<lj::GApp>(*t);
  pr_lj(g.fn, out, 1);
  out += '(';
  pr_lj(g.arg, out, 0);
  out += ',';
  out += g.binder;
  out += '.';
  pr_lj(g.body, out, 0);
  out += ')';
}

void pr_ljm_t(const ljm::TermPtr& t, std::string& out, int prec);
void pr_ljm_l(const ljm::CoTermPtr& l, std::string& out);

void pr_ljm_t(const ljm::TermPtr& t, std::string& out, int prec) {
  if (auto* v = std::get_if<ljm::Var>(t.get())) {
    out += v->name;
    return;
  }
  if (auto* a = std::get_if<ljm::Abs>(t.get())) {
    if (prec > 0) out += '(';
    out += '\\';
    out += a->binder;
    out += '.';
    pr_ljm_t(a->body, out, 0);
    if (prec > 0) out += ')';
    return;
  }
  const auto& g = std::get<ljm::GMApp>(*t);
  pr_ljm_t(g.fn, out, 1);
  out += '(';
  pr_ljm_t(g.arg, out, 0);
  out += ", ";
  pr_ljm_l(g.rest, out);
  out += ')';
}

void pr_ljm_l(const ljm::CoTermPtr& l, std::string& out) {
  if (auto* c = std::get_if<ljm::ConsM>(l.get())) {
    pr_ljm_t(c->head, out, 1);
    out += "::";
    pr_ljm_l(c->tail, out);
    return;
  }
  const auto& s = std::get<ljm::SelM>(*l);
  out += '(';
  out += s.binder;
  out += ')';
  pr_ljm_t(s.body, out, 0);
}

void pr_ljms_t(const ljms::TermPtr& t, std::string& out, int prec);
void pr_ljms_l(const ljms::CoTermPtr& l, std::string& out);

void pr_ljms_t(const ljms::TermPtr& t, std::string& out, int prec) {
  if (auto* v = std::get_if<ljms::Var>(t.get())) {
    out += v->name;
    return;
  }
  if (auto* a = std::get_if<ljms::Abs>(t.get())) {
    if (prec > 0) out += '(';
    out += '\\';
    out += a->binder;
    out += '.';
    pr_ljms_t(a->body, out, 0);
    if (prec > 0) out += ')';
    return;
  }
  const auto& c = std::get<ljms::CutS>(*t);
  if (prec > 0) out += '(';
  pr_ljms_t(c.head, out, 1);
  out += ' ';
  pr_ljms_l(c.rest, out);
  if (prec > 0) out += ')';
}

void pr_ljms_l(const ljms::CoTermPtr& l, std::string& out) {
  if (auto* c = std::get_if<ljms::ConsS>(l.get())) {
    pr_ljms_t(c->head, out, 1);
    out += "::";
    pr_ljms_l(c->tail, out);
    return;
  }
  const auto& s = std::get<ljms::SelS>(*l);
  out += '(';
  out += s.binder;
  out += ')';
  pr_ljms_t(s.body, out, 0);
}

}  // namespace

std::string print_spec(const SpecTerm& t) {
  std::string out;
  if (auto* p = std::get_if<lam::TermPtr>(&t)) pr_lam(*p, out, 0);
  else if (auto* p2 = std::get_if<lj::TermPtr>(&t)) pr_lj(*p2, out, 0);
  else if (auto* p3 = std::get_if<ljm::TermPtr>(&t)) pr_ljm_t(*p3, out, 0);
  else pr_ljms_t(std::get<ljms::TermPtr>(t), out, 0);
  return out;
}

// ---------------------------------------------------------------------------
// parsing
// ---------------------------------------------------------------------------

namespace {

struct SpecParser {
  const std::string& src;
  std::size_t pos = 0;

  explicit SpecParser(const std::string& s) : src(s) {}

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(msg + " at offset " + std::to_string(pos), pos);
  }
  void skip() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
  }
  bool peek(char c) {
    skip();
    return pos < src.size() && src[pos] == c;
  }
  bool eat(char c) {
    if (peek(c)) {
      ++pos;
      return true;
    }
    return false;
  }
  bool peek_colcol() {
    skip();
    return src.compare(pos, 2, "::") == 0;
  }
  bool at_end() {
    skip();
    return pos >= src.size();
  }
  bool ident_start() {
    skip();
    return pos < src.size() &&
           (std::isalpha(static_cast<unsigned char>(src[pos])) || src[pos] == '_');
  }
  Name ident() {
    skip();
    if (!ident_start()) fail("expected identifier");
    std::size_t start = pos;
    while (pos < src.size() && (std::isalnum(static_cast<unsigned char>(src[pos])) ||
                                src[pos] == '_' || src[pos] == '\''))
      ++pos;
    return src.substr(start, pos - start);
  }

  // --- lambda ---
  lam::TermPtr lam_term() {
    if (eat('\\')) {
      Name x = ident();
      if (!eat('.')) fail("expected '.'");
      return lam::abs(x, lam_term());
    }
    lam::TermPtr t = lam_atom();
    for (;;) {
      skip();
      if (pos >= src.size() || src[pos] == ')') break;
      if (src[pos] == '\\') {
        t = lam::app(t, lam_term());
        break;
      }
      t = lam::app(t, lam_atom());
    }
    return t;
  }
  lam::TermPtr lam_atom() {
    if (eat('(')) {
      lam::TermPtr t = lam_term();
      if (!eat(')')) fail("expected ')'");
      return t;
    }
    return lam::var(ident());
  }

  // --- lj ---
  lj::TermPtr lj_term() {
    if (eat('\\')) {
      Name x = ident();
      if (!eat('.')) fail("expected '.'");
      return lj::abs(x, lj_term());
    }
    lj::TermPtr t = lj_atom();
    while (peek('(')) {
      ++pos;
      lj::TermPtr u = lj_term();
      if (!eat(',')) fail("expected ',' in generalised argument");
      Name x = ident();
      if (!eat('.')) fail("expected '.' in generalised argument");
      lj::TermPtr v = lj_term();
      if (!eat(')')) fail("expected ')'");
      t = lj::gapp(t, u, x, v);
    }
    return t;
  }
  lj::TermPtr lj_atom() {
    if (eat('(')) {
      lj::TermPtr t = lj_term();
      if (!eat(')')) fail("expected ')'");
      return t;
    }
    return lj::var(ident());
  }

  // --- ljm ---
  ljm::TermPtr ljm_term() {
    if (eat('\\')) {
      Name x = ident();
      if (!eat('.')) fail("expected '.'");
      return ljm::abs(x, ljm_term());
    }
    ljm::TermPtr t = ljm_atom();
    while (peek('(')) {
      ++pos;
      ljm::TermPtr u = ljm_term();
      if (!eat(',')) fail("expected ',' in generalised argument");
      ljm::CoTermPtr l = ljm_coterm();
      if (!eat(')')) fail("expected ')'");
      t = ljm::gmapp(t, u, l);
    }
    return t;
  }
  ljm::TermPtr ljm_atom() {
    if (eat('(')) {
      ljm::TermPtr t = ljm_term();
      if (!eat(')')) fail("expected ')'");
      return t;
    }
    return ljm::var(ident());
  }
  ljm::CoTermPtr ljm_coterm() {
    skip();
    if (peek('(')) {
      std::size_t save = pos;
      ++pos;
      if (ident_start()) {
        Name x = ident();
        if (eat(')') && !peek_colcol()) return ljm::sel(x, ljm_term());
      }
      pos = save;
    }
    ljm::TermPtr u = ljm_head();
    skip();
    if (src.compare(pos, 2, "::") != 0) fail("expected '::'");
    pos += 2;
    return ljm::cons(u, ljm_coterm());
  }
  // a term in ':: ' argument position: stop before '::'
  ljm::TermPtr ljm_head() {
    if (eat('(')) {
      ljm::TermPtr t = ljm_term();
      if (!eat(')')) fail("expected ')'");
      // postfix groups may follow a parenthesized head
      while (peek('(')) {
        ++pos;
        ljm::TermPtr u = ljm_term();
        if (!eat(',')) fail("expected ','");
        ljm::CoTermPtr l = ljm_coterm();
        if (!eat(')')) fail("expected ')'");
        t = ljm::gmapp(t, u, l);
      }
      return t;
    }
    if (peek('\\')) fail("parenthesize lambda arguments before '::'");
    ljm::TermPtr t = ljm::var(ident());
    while (peek('(')) {
      ++pos;
      ljm::TermPtr u = ljm_term();
      if (!eat(',')) fail("expected ','");
      ljm::CoTermPtr l = ljm_coterm();
      if (!eat(')')) fail("expected ')'");
      t = ljm::gmapp(t, u, l);
    }
    return t;
  }

  // --- ljms ---
  ljms::TermPtr ljms_term() {
    if (eat('\\')) {
      Name x = ident();
      if (!eat('.')) fail("expected '.'");
      return ljms::abs(x, ljms_term());
    }
    ljms::TermPtr t = ljms_atom();
    for (;;) {
      skip();
      if (pos >= src.size() || src[pos] == ')' || src[pos] == ',') break;
      if (src.compare(pos, 2, "::") == 0) break;
      t = ljms::cut(t, ljms_coterm());
    }
    return t;
  }
  ljms::TermPtr ljms_atom() {
    if (eat('(')) {
      ljms::TermPtr t = ljms_term();
      if (!eat(')')) fail("expected ')'");
      return t;
    }
    return ljms::var(ident());
  }
  ljms::CoTermPtr ljms_coterm() {
    skip();
    if (peek('(')) {
      std::size_t save = pos;
      ++pos;
      if (ident_start()) {
        Name x = ident();
        if (eat(')') && !peek_colcol()) return ljms::sel(x, ljms_term());
      }
      pos = save;
    }
    ljms::TermPtr u = ljms_cons_head();
    skip();
    if (src.compare(pos, 2, "::") != 0) fail("expected '::'");
    pos += 2;
    return ljms::cons(u, ljms_coterm());
  }
  // term before '::': a single atom (complex heads must be parenthesized)
  ljms::TermPtr ljms_cons_head() {
    if (peek('\\')) fail("parenthesize lambda arguments before '::'");
    return ljms_atom();
  }

  void done() {
    skip();
    if (pos != src.size()) fail("trailing input");
  }
};

}  // namespace

SpecTerm parse_spec(const std::string& src, Calc calc) {
  SpecParser p(src);
  switch (calc) {
    case Calc::Lam: {
      auto t = p.lam_term();
      p.done();
      return t;
    }
    case Calc::LJ: {
      auto t = p.lj_term();
      p.done();
      return t;
    }
    case Calc::LJm: {
      auto t = p.ljm_term();
      p.done();
      return t;
    }
    case Calc::LJms: {
      auto t = p.ljms_term();
      p.done();
      return t;
    }
    default:
      throw ParseError("parse_spec does not handle the full calculus", 0);
  }
}

// ---------------------------------------------------------------------------
// typing (the subsystem type systems over the shared engine)
// ---------------------------------------------------------------------------

namespace {

using infer::Engine;

struct SpecChecker {
  Engine eng;
  std::map<Name, Engine::Ref> env;
  std::optional<TypeError> err;

  void fail(TypeError::Reason r, std::string d) {
    if (!err) err = TypeError{r, {}, std::move(d)};
  }
  void pull() {
    if (auto e = eng.take_error()) {
      if (!err) err = *e;
    } else {
      fail(TypeError::Reason::Clash, "type mismatch");
    }
  }

  bool load_ctx(const Ctx& ctx) {
    for (const auto& [x, a] : ctx.bindings) {
      if (type_uses_forall(a)) {
        fail(TypeError::Reason::Level, "subsystem calculi are propositional");
        return false;
      }
      env.emplace(x, eng.of_type(a));
    }
    return true;
  }

  std::optional<Engine::Ref> lookup(const Name& x) {
    auto it = env.find(x);
    if (it == env.end()) {
      fail(TypeError::Reason::UnboundVar, "unbound variable " + x);
      return std::nullopt;
    }
    return it->second;
  }

  template <class F>
  Engine::Ref with_binding(const Name& x, Engine::Ref r, const F& f) {
    std::optional<Engine::Ref> old;
    auto it = env.find(x);
    if (it != env.end()) old = it->second;
    env[x] = r;
    Engine::Ref out = f();
    if (old) env[x] = *old;
    else env.erase(x);
    return out;
  }

  Engine::Ref expect_arrow(Engine::Ref r) {
    if (eng.is_meta(r)) eng.force_arrow(r);
    if (!eng.is_arrow(r)) {
      fail(TypeError::Reason::Clash, "expected a function type, got " + eng.show(r));
      return eng.bottom();
    }
    return r;
  }

  // lambda
  Engine::Ref synth(const lam::TermPtr& t) {
    if (err) return eng.bottom();
    if (auto* v = std::get_if<lam::Var>(t.get())) {
      auto r = lookup(v->name);
      return r ? *r : eng.bottom();
    }
    if (auto* a = std::get_if<lam::Abs>(t.get())) {
      Engine::Ref dom = eng.meta();
      Engine::Ref cod = with_binding(a->binder, dom, [&] { return synth(a->body); });
      return eng.arrow(dom, cod);
    }
    const auto& ap = std::get<lam::App>(*t);
    Engine::Ref fn = expect_arrow(synth(ap.fn));
    if (err) return eng.bottom();
    Engine::Ref arg = synth(ap.arg);
    if (err) return eng.bottom();
    if (!eng.unify(arg, eng.arrow_dom(fn))) pull();
    return eng.arrow_cod(fn);
  }

  // lj: GApp rule
  Engine::Ref synth(const lj::TermPtr& t) {
    if (err) return eng.bottom();
    if (auto* v = std::get_if<lj::Var>(t.get())) {
      auto r = lookup(v->name);
      return r ? *r : eng.bottom();
    }
    if (auto* a = std::get_if<lj::Abs>(t.get())) {
      Engine::Ref dom = eng.meta();
      Engine::Ref cod = with_binding(a->binder, dom, [&] { return synth(a->body); });
      return eng.arrow(dom, cod);
    }
    const auto& g = std::get<lj::GApp>(*t);
    Engine::Ref fn = expect_arrow(synth(g.fn));
    if (err) return eng.bottom();
    Engine::Ref arg = synth(g.arg);
    if (err) return eng.bottom();
    if (!eng.unify(arg, eng.arrow_dom(fn))) {
      pull();
      return eng.bottom();
    }
    Engine::Ref b = eng.arrow_cod(fn);
    return with_binding(g.binder, b, [&] { return synth(g.body); });
  }

  // ljm
  Engine::Ref synth(const ljm::TermPtr& t) {
    if (err) return eng.bottom();
    if (auto* v = std::get_if<ljm::Var>(t.get())) {
      auto r = lookup(v->name);
      return r ? *r : eng.bottom();
    }
    if (auto* a = std::get_if<ljm::Abs>(t.get())) {
      Engine::Ref dom = eng.meta();
      Engine::Ref cod = with_binding(a->binder, dom, [&] { return synth(a->body); });
      return eng.arrow(dom, cod);
    }
    const auto& g = std::get<ljm::GMApp>(*t);
    Engine::Ref fn = expect_arrow(synth(g.fn));
    if (err) return eng.bottom();
    Engine::Ref arg = synth(g.arg);
    if (err) return eng.bottom();
    if (!eng.unify(arg, eng.arrow_dom(fn))) {
      pull();
      return eng.bottom();
    }
    return coterm(g.rest, eng.arrow_cod(fn));
  }
  Engine::Ref coterm(const ljm::CoTermPtr& l, Engine::Ref in) {
    if (err) return eng.bottom();
    if (auto* c = std::get_if<ljm::ConsM>(l.get())) {
      Engine::Ref fn = expect_arrow(in);
      if (err) return eng.bottom();
      Engine::Ref head = synth(c->head);
      if (err) return eng.bottom();
      if (!eng.unify(head, eng.arrow_dom(fn))) {
        pull();
        return eng.bottom();
      }
      return coterm(c->tail, eng.arrow_cod(fn));
    }
    const auto& s = std::get<ljm::SelM>(*l);
    return with_binding(s.binder, in, [&] { return synth(s.body); });
  }

  // ljms
  Engine::Ref synth(const ljms::TermPtr& t) {
    if (err) return eng.bottom();
    if (auto* v = std::get_if<ljms::Var>(t.get())) {
      auto r = lookup(v->name);
      return r ? *r : eng.bottom();
    }
    if (auto* a = std::get_if<ljms::Abs>(t.get())) {
      Engine::Ref dom = eng.meta();
      Engine::Ref cod = with_binding(a->binder, dom, [&] { return synth(a->body); });
      return eng.arrow(dom, cod);
    }
    const auto& c = std::get<ljms::CutS>(*t);
    Engine::Ref head = synth(c.head);
    if (err) return eng.bottom();
    return coterm(c.rest, head);
  }
  Engine::Ref coterm(const ljms::CoTermPtr& l, Engine::Ref in) {
    if (err) return eng.bottom();
    if (auto* c = std::get_if<ljms::ConsS>(l.get())) {
      Engine::Ref fn = expect_arrow(in);
      if (err) return eng.bottom();
      Engine::Ref head = synth(c->head);
      if (err) return eng.bottom();
      if (!eng.unify(head, eng.arrow_dom(fn))) {
        pull();
        return eng.bottom();
      }
      return coterm(c->tail, eng.arrow_cod(fn));
    }
    const auto& s = std::get<ljms::SelS>(*l);
    return with_binding(s.binder, in, [&] { return synth(s.body); });
  }

  Engine::Ref synth_any(const SpecTerm& t) {
    if (auto* p = std::get_if<lam::TermPtr>(&t)) return synth(*p);
    if (auto* p2 = std::get_if<lj::TermPtr>(&t)) return synth(*p2);
    if (auto* p3 = std::get_if<ljm::TermPtr>(&t)) return synth(*p3);
    return synth(std::get<ljms::TermPtr>(t));
  }
};

}  // namespace

TypeResult infer_spec(const Ctx& ctx, const SpecTerm& t) {
  SpecChecker ck;
  if (!ck.load_ctx(ctx)) return *ck.err;
  Engine::Ref r = ck.synth_any(t);
  if (ck.err) return *ck.err;
  NameSupply supply(ctx.free_ty());
  return ck.eng.to_type(r, supply);
}

CheckResult check_spec(const Ctx& ctx, const SpecTerm& t, const TypePtr& type) {
  SpecChecker ck;
  if (!ck.load_ctx(ctx)) return ck.err;
  Engine::Ref r = ck.synth_any(t);
  if (ck.err) return ck.err;
  if (!ck.eng.unify(r, ck.eng.of_type(type))) ck.pull();
  return ck.err;
}

}  // namespace ljmse
