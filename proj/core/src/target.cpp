#include "ljmse/target.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <functional>
#include <stdexcept>
#include <unordered_map>

#include "ljmse/parser.hpp"
#include "ljmse/typing.hpp"

namespace ljmse {

using namespace lt;

LamTermPtr lam_var(Name name) { return std::make_shared<LamTerm>(Var{std::move(name)}); }
LamTermPtr lam_abs(Name binder, LamTermPtr body) {
  return std::make_shared<LamTerm>(Lam{std::move(binder), std::move(body)});
}
LamTermPtr lam_app(LamTermPtr fn, LamTermPtr arg) {
  return std::make_shared<LamTerm>(App{std::move(fn), std::move(arg)});
}
LamTermPtr lam_tyabs(Name binder, LamTermPtr body) {
  return std::make_shared<LamTerm>(TyLam{std::move(binder), std::move(body)});
}
LamTermPtr lam_tyapp(LamTermPtr fn, TypePtr arg) {
  return std::make_shared<LamTerm>(TyApp{std::move(fn), std::move(arg)});
}
LamTermPtr lam_apps(LamTermPtr fn, std::initializer_list<LamTermPtr> args) {
  for (const auto& a : args) fn = lam_app(fn, a);
  return fn;
}

namespace {

void fv(const LamTermPtr& t, std::set<Name>& bound, std::set<Name>& out) {
  if (auto* v = std::get_if<Var>(t.get())) {
    if (!bound.count(v->name)) out.insert(v->name);
  } else if (auto* l = std::get_if<Lam>(t.get())) {
    bool fresh = bound.insert(l->binder).second;
    fv(l->body, bound, out);
    if (fresh) bound.erase(l->binder);
  } else if (auto* a = std::get_if<App>(t.get())) {
    fv(a->fn, bound, out);
    fv(a->arg, bound, out);
  } else if (auto* tl = std::get_if<TyLam>(t.get())) {
    fv(tl->body, bound, out);
  } else {
    fv(std::get<TyApp>(*t).fn, bound, out);
  }
}

void avs(const LamTermPtr& t, std::set<Name>& out) {
  if (auto* v = std::get_if<Var>(t.get())) {
    out.insert(v->name);
  } else if (auto* l = std::get_if<Lam>(t.get())) {
    out.insert(l->binder);
    avs(l->body, out);
  } else if (auto* a = std::get_if<App>(t.get())) {
    avs(a->fn, out);
    avs(a->arg, out);
  } else if (auto* tl = std::get_if<TyLam>(t.get())) {
    avs(tl->body, out);
  } else {
    avs(std::get<TyApp>(*t).fn, out);
  }
}

}  // namespace

std::set<Name> lam_free_vars(const LamTermPtr& t) {
  std::set<Name> bound, out;
  fv(t, bound, out);
  return out;
}

std::set<Name> lam_all_vars(const LamTermPtr& t) {
  std::set<Name> out;
  avs(t, out);
  return out;
}

namespace {

struct LamSubst {
  const LamTermPtr& t;
  const Name& x;
  std::set<Name> fv_t;
  NameSupply supply;

  LamSubst(const LamTermPtr& t_, const Name& x_, const LamTermPtr& body) : t(t_), x(x_) {
    fv_t = lam_free_vars(t_);
    std::set<Name> used = lam_all_vars(t_);
    auto bn = lam_all_vars(body);
    used.insert(bn.begin(), bn.end());
    used.insert(x_);
    supply = NameSupply(std::move(used));
  }

  LamTermPtr go(const LamTermPtr& u) {
    if (auto* v = std::get_if<Var>(u.get())) return v->name == x ? t : u;
    if (auto* l = std::get_if<Lam>(u.get())) {
      if (l->binder == x) return u;
      if (fv_t.count(l->binder)) {
        Name nb = supply.fresh(l->binder);
        LamTermPtr renamed = lam_subst(lam_var(nb), l->binder, l->body);
        return lam_abs(nb, go(renamed));
      }
      return lam_abs(l->binder, go(l->body));
    }
    if (auto* a = std::get_if<App>(u.get())) return lam_app(go(a->fn), go(a->arg));
    if (auto* tl = std::get_if<TyLam>(u.get())) return lam_tyabs(tl->binder, go(tl->body));
    const auto& ta = std::get<TyApp>(*u);
    return lam_tyapp(go(ta.fn), ta.arg);
  }
};

}  // namespace

LamTermPtr lam_subst(const LamTermPtr& t, const Name& x, const LamTermPtr& body) {
  LamSubst s(t, x, body);
  return s.go(body);
}

LamTermPtr lam_ty_subst(const TypePtr& b, const Name& x, const LamTermPtr& body) {
  if (std::holds_alternative<Var>(*body)) return body;
  if (auto* l = std::get_if<Lam>(body.get()))
    return lam_abs(l->binder, lam_ty_subst(b, x, l->body));
  if (auto* a = std::get_if<App>(body.get()))
    return lam_app(lam_ty_subst(b, x, a->fn), lam_ty_subst(b, x, a->arg));
  if (auto* tl = std::get_if<TyLam>(body.get())) {
    if (tl->binder == x) return body;
    if (free_ty_vars(b).count(tl->binder)) {
      // rename the bound type variable away from b's free variables
      NameSupply supply(free_ty_vars(b));
      supply.reserve(x);
      std::set<Name> inner;
      std::function<void(const LamTermPtr&)> tys = [&](const LamTermPtr& u) {
        if (auto* l2 = std::get_if<Lam>(u.get())) tys(l2->body);
        else if (auto* a2 = std::get_if<App>(u.get())) { tys(a2->fn); tys(a2->arg); }
        else if (auto* t2 = std::get_if<TyLam>(u.get())) { inner.insert(t2->binder); tys(t2->body); }
        else if (auto* ta2 = std::get_if<TyApp>(u.get())) {
          auto f = free_ty_vars(ta2->arg);
          inner.insert(f.begin(), f.end());
          tys(ta2->fn);
        }
      };
      tys(tl->body);
      supply.reserve(inner);
      Name nb = supply.fresh(tl->binder);
      LamTermPtr renamed = lam_ty_subst(ty_var(nb), tl->binder, tl->body);
      return lam_tyabs(nb, lam_ty_subst(b, x, renamed));
    }
    return lam_tyabs(tl->binder, lam_ty_subst(b, x, tl->body));
  }
  const auto& ta = std::get<TyApp>(*body);
  return lam_tyapp(lam_ty_subst(b, x, ta.fn), ty_subst_type(b, x, ta.arg));
}

namespace {

struct LamCanon {
  std::string out;
  std::vector<Name> env;
  std::vector<Name> tyenv;

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

  void go(const LamTermPtr& t) {
    if (auto* v = std::get_if<Var>(t.get())) {
      for (std::size_t i = env.size(); i-- > 0;) {
        if (env[i] == v->name) {
          out += '#';
          out += std::to_string(env.size() - 1 - i);
          return;
        }
      }
      out += '!';
      out += v->name;
      out += ';';
    } else if (auto* l = std::get_if<Lam>(t.get())) {
      out += 'L';
      env.push_back(l->binder);
      go(l->body);
      env.pop_back();
    } else if (auto* a = std::get_if<App>(t.get())) {
      out += '(';
      go(a->fn);
      out += ' ';
      go(a->arg);
      out += ')';
    } else if (auto* tl = std::get_if<TyLam>(t.get())) {
      out += 'T';
      tyenv.push_back(tl->binder);
      go(tl->body);
      tyenv.pop_back();
    } else {
      const auto& ta = std::get<TyApp>(*t);
      out += '[';
      go(ta.fn);
      out += ' ';
      type(ta.arg);
      out += ']';
    }
  }
};

}  // namespace

std::string lam_canonical_key(const LamTermPtr& t) {
  LamCanon c;
  c.go(t);
  return std::move(c.out);
}

bool lam_alpha_eq(const LamTermPtr& a, const LamTermPtr& b) {
  return a.get() == b.get() || lam_canonical_key(a) == lam_canonical_key(b);
}

std::size_t lam_size(const LamTermPtr& t) {
  if (std::holds_alternative<Var>(*t)) return 1;
  if (auto* l = std::get_if<Lam>(t.get())) return 1 + lam_size(l->body);
  if (auto* a = std::get_if<App>(t.get())) return 1 + lam_size(a->fn) + lam_size(a->arg);
  if (auto* tl = std::get_if<TyLam>(t.get())) return 1 + lam_size(tl->body);
  return 1 + lam_size(std::get<TyApp>(*t).fn);
}

bool lam_uses_level2(const LamTermPtr& t) {
  if (std::holds_alternative<Var>(*t)) return false;
  if (auto* l = std::get_if<Lam>(t.get())) return lam_uses_level2(l->body);
  if (auto* a = std::get_if<App>(t.get()))
    return lam_uses_level2(a->fn) || lam_uses_level2(a->arg);
  return true;
}

namespace {

void collect_steps(const LamTermPtr& t, std::vector<LamTermPtr>& out,
                   const std::function<LamTermPtr(LamTermPtr)>& wrap) {
  if (auto* a = std::get_if<App>(t.get())) {
    if (auto* l = std::get_if<Lam>(a->fn.get())) {
      out.push_back(wrap(lam_subst(a->arg, l->binder, l->body)));
    }
    collect_steps(a->fn, out, [&](LamTermPtr r) { return wrap(lam_app(std::move(r), a->arg)); });
    collect_steps(a->arg, out, [&](LamTermPtr r) { return wrap(lam_app(a->fn, std::move(r))); });
  } else if (auto* l = std::get_if<Lam>(t.get())) {
    collect_steps(l->body, out, [&](LamTermPtr r) { return wrap(lam_abs(l->binder, std::move(r))); });
  } else if (auto* tl = std::get_if<TyLam>(t.get())) {
    collect_steps(tl->body, out, [&](LamTermPtr r) { return wrap(lam_tyabs(tl->binder, std::move(r))); });
  } else if (auto* ta = std::get_if<TyApp>(t.get())) {
    if (auto* itl = std::get_if<TyLam>(ta->fn.get())) {
      out.push_back(wrap(lam_ty_subst(ta->arg, itl->binder, itl->body)));
    }
    collect_steps(ta->fn, out, [&](LamTermPtr r) { return wrap(lam_tyapp(std::move(r), ta->arg)); });
  }
}

}  // namespace

std::vector<LamTermPtr> beta_steps(const LamTermPtr& t) {
  std::vector<LamTermPtr> out;
  collect_steps(t, out, [](LamTermPtr r) { return r; });
  return out;
}

std::optional<LamTermPtr> beta_normalize(const LamTermPtr& t, std::size_t max_steps) {
  LamTermPtr cur = t;
  for (std::size_t i = 0; i <= max_steps; ++i) {
    auto steps = beta_steps(cur);
    if (steps.empty()) return cur;
    if (i == max_steps) break;
    cur = steps.front();
  }
  return std::nullopt;
}

namespace {

void pr(const LamTermPtr& t, std::string& out, int prec) {
  // prec: 0 top, 1 application fn position, 2 argument position
  if (auto* v = std::get_if<Var>(t.get())) {
    out += v->name;
    return;
  }
  if (auto* l = std::get_if<Lam>(t.get())) {
    if (prec > 0) out += '(';
    out += '\\';
    out += l->binder;
    out += '.';
    pr(l->body, out, 0);
    if (prec > 0) out += ')';
    return;
  }
  if (auto* tl = std::get_if<TyLam>(t.get())) {
    if (prec > 0) out += '(';
    out += "/\\";
    out += tl->binder;
    out += '.';
    pr(tl->body, out, 0);
    if (prec > 0) out += ')';
    return;
  }
  if (auto* a = std::get_if<App>(t.get())) {
    if (prec > 1) out += '(';
    pr(a->fn, out, 1);
    out += ' ';
    pr(a->arg, out, 2);
    if (prec > 1) out += ')';
    return;
  }
  const auto& ta = std::get<TyApp>(*t);
  if (prec > 1) out += '(';
  pr(ta.fn, out, 1);
  out += " <";
  out += print_type(ta.arg);
  out += '>';
  if (prec > 1) out += ')';
}

}  // namespace

std::string print_lam(const LamTermPtr& t) {
  std::string out;
  pr(t, out, 0);
  return out;
}

namespace {

struct LamParser {
  const std::string& src;
  std::size_t pos = 0;
  Level level;

  LamParser(const std::string& s, Level lvl) : src(s), level(lvl) {}

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseErrorTag{msg, pos};
  }
  struct ParseErrorTag {
    std::string msg;
    std::size_t pos;
  };

  void skip() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
  }
  bool eat(const char* s) {
    skip();
    std::size_t n = std::string(s).size();
    if (src.compare(pos, n, s) == 0) {
      pos += n;
      return true;
    }
    return false;
  }
  bool peek(char c) {
    skip();
    return pos < src.size() && src[pos] == c;
  }
  Name ident() {
    skip();
    if (pos >= src.size() ||
        !(std::isalpha(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
      fail("expected identifier");
    std::size_t start = pos;
    while (pos < src.size() && (std::isalnum(static_cast<unsigned char>(src[pos])) ||
                                src[pos] == '_' || src[pos] == '\''))
      ++pos;
    return src.substr(start, pos - start);
  }

  LamTermPtr term() {
    skip();
    if (eat("/\\")) {
      if (level != Level::Second) fail("'/\\' is only available at the second-order level");
      Name x = ident();
      if (!eat(".")) fail("expected '.'");
      return lam_tyabs(x, term());
    }
    if (eat("\\")) {
      Name x = ident();
      if (!eat(".")) fail("expected '.'");
      return lam_abs(x, term());
    }
    LamTermPtr t = atom();
    for (;;) {
      skip();
      if (pos >= src.size() || src[pos] == ')' || src[pos] == '>') break;
      if (src[pos] == '<') {
        if (level != Level::Second) fail("'<A>' is only available at the second-order level");
        ++pos;
        TypePtr a = parse_type(read_balanced('>'), Level::Second);
        t = lam_tyapp(t, a);
        continue;
      }
      if (src[pos] == '\\' || src.compare(pos, 2, "/\\") == 0) {
        t = lam_app(t, term());
        break;
      }
      t = lam_app(t, atom());
    }
    return t;
  }

  std::string read_balanced(char close) {
    std::size_t start = pos;
    int depth = 0;
    while (pos < src.size()) {
      char c = src[pos];
      if (c == '-' && pos + 1 < src.size() && src[pos + 1] == '>') {
        pos += 2;  // the '>' of an arrow does not close the argument
        continue;
      }
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if (c == close && depth == 0) {
        std::string inner = src.substr(start, pos - start);
        ++pos;
        return inner;
      }
      ++pos;
    }
    fail("unterminated type argument");
  }

  LamTermPtr atom() {
    skip();
    if (peek('(')) {
      ++pos;
      LamTermPtr t = term();
      if (!eat(")")) fail("expected ')'");
      return t;
    }
    return lam_var(ident());
  }

  void done() {
    skip();
    if (pos != src.size()) fail("trailing input");
  }
};

}  // namespace

LamTermPtr parse_lam(const std::string& src, Level level) {
  LamParser p(src, level);
  try {
    LamTermPtr t = p.term();
    p.done();
    return t;
  } catch (const LamParser::ParseErrorTag& e) {
    throw ParseError(e.msg + " at offset " + std::to_string(e.pos), e.pos);
  }
}

TypePtr GarbageKit::top_type() { return ty_top(); }

LamTermPtr GarbageKit::s_comb() {
  // \x.[x; \z.z] = \x.(\y.x)(\z.z)
  static const LamTermPtr s = lam_abs(
      "x", lam_app(lam_abs("y", lam_var("x")), lam_abs("z", lam_var("z"))));
  return s;
}

LamTermPtr GarbageKit::pair(const LamTermPtr& t, const LamTermPtr& u) {
  NameSupply supply(lam_free_vars(t));
  Name x = supply.fresh("n");
  return lam_app(lam_abs(x, t), u);
}

LamTermPtr GarbageKit::suc(const LamTermPtr& g) { return lam_app(s_comb(), g); }

ReachResult reach(const LamTermPtr& from, const LamTermPtr& to, ReachMode mode,
                  ReachCaps caps, const Ctx* ctx, const TypePtr* type) {
  ReachResult res;
  std::string target_key = lam_canonical_key(to);

  auto check_node = [&](const LamTermPtr& node) {
    if (!ctx || !type) return;
    auto err = typecheck_lam(*ctx, node, *type);
    if (err) {
      throw std::logic_error("subject reduction violated in target: " + err->describe() +
                             " at " + print_lam(node));
    }
  };

  struct NodeInfo {
    LamTermPtr term;
    std::size_t parent;  // index into order, or npos
  };
  constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::unordered_map<std::string, std::size_t> seen;
  std::vector<NodeInfo> order;
  std::deque<std::pair<std::size_t, std::size_t>> queue;  // (index, depth)

  auto build_path = [&](std::size_t idx) {
    std::vector<LamTermPtr> path;
    for (std::size_t i = idx; i != npos; i = order[i].parent) path.push_back(order[i].term);
    std::reverse(path.begin(), path.end());
    return path;
  };

  std::string from_key = lam_canonical_key(from);
  check_node(from);
  seen.emplace(from_key, 0);
  order.push_back({from, npos});
  queue.emplace_back(0, 0);

  if (mode == ReachMode::Star && from_key == target_key) {
    res.found = true;
    res.path = {from};
    res.nodes_explored = 1;
    res.exhausted = true;  // vacuously: no enumeration needed
    return res;
  }

  bool capped = false;
  while (!queue.empty()) {
    auto [idx, depth] = queue.front();
    queue.pop_front();
    if (depth >= caps.depth) {
      capped = true;
      continue;
    }
    for (const auto& next : beta_steps(order[idx].term)) {
      std::string key = lam_canonical_key(next);
      auto it = seen.find(key);
      if (it != seen.end()) continue;
      check_node(next);
      std::size_t nidx = order.size();
      bool is_target = (key == target_key);
      seen.emplace(std::move(key), nidx);
      order.push_back({next, idx});
      if (is_target) {
        res.found = true;
        res.path = build_path(nidx);
        res.nodes_explored = order.size();
        return res;
      }
      if (order.size() >= caps.nodes) {
        res.nodes_explored = order.size();
        res.exhausted = false;
        return res;
      }
      queue.emplace_back(nidx, depth + 1);
    }
  }

  res.nodes_explored = order.size();
  res.exhausted = !capped;
  return res;
}

}  // namespace ljmse
