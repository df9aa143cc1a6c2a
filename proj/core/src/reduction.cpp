#include "ljmse/reduction.hpp"

#include <deque>
#include <functional>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "ljmse/names.hpp"
#include "ljmse/printer.hpp"

namespace ljmse {

using namespace ast;

const char* rule_name(RuleName r) {
  switch (r) {
    case RuleName::Beta: return "beta";
    case RuleName::Pi: return "pi";
    case RuleName::Sigma: return "sigma";
    case RuleName::Mu: return "mu";
    case RuleName::Eps: return "eps";
    case RuleName::Beta2: return "beta2";
    case RuleName::Beta1: return "beta1";
    case RuleName::PiHat: return "pihat";
  }
  return "?";
}

std::optional<RuleName> rule_from_name(const std::string& s) {
  if (s == "beta") return RuleName::Beta;
  if (s == "pi") return RuleName::Pi;
  if (s == "sigma") return RuleName::Sigma;
  if (s == "mu") return RuleName::Mu;
  if (s == "eps" || s == "epsilon") return RuleName::Eps;
  if (s == "beta2") return RuleName::Beta2;
  if (s == "beta1") return RuleName::Beta1;
  if (s == "pihat") return RuleName::PiHat;
  return std::nullopt;
}

RuleSet full_rules(Level level) {
  RuleSet rs{RuleName::Beta, RuleName::Pi, RuleName::Sigma, RuleName::Mu, RuleName::Eps};
  if (level == Level::Second) rs.insert(RuleName::Beta2);
  return rs;
}

namespace {

// root contraction of a command: beta, pi, sigma or beta2 (mutually exclusive)
std::optional<std::pair<RuleName, CommandPtr>> command_root(const CommandPtr& c) {
  if (auto* lam = std::get_if<Lam>(c->t.get())) {
    if (auto* cons = std::get_if<Cons>(c->l.get())) {
      // (\x.t)(u::l) -> u((x)tl)
      CommandPtr inner = mk_cut(lam->body, cons->tail);
      return {{RuleName::Beta, mk_cut(cons->head, mk_sel(lam->binder, inner))}};
    }
  }
  if (auto* tyl = std::get_if<TyLam>(c->t.get())) {
    if (auto* tc = std::get_if<TyCons>(c->l.get())) {
      // (/\X.t)(<B>::l) -> ([B/X]t) l
      return {{RuleName::Beta2, mk_cut(ty_subst_term(tc->ty, tyl->binder, tyl->body), tc->tail)}};
    }
  }
  if (auto* co = std::get_if<Coerce>(c->t.get())) {
    if (is_eval_ctx(c->l)) {
      // {tl}E -> t (l@E)
      return {{RuleName::Pi, mk_cut(co->cmd->t, append(co->cmd->l, c->l))}};
    }
  }
  if (auto* sel = std::get_if<Sel>(c->l.get())) {
    // t(x)c -> [t/x]c
    return {{RuleName::Sigma, subst_command(c->t, sel->binder, sel->cmd)}};
  }
  return std::nullopt;
}

std::optional<TermPtr> term_root(const TermPtr& t) {
  if (auto* co = std::get_if<Coerce>(t.get())) {
    if (std::holds_alternative<Nil>(*co->cmd->l)) return co->cmd->t;  // {t[]} -> t
  }
  return std::nullopt;
}

std::optional<CoTermPtr> coterm_root(const CoTermPtr& l) {
  if (auto* sel = std::get_if<Sel>(l.get())) {
    if (auto* v = std::get_if<Var>(sel->cmd->t.get())) {
      if (v->name == sel->binder && not_in(sel->binder, Expr{sel->cmd->l})) {
        return sel->cmd->l;  // (x)xl -> l, x not in l
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<std::pair<RuleName, Expr>> root_step(const Expr& e) {
  std::vector<std::pair<RuleName, Expr>> out;
  if (auto* c = std::get_if<CommandPtr>(&e)) {
    if (auto r = command_root(*c)) out.emplace_back(r->first, r->second);
  } else if (auto* t = std::get_if<TermPtr>(&e)) {
    if (auto r = term_root(*t)) out.emplace_back(RuleName::Eps, *r);
  } else {
    if (auto r = coterm_root(std::get<CoTermPtr>(e))) out.emplace_back(RuleName::Mu, *r);
  }
  return out;
}

namespace {

struct StepCollector {
  const Expr& root;
  std::vector<Step> out;
  Pos pos;

  // wrap: rebuild the whole expression with the subexpression at the current
  // path replaced
  using Wrap = std::function<Expr(Expr)>;

  void at_root(const Expr& here, const Wrap& wrap) {
    for (auto& [rule, reduct] : root_step(here)) {
      out.push_back(Step{rule, pos, root, wrap(reduct)});
    }
  }

  void term(const TermPtr& t, const Wrap& wrap) {
    at_root(Expr{t}, wrap);
    if (auto* lam = std::get_if<Lam>(t.get())) {
      descend(0, Expr{lam->body}, [&, wrap](Expr r) {
        return wrap(Expr{mk_lam(lam->binder, std::get<TermPtr>(r))});
      });
    } else if (auto* co = std::get_if<Coerce>(t.get())) {
      descend(0, Expr{co->cmd}, [&, wrap](Expr r) {
        return wrap(Expr{mk_coerce(std::get<CommandPtr>(r))});
      });
    } else if (auto* tl = std::get_if<TyLam>(t.get())) {
      descend(0, Expr{tl->body}, [&, wrap](Expr r) {
        return wrap(Expr{mk_tylam(tl->binder, std::get<TermPtr>(r))});
      });
    } else if (auto* an = std::get_if<Ann>(t.get())) {
      descend(0, Expr{an->term}, [&, wrap](Expr r) {
        return wrap(Expr{mk_ann(std::get<TermPtr>(r), an->type)});
      });
    }
  }

  void coterm(const CoTermPtr& l, const Wrap& wrap) {
    at_root(Expr{l}, wrap);
    if (auto* c = std::get_if<Cons>(l.get())) {
      descend(0, Expr{c->head}, [&, wrap](Expr r) {
        return wrap(Expr{mk_cons(std::get<TermPtr>(r), c->tail)});
      });
      descend(1, Expr{c->tail}, [&, wrap](Expr r) {
        return wrap(Expr{mk_cons(c->head, std::get<CoTermPtr>(r))});
      });
    } else if (auto* tc = std::get_if<TyCons>(l.get())) {
      descend(1, Expr{tc->tail}, [&, wrap](Expr r) {
        return wrap(Expr{mk_tycons(tc->ty, std::get<CoTermPtr>(r))});
      });
    } else if (auto* s = std::get_if<Sel>(l.get())) {
      descend(0, Expr{s->cmd}, [&, wrap](Expr r) {
        return wrap(Expr{mk_sel(s->binder, std::get<CommandPtr>(r))});
      });
    }
  }

  void command(const CommandPtr& c, const Wrap& wrap) {
    at_root(Expr{c}, wrap);
    descend(0, Expr{c->t}, [&, wrap](Expr r) {
      return wrap(Expr{mk_cut(std::get<TermPtr>(r), c->l)});
    });
    descend(1, Expr{c->l}, [&, wrap](Expr r) {
      return wrap(Expr{mk_cut(c->t, std::get<CoTermPtr>(r))});
    });
  }

  void descend(int idx, const Expr& child, const Wrap& wrap) {
    pos.push_back(idx);
    dispatch(child, wrap);
    pos.pop_back();
  }

  void dispatch(const Expr& e, const Wrap& wrap) {
    if (auto* t = std::get_if<TermPtr>(&e)) term(*t, wrap);
    else if (auto* l = std::get_if<CoTermPtr>(&e)) coterm(*l, wrap);
    else command(std::get<CommandPtr>(e), wrap);
  }
};

}  // namespace

std::vector<Step> all_steps(const Expr& e) {
  StepCollector sc{e, {}, {}};
  sc.dispatch(e, [](Expr r) { return r; });
  return std::move(sc.out);
}

std::vector<Step> all_steps(const Expr& e, const RuleSet& rules) {
  std::vector<Step> out;
  for (auto& s : all_steps(e)) {
    if (rules.count(s.rule)) out.push_back(std::move(s));
  }
  return out;
}

namespace {

[[noreturn]] void bad_pos() { throw std::invalid_argument("invalid position"); }

}  // namespace

Expr subexpr_at(const Expr& e, const Pos& pos) {
  Expr cur = e;
  for (int idx : pos) {
    if (auto* tp = std::get_if<TermPtr>(&cur)) {
      const TermPtr& t = *tp;
      if (auto* lam = std::get_if<Lam>(t.get())) {
        if (idx != 0) bad_pos();
        cur = Expr{lam->body};
      } else if (auto* co = std::get_if<Coerce>(t.get())) {
        if (idx != 0) bad_pos();
        cur = Expr{co->cmd};
      } else if (auto* tl = std::get_if<TyLam>(t.get())) {
        if (idx != 0) bad_pos();
        cur = Expr{tl->body};
      } else if (auto* an = std::get_if<Ann>(t.get())) {
        if (idx != 0) bad_pos();
        cur = Expr{an->term};
      } else {
        bad_pos();
      }
    } else if (auto* lp = std::get_if<CoTermPtr>(&cur)) {
      const CoTermPtr& l = *lp;
      if (auto* c = std::get_if<Cons>(l.get())) {
        if (idx == 0) cur = Expr{c->head};
        else if (idx == 1) cur = Expr{c->tail};
        else bad_pos();
      } else if (auto* tc = std::get_if<TyCons>(l.get())) {
        if (idx != 1) bad_pos();
        cur = Expr{tc->tail};
      } else if (auto* s = std::get_if<Sel>(l.get())) {
        if (idx != 0) bad_pos();
        cur = Expr{s->cmd};
      } else {
        bad_pos();
      }
    } else {
      const CommandPtr& c = std::get<CommandPtr>(cur);
      if (idx == 0) cur = Expr{c->t};
      else if (idx == 1) cur = Expr{c->l};
      else bad_pos();
    }
  }
  return cur;
}

Expr replace_at(const Expr& e, const Pos& pos, const Expr& repl) {
  if (pos.empty()) {
    if (class_of(e) != class_of(repl))
      throw std::invalid_argument("replacement changes syntactic class");
    return repl;
  }
  Pos rest(pos.begin() + 1, pos.end());
  int idx = pos.front();
  if (auto* tp = std::get_if<TermPtr>(&e)) {
    const TermPtr& t = *tp;
    if (auto* lam = std::get_if<Lam>(t.get())) {
      if (idx != 0) bad_pos();
      return Expr{mk_lam(lam->binder, std::get<TermPtr>(replace_at(Expr{lam->body}, rest, repl)))};
    }
    if (auto* co = std::get_if<Coerce>(t.get())) {
      if (idx != 0) bad_pos();
      return Expr{mk_coerce(std::get<CommandPtr>(replace_at(Expr{co->cmd}, rest, repl)))};
    }
    if (auto* tl = std::get_if<TyLam>(t.get())) {
      if (idx != 0) bad_pos();
      return Expr{mk_tylam(tl->binder, std::get<TermPtr>(replace_at(Expr{tl->body}, rest, repl)))};
    }
    if (auto* an = std::get_if<Ann>(t.get())) {
      if (idx != 0) bad_pos();
      return Expr{mk_ann(std::get<TermPtr>(replace_at(Expr{an->term}, rest, repl)), an->type)};
    }
    bad_pos();
  }
  if (auto* lp = std::get_if<CoTermPtr>(&e)) {
    const CoTermPtr& l = *lp;
    if (auto* c = std::get_if<Cons>(l.get())) {
      if (idx == 0)
        return Expr{mk_cons(std::get<TermPtr>(replace_at(Expr{c->head}, rest, repl)), c->tail)};
      if (idx == 1)
        return Expr{mk_cons(c->head, std::get<CoTermPtr>(replace_at(Expr{c->tail}, rest, repl)))};
      bad_pos();
    }
    if (auto* tc = std::get_if<TyCons>(l.get())) {
      if (idx != 1) bad_pos();
      return Expr{mk_tycons(tc->ty, std::get<CoTermPtr>(replace_at(Expr{tc->tail}, rest, repl)))};
    }
    if (auto* s = std::get_if<Sel>(l.get())) {
      if (idx != 0) bad_pos();
      return Expr{mk_sel(s->binder, std::get<CommandPtr>(replace_at(Expr{s->cmd}, rest, repl)))};
    }
    bad_pos();
  }
  const CommandPtr& c = std::get<CommandPtr>(e);
  if (idx == 0)
    return Expr{mk_cut(std::get<TermPtr>(replace_at(Expr{c->t}, rest, repl)), c->l)};
  if (idx == 1)
    return Expr{mk_cut(c->t, std::get<CoTermPtr>(replace_at(Expr{c->l}, rest, repl)))};
  bad_pos();
}

Trace normalize(const Expr& e, Strategy strategy, std::size_t max_steps, std::uint64_t seed) {
  Trace tr;
  tr.initial = e;
  Expr cur = e;
  Rng rng(seed);
  for (std::size_t i = 0;; ++i) {
    auto steps = all_steps(cur);
    if (steps.empty()) {
      tr.status = Trace::Status::Normal;
      return tr;
    }
    if (i >= max_steps) {
      tr.status = Trace::Status::BoundExhausted;
      return tr;
    }
    std::size_t pick = strategy == Strategy::Leftmost ? 0 : rng.below(steps.size());
    tr.steps.push_back(steps[pick]);
    cur = steps[pick].to;
  }
}

namespace {

bool nf_term(const TermPtr& t, bool with_eps);
bool nf_coterm(const CoTermPtr& l, bool with_eps);

bool nf_command(const CommandPtr& c, bool with_eps) {
  // commands must be V[] or x(U::l)
  if (std::holds_alternative<Nil>(*c->l)) {
    return is_value(c->t) && nf_term(c->t, with_eps);
  }
  if (!std::holds_alternative<Var>(*c->t.get())) return false;
  if (auto* cons = std::get_if<Cons>(c->l.get()))
    return nf_term(cons->head, with_eps) && nf_coterm(cons->tail, with_eps);
  if (auto* tc = std::get_if<TyCons>(c->l.get())) return nf_coterm(tc->tail, with_eps);
  return false;
}

bool nf_term(const TermPtr& t, bool with_eps) {
  if (std::holds_alternative<Var>(*t)) return true;
  if (auto* lam = std::get_if<Lam>(t.get())) return nf_term(lam->body, with_eps);
  if (auto* tl = std::get_if<TyLam>(t.get())) return nf_term(tl->body, with_eps);
  if (auto* co = std::get_if<Coerce>(t.get())) {
    if (with_eps && std::holds_alternative<Nil>(*co->cmd->l)) return false;  // {t[]}
    return nf_command(co->cmd, with_eps);
  }
  return false;  // annotations are not reduction syntax
}

bool nf_coterm(const CoTermPtr& l, bool with_eps) {
  if (std::holds_alternative<Nil>(*l)) return true;
  if (auto* c = std::get_if<Cons>(l.get()))
    return nf_term(c->head, with_eps) && nf_coterm(c->tail, with_eps);
  if (auto* tc = std::get_if<TyCons>(l.get())) return nf_coterm(tc->tail, with_eps);
  const auto& s = std::get<Sel>(*l);
  return nf_command(s.cmd, with_eps);
}

bool nf_structural(const Expr& e, bool with_eps) {
  if (auto* t = std::get_if<TermPtr>(&e)) return nf_term(*t, with_eps);
  if (auto* l = std::get_if<CoTermPtr>(&e)) return nf_coterm(*l, with_eps);
  return nf_command(std::get<CommandPtr>(e), with_eps);
}

}  // namespace

bool is_normal(const Expr& e, const RuleSet& rules) {
  RuleSet bps{RuleName::Beta, RuleName::Pi, RuleName::Sigma};
  RuleSet bpse{RuleName::Beta, RuleName::Pi, RuleName::Sigma, RuleName::Eps};
  if (rules == bps) return nf_structural(e, false);
  if (rules == bpse) return nf_structural(e, true);
  return all_steps(e, rules).empty();
}

namespace {

Step first_step_matching(const Expr& e, RuleName rule, const Pos& pos) {
  for (auto& s : all_steps(e)) {
    if (s.rule == rule && s.pos == pos) return s;
  }
  throw std::logic_error(std::string("peak construction: expected a ") + rule_name(rule) +
                         " step at the stated position in " + print_expr(e));
}

}  // namespace

std::vector<CriticalPeak> critical_peaks(int depth, std::uint64_t seed) {
  Rng rng(seed);
  NameSupply supply;
  std::vector<CriticalPeak> out;

  // small closed ingredient generators
  auto small_term = [&](auto&& self, int d) -> TermPtr {
    if (d <= 0) return mk_lam("z", mk_var("z"));
    switch (rng.below(3)) {
      case 0: return mk_lam("z", mk_var("z"));
      case 1: return mk_lam("w", self(self, d - 1));
      default: return mk_coerce(mk_cut(self(self, d - 1), mk_nil()));
    }
  };
  auto term = [&](int d) { return small_term(small_term, d); };
  auto eval_ctx = [&](int d) -> CoTermPtr {
    CoTermPtr l = mk_nil();
    int n = static_cast<int>(rng.below(static_cast<std::uint64_t>(d) + 1)) + 1;
    for (int i = 0; i < n; ++i) l = mk_cons(term(d - 1), l);
    return l;
  };
  auto coterm = [&](int d) -> CoTermPtr {
    switch (rng.below(3)) {
      case 0: return mk_nil();
      case 1: return eval_ctx(d);
      default: return mk_sel("y", mk_cut(term(d - 1), mk_nil()));
    }
  };

  int d = depth < 1 ? 1 : depth;

  // pi self-overlap: {{tl}E'}E
  {
    TermPtr t = term(d);
    CoTermPtr l = coterm(d);
    CoTermPtr e1 = eval_ctx(d);
    CoTermPtr e2 = eval_ctx(d);
    CommandPtr peak = mk_cut(mk_coerce(mk_cut(mk_coerce(mk_cut(t, l)), e1)), e2);
    out.push_back({"pi-pi", Expr{peak}, first_step_matching(Expr{peak}, RuleName::Pi, {}),
                   first_step_matching(Expr{peak}, RuleName::Pi, {0, 0})});
  }
  // pi/beta: {(\x.t)(u::l)}E
  {
    TermPtr t = term(d);
    TermPtr u = term(d);
    CoTermPtr l = coterm(d);
    CoTermPtr e1 = eval_ctx(d);
    CommandPtr peak = mk_cut(mk_coerce(mk_cut(mk_lam("x", t), mk_cons(u, l))), e1);
    out.push_back({"pi-beta", Expr{peak}, first_step_matching(Expr{peak}, RuleName::Pi, {}),
                   first_step_matching(Expr{peak}, RuleName::Beta, {0, 0})});
  }
  // pi/sigma: {t(x)c}E
  {
    TermPtr t = term(d);
    CommandPtr c = mk_cut(mk_var("x"), coterm(d));
    CoTermPtr e1 = eval_ctx(d);
    CommandPtr peak = mk_cut(mk_coerce(mk_cut(t, mk_sel("x", c))), e1);
    out.push_back({"pi-sigma", Expr{peak}, first_step_matching(Expr{peak}, RuleName::Pi, {}),
                   first_step_matching(Expr{peak}, RuleName::Sigma, {0, 0})});
  }
  // pi/eps from {t[]}E
  {
    TermPtr t = term(d);
    CoTermPtr e1 = eval_ctx(d);
    CommandPtr peak = mk_cut(mk_coerce(mk_cut(t, mk_nil())), e1);
    out.push_back({"pi-eps-ctx", Expr{peak}, first_step_matching(Expr{peak}, RuleName::Pi, {}),
                   first_step_matching(Expr{peak}, RuleName::Eps, {0})});
  }
  // pi/eps from {{tl}[]}
  {
    TermPtr t = term(d);
    CoTermPtr l = coterm(d);
    TermPtr peak = mk_coerce(mk_cut(mk_coerce(mk_cut(t, l)), mk_nil()));
    out.push_back({"pi-eps-nil", Expr{peak}, first_step_matching(Expr{peak}, RuleName::Eps, {}),
                   first_step_matching(Expr{peak}, RuleName::Pi, {0})});
  }
  // mu/sigma from t(x)xl, x not in l
  {
    TermPtr t = term(d);
    CoTermPtr l = coterm(d);
    CommandPtr peak = mk_cut(t, mk_sel("x", mk_cut(mk_var("x"), l)));
    out.push_back({"mu-sigma-subst", Expr{peak},
                   first_step_matching(Expr{peak}, RuleName::Sigma, {}),
                   first_step_matching(Expr{peak}, RuleName::Mu, {1})});
  }
  // mu/sigma from (x)(x(y)c), x not in c
  {
    CommandPtr c = mk_cut(term(d), coterm(d));
    CoTermPtr peak = mk_sel("x", mk_cut(mk_var("x"), mk_sel("y", c)));
    out.push_back({"mu-sigma-sel", Expr{peak},
                   first_step_matching(Expr{peak}, RuleName::Mu, {}),
                   first_step_matching(Expr{peak}, RuleName::Sigma, {0})});
  }
  return out;
}

namespace {

std::optional<Expr> normal_form_within(const Expr& e, std::size_t bound) {
  Trace tr = normalize(e, Strategy::Leftmost, bound);
  if (tr.status != Trace::Status::Normal) return std::nullopt;
  return tr.final_expr();
}

}  // namespace

JoinResult join_within(const Expr& a, const Expr& b, std::size_t max_steps,
                       std::size_t node_cap) {
  JoinResult res;
  if (alpha_eq(a, b)) {
    res.joined = true;
    res.steps_used = 0;
    res.meet = a;
    return res;
  }
  // cheap route: confluence means shared normal forms join everything
  auto na = normal_form_within(a, max_steps);
  if (na) {
    auto nb = normal_form_within(b, max_steps);
    if (nb && alpha_eq(*na, *nb)) {
      res.joined = true;
      res.steps_used = max_steps;
      res.meet = *na;
      return res;
    }
  }
  // BFS meet of the two forward closures
  std::unordered_map<std::string, int> owner;  // 1 = from a, 2 = from b
  std::deque<std::pair<Expr, std::size_t>> qa, qb;
  auto push = [&](std::deque<std::pair<Expr, std::size_t>>& q,
                  std::unordered_map<std::string, int>& own, const Expr& e, std::size_t d,
                  int tag) -> std::optional<Expr> {
    std::string key = canonical_key(e);
    auto it = own.find(key);
    if (it != own.end()) {
      if (it->second != tag) return e;  // met the other side
      return std::nullopt;
    }
    own.emplace(std::move(key), tag);
    q.emplace_back(e, d);
    return std::nullopt;
  };
  push(qa, owner, a, 0, 1);
  push(qb, owner, b, 0, 2);
  std::size_t explored = 0;
  while ((!qa.empty() || !qb.empty()) && explored < node_cap) {
    for (auto* q : {&qa, &qb}) {
      if (q->empty()) continue;
      auto [cur, d] = q->front();
      q->pop_front();
      ++explored;
      if (d >= max_steps) continue;
      int tag = (q == &qa) ? 1 : 2;
      for (auto& s : all_steps(cur)) {
        if (auto met = push(*q, owner, s.to, d + 1, tag)) {
          res.joined = true;
          res.steps_used = d + 1;
          res.meet = *met;
          return res;
        }
      }
    }
  }
  return res;
}

}  // namespace ljmse
