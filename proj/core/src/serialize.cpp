#include "ljmse/serialize.hpp"

#include <json.hpp>

#include "ljmse/parser.hpp"
#include "ljmse/printer.hpp"

namespace ljmse {

using namespace ast;
using nlohmann::json;
using ordered = nlohmann::ordered_json;

namespace {

ordered term_json(const TermPtr& t);
ordered coterm_json(const CoTermPtr& l);
ordered command_json(const CommandPtr& c);

ordered term_json(const TermPtr& t) {
  if (auto* v = std::get_if<Var>(t.get())) return {{"k", "var"}, {"x", v->name}};
  if (auto* lam = std::get_if<Lam>(t.get()))
    return {{"k", "lam"}, {"x", lam->binder}, {"body", term_json(lam->body)}};
  if (auto* co = std::get_if<Coerce>(t.get()))
    return {{"k", "coerce"}, {"cmd", command_json(co->cmd)}};
  if (auto* tl = std::get_if<TyLam>(t.get()))
    return {{"k", "tylam"}, {"X", tl->binder}, {"body", term_json(tl->body)}};
  const auto& an = std::get<Ann>(*t);
  return {{"k", "ann"}, {"t", term_json(an.term)}, {"ty", print_type(an.type)}};
}

ordered coterm_json(const CoTermPtr& l) {
  if (std::holds_alternative<Nil>(*l)) return {{"k", "nil"}};
  if (auto* c = std::get_if<Cons>(l.get()))
    return {{"k", "cons"}, {"head", term_json(c->head)}, {"tail", coterm_json(c->tail)}};
  if (auto* tc = std::get_if<TyCons>(l.get()))
    return {{"k", "tycons"}, {"ty", print_type(tc->ty)}, {"tail", coterm_json(tc->tail)}};
  const auto& s = std::get<Sel>(*l);
  return {{"k", "sel"}, {"x", s.binder}, {"cmd", command_json(s.cmd)}};
}

ordered command_json(const CommandPtr& c) {
  return {{"k", "cut"}, {"t", term_json(c->t)}, {"l", coterm_json(c->l)}};
}

ordered expr_json(const Expr& e) {
  return std::visit([](const auto& p) -> ordered {
    using P = std::decay_t<decltype(p)>;
    if constexpr (std::is_same_v<P, TermPtr>) return term_json(p);
    else if constexpr (std::is_same_v<P, CoTermPtr>) return coterm_json(p);
    else return command_json(p);
  }, e);
}

TermPtr term_of(const ordered& j, Level level);
CoTermPtr coterm_of(const ordered& j, Level level);
CommandPtr command_of(const ordered& j, Level level);

[[noreturn]] void bad(const std::string& what) {
  throw ParseError("malformed JSON AST: " + what, 0);
}

void need_level2(Level level, const std::string& k) {
  if (level != Level::Second) bad("'" + k + "' node at propositional level");
}

TermPtr term_of(const ordered& j, Level level) {
  std::string k = j.at("k").get<std::string>();
  if (k == "var") return mk_var(j.at("x").get<std::string>());
  if (k == "lam") return mk_lam(j.at("x").get<std::string>(), term_of(j.at("body"), level));
  if (k == "coerce") return mk_coerce(command_of(j.at("cmd"), level));
  if (k == "tylam") {
    need_level2(level, k);
    return mk_tylam(j.at("X").get<std::string>(), term_of(j.at("body"), level));
  }
  if (k == "ann") {
    need_level2(level, k);
    return mk_ann(term_of(j.at("t"), level), parse_type(j.at("ty").get<std::string>()));
  }
  bad("unknown term kind '" + k + "'");
}

CoTermPtr coterm_of(const ordered& j, Level level) {
  std::string k = j.at("k").get<std::string>();
  if (k == "nil") return mk_nil();
  if (k == "cons") return mk_cons(term_of(j.at("head"), level), coterm_of(j.at("tail"), level));
  if (k == "tycons") {
    need_level2(level, k);
    return mk_tycons(parse_type(j.at("ty").get<std::string>()), coterm_of(j.at("tail"), level));
  }
  if (k == "sel") return mk_sel(j.at("x").get<std::string>(), command_of(j.at("cmd"), level));
  bad("unknown co-term kind '" + k + "'");
}

CommandPtr command_of(const ordered& j, Level level) {
  if (j.at("k").get<std::string>() != "cut") bad("expected a cut");
  return mk_cut(term_of(j.at("t"), level), coterm_of(j.at("l"), level));
}

ordered lam_json(const LamTermPtr& t) {
  if (auto* v = std::get_if<lt::Var>(t.get())) return {{"k", "var"}, {"x", v->name}};
  if (auto* l = std::get_if<lt::Lam>(t.get()))
    return {{"k", "lam"}, {"x", l->binder}, {"body", lam_json(l->body)}};
  if (auto* a = std::get_if<lt::App>(t.get()))
    return {{"k", "app"}, {"f", lam_json(a->fn)}, {"a", lam_json(a->arg)}};
  if (auto* tl = std::get_if<lt::TyLam>(t.get()))
    return {{"k", "tylam"}, {"X", tl->binder}, {"body", lam_json(tl->body)}};
  const auto& ta = std::get<lt::TyApp>(*t);
  return {{"k", "tyapp"}, {"f", lam_json(ta.fn)}, {"ty", print_type(ta.arg)}};
}

LamTermPtr lam_of(const ordered& j, Level level) {
  std::string k = j.at("k").get<std::string>();
  if (k == "var") return lam_var(j.at("x").get<std::string>());
  if (k == "lam") return lam_abs(j.at("x").get<std::string>(), lam_of(j.at("body"), level));
  if (k == "app") return lam_app(lam_of(j.at("f"), level), lam_of(j.at("a"), level));
  if (k == "tylam") {
    need_level2(level, k);
    return lam_tyabs(j.at("X").get<std::string>(), lam_of(j.at("body"), level));
  }
  if (k == "tyapp") {
    need_level2(level, k);
    return lam_tyapp(lam_of(j.at("f"), level), parse_type(j.at("ty").get<std::string>()));
  }
  bad("unknown target term kind '" + k + "'");
}

}  // namespace

std::string expr_to_json(const Expr& e) { return expr_json(e).dump(); }

Expr expr_from_json(const std::string& text, Level level) {
  ordered j = ordered::parse(text);
  std::string k = j.at("k").get<std::string>();
  if (k == "cut") return command_of(j, level);
  if (k == "nil" || k == "cons" || k == "tycons" || k == "sel") return coterm_of(j, level);
  return term_of(j, level);
}

std::string lam_to_json(const LamTermPtr& t) { return lam_json(t).dump(); }

LamTermPtr lam_from_json(const std::string& text, Level level) {
  return lam_of(ordered::parse(text), level);
}

std::string trace_to_json(const Trace& tr) {
  ordered j;
  j["initial"] = expr_json(tr.initial);
  ordered steps = ordered::array();
  for (const auto& s : tr.steps) {
    ordered st;
    st["rule"] = rule_name(s.rule);
    st["pos"] = s.pos;
    st["to"] = expr_json(s.to);
    steps.push_back(std::move(st));
  }
  j["steps"] = std::move(steps);
  j["status"] = tr.status == Trace::Status::Normal ? "normal" : "bound-exhausted";
  return j.dump();
}

}  // namespace ljmse
