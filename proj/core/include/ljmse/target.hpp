#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "ljmse/names.hpp"
#include "ljmse/syntax.hpp"
#include "ljmse/type.hpp"

namespace ljmse {

// Translation target: simply-typed lambda-calculus over Bot, extended at the
// second-order level with domain-free /\X.t and t<A>.
struct LamTerm;
using LamTermPtr = std::shared_ptr<const LamTerm>;

namespace lt {
struct Var {
  Name name;
};
struct Lam {
  Name binder;
  LamTermPtr body;
};
struct App {
  LamTermPtr fn;
  LamTermPtr arg;
};
struct TyLam {
  Name binder;
  LamTermPtr body;
};
struct TyApp {
  LamTermPtr fn;
  TypePtr arg;
};
}  // namespace lt

struct LamTerm : std::variant<lt::Var, lt::Lam, lt::App, lt::TyLam, lt::TyApp> {
  using variant::variant;
};

LamTermPtr lam_var(Name name);
LamTermPtr lam_abs(Name binder, LamTermPtr body);
LamTermPtr lam_app(LamTermPtr fn, LamTermPtr arg);
LamTermPtr lam_tyabs(Name binder, LamTermPtr body);
LamTermPtr lam_tyapp(LamTermPtr fn, TypePtr arg);
// left-nested application t u1 u2 ...
LamTermPtr lam_apps(LamTermPtr fn, std::initializer_list<LamTermPtr> args);

std::set<Name> lam_free_vars(const LamTermPtr& t);
std::set<Name> lam_all_vars(const LamTermPtr& t);
LamTermPtr lam_subst(const LamTermPtr& t, const Name& x, const LamTermPtr& body);
LamTermPtr lam_ty_subst(const TypePtr& b, const Name& x, const LamTermPtr& body);
bool lam_alpha_eq(const LamTermPtr& a, const LamTermPtr& b);
std::string lam_canonical_key(const LamTermPtr& t);
std::size_t lam_size(const LamTermPtr& t);
bool lam_uses_level2(const LamTermPtr& t);

// all one-step beta (and, at level 2, beta2) reducts
std::vector<LamTermPtr> beta_steps(const LamTermPtr& t);
// leftmost-outermost normalization, bounded; nullopt when the bound is hit
std::optional<LamTermPtr> beta_normalize(const LamTermPtr& t, std::size_t max_steps);

std::string print_lam(const LamTermPtr& t);
LamTermPtr parse_lam(const std::string& src, Level level = Level::Prop);

// Concrete garbage realization: Top := Bot -> Bot with
// s := \x.[x; \z.z] and [t;u] := (\x.t) u for x not free in t.
struct GarbageKit {
  static TypePtr top_type();
  static LamTermPtr s_comb();
  static LamTermPtr pair(const LamTermPtr& t, const LamTermPtr& u);
  static LamTermPtr suc(const LamTermPtr& g);  // s applied to g
};

struct ReachCaps {
  std::size_t nodes = 50000;
  std::size_t depth = 200;
};

enum class ReachMode { Star, Plus };

struct ReachResult {
  bool found = false;
  std::vector<LamTermPtr> path;  // from -> ... -> to when found
  std::size_t nodes_explored = 0;
  bool exhausted = false;  // full graph enumerated under the caps
};

// Breadth-first enumeration of the beta-reduction graph modulo alpha.
// When ctx/type are given, every visited node is checked against that type
// (subject reduction assertion); a violation throws std::logic_error.
ReachResult reach(const LamTermPtr& from, const LamTermPtr& to, ReachMode mode,
                  ReachCaps caps = {}, const Ctx* ctx = nullptr,
                  const TypePtr* type = nullptr);

}  // namespace ljmse
