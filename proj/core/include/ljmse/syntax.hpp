#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "ljmse/names.hpp"
#include "ljmse/type.hpp"

namespace ljmse {

// Which language level an expression lives at. Prop is the propositional
// calculus of the base system; Second adds /\X.t, <B>::l and annotations.
enum class Level { Prop, Second };

namespace ast {

struct Term;
struct CoTerm;
struct Command;
using TermPtr = std::shared_ptr<const Term>;
using CoTermPtr = std::shared_ptr<const CoTerm>;
using CommandPtr = std::shared_ptr<const Command>;

// Terms
struct Var {
  Name name;
};
struct Lam {
  Name binder;
  TermPtr body;
};
struct Coerce {
  CommandPtr cmd;
};
struct TyLam {  // level 2 only
  Name binder;
  TermPtr body;
};
struct Ann {  // level 2 only; typing hint "(t : A)", inert for reduction
  TermPtr term;
  TypePtr type;
};

// Co-terms
struct Nil {};
struct Cons {
  TermPtr head;
  CoTermPtr tail;
};
struct TyCons {  // level 2 only
  TypePtr ty;
  CoTermPtr tail;
};
struct Sel {
  Name binder;
  CommandPtr cmd;
};

struct Term : std::variant<Var, Lam, Coerce, TyLam, Ann> {
  using variant::variant;
};
struct CoTerm : std::variant<Nil, Cons, TyCons, Sel> {
  using variant::variant;
};
// Commands have a single form: a term cut against a co-term.
struct Command {
  TermPtr t;
  CoTermPtr l;
};

using Expr = std::variant<TermPtr, CoTermPtr, CommandPtr>;

TermPtr mk_var(Name name);
TermPtr mk_lam(Name binder, TermPtr body);
TermPtr mk_coerce(CommandPtr cmd);
TermPtr mk_tylam(Name binder, TermPtr body);
TermPtr mk_ann(TermPtr term, TypePtr type);
CoTermPtr mk_nil();
CoTermPtr mk_cons(TermPtr head, CoTermPtr tail);
CoTermPtr mk_tycons(TypePtr ty, CoTermPtr tail);
CoTermPtr mk_sel(Name binder, CommandPtr cmd);
CommandPtr mk_cut(TermPtr t, CoTermPtr l);

enum class ExprClass { Term, CoTerm, Command };
ExprClass class_of(const Expr& e);

bool is_value(const TermPtr& t);     // variable, lambda or type abstraction
bool is_eval_ctx(const CoTermPtr& l);  // [] , u::l or <B>::l

// free term variables
std::set<Name> free_vars(const Expr& e);
std::set<Name> free_vars(const TermPtr& t);
std::set<Name> free_vars(const CoTermPtr& l);
std::set<Name> free_vars(const CommandPtr& c);
bool not_in(const Name& x, const Expr& e);

// every term variable occurring, free or bound (used to seed name supplies)
std::set<Name> all_vars(const Expr& e);
// every type variable occurring (free or bound, incl. annotations)
std::set<Name> all_ty_vars(const Expr& e);

// capture-avoiding substitution [t/x]T; the result is in T's class
Expr subst(const TermPtr& t, const Name& x, const Expr& body);
TermPtr subst_term(const TermPtr& t, const Name& x, const TermPtr& body);
CoTermPtr subst_coterm(const TermPtr& t, const Name& x, const CoTermPtr& body);
CommandPtr subst_command(const TermPtr& t, const Name& x, const CommandPtr& body);

// eager concatenation l @ l'
CoTermPtr append(const CoTermPtr& l, const CoTermPtr& l2);

bool alpha_eq(const Expr& a, const Expr& b);
bool alpha_eq(const TermPtr& a, const TermPtr& b);
bool alpha_eq(const CoTermPtr& a, const CoTermPtr& b);
bool alpha_eq(const CommandPtr& a, const CommandPtr& b);
// nameless canonical form; equal strings iff alpha-equal expressions
std::string canonical_key(const Expr& e);

// type substitution [B/X]T in expressions (level 2), capture-avoiding over
// /\ binders; substitutes inside <.>:: arguments and annotations
Expr ty_subst_expr(const TypePtr& b, const Name& x, const Expr& e);
TermPtr ty_subst_term(const TypePtr& b, const Name& x, const TermPtr& t);

// level checks: Second-level constructs present anywhere?
bool uses_level2(const Expr& e);
// remove annotation nodes
Expr strip_ann(const Expr& e);
TermPtr strip_ann(const TermPtr& t);
bool has_ann(const Expr& e);

std::size_t expr_size(const Expr& e);

}  // namespace ast

// Typing context: finite map from term variables to types, no duplicates.
struct Ctx {
  std::map<Name, TypePtr> bindings;

  bool contains(const Name& x) const { return bindings.count(x) != 0; }
  const TypePtr* lookup(const Name& x) const {
    auto it = bindings.find(x);
    return it == bindings.end() ? nullptr : &it->second;
  }
  // returns false (and leaves the ctx alone) if x is already declared
  bool declare(const Name& x, TypePtr a) {
    return bindings.emplace(x, std::move(a)).second;
  }
  Ctx extended(const Name& x, TypePtr a) const {
    Ctx out = *this;
    out.bindings[x] = std::move(a);
    return out;
  }
  std::set<Name> free_ty() const {
    std::set<Name> out;
    for (auto& [_, ty] : bindings) {
      auto f = free_ty_vars(ty);
      out.insert(f.begin(), f.end());
    }
    return out;
  }
};

}  // namespace ljmse
