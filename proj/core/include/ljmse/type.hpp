#pragma once

#include <memory>
#include <set>
#include <string>
#include <variant>

#include "ljmse/names.hpp"

namespace ljmse {

// Types of the source calculi and of the translation target:
//   A, B ::= X | Bot | A -> B | forall X. A
// Bot is the distinguished ground type the translations answer to; Forall
// only occurs at the second-order level.
struct Type;
using TypePtr = std::shared_ptr<const Type>;

namespace ty {
struct Var {
  Name name;
};
struct Bottom {};
struct Arrow {
  TypePtr dom;
  TypePtr cod;
};
struct Forall {
  Name binder;
  TypePtr body;
};
}  // namespace ty

struct Type : std::variant<ty::Var, ty::Bottom, ty::Arrow, ty::Forall> {
  using variant::variant;
};

TypePtr ty_var(Name name);
TypePtr ty_bottom();
TypePtr ty_arrow(TypePtr dom, TypePtr cod);
TypePtr ty_forall(Name binder, TypePtr body);

// negation and garbage abbreviations of the translations
TypePtr ty_neg(TypePtr a);  // A -> Bot
TypePtr ty_top();           // Bot -> Bot

bool is_arrow(const TypePtr& a);
bool is_forall(const TypePtr& a);

std::set<Name> free_ty_vars(const TypePtr& a);
bool type_alpha_eq(const TypePtr& a, const TypePtr& b);
// [B/X]A, capture-avoiding over Forall binders
TypePtr ty_subst_type(const TypePtr& b, const Name& x, const TypePtr& a);
// does a type mention Forall anywhere (i.e. require the second-order level)?
bool type_uses_forall(const TypePtr& a);

std::string print_type(const TypePtr& a);

}  // namespace ljmse
