#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ljmse/reduction.hpp"
#include "ljmse/syntax.hpp"
#include "ljmse/target.hpp"
#include "ljmse/type.hpp"

namespace ljmse {

struct TypeError {
  enum class Reason { UnboundVar, Clash, Occurs, Level, NotSynthesizable };
  Reason reason = Reason::Clash;
  std::vector<int> location;  // best-effort path from the checked root
  std::string detail;

  std::string describe() const;
  static const char* reason_name(Reason r);
};

using TypeResult = std::variant<TypePtr, TypeError>;
// empty optional means the check succeeded
using CheckResult = std::optional<TypeError>;

// A sequent, one form per syntactic class:
//   Gamma |- t : A          (term; outType = A)
//   Gamma | l : A |- B      (co-term; inType = A, outType = B)
//   Gamma -- c --> B        (command; outType = B)
struct Judgement {
  ast::ExprClass kind;
  Ctx ctx;
  ast::Expr subject;
  TypePtr inType;  // co-terms only
  TypePtr outType;
};

// Propositional-level principal inference (unification with occurs check).
TypeResult infer_term(const Ctx& ctx, const ast::TermPtr& t);
// The unique B with  Gamma | l : inType |- B, or an error.
TypeResult check_coterm(const Ctx& ctx, const ast::CoTermPtr& l, const TypePtr& in_type,
                        Level level = Level::Prop);
CheckResult check_command(const Ctx& ctx, const ast::CommandPtr& c, const TypePtr& out_type,
                          Level level = Level::Prop);
CheckResult check_term(const Ctx& ctx, const ast::TermPtr& t, const TypePtr& type,
                       Level level = Level::Prop);
// Checking-mode judgement for the second-order system; annotations "(t : A)"
// may be needed to make cut heads synthesizable.
CheckResult check_level2(const Ctx& ctx, const ast::TermPtr& t, const TypePtr& type);

// Principal judgement of an expression (terms/commands: outType; co-terms:
// inType and outType). Unsolved residue is named A, B, ... deterministically.
std::variant<Judgement, TypeError> principal_judgement(const Ctx& ctx, const ast::Expr& e,
                                                       Level level = Level::Prop);

// One-way matching: is "instance" a substitution instance of "general"
// (substituting for general's free type variables)?
bool type_instance_of(const TypePtr& general, const TypePtr& instance);

// true iff the reduct of s types with the identical judgement; false flags a
// subject-reduction violation (the expression is assumed typable)
bool subject_reduction_check(const Ctx& ctx, const ast::Expr& e, const Step& s,
                             Level level = Level::Prop);

// Target calculus typing (simply-typed + domain-free second order).
TypeResult infer_lam(const Ctx& ctx, const LamTermPtr& t);
CheckResult typecheck_lam(const Ctx& ctx, const LamTermPtr& t, const TypePtr& type);

}  // namespace ljmse
