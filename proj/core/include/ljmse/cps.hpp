#pragma once

#include <optional>
#include <string>

#include "ljmse/spectrum.hpp"
#include "ljmse/syntax.hpp"
#include "ljmse/target.hpp"

namespace ljmse {

// Which translation. The lj variants: CGPS_lj is the one inherited from the
// full calculus (value/application case split), CGPS_lj_opt drops the
// increments that strictness does not need, CGPS_lj_simple combines garbage
// with the simpler arrow translation A* -> B*.
enum class TransKind {
  CPS,
  CGPS,
  CGPS_ljms,
  CGPS_ljm,
  CGPS_lj,
  CGPS_lj_opt,
  CPS_simple,
  CGPS_lj_simple
};

const char* trans_kind_name(TransKind k);
std::optional<TransKind> trans_kind_from_name(const std::string& s);
bool is_garbage_kind(TransKind k);

// type translations; neg A := A -> Bot
//   CPS family:    bar A = neg neg A*
//   CGPS family:   bar A = Top -> neg neg A*
//   arrows:        (A -> B)* = neg bar B -> neg bar A
//   simple kinds:  (A -> B)* = bar A -> bar B
//   level 2:       (forall X.A)* = forall X. bar A
TypePtr star_type(const TypePtr& a, TransKind kind);
TypePtr bar_type(const TypePtr& a, TransKind kind);
Ctx bar_ctx(const Ctx& ctx, TransKind kind);

// full-calculus translations; annotations are stripped first, fresh target
// names are drawn deterministically per call
LamTermPtr cps(const ast::TermPtr& t);
LamTermPtr colon_cps(const ast::Expr& T, const LamTermPtr& K);
LamTermPtr cgps(const ast::TermPtr& t);
LamTermPtr colon_cgps(const ast::Expr& T, const LamTermPtr& G, const LamTermPtr& K);
LamTermPtr cps_simple(const ast::TermPtr& t);
LamTermPtr colon_cps_simple(const ast::Expr& T, const LamTermPtr& K);

// subsystem CGPS translations (kind selects the clause set; the calculus of
// t must match the kind)
LamTermPtr cgps_spec(const SpecTerm& t, TransKind kind);
LamTermPtr colon_cgps_spec(const SpecTerm& t, const LamTermPtr& G, const LamTermPtr& K,
                           TransKind kind);
// the auxiliary (tl; G, K) form of the ms-calculus translation
LamTermPtr semi_cgps_ljms(const ljms::TermPtr& cut_term, const LamTermPtr& G,
                          const LamTermPtr& K);

// translation image of a term for any kind (dispatches on kind)
LamTermPtr translate_term(const ast::TermPtr& t, TransKind kind);

}  // namespace ljmse
