#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "ljmse/names.hpp"
#include "ljmse/reduction.hpp"
#include "ljmse/syntax.hpp"
#include "ljmse/typing.hpp"

namespace ljmse {

// The spectrum below the full sequent calculus. Each calculus is sealed in
// its own namespace so cross-calculus mixing is impossible by construction:
//   lam : t ::= x | \x.t | t u                 (beta)
//   lj  : t ::= x | \x.t | t(u,x.v)            (beta, pi)
//   ljm : t ::= x | \x.t | t(u,l)              (beta1, beta2, pi, mu)
//         l ::= u::l | (x)v
//   ljms: t ::= x | \x.t | tl                  (beta, pi, sigma, mu)
//         l ::= u::l | (x)v

namespace lam {
struct Term;
using TermPtr = std::shared_ptr<const Term>;
struct Var { Name name; };
struct Abs { Name binder; TermPtr body; };
struct App { TermPtr fn; TermPtr arg; };
struct Term : std::variant<Var, Abs, App> { using variant::variant; };
TermPtr var(Name n);
TermPtr abs(Name x, TermPtr b);
TermPtr app(TermPtr f, TermPtr a);
}  // namespace lam

namespace lj {
struct Term;
using TermPtr = std::shared_ptr<const Term>;
struct Var { Name name; };
struct Abs { Name binder; TermPtr body; };
// t(u, x.v) — generalised application
struct GApp { TermPtr fn; TermPtr arg; Name binder; TermPtr body; };
struct Term : std::variant<Var, Abs, GApp> { using variant::variant; };
TermPtr var(Name n);
TermPtr abs(Name x, TermPtr b);
TermPtr gapp(TermPtr f, TermPtr u, Name x, TermPtr v);
// generalised argument (u, x.v): the R and S of the pi rule
struct GenArg { TermPtr arg; Name binder; TermPtr body; };
}  // namespace lj

namespace ljm {
struct Term;
struct CoTerm;
using TermPtr = std::shared_ptr<const Term>;
using CoTermPtr = std::shared_ptr<const CoTerm>;
struct Var { Name name; };
struct Abs { Name binder; TermPtr body; };
struct GMApp { TermPtr fn; TermPtr arg; CoTermPtr rest; };  // t(u,l)
struct ConsM { TermPtr head; CoTermPtr tail; };
struct SelM { Name binder; TermPtr body; };
struct Term : std::variant<Var, Abs, GMApp> { using variant::variant; };
struct CoTerm : std::variant<ConsM, SelM> { using variant::variant; };
TermPtr var(Name n);
TermPtr abs(Name x, TermPtr b);
TermPtr gmapp(TermPtr f, TermPtr u, CoTermPtr l);
CoTermPtr cons(TermPtr u, CoTermPtr l);
CoTermPtr sel(Name x, TermPtr v);
struct GenArg { TermPtr arg; CoTermPtr rest; };  // (u, l)
}  // namespace ljm

namespace ljms {
struct Term;
struct CoTerm;
using TermPtr = std::shared_ptr<const Term>;
using CoTermPtr = std::shared_ptr<const CoTerm>;
struct Var { Name name; };
struct Abs { Name binder; TermPtr body; };
struct CutS { TermPtr head; CoTermPtr rest; };  // tl
struct ConsS { TermPtr head; CoTermPtr tail; };
struct SelS { Name binder; TermPtr body; };
struct Term : std::variant<Var, Abs, CutS> { using variant::variant; };
struct CoTerm : std::variant<ConsS, SelS> { using variant::variant; };
TermPtr var(Name n);
TermPtr abs(Name x, TermPtr b);
TermPtr cut(TermPtr t, CoTermPtr l);
CoTermPtr cons(TermPtr u, CoTermPtr l);
CoTermPtr sel(Name x, TermPtr v);
}  // namespace ljms

enum class Calc { Lam, LJ, LJm, LJms, LJmse };
const char* calc_name(Calc c);
std::optional<Calc> calc_from_name(const std::string& s);

// A term of any subsystem calculus (the full calculus lives in ast::).
using SpecTerm = std::variant<lam::TermPtr, lj::TermPtr, ljm::TermPtr, ljms::TermPtr>;
Calc calc_of(const SpecTerm& t);

// --- per-calculus operations (free variables, substitution, alpha) --------

std::set<Name> free_vars(const lam::TermPtr& t);
std::set<Name> free_vars(const lj::TermPtr& t);
std::set<Name> free_vars(const ljm::TermPtr& t);
std::set<Name> free_vars(const ljm::CoTermPtr& l);
std::set<Name> free_vars(const ljms::TermPtr& t);
std::set<Name> free_vars(const ljms::CoTermPtr& l);

lam::TermPtr subst(const lam::TermPtr& t, const Name& x, const lam::TermPtr& body);
lj::TermPtr subst(const lj::TermPtr& t, const Name& x, const lj::TermPtr& body);
ljm::TermPtr subst(const ljm::TermPtr& t, const Name& x, const ljm::TermPtr& body);
ljm::CoTermPtr subst(const ljm::TermPtr& t, const Name& x, const ljm::CoTermPtr& body);
ljms::TermPtr subst(const ljms::TermPtr& t, const Name& x, const ljms::TermPtr& body);
ljms::CoTermPtr subst(const ljms::TermPtr& t, const Name& x, const ljms::CoTermPtr& body);

std::string canonical_key(const SpecTerm& t);
bool alpha_eq_spec(const SpecTerm& a, const SpecTerm& b);
// every variable name occurring, free or bound
std::set<Name> spec_all_names(const SpecTerm& t);

// --- append (eager) and reduction ------------------------------------------

lj::GenArg append_spec(const lj::GenArg& r, const lj::GenArg& s);
ljm::CoTermPtr append_spec(const ljm::CoTermPtr& l, const ljm::GenArg& s);
ljm::GenArg append_spec(const ljm::GenArg& r, const ljm::GenArg& s);
ljms::CoTermPtr append_spec(const ljms::CoTermPtr& l, const ljms::CoTermPtr& l2);

struct SpecStep {
  RuleName rule;
  Pos pos;
  SpecTerm to;
};

// complete one-step enumeration under the calculus' eager rules
std::vector<SpecStep> step_spec(const SpecTerm& t);
// pi-hat enumeration (lj and ljm only): the lazy variant of pi
std::vector<SpecStep> step_lazy_pi(const SpecTerm& t);
// enumeration with pi replaced by pi-hat (for beta/pihat/mu searches)
std::vector<SpecStep> step_spec_lazy(const SpecTerm& t);

// pi-normal form, computed structurally with a very eager application
lj::TermPtr pi_nf(const lj::TermPtr& t);
ljm::TermPtr pi_nf(const ljm::TermPtr& t);

// bounded reachability in a subsystem calculus
struct SpecReach {
  bool found = false;
  std::size_t path_len = 0;
  std::size_t nodes_explored = 0;
  bool exhausted = false;
};
enum class StepKind { Eager, Lazy };
SpecReach reach_spec(const SpecTerm& from, const SpecTerm& to, ReachMode mode,
                     std::size_t node_cap = 50000, std::size_t depth_cap = 200,
                     StepKind kind = StepKind::Eager,
                     const std::set<RuleName>* rules = nullptr);

// --- embeddings and interpretation maps ------------------------------------

lj::TermPtr embed_J(const lam::TermPtr& t);
ljm::TermPtr embed_m(const lj::TermPtr& t);
ljms::TermPtr embed_s(const ljm::TermPtr& t);
ljms::CoTermPtr embed_s(const ljm::CoTermPtr& l);
ast::TermPtr embed_e(const ljms::TermPtr& t);
ast::CoTermPtr embed_e(const ljms::CoTermPtr& l);
// embedding of a subsystem calculus into the full calculus (g_L)
ast::TermPtr embed_full(const SpecTerm& t);

// sharp: executes explicit substitutions, ljms -> ljm
ljm::TermPtr map_sharp(const ljms::TermPtr& t);
ljm::CoTermPtr map_sharp(const ljms::CoTermPtr& l);
// circ: the full calculus embedded back into ljms
ljms::TermPtr map_circ(const ast::TermPtr& t);
ljms::TermPtr map_circ(const ast::CommandPtr& c);
ljms::CoTermPtr map_circ(const ast::CoTermPtr& l);
// mu-normalisation of the full calculus
ast::Expr mu_nf(const ast::Expr& e);

// --- typing (figures of the subsystem type systems) ------------------------

TypeResult infer_spec(const Ctx& ctx, const SpecTerm& t);
CheckResult check_spec(const Ctx& ctx, const SpecTerm& t, const TypePtr& type);

// --- surface syntax ---------------------------------------------------------

std::string print_spec(const SpecTerm& t);
SpecTerm parse_spec(const std::string& src, Calc calc);

std::size_t spec_size(const SpecTerm& t);

}  // namespace ljmse
