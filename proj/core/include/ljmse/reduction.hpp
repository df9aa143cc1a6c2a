#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ljmse/syntax.hpp"

namespace ljmse {

// Beta1 and PiHat belong to the subsystem calculi (beta1/beta2 split of the
// multiary system, lazy pi); Beta2 doubles as the second-order rule here.
enum class RuleName { Beta, Pi, Sigma, Mu, Eps, Beta2, Beta1, PiHat };

const char* rule_name(RuleName r);
std::optional<RuleName> rule_from_name(const std::string& s);

using RuleSet = std::set<RuleName>;
RuleSet full_rules(Level level = Level::Second);

// Child indexing for positions: Lam/TyLam/Ann/Coerce/Sel -> 0; Cut t=0 l=1;
// Cons head=0 tail=1; TyCons tail=1.
using Pos = std::vector<int>;

struct Step {
  RuleName rule;
  Pos pos;
  ast::Expr from;  // whole expression the step starts at
  ast::Expr to;    // whole reduct
};

struct Trace {
  ast::Expr initial;
  std::vector<Step> steps;
  enum class Status { Normal, BoundExhausted } status = Status::Normal;

  const ast::Expr& final_expr() const {
    return steps.empty() ? initial : steps.back().to;
  }
};

// all contractions available at the root of T, per T's syntactic class
std::vector<std::pair<RuleName, ast::Expr>> root_step(const ast::Expr& e);

// complete one-step enumeration (term closure of the rules), pre-order:
// root steps first, then children left to right
std::vector<Step> all_steps(const ast::Expr& e);
std::vector<Step> all_steps(const ast::Expr& e, const RuleSet& rules);

// fetch the subexpression at a position / replace it (for soundness checks)
ast::Expr subexpr_at(const ast::Expr& e, const Pos& pos);
ast::Expr replace_at(const ast::Expr& e, const Pos& pos, const ast::Expr& repl);

enum class Strategy { Leftmost, Random };

Trace normalize(const ast::Expr& e, Strategy strategy, std::size_t max_steps,
                std::uint64_t seed = 0);

// rules = {beta,pi,sigma} and {beta,pi,sigma,eps} use the structural
// normal-form characterizations; any other set falls back to all_steps
bool is_normal(const ast::Expr& e, const RuleSet& rules);

struct CriticalPeak {
  std::string family;  // "pi-pi", "pi-beta", "pi-sigma", "pi-eps-ctx", "pi-eps-nil",
                       // "mu-sigma-subst", "mu-sigma-sel"
  ast::Expr expr;
  Step left;
  Step right;
};

// concrete instances of the five overlap families, seeded
std::vector<CriticalPeak> critical_peaks(int depth, std::uint64_t seed);

// bounded joinability: do both reducts reach a common expression within
// max_steps of search? Tries shared normal forms first, then a BFS meet.
struct JoinResult {
  bool joined = false;
  std::size_t steps_used = 0;  // max depth explored on success
  ast::Expr meet;              // the common reduct when joined
};
JoinResult join_within(const ast::Expr& a, const ast::Expr& b, std::size_t max_steps,
                       std::size_t node_cap = 20000);

}  // namespace ljmse
