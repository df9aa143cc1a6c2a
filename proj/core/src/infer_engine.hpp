#pragma once

// Shared first-order unification engine with metavariables, rank-scoped
// skolems and structural forall. Backs typing for the source calculi, the
// subsystem calculi and the translation target. Internal to the library.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ljmse/names.hpp"
#include "ljmse/type.hpp"
#include "ljmse/typing.hpp"

namespace ljmse::infer {

class Engine {
 public:
  using Ref = int;

  Ref meta();
  Ref named(const Name& n);
  Ref rigid(const Name& display);
  Ref bottom();
  Ref arrow(Ref dom, Ref cod);

  // convert a user type; tyenv maps in-scope bound type variables
  Ref of_type(const TypePtr& a, const std::map<Name, Ref>& tyenv);
  Ref of_type(const TypePtr& a) { return of_type(a, {}); }

  // instantiate a forall node with an argument; error if not a forall
  bool is_forall(Ref r);
  Ref open_forall(Ref forall_ref, Ref arg);
  // wrap body as forall, abstracting every occurrence of the given rigid
  Ref close_forall(const Name& display, Ref rigid_ref, Ref body);

  bool is_arrow(Ref r);
  Ref arrow_dom(Ref r);
  Ref arrow_cod(Ref r);
  bool is_meta(Ref r);

  // force a meta to an arrow of fresh metas (returns false on occurs/rank)
  bool force_arrow(Ref r);

  void push_rank() { ++rank_; }
  void pop_rank() { --rank_; }

  bool unify(Ref a, Ref b);
  // set when unify/solve failed; cleared by consuming
  std::optional<TypeError> take_error();

  // readback; unsolved metas become fresh names from the supply
  TypePtr to_type(Ref r, NameSupply& supply);
  std::string show(Ref r);

 private:
  enum class K { Meta, Link, Named, Rigid, Bound, Bot, Arr, All };
  struct Node {
    K k;
    int rank = 0;      // Meta, Rigid
    int id = 0;        // Rigid/Bound identity; All: bound id
    Name name;         // Named / Rigid / All display
    Ref a = -1, b = -1;  // Arr: dom/cod; All: body (b); Link: target (a)
  };

  std::vector<Node> nodes_;
  int rank_ = 0;
  int next_id_ = 0;
  std::optional<TypeError> error_;
  std::map<int, TypePtr> meta_names_;  // readback memo (per to_type call group)

  Ref add(Node n);
  Ref find(Ref r);
  bool occurs_adjust(Ref meta_ref, int max_rank, Ref r);
  Ref subst_bound(Ref body, int bound_id, Ref arg);
  Ref subst_rigid(Ref body, int rigid_id, Ref arg);
  void set_error(TypeError::Reason reason, std::string detail);
  TypePtr to_type_rec(Ref r, NameSupply& supply, std::map<int, Name>& bound_names);
};

}  // namespace ljmse::infer
