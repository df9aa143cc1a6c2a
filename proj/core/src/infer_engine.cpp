#include "infer_engine.hpp"

namespace ljmse::infer {

Engine::Ref Engine::add(Node n) {
  nodes_.push_back(std::move(n));
  return static_cast<Ref>(nodes_.size() - 1);
}

Engine::Ref Engine::meta() { return add({K::Meta, rank_, next_id_++, {}, -1, -1}); }
Engine::Ref Engine::named(const Name& n) { return add({K::Named, 0, 0, n, -1, -1}); }
Engine::Ref Engine::rigid(const Name& display) {
  return add({K::Rigid, rank_, next_id_++, display, -1, -1});
}
Engine::Ref Engine::bottom() { return add({K::Bot, 0, 0, {}, -1, -1}); }
Engine::Ref Engine::arrow(Ref dom, Ref cod) { return add({K::Arr, 0, 0, {}, dom, cod}); }

Engine::Ref Engine::find(Ref r) {
  while (nodes_[r].k == K::Link) r = nodes_[r].a;
  return r;
}

Engine::Ref Engine::of_type(const TypePtr& a, const std::map<Name, Ref>& tyenv) {
  if (auto* v = std::get_if<ty::Var>(a.get())) {
    auto it = tyenv.find(v->name);
    return it != tyenv.end() ? it->second : named(v->name);
  }
  if (std::holds_alternative<ty::Bottom>(*a)) return bottom();
  if (auto* ar = std::get_if<ty::Arrow>(a.get()))
    return arrow(of_type(ar->dom, tyenv), of_type(ar->cod, tyenv));
  const auto& fa = std::get<ty::Forall>(*a);
  int bid = next_id_++;
  Ref bound = add({K::Bound, 0, bid, fa.binder, -1, -1});
  std::map<Name, Ref> inner = tyenv;
  inner[fa.binder] = bound;
  Ref body = of_type(fa.body, inner);
  return add({K::All, 0, bid, fa.binder, -1, body});
}

bool Engine::is_forall(Ref r) { return nodes_[find(r)].k == K::All; }
bool Engine::is_arrow(Ref r) { return nodes_[find(r)].k == K::Arr; }
bool Engine::is_meta(Ref r) { return nodes_[find(r)].k == K::Meta; }
Engine::Ref Engine::arrow_dom(Ref r) { return nodes_[find(r)].a; }
Engine::Ref Engine::arrow_cod(Ref r) { return nodes_[find(r)].b; }

bool Engine::force_arrow(Ref r) {
  r = find(r);
  if (nodes_[r].k == K::Arr) return true;
  if (nodes_[r].k != K::Meta) return false;
  Ref d = add({K::Meta, nodes_[r].rank, next_id_++, {}, -1, -1});
  Ref c = add({K::Meta, nodes_[r].rank, next_id_++, {}, -1, -1});
  Ref ar = arrow(d, c);
  nodes_[r] = {K::Link, 0, 0, {}, ar, -1};
  return true;
}

Engine::Ref Engine::subst_bound(Ref body, int bound_id, Ref arg) {
  Ref r = find(body);
  const Node& n = nodes_[r];
  switch (n.k) {
    case K::Bound:
      return n.id == bound_id ? arg : r;
    case K::Arr: {
      Ref d = subst_bound(n.a, bound_id, arg);
      Ref c = subst_bound(n.b, bound_id, arg);
      if (d == find(n.a) && c == find(n.b)) return r;
      return arrow(d, c);
    }
    case K::All: {
      Ref b = subst_bound(n.b, bound_id, arg);
      Node copy = nodes_[r];
      if (b == find(copy.b)) return r;
      copy.b = b;
      return add(copy);
    }
    default:
      return r;
  }
}

Engine::Ref Engine::subst_rigid(Ref body, int rigid_id, Ref arg) {
  Ref r = find(body);
  const Node& n = nodes_[r];
  switch (n.k) {
    case K::Rigid:
      return n.id == rigid_id ? arg : r;
    case K::Arr: {
      Ref d = subst_rigid(n.a, rigid_id, arg);
      Ref c = subst_rigid(n.b, rigid_id, arg);
      if (d == find(n.a) && c == find(n.b)) return r;
      return arrow(d, c);
    }
    case K::All: {
      Ref b = subst_rigid(n.b, rigid_id, arg);
      Node copy = nodes_[r];
      if (b == find(copy.b)) return r;
      copy.b = b;
      return add(copy);
    }
    default:
      return r;
  }
}

Engine::Ref Engine::open_forall(Ref forall_ref, Ref arg) {
  Ref r = find(forall_ref);
  return subst_bound(nodes_[r].b, nodes_[r].id, arg);
}

Engine::Ref Engine::close_forall(const Name& display, Ref rigid_ref, Ref body) {
  int bid = next_id_++;
  Ref bound = add({K::Bound, 0, bid, display, -1, -1});
  Ref newbody = subst_rigid(body, nodes_[find(rigid_ref)].id, bound);
  return add({K::All, 0, bid, display, -1, newbody});
}

void Engine::set_error(TypeError::Reason reason, std::string detail) {
  if (!error_) error_ = TypeError{reason, {}, std::move(detail)};
}

std::optional<TypeError> Engine::take_error() {
  auto e = error_;
  error_.reset();
  return e;
}

bool Engine::occurs_adjust(Ref meta_ref, int max_rank, Ref r) {
  r = find(r);
  Node& n = nodes_[r];
  switch (n.k) {
    case K::Meta:
      if (r == meta_ref) {
        set_error(TypeError::Reason::Occurs, "occurs check failed");
        return false;
      }
      if (n.rank > max_rank) n.rank = max_rank;
      return true;
    case K::Rigid:
      if (n.rank > max_rank) {
        set_error(TypeError::Reason::Clash,
                  "type variable " + n.name + " would escape its scope");
        return false;
      }
      return true;
    case K::Arr:
      return occurs_adjust(meta_ref, max_rank, n.a) && occurs_adjust(meta_ref, max_rank, n.b);
    case K::All:
      return occurs_adjust(meta_ref, max_rank, n.b);
    default:
      return true;
  }
}

bool Engine::unify(Ref a, Ref b) {
  a = find(a);
  b = find(b);
  if (a == b) return true;
  Node& na = nodes_[a];
  Node& nb = nodes_[b];

  if (na.k == K::Meta || nb.k == K::Meta) {
    if (na.k == K::Meta && nb.k == K::Meta) {
      // keep the lower rank
      if (na.rank < nb.rank) {
        nodes_[b] = {K::Link, 0, 0, {}, a, -1};
      } else {
        nodes_[a] = {K::Link, 0, 0, {}, b, -1};
      }
      return true;
    }
    Ref m = na.k == K::Meta ? a : b;
    Ref t = na.k == K::Meta ? b : a;
    if (!occurs_adjust(m, nodes_[m].rank, t)) return false;
    nodes_[m] = {K::Link, 0, 0, {}, t, -1};
    return true;
  }

  if (na.k != nb.k) {
    set_error(TypeError::Reason::Clash, "cannot unify " + show(a) + " with " + show(b));
    return false;
  }
  switch (na.k) {
    case K::Bot:
      return true;
    case K::Named:
      if (na.name == nb.name) return true;
      set_error(TypeError::Reason::Clash,
                "type variable mismatch: " + na.name + " vs " + nb.name);
      return false;
    case K::Rigid:
      if (na.id == nb.id) return true;
      set_error(TypeError::Reason::Clash, "distinct abstract types " + na.name + " / " + nb.name);
      return false;
    case K::Arr: {
      Ref a1 = na.a, a2 = na.b, b1 = nb.a, b2 = nb.b;
      return unify(a1, b1) && unify(a2, b2);
    }
    case K::All: {
      push_rank();
      Ref fresh = rigid(na.name);
      Ref ba = open_forall(a, fresh);
      Ref bb = open_forall(b, fresh);
      bool ok = unify(ba, bb);
      pop_rank();
      return ok;
    }
    default:
      set_error(TypeError::Reason::Clash, "cannot unify bound type variables");
      return false;
  }
}

TypePtr Engine::to_type_rec(Ref r, NameSupply& supply, std::map<int, Name>& bound_names) {
  r = find(r);
  const Node& n = nodes_[r];
  switch (n.k) {
    case K::Meta: {
      auto it = meta_names_.find(n.id);
      if (it != meta_names_.end()) return it->second;
      TypePtr fresh = ty_var(supply.fresh("A"));
      meta_names_.emplace(n.id, fresh);
      return fresh;
    }
    case K::Named:
      return ty_var(n.name);
    case K::Rigid:
      return ty_var(n.name + "#" + std::to_string(n.id));
    case K::Bound: {
      auto it = bound_names.find(n.id);
      return ty_var(it != bound_names.end() ? it->second : n.name);
    }
    case K::Bot:
      return ty_bottom();
    case K::Arr:
      return ty_arrow(to_type_rec(n.a, supply, bound_names),
                      to_type_rec(n.b, supply, bound_names));
    case K::All: {
      Name display = supply.fresh(n.name);
      bound_names[n.id] = display;
      TypePtr body = to_type_rec(n.b, supply, bound_names);
      bound_names.erase(n.id);
      return ty_forall(display, body);
    }
    default:
      return ty_bottom();  // unreachable
  }
}

TypePtr Engine::to_type(Ref r, NameSupply& supply) {
  std::map<int, Name> bound_names;
  return to_type_rec(r, supply, bound_names);
}

std::string Engine::show(Ref r) {
  NameSupply supply;
  return print_type(to_type(r, supply));
}

}  // namespace ljmse::infer
