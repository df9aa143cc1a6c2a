#include "ljmse/type.hpp"

#include <functional>
#include <map>
#include <optional>

namespace ljmse {

TypePtr ty_var(Name name) { return std::make_shared<Type>(ty::Var{std::move(name)}); }
TypePtr ty_bottom() {
  static const TypePtr bot = std::make_shared<Type>(ty::Bottom{});
  return bot;
}
TypePtr ty_arrow(TypePtr dom, TypePtr cod) {
  return std::make_shared<Type>(ty::Arrow{std::move(dom), std::move(cod)});
}
TypePtr ty_forall(Name binder, TypePtr body) {
  return std::make_shared<Type>(ty::Forall{std::move(binder), std::move(body)});
}
TypePtr ty_neg(TypePtr a) { return ty_arrow(std::move(a), ty_bottom()); }
TypePtr ty_top() { return ty_arrow(ty_bottom(), ty_bottom()); }

bool is_arrow(const TypePtr& a) { return std::holds_alternative<ty::Arrow>(*a); }
bool is_forall(const TypePtr& a) { return std::holds_alternative<ty::Forall>(*a); }

std::set<Name> free_ty_vars(const TypePtr& a) {
  std::set<Name> out;
  std::function<void(const TypePtr&, std::set<Name>&)> go =
      [&](const TypePtr& t, std::set<Name>& bound) {
        if (auto* v = std::get_if<ty::Var>(t.get())) {
          if (!bound.count(v->name)) out.insert(v->name);
        } else if (auto* ar = std::get_if<ty::Arrow>(t.get())) {
          go(ar->dom, bound);
          go(ar->cod, bound);
        } else if (auto* fa = std::get_if<ty::Forall>(t.get())) {
          bool fresh = bound.insert(fa->binder).second;
          go(fa->body, bound);
          if (fresh) bound.erase(fa->binder);
        }
      };
  std::set<Name> bound;
  go(a, bound);
  return out;
}

namespace {

bool alpha_eq_rec(const TypePtr& a, const TypePtr& b, std::map<Name, int>& la,
                  std::map<Name, int>& lb, int depth) {
  if (auto* va = std::get_if<ty::Var>(a.get())) {
    auto* vb = std::get_if<ty::Var>(b.get());
    if (!vb) return false;
    auto ia = la.find(va->name);
    auto ib = lb.find(vb->name);
    if ((ia == la.end()) != (ib == lb.end())) return false;
    if (ia == la.end()) return va->name == vb->name;
    return ia->second == ib->second;
  }
  if (std::holds_alternative<ty::Bottom>(*a)) return std::holds_alternative<ty::Bottom>(*b);
  if (auto* aa = std::get_if<ty::Arrow>(a.get())) {
    auto* ab = std::get_if<ty::Arrow>(b.get());
    return ab && alpha_eq_rec(aa->dom, ab->dom, la, lb, depth) &&
           alpha_eq_rec(aa->cod, ab->cod, la, lb, depth);
  }
  auto* fa = std::get_if<ty::Forall>(a.get());
  auto* fb = std::get_if<ty::Forall>(b.get());
  if (!fa || !fb) return false;
  auto olda = la.find(fa->binder) == la.end() ? std::optional<int>{} : std::optional<int>{la[fa->binder]};
  auto oldb = lb.find(fb->binder) == lb.end() ? std::optional<int>{} : std::optional<int>{lb[fb->binder]};
  la[fa->binder] = depth;
  lb[fb->binder] = depth;
  bool ok = alpha_eq_rec(fa->body, fb->body, la, lb, depth + 1);
  if (olda) la[fa->binder] = *olda; else la.erase(fa->binder);
  if (oldb) lb[fb->binder] = *oldb; else lb.erase(fb->binder);
  return ok;
}

}  // namespace

bool type_alpha_eq(const TypePtr& a, const TypePtr& b) {
  if (a.get() == b.get()) return true;
  std::map<Name, int> la, lb;
  return alpha_eq_rec(a, b, la, lb, 0);
}

TypePtr ty_subst_type(const TypePtr& b, const Name& x, const TypePtr& a) {
  if (auto* v = std::get_if<ty::Var>(a.get())) {
    return v->name == x ? b : a;
  }
  if (std::holds_alternative<ty::Bottom>(*a)) return a;
  if (auto* ar = std::get_if<ty::Arrow>(a.get())) {
    TypePtr d = ty_subst_type(b, x, ar->dom);
    TypePtr c = ty_subst_type(b, x, ar->cod);
    if (d == ar->dom && c == ar->cod) return a;
    return ty_arrow(d, c);
  }
  const auto& fa = std::get<ty::Forall>(*a);
  if (fa.binder == x) return a;
  if (free_ty_vars(b).count(fa.binder) && free_ty_vars(fa.body).count(x)) {
    NameSupply supply(free_ty_vars(b));
    supply.reserve(free_ty_vars(fa.body));
    supply.reserve(x);
    Name fresh = supply.fresh(fa.binder);
    TypePtr renamed = ty_subst_type(ty_var(fresh), fa.binder, fa.body);
    return ty_forall(fresh, ty_subst_type(b, x, renamed));
  }
  return ty_forall(fa.binder, ty_subst_type(b, x, fa.body));
}

bool type_uses_forall(const TypePtr& a) {
  if (std::holds_alternative<ty::Forall>(*a)) return true;
  if (auto* ar = std::get_if<ty::Arrow>(a.get()))
    return type_uses_forall(ar->dom) || type_uses_forall(ar->cod);
  return false;
}

namespace {

// precedence: atoms > arrow (right assoc); forall extends to the right
void print_rec(const TypePtr& a, std::string& out, bool atom_pos) {
  if (auto* v = std::get_if<ty::Var>(a.get())) {
    out += v->name;
    return;
  }
  if (std::holds_alternative<ty::Bottom>(*a)) {
    out += "Bot";
    return;
  }
  if (auto* ar = std::get_if<ty::Arrow>(a.get())) {
    if (atom_pos) out += '(';
    print_rec(ar->dom, out, true);
    out += "->";
    print_rec(ar->cod, out, false);
    if (atom_pos) out += ')';
    return;
  }
  const auto& fa = std::get<ty::Forall>(*a);
  if (atom_pos) out += '(';
  out += "forall ";
  out += fa.binder;
  out += '.';
  print_rec(fa.body, out, false);
  if (atom_pos) out += ')';
}

}  // namespace

std::string print_type(const TypePtr& a) {
  std::string out;
  print_rec(a, out, false);
  return out;
}

}  // namespace ljmse
