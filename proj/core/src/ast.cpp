#include "resdist/ast.hpp"

#include <algorithm>

#include "resdist/error.hpp"

namespace resdist {

namespace mk {

AExp var(std::string name) { return std::make_shared<AExpNode>(AExpNode{AExpNode::Var{std::move(name)}}); }
AExp cint(Int value) { return std::make_shared<AExpNode>(AExpNode{AExpNode::Const{std::move(value)}}); }
AExp abin(AOp op, AExp l, AExp r) {
  return std::make_shared<AExpNode>(AExpNode{AExpNode::Bin{op, std::move(l), std::move(r)}});
}

BExp btrue() { static BExp t = std::make_shared<BExpNode>(BExpNode{BExpNode::True{}}); return t; }
BExp bfalse() { static BExp f = std::make_shared<BExpNode>(BExpNode{BExpNode::False{}}); return f; }
BExp eq(AExp l, Exp r) { return std::make_shared<BExpNode>(BExpNode{BExpNode::Eq{std::move(l), std::move(r)}}); }
BExp eq_a(AExp l, AExp r) { return eq(std::move(l), a(std::move(r))); }
BExp lt(AExp l, AExp r) { return std::make_shared<BExpNode>(BExpNode{BExpNode::Lt{std::move(l), std::move(r)}}); }
BExp le(AExp l, AExp r) { return std::make_shared<BExpNode>(BExpNode{BExpNode::Le{std::move(l), std::move(r)}}); }
BExp bnot(BExp b) { return std::make_shared<BExpNode>(BExpNode{BExpNode::Not{std::move(b)}}); }
BExp band(BExp l, BExp r) { return std::make_shared<BExpNode>(BExpNode{BExpNode::And{std::move(l), std::move(r)}}); }

Exp a(AExp e) { return std::make_shared<ExpNode>(ExpNode{ExpNode::A{std::move(e)}}); }
Exp call(std::string fname, std::vector<Exp> args) {
  return std::make_shared<ExpNode>(ExpNode{ExpNode::Call{std::move(fname), std::move(args)}});
}
Exp ife(BExp c, Exp t, Exp e) {
  return std::make_shared<ExpNode>(ExpNode{ExpNode::If{std::move(c), std::move(t), std::move(e)}});
}
Exp argdev(std::string var, Exp update, std::string count) {
  return std::make_shared<ExpNode>(ExpNode{ExpNode::ArgDev{std::move(var), std::move(update), std::move(count)}});
}

QExp i2r(AExp e) { return std::make_shared<QExpNode>(QExpNode{QExpNode::I2R{std::move(e)}}); }
QExp c(BExp b) { return std::make_shared<QExpNode>(QExpNode{QExpNode::C{std::move(b)}}); }
QExp qbin(QOp op, QExp l, QExp r) {
  return std::make_shared<QExpNode>(QExpNode{QExpNode::Bin{op, std::move(l), std::move(r)}});
}
QExp sum(std::string var, QExp body) {
  return std::make_shared<QExpNode>(QExpNode{QExpNode::Sum{std::move(var), std::move(body)}});
}
QExp prod(std::string var, QExp guard, QExp body) {
  return std::make_shared<QExpNode>(QExpNode{QExpNode::Prod{std::move(var), std::move(guard), std::move(body)}});
}
QExp callp(std::string pname, std::vector<AExp> args) {
  return std::make_shared<QExpNode>(QExpNode{QExpNode::CallP{std::move(pname), std::move(args)}});
}
QExp qconst(Rational v) { return std::make_shared<QExpNode>(QExpNode{QExpNode::ConstQ{std::move(v)}}); }

}  // namespace mk

const FuncDef* Program::find_func(const std::string& name) const {
  for (const auto& f : funcs)
    if (f.name == name) return &f;
  return nullptr;
}

const ProbDef* Program::find_prob(const std::string& name) const {
  for (const auto& p : probs)
    if (p.name == name) return &p;
  return nullptr;
}

// ---- equality ----

bool equal(const AExp& a, const AExp& b) {
  if (a.get() == b.get()) return true;
  if (a->v.index() != b->v.index()) return false;
  if (auto* va = as_var(a)) return va->name == as_var(b)->name;
  if (auto* ca = as_cint(a)) return ca->value == as_cint(b)->value;
  auto* ba = as_bin(a);
  auto* bb = as_bin(b);
  return ba->op == bb->op && equal(ba->lhs, bb->lhs) && equal(ba->rhs, bb->rhs);
}

bool equal(const BExp& a, const BExp& b) {
  if (a.get() == b.get()) return true;
  if (a->v.index() != b->v.index()) return false;
  if (std::holds_alternative<BExpNode::True>(a->v)) return true;
  if (std::holds_alternative<BExpNode::False>(a->v)) return true;
  if (auto* ea = std::get_if<BExpNode::Eq>(&a->v)) {
    auto* eb = std::get_if<BExpNode::Eq>(&b->v);
    return equal(ea->lhs, eb->lhs) && equal(ea->rhs, eb->rhs);
  }
  if (auto* la = std::get_if<BExpNode::Lt>(&a->v)) {
    auto* lb = std::get_if<BExpNode::Lt>(&b->v);
    return equal(la->lhs, lb->lhs) && equal(la->rhs, lb->rhs);
  }
  if (auto* la = std::get_if<BExpNode::Le>(&a->v)) {
    auto* lb = std::get_if<BExpNode::Le>(&b->v);
    return equal(la->lhs, lb->lhs) && equal(la->rhs, lb->rhs);
  }
  if (auto* na = std::get_if<BExpNode::Not>(&a->v))
    return equal(na->inner, std::get_if<BExpNode::Not>(&b->v)->inner);
  auto* aa = std::get_if<BExpNode::And>(&a->v);
  auto* ab = std::get_if<BExpNode::And>(&b->v);
  return equal(aa->lhs, ab->lhs) && equal(aa->rhs, ab->rhs);
}

bool equal(const Exp& a, const Exp& b) {
  if (a.get() == b.get()) return true;
  if (a->v.index() != b->v.index()) return false;
  if (auto* aa = as_a(a)) return equal(aa->a, as_a(b)->a);
  if (auto* ca = as_call(a)) {
    auto* cb = as_call(b);
    if (ca->fname != cb->fname || ca->args.size() != cb->args.size()) return false;
    for (size_t i = 0; i < ca->args.size(); ++i)
      if (!equal(ca->args[i], cb->args[i])) return false;
    return true;
  }
  if (auto* ia = as_if(a)) {
    auto* ib = as_if(b);
    return equal(ia->cond, ib->cond) && equal(ia->then_e, ib->then_e) && equal(ia->else_e, ib->else_e);
  }
  auto* da = as_argdev(a);
  auto* db = as_argdev(b);
  return da->var == db->var && da->count == db->count && equal(da->update, db->update);
}

bool equal(const QExp& a, const QExp& b) {
  if (a.get() == b.get()) return true;
  if (a->v.index() != b->v.index()) return false;
  if (auto* ia = as_i2r(a)) return equal(ia->a, as_i2r(b)->a);
  if (auto* ca = as_c(a)) return equal(ca->b, as_c(b)->b);
  if (auto* ba = as_qbin(a)) {
    auto* bb = as_qbin(b);
    return ba->op == bb->op && equal(ba->lhs, bb->lhs) && equal(ba->rhs, bb->rhs);
  }
  if (auto* sa = as_sum(a)) {
    auto* sb = as_sum(b);
    return sa->var == sb->var && equal(sa->body, sb->body);
  }
  if (auto* pa = as_prod(a)) {
    auto* pb = as_prod(b);
    return pa->var == pb->var && equal(pa->guard, pb->guard) && equal(pa->body, pb->body);
  }
  if (auto* ca = as_callp(a)) {
    auto* cb = as_callp(b);
    if (ca->pname != cb->pname || ca->args.size() != cb->args.size()) return false;
    for (size_t i = 0; i < ca->args.size(); ++i)
      if (!equal(ca->args[i], cb->args[i])) return false;
    return true;
  }
  return as_qconst(a)->value == as_qconst(b)->value;
}

// ---- free variables ----

namespace {

void fv(const AExp& e, NameSet& out) {
  if (auto* v = as_var(e)) { out.insert(v->name); return; }
  if (as_cint(e)) return;
  auto* b = as_bin(e);
  fv(b->lhs, out);
  fv(b->rhs, out);
}

void fv(const Exp& e, NameSet& out);

void fv(const BExp& e, NameSet& out) {
  if (auto* q = std::get_if<BExpNode::Eq>(&e->v)) { fv(q->lhs, out); fv(q->rhs, out); return; }
  if (auto* l = std::get_if<BExpNode::Lt>(&e->v)) { fv(l->lhs, out); fv(l->rhs, out); return; }
  if (auto* l = std::get_if<BExpNode::Le>(&e->v)) { fv(l->lhs, out); fv(l->rhs, out); return; }
  if (auto* n = std::get_if<BExpNode::Not>(&e->v)) { fv(n->inner, out); return; }
  if (auto* a = std::get_if<BExpNode::And>(&e->v)) { fv(a->lhs, out); fv(a->rhs, out); return; }
}

void fv(const Exp& e, NameSet& out) {
  if (auto* a = as_a(e)) { fv(a->a, out); return; }
  if (auto* c = as_call(e)) {
    for (const auto& arg : c->args) fv(arg, out);
    return;
  }
  if (auto* i = as_if(e)) { fv(i->cond, out); fv(i->then_e, out); fv(i->else_e, out); return; }
  auto* d = as_argdev(e);
  out.insert(d->var);
  out.insert(d->count);
  fv(d->update, out);
}

void fv(const QExp& e, NameSet& out) {
  if (auto* i = as_i2r(e)) { fv(i->a, out); return; }
  if (auto* c = as_c(e)) { fv(c->b, out); return; }
  if (auto* b = as_qbin(e)) { fv(b->lhs, out); fv(b->rhs, out); return; }
  if (auto* s = as_sum(e)) {
    NameSet inner;
    fv(s->body, inner);
    inner.erase(s->var);
    out.insert(inner.begin(), inner.end());
    return;
  }
  if (auto* p = as_prod(e)) {
    NameSet inner;
    fv(p->guard, inner);
    fv(p->body, inner);
    inner.erase(p->var);
    out.insert(inner.begin(), inner.end());
    return;
  }
  if (auto* c = as_callp(e)) {
    for (const auto& arg : c->args) fv(arg, out);
    return;
  }
}

}  // namespace

NameSet free_vars(const AExp& e) { NameSet s; fv(e, s); return s; }
NameSet free_vars(const BExp& e) { NameSet s; fv(e, s); return s; }
NameSet free_vars(const Exp& e) { NameSet s; fv(e, s); return s; }
NameSet free_vars(const QExp& e) { NameSet s; fv(e, s); return s; }

bool occurs_free(const std::string& name, const QExp& e) { return free_vars(e).count(name) > 0; }
bool occurs_free(const std::string& name, const AExp& e) { return free_vars(e).count(name) > 0; }

void collect_names(const Exp& e, NameSet& out) {
  if (auto* a = as_a(e)) { fv(a->a, out); return; }
  if (auto* c = as_call(e)) {
    out.insert(c->fname);
    for (const auto& arg : c->args) collect_names(arg, out);
    return;
  }
  if (auto* i = as_if(e)) {
    fv(i->cond, out);  // bexps bind nothing
    collect_names(i->then_e, out);
    collect_names(i->else_e, out);
    return;
  }
  auto* d = as_argdev(e);
  out.insert(d->var);
  out.insert(d->count);
  collect_names(d->update, out);
}

void collect_names(const QExp& e, NameSet& out) {
  if (auto* i = as_i2r(e)) { fv(i->a, out); return; }
  if (auto* c = as_c(e)) {
    if (auto* q = std::get_if<BExpNode::Eq>(&c->b->v)) {
      fv(q->lhs, out);
      collect_names(q->rhs, out);
    } else {
      fv(c->b, out);
    }
    return;
  }
  if (auto* b = as_qbin(e)) { collect_names(b->lhs, out); collect_names(b->rhs, out); return; }
  if (auto* s = as_sum(e)) { out.insert(s->var); collect_names(s->body, out); return; }
  if (auto* p = as_prod(e)) {
    out.insert(p->var);
    collect_names(p->guard, out);
    collect_names(p->body, out);
    return;
  }
  if (auto* c = as_callp(e)) {
    out.insert(c->pname);
    for (const auto& arg : c->args) fv(arg, out);
    return;
  }
}

NameSet all_names(const Program& p) {
  NameSet out;
  for (const auto& f : p.funcs) {
    out.insert(f.name);
    out.insert(f.params.begin(), f.params.end());
    collect_names(f.body, out);
  }
  for (const auto& d : p.probs) {
    out.insert(d.name);
    out.insert(d.params.begin(), d.params.end());
    collect_names(d.body, out);
  }
  out.insert(p.params.begin(), p.params.end());
  return out;
}

std::string fresh_name(const std::string& base, NameSet& avoid) {
  if (!avoid.count(base)) {
    avoid.insert(base);
    return base;
  }
  for (int i = 1;; ++i) {
    std::string cand = base + std::to_string(i);
    if (!avoid.count(cand)) {
      avoid.insert(cand);
      return cand;
    }
  }
}

// ---- substitution ----

namespace {

AExp subst_a(const AExp& e, const Subst& s) {
  if (auto* v = as_var(e)) {
    auto it = s.find(v->name);
    if (it == s.end()) return e;
    AExp rep = exp_as_aexp(it->second);
    if (!rep) fail(ErrKind::Internal, "substituting non-arithmetic expression for '" + v->name + "' in arithmetic position");
    return rep;
  }
  if (as_cint(e)) return e;
  auto* b = as_bin(e);
  return mk::abin(b->op, subst_a(b->lhs, s), subst_a(b->rhs, s));
}

Exp subst_e(const Exp& e, const Subst& s);

BExp subst_b(const BExp& e, const Subst& s) {
  if (auto* q = std::get_if<BExpNode::Eq>(&e->v)) return mk::eq(subst_a(q->lhs, s), subst_e(q->rhs, s));
  if (auto* l = std::get_if<BExpNode::Lt>(&e->v)) return mk::lt(subst_a(l->lhs, s), subst_a(l->rhs, s));
  if (auto* l = std::get_if<BExpNode::Le>(&e->v)) return mk::le(subst_a(l->lhs, s), subst_a(l->rhs, s));
  if (auto* n = std::get_if<BExpNode::Not>(&e->v)) return mk::bnot(subst_b(n->inner, s));
  if (auto* a = std::get_if<BExpNode::And>(&e->v)) return mk::band(subst_b(a->lhs, s), subst_b(a->rhs, s));
  return e;  // True / False
}

std::string subst_name_slot(const std::string& name, const Subst& s) {
  auto it = s.find(name);
  if (it == s.end()) return name;
  if (auto a = exp_as_aexp(it->second))
    if (auto* v = as_var(a)) return v->name;
  fail(ErrKind::Internal, "substituting non-variable into argDev name slot '" + name + "'");
}

Exp subst_e(const Exp& e, const Subst& s) {
  if (auto* a = as_a(e)) return mk::a(subst_a(a->a, s));
  if (auto* c = as_call(e)) {
    std::vector<Exp> args;
    args.reserve(c->args.size());
    for (const auto& arg : c->args) args.push_back(subst_e(arg, s));
    return mk::call(c->fname, std::move(args));
  }
  if (auto* i = as_if(e))
    return mk::ife(subst_b(i->cond, s), subst_e(i->then_e, s), subst_e(i->else_e, s));
  auto* d = as_argdev(e);
  return mk::argdev(subst_name_slot(d->var, s), subst_e(d->update, s), subst_name_slot(d->count, s));
}

// Restricts s to names other than binder; returns the binder to use (renamed
// when a remaining binding would capture it) plus the effective substitution.
struct BinderPlan {
  std::string binder;
  Subst subst;
  bool trivial;  // no substitution applies under this binder
};

BinderPlan plan_binder(const std::string& binder, const Subst& s, const QExp& body,
                       const QExp* body2 = nullptr) {
  Subst inner;
  bool capture = false;
  for (const auto& [k, rep] : s) {
    if (k == binder) continue;
    inner[k] = rep;
  }
  // drop bindings whose variable does not occur; this keeps renaming rare
  for (auto it = inner.begin(); it != inner.end();) {
    bool occurs = occurs_free(it->first, body) || (body2 && occurs_free(it->first, *body2));
    if (!occurs) it = inner.erase(it);
    else ++it;
  }
  if (inner.empty()) return {binder, {}, true};
  for (const auto& [k, rep] : inner)
    if (free_vars(rep).count(binder)) { capture = true; break; }
  if (!capture) return {binder, std::move(inner), false};
  NameSet avoid;
  collect_names(body, avoid);
  if (body2) collect_names(*body2, avoid);
  for (const auto& [k, rep] : inner) {
    avoid.insert(k);
    auto fvs = free_vars(rep);
    avoid.insert(fvs.begin(), fvs.end());
  }
  std::string renamed = fresh_name(binder, avoid);
  inner[binder] = mk::evar(renamed);
  return {renamed, std::move(inner), false};
}

QExp subst_q(const QExp& e, const Subst& s) {
  if (auto* i = as_i2r(e)) return mk::i2r(subst_a(i->a, s));
  if (auto* c = as_c(e)) return mk::c(subst_b(c->b, s));
  if (auto* b = as_qbin(e)) return mk::qbin(b->op, subst_q(b->lhs, s), subst_q(b->rhs, s));
  if (auto* sm = as_sum(e)) {
    BinderPlan plan = plan_binder(sm->var, s, sm->body);
    if (plan.trivial) return e;
    return mk::sum(plan.binder, subst_q(sm->body, plan.subst));
  }
  if (auto* p = as_prod(e)) {
    BinderPlan plan = plan_binder(p->var, s, p->guard, &p->body);
    if (plan.trivial) return e;
    return mk::prod(plan.binder, subst_q(p->guard, plan.subst), subst_q(p->body, plan.subst));
  }
  if (auto* c = as_callp(e)) {
    std::vector<AExp> args;
    args.reserve(c->args.size());
    for (const auto& arg : c->args) args.push_back(subst_a(arg, s));
    return mk::callp(c->pname, std::move(args));
  }
  return e;  // ConstQ
}

}  // namespace

AExp substitute(const AExp& e, const Subst& s) { return s.empty() ? e : subst_a(e, s); }
BExp substitute(const BExp& e, const Subst& s) { return s.empty() ? e : subst_b(e, s); }
Exp substitute(const Exp& e, const Subst& s) { return s.empty() ? e : subst_e(e, s); }
QExp substitute(const QExp& e, const Subst& s) { return s.empty() ? e : subst_q(e, s); }

// ---- alpha equivalence ----

namespace {

struct AlphaCtx {
  std::map<std::string, int> left, right;
  int depth = 0;

  bool same_var(const std::string& a, const std::string& b) const {
    auto la = left.find(a);
    auto rb = right.find(b);
    if (la != left.end() || rb != right.end())
      return la != left.end() && rb != right.end() && la->second == rb->second;
    return a == b;
  }
};

bool alpha_a(const AExp& a, const AExp& b, const AlphaCtx& ctx) {
  if (a->v.index() != b->v.index()) return false;
  if (auto* va = as_var(a)) return ctx.same_var(va->name, as_var(b)->name);
  if (auto* ca = as_cint(a)) return ca->value == as_cint(b)->value;
  auto* ba = as_bin(a);
  auto* bb = as_bin(b);
  return ba->op == bb->op && alpha_a(ba->lhs, bb->lhs, ctx) && alpha_a(ba->rhs, bb->rhs, ctx);
}

bool alpha_e(const Exp& a, const Exp& b, const AlphaCtx& ctx);

bool alpha_b(const BExp& a, const BExp& b, const AlphaCtx& ctx) {
  if (a->v.index() != b->v.index()) return false;
  if (auto* ea = std::get_if<BExpNode::Eq>(&a->v)) {
    auto* eb = std::get_if<BExpNode::Eq>(&b->v);
    return alpha_a(ea->lhs, eb->lhs, ctx) && alpha_e(ea->rhs, eb->rhs, ctx);
  }
  if (auto* la = std::get_if<BExpNode::Lt>(&a->v)) {
    auto* lb = std::get_if<BExpNode::Lt>(&b->v);
    return alpha_a(la->lhs, lb->lhs, ctx) && alpha_a(la->rhs, lb->rhs, ctx);
  }
  if (auto* la = std::get_if<BExpNode::Le>(&a->v)) {
    auto* lb = std::get_if<BExpNode::Le>(&b->v);
    return alpha_a(la->lhs, lb->lhs, ctx) && alpha_a(la->rhs, lb->rhs, ctx);
  }
  if (auto* na = std::get_if<BExpNode::Not>(&a->v))
    return alpha_b(na->inner, std::get_if<BExpNode::Not>(&b->v)->inner, ctx);
  if (auto* aa = std::get_if<BExpNode::And>(&a->v)) {
    auto* ab = std::get_if<BExpNode::And>(&b->v);
    return alpha_b(aa->lhs, ab->lhs, ctx) && alpha_b(aa->rhs, ab->rhs, ctx);
  }
  return true;
}

bool alpha_e(const Exp& a, const Exp& b, const AlphaCtx& ctx) {
  if (a->v.index() != b->v.index()) return false;
  if (auto* aa = as_a(a)) return alpha_a(aa->a, as_a(b)->a, ctx);
  if (auto* ca = as_call(a)) {
    auto* cb = as_call(b);
    if (ca->fname != cb->fname || ca->args.size() != cb->args.size()) return false;
    for (size_t i = 0; i < ca->args.size(); ++i)
      if (!alpha_e(ca->args[i], cb->args[i], ctx)) return false;
    return true;
  }
  if (auto* ia = as_if(a)) {
    auto* ib = as_if(b);
    return alpha_b(ia->cond, ib->cond, ctx) && alpha_e(ia->then_e, ib->then_e, ctx) &&
           alpha_e(ia->else_e, ib->else_e, ctx);
  }
  auto* da = as_argdev(a);
  auto* db = as_argdev(b);
  return ctx.same_var(da->var, db->var) && ctx.same_var(da->count, db->count) &&
         alpha_e(da->update, db->update, ctx);
}

bool alpha_q(const QExp& a, const QExp& b, AlphaCtx ctx) {
  if (a->v.index() != b->v.index()) return false;
  if (auto* ia = as_i2r(a)) return alpha_a(ia->a, as_i2r(b)->a, ctx);
  if (auto* ca = as_c(a)) return alpha_b(ca->b, as_c(b)->b, ctx);
  if (auto* ba = as_qbin(a)) {
    auto* bb = as_qbin(b);
    return ba->op == bb->op && alpha_q(ba->lhs, bb->lhs, ctx) && alpha_q(ba->rhs, bb->rhs, ctx);
  }
  if (auto* sa = as_sum(a)) {
    auto* sb = as_sum(b);
    AlphaCtx inner = ctx;
    inner.left[sa->var] = inner.depth;
    inner.right[sb->var] = inner.depth;
    ++inner.depth;
    return alpha_q(sa->body, sb->body, inner);
  }
  if (auto* pa = as_prod(a)) {
    auto* pb = as_prod(b);
    AlphaCtx inner = ctx;
    inner.left[pa->var] = inner.depth;
    inner.right[pb->var] = inner.depth;
    ++inner.depth;
    return alpha_q(pa->guard, pb->guard, inner) && alpha_q(pa->body, pb->body, inner);
  }
  if (auto* ca = as_callp(a)) {
    auto* cb = as_callp(b);
    if (ca->pname != cb->pname || ca->args.size() != cb->args.size()) return false;
    for (size_t i = 0; i < ca->args.size(); ++i)
      if (!alpha_a(ca->args[i], cb->args[i], ctx)) return false;
    return true;
  }
  return as_qconst(a)->value == as_qconst(b)->value;
}

}  // namespace

bool alpha_equal(const QExp& a, const QExp& b) { return alpha_q(a, b, AlphaCtx{}); }

}  // namespace resdist
