#include "resdist/eval.hpp"

#include <algorithm>

#include "resdist/error.hpp"
#include "resdist/printer.hpp"
#include "resdist/wellformed.hpp"

namespace resdist {

Int ParamEnv::get_int(const std::string& name) const {
  const Rational* r = get(name);
  if (!r) fail(ErrKind::UndefinedName, "parameter '" + name + "' is not bound");
  if (!r->is_integer())
    fail(ErrKind::Internal, "parameter '" + name + "' = " + r->str() + " used in integer position");
  return r->numerator();
}

namespace {

struct Ctx {
  const Program& prog;
  const ParamEnv& env;
  const EvalOptions& opt;
  long long work = 0;

  void tick(ErrKind kind, const char* what) {
    if (++work > opt.step_budget) fail(kind, std::string(what) + " budget exceeded");
  }
};

Int eval_a(const AExp& e, const ValueEnv& binding, Ctx& ctx);
Int eval_e(const Exp& e, const ValueEnv& binding, Ctx& ctx);
bool eval_b(const BExp& b, const ValueEnv& binding, Ctx& ctx);
Rational eval_q(const QExp& q, const ValueEnv& binding, Ctx& ctx);
Int eval_call(const std::string& fname, std::vector<Int> args, Ctx& ctx);

Int eval_a(const AExp& e, const ValueEnv& binding, Ctx& ctx) {
  if (auto* v = as_var(e)) {
    auto it = binding.find(v->name);
    if (it != binding.end()) return it->second;
    if (ctx.env.has(v->name)) return ctx.env.get_int(v->name);
    fail(ErrKind::UndefinedName, "variable '" + v->name + "' is not bound");
  }
  if (auto* k = as_cint(e)) return k->value;
  auto* b = as_bin(e);
  Int l = eval_a(b->lhs, binding, ctx);
  Int r = eval_a(b->rhs, binding, ctx);
  switch (b->op) {
    case AOp::Add: return l + r;
    case AOp::Sub: return l - r;
    case AOp::Mul: return l * r;
    case AOp::Div: return floor_div(l, r);
    case AOp::Min: return std::min(l, r);
    case AOp::Max: return std::max(l, r);
  }
  fail(ErrKind::Internal, "bad arithmetic operator");
}

bool eval_b(const BExp& b, const ValueEnv& binding, Ctx& ctx) {
  if (std::holds_alternative<BExpNode::True>(b->v)) return true;
  if (std::holds_alternative<BExpNode::False>(b->v)) return false;
  if (auto* q = std::get_if<BExpNode::Eq>(&b->v))
    return eval_a(q->lhs, binding, ctx) == eval_e(q->rhs, binding, ctx);
  if (auto* l = std::get_if<BExpNode::Lt>(&b->v))
    return eval_a(l->lhs, binding, ctx) < eval_a(l->rhs, binding, ctx);
  if (auto* l = std::get_if<BExpNode::Le>(&b->v))
    return eval_a(l->lhs, binding, ctx) <= eval_a(l->rhs, binding, ctx);
  if (auto* n = std::get_if<BExpNode::Not>(&b->v)) return !eval_b(n->inner, binding, ctx);
  auto* a = std::get_if<BExpNode::And>(&b->v);
  return eval_b(a->lhs, binding, ctx) && eval_b(a->rhs, binding, ctx);
}

Int eval_call(const std::string& fname, std::vector<Int> args, Ctx& ctx) {
  const FuncDef* f = ctx.prog.find_func(fname);
  if (!f) fail(ErrKind::UndefinedName, "call to undefined function '" + fname + "'");
  if (f->params.size() != args.size())
    fail(ErrKind::ArityMismatch, "call to '" + fname + "' with " + std::to_string(args.size()) +
                                     " arguments, expected " + std::to_string(f->params.size()));
  auto shape = recursion_shape(*f);
  for (;;) {
    ctx.tick(ErrKind::NonTermination, "recursion step");
    ValueEnv frame;
    for (size_t i = 0; i < args.size(); ++i) frame[f->params[i]] = args[i];
    if (!shape) return eval_e(f->body, frame, ctx);
    if (eval_b(shape->guard, frame, ctx)) return eval_e(shape->base, frame, ctx);
    std::vector<Int> next;
    next.reserve(args.size());
    for (const auto& a : shape->rec_args) next.push_back(eval_e(a, frame, ctx));
    args = std::move(next);
  }
}

Int eval_e(const Exp& e, const ValueEnv& binding, Ctx& ctx) {
  if (auto* a = as_a(e)) return eval_a(a->a, binding, ctx);
  if (auto* i = as_if(e))
    return eval_b(i->cond, binding, ctx) ? eval_e(i->then_e, binding, ctx)
                                         : eval_e(i->else_e, binding, ctx);
  if (auto* c = as_call(e)) {
    std::vector<Int> args;
    args.reserve(c->args.size());
    for (const auto& arg : c->args) args.push_back(eval_e(arg, binding, ctx));
    return eval_call(c->fname, std::move(args), ctx);
  }
  auto* d = as_argdev(e);
  Int count;
  {
    auto it = binding.find(d->count);
    if (it != binding.end()) count = it->second;
    else count = ctx.env.get_int(d->count);
  }
  if (count < 0) fail(ErrKind::Internal, "argDev with negative update count " + count.str());
  auto it = binding.find(d->var);
  if (it == binding.end()) fail(ErrKind::UndefinedName, "argDev variable '" + d->var + "' is not bound");
  Int v = it->second;
  ValueEnv local = binding;
  for (Int k = 0; k < count; ++k) {
    ctx.tick(ErrKind::NonTermination, "argDev iteration");
    local[d->var] = v;
    v = eval_e(d->update, local, ctx);
  }
  return v;
}

// ---- summation ranges ----

struct Range {
  std::optional<Int> lo, hi;

  void add_lo(const Int& v) { lo = lo ? std::max(*lo, v) : v; }
  void add_hi(const Int& v) { hi = hi ? std::min(*hi, v) : v; }
  void pin(const Int& v) { add_lo(v); add_hi(v); }
};

bool evaluable_without(const NameSet& fv, const std::string& x, const ValueEnv& binding, Ctx& ctx) {
  for (const auto& v : fv) {
    if (v == x) return false;
    if (!binding.count(v) && !ctx.env.has(v)) return false;
  }
  return true;
}

void scan_comparison(const BExp& b, const std::string& x, const ValueEnv& binding, Ctx& ctx,
                     Range& r) {
  if (auto* a = std::get_if<BExpNode::And>(&b->v)) {
    scan_comparison(a->lhs, x, binding, ctx, r);
    scan_comparison(a->rhs, x, binding, ctx, r);
    return;
  }
  auto is_x = [&](const AExp& e) {
    auto* v = as_var(e);
    return v && v->name == x;
  };
  if (auto* le = std::get_if<BExpNode::Le>(&b->v)) {
    if (is_x(le->lhs) && evaluable_without(free_vars(le->rhs), x, binding, ctx))
      r.add_hi(eval_a(le->rhs, binding, ctx));
    if (is_x(le->rhs) && evaluable_without(free_vars(le->lhs), x, binding, ctx))
      r.add_lo(eval_a(le->lhs, binding, ctx));
    return;
  }
  if (auto* lt = std::get_if<BExpNode::Lt>(&b->v)) {
    if (is_x(lt->lhs) && evaluable_without(free_vars(lt->rhs), x, binding, ctx))
      r.add_hi(eval_a(lt->rhs, binding, ctx) - 1);
    if (is_x(lt->rhs) && evaluable_without(free_vars(lt->lhs), x, binding, ctx))
      r.add_lo(eval_a(lt->lhs, binding, ctx) + 1);
    return;
  }
  if (auto* eq = std::get_if<BExpNode::Eq>(&b->v)) {
    if (is_x(eq->lhs) && evaluable_without(free_vars(eq->rhs), x, binding, ctx)) {
      r.pin(eval_e(eq->rhs, binding, ctx));
      return;
    }
    AExp rhs_a = exp_as_aexp(eq->rhs);
    if (rhs_a && as_var(rhs_a) && as_var(rhs_a)->name == x &&
        evaluable_without(free_vars(eq->lhs), x, binding, ctx))
      r.pin(eval_a(eq->lhs, binding, ctx));
  }
}

void scan_factors(const QExp& q, const std::string& x, const ValueEnv& binding, Ctx& ctx, Range& r,
                  std::vector<const QExpNode::Prod*>& probes) {
  if (auto* b = as_qbin(q); b && b->op == QOp::Mul) {
    scan_factors(b->lhs, x, binding, ctx, r, probes);
    scan_factors(b->rhs, x, binding, ctx, r, probes);
    return;
  }
  if (auto* b = as_qbin(q); b && b->op == QOp::Div) {
    scan_factors(b->lhs, x, binding, ctx, r, probes);  // numerator factors
    return;
  }
  if (auto* c = as_c(q)) {
    scan_comparison(c->b, x, binding, ctx, r);
    return;
  }
  if (auto* p = as_prod(q)) {
    if (free_vars(p->guard).count(x)) probes.push_back(p);
  }
}

Rational eval_sum(const QExpNode::Sum& s, const ValueEnv& binding, Ctx& ctx) {
  // sums over additions split pointwise, so each addend carries its own range
  if (auto* b = as_qbin(s.body); b && (b->op == QOp::Add || b->op == QOp::Sub)) {
    Rational l = eval_sum(QExpNode::Sum{s.var, b->lhs}, binding, ctx);
    Rational r = eval_sum(QExpNode::Sum{s.var, b->rhs}, binding, ctx);
    return b->op == QOp::Add ? l + r : l - r;
  }
  Range range;
  std::vector<const QExpNode::Prod*> probes;
  scan_factors(s.body, s.var, binding, ctx, range, probes);
  ValueEnv local = binding;
  if (range.lo && range.hi) {
    Rational acc(0);
    for (Int v = *range.lo; v <= *range.hi; ++v) {
      ctx.tick(ErrKind::BudgetExceeded, "summation");
      local[s.var] = v;
      acc += eval_q(s.body, local, ctx);
    }
    return acc;
  }
  if (range.lo && !probes.empty()) {
    // Index summation of a recursive call: once the termination condition has
    // held, every later summand contains a zero factor from the
    // nontermination product. Probing that product's body at the current
    // index detects the stopping point.
    const auto* probe = probes.front();
    Rational acc(0);
    for (Int v = *range.lo;; ++v) {
      ctx.tick(ErrKind::NonTermination, "recursion-index summation");
      local[s.var] = v;
      acc += eval_q(s.body, local, ctx);
      ValueEnv probe_env = local;
      probe_env[probe->var] = v;
      if (eval_q(probe->body, probe_env, ctx).is_zero()) break;
    }
    return acc;
  }
  fail(ErrKind::UnboundedSummation,
       "no finite range for summation variable '" + s.var + "' in " + print(mk::sum(s.var, s.body)));
}

Rational eval_prod(const QExpNode::Prod& p, const ValueEnv& binding, Ctx& ctx) {
  Range range;
  std::vector<const QExpNode::Prod*> probes;
  scan_factors(p.guard, p.var, binding, ctx, range, probes);
  if (!range.lo || !range.hi)
    fail(ErrKind::UnboundedSummation, "no finite range for product variable '" + p.var + "'");
  Rational acc(1);
  ValueEnv local = binding;
  for (Int v = *range.lo; v <= *range.hi; ++v) {
    ctx.tick(ErrKind::BudgetExceeded, "product");
    local[p.var] = v;
    if (eval_q(p.guard, local, ctx) == Rational(1)) acc *= eval_q(p.body, local, ctx);
  }
  return acc;
}

Rational eval_q(const QExp& q, const ValueEnv& binding, Ctx& ctx) {
  if (auto* i = as_i2r(q)) {
    if (auto* v = as_var(i->a)) {
      auto it = binding.find(v->name);
      if (it != binding.end()) return Rational(it->second);
      if (const Rational* r = ctx.env.get(v->name)) return *r;  // weight parameter
      fail(ErrKind::UndefinedName, "variable '" + v->name + "' is not bound");
    }
    return Rational(eval_a(i->a, binding, ctx));
  }
  if (auto* c = as_c(q)) return eval_b(c->b, binding, ctx) ? Rational(1) : Rational(0);
  if (auto* k = as_qconst(q)) return k->value;
  if (auto* b = as_qbin(q)) {
    Rational l = eval_q(b->lhs, binding, ctx);
    Rational r = eval_q(b->rhs, binding, ctx);
    switch (b->op) {
      case QOp::Add: return l + r;
      case QOp::Sub: return l - r;
      case QOp::Mul: return l * r;
      case QOp::Div:
        if (r.is_zero()) fail(ErrKind::DivByZero, "probability division by zero");
        return l / r;
    }
  }
  if (auto* s = as_sum(q)) return eval_sum(*s, binding, ctx);
  if (auto* p = as_prod(q)) return eval_prod(*p, binding, ctx);
  auto* cp = as_callp(q);
  const ProbDef* def = ctx.prog.find_prob(cp->pname);
  if (!def) fail(ErrKind::UndefinedName, "call to undefined probability function '" + cp->pname + "'");
  if (def->params.size() != cp->args.size())
    fail(ErrKind::ArityMismatch, "call to '" + cp->pname + "'");
  ValueEnv frame;
  for (size_t i = 0; i < cp->args.size(); ++i)
    frame[def->params[i]] = eval_a(cp->args[i], binding, ctx);
  return eval_q(def->body, frame, ctx);
}

}  // namespace

Int eval_exp(const Program& prog, const std::string& fname, const std::vector<Int>& args,
             const ParamEnv& env, const EvalOptions& opt) {
  Ctx ctx{prog, env, opt};
  return eval_call(fname, args, ctx);
}

Int eval_exp_term(const Program& prog, const Exp& e, const ValueEnv& binding, const ParamEnv& env,
                  const EvalOptions& opt) {
  Ctx ctx{prog, env, opt};
  return eval_e(e, binding, ctx);
}

bool eval_bexp_term(const Program& prog, const BExp& b, const ValueEnv& binding,
                    const ParamEnv& env, const EvalOptions& opt) {
  Ctx ctx{prog, env, opt};
  return eval_b(b, binding, ctx);
}

Rational eval_qexp(const Program& prog, const QExp& q, const ValueEnv& binding,
                   const ParamEnv& env, const EvalOptions& opt) {
  Ctx ctx{prog, env, opt};
  return eval_q(q, binding, ctx);
}

Rational eval_prob(const Program& prog, const std::string& pname, const std::vector<Int>& args,
                   const ParamEnv& env, const EvalOptions& opt) {
  const ProbDef* def = prog.find_prob(pname);
  if (!def) fail(ErrKind::UndefinedName, "probability function '" + pname + "' not defined");
  if (def->params.size() != args.size()) fail(ErrKind::ArityMismatch, "call to '" + pname + "'");
  ValueEnv binding;
  for (size_t i = 0; i < args.size(); ++i) binding[def->params[i]] = args[i];
  return eval_qexp(prog, def->body, binding, env, opt);
}

// ---- specialize ----

namespace {

struct Folder {
  const Program& prog;
  const ParamEnv& env;
  EvalOptions opt;

  AExp a(const AExp& e) {
    if (auto* v = as_var(e)) {
      if (const Rational* r = env.get(v->name); r && r->is_integer()) return mk::cint(r->numerator());
      return e;
    }
    if (as_cint(e)) return e;
    auto* b = as_bin(e);
    AExp l = a(b->lhs), r = a(b->rhs);
    if (as_cint(l) && as_cint(r)) {
      Ctx ctx{prog, env, opt};
      try {
        return mk::cint(eval_a(mk::abin(b->op, l, r), {}, ctx));
      } catch (const Error&) {
      }
    }
    return mk::abin(b->op, l, r);
  }

  Exp e(const Exp& x) {
    if (auto* aa = as_a(x)) return mk::a(a(aa->a));
    if (auto* c = as_call(x)) {
      std::vector<Exp> args;
      for (const auto& arg : c->args) args.push_back(e(arg));
      return mk::call(c->fname, std::move(args));
    }
    if (auto* i = as_if(x)) {
      BExp cond = b(i->cond);
      if (std::holds_alternative<BExpNode::True>(cond->v)) return e(i->then_e);
      if (std::holds_alternative<BExpNode::False>(cond->v)) return e(i->else_e);
      return mk::ife(cond, e(i->then_e), e(i->else_e));
    }
    auto* d = as_argdev(x);
    return mk::argdev(d->var, e(d->update), d->count);
  }

  BExp b(const BExp& x) {
    BExp out = x;
    if (auto* q = std::get_if<BExpNode::Eq>(&x->v)) out = mk::eq(a(q->lhs), e(q->rhs));
    else if (auto* l = std::get_if<BExpNode::Lt>(&x->v)) out = mk::lt(a(l->lhs), a(l->rhs));
    else if (auto* l = std::get_if<BExpNode::Le>(&x->v)) out = mk::le(a(l->lhs), a(l->rhs));
    else if (auto* n = std::get_if<BExpNode::Not>(&x->v)) {
      BExp inner = b(n->inner);
      if (std::holds_alternative<BExpNode::True>(inner->v)) return mk::bfalse();
      if (std::holds_alternative<BExpNode::False>(inner->v)) return mk::btrue();
      return mk::bnot(inner);
    } else if (auto* an = std::get_if<BExpNode::And>(&x->v)) {
      BExp l = b(an->lhs), r = b(an->rhs);
      if (std::holds_alternative<BExpNode::False>(l->v) ||
          std::holds_alternative<BExpNode::False>(r->v))
        return mk::bfalse();
      if (std::holds_alternative<BExpNode::True>(l->v)) return r;
      if (std::holds_alternative<BExpNode::True>(r->v)) return l;
      return mk::band(l, r);
    }
    if (free_vars(out).empty()) {
      Ctx ctx{prog, env, opt};
      try {
        return eval_b(out, {}, ctx) ? mk::btrue() : mk::bfalse();
      } catch (const Error&) {
      }
    }
    return out;
  }

  QExp q(const QExp& x) {
    if (auto* i = as_i2r(x)) {
      if (auto* v = as_var(i->a)) {
        if (const Rational* r = env.get(v->name)) return mk::qconst(*r);
      }
      AExp folded = a(i->a);
      if (auto* k = as_cint(folded)) return mk::qconst(Rational(k->value));
      return mk::i2r(folded);
    }
    if (auto* c = as_c(x)) {
      BExp cond = b(c->b);
      if (std::holds_alternative<BExpNode::True>(cond->v)) return mk::qconst(1);
      if (std::holds_alternative<BExpNode::False>(cond->v)) return mk::qconst(0);
      return mk::c(cond);
    }
    if (as_qconst(x)) return x;
    if (auto* bin = as_qbin(x)) {
      QExp l = q(bin->lhs), r = q(bin->rhs);
      auto* kl = as_qconst(l);
      auto* kr = as_qconst(r);
      if (kl && kr && !(bin->op == QOp::Div && kr->value.is_zero())) {
        switch (bin->op) {
          case QOp::Add: return mk::qconst(kl->value + kr->value);
          case QOp::Sub: return mk::qconst(kl->value - kr->value);
          case QOp::Mul: return mk::qconst(kl->value * kr->value);
          case QOp::Div: return mk::qconst(kl->value / kr->value);
        }
      }
      if (bin->op == QOp::Mul) {
        if ((kl && kl->value.is_zero()) || (kr && kr->value.is_zero())) return mk::qconst(0);
        if (kl && kl->value == Rational(1)) return r;
        if (kr && kr->value == Rational(1)) return l;
      }
      if (bin->op == QOp::Add) {
        if (kl && kl->value.is_zero()) return r;
        if (kr && kr->value.is_zero()) return l;
      }
      return mk::qbin(bin->op, l, r);
    }
    if (auto* s = as_sum(x)) return mk::sum(s->var, q(s->body));
    if (auto* p = as_prod(x)) return mk::prod(p->var, q(p->guard), q(p->body));
    return x;  // CallP left in place
  }
};

}  // namespace

ProbDef specialize(const Program& prog, const std::string& pname, const ParamEnv& env) {
  const ProbDef* def = prog.find_prob(pname);
  if (!def) fail(ErrKind::UndefinedName, "probability function '" + pname + "' not defined");
  if (env.values.empty()) return *def;
  Folder f{prog, env, {}};
  return ProbDef{def->name, def->params, f.q(def->body)};
}

Distribution tabulate(const Program& prog, const std::string& pname, const ParamEnv& env,
                      const Int& zlo, const Int& zhi, Distribution::Kind kind,
                      const EvalOptions& opt) {
  const ProbDef* def = prog.find_prob(pname);
  if (!def) fail(ErrKind::UndefinedName, "probability function '" + pname + "' not defined");
  if (def->params.size() != 1)
    fail(ErrKind::ArityMismatch, "tabulate needs a unary probability function, '" + pname +
                                     "' has arity " + std::to_string(def->params.size()));
  if (zlo > zhi) fail(ErrKind::Usage, "empty tabulation range");
  Distribution d;
  d.kind = kind;
  for (Int z = zlo; z <= zhi; ++z) {
    Rational p = eval_qexp(prog, def->body, {{def->params[0], z}}, env, opt);
    // an over-approximation may always be capped at 1
    if (kind == Distribution::Kind::OverApprox && p > Rational(1)) p = Rational(1);
    d.add(z, p);
  }
  return d;
}

}  // namespace resdist
