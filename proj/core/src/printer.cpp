#include "resdist/printer.hpp"

#include <sstream>

namespace resdist {

namespace {

// precedence levels: 1 additive, 2 multiplicative, 3 atom
void pr_a(std::ostream& os, const AExp& e, int min_prec);
void pr_e(std::ostream& os, const Exp& e);
void pr_b(std::ostream& os, const BExp& e);

void pr_atom_or_paren(std::ostream& os, const AExp& e, int prec, int min_prec) {
  if (prec < min_prec) {
    os << '(';
    pr_a(os, e, 1);
    os << ')';
  } else {
    pr_a(os, e, min_prec);
  }
}

void pr_a(std::ostream& os, const AExp& e, int min_prec) {
  if (auto* v = as_var(e)) { os << v->name; return; }
  if (auto* c = as_cint(e)) {
    if (c->value < 0 && min_prec > 1) os << '(' << c->value.str() << ')';
    else os << c->value.str();
    return;
  }
  auto* b = as_bin(e);
  switch (b->op) {
    case AOp::Add:
    case AOp::Sub: {
      if (min_prec > 1) { os << '('; pr_a(os, e, 1); os << ')'; return; }
      pr_a(os, b->lhs, 1);
      os << (b->op == AOp::Add ? "+" : "-");
      pr_a(os, b->rhs, 2);
      return;
    }
    case AOp::Mul:
    case AOp::Div: {
      if (min_prec > 2) { os << '('; pr_a(os, e, 1); os << ')'; return; }
      pr_a(os, b->lhs, 2);
      os << (b->op == AOp::Mul ? "*" : "/");
      pr_a(os, b->rhs, 3);
      return;
    }
    case AOp::Min:
    case AOp::Max:
      os << (b->op == AOp::Min ? "min(" : "max(");
      pr_a(os, b->lhs, 1);
      os << ",";
      pr_a(os, b->rhs, 1);
      os << ')';
      return;
  }
}

void pr_b(std::ostream& os, const BExp& e) {
  if (std::holds_alternative<BExpNode::True>(e->v)) { os << "true"; return; }
  if (std::holds_alternative<BExpNode::False>(e->v)) { os << "false"; return; }
  if (auto* q = std::get_if<BExpNode::Eq>(&e->v)) {
    pr_a(os, q->lhs, 1);
    os << " = ";
    pr_e(os, q->rhs);
    return;
  }
  if (auto* l = std::get_if<BExpNode::Lt>(&e->v)) {
    pr_a(os, l->lhs, 1);
    os << " < ";
    pr_a(os, l->rhs, 1);
    return;
  }
  if (auto* l = std::get_if<BExpNode::Le>(&e->v)) {
    pr_a(os, l->lhs, 1);
    os << " =< ";
    pr_a(os, l->rhs, 1);
    return;
  }
  if (auto* n = std::get_if<BExpNode::Not>(&e->v)) {
    os << "not(";
    pr_b(os, n->inner);
    os << ')';
    return;
  }
  auto* a = std::get_if<BExpNode::And>(&e->v);
  os << '(';
  pr_b(os, a->lhs);
  os << " and ";
  pr_b(os, a->rhs);
  os << ')';
}

void pr_e(std::ostream& os, const Exp& e) {
  if (auto* a = as_a(e)) { pr_a(os, a->a, 1); return; }
  if (auto* c = as_call(e)) {
    os << c->fname << '(';
    for (size_t i = 0; i < c->args.size(); ++i) {
      if (i) os << ',';
      pr_e(os, c->args[i]);
    }
    os << ')';
    return;
  }
  if (auto* i = as_if(e)) {
    os << "if ";
    pr_b(os, i->cond);
    os << " then ";
    pr_e(os, i->then_e);
    os << " else ";
    pr_e(os, i->else_e);
    return;
  }
  auto* d = as_argdev(e);
  os << "argDev(" << d->var << ",";
  pr_e(os, d->update);
  os << "," << d->count << ')';
}

void pr_q(std::ostream& os, const QExp& e, int min_prec) {
  if (auto* i = as_i2r(e)) {
    if (as_var(i->a)) { pr_a(os, i->a, min_prec); return; }
    os << "i2r(";
    pr_a(os, i->a, 1);
    os << ')';
    return;
  }
  if (auto* c = as_c(e)) {
    // And inside c expands to a product of c-terms, matching the input syntax
    if (auto* conj = std::get_if<BExpNode::And>(&c->b->v)) {
      if (min_prec > 2) { os << '('; pr_q(os, e, 1); os << ')'; return; }
      pr_q(os, mk::c(conj->lhs), 2);
      os << '*';
      pr_q(os, mk::c(conj->rhs), 3);
      return;
    }
    os << "c(";
    pr_b(os, c->b);
    os << ')';
    return;
  }
  if (auto* k = as_qconst(e)) {
    bool needs = (k->value.sign() < 0 && min_prec > 1) || (!k->value.is_integer() && min_prec > 2);
    if (needs) { os << '(' << k->value.str() << ')'; }
    else os << k->value.str();
    return;
  }
  if (auto* b = as_qbin(e)) {
    switch (b->op) {
      case QOp::Add:
      case QOp::Sub:
        if (min_prec > 1) { os << '('; pr_q(os, e, 1); os << ')'; return; }
        pr_q(os, b->lhs, 1);
        os << (b->op == QOp::Add ? " + " : " - ");
        pr_q(os, b->rhs, 2);
        return;
      case QOp::Mul:
      case QOp::Div:
        if (min_prec > 2) { os << '('; pr_q(os, e, 1); os << ')'; return; }
        pr_q(os, b->lhs, 2);
        os << (b->op == QOp::Mul ? "*" : "/");
        pr_q(os, b->rhs, 3);
        return;
    }
  }
  if (auto* s = as_sum(e)) {
    os << "sum(" << s->var << ", ";
    pr_q(os, s->body, 1);
    os << ')';
    return;
  }
  if (auto* p = as_prod(e)) {
    os << "prod(" << p->var << ", ";
    pr_q(os, p->guard, 1);
    os << ", ";
    pr_q(os, p->body, 1);
    os << ')';
    return;
  }
  auto* c = as_callp(e);
  os << c->pname << '(';
  for (size_t i = 0; i < c->args.size(); ++i) {
    if (i) os << ',';
    pr_a(os, c->args[i], 1);
  }
  os << ')';
}

}  // namespace

std::string print(const AExp& e) { std::ostringstream os; pr_a(os, e, 1); return os.str(); }
std::string print(const BExp& e) { std::ostringstream os; pr_b(os, e); return os.str(); }
std::string print(const Exp& e) { std::ostringstream os; pr_e(os, e); return os.str(); }
std::string print(const QExp& e) { std::ostringstream os; pr_q(os, e, 1); return os.str(); }

std::string print(const FuncDef& f) {
  std::ostringstream os;
  os << f.name << '(';
  for (size_t i = 0; i < f.params.size(); ++i) {
    if (i) os << ',';
    os << f.params[i];
  }
  os << ") = ";
  pr_e(os, f.body);
  return os.str();
}

std::string print(const ProbDef& p) {
  std::ostringstream os;
  os << p.name << '(';
  for (size_t i = 0; i < p.params.size(); ++i) {
    if (i) os << ',';
    os << p.params[i];
  }
  os << ") = ";
  pr_q(os, p.body, 1);
  return os.str();
}

std::string print(const Program& p) {
  std::ostringstream os;
  for (const auto& f : p.funcs) os << print(f) << '\n';
  for (const auto& d : p.probs) os << print(d) << '\n';
  return os.str();
}

}  // namespace resdist
