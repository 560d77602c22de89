#ifndef RESDIST_AST_HPP
#define RESDIST_AST_HPP

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "resdist/rational.hpp"

namespace resdist {

// Terms are immutable and shared; all operations build new nodes.
struct AExpNode;
struct BExpNode;
struct ExpNode;
struct QExpNode;
using AExp = std::shared_ptr<const AExpNode>;
using BExp = std::shared_ptr<const BExpNode>;
using Exp = std::shared_ptr<const ExpNode>;
using QExp = std::shared_ptr<const QExpNode>;

enum class AOp { Add, Sub, Mul, Div, Min, Max };
enum class QOp { Add, Sub, Mul, Div };

struct AExpNode {
  struct Var { std::string name; };
  struct Const { Int value; };
  struct Bin { AOp op; AExp lhs; AExp rhs; };
  std::variant<Var, Const, Bin> v;
};

// Comparisons relate integer expressions; Eq's right side is a full Exp so
// that equations like c(z = f(x,y)) can be written.
struct BExpNode {
  struct True {};
  struct False {};
  struct Eq { AExp lhs; Exp rhs; };
  struct Lt { AExp lhs; AExp rhs; };
  struct Le { AExp lhs; AExp rhs; };
  struct Not { BExp inner; };
  struct And { BExp lhs; BExp rhs; };
  std::variant<True, False, Eq, Lt, Le, Not, And> v;
};

struct ExpNode {
  struct A { AExp a; };
  struct Call { std::string fname; std::vector<Exp> args; };
  struct If { BExp cond; Exp then_e; Exp else_e; };
  // Value of `var` after `count` applications of the one-step update.
  struct ArgDev { std::string var; Exp update; std::string count; };
  std::variant<A, Call, If, ArgDev> v;
};

struct QExpNode {
  struct I2R { AExp a; };
  struct C { BExp b; };
  struct Bin { QOp op; QExp lhs; QExp rhs; };
  struct Sum { std::string var; QExp body; };
  struct Prod { std::string var; QExp guard; QExp body; };
  struct CallP { std::string pname; std::vector<AExp> args; };
  struct ConstQ { Rational value; };
  std::variant<I2R, C, Bin, Sum, Prod, CallP, ConstQ> v;
};

// ---- constructors ----
namespace mk {

AExp var(std::string name);
AExp cint(Int value);
AExp abin(AOp op, AExp l, AExp r);
inline AExp add(AExp l, AExp r) { return abin(AOp::Add, std::move(l), std::move(r)); }
inline AExp sub(AExp l, AExp r) { return abin(AOp::Sub, std::move(l), std::move(r)); }
inline AExp mul(AExp l, AExp r) { return abin(AOp::Mul, std::move(l), std::move(r)); }
inline AExp idiv(AExp l, AExp r) { return abin(AOp::Div, std::move(l), std::move(r)); }
inline AExp amin(AExp l, AExp r) { return abin(AOp::Min, std::move(l), std::move(r)); }
inline AExp amax(AExp l, AExp r) { return abin(AOp::Max, std::move(l), std::move(r)); }

BExp btrue();
BExp bfalse();
BExp eq(AExp l, Exp r);
BExp eq_a(AExp l, AExp r);
BExp lt(AExp l, AExp r);
BExp le(AExp l, AExp r);
BExp bnot(BExp b);
BExp band(BExp l, BExp r);

Exp a(AExp e);
inline Exp evar(std::string n) { return a(var(std::move(n))); }
Exp call(std::string fname, std::vector<Exp> args);
Exp ife(BExp c, Exp t, Exp e);
Exp argdev(std::string var, Exp update, std::string count);

QExp i2r(AExp e);
inline QExp qvar(std::string n) { return i2r(var(std::move(n))); }
inline QExp qint(Int v) { return i2r(cint(std::move(v))); }
QExp c(BExp b);
QExp qbin(QOp op, QExp l, QExp r);
inline QExp qadd(QExp l, QExp r) { return qbin(QOp::Add, std::move(l), std::move(r)); }
inline QExp qsub(QExp l, QExp r) { return qbin(QOp::Sub, std::move(l), std::move(r)); }
inline QExp qmul(QExp l, QExp r) { return qbin(QOp::Mul, std::move(l), std::move(r)); }
inline QExp qdiv(QExp l, QExp r) { return qbin(QOp::Div, std::move(l), std::move(r)); }
QExp sum(std::string var, QExp body);
QExp prod(std::string var, QExp guard, QExp body);
QExp callp(std::string pname, std::vector<AExp> args);
QExp qconst(Rational v);

}  // namespace mk

// ---- convenient probes ----
inline const AExpNode::Var* as_var(const AExp& e) { return std::get_if<AExpNode::Var>(&e->v); }
inline const AExpNode::Const* as_cint(const AExp& e) { return std::get_if<AExpNode::Const>(&e->v); }
inline const AExpNode::Bin* as_bin(const AExp& e) { return std::get_if<AExpNode::Bin>(&e->v); }
inline const ExpNode::A* as_a(const Exp& e) { return std::get_if<ExpNode::A>(&e->v); }
inline const ExpNode::Call* as_call(const Exp& e) { return std::get_if<ExpNode::Call>(&e->v); }
inline const ExpNode::If* as_if(const Exp& e) { return std::get_if<ExpNode::If>(&e->v); }
inline const ExpNode::ArgDev* as_argdev(const Exp& e) { return std::get_if<ExpNode::ArgDev>(&e->v); }
inline const QExpNode::C* as_c(const QExp& q) { return std::get_if<QExpNode::C>(&q->v); }
inline const QExpNode::I2R* as_i2r(const QExp& q) { return std::get_if<QExpNode::I2R>(&q->v); }
inline const QExpNode::Bin* as_qbin(const QExp& q) { return std::get_if<QExpNode::Bin>(&q->v); }
inline const QExpNode::Sum* as_sum(const QExp& q) { return std::get_if<QExpNode::Sum>(&q->v); }
inline const QExpNode::Prod* as_prod(const QExp& q) { return std::get_if<QExpNode::Prod>(&q->v); }
inline const QExpNode::CallP* as_callp(const QExp& q) { return std::get_if<QExpNode::CallP>(&q->v); }
inline const QExpNode::ConstQ* as_qconst(const QExp& q) { return std::get_if<QExpNode::ConstQ>(&q->v); }

/// Exp that is just an arithmetic expression, unwrapped.
inline AExp exp_as_aexp(const Exp& e) {
  if (auto* aa = as_a(e)) return aa->a;
  return nullptr;
}

// ---- program structure ----

struct FuncDef {
  std::string name;
  std::vector<std::string> params;
  Exp body;
  int index = 0;  // position in Def-3 enumeration order
};

struct ProbDef {
  std::string name;
  std::vector<std::string> params;
  QExp body;
};

struct Program {
  std::vector<FuncDef> funcs;   // ordered; index fields strictly increase
  std::vector<ProbDef> probs;
  std::set<std::string> params;  // free symbolic parameters (n, p, ...)

  const FuncDef* find_func(const std::string& name) const;
  const ProbDef* find_prob(const std::string& name) const;
};

// ---- structural equality ----
bool equal(const AExp& a, const AExp& b);
bool equal(const BExp& a, const BExp& b);
bool equal(const Exp& a, const Exp& b);
bool equal(const QExp& a, const QExp& b);

// ---- variables ----
using NameSet = std::set<std::string>;

NameSet free_vars(const AExp& e);
NameSet free_vars(const BExp& e);
NameSet free_vars(const Exp& e);
NameSet free_vars(const QExp& e);

bool occurs_free(const std::string& name, const QExp& e);
bool occurs_free(const std::string& name, const AExp& e);

/// Every identifier appearing anywhere (free, bound, binder positions).
void collect_names(const QExp& e, NameSet& out);
void collect_names(const Exp& e, NameSet& out);
NameSet all_names(const Program& p);

/// Smallest "base", "base1", "base2", ... not in `avoid`; inserts the result.
std::string fresh_name(const std::string& base, NameSet& avoid);

// ---- substitution ----
// Bindings map variable names to expressions. Substitution is simultaneous
// and capture-avoiding: Sum/Prod binders are renamed when a binding would be
// captured. A binding that lands in a pure-arithmetic slot (including the
// name slots of argDev) must be a Var or an arithmetic expression.
using Subst = std::map<std::string, Exp>;

inline Subst subst1(std::string x, Exp e) { return Subst{{std::move(x), std::move(e)}}; }
inline Subst subst1(std::string x, AExp e) { return Subst{{std::move(x), mk::a(std::move(e))}}; }

AExp substitute(const AExp& e, const Subst& s);
BExp substitute(const BExp& e, const Subst& s);
Exp substitute(const Exp& e, const Subst& s);
QExp substitute(const QExp& e, const Subst& s);

/// Equality modulo renaming of Sum/Prod-bound variables.
bool alpha_equal(const QExp& a, const QExp& b);

}  // namespace resdist

#endif
