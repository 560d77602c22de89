#ifndef RESDIST_EVAL_HPP
#define RESDIST_EVAL_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "resdist/ast.hpp"
#include "resdist/distribution.hpp"

namespace resdist {

/// Values for the symbolic program parameters: integers for range parameters
/// like n, rationals for weight parameters like p.
struct ParamEnv {
  std::map<std::string, Rational> values;

  bool has(const std::string& name) const { return values.count(name) > 0; }
  void set(const std::string& name, Rational v) { values[name] = std::move(v); }
  const Rational* get(const std::string& name) const {
    auto it = values.find(name);
    return it == values.end() ? nullptr : &it->second;
  }
  /// Integer-valued parameter, or an error if it was bound to a fraction.
  Int get_int(const std::string& name) const;
};

struct EvalOptions {
  long long step_budget = 1'000'000;  // recursion steps / summation probes
};

using ValueEnv = std::map<std::string, Int>;

/// Runs an integer function call-by-value; shape-1 recursion is iterated.
Int eval_exp(const Program& prog, const std::string& fname, const std::vector<Int>& args,
             const ParamEnv& env, const EvalOptions& opt = {});

/// Evaluates an expression with explicit variable bindings.
Int eval_exp_term(const Program& prog, const Exp& e, const ValueEnv& binding, const ParamEnv& env,
                  const EvalOptions& opt = {});

bool eval_bexp_term(const Program& prog, const BExp& b, const ValueEnv& binding,
                    const ParamEnv& env, const EvalOptions& opt = {});

/// Exact evaluation of a probability expression. Summation variables range
/// over the finite interval carried by multiplicative c-factors; the index
/// summation produced for recursive calls (bounded below only) is evaluated
/// by probing the termination condition.
Rational eval_qexp(const Program& prog, const QExp& q, const ValueEnv& binding,
                   const ParamEnv& env, const EvalOptions& opt = {});

/// Probability function applied to integer arguments.
Rational eval_prob(const Program& prog, const std::string& pname, const std::vector<Int>& args,
                   const ParamEnv& env, const EvalOptions& opt = {});

/// Substitutes parameter values into a probability function and folds the
/// parts that became ground.
ProbDef specialize(const Program& prog, const std::string& pname, const ParamEnv& env);

/// Evaluates the (unary) probability function at each z in [zlo, zhi].
/// Over-approximated values are capped at 1, which Def-4 always allows.
Distribution tabulate(const Program& prog, const std::string& pname, const ParamEnv& env,
                      const Int& zlo, const Int& zhi,
                      Distribution::Kind kind = Distribution::Kind::Exact,
                      const EvalOptions& opt = {});

}  // namespace resdist

#endif
