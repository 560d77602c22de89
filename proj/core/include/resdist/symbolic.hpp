#ifndef RESDIST_SYMBOLIC_HPP
#define RESDIST_SYMBOLIC_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "resdist/ast.hpp"

namespace resdist {

/// Multivariate polynomial with exact rational coefficients over "atoms":
/// plain variables plus opaque integer subterms (divisions, min/max) that
/// the polynomial arithmetic does not look inside. Atoms are keyed by their
/// canonical printed form, which keeps the representation syntax-stable.
class RatPoly {
 public:
  using Mono = std::map<std::string, int>;  // atom key -> exponent

  RatPoly() = default;
  static RatPoly constant(Rational v);
  static RatPoly atom(const AExp& term, const std::string& key, int power = 1);

  const std::map<Mono, Rational>& terms() const { return terms_; }
  const std::map<std::string, AExp>& atoms() const { return atoms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_value() const;  // requires is_constant
  bool integer_coeffs() const;

  RatPoly operator-() const;
  RatPoly operator+(const RatPoly& o) const;
  RatPoly operator-(const RatPoly& o) const;
  RatPoly operator*(const RatPoly& o) const;
  RatPoly scaled(const Rational& k) const;
  RatPoly pow(int e) const;

  bool operator==(const RatPoly& o) const { return terms_ == o.terms_; }

  /// Degree in one atom; 0 if absent.
  int degree_in(const std::string& key) const;
  /// True when the atom key occurs, or when `x` occurs inside an opaque atom.
  bool mentions_var(const std::string& x) const;
  /// Coefficient polynomials by power of `key` (only present powers).
  std::map<int, RatPoly> coefficients_in(const std::string& key) const;
  /// Replaces an atom by a polynomial.
  RatPoly substituted(const std::string& key, const RatPoly& replacement) const;
  /// Least common multiple of coefficient denominators.
  Int denominator_lcm() const;

  /// Canonical integer arithmetic term; requires integer coefficients.
  AExp to_aexp() const;
  /// Probability-level term: numerator polynomial times a rational constant.
  QExp to_qexp() const;
  /// Splits into (positive part, negative part) with nonnegative coefficients.
  std::pair<RatPoly, RatPoly> split_signs() const;

 private:
  void add_term(const Mono& m, const Rational& c, const std::map<std::string, AExp>& atom_src);
  std::map<Mono, Rational> terms_;
  std::map<std::string, AExp> atoms_;
};

/// Expansion of integer arithmetic into polynomial normal form. Integer
/// division, min and max become opaque atoms (after normalizing inside);
/// division by a constant that divides every coefficient stays polynomial.
RatPoly aexp_to_poly(const AExp& e);

/// Ratio-free probability arithmetic (i2r / constants / + - * and division
/// by constants) as a polynomial; nullopt when the expression contains
/// indicator terms, summations, calls, or a symbolic denominator.
std::optional<RatPoly> qexp_arith_to_poly(const QExp& q);

/// Canonical form of an arithmetic term.
AExp normalize_aexp(const AExp& e);

// ---- univariate view ----

inline constexpr int kMaxPowerDegree = 10;

/// Univariate polynomial with integer-arithmetic coefficients free of the
/// variable. Degree is capped by the power-sum table.
struct Polynomial {
  std::string var;
  std::vector<AExp> coeffs;  // index = degree; at least one entry

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

Polynomial expand(const AExp& e, const std::string& x);
Polynomial expand(const QExp& e, const std::string& x);

// ---- integer linear solving ----

struct LinearForm {
  std::string var;
  Int coeff;       // != 0
  AExp remainder;  // free of var
};

/// lhs = rhs as coeff*var + remainder = 0, when linear with constant
/// integer coefficient.
std::optional<LinearForm> linear_form(const AExp& lhs, const AExp& rhs, const std::string& x);

struct LinearSolution {
  AExp value;
  BExp condition;  // divisibility side condition; True when coeff = +-1
};

/// Solves lhs = rhs for x over the integers. Throws NotLinear or
/// ZeroCoefficient when the equation has no such solution form.
LinearSolution solve_linear(const AExp& lhs, const AExp& rhs, const std::string& x);

// ---- boolean reduction ----

/// Constant folding, normalization of < to =<, contradiction and tautology
/// detection, and merging of duplicate bounds on one variable via min/max.
BExp reduce_bexp(const BExp& b);

// ---- linear constraints over atoms (used by the rewrite engine) ----

enum class Rel { Le, Eq, Ne };  // poly <= 0, poly = 0, poly != 0

struct LinCon {
  Rel rel;
  RatPoly poly;  // integer coefficients, content-normalized
};

/// nullopt for non-arithmetic comparisons (equations with calls inside).
std::optional<LinCon> constraint_of(const BExp& b);
BExp constraint_to_bexp(const LinCon& c);

enum class ConjStatus { Consistent, False };

/// Simplifies a conjunction in place: folds constants, removes subsumed
/// bounds, turns opposing inequalities into equations, propagates equalities,
/// and detects infeasibility by Fourier-Motzkin elimination over monomials
/// (rational relaxation; False is only reported when genuinely unsatisfiable).
ConjStatus simplify_conjuncts(std::vector<LinCon>& cons);

/// x =< bound or bound =< x for constraints linear in a plain-variable atom;
/// exact integer rounding, so 2*x =< e isolates to x =< e div 2.
struct VarBound {
  bool upper;
  AExp bound;
};
std::optional<VarBound> isolate_bound(const LinCon& c, const std::string& x);

// ---- power sums ----

/// B0..B10 in the convention where B1 = +1/2, computed from the recurrence.
const std::vector<Rational>& bernoulli_numbers();

/// Faulhaber prefix-sum polynomial S_p with sum(k=1..n) k^p = S_p(n),
/// univariate in the reserved atom key "@".
const RatPoly& faulhaber_poly(int p);

/// Closed form of sum(k=lo..hi) k^p as S_p(hi) - S_p(lo-1). The division in
/// the rendered term is exact for every integer grounding. For constant
/// empty ranges (lo > hi) this returns 0.
AExp power_sum(int p, const AExp& lo, const AExp& hi);

/// sum(x=lo..hi) poly(x) via the power-sum table.
AExp sum_polynomial(const Polynomial& poly, const AExp& lo, const AExp& hi);

/// Engine variant working directly on polynomials; `summand` is viewed as a
/// polynomial in atom `x`. Throws DegreeTooHigh beyond the table.
RatPoly sum_poly_over_range(const RatPoly& summand, const std::string& x, const RatPoly& lo,
                            const RatPoly& hi);

}  // namespace resdist

#endif
